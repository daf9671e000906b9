// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/lcp.cpp
//---------------------------------------------------------------------------//
#include <iostream>

#include "lcp/cli/app.hpp"

int main(int argc, char** argv)
{
    return lcp::cli::main(argc, argv, std::cout, std::cerr);
}
