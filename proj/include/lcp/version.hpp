// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/version.hpp
//---------------------------------------------------------------------------//
#pragma once

namespace lcp
{
inline constexpr char const version_string[] = "1.0.0";
}
