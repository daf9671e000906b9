// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/constants.hpp
//! CODATA 2018 physical constants. All quantities in the library are SI.
//---------------------------------------------------------------------------//
#pragma once

#include <numbers>

namespace lcp
{
namespace constants
{
inline constexpr double hbar = 1.054571817e-34;  //!< J s
inline constexpr double c = 299792458.0;  //!< m / s
inline constexpr double eps0 = 8.8541878128e-12;  //!< F / m

inline constexpr double pi = std::numbers::pi;
}  // namespace constants
}  // namespace lcp
