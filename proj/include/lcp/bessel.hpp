// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/bessel.hpp
//! Integer-order modified Bessel functions of the second kind.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "errors.hpp"

namespace lcp
{
//! K_0 .. K_{N-1} at x > 0. K_0 and K_1 come from the standard library;
//! higher orders use the upward recurrence K_{n+1} = K_{n-1} + (2n/x) K_n,
//! which is stable for K.
template<std::size_t N>
std::array<double, N> bessel_k_sequence(double x)
{
    static_assert(N >= 2);
    if (!(x > 0))
        throw RangeError("modified Bessel K needs x > 0");
    std::array<double, N> k{};
    k[0] = std::cyl_bessel_k(0.0, x);
    k[1] = std::cyl_bessel_k(1.0, x);
    for (std::size_t n = 1; n + 1 < N; ++n)
        k[n + 1] = k[n - 1] + 2.0 * static_cast<double>(n) / x * k[n];
    return k;
}

inline double bessel_k2(double x)
{
    return bessel_k_sequence<3>(x)[2];
}

inline double bessel_k3(double x)
{
    return bessel_k_sequence<4>(x)[3];
}
}  // namespace lcp
