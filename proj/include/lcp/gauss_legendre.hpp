// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/gauss_legendre.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "constants.hpp"

namespace lcp
{
struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

//! n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(std::size_t n)
{
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    auto const nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(constants::pi * (static_cast<double>(i) + 0.75)
                            / (nd + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= n; ++k)
            {
                auto const kd = static_cast<double>(k);
                double const p2 = ((2 * kd - 1) * x * p1 - (kd - 1) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1);
            double const dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double const w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

//! Rule mapped onto [a, b].
inline QuadratureRule gauss_legendre(std::size_t n, double a, double b)
{
    auto rule = gauss_legendre(n);
    double const half = (b - a) / 2;
    double const mid = (a + b) / 2;
    for (std::size_t i = 0; i < n; ++i)
    {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}
}  // namespace lcp
