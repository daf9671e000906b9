// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/corrugation.hpp
//! Uni-axial periodic surface profiles h(x) = sum_n a_n cos(n k_c x) and the
//! first-order lateral potential they induce.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "constants.hpp"
#include "errors.hpp"
#include "response.hpp"
#include "table_io.hpp"

namespace lcp
{
//! h(x) = h0 cos(k_c x).
struct Sinusoid
{
    double h0;
    double lambda;
};

//! Plateaus of height `depth` and width lambda - s centered at x = m lambda,
//! separated by symmetric triangular grooves of width s reaching h = 0 at
//! the groove center.
struct VGrooves
{
    double depth;
    double width;
    double lambda;
    std::size_t n_max = 50;
};

//! Explicit cosine series a_0 .. a_N.
struct FourierSeries
{
    double lambda;
    std::vector<double> coefficients;
};

using CorrugationProfile = std::variant<Sinusoid, VGrooves, FourierSeries>;

inline CorrugationProfile make_sinusoid(double h0, double lambda)
{
    if (!(h0 > 0) || !(lambda > 0))
        throw ConfigError("sinusoid needs h0 > 0 and lambda > 0");
    return Sinusoid{h0, lambda};
}

inline CorrugationProfile
make_vgrooves(double depth, double width, double lambda, std::size_t n_max = 50)
{
    if (!(depth > 0) || !(lambda > 0))
        throw ConfigError("grooves need depth > 0 and lambda > 0");
    if (!(width > 0 && width < lambda))
        throw ConfigError("groove width must lie in (0, lambda)");
    if (n_max < 1)
        throw ConfigError("harmonic cutoff must be >= 1");
    return VGrooves{depth, width, lambda, n_max};
}

inline CorrugationProfile make_fourier_series(double lambda,
                                              std::vector<double> coefficients)
{
    if (!(lambda > 0) || coefficients.empty())
        throw ConfigError("Fourier profile needs lambda > 0 and coefficients");
    return FourierSeries{lambda, std::move(coefficients)};
}

//! Load (n, a_n_meters) rows; missing harmonics are zero.
inline CorrugationProfile load_fourier_series(std::string const& path, double lambda)
{
    auto const rows = read_numeric_csv<2>(path);
    std::vector<double> a;
    for (auto const& r : rows)
    {
        if (r[0] < 0 || r[0] != std::floor(r[0]))
            throw ConfigError(path + ": harmonic index must be a non-negative "
                                     "integer");
        auto const n = static_cast<std::size_t>(r[0]);
        if (n >= a.size())
            a.resize(n + 1, 0.0);
        a[n] = r[1];
    }
    return make_fourier_series(lambda, std::move(a));
}

inline double period(CorrugationProfile const& p)
{
    return std::visit([](auto const& v) { return v.lambda; }, p);
}

inline double wavenumber(CorrugationProfile const& p)
{
    return 2 * constants::pi / period(p);
}

//! Highest harmonic included in series sums.
inline std::size_t harmonic_cutoff(CorrugationProfile const& p)
{
    if (std::holds_alternative<Sinusoid>(p))
        return 1;
    if (auto const* v = std::get_if<VGrooves>(&p))
        return v->n_max;
    return std::get<FourierSeries>(p).coefficients.size() - 1;
}

//! Peak-to-reference amplitude used for the perturbative-regime check.
inline double amplitude(CorrugationProfile const& p)
{
    if (auto const* s = std::get_if<Sinusoid>(&p))
        return s->h0;
    if (auto const* v = std::get_if<VGrooves>(&p))
        return v->depth;
    double sum = 0;
    for (double a : std::get<FourierSeries>(p).coefficients)
        sum += std::abs(a);
    return sum;
}

inline double fourier_coefficient(CorrugationProfile const& p, std::size_t n)
{
    if (auto const* s = std::get_if<Sinusoid>(&p))
        return n == 1 ? s->h0 : 0.0;
    if (auto const* v = std::get_if<VGrooves>(&p))
    {
        double const ratio = v->width / v->lambda;
        if (n == 0)
            return v->depth * (1 - ratio / 2);
        double const nn = static_cast<double>(n);
        double const sign = (n % 2 == 1) ? 1.0 : -1.0;
        return sign * 2 * v->depth / (constants::pi * constants::pi * ratio)
               * (1 - std::cos(nn * constants::pi * ratio)) / (nn * nn);
    }
    auto const& a = std::get<FourierSeries>(p).coefficients;
    return n < a.size() ? a[n] : 0.0;
}

inline std::vector<double> fourier_coefficients(CorrugationProfile const& p)
{
    std::vector<double> out(harmonic_cutoff(p) + 1);
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = fourier_coefficient(p, n);
    return out;
}

//! Upper bound on |a_m| for all m >= n; drives series truncation.
inline double coefficient_bound(CorrugationProfile const& p, std::size_t n)
{
    if (n > harmonic_cutoff(p))
        return 0;
    if (auto const* v = std::get_if<VGrooves>(&p))
    {
        if (n == 0)
            return v->depth;
        double const nn = static_cast<double>(n);
        return 4 * v->depth * v->lambda
               / (constants::pi * constants::pi * v->width * nn * nn);
    }
    if (auto const* s = std::get_if<Sinusoid>(&p))
        return s->h0;
    auto const& a = std::get<FourierSeries>(p).coefficients;
    double m = 0;
    for (std::size_t i = n; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i]));
    return m;
}

namespace detail
{
//! Reduce x to [-lambda/2, lambda/2).
inline double fold_period(double x, double lambda)
{
    double r = std::fmod(x, lambda);
    if (r >= lambda / 2)
        r -= lambda;
    else if (r < -lambda / 2)
        r += lambda;
    return r;
}
}  // namespace detail

//! Real-space height h(x).
inline double height(CorrugationProfile const& p, double x)
{
    if (auto const* v = std::get_if<VGrooves>(&p))
    {
        double const d = std::abs(detail::fold_period(x, v->lambda));
        double const half_plateau = (v->lambda - v->width) / 2;
        if (d <= half_plateau)
            return v->depth;
        return v->depth * (v->lambda / 2 - d) / (v->width / 2);
    }
    double const kc = wavenumber(p);
    double sum = 0;
    for (std::size_t n = 0; n <= harmonic_cutoff(p); ++n)
        sum += fourier_coefficient(p, n) * std::cos(static_cast<double>(n) * kc * x);
    return sum;
}

//! dh/dx; on groove kinks the right-hand slope is returned.
inline double height_slope(CorrugationProfile const& p, double x)
{
    if (auto const* v = std::get_if<VGrooves>(&p))
    {
        double const r = detail::fold_period(x, v->lambda);
        double const half_plateau = (v->lambda - v->width) / 2;
        if (r >= -half_plateau && r < half_plateau)
            return 0.0;
        double const slope = 2 * v->depth / v->width;
        return r >= half_plateau ? -slope : slope;
    }
    double const kc = wavenumber(p);
    double sum = 0;
    for (std::size_t n = 1; n <= harmonic_cutoff(p); ++n)
    {
        double const nk = static_cast<double>(n) * kc;
        sum -= nk * fourier_coefficient(p, n) * std::sin(nk * x);
    }
    return sum;
}

//! Location and weight of a delta function in h''(x) for the grooves.
struct Kink
{
    double x;
    double jump;  //!< change of slope across the kink [dimensionless]
};

//! Kinks of a V-groove profile inside [x_lo, x_hi].
inline std::vector<Kink> groove_kinks(VGrooves const& v, double x_lo, double x_hi)
{
    std::vector<Kink> out;
    double const half_plateau = (v.lambda - v.width) / 2;
    double const slope = 2 * v.depth / v.width;
    auto const m_lo = static_cast<long>(std::floor(x_lo / v.lambda)) - 1;
    auto const m_hi = static_cast<long>(std::ceil(x_hi / v.lambda)) + 1;
    for (long m = m_lo; m <= m_hi; ++m)
    {
        double const center = static_cast<double>(m) * v.lambda;
        Kink const cand[] = {{center - half_plateau, -slope},
                             {center + half_plateau, -slope},
                             {center + v.lambda / 2, 2 * slope}};
        for (auto const& k : cand)
        {
            if (k.x >= x_lo && k.x <= x_hi)
                out.push_back(k);
        }
    }
    return out;
}

//! Same shape with a different period; groove width scales with it.
inline CorrugationProfile with_period(CorrugationProfile const& p, double lambda)
{
    if (!(lambda > 0))
        throw ConfigError("period must be positive");
    if (auto const* s = std::get_if<Sinusoid>(&p))
        return Sinusoid{s->h0, lambda};
    if (auto const* v = std::get_if<VGrooves>(&p))
        return VGrooves{v->depth, v->width * lambda / v->lambda, lambda, v->n_max};
    auto f = std::get<FourierSeries>(p);
    f.lambda = lambda;
    return f;
}

//! Messages for geometries outside the small-amplitude regime
//! (amplitude < z/5 and < lambda/5).
inline std::vector<std::string> perturbative_warnings(CorrugationProfile const& p,
                                                      double z)
{
    std::vector<std::string> out;
    double const a = amplitude(p);
    if (!(a < z / 5))
        out.push_back("corrugation amplitude is not small compared to the "
                      "atom height (first-order result unreliable)");
    if (!(a < period(p) / 5))
        out.push_back("corrugation amplitude is not small compared to the "
                      "period (first-order result unreliable)");
    return out;
}

//---------------------------------------------------------------------------//
// Lateral potential
//---------------------------------------------------------------------------//
struct LateralPotentialSample
{
    double x;
    double z;
    double U1;  //!< J
    Method method;
    double error = 0;  //!< truncation + quadrature estimate, J
};

//! Relative size below which further harmonics are dropped. Groove sums
//! cancel strongly when k_c z is small, so the cut is set near roundoff.
inline constexpr double series_cutoff = 1e-15;

namespace detail
{
struct SeriesResult
{
    double value = 0;
    double error = 0;
};

//! Bound on the remaining terms of a series whose envelope shrinks by
//! `ratio` per term.
inline double geometric_tail(double envelope, double ratio)
{
    ratio = std::min(ratio, 0.999);
    return envelope * ratio / (1 - ratio);
}

//! sum_n a_n n^power g(n k_c, z) basis(n), stopping once the envelope
//! |a|_max(n) n^power |g(n k_c, z)| drops below series_cutoff relative to
//! the accumulated envelope. `g_at` supplies g for a harmonic.
template<class Basis, class GAt>
SeriesResult harmonic_series(CorrugationProfile const& p,
                             std::size_t n_first,
                             int power,
                             Basis&& basis,
                             GAt&& g_at)
{
    SeriesResult r;
    double envelope_sum = 0;
    double last_envelope = 0;
    std::size_t const n_max = harmonic_cutoff(p);
    for (std::size_t n = n_first; n <= n_max; ++n)
    {
        double const bound = coefficient_bound(p, n);
        if (bound == 0)
            break;
        double const an = fourier_coefficient(p, n);
        auto const g = g_at(n);
        double const w = std::pow(static_cast<double>(n), power);
        double const envelope = bound * w * std::abs(g.value);
        r.value += an * w * g.value * basis(n);
        r.error += std::abs(an * w * g.error);
        envelope_sum += envelope;
        bool const converged
            = n > n_first && envelope <= series_cutoff * envelope_sum;
        if (converged || n == n_max)
        {
            // groove spectra are infinite; the other profiles end at n_max
            bool const more = n < n_max || std::holds_alternative<VGrooves>(p);
            double const ratio = last_envelope > 0 ? envelope / last_envelope : 1;
            if (more)
            {
                r.error += converged ? geometric_tail(envelope, ratio)
                                     : envelope / (1 - std::min(ratio, 0.999));
            }
            return r;
        }
        last_envelope = envelope;
    }
    return r;
}
}  // namespace detail

inline LateralPotentialSample lateral_potential(CorrugationProfile const& p,
                                                double x,
                                                double z,
                                                ResponseEngine const& engine)
{
    if (!(z > 0))
        throw RangeError("atom height must be positive");
    if (engine.method() == Method::PFA && std::holds_alternative<VGrooves>(p))
    {
        auto const g0 = engine.g_pfa(z);
        double const h = height(p, x);
        return {x, z, h * g0.value, Method::PFA, std::abs(h) * g0.error};
    }
    double const kc = wavenumber(p);
    auto const s = detail::harmonic_series(
        p, 0, 0,
        [&](std::size_t n) { return std::cos(static_cast<double>(n) * kc * x); },
        [&](std::size_t n) { return engine.evaluate(static_cast<double>(n) * kc, z); });
    return {x, z, s.value, engine.method(), s.error};
}

//! -dU1/dx [N].
inline double lateral_force(CorrugationProfile const& p,
                            double x,
                            double z,
                            ResponseEngine const& engine)
{
    if (!(z > 0))
        throw RangeError("atom height must be positive");
    if (engine.method() == Method::PFA && std::holds_alternative<VGrooves>(p))
        return -height_slope(p, x) * engine.g_pfa(z).value;
    double const kc = wavenumber(p);
    auto const s = detail::harmonic_series(
        p, 1, 1,
        [&](std::size_t n) { return std::sin(static_cast<double>(n) * kc * x); },
        [&](std::size_t n) { return engine.evaluate(static_cast<double>(n) * kc, z); });
    return kc * s.value;
}

//! Amplitude a_1 g(k_c, z) of the dominant harmonic of the groove potential;
//! representative of the full potential once k_c z is well above 1.
inline double effective_sine_amplitude(VGrooves const& v,
                                       double z,
                                       ResponseEngine const& engine)
{
    CorrugationProfile const p = v;
    return fourier_coefficient(p, 1) * engine.g(wavenumber(p), z);
}

//! Groove width maximizing |a_1| at fixed depth and period: the root of
//! tan(u/2) = u with u = pi s / lambda.
inline double optimal_groove_width(double lambda)
{
    if (!(lambda > 0))
        throw ConfigError("period must be positive");
    auto f = [](double u) { return u * std::cos(u / 2) - std::sin(u / 2); };
    auto const [lo, hi] = boost::math::tools::bisect(
        f, 1.0, constants::pi, boost::math::tools::eps_tolerance<double>(50));
    return (lo + hi) / 2 / constants::pi * lambda;
}
}  // namespace lcp
