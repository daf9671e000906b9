// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/response.hpp
//! First-order response function g(k, z_A) of a perfectly reflecting plane:
//! the energy shift per unit Fourier amplitude of the surface profile.
//!
//! Exact values come from the double quadrature over imaginary frequency and
//! intermediate lateral wavevector. Closed forms exist in the retarded
//! (static polarizability) and non-retarded limits; the proximity-force and
//! pairwise-summation approximations are provided for comparison.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

// Boost 1.74 pchip calls isnan unqualified; math.h puts it in scope.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bessel.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "polarizability.hpp"
#include "scattering.hpp"

namespace lcp
{
//---------------------------------------------------------------------------//
// Shape functions
//---------------------------------------------------------------------------//
//! Retarded perfect-conductor shape, F(0) = 1.
inline double cp_shape(double Z)
{
    return std::exp(-Z) * (1 + Z + 16 * Z * Z / 45 + Z * Z * Z / 45);
}

//! Pairwise-summation shape, F_PWS(0) = 1.
inline double pws_shape(double Z)
{
    return std::exp(-Z) * (1 + Z + Z * Z / 3);
}

//! Non-retarded shape G(Z) = Z^2 [2 K_2(Z) + Z K_3(Z)], G(0) = 12.
inline double vdw_shape(double Z)
{
    if (Z == 0)
        return 12;
    auto const k = bessel_k_sequence<4>(Z);
    return Z * Z * (2 * k[2] + Z * k[3]);
}

//---------------------------------------------------------------------------//
// Closed forms
//---------------------------------------------------------------------------//
struct ResponseQuery
{
    double k;  //!< lateral wavenumber [rad / m]
    double z;  //!< atom height [m]
};

inline void check_query(double k, double z)
{
    if (!(k >= 0) || !std::isfinite(k))
        throw RangeError("lateral wavenumber must be >= 0");
    if (!(z > 0) || !std::isfinite(z))
        throw RangeError("atom height must be > 0");
}

//! -3 hbar c alpha0 / (8 pi^2 eps0 z^5): the retarded g at k = 0.
inline double cp_scale(double z, double alpha0)
{
    using namespace constants;
    return -3 * hbar * c * alpha0 / (8 * pi * pi * eps0 * std::pow(z, 5));
}

inline double g_cp_analytic(ResponseQuery q, double alpha0)
{
    check_query(q.k, q.z);
    return cp_scale(q.z, alpha0) * cp_shape(q.k * q.z);
}

inline double g_vdw_analytic(ResponseQuery q, PolarizabilityModel const& model)
{
    using namespace constants;
    check_query(q.k, q.z);
    double const integral = integrated_alpha(model);
    return -hbar * vdw_shape(q.k * q.z) / (64 * pi * pi * eps0 * std::pow(q.z, 4))
           * integral;
}

//! Pairwise-summation prefactor that reproduces the planar retarded
//! potential: 15 hbar c alpha0 / (16 pi^3 eps0).
inline double pws_calibration(double alpha0)
{
    using namespace constants;
    return 15 * hbar * c * alpha0 / (16 * pi * pi * pi * eps0);
}

inline double g_pws(ResponseQuery q, double alpha0)
{
    check_query(q.k, q.z);
    return cp_scale(q.z, alpha0) * pws_shape(q.k * q.z);
}

//! Retarded potential of a flat perfect mirror, -3 hbar c alpha0 / (32 pi^2
//! eps0 z^4). Its negative derivative is g(0, z).
inline double plane_potential_cp(double z, double alpha0)
{
    using namespace constants;
    return -3 * hbar * c * alpha0 / (32 * pi * pi * eps0 * std::pow(z, 4));
}

//---------------------------------------------------------------------------//
// Quadrature
//---------------------------------------------------------------------------//
struct Tolerances
{
    double rel = 1e-6;
    double abs = 1e-30;  //!< J / m
};

struct Estimate
{
    double value;
    double error;
};

namespace detail
{
using boost::math::quadrature::gauss_kronrod;

//! Exponential decay margin for truncating semi-infinite ranges.
inline constexpr double decay_margin = 60;

//! \int d^2u exp(-(A_o + A_i)) pc_sum_times_w2(t, |u|, |u - K|, C), with
//! lengths in units of z and K > 0.
//!
//! Elliptic coordinates with foci at the origins of the outgoing and incoming
//! wavevectors: |u| = K (cosh mu + cos nu)/2, |u - K| = K (cosh mu - cos nu)/2.
//! The area element equals |u||u - K| and the angle between the two legs
//! depends only on (mu, nu), so the focal points are regular.
inline double lateral_integral(double t, double K, double tol)
{
    double const sigma_max = K + decay_margin;
    double const mu_max = std::acosh(std::max(sigma_max / K, 1.0));
    double const K2 = K * K / 4;

    auto along_nu = [&](double mu) {
        double const ch = std::cosh(mu);
        double const sh = std::sinh(mu);
        auto f = [&](double nu) {
            double const cn = std::cos(nu);
            double const sn = std::sin(nu);
            double const u_out = K * (ch + cn) / 2;
            double const u_in = K * (ch - cn) / 2;
            double const area = K2 * (sh * sh + sn * sn);
            if (area == 0)
                return 0.0;
            double const cos_phi
                = std::clamp((sh * sh - sn * sn) / (sh * sh + sn * sn), -1.0, 1.0);
            double const decay
                = std::exp(-(std::hypot(t, u_out) + std::hypot(t, u_in)));
            return area * decay * pc_sum_times_w2(t, u_out, u_in, cos_phi);
        };
        return gauss_kronrod<double, 15>::integrate(f, 0.0, constants::pi, 12, tol);
    };
    return 2 * gauss_kronrod<double, 15>::integrate(along_nu, 0.0, mu_max, 15, tol);
}

//! k = 0 limit of lateral_integral / (8 pi^3). At coincident wavevectors
//! the weighted kernel is -2 A^2 e^{-2A} and the radial integral is
//! elementary.
inline double specular_lateral_integral(double t)
{
    using constants::pi;
    return -std::exp(-2 * t)
           * (t * t * t / 2 + 3 * t * t / 4 + 3 * t / 4 + 3.0 / 8)
           / (2 * pi * pi);
}

//! Break points for the dimensionless frequency integral.
inline std::vector<double> frequency_breaks(PolarizabilityModel const& model,
                                            double z,
                                            double t_max)
{
    std::vector<double> breaks{0.0};
    if (auto omega = characteristic_frequency(model))
    {
        double tc = *omega * z / constants::c;
        for (double b = tc; b < t_max; b *= 10)
        {
            if (b > 1e-12)
                breaks.push_back(b);
        }
    }
    breaks.push_back(1.0);
    breaks.push_back(t_max);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [t_max](double b) { return b > t_max; }),
                 breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return breaks;
}
}  // namespace detail

//! Exact response by quadrature with its error estimate.
inline Estimate g_exact_estimate(ResponseQuery q,
                                 PolarizabilityModel const& model,
                                 Tolerances tol = {})
{
    using namespace constants;
    check_query(q.k, q.z);
    double const K = q.k * q.z;
    double const t_max
        = std::sqrt((K + detail::decay_margin) * (K + detail::decay_margin) - K * K)
          / 2;
    double const xi_scale = c / q.z;
    if (max_frequency(model) < t_max * xi_scale)
        throw RangeError("tabulated polarizability does not cover the "
                         "frequencies required at this height");

    // Below these floors the error estimates are roundoff, and further
    // bisection only burns time before the final check rejects the result.
    double const inner_tol = std::max(tol.rel * 1e-2, 1e-13);
    double const outer_tol = std::max(tol.rel * 0.1, 1e-15);
    double const alpha0 = static_alpha(model);

    auto integrand = [&](double t) {
        double const a = alpha_at(model, t * xi_scale) / alpha0;
        if (K == 0)
            return a * detail::specular_lateral_integral(t);
        return a * detail::lateral_integral(t, K, inner_tol)
               / (8 * pi * pi * pi);
    };

    double sum = 0;
    double err = 0;
    auto const breaks = detail::frequency_breaks(model, q.z, t_max);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        double e = 0;
        sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, breaks[i], breaks[i + 1], 10, outer_tol, &e);
        err += e;
    }
    double const scale = hbar * c * alpha0 / (eps0 * std::pow(q.z, 5));
    Estimate result{scale * sum, std::abs(scale) * err};
    if (!(result.error <= tol.rel * std::abs(result.value) + tol.abs))
        throw AccuracyError("response quadrature did not converge",
                            result.value, result.error);
    return result;
}

inline double g_exact(ResponseQuery q,
                      PolarizabilityModel const& model,
                      Tolerances tol = {})
{
    return g_exact_estimate(q, model, tol).value;
}

//---------------------------------------------------------------------------//
// Engine
//---------------------------------------------------------------------------//
enum class Method
{
    QuadratureExact,
    AnalyticCP,
    AnalyticVdW,
    PFA,
    PWS
};

inline char const* to_string(Method m)
{
    switch (m)
    {
        case Method::QuadratureExact:
            return "QuadratureExact";
        case Method::AnalyticCP:
            return "AnalyticCP";
        case Method::AnalyticVdW:
            return "AnalyticVdW";
        case Method::PFA:
            return "PFA";
        case Method::PWS:
            return "PWS";
    }
    return "?";
}

inline bool is_exact_type(Method m)
{
    return m == Method::QuadratureExact || m == Method::AnalyticCP
           || m == Method::AnalyticVdW;
}

//! Interpolated g(k, z) on a z grid for a fixed set of k values.
class ZGridCache
{
  public:
    struct Entry
    {
        double z_lo, z_hi;
        boost::math::interpolators::pchip<std::vector<double>> log_abs_g;
    };

    void insert(double k, Entry e) { entries_.emplace(k, std::move(e)); }

    std::optional<double> lookup(double k, double z) const
    {
        auto it = entries_.find(k);
        if (it == entries_.end() || z < it->second.z_lo || z > it->second.z_hi)
            return std::nullopt;
        return -std::exp(it->second.log_abs_g(z));
    }

    std::vector<double> keys() const
    {
        std::vector<double> out;
        for (auto const& [k, e] : entries_)
            out.push_back(k);
        return out;
    }

    Entry const& entry(double k) const { return entries_.at(k); }

  private:
    std::map<double, Entry> entries_;
};

class ResponseEngine
{
  public:
    ResponseEngine(Method method,
                   PolarizabilityModel model,
                   Tolerances tol = {},
                   Method pfa_base = Method::AnalyticCP)
        : method_(method), model_(std::move(model)), tol_(tol), pfa_base_(pfa_base)
    {
        if (!(tol.rel > 0) || !(tol.abs >= 0))
            throw ConfigError("tolerances must be positive");
        if (!is_exact_type(pfa_base_))
            throw ConfigError("PFA base method must be an exact-type method");
        if (exact_method() == Method::AnalyticVdW)
            integrated_alpha(model_);  // throws DivergenceError for static
    }

    Method method() const noexcept { return method_; }
    PolarizabilityModel const& model() const noexcept { return model_; }
    Tolerances tolerances() const noexcept { return tol_; }
    double alpha0() const { return static_alpha(model_); }

    //! The method whose k = 0 value anchors PFA and whose ratios are reported.
    Method exact_method() const
    {
        if (method_ == Method::PFA)
            return pfa_base_;
        if (method_ == Method::PWS)
            return Method::AnalyticCP;
        return method_;
    }

    Estimate evaluate(double k, double z) const
    {
        check_query(k, z);
        if (method_ == Method::PFA)
            return evaluate_as(pfa_base_, 0.0, z);
        if (cache_)
        {
            if (auto v = cache_->lookup(k, z))
                return {*v, 10 * tol_.rel * std::abs(*v)};
        }
        return evaluate_as(method_, k, z);
    }

    double g(double k, double z) const { return evaluate(k, z).value; }
    double operator()(double k, double z) const { return g(k, z); }

    //! Vector-wavenumber entry point; the response depends only on |k|.
    double g(std::array<double, 2> k, double z) const
    {
        return g(std::hypot(k[0], k[1]), z);
    }

    //! g(0, z) under the exact method (equal to -dU0/dz).
    Estimate g_pfa(double z) const { return evaluate_as(exact_method(), 0.0, z); }

    //! True when the engine describes the non-retarded regime.
    bool is_vdw_regime(double z) const
    {
        Method const m = exact_method();
        if (m == Method::AnalyticVdW)
            return true;
        if (m == Method::QuadratureExact)
        {
            if (auto omega = characteristic_frequency(model_))
                return z * *omega / constants::c < 1;
        }
        return false;
    }

    //! Copy of this engine with g(k, z) tabulated for each k on [z_lo, z_hi].
    ResponseEngine with_z_cache(std::vector<double> const& ks,
                                double z_lo,
                                double z_hi,
                                std::size_t points = 201) const
    {
        if (!(z_lo > 0) || !(z_hi > z_lo) || points < 4)
            throw ConfigError("invalid z-cache range");
        auto cache = cache_ ? std::make_shared<ZGridCache>(*cache_)
                            : std::make_shared<ZGridCache>();
        for (double k : ks)
        {
            std::vector<double> zs(points), ys(points);
            for (std::size_t i = 0; i < points; ++i)
            {
                zs[i] = z_lo + (z_hi - z_lo) * static_cast<double>(i)
                                   / static_cast<double>(points - 1);
                double const v = evaluate_as(method_, k, zs[i]).value;
                if (!(v < 0))
                    throw AccuracyError("z-cache needs a negative response", v, 0);
                ys[i] = std::log(-v);
            }
            cache->insert(k, ZGridCache::Entry{
                                 z_lo, z_hi,
                                 boost::math::interpolators::pchip<std::vector<double>>(
                                     std::move(zs), std::move(ys))});
        }
        ResponseEngine copy = *this;
        copy.cache_ = std::move(cache);
        return copy;
    }

    bool has_cache() const noexcept { return static_cast<bool>(cache_); }

    //! Largest relative deviation between cached and direct values at
    //! random held-out heights.
    double validate_cache(std::size_t samples = 10, unsigned seed = 12345) const
    {
        if (!cache_)
            return 0;
        std::mt19937_64 rng(seed);
        double worst = 0;
        for (double k : cache_->keys())
        {
            auto const& e = cache_->entry(k);
            std::uniform_real_distribution<double> dist(e.z_lo, e.z_hi);
            for (std::size_t i = 0; i < samples; ++i)
            {
                double const z = dist(rng);
                double const cached = *cache_->lookup(k, z);
                double const direct = evaluate_as(method_, k, z).value;
                worst = std::max(worst, std::abs(cached / direct - 1));
            }
        }
        return worst;
    }

  private:
    Estimate evaluate_as(Method m, double k, double z) const
    {
        switch (m)
        {
            case Method::QuadratureExact:
                return g_exact_estimate({k, z}, model_, tol_);
            case Method::AnalyticCP:
                return {g_cp_analytic({k, z}, alpha0()), 0.0};
            case Method::AnalyticVdW:
                return {g_vdw_analytic({k, z}, model_), 0.0};
            case Method::PWS:
                return {g_pws({k, z}, alpha0()), 0.0};
            case Method::PFA:
                return evaluate_as(pfa_base_, 0.0, z);
        }
        return {0, 0};
    }

    Method method_;
    PolarizabilityModel model_;
    Tolerances tol_;
    Method pfa_base_;
    std::shared_ptr<ZGridCache const> cache_;
};

//! g(0, z) under the engine's exact method, i.e. -dU0/dz.
inline double g_pfa(double z, ResponseEngine const& engine)
{
    return engine.g_pfa(z).value;
}

//! g(k, z) / g(0, z) under the engine's exact method.
inline Estimate rho_pfa_estimate(ResponseQuery q, ResponseEngine const& engine)
{
    check_query(q.k, q.z);
    if (engine.method() == Method::PWS)
        throw ConfigError("rho_pfa needs an exact-type engine");
    if (q.k == 0)
        return {1.0, 0.0};
    ResponseEngine const exact(engine.exact_method(), engine.model(),
                               engine.tolerances());
    auto const num = exact.evaluate(q.k, q.z);
    auto const den = exact.evaluate(0.0, q.z);
    double const r = num.value / den.value;
    return {r, std::abs(r) * (num.error / std::abs(num.value)
                              + den.error / std::abs(den.value))};
}

inline double rho_pfa(ResponseQuery q, ResponseEngine const& engine)
{
    return rho_pfa_estimate(q, engine).value;
}

//! g(k, z) / g_PWS(k, z); only meaningful in the retarded regime where the
//! pairwise prefactor was calibrated.
inline Estimate rho_pws_estimate(ResponseQuery q, ResponseEngine const& engine)
{
    check_query(q.k, q.z);
    if (engine.method() == Method::PWS || engine.is_vdw_regime(q.z))
        throw CalibrationDomainError("pairwise summation is calibrated in "
                                     "the retarded regime only");
    ResponseEngine const exact(engine.exact_method(), engine.model(),
                               engine.tolerances());
    auto const num = exact.evaluate(q.k, q.z);
    double const den = g_pws(q, engine.alpha0());
    double const r = num.value / den;
    return {r, std::abs(r) * num.error / std::abs(num.value)};
}

inline double rho_pws(ResponseQuery q, ResponseEngine const& engine)
{
    return rho_pws_estimate(q, engine).value;
}
}  // namespace lcp
