// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/bec.hpp
//! Relative shift of the lateral dipole frequency of a trapped atom cloud
//! caused by the curvature of the first-order lateral potential.
//!
//! With omega_cm^2 = omega_x^2 + (1/m) <d^2 U1 / dx^2> the relative shift is
//! gamma = <d^2 U1 / dx^2> / (2 m omega_x^2), averaged over the normalized
//! Thomas-Fermi column density of the cloud in the (x, z) plane.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "constants.hpp"
#include "corrugation.hpp"
#include "errors.hpp"
#include "gauss_legendre.hpp"
#include "parallel.hpp"
#include "response.hpp"
#include "scan.hpp"

namespace lcp
{
struct BecConfig
{
    double mass;  //!< kg
    double omega_x;  //!< rad / s
    double tf_radius;  //!< m, zero for a single atom
    double z_cm;  //!< m
};

//! Throws ConfigError unless the cloud stays clear of the corrugated surface.
inline void validate(BecConfig const& c, CorrugationProfile const& p)
{
    if (!(c.mass > 0) || !(c.omega_x > 0) || !(c.z_cm > 0))
        throw ConfigError("mass, trap frequency and height must be positive");
    if (!(c.tf_radius >= 0))
        throw ConfigError("Thomas-Fermi radius must be >= 0");
    if (!(c.tf_radius + amplitude(p) < c.z_cm))
        throw ConfigError("condensate touches the corrugated surface");
}

//! Normalized 2D Thomas-Fermi column density
//! n0(x, z) = 15 / (6 pi R^5) (R^2 - x^2 - z^2)^{3/2} on the disk.
struct ThomasFermiDensity
{
    double radius;

    double operator()(double x, double z) const
    {
        double const r2 = radius * radius - x * x - z * z;
        if (r2 <= 0)
            return 0;
        return 15 / (6 * constants::pi * std::pow(radius, 5)) * std::pow(r2, 1.5);
    }
};

struct GammaResult
{
    double value;
    double error;
};

struct GammaOptions
{
    std::size_t radial_nodes = 32;
    std::size_t angular_nodes = 64;
    double rel_tol = 1e-6;
    int max_doublings = 6;
};

namespace detail
{
inline double curvature_prefactor(BecConfig const& c)
{
    return 1 / (2 * c.mass * c.omega_x * c.omega_x);
}

//! PFA shift for grooves: U1 = h(x) g(0, z), so d^2U1/dx^2 is a comb of
//! delta functions at the groove kinks, each weighted by the density along
//! the vertical chord through it.
inline GammaResult gamma_pfa_grooves(VGrooves const& v,
                                     BecConfig const& c,
                                     ResponseEngine const& engine)
{
    double const R = c.tf_radius;
    if (R == 0)
        return {0.0, 0.0};  // x = 0 is a plateau center
    auto const kinks = groove_kinks(v, -R, R);
    if (kinks.empty())
        return {0.0, 0.0};

    auto const rule = gauss_legendre(64, -constants::pi / 2, constants::pi / 2);
    double const norm = 15 / (6 * constants::pi * std::pow(R, 5));
    double sum = 0;
    double err = 0;
    for (auto const& k : kinks)
    {
        double const half = std::sqrt(std::max(R * R - k.x * k.x, 0.0));
        double chord = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        {
            double const phi = rule.nodes[i];
            double const cphi = std::cos(phi);
            auto const g0 = engine.g_pfa(c.z_cm + half * std::sin(phi));
            chord += rule.weights[i] * std::pow(half * cphi, 4) * g0.value;
            err += std::abs(rule.weights[i] * std::pow(half * cphi, 4) * g0.error
                            * k.jump * norm);
        }
        sum += k.jump * norm * chord;
    }
    return {curvature_prefactor(c) * sum, curvature_prefactor(c) * err};
}
}  // namespace detail

//! Shift for a point-like atom at the plateau (crest) center x = 0.
inline GammaResult gamma_single_atom(CorrugationProfile const& p,
                                     BecConfig const& c,
                                     ResponseEngine const& engine)
{
    validate(c, p);
    if (engine.method() == Method::PFA && std::holds_alternative<VGrooves>(p))
        return {0.0, 0.0};
    double const kc = wavenumber(p);
    auto const s = detail::harmonic_series(
        p, 1, 2, [](std::size_t) { return 1.0; },
        [&](std::size_t n) {
            return engine.evaluate(static_cast<double>(n) * kc, c.z_cm);
        });
    double const pref = -kc * kc * detail::curvature_prefactor(c);
    return {pref * s.value, std::abs(pref) * s.error};
}

//! Shift for a Thomas-Fermi cloud of radius R centered at x = 0, z = z_cm.
//!
//! Each harmonic contributes n^2 a_n times the density average of
//! g(n k_c, z) cos(n k_c x), computed in polar coordinates about the cloud
//! center with rho = sin(phi) (Gauss-Legendre) and a periodic trapezoid rule
//! in the polar angle. Node counts double until successive totals agree to
//! rel_tol.
inline GammaResult gamma_bec(CorrugationProfile const& p,
                             BecConfig const& c,
                             ResponseEngine const& engine,
                             GammaOptions opt = {})
{
    validate(c, p);
    if (auto const* v = std::get_if<VGrooves>(&p);
        v && engine.method() == Method::PFA)
        return detail::gamma_pfa_grooves(*v, c, engine);
    if (c.tf_radius == 0)
        return gamma_single_atom(p, c, engine);

    double const R = c.tf_radius;
    double const kc = wavenumber(p);
    bool const use_cache
        = engine.method() == Method::QuadratureExact && !engine.has_cache();
    std::map<std::size_t, ResponseEngine> cached;
    auto engine_for = [&](std::size_t n) -> ResponseEngine const& {
        if (!use_cache)
            return engine;
        auto it = cached.find(n);
        if (it == cached.end())
        {
            it = cached
                     .emplace(n, engine.with_z_cache({static_cast<double>(n) * kc},
                                                     c.z_cm - R, c.z_cm + R))
                     .first;
        }
        return it->second;
    };

    auto harmonic_average = [&](std::size_t n, std::size_t nr, std::size_t nt) {
        auto const rule = gauss_legendre(nr, 0.0, constants::pi / 2);
        double const k = static_cast<double>(n) * kc;
        auto const& eng = engine_for(n);
        double sum = 0;
        double err = 0;
        double const dtheta = 2 * constants::pi / static_cast<double>(nt);
        for (std::size_t i = 0; i < nr; ++i)
        {
            double const rho = std::sin(rule.nodes[i]);
            double const w = rule.weights[i] * rho * std::pow(std::cos(rule.nodes[i]), 4);
            double ring = 0;
            for (std::size_t j = 0; j < nt; ++j)
            {
                double const th = dtheta * static_cast<double>(j);
                auto const g = eng.evaluate(k, c.z_cm + rho * R * std::sin(th));
                ring += g.value * std::cos(k * rho * R * std::cos(th));
                err += w * dtheta * g.error;
            }
            sum += w * ring * dtheta;
        }
        return Estimate{sum * 15 / (6 * constants::pi), err * 15 / (6 * constants::pi)};
    };

    auto total = [&](std::size_t nr, std::size_t nt) {
        double value = 0;
        double err = 0;
        double envelope_sum = 0;
        double last_envelope = 0;
        std::size_t const n_max = harmonic_cutoff(p);
        for (std::size_t n = 1; n <= n_max; ++n)
        {
            double const bound = coefficient_bound(p, n);
            if (bound == 0)
                break;
            double const nn = static_cast<double>(n) * static_cast<double>(n);
            double const an = fourier_coefficient(p, n);
            // the average is dominated by the bottom edge of the cloud
            double const edge = std::abs(engine_for(n).g(static_cast<double>(n) * kc,
                                                         c.z_cm - R));
            double const envelope = nn * bound * edge;
            envelope_sum += envelope;
            if (an != 0)
            {
                auto const avg = harmonic_average(n, nr, nt);
                value += nn * an * avg.value;
                err += std::abs(nn * an) * avg.error;
            }
            bool const converged = n > 1 && envelope <= series_cutoff * envelope_sum;
            if (converged || n == n_max)
            {
                bool const more = n < n_max || std::holds_alternative<VGrooves>(p);
                double const ratio = last_envelope > 0 ? envelope / last_envelope : 1;
                if (more)
                {
                    err += converged ? detail::geometric_tail(envelope, ratio)
                                     : envelope / (1 - std::min(ratio, 0.999));
                }
                break;
            }
            last_envelope = envelope;
        }
        return GammaResult{value, err};
    };

    double const pref = -kc * kc * detail::curvature_prefactor(c);
    std::size_t nr = opt.radial_nodes;
    std::size_t nt = opt.angular_nodes;
    auto prev = total(nr, nt);
    for (int d = 0; d < opt.max_doublings; ++d)
    {
        nr *= 2;
        nt *= 2;
        auto const next = total(nr, nt);
        double const change = std::abs(next.value - prev.value);
        prev = next;
        if (change <= opt.rel_tol * std::abs(next.value))
            return {pref * next.value, std::abs(pref) * (next.error + change)};
    }
    throw AccuracyError("condensate average did not converge", pref * prev.value,
                        std::abs(pref) * prev.error);
}

//---------------------------------------------------------------------------//
// Scans
//---------------------------------------------------------------------------//
//! The three engines compared in frequency-shift scans.
struct GammaMethods
{
    ResponseEngine exact;
    ResponseEngine pfa;
    ResponseEngine pws;

    static GammaMethods from_exact(ResponseEngine const& exact)
    {
        return {exact,
                ResponseEngine(Method::PFA, exact.model(), exact.tolerances(),
                               exact.exact_method()),
                ResponseEngine(Method::PWS, exact.model(), exact.tolerances())};
    }
};

//! gamma versus k_c z_cm at fixed z_cm, for each radius in `radii`. The
//! profile is rescaled to each period keeping its shape (the groove width
//! stays a fixed fraction of the period).
inline ScanResult gamma_scan(CorrugationProfile const& base,
                             BecConfig const& config,
                             GammaMethods const& methods,
                             std::vector<double> const& kcz,
                             std::vector<double> const& radii,
                             unsigned threads = 1,
                             GammaOptions opt = {})
{
    for (std::size_t i = 1; i < kcz.size(); ++i)
    {
        if (!(kcz[i] > kcz[i - 1]))
            throw ConfigError("scan grid must be strictly increasing");
    }
    if (kcz.empty() || !(kcz.front() > 0))
        throw ConfigError("scan grid must contain positive k_c z_cm values");

    struct Job
    {
        double kcz, radius;
        char const* label;
        ResponseEngine const* engine;
    };
    std::vector<Job> jobs;
    for (double R : radii)
    {
        for (double x : kcz)
        {
            jobs.push_back({x, R, "Exact", &methods.exact});
            jobs.push_back({x, R, "PFA", &methods.pfa});
            jobs.push_back({x, R, "PWS", &methods.pws});
        }
    }

    auto rows = parallel_map(jobs.size(), threads, [&](std::size_t i) {
        auto const& job = jobs[i];
        double const lambda = 2 * constants::pi * config.z_cm / job.kcz;
        ScanRow row;
        row.inputs = {job.kcz, 2 * constants::pi / lambda, lambda, job.radius,
                      config.z_cm};
        row.method = job.label;
        row.quantity = "gamma";
        try
        {
            auto const profile = with_period(base, lambda);
            BecConfig cfg = config;
            cfg.tf_radius = job.radius;
            auto const g = gamma_bec(profile, cfg, *job.engine, opt);
            row.value = g.value;
            row.error = g.error;
            row.status = tolerance_status(g.value, g.error,
                                          std::max(opt.rel_tol * 10,
                                                   job.engine->tolerances().rel * 10));
        }
        catch (std::exception const& e)
        {
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.error = std::numeric_limits<double>::quiet_NaN();
            row.status = std::string("error: ") + e.what();
        }
        return row;
    });

    ScanResult out;
    out.command = "gamma-scan";
    out.input_names
        = {"kc_z", "kc_rad_per_m", "lambda_c_m", "tf_radius_m", "z_cm_m"};
    out.rows = std::move(rows);
    return out;
}
}  // namespace lcp
