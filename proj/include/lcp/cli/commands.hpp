// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/cli/commands.hpp
//! Scan commands behind the command-line tool.
//!
//! Each command turns a RunConfig into a ScanResult. Engines and profiles
//! are built up front so configuration problems surface as exceptions;
//! failures at individual scan points are recorded in the row status.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "../bec.hpp"
#include "../corrugation.hpp"
#include "../parallel.hpp"
#include "../polarizability.hpp"
#include "../response.hpp"
#include "../scan.hpp"
#include "config.hpp"

namespace lcp::cli
{
//---------------------------------------------------------------------------//
// Building blocks
//---------------------------------------------------------------------------//
inline void check_material(RunConfig const& c)
{
    auto const m = c.word("material", "perfect-conductor");
    if (m != "perfect-conductor")
        throw ConfigError("unsupported material '" + m + "'");
}

inline PolarizabilityModel build_model(RunConfig const& c)
{
    auto const kind = c.word("polarizability", "static");
    if (kind == "tabulated")
        return load_tabulated_polarizability(c.raw("polarizability_table"));
    double const alpha0 = alpha_from_volume(c.number("alpha_volume"));
    if (kind == "static")
        return make_static(alpha0);
    if (kind == "lorentz")
        return make_lorentz(alpha0, c.number("omega_a"));
    throw ConfigError("unknown polarizability model '" + kind + "'");
}

inline CorrugationProfile build_profile(RunConfig const& c)
{
    auto const kind = c.word("profile");
    if (kind == "sinusoid")
        return make_sinusoid(c.length("amplitude"), c.length("period"));
    if (kind == "vgrooves")
    {
        return make_vgrooves(c.length("depth"), c.length("width"), c.length("period"),
                             static_cast<std::size_t>(c.integer("harmonics", 50)));
    }
    if (kind == "fourier")
        return load_fourier_series(c.raw("fourier_table"), c.length("period"));
    throw ConfigError("unknown profile '" + kind + "'");
}

inline Method parse_method(std::string const& name)
{
    if (name == "exact")
        return Method::QuadratureExact;
    if (name == "cp")
        return Method::AnalyticCP;
    if (name == "vdw")
        return Method::AnalyticVdW;
    if (name == "pfa")
        return Method::PFA;
    if (name == "pws")
        return Method::PWS;
    throw ConfigError("unknown method '" + name + "'");
}

inline Tolerances build_tolerances(RunConfig const& c)
{
    Tolerances t;
    t.rel = c.number("rel_tol", t.rel);
    t.abs = c.number("abs_tol", t.abs);
    if (!(t.rel > 0) || !(t.abs >= 0))
        throw ConfigError("tolerances must be positive");
    return t;
}

inline ResponseEngine build_engine(RunConfig const& c, Method m)
{
    return ResponseEngine(m, build_model(c), build_tolerances(c),
                          parse_method(c.word("pfa_base", "cp")));
}

//! Configuration echo for output metadata. Keys that only steer execution
//! are left out so output does not depend on them.
inline std::vector<std::pair<std::string, std::string>> config_echo(RunConfig const& c)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (auto const& [k, v] : c.values())
    {
        if (k != "threads" && k != "out" && k != "format")
            out.emplace_back(k, v);
    }
    return out;
}

namespace detail
{
inline ScanRow evaluate_row(ScanRow row,
                            std::function<Estimate()> const& fn,
                            double rel_tol,
                            double scale = 0)
{
    try
    {
        auto const e = fn();
        row.value = e.value;
        row.error = e.error;
        row.status = tolerance_status(e.value, e.error, rel_tol, scale);
    }
    catch (std::exception const& ex)
    {
        row.value = std::numeric_limits<double>::quiet_NaN();
        row.error = std::numeric_limits<double>::quiet_NaN();
        row.status = std::string("error: ") + ex.what();
    }
    return row;
}

struct Job
{
    ScanRow row;
    std::function<Estimate()> fn;
    double scale = 0;
};

inline std::vector<ScanRow>
run_jobs(std::vector<Job> const& jobs, unsigned threads, double rel_tol)
{
    return parallel_map(jobs.size(), threads, [&](std::size_t i) {
        return evaluate_row(jobs[i].row, jobs[i].fn, rel_tol, jobs[i].scale);
    });
}

inline std::vector<std::string> split_words(std::string const& s)
{
    return lcp::detail::split(s, ',');
}

inline void emit_warnings(CorrugationProfile const& p, double z, std::ostream& warn)
{
    for (auto const& w : perturbative_warnings(p, z))
        warn << "warning: " << w << '\n';
}

inline std::vector<double> period_grid(RunConfig const& c, CorrugationProfile const& p)
{
    if (c.has("x"))
        return c.lengths("x");
    auto const n = static_cast<std::size_t>(c.integer("x_points", 41));
    if (n < 2)
        throw ConfigError("x_points must be >= 2");
    double const lambda = period(p);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = -lambda / 2 + lambda * static_cast<double>(i) / static_cast<double>(n - 1);
    return xs;
}

inline BecConfig bec_config(RunConfig const& c)
{
    return BecConfig{c.number("mass"), 2 * constants::pi * c.number("trap_frequency"),
                     0.0, c.length("z_cm")};
}

//! Radii to scan, each checked against the geometry before any work starts.
inline std::vector<double> radii(RunConfig const& c,
                                 BecConfig cfg,
                                 CorrugationProfile const& p)
{
    auto out = c.has("tf_radius") ? c.lengths("tf_radius") : std::vector<double>{0.0};
    for (double r : out)
    {
        cfg.tf_radius = r;
        validate(cfg, p);
    }
    return out;
}

inline ResponseEngine exact_engine(RunConfig const& c)
{
    auto engine = build_engine(c, parse_method(c.word("method", "cp")));
    if (!is_exact_type(engine.method()))
    {
        throw ConfigError("this command needs an exact-type method; "
                          "PFA and PWS are always reported alongside");
    }
    return engine;
}
}  // namespace detail

//---------------------------------------------------------------------------//
// Commands
//---------------------------------------------------------------------------//
//! Ratio rows shared by `response` and `ratios`.
inline void append_ratio_jobs(std::vector<detail::Job>& jobs,
                              ResponseEngine const& engine,
                              double kz,
                              double z)
{
    std::vector<double> const inputs{kz, kz / z, z};
    if (engine.method() == Method::PWS)
        return;
    jobs.push_back({{inputs, to_string(engine.exact_method()), "rho_pfa"},
                    [&engine, kz, z] { return rho_pfa_estimate({kz / z, z}, engine); }});
    if (!engine.is_vdw_regime(z))
    {
        jobs.push_back(
            {{inputs, to_string(engine.exact_method()), "rho_pws"},
             [&engine, kz, z] { return rho_pws_estimate({kz / z, z}, engine); }});
    }
}

inline ScanResult cmd_response(RunConfig const& c, unsigned threads, std::ostream&)
{
    check_material(c);
    double const z = c.length("z");
    auto const kz = c.numbers("kz");
    auto const model = build_model(c);
    std::string const default_methods
        = std::holds_alternative<StaticPolarizability>(model) ? "exact,cp,pws"
                                                              : "exact,cp,vdw,pws";
    std::vector<ResponseEngine> engines;
    for (auto const& name : detail::split_words(c.word("methods", default_methods)))
        engines.push_back(build_engine(c, parse_method(name)));
    auto const ratio_engine = build_engine(c, parse_method(c.word("method", "exact")));

    std::vector<detail::Job> jobs;
    for (double x : kz)
    {
        if (!(x >= 0))
            throw ConfigError("kz values must be >= 0");
        for (auto const& e : engines)
        {
            jobs.push_back({{{x, x / z, z}, to_string(e.method()), "g_J_per_m"},
                            [&e, x, z] { return e.evaluate(x / z, z); }});
        }
        append_ratio_jobs(jobs, ratio_engine, x, z);
    }
    ScanResult r;
    r.command = "response";
    r.input_names = {"kz", "k_rad_per_m", "z_m"};
    r.rows = detail::run_jobs(jobs, threads, build_tolerances(c).rel);
    r.metadata = config_echo(c);
    return r;
}

inline ScanResult cmd_ratios(RunConfig const& c, unsigned threads, std::ostream&)
{
    check_material(c);
    double const z = c.length("z");
    auto const engine = build_engine(c, parse_method(c.word("method", "exact")));
    if (engine.method() == Method::PWS)
        throw ConfigError("ratios need an exact-type or PFA method");
    std::vector<detail::Job> jobs;
    for (double x : c.numbers("kz"))
    {
        if (!(x >= 0))
            throw ConfigError("kz values must be >= 0");
        append_ratio_jobs(jobs, engine, x, z);
    }
    ScanResult r;
    r.command = "ratios";
    r.input_names = {"kz", "k_rad_per_m", "z_m"};
    r.rows = detail::run_jobs(jobs, threads, build_tolerances(c).rel);
    r.metadata = config_echo(c);
    return r;
}

namespace detail
{
inline ScanResult lateral_scan(RunConfig const& c,
                               unsigned threads,
                               std::ostream& warn,
                               bool force)
{
    check_material(c);
    auto const p = build_profile(c);
    double const z = c.length("z");
    emit_warnings(p, z, warn);
    auto const engine = build_engine(c, parse_method(c.word("method", "exact")));
    double const g0 = std::abs(engine.g_pfa(z).value);
    double const scale = amplitude(p) * g0 * (force ? wavenumber(p) : 1.0);

    std::vector<Job> jobs;
    for (double x : period_grid(c, p))
    {
        ScanRow row{{x, z}, to_string(engine.method()), force ? "Fx_N" : "U1_J"};
        if (force)
        {
            // the series error is not tracked separately for the force
            jobs.push_back({row, [&, x] {
                                return Estimate{lateral_force(p, x, z, engine), 0.0};
                            },
                            scale});
        }
        else
        {
            jobs.push_back({row, [&, x] {
                                auto const s = lateral_potential(p, x, z, engine);
                                return Estimate{s.U1, s.error};
                            },
                            scale});
        }
    }
    ScanResult r;
    r.command = force ? "force" : "potential";
    r.input_names = {"x_m", "z_m"};
    r.rows = run_jobs(jobs, threads, build_tolerances(c).rel);
    r.metadata = config_echo(c);
    return r;
}
}  // namespace detail

inline ScanResult cmd_potential(RunConfig const& c, unsigned threads, std::ostream& warn)
{
    return detail::lateral_scan(c, threads, warn, false);
}

inline ScanResult cmd_force(RunConfig const& c, unsigned threads, std::ostream& warn)
{
    return detail::lateral_scan(c, threads, warn, true);
}

inline ScanResult cmd_bec_shift(RunConfig const& c, unsigned threads, std::ostream&)
{
    check_material(c);
    auto const p = build_profile(c);
    auto const cfg = detail::bec_config(c);
    auto const engine = detail::exact_engine(c);
    GammaOptions opt;
    opt.rel_tol = build_tolerances(c).rel;
    double const kcz = wavenumber(p) * cfg.z_cm;
    auto r = gamma_scan(p, cfg, GammaMethods::from_exact(engine), {kcz},
                        detail::radii(c, cfg, p), threads, opt);
    r.command = "bec-shift";
    r.metadata = config_echo(c);
    return r;
}

//! rho_PFA in the retarded and non-retarded limits and rho_PWS in the
//! retarded limit, from the closed-form responses. rho_PWS has no meaning
//! in the non-retarded limit and is not emitted there.
inline ScanResult cmd_fig1(RunConfig const& c, unsigned threads, std::ostream&)
{
    check_material(c);
    double const z = c.length("z");
    auto const model = build_model(c);
    auto const tol = build_tolerances(c);
    ResponseEngine const cp(Method::AnalyticCP, make_static(static_alpha(model)), tol);
    ResponseEngine const vdw(Method::AnalyticVdW, model, tol);

    std::vector<detail::Job> jobs;
    for (double x : c.numbers("kz"))
    {
        if (!(x >= 0))
            throw ConfigError("kz values must be >= 0");
        std::vector<double> const inputs{x, x / z, z};
        jobs.push_back({{inputs, "PFA-CP", "rho_pfa"},
                        [&cp, x, z] { return rho_pfa_estimate({x / z, z}, cp); }});
        jobs.push_back({{inputs, "PFA-vdW", "rho_pfa"},
                        [&vdw, x, z] { return rho_pfa_estimate({x / z, z}, vdw); }});
        jobs.push_back({{inputs, "PWS-CP", "rho_pws"},
                        [&cp, x, z] { return rho_pws_estimate({x / z, z}, cp); }});
    }
    ScanResult r;
    r.command = "fig1";
    r.input_names = {"kz", "k_rad_per_m", "z_m"};
    r.rows = detail::run_jobs(jobs, threads, tol.rel);
    r.metadata = config_echo(c);
    return r;
}

//! U1(x) over one groove period for the exact, PFA and PWS responses at each
//! k_c z_A in `kz`.
inline ScanResult cmd_fig3(RunConfig const& c, unsigned threads, std::ostream& warn)
{
    check_material(c);
    auto const p = build_profile(c);
    if (!std::holds_alternative<VGrooves>(p))
        throw ConfigError("fig3 needs profile = vgrooves");
    auto const exact = detail::exact_engine(c);
    auto const methods = GammaMethods::from_exact(exact);
    auto const tol = build_tolerances(c);
    double const kc = wavenumber(p);
    auto const xs = detail::period_grid(c, p);

    std::vector<detail::Job> jobs;
    for (double kz : c.numbers("kz"))
    {
        if (!(kz > 0))
            throw ConfigError("kz values must be > 0");
        double const z = kz / kc;
        detail::emit_warnings(p, z, warn);
        double const scale = amplitude(p) * std::abs(exact.g_pfa(z).value);
        for (double x : xs)
        {
            for (auto const* e : {&methods.exact, &methods.pfa, &methods.pws})
            {
                std::string const label = e == &methods.exact ? "Exact"
                                          : e == &methods.pfa ? "PFA"
                                                              : "PWS";
                jobs.push_back({{{kz, x, z}, label, "U1_J"},
                                [&p, e, x, z] {
                                    auto const s = lateral_potential(p, x, z, *e);
                                    return Estimate{s.U1, s.error};
                                },
                                scale});
            }
        }
    }
    ScanResult r;
    r.command = "fig3";
    r.input_names = {"kc_z", "x_m", "z_m"};
    r.rows = detail::run_jobs(jobs, threads, tol.rel);
    r.metadata = config_echo(c);
    return r;
}

//! gamma versus k_c z_cm at fixed z_cm for each Thomas-Fermi radius.
inline ScanResult cmd_fig4(RunConfig const& c, unsigned threads, std::ostream&)
{
    check_material(c);
    auto const p = build_profile(c);
    auto const cfg = detail::bec_config(c);
    auto const engine = detail::exact_engine(c);
    GammaOptions opt;
    opt.rel_tol = build_tolerances(c).rel;
    auto r = gamma_scan(p, cfg, GammaMethods::from_exact(engine), c.numbers("kz"),
                        detail::radii(c, cfg, p), threads, opt);
    r.command = "fig4";
    r.metadata = config_echo(c);
    return r;
}

//---------------------------------------------------------------------------//
// Registry and shipped figure recipes
//---------------------------------------------------------------------------//
using CommandFn = ScanResult (*)(RunConfig const&, unsigned, std::ostream&);

struct CommandInfo
{
    char const* name;
    CommandFn fn;
    char const* help;
};

inline std::vector<CommandInfo> const& commands()
{
    static std::vector<CommandInfo> const list = {
        {"response", cmd_response, "g(k, z) for several methods plus rho_PFA, rho_PWS"},
        {"ratios", cmd_ratios, "rho_PFA and rho_PWS on a k z grid"},
        {"potential", cmd_potential, "lateral potential U1(x) at height z"},
        {"force", cmd_force, "lateral force -dU1/dx at height z"},
        {"bec-shift", cmd_bec_shift, "relative trap frequency shift gamma"},
        {"fig1", cmd_fig1, "PFA and PWS ratios versus k z"},
        {"fig3", cmd_fig3, "groove potentials over one period"},
        {"fig4", cmd_fig4, "gamma versus k_c z_cm for several condensate radii"},
    };
    return list;
}

//! Default parameter file for a figure command, empty for other commands.
//! The same text ships as configs/<name>.conf.
inline std::string default_config(std::string const& command)
{
    if (command == "fig1")
    {
        return "# rho_PFA and rho_PWS versus k z\n"
               "material = perfect-conductor\n"
               "polarizability = lorentz\n"
               "alpha_volume = 47.3e-30\n"
               "omega_a = 2.42e15\n"
               "z = 1 um\n"
               "kz = 0:10:0.1\n";
    }
    if (command == "fig3")
    {
        return "# lateral potential above V grooves\n"
               "material = perfect-conductor\n"
               "polarizability = static\n"
               "alpha_volume = 47.3e-30\n"
               "profile = vgrooves\n"
               "period = 4 um\n"
               "width = 2 um\n"
               "depth = 250 nm\n"
               "harmonics = 5000\n"
               "method = cp\n"
               "kz = 0.5,1,3.55,6\n"
               "x_points = 81\n";
    }
    if (command == "fig4")
    {
        return "# Rb condensate above V grooves\n"
               "material = perfect-conductor\n"
               "polarizability = static\n"
               "alpha_volume = 47.3e-30\n"
               "mass = 1.45e-25\n"
               "trap_frequency = 229\n"
               "profile = vgrooves\n"
               "period = 4 um\n"
               "width = 2 um\n"
               "depth = 250 nm\n"
               "harmonics = 5000\n"
               "method = cp\n"
               "z_cm = 2 um\n"
               "tf_radius = 0 um, 0.5 um, 1 um\n"
               "kz = 0.25:8:0.25\n";
    }
    return {};
}
}  // namespace lcp::cli
