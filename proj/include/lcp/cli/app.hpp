// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/cli/app.hpp
//! Argument handling and exit codes for the command-line tool.
//---------------------------------------------------------------------------//
#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../errors.hpp"
#include "../version.hpp"
#include "commands.hpp"

namespace lcp::cli
{
enum ExitCode : int
{
    exit_ok = 0,
    exit_config = 2,
    exit_numerical = 3
};

struct Options
{
    std::string config_path;
    std::string out;
    std::string format;
    std::string method;
    double rel_tol = 0;
    unsigned threads = 0;
    std::vector<std::string> overrides;
};

//! Config file (or the shipped default), then --set overrides, then the
//! dedicated flags.
inline RunConfig assemble_config(std::string const& command, Options const& o)
{
    RunConfig c;
    if (!o.config_path.empty())
    {
        c = RunConfig::load(o.config_path);
    }
    else if (auto text = default_config(command); !text.empty())
    {
        std::istringstream in(text);
        c = RunConfig::parse(in, command + " defaults");
    }
    for (auto const& kv : o.overrides)
        c.set_assignment(kv);
    if (!o.out.empty())
        c.set("out", o.out);
    if (!o.format.empty())
        c.set("format", o.format);
    if (!o.method.empty())
        c.set("method", o.method);
    if (o.rel_tol != 0)
        c.set("rel_tol", lcp::detail::format_double(o.rel_tol));
    if (o.threads != 0)
        c.set("threads", std::to_string(o.threads));
    return c;
}

inline void write_result(ScanResult const& r, RunConfig const& c, std::ostream& stdout_)
{
    auto const format = c.word("format", "csv");
    if (format != "csv" && format != "json")
        throw ConfigError("format must be csv or json");

    std::ofstream file;
    std::ostream* os = &stdout_;
    if (c.has("out"))
    {
        file.open(c.raw("out"));
        if (!file)
            throw ConfigError("cannot write " + c.raw("out"));
        os = &file;
    }
    if (format == "csv")
        write_csv(*os, r);
    else
        *os << to_json(r, version_string).dump(2) << '\n';
}

//! Run one command; returns the process exit code.
inline int run(std::string const& command,
               Options const& o,
               std::ostream& out,
               std::ostream& err)
{
    try
    {
        CommandFn fn = nullptr;
        for (auto const& info : commands())
        {
            if (command == info.name)
                fn = info.fn;
        }
        if (!fn)
            throw ConfigError("unknown command '" + command + "'");

        auto const c = assemble_config(command, o);
        auto const format = c.word("format", "csv");
        if (format != "csv" && format != "json")
            throw ConfigError("format must be csv or json");
        auto const threads = static_cast<unsigned>(c.integer("threads", 1));
        auto const result = fn(c, threads, err);
        write_result(result, c, out);

        if (auto n = result.flagged())
        {
            err << n << " row(s) not within tolerance or failed\n";
            for (auto const& row : result.rows)
            {
                if (row.status.rfind("error", 0) == 0)
                {
                    err << row.status << '\n';
                    break;
                }
            }
            return exit_numerical;
        }
        return exit_ok;
    }
    catch (ConfigError const& e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (CalibrationDomainError const& e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (DivergenceError const& e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (std::exception const& e)
    {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}

//! Full command-line entry point.
inline int main(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lateral Casimir-Polder response, potentials and condensate "
                 "frequency shifts above corrugated perfect conductors"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    Options o;
    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "key = value parameter file");
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--format", o.format, "csv or json");
        sub->add_option("--method", o.method, "exact, cp, vdw, pfa or pws");
        sub->add_option("--rel-tol", o.rel_tol, "relative tolerance");
        sub->add_option("--threads", o.threads, "worker threads");
        sub->add_option("--set", o.overrides, "key=value override (repeatable)");
    };
    for (auto const& info : commands())
        add_common(app.add_subcommand(info.name, info.help));

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::Success const& e)
    {
        return app.exit(e, out, err);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e, out, err);
        return exit_config;
    }
    return run(app.get_subcommands().front()->get_name(), o, out, err);
}
}  // namespace lcp::cli
