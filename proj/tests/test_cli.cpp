// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_cli.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "lcp/cli/app.hpp"

using namespace lcp;
using namespace lcp::cli;

namespace
{
struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "lcp");
    std::vector<char const*> argv;
    for (auto const& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int const code = lcp::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

ScanResult parse_output(std::string const& csv)
{
    std::istringstream in(csv);
    return read_csv(in);
}

std::vector<ScanRow> select(ScanResult const& r, std::string const& method)
{
    std::vector<ScanRow> out;
    for (auto const& row : r.rows)
    {
        if (row.method == method)
            out.push_back(row);
    }
    return out;
}

int system_exit_code(std::string const& args)
{
    std::string const cmd = std::string(LCP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int const status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
}  // namespace

//---------------------------------------------------------------------------//
// Configuration
//---------------------------------------------------------------------------//
TEST(RunConfig, ParsesUnitsListsAndComments)
{
    std::istringstream in("# comment\n"
                          "z = 250 nm  # trailing\n"
                          "period=4um\n"
                          "depth = 1.5e-7 m\n"
                          "kz = 0:1:0.25\n"
                          "tf_radius = 0 um, 0.5um\n"
                          "alpha_volume = 47.3e-30 m3\n");
    auto const c = RunConfig::parse(in);
    EXPECT_DOUBLE_EQ(c.length("z"), 250e-9);
    EXPECT_DOUBLE_EQ(c.length("period"), 4e-6);
    EXPECT_DOUBLE_EQ(c.length("depth"), 1.5e-7);
    EXPECT_EQ(c.numbers("kz"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(c.lengths("tf_radius"), (std::vector<double>{0, 0.5e-6}));
    EXPECT_DOUBLE_EQ(c.number("alpha_volume"), 47.3e-30);
    EXPECT_EQ(c.word("method", "cp"), "cp");
}

TEST(RunConfig, RejectsBadInput)
{
    auto parse = [](std::string const& text) {
        std::istringstream in(text);
        return RunConfig::parse(in);
    };
    EXPECT_THROW(parse("unknown_key = 1\n"), ConfigError);
    EXPECT_THROW(parse("z = 250\n"), ConfigError);
    EXPECT_THROW(parse("z = -1 um\n"), ConfigError);
    EXPECT_THROW(parse("z = 0 um\n"), ConfigError);
    EXPECT_THROW(parse("z 1um\n"), ConfigError);
    EXPECT_THROW(parse("threads = 0\n"), ConfigError);
    EXPECT_THROW(parse("kz = 1:0:0.1\n"), ConfigError);
    EXPECT_THROW(parse("rel_tol = abc\n"), ConfigError);
    EXPECT_THROW(parse("tf_radius = 1um, 2\n"), ConfigError);
    EXPECT_THROW(RunConfig{}.length("z"), ConfigError);
}

TEST(RunConfig, OverridesWin)
{
    std::istringstream in("z = 1 um\nmethod = exact\n");
    auto c = RunConfig::parse(in);
    c.set_assignment("z=2um");
    EXPECT_DOUBLE_EQ(c.length("z"), 2e-6);
    EXPECT_THROW(c.set_assignment("nonsense"), ConfigError);

    Options o;
    o.overrides = {"kz=1,2", "method=pws"};
    o.method = "cp";
    o.threads = 3;
    auto const merged = assemble_config("fig4", o);
    EXPECT_EQ(merged.word("method"), "cp");
    EXPECT_EQ(merged.numbers("kz"), (std::vector<double>{1, 2}));
    EXPECT_EQ(merged.integer("threads"), 3);
    EXPECT_DOUBLE_EQ(merged.length("z_cm"), 2e-6);
}

TEST(RunConfig, ShippedFigureFilesMatchDefaults)
{
    for (std::string name : {"fig1", "fig3", "fig4"})
    {
        auto const file = RunConfig::load(std::string(LCP_SOURCE_DIR) + "/configs/" + name + ".conf");
        std::istringstream in(default_config(name));
        EXPECT_EQ(file.values(), RunConfig::parse(in).values()) << name;
    }
}

TEST(RunConfig, FigureRecipeParameters)
{
    std::istringstream in(default_config("fig4"));
    auto const c = RunConfig::parse(in);
    EXPECT_DOUBLE_EQ(c.number("mass"), 1.45e-25);
    EXPECT_DOUBLE_EQ(c.number("alpha_volume"), 47.3e-30);
    EXPECT_DOUBLE_EQ(c.number("trap_frequency"), 229);
    EXPECT_DOUBLE_EQ(c.length("period"), 4e-6);
    EXPECT_DOUBLE_EQ(c.length("width"), 2e-6);
    EXPECT_DOUBLE_EQ(c.length("depth"), 250e-9);
    EXPECT_DOUBLE_EQ(c.length("z_cm"), 2e-6);
    EXPECT_EQ(c.lengths("tf_radius"), (std::vector<double>{0, 0.5e-6, 1e-6}));
}

//---------------------------------------------------------------------------//
// Commands
//---------------------------------------------------------------------------//
TEST(Commands, ResponseRows)
{
    auto const o = run_cli({"response", "--set", "z=1um", "--set", "kz=0.1,3.55",
                            "--set", "alpha_volume=47.3e-30", "--set", "methods=cp,pws",
                            "--method", "cp"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto const r = parse_output(o.out);
    EXPECT_EQ(r.input_names, (std::vector<std::string>{"kz", "k_rad_per_m", "z_m"}));
    ASSERT_EQ(r.rows.size(), 8u);
    double const scale = cp_scale(1e-6, alpha_from_volume(47.3e-30));
    EXPECT_NEAR(r.rows[0].value / (scale * cp_shape(0.1)), 1.0, 1e-14);
    EXPECT_EQ(r.rows[0].quantity, "g_J_per_m");
    EXPECT_EQ(r.rows[1].method, "PWS");
    EXPECT_EQ(r.rows[6].quantity, "rho_pfa");
    EXPECT_NEAR(r.rows[6].value, 0.288, 0.003);
    EXPECT_EQ(r.rows[7].quantity, "rho_pws");
    EXPECT_NEAR(r.rows[7].value, 1.146, 0.01);
}

TEST(Commands, ResponseAnalyticGridMatchesShape)
{
    auto const o = run_cli({"response", "--set", "z=0.5um", "--set", "kz=0.1:10:0.1",
                            "--set", "alpha_volume=47.3e-30", "--set", "methods=cp",
                            "--method", "cp"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto const r = parse_output(o.out);
    double const scale = cp_scale(0.5e-6, alpha_from_volume(47.3e-30));
    std::size_t n = 0;
    for (auto const& row : r.rows)
    {
        if (row.quantity != "g_J_per_m")
            continue;
        double const Z = row.inputs[0];
        double const poly = std::exp(-Z) * (1 + Z + 16 * Z * Z / 45 + Z * Z * Z / 45);
        EXPECT_NEAR(row.value / scale, poly, 1e-14);
        ++n;
    }
    EXPECT_EQ(n, 100u);
}

TEST(Commands, RatiosSkipPwsInVdwRegime)
{
    auto const o = run_cli({"ratios", "--set", "polarizability=lorentz", "--set",
                            "alpha_volume=47.3e-30", "--set", "omega_a=2.42e15", "--set",
                            "z=1nm", "--set", "kz=1,2", "--method", "vdw"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto const r = parse_output(o.out);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_NEAR(r.rows[0].value, vdw_shape(1) / 12, 1e-14);
}

TEST(Commands, PotentialAndForce)
{
    std::vector<std::string> base{"--set", "profile=sinusoid", "--set", "amplitude=20nm",
                                  "--set", "period=2um", "--set", "z=1um", "--set",
                                  "alpha_volume=47.3e-30", "--set", "x=0um,0.25um,0.5um",
                                  "--method", "cp"};
    auto args = base;
    args.insert(args.begin(), "potential");
    auto const u = run_cli(args);
    ASSERT_EQ(u.code, 0) << u.err;
    auto const ur = parse_output(u.out);
    ASSERT_EQ(ur.rows.size(), 3u);
    EXPECT_NEAR(ur.rows[2].value / ur.rows[0].value, std::cos(2 * M_PI * 0.5 / 2), 1e-12);

    args = base;
    args.insert(args.begin(), "force");
    auto const f = run_cli(args);
    ASSERT_EQ(f.code, 0) << f.err;
    auto const fr = parse_output(f.out);
    EXPECT_EQ(fr.rows[0].quantity, "Fx_N");
    EXPECT_NEAR(fr.rows[0].value, 0.0, 1e-40);
}

TEST(Commands, BecShift)
{
    auto const o = run_cli({"bec-shift", "--config",
                            std::string(LCP_SOURCE_DIR) + "/configs/fig4.conf", "--set",
                            "tf_radius=0um,1um"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto const r = parse_output(o.out);
    ASSERT_EQ(r.rows.size(), 6u);
    EXPECT_NEAR(r.rows[0].inputs[0], 2 * M_PI * 2 / 4, 1e-12);
    EXPECT_GT(r.rows[3].value, r.rows[0].value);
    EXPECT_EQ(r.rows[1].value, 0.0);
}

TEST(Commands, Fig1Properties)
{
    auto const o = run_cli({"fig1"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto const r = parse_output(o.out);
    auto const pfa_cp = select(r, "PFA-CP");
    auto const pfa_vdw = select(r, "PFA-vdW");
    auto const pws = select(r, "PWS-CP");
    ASSERT_EQ(pfa_cp.size(), 101u);
    ASSERT_EQ(pfa_vdw.size(), 101u);
    ASSERT_EQ(pws.size(), 101u);
    EXPECT_EQ(pfa_cp[0].value, 1.0);
    EXPECT_EQ(pfa_vdw[0].value, 1.0);
    EXPECT_EQ(pws[0].value, 1.0);
    for (std::size_t i = 1; i < pfa_cp.size(); ++i)
    {
        EXPECT_LT(pfa_cp[i].value, pfa_cp[i - 1].value);
        EXPECT_GE(pws[i].value, 1.0);
    }
}

TEST(Commands, Fig3Properties)
{
    auto const o = run_cli({"fig3", "--set", "kz=0.5,6", "--set", "x_points=81"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto const r = parse_output(o.out);
    ASSERT_EQ(r.rows.size(), 2u * 81 * 3);
    auto const h = make_vgrooves(250e-9, 2e-6, 4e-6);
    double const kc = 2 * M_PI / 4e-6;

    std::map<std::pair<double, std::string>, std::vector<ScanRow>> curves;
    for (auto const& row : r.rows)
        curves[{row.inputs[0], row.method}].push_back(row);

    for (auto const& [key, rows] : curves)
    {
        // periodic and even on the symmetric grid
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            double const a = rows[i].value, b = rows[rows.size() - 1 - i].value;
            EXPECT_NEAR(a, b, 1e-9 * std::abs(a)) << key.second;
        }
        if (key.second == "PFA")
        {
            double const ratio = rows[40].value / height(h, rows[40].inputs[1]);
            for (auto const& row : rows)
                EXPECT_NEAR(row.value, ratio * height(h, row.inputs[1]), 1e-12 * std::abs(ratio));
            EXPECT_LT(ratio, 0.0);
        }
    }

    // the exact curve at kz = 6 is close to a single cosine
    auto const& ex = curves[{6.0, "Exact"}];
    std::size_t const n = ex.size() - 1;  // drop the duplicated endpoint
    double c0 = 0, c1 = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        c0 += ex[i].value / n;
        c1 += 2 * ex[i].value * std::cos(kc * ex[i].inputs[1]) / n;
    }
    double res = 0, norm = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double const d = ex[i].value - c0 - c1 * std::cos(kc * ex[i].inputs[1]);
        res += d * d;
        norm += (ex[i].value - c0) * (ex[i].value - c0);
    }
    EXPECT_LT(std::sqrt(res / norm), 0.02);
}

TEST(Commands, Fig4Properties)
{
    auto const o = run_cli({"fig4", "--threads", "2"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto const r = parse_output(o.out);
    std::map<std::pair<std::string, double>, std::vector<ScanRow>> curves;
    for (auto const& row : r.rows)
        curves[{row.method, row.inputs[3]}].push_back(row);
    auto const& exact0 = curves[{"Exact", 0.0}];
    auto const& exact1 = curves[{"Exact", 1e-6}];
    ASSERT_EQ(exact0.size(), 32u);
    double peak = 0;
    for (std::size_t i = 0; i < exact0.size(); ++i)
    {
        peak = std::max(peak, exact0[i].value);
        EXPECT_GE(exact1[i].value, exact0[i].value);
    }
    EXPECT_GT(peak, 1e-4);
    for (auto const& row : curves[{"PFA", 0.0}])
        EXPECT_EQ(row.value, 0.0);
}

TEST(Commands, JsonOutput)
{
    auto const o = run_cli({"fig1", "--format", "json", "--set", "kz=0,1"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto const j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["metadata"]["command"], "fig1");
    EXPECT_EQ(j["metadata"]["code_version"], version_string);
    EXPECT_EQ(j["metadata"]["config"]["kz"], "0,1");
    EXPECT_EQ(j["rows"].size(), 6u);
    EXPECT_EQ(j["rows"][0]["method"], "PFA-CP");
}

TEST(Commands, WritesOutputFile)
{
    auto const path = testing::TempDir() + "fig1.csv";
    auto const o = run_cli({"fig1", "--out", path, "--set", "kz=0,1"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(o.out.empty());
    std::ifstream in(path);
    auto const r = read_csv(in);
    EXPECT_EQ(r.rows.size(), 6u);
    std::remove(path.c_str());
}

TEST(Commands, ThreadCountDoesNotChangeOutput)
{
    auto const one = run_cli({"fig3", "--set", "kz=1,3.55", "--set", "x_points=21", "--threads", "1"});
    auto const four = run_cli({"fig3", "--set", "kz=1,3.55", "--set", "x_points=21", "--threads", "4"});
    ASSERT_EQ(one.code, 0);
    EXPECT_EQ(one.out, four.out);
}

//---------------------------------------------------------------------------//
// Exit codes
//---------------------------------------------------------------------------//
TEST(ExitCodes, ConfigErrors)
{
    EXPECT_EQ(run_cli({"fig4", "--set", "bogus=1"}).code, exit_config);
    EXPECT_EQ(run_cli({"fig4", "--set", "z_cm=2"}).code, exit_config);
    EXPECT_EQ(run_cli({"fig4", "--config", "/nonexistent.conf"}).code, exit_config);
    EXPECT_EQ(run_cli({"fig4", "--format", "xml"}).code, exit_config);
    EXPECT_EQ(run_cli({"fig4", "--method", "pws"}).code, exit_config);
    EXPECT_EQ(run_cli({"fig4", "--set", "tf_radius=2um"}).code, exit_config);
    EXPECT_EQ(run_cli({"fig1", "--set", "polarizability=static"}).code, exit_config);
    EXPECT_EQ(run_cli({"response", "--set", "kz=1"}).code, exit_config);
    EXPECT_EQ(run_cli({"nonsense"}).code, exit_config);
    EXPECT_EQ(run_cli({}).code, exit_config);
    auto const o = run_cli({"fig4", "--set", "bogus=1"});
    EXPECT_NE(o.err.find("bogus"), std::string::npos);
}

TEST(ExitCodes, NumericalFailure)
{
    auto const o = run_cli({"response", "--set", "z=1um", "--set", "kz=1", "--set",
                            "alpha_volume=47.3e-30", "--set", "methods=exact",
                            "--method", "cp", "--rel-tol", "1e-17"});
    EXPECT_EQ(o.code, exit_numerical);
    auto const r = parse_output(o.out);
    EXPECT_GE(r.flagged(), 1u);
}

TEST(ExitCodes, Binary)
{
    EXPECT_EQ(system_exit_code("fig1 --set kz=0,1"), 0);
    EXPECT_EQ(system_exit_code("fig1 --set bogus=1"), 2);
    EXPECT_EQ(system_exit_code("response --set z=1um --set kz=1 --set alpha_volume=47.3e-30 "
                               "--set methods=exact --method cp --rel-tol 1e-17"),
              3);
    EXPECT_EQ(system_exit_code("--help"), 0);
}
