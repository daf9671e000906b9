// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_scan.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "lcp/parallel.hpp"
#include "lcp/scan.hpp"

using namespace lcp;

namespace
{
ScanResult random_result(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> mant(-1, 1);
    std::uniform_int_distribution<int> expo(-320, 300);
    std::uniform_int_distribution<int> pick(0, 9);
    auto number = [&]() {
        switch (pick(rng))
        {
            case 0:
                return std::numeric_limits<double>::quiet_NaN();
            case 1:
                return 0.0;
            case 2:
                return std::numeric_limits<double>::denorm_min();
            default:
                return mant(rng) * std::pow(10.0, expo(rng));
        }
    };
    ScanResult r;
    r.command = "test";
    std::size_t const n_in = 1 + pick(rng) % 4;
    for (std::size_t i = 0; i < n_in; ++i)
        r.input_names.push_back("in" + std::to_string(i) + "_m");
    for (int row = 0; row < 20; ++row)
    {
        ScanRow s;
        for (std::size_t i = 0; i < n_in; ++i)
            s.inputs.push_back(number());
        s.method = pick(rng) % 2 ? "Exact" : "PWS";
        s.quantity = "g_J_per_m";
        s.value = number();
        s.error = number();
        s.status = pick(rng) == 0 ? "error: bad; thing" : "ok";
        r.rows.push_back(s);
    }
    return r;
}
}  // namespace

TEST(ScanCsv, RoundTripIsExact)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial)
    {
        auto const r = random_result(rng);
        std::stringstream ss;
        write_csv(ss, r);
        auto const back = read_csv(ss);
        EXPECT_EQ(back, r);
        std::stringstream again;
        write_csv(again, back);
        std::stringstream first;
        write_csv(first, r);
        EXPECT_EQ(again.str(), first.str());
    }
}

TEST(ScanCsv, StatusCommasAreReplaced)
{
    ScanResult r;
    r.input_names = {"x_m"};
    r.rows.push_back({{1.0}, "PFA", "U1_J", 2.0, 0.0, "error: a, b"});
    std::stringstream ss;
    write_csv(ss, r);
    EXPECT_EQ(ss.str(), "x_m,method,quantity,value,error,status\n1,PFA,U1_J,2,0,error: a; b\n");
}

TEST(ScanCsv, RejectsMalformed)
{
    std::stringstream empty;
    EXPECT_THROW(read_csv(empty), ConfigError);
    std::stringstream bad_header("a,b\n");
    EXPECT_THROW(read_csv(bad_header), ConfigError);
    std::stringstream bad_row("x,method,quantity,value,error,status\n1,2\n");
    EXPECT_THROW(read_csv(bad_row), ConfigError);
}

TEST(ScanJson, Layout)
{
    ScanResult r;
    r.command = "fig1";
    r.input_names = {"kz"};
    r.metadata = {{"z", "1 um"}};
    r.rows.push_back({{0.5}, "PFA-CP", "rho_pfa", 0.9, 0.0, "ok"});
    r.rows.push_back({{1.0}, "PFA-CP", "rho_pfa", std::nan(""), std::nan(""), "error: x"});
    auto const j = to_json(r, "1.2.3");
    EXPECT_EQ(j["metadata"]["command"], "fig1");
    EXPECT_EQ(j["metadata"]["code_version"], "1.2.3");
    EXPECT_EQ(j["metadata"]["config"]["z"], "1 um");
    EXPECT_EQ(j["rows"][0]["kz"], 0.5);
    EXPECT_EQ(j["rows"][0]["value"], 0.9);
    EXPECT_TRUE(j["rows"][1]["value"].is_null());
    EXPECT_TRUE(r.has_errors());
    EXPECT_EQ(r.flagged(), 1u);
}

TEST(ScanStatus, Tolerance)
{
    EXPECT_EQ(tolerance_status(1.0, 1e-7, 1e-6), "ok");
    EXPECT_EQ(tolerance_status(1.0, 1e-5, 1e-6), "flagged");
    EXPECT_EQ(tolerance_status(0.0, 1e-7, 1e-6, 1.0), "ok");
    EXPECT_EQ(tolerance_status(std::nan(""), 0, 1e-6), "error: non-finite value");
}

TEST(ParallelMap, OrderIndependentOfThreads)
{
    auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e3; };
    auto const one = parallel_map(1000, 1, f);
    for (unsigned t : {2u, 4u, 8u, 64u})
        EXPECT_EQ(parallel_map(1000, t, f), one);
    EXPECT_TRUE(parallel_map(0, 4, f).empty());
}

TEST(ParallelMap, PropagatesExceptions)
{
    auto f = [](std::size_t i) -> int {
        if (i == 37)
            throw std::runtime_error("boom");
        return static_cast<int>(i);
    };
    EXPECT_THROW(parallel_map(100, 4, f), std::runtime_error);
    EXPECT_THROW(parallel_map(100, 1, f), std::runtime_error);
}
