// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/scan.hpp
//! Tabular scan output shared by all commands.
//!
//! Every table has the same layout: the command-specific input columns
//! (SI-suffixed names) followed by method, quantity, value, error, status.
//! The quantity name carries the unit of the value column.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "table_io.hpp"

namespace lcp
{
struct ScanRow
{
    std::vector<double> inputs;
    std::string method;
    std::string quantity;
    double value = 0;
    double error = 0;
    std::string status = "ok";

    bool operator==(ScanRow const& o) const
    {
        auto same = [](double a, double b) {
            return (std::isnan(a) && std::isnan(b)) || a == b;
        };
        if (inputs.size() != o.inputs.size())
            return false;
        for (std::size_t i = 0; i < inputs.size(); ++i)
        {
            if (!same(inputs[i], o.inputs[i]))
                return false;
        }
        return method == o.method && quantity == o.quantity
               && same(value, o.value) && same(error, o.error)
               && status == o.status;
    }
};

struct ScanResult
{
    std::string command;
    std::vector<std::string> input_names;
    std::vector<ScanRow> rows;
    //! Echo of the configuration, written to JSON metadata only.
    std::vector<std::pair<std::string, std::string>> metadata;

    bool operator==(ScanResult const& o) const
    {
        return input_names == o.input_names && rows == o.rows;
    }

    //! Rows whose status is not "ok".
    std::size_t flagged() const
    {
        std::size_t n = 0;
        for (auto const& r : rows)
            n += (r.status != "ok");
        return n;
    }

    bool has_errors() const
    {
        for (auto const& r : rows)
        {
            if (r.status.rfind("error", 0) == 0)
                return true;
        }
        return false;
    }
};

//! Status for a value given its error estimate and requested tolerance.
//! `scale` sets the magnitude the tolerance refers to when the value itself
//! may pass through zero.
inline std::string
tolerance_status(double value, double error, double rel_tol, double scale = 0)
{
    if (!std::isfinite(value))
        return "error: non-finite value";
    double const ref = std::max(std::abs(value), std::abs(scale));
    return error <= rel_tol * ref + 1e-300 ? "ok" : "flagged";
}

namespace detail
{
inline std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_safe(std::string s)
{
    for (auto& ch : s)
    {
        if (ch == ',' || ch == '\n' || ch == '\r')
            ch = ';';
    }
    return s;
}
}  // namespace detail

inline void write_csv(std::ostream& os, ScanResult const& r)
{
    for (auto const& name : r.input_names)
        os << name << ',';
    os << "method,quantity,value,error,status\n";
    for (auto const& row : r.rows)
    {
        for (double v : row.inputs)
            os << detail::format_double(v) << ',';
        os << row.method << ',' << row.quantity << ','
           << detail::format_double(row.value) << ','
           << detail::format_double(row.error) << ','
           << detail::csv_safe(row.status) << '\n';
    }
}

inline ScanResult read_csv(std::istream& is)
{
    static constexpr std::size_t tail = 5;
    ScanResult r;
    std::string line;
    if (!std::getline(is, line))
        throw ConfigError("empty scan table");
    auto header = detail::split(line, ',');
    if (header.size() < tail || header[header.size() - tail] != "method")
        throw ConfigError("not a scan table header: " + line);
    r.input_names.assign(header.begin(), header.end() - tail);
    auto const n_in = r.input_names.size();
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        auto f = detail::split(line, ',');
        if (f.size() != n_in + tail)
            throw ConfigError("malformed scan row: " + line);
        auto num = [](std::string const& s) {
            return s == "nan" ? std::numeric_limits<double>::quiet_NaN()
                              : detail::parse_double(s, "scan table");
        };
        ScanRow row;
        for (std::size_t i = 0; i < n_in; ++i)
            row.inputs.push_back(num(f[i]));
        row.method = f[n_in];
        row.quantity = f[n_in + 1];
        row.value = num(f[n_in + 2]);
        row.error = num(f[n_in + 3]);
        row.status = f[n_in + 4];
        r.rows.push_back(std::move(row));
    }
    return r;
}

inline nlohmann::ordered_json to_json(ScanResult const& r, std::string const& version)
{
    using json = nlohmann::ordered_json;
    auto num = [](double v) -> json {
        return std::isfinite(v) ? json(v) : json(nullptr);
    };
    json meta = json::object();
    meta["command"] = r.command;
    meta["code_version"] = version;
    json cfg = json::object();
    for (auto const& [k, v] : r.metadata)
        cfg[k] = v;
    meta["config"] = cfg;

    json rows = json::array();
    for (auto const& row : r.rows)
    {
        json o = json::object();
        for (std::size_t i = 0; i < r.input_names.size(); ++i)
            o[r.input_names[i]] = num(row.inputs[i]);
        o["method"] = row.method;
        o["quantity"] = row.quantity;
        o["value"] = num(row.value);
        o["error"] = num(row.error);
        o["status"] = row.status;
        rows.push_back(std::move(o));
    }
    return json{{"metadata", meta}, {"rows", rows}};
}
}  // namespace lcp
