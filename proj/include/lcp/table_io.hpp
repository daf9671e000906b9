// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/table_io.hpp
//! Loader for small numeric CSV tables with a mandatory header row.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace lcp
{
namespace detail
{
inline std::string trim(std::string s)
{
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split(std::string const& line, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep))
        out.push_back(trim(field));
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

inline double parse_double(std::string const& s, std::string const& context)
{
    if (s.empty() || std::isspace(static_cast<unsigned char>(s.front())))
        throw ConfigError(context + ": not a number: '" + s + "'");
    char* end = nullptr;
    errno = 0;
    double const v = std::strtod(s.c_str(), &end);
    if (end == s.c_str())
        throw ConfigError(context + ": not a number: '" + s + "'");
    if (end != s.c_str() + s.size())
        throw ConfigError(context + ": trailing characters in '" + s + "'");
    // underflow to a subnormal is fine, overflow is not
    if (errno == ERANGE && std::abs(v) > 1)
        throw ConfigError(context + ": out of range: '" + s + "'");
    return v;
}
}  // namespace detail

//! Read an N-column numeric CSV; the first non-empty line is the header and
//! is skipped. Blank lines and lines starting with '#' are ignored.
template<std::size_t N>
std::vector<std::array<double, N>> read_numeric_csv(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open table '" + path + "'");

    std::vector<std::array<double, N>> rows;
    std::string line;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto const t = detail::trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        if (!header_seen)
        {
            header_seen = true;
            continue;
        }
        auto const fields = detail::split(t, ',');
        std::string const ctx = path + ":" + std::to_string(lineno);
        if (fields.size() != N)
            throw ConfigError(ctx + ": expected " + std::to_string(N)
                              + " columns");
        std::array<double, N> row{};
        for (std::size_t i = 0; i < N; ++i)
            row[i] = detail::parse_double(fields[i], ctx);
        rows.push_back(row);
    }
    if (!header_seen)
        throw ConfigError("table '" + path + "' is empty (header required)");
    return rows;
}
}  // namespace lcp
