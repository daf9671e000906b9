// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/cli/config.hpp
//! Plain-text key = value run configuration.
//!
//! Lengths must carry a unit suffix (nm, um, m). Lists are comma separated;
//! a number list may also be written start:stop:step. Unknown keys are
//! rejected, and later assignments (command-line overrides) replace earlier
//! ones.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../errors.hpp"
#include "../table_io.hpp"

namespace lcp::cli
{
enum class ValueKind
{
    word,
    path,
    number,
    integer,
    length,
    numbers,
    lengths
};

struct KeySpec
{
    ValueKind kind;
    char const* help;
};

inline std::map<std::string, KeySpec> const& known_keys()
{
    using K = ValueKind;
    static std::map<std::string, KeySpec> const keys = {
        {"material", {K::word, "perfect-conductor"}},
        {"polarizability", {K::word, "static | lorentz | tabulated"}},
        {"alpha_volume", {K::number, "alpha(0)/eps0 in m^3"}},
        {"omega_a", {K::number, "Lorentz resonance, rad/s"}},
        {"polarizability_table", {K::path, "CSV of xi [rad/s], alpha [SI]"}},
        {"profile", {K::word, "sinusoid | vgrooves | fourier"}},
        {"amplitude", {K::length, "sinusoid amplitude"}},
        {"depth", {K::length, "groove depth"}},
        {"width", {K::length, "groove width"}},
        {"period", {K::length, "corrugation period"}},
        {"harmonics", {K::integer, "groove harmonics kept"}},
        {"fourier_table", {K::path, "CSV of n, a_n [m]"}},
        {"method", {K::word, "exact | cp | vdw | pfa | pws"}},
        {"pfa_base", {K::word, "exact | cp | vdw"}},
        {"methods", {K::word, "comma list of methods for response"}},
        {"rel_tol", {K::number, "relative tolerance"}},
        {"abs_tol", {K::number, "absolute tolerance, J/m"}},
        {"format", {K::word, "csv | json"}},
        {"out", {K::path, "output file, stdout if absent"}},
        {"threads", {K::integer, "worker threads"}},
        {"z", {K::length, "atom height"}},
        {"kz", {K::numbers, "k z grid"}},
        {"x", {K::lengths, "lateral positions"}},
        {"x_points", {K::integer, "samples per period when x is absent"}},
        {"mass", {K::number, "atom mass, kg"}},
        {"trap_frequency", {K::number, "trap frequency omega/2pi, Hz"}},
        {"z_cm", {K::length, "condensate center height"}},
        {"tf_radius", {K::lengths, "Thomas-Fermi radii"}},
    };
    return keys;
}

namespace detail
{
inline double parse_length(std::string s, std::string const& key)
{
    s = lcp::detail::trim(s);
    static constexpr std::pair<char const*, double> units[]
        = {{"nm", 1e-9}, {"um", 1e-6}, {"m", 1.0}};
    for (auto const& [suffix, scale] : units)
    {
        std::string const u = suffix;
        if (s.size() > u.size() && s.compare(s.size() - u.size(), u.size(), u) == 0)
        {
            double const v = lcp::detail::parse_double(
                lcp::detail::trim(s.substr(0, s.size() - u.size())), key);
            if (!(v >= 0) || !std::isfinite(v))
                throw ConfigError(key + ": length must be non-negative");
            return v * scale;
        }
    }
    throw ConfigError(key + ": length needs a unit suffix (nm, um, m): '" + s + "'");
}

inline std::vector<double> parse_number_list(std::string const& s, std::string const& key)
{
    auto range = lcp::detail::split(s, ':');
    if (range.size() == 3)
    {
        double const start = lcp::detail::parse_double(range[0], key);
        double const stop = lcp::detail::parse_double(range[1], key);
        double const step = lcp::detail::parse_double(range[2], key);
        if (!(step > 0) || !(stop >= start))
            throw ConfigError(key + ": range needs start <= stop and step > 0");
        auto const n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        std::vector<double> out;
        for (long i = 0; i <= n; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (auto const& f : lcp::detail::split(s, ','))
        out.push_back(lcp::detail::parse_double(f, key));
    return out;
}
}  // namespace detail

class RunConfig
{
  public:
    //! Parse a key = value stream. '#' starts a comment.
    static RunConfig parse(std::istream& is, std::string const& origin = "config")
    {
        RunConfig c;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line))
        {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = lcp::detail::trim(line);
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
            {
                throw ConfigError(origin + ":" + std::to_string(lineno)
                                  + ": expected key = value");
            }
            c.set(line.substr(0, eq), line.substr(eq + 1));
        }
        return c;
    }

    static RunConfig load(std::string const& path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file " + path);
        return parse(in, path);
    }

    //! Validates the value against its key's kind.
    void set(std::string key, std::string value)
    {
        key = lcp::detail::trim(key);
        value = lcp::detail::trim(value);
        auto it = known_keys().find(key);
        if (it == known_keys().end())
            throw ConfigError("unknown config key '" + key + "'");
        if (value.empty())
            throw ConfigError(key + ": empty value");
        check(key, it->second.kind, value);
        values_[key] = value;
    }

    //! Apply a "key=value" override.
    void set_assignment(std::string const& kv)
    {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override must be key=value: '" + kv + "'");
        set(kv.substr(0, eq), kv.substr(eq + 1));
    }

    bool has(std::string const& key) const { return values_.count(key) != 0; }

    std::string const& raw(std::string const& key) const
    {
        auto it = values_.find(key);
        if (it == values_.end())
            throw ConfigError("missing config key '" + key + "'");
        return it->second;
    }

    std::string word(std::string const& key, std::optional<std::string> fallback = {}) const
    {
        if (!has(key) && fallback)
            return *fallback;
        return raw(key);
    }

    double number(std::string const& key, std::optional<double> fallback = {}) const
    {
        if (!has(key) && fallback)
            return *fallback;
        return lcp::detail::parse_double(strip_volume_unit(raw(key)), key);
    }

    long integer(std::string const& key, std::optional<long> fallback = {}) const
    {
        if (!has(key) && fallback)
            return *fallback;
        return parse_integer(raw(key), key);
    }

    double length(std::string const& key) const
    {
        return detail::parse_length(raw(key), key);
    }

    std::vector<double> numbers(std::string const& key) const
    {
        return detail::parse_number_list(raw(key), key);
    }

    std::vector<double> lengths(std::string const& key) const
    {
        std::vector<double> out;
        for (auto const& f : lcp::detail::split(raw(key), ','))
            out.push_back(detail::parse_length(f, key));
        return out;
    }

    std::map<std::string, std::string> const& values() const { return values_; }

  private:
    static std::string strip_volume_unit(std::string s)
    {
        if (s.size() > 2 && s.compare(s.size() - 2, 2, "m3") == 0)
            s = lcp::detail::trim(s.substr(0, s.size() - 2));
        return s;
    }

    static long parse_integer(std::string const& s, std::string const& key)
    {
        std::size_t pos = 0;
        long v = 0;
        try
        {
            v = std::stol(s, &pos);
        }
        catch (std::exception const&)
        {
            pos = 0;
        }
        if (pos != s.size() || pos == 0)
            throw ConfigError(key + ": expected an integer, got '" + s + "'");
        return v;
    }

    static void check(std::string const& key, ValueKind kind, std::string const& v)
    {
        switch (kind)
        {
            case ValueKind::word:
            case ValueKind::path:
                return;
            case ValueKind::number:
                lcp::detail::parse_double(strip_volume_unit(v), key);
                return;
            case ValueKind::integer:
                if (parse_integer(v, key) < 1)
                    throw ConfigError(key + ": must be >= 1");
                return;
            case ValueKind::length:
                if (!(detail::parse_length(v, key) > 0))
                    throw ConfigError(key + ": length must be positive");
                return;
            case ValueKind::numbers:
                detail::parse_number_list(v, key);
                return;
            case ValueKind::lengths:
                for (auto const& f : lcp::detail::split(v, ','))
                    detail::parse_length(f, key);
                return;
        }
    }

    std::map<std::string, std::string> values_;
};
}  // namespace lcp::cli
