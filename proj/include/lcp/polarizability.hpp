// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/polarizability.hpp
//! Ground-state atomic polarizability on the imaginary frequency axis.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "table_io.hpp"

namespace lcp
{
//! Frequency-independent polarizability alpha(i xi) = alpha0 [C m^2 / V].
struct StaticPolarizability
{
    double alpha0;
};

//! Single undamped oscillator: alpha0 / (1 + (xi / omega_a)^2).
struct LorentzPolarizability
{
    double alpha0;
    double omega_a;  //!< rad / s
};

//! Tabulated alpha(i xi), interpolated linearly in log(alpha) vs xi.
class TabulatedPolarizability
{
  public:
    TabulatedPolarizability(std::vector<double> xi, std::vector<double> alpha)
        : xi_(std::move(xi))
    {
        if (xi_.size() < 2 || xi_.size() != alpha.size())
            throw ConfigError("tabulated polarizability needs >= 2 matching "
                              "(xi, alpha) pairs");
        if (xi_.front() < 0)
            throw ConfigError("tabulated polarizability: negative frequency");
        for (std::size_t i = 0; i < xi_.size(); ++i)
        {
            if (!(alpha[i] > 0) || !std::isfinite(alpha[i]))
                throw ConfigError("tabulated polarizability must be positive");
            if (i > 0 && !(xi_[i] > xi_[i - 1]))
                throw ConfigError("tabulated frequencies must be strictly "
                                  "increasing");
            if (i > 0 && alpha[i] > alpha[i - 1])
                throw ConfigError("tabulated polarizability must be "
                                  "non-increasing in xi");
        }
        log_alpha_.resize(alpha.size());
        std::transform(alpha.begin(), alpha.end(), log_alpha_.begin(),
                       [](double a) { return std::log(a); });
        alpha_ = std::move(alpha);
    }

    std::vector<double> const& xi() const noexcept { return xi_; }
    std::vector<double> const& alpha() const noexcept { return alpha_; }

    double xi_min() const noexcept { return xi_.front(); }
    double xi_max() const noexcept { return xi_.back(); }

    double operator()(double xi) const
    {
        if (xi < xi_.front() || xi > xi_.back())
            throw RangeError("xi = " + std::to_string(xi)
                             + " rad/s outside tabulated range");
        auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
        if (it == xi_.end())
            return alpha_.back();
        auto const i = static_cast<std::size_t>(it - xi_.begin()) - 1;
        double const f = (xi - xi_[i]) / (xi_[i + 1] - xi_[i]);
        return std::exp(log_alpha_[i] + f * (log_alpha_[i + 1] - log_alpha_[i]));
    }

    //! Exact integral of the log-linear interpolant over the grid.
    double integral() const
    {
        double sum = 0;
        for (std::size_t i = 0; i + 1 < xi_.size(); ++i)
        {
            double const h = xi_[i + 1] - xi_[i];
            double const dl = log_alpha_[i + 1] - log_alpha_[i];
            if (std::abs(dl) < 1e-8)
                sum += h * alpha_[i] * (1 + dl / 2 + dl * dl / 6);
            else
                sum += h * (alpha_[i + 1] - alpha_[i]) / dl;
        }
        return sum;
    }

  private:
    std::vector<double> xi_;
    std::vector<double> alpha_;
    std::vector<double> log_alpha_;
};

using PolarizabilityModel = std::variant<StaticPolarizability,
                                         LorentzPolarizability,
                                         TabulatedPolarizability>;

inline PolarizabilityModel make_static(double alpha0)
{
    if (!(alpha0 > 0))
        throw ConfigError("static polarizability must be positive");
    return StaticPolarizability{alpha0};
}

inline PolarizabilityModel make_lorentz(double alpha0, double omega_a)
{
    if (!(alpha0 > 0) || !(omega_a > 0))
        throw ConfigError("Lorentz polarizability needs alpha0 > 0 and "
                          "omega_a > 0");
    return LorentzPolarizability{alpha0, omega_a};
}

//! Convert a polarizability volume alpha/eps0 [m^3] to SI [C m^2 / V].
inline double alpha_from_volume(double alpha_over_eps0)
{
    return alpha_over_eps0 * constants::eps0;
}

//! Load a two-column (xi_rad_per_s, alpha_si) CSV with a header row.
inline PolarizabilityModel load_tabulated_polarizability(std::string const& path)
{
    auto const rows = read_numeric_csv<2>(path);
    std::vector<double> xi, alpha;
    xi.reserve(rows.size());
    alpha.reserve(rows.size());
    for (auto const& r : rows)
    {
        xi.push_back(r[0]);
        alpha.push_back(r[1]);
    }
    return TabulatedPolarizability(std::move(xi), std::move(alpha));
}

//! alpha(i xi) for any model.
inline double alpha_at(PolarizabilityModel const& model, double xi)
{
    if (xi < 0)
        throw RangeError("imaginary frequency must be non-negative");
    return std::visit(
        [xi](auto const& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StaticPolarizability>)
                return m.alpha0;
            else if constexpr (std::is_same_v<T, LorentzPolarizability>)
            {
                double const r = xi / m.omega_a;
                return m.alpha0 / (1 + r * r);
            }
            else
                return m(xi);
        },
        model);
}

inline double static_alpha(PolarizabilityModel const& model)
{
    return alpha_at(model, 0.0);
}

//! Integral of alpha(i xi) over xi in [0, inf).
inline double integrated_alpha(PolarizabilityModel const& model)
{
    return std::visit(
        [](auto const& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StaticPolarizability>)
                throw DivergenceError("frequency integral of a static "
                                      "polarizability diverges");
            else if constexpr (std::is_same_v<T, LorentzPolarizability>)
                return constants::pi * m.alpha0 * m.omega_a / 2;
            else
                return m.integral();
        },
        model);
}

//! Frequency scale of the optical response, or nothing for a static model.
//! For tabulated data this is the width of the equivalent Lorentzian.
inline std::optional<double> characteristic_frequency(PolarizabilityModel const& model)
{
    if (std::holds_alternative<StaticPolarizability>(model))
        return std::nullopt;
    if (auto const* l = std::get_if<LorentzPolarizability>(&model))
        return l->omega_a;
    return 2 / constants::pi * integrated_alpha(model) / static_alpha(model);
}

//! Largest frequency at which the model may be evaluated.
inline double max_frequency(PolarizabilityModel const& model)
{
    if (auto const* t = std::get_if<TabulatedPolarizability>(&model))
        return t->xi_max();
    return std::numeric_limits<double>::infinity();
}
}  // namespace lcp
