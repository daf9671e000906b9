// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/scattering.hpp
//! First-order nonspecular reflection off a perfectly reflecting corrugated
//! plane, continued to imaginary frequency omega = i xi.
//!
//! Outgoing waves carry k_z = i kappa and incoming waves k_z = -i kappa, with
//! kappa = sqrt(xi^2/c^2 + k^2). With this branch choice every polarization
//! overlap and reflection coefficient is real.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace lcp
{
enum class Polarization
{
    TE,
    TM
};

//! Lateral wavevector magnitudes of the outgoing and incoming legs, plus
//! the angle from the incoming to the outgoing wavevector.
class ScatterKinematics
{
  public:
    ScatterKinematics(double xi, double k_out, double k_in, double delta_phi)
        : xi_(xi)
        , k_out_(k_out)
        , k_in_(k_in)
        , cos_(std::cos(delta_phi))
        , sin_(std::sin(delta_phi))
    {
        if (xi < 0 || k_out < 0 || k_in < 0)
            throw RangeError("scattering kinematics need xi, k >= 0");
        double const w = xi / constants::c;
        kappa_out_ = std::hypot(w, k_out);
        kappa_in_ = std::hypot(w, k_in);
    }

    double xi() const noexcept { return xi_; }
    double k_out() const noexcept { return k_out_; }
    double k_in() const noexcept { return k_in_; }
    double kappa_out() const noexcept { return kappa_out_; }
    double kappa_in() const noexcept { return kappa_in_; }
    double cos_phi() const noexcept { return cos_; }
    double sin_phi() const noexcept { return sin_; }

  private:
    double xi_, k_out_, k_in_;
    double cos_, sin_;
    double kappa_out_{}, kappa_in_{};
};

//! R_{p_out, p_in}(k_out, k_in) for a perfect reflector [rad / m].
inline double reflection_first_order_pc(Polarization p_out,
                                        Polarization p_in,
                                        ScatterKinematics const& kin)
{
    double const w = kin.xi() / constants::c;
    double const C = kin.cos_phi();
    double const S = kin.sin_phi();
    double const kappa = kin.kappa_out();
    double const kappa_p = kin.kappa_in();

    if (p_out == Polarization::TE && p_in == Polarization::TE)
        return -2 * kappa_p * C;
    if (p_out == Polarization::TE && p_in == Polarization::TM)
        return -2 * w * S;
    if (p_out == Polarization::TM && p_in == Polarization::TE)
    {
        if (kappa == 0)
            return 0;
        return -2 * w * kappa_p / kappa * S;
    }
    if (kappa == 0)
        throw SingularKinematicsError("TM reflection at kappa = 0");
    return 2 * kin.k_out() * kin.k_in() / kappa + 2 * w * w * C / kappa;
}

//! Overlap of the outgoing polarization vector with the incoming one.
inline double polarization_overlap(Polarization p_out,
                                   Polarization p_in,
                                   ScatterKinematics const& kin)
{
    double const C = kin.cos_phi();
    double const S = kin.sin_phi();
    if (p_out == Polarization::TE && p_in == Polarization::TE)
        return C;
    if (kin.xi() == 0)
        throw SingularKinematicsError("TM polarization vector undefined at "
                                      "xi = 0");
    double const w = kin.xi() / constants::c;
    if (p_out == Polarization::TE)
        return kin.kappa_in() / w * S;
    if (p_in == Polarization::TE)
        return kin.kappa_out() / w * S;
    return -(kin.kappa_out() * kin.kappa_in() * C + kin.k_out() * kin.k_in())
           / (w * w);
}

//! w^2 times the perfect-conductor polarization sum
//! (1 / 2 kappa_in) sum_{p,p'} overlap * R, without the propagation factor.
//!
//! All wavenumbers share one (arbitrary) unit and w = xi / c in that unit.
//! The result is finite as w -> 0, which is why the quadrature uses this
//! form rather than the factored overlaps.
inline double pc_sum_times_w2(double w, double k_out, double k_in, double cos_phi)
{
    double const w2 = w * w;
    double const kappa_kappa = std::hypot(w, k_out) * std::hypot(w, k_in);
    double const kk = k_out * k_in;
    double const C2 = cos_phi * cos_phi;
    // -C^2 - 2 S^2 = C^2 - 2
    double const transverse = w2 * (C2 - 2);
    if (kappa_kappa == 0)
        return transverse;
    return transverse
           - (kappa_kappa * cos_phi + kk) * (kk + w2 * cos_phi) / kappa_kappa;
}

//! Perfect-conductor kernel a_{k_out, k_in}(z_A, xi), i.e.
//! exp(-(kappa_out + kappa_in) z_A) / (2 kappa_in) sum_{p,p'} overlap * R.
inline double integrand_sum_pc(ScatterKinematics const& kin, double z_a)
{
    if (!(z_a > 0))
        throw RangeError("atom height must be positive");
    if (kin.xi() == 0)
        throw SingularKinematicsError("polarization sum is singular at xi = 0");
    double const w = kin.xi() / constants::c;
    double const decay
        = std::exp(-(kin.kappa_out() + kin.kappa_in()) * z_a);
    return decay * pc_sum_times_w2(w, kin.k_out(), kin.k_in(), kin.cos_phi())
           / (w * w);
}

//! Same quantity assembled from the factored overlaps and coefficients.
inline double integrand_sum_pc_factored(ScatterKinematics const& kin, double z_a)
{
    double sum = 0;
    for (auto p : {Polarization::TE, Polarization::TM})
    {
        for (auto pp : {Polarization::TE, Polarization::TM})
        {
            sum += polarization_overlap(p, pp, kin)
                   * reflection_first_order_pc(p, pp, kin);
        }
    }
    return std::exp(-(kin.kappa_out() + kin.kappa_in()) * z_a) * sum
           / (2 * kin.kappa_in());
}
}  // namespace lcp
