#pragma once

#include <vector>

#include "mesoatom/spectrum.hpp"

namespace mesoatom {

/// x = 2/(coth chi + 1) = 1 - exp(-2 chi), computed in the stable
/// exponential form. Throws DomainError for chi <= 0.
double chi_to_x(double chi);
double x_to_chi(double x);

/// Radial factor of one discrete level,
///   Q(chi) = C x^{kappa-1/2} (1-x)^{(1+lambda)/2} P_n^{(2 kappa, lambda)}(1-2x),
/// with C fixed by charge normalization (charge_functional == 1).
struct RadialProfile {
    Level  level;
    double mu      = 0.0;
    double z_alpha = 0.0;
    double norm_const = 1.0; // C

    // Q and dQ/dchi at given chi. Evaluation below chi = 1e-8 is refused
    // when 2*kappa < 1 (the profile diverges as x^{kappa-1/2} there).
    double eval(double chi) const;
    double deriv(double chi) const;

    // Same quantities as functions of x in (0,1).
    double eval_x(double x) const;
    double deriv_x(double x) const; // dQ/dx
};

/// Builds the profile and solves the charge normalization q_func(C Q) = 1.
RadialProfile make_profile(const Level& level, const DimensionlessParams& dp);

struct RadialSample {
    double chi = 0.0, x = 0.0, Q = 0.0, dQ_dchi = 0.0;
};

std::vector<RadialSample> sample_profile(const RadialProfile& p,
                                         double chi_min, double chi_max, int count);

/// Sobolev integral of Eq.-(3.15) type:
///   int dchi sinh^2(chi) { |Q|^2 (1 + 1/sinh^2 chi) + |dQ/dchi|^2 }.
/// Throws DivergentIntegral if node doubling fails the 1e-8 gate.
double sobolev_norm(const RadialProfile& p);

/// Dimensionless conserved charge (units of e):
///   int dchi sinh^2(chi) |Q|^2 * 2 [eps + Zalpha (coth chi - 1)].
double charge_functional(const RadialProfile& p);

/// Dimensionless energy functional; equals eps * charge_functional for
/// true eigenstates.
double energy_functional(const RadialProfile& p);

/// Weighted overlap of two profiles in the same (l, q) channel with the
/// pencil weight 2[ (eps_a+eps_b)/2 + Zalpha (coth chi - 1) ]; vanishes for
/// distinct eigenstates.
double charge_overlap(const RadialProfile& a, const RadialProfile& b);

/// Number of sign changes of Q on a dense chi grid.
int count_nodes(const RadialProfile& p, double chi_min = 1e-4, double chi_max = 30.0,
                int samples = 20000);

} // namespace mesoatom
