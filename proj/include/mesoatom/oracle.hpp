#pragma once

#include <limits>
#include <vector>

#include "mesoatom/params.hpp"

namespace mesoatom {

/// Shooting controls. The radial equation is integrated in the x variable,
/// where both endpoints are regular-singular with known exponents
/// (-1/2 +- kappa at 0, (1 +- lambda)/2 at 1).
struct ShootingConfig {
    double x_min = 1e-8;
    double x_max = 1.0 - 1e-10;
    int    steps = 20000;       // step-resolution cap for the integrator
    double tol   = 1e-10;       // bisection tolerance on eps
    double bracket_pad = 1e-6;  // eps bracket: (Zalpha + pad, sqrt(mu^2+1) - pad)
    double rk_rel_tol  = 1e-12;
    // explicit eps search window; NaN means derive from bracket_pad
    double eps_lo = std::numeric_limits<double>::quiet_NaN();
    double eps_hi = std::numeric_limits<double>::quiet_NaN();

    void validate() const;
    double bracket_lo(double z_alpha) const;
    double bracket_hi(double mu) const;
};

struct ShotResult {
    double mismatch   = 0.0; // fitted coefficient of the growing mode, scaled
    int    node_count = 0;   // sign changes of Q on (x_min, x_max)
};

/// Integrates the radial ODE from x_min with Frobenius initial data
/// Q ~ x^{kappa-1/2}(1 + ...) and extracts the growing-mode coefficient
/// (1-x)^{(1-lambda)/2} by least-squares frame fit over the last decade
/// of 1-x. Throws BranchError if lambda <= 0, StiffnessFailure if step
/// control underflows.
ShotResult shoot(double eps, long long two_l, long long two_q,
                 double z_alpha, double mu, const ShootingConfig& cfg);

/// All eps in the bracket where the mismatch changes sign, refined to
/// cfg.tol, sorted ascending. Node-count jumps locate the roots, so
/// arbitrarily close pairs are still separated.
std::vector<double> find_eigenvalues(long long two_l, long long two_q,
                                     double z_alpha, double mu,
                                     const ShootingConfig& cfg);

} // namespace mesoatom
