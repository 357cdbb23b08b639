#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mesoatom/errors.hpp"

namespace mesoatom {

// ---------------------------------------------------------------------------
// Jacobi polynomials and the Gauss hypergeometric series
// ---------------------------------------------------------------------------

/// P_n^{(alpha,beta)}(x). Three-term recurrence for alpha, beta > -1; the
/// Rodrigues-derived finite sum otherwise (covers the negative-integer
/// parameters that monopole harmonics produce).
double jacobi_eval(long long n, double alpha, double beta, double x);

/// d/dx P_n^{(alpha,beta)}(x) = (n+alpha+beta+1)/2 * P_{n-1}^{(alpha+1,beta+1)}(x)
double jacobi_deriv(long long n, double alpha, double beta, double x);

/// Gauss 2F1 by power series on x in [0,1); terminating series (a or b a
/// non-positive integer) is summed exactly as a finite sum.
double gauss_2f1(double a, double b, double c, double x);

// ---------------------------------------------------------------------------
// Gauss-Legendre rule (nodes in (-1,1), weights summing to 2)
// ---------------------------------------------------------------------------

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre(int npoints);

// ---------------------------------------------------------------------------
// Monopole spherical harmonics, two-chart representation
// ---------------------------------------------------------------------------

enum class Chart { plus, minus }; // plus excludes theta = pi, minus excludes theta = 0

/// One chart of Y_qlm. The theta-profile is
///   f(theta) = 2^{-m} sum_k C(n+alpha,k) C(n+beta,n-k) (-1)^{n-k}
///              sin(theta/2)^{2(n-k)+alpha} cos(theta/2)^{2k+beta}
/// with alpha = -q-m, beta = q-m, n = l+m (all integers for admissible
/// quantum numbers), i.e. the Jacobi polynomial times the half-angle
/// weight factors, assembled term by term so both poles stay exact.
/// norm_const makes the L2(S^2) norm 1 and is real positive.
struct HarmonicSection {
    long long two_q = 0;
    long long two_l = 0;
    long long two_m = 0;
    Chart     chart = Chart::plus;
    double    norm_const = 0.0; // M_qlm

    struct ProfileTerm {
        double coef;
        int pow_s; // power of sin(theta/2), >= 0
        int pow_c; // power of cos(theta/2), >= 0
    };
    std::vector<ProfileTerm> terms; // assembled once at construction

    HarmonicSection(long long two_q, long long two_l, long long two_m, Chart chart);
};

/// Value of (Y_qlm)_chart at (theta, phi); phase exp(i(m+q)phi) on chart +,
/// exp(i(m-q)phi) on chart -. Throws OutOfChart at the excluded pole.
std::complex<double> harmonic_eval(const HarmonicSection& s, double theta, double phi);

/// theta-profile including norm_const (the harmonic is profile * phase).
double harmonic_profile(const HarmonicSection& s, double theta);

/// Transition function between the chart representations with phi0 = 0:
/// (Y)_+ = overlap_phase(2q, phi) * (Y)_-. Unit modulus, phase 2q*phi.
std::complex<double> overlap_phase(long long two_q, double phi);

} // namespace mesoatom
