#include "mesoatom/specialfn.hpp"

#include <cmath>
#include <numbers>

namespace mesoatom {

namespace {

// Generalized binomial C(z, k) = z (z-1) ... (z-k+1) / k!; exact zeros for
// integer z with 0 <= z < k, which is what keeps the monopole profile terms
// free of negative half-angle powers.
double gbinom(double z, long long k) {
    double r = 1.0;
    for (long long j = 0; j < k; ++j) r *= (z - static_cast<double>(j)) / static_cast<double>(j + 1);
    return r;
}

double jacobi_recurrence(long long n, double a, double b, double x) {
    if (n == 0) return 1.0;
    double pkm1 = 1.0;
    double pk = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for (long long k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double c0 = 2.0 * (kk + 1.0) * (kk + a + b + 1.0) * (2.0 * kk + a + b);
        const double c1 = (2.0 * kk + a + b + 1.0) *
                          ((2.0 * kk + a + b + 2.0) * (2.0 * kk + a + b) * x + a * a - b * b);
        const double c2 = -2.0 * (kk + a) * (kk + b) * (2.0 * kk + a + b + 2.0);
        const double pkp1 = (c1 * pk + c2 * pkm1) / c0;
        pkm1 = pk;
        pk = pkp1;
    }
    return pk;
}

// Finite sum obtained from the Rodrigues formula by the Leibniz rule,
//   P_n = 2^{-n} sum_k C(n+a,k) C(n+b,n-k) (x-1)^{n-k} (x+1)^k.
// Valid for any real a, b, including the negative integers where the
// recurrence coefficients vanish.
double jacobi_sum(long long n, double a, double b, double x) {
    double acc = 0.0;
    for (long long k = 0; k <= n; ++k) {
        const double t = gbinom(n + a, k) * gbinom(n + b, n - k) *
                         std::pow(x - 1.0, static_cast<double>(n - k)) *
                         std::pow(x + 1.0, static_cast<double>(k));
        acc += t;
    }
    return std::ldexp(acc, static_cast<int>(-n));
}

} // namespace

double jacobi_eval(long long n, double alpha, double beta, double x) {
    if (n < 0) throw InvalidDegree("Jacobi degree must be >= 0");
    if (alpha > -1.0 && beta > -1.0) return jacobi_recurrence(n, alpha, beta, x);
    return jacobi_sum(n, alpha, beta, x);
}

double jacobi_deriv(long long n, double alpha, double beta, double x) {
    if (n < 0) throw InvalidDegree("Jacobi degree must be >= 0");
    if (n == 0) return 0.0;
    return 0.5 * (static_cast<double>(n) + alpha + beta + 1.0) *
           jacobi_eval(n - 1, alpha + 1.0, beta + 1.0, x);
}

double gauss_2f1(double a, double b, double c, double x) {
    if (!(x >= 0.0) || !(x < 1.0)) throw DomainError("2F1 series needs x in [0,1)");
    const bool a_term = (a <= 0.0 && a == std::floor(a));
    const bool b_term = (b <= 0.0 && b == std::floor(b));
    long long kmax = 10000;
    if (a_term || b_term) {
        long long stop = 10000;
        if (a_term) stop = std::min(stop, static_cast<long long>(-a));
        if (b_term) stop = std::min(stop, static_cast<long long>(-b));
        kmax = stop; // finite sum, exact
    }
    double term = 1.0, sum = 1.0;
    int small_runs = 0;
    for (long long k = 0; k < kmax; ++k) {
        const double kk = static_cast<double>(k);
        const double denom = (c + kk) * (1.0 + kk);
        if (denom == 0.0)
            throw DomainError("2F1 pole: c is a non-positive integer inside the series");
        term *= (a + kk) * (b + kk) / denom * x;
        sum += term;
        if (!(a_term || b_term)) {
            if (std::abs(term) <= 1e-13 * std::abs(sum)) {
                if (++small_runs >= 2) return sum;
            } else {
                small_runs = 0;
            }
        }
    }
    if (a_term || b_term) return sum;
    throw NoConvergence("2F1 series did not reach 1e-13 within 10^4 terms");
}

QuadratureRule gauss_legendre(int npoints) {
    if (npoints < 1) throw DomainError("quadrature rule needs >= 1 point");
    QuadratureRule r;
    r.nodes.resize(npoints);
    r.weights.resize(npoints);
    const int m = (npoints + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess
        double z = std::cos(std::numbers::pi * (i + 0.75) / (npoints + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < npoints; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = npoints * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.nodes[i] = -z;
        r.nodes[npoints - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[i] = w;
        r.weights[npoints - 1 - i] = w;
    }
    return r;
}

HarmonicSection::HarmonicSection(long long tq, long long tl, long long tm, Chart ch)
    : two_q(tq), two_l(tl), two_m(tm), chart(ch) {
    if (tl < std::llabs(tq) || (tl - std::llabs(tq)) % 2 != 0)
        throw DomainError("harmonic needs l = |q|, |q|+1, ...");
    if (std::llabs(tm) > tl || (tl - tm) % 2 != 0)
        throw DomainError("harmonic needs m = -l, ..., l");

    // alpha = -q-m, beta = q-m, n = l+m are integers for admissible labels
    const long long alpha = -(tq + tm) / 2;
    const long long beta = (tq - tm) / 2;
    const long long n = (tl + tm) / 2;
    const double m = 0.5 * static_cast<double>(tm);

    const double pref = std::exp2(-m); // from (1-x)^{a/2}(1+x)^{b/2} = 2^{-m} s^a c^b
    for (long long k = 0; k <= n; ++k) {
        const double coef = gbinom(static_cast<double>(n + alpha), k) *
                            gbinom(static_cast<double>(n + beta), n - k);
        if (coef == 0.0) continue;
        const long long ps = 2 * (n - k) + alpha;
        const long long pc = 2 * k + beta;
        if (ps < 0 || pc < 0)
            throw DomainError("internal: negative half-angle power in harmonic profile");
        const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
        terms.push_back({pref * coef * sign, static_cast<int>(ps), static_cast<int>(pc)});
    }

    // Unit L2(S^2) norm, real positive:
    //   M = 2^m sqrt( (2l+1)/(4 pi) * (l-m)!(l+m)! / ((l-q)!(l+q)!) )
    const double l = 0.5 * static_cast<double>(tl);
    const double q = 0.5 * static_cast<double>(tq);
    const double lg = std::lgamma(l - m + 1.0) + std::lgamma(l + m + 1.0) -
                      std::lgamma(l - q + 1.0) - std::lgamma(l + q + 1.0);
    norm_const = std::exp2(m) *
                 std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi)) * std::exp(0.5 * lg);
}

double harmonic_profile(const HarmonicSection& s, double theta) {
    const double sh = std::sin(0.5 * theta);
    const double ch = std::cos(0.5 * theta);
    double f = 0.0;
    for (const auto& t : s.terms)
        f += t.coef * std::pow(sh, t.pow_s) * std::pow(ch, t.pow_c);
    return s.norm_const * f;
}

std::complex<double> harmonic_eval(const HarmonicSection& s, double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw DomainError("theta must lie in [0, pi]");
    if (s.chart == Chart::plus && theta > std::numbers::pi - 1e-12)
        throw OutOfChart("chart + excludes theta = pi");
    if (s.chart == Chart::minus && theta < 1e-12)
        throw OutOfChart("chart - excludes theta = 0");
    // exp(i (m +- q) phi); m +- q is an integer for admissible labels
    const double mq = (s.chart == Chart::plus) ? 0.5 * static_cast<double>(s.two_m + s.two_q)
                                               : 0.5 * static_cast<double>(s.two_m - s.two_q);
    return harmonic_profile(s, theta) *
           std::complex<double>(std::cos(mq * phi), std::sin(mq * phi));
}

std::complex<double> overlap_phase(long long two_q, double phi) {
    const double arg = static_cast<double>(two_q) * phi; // 2 q phi
    return {std::cos(arg), std::sin(arg)};
}

} // namespace mesoatom
