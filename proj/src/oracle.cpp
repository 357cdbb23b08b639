#include "mesoatom/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "mesoatom/quantum_numbers.hpp"

namespace mesoatom {

void ShootingConfig::validate() const {
    if (!(0.0 < x_min && x_min < x_max && x_max < 1.0))
        throw DomainError("need 0 < x_min < x_max < 1");
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");
    if (steps < 64) throw DomainError("steps must be >= 64");
}

double ShootingConfig::bracket_lo(double z_alpha) const {
    return std::isnan(eps_lo) ? z_alpha + bracket_pad : eps_lo;
}

double ShootingConfig::bracket_hi(double mu) const {
    return std::isnan(eps_hi) ? std::sqrt(mu * mu + 1.0) - bracket_pad : eps_hi;
}

namespace {

// Coefficient polynomial of Eq.-(3.17) form:
//   Q'' + (2/x) Q' + N(x)/(4 x^2 (1-x)^2) Q = 0,
//   N(x) = [eps x + 2 Za (1-x)]^2 - mu^2 x^2 - 4 L (1-x).
// The oracle integrates this pre-substitution form directly, so any slip in
// the hypergeometric reduction downstream would show up as disagreement.
struct RadialOde {
    double eps, z_alpha, mu, L;

    double n_poly(double x, double omx) const {
        const double f = eps * x + 2.0 * z_alpha * omx;
        return f * f - mu * mu * x * x - 4.0 * L * omx;
    }

    // rhs in the x chart (valid away from x = 1)
    void rhs_x(double x, const double y[2], double dy[2]) const {
        const double omx = 1.0 - x;
        dy[0] = y[1];
        dy[1] = -2.0 / x * y[1] - n_poly(x, omx) / (4.0 * x * x * omx * omx) * y[0];
    }

    // rhs in the s = 1-x chart (exact near the right endpoint)
    void rhs_s(double s, const double y[2], double dy[2]) const {
        const double x = 1.0 - s;
        dy[0] = y[1];
        dy[1] = 2.0 / x * y[1] - n_poly(x, s) / (4.0 * x * x * s * s) * y[0];
    }
};

// Dormand-Prince 5(4) with PI-free step control and amplitude renormalization
// (the equation is linear, only mode ratios matter).
class Rk45 {
public:
    Rk45(std::function<void(double, const double*, double*)> rhs, double rel_tol,
         double max_h)
        : rhs_(std::move(rhs)), rtol_(rel_tol), max_h_(max_h) {}

    int sign_changes = 0;

    void set_state(double t, double q, double dq) {
        t_ = t;
        y_[0] = q;
        y_[1] = dq;
        last_sign_ = sign_of(q);
        h_ = 0.0;
    }

    double t() const { return t_; }
    double q() const { return y_[0]; }
    double dq() const { return y_[1]; }

    void integrate_to(double t_end) {
        const double dir = (t_end > t_) ? 1.0 : -1.0;
        if (h_ == 0.0) h_ = dir * std::min(max_h_, 1e-3 * std::abs(t_end - t_) + 1e-12);
        if (h_ * dir < 0.0) h_ = -h_;
        int rejected_in_row = 0;
        while (dir * (t_end - t_) > 0.0) {
            if (std::abs(h_) > max_h_) h_ = dir * max_h_;
            bool last = false;
            if (dir * (t_ + h_ - t_end) > 0.0) {
                h_ = t_end - t_;
                last = true;
            }
            double ynew[2], err;
            step(h_, ynew, err);
            if (err <= 1.0) {
                t_ = last ? t_end : t_ + h_;
                y_[0] = ynew[0];
                y_[1] = ynew[1];
                renormalize();
                const int s = sign_of(y_[0]);
                if (s != 0 && last_sign_ != 0 && s != last_sign_) ++sign_changes;
                if (s != 0) last_sign_ = s;
                rejected_in_row = 0;
            } else if (++rejected_in_row > 200) {
                throw StiffnessFailure("step control stalled");
            }
            const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
            h_ *= fac;
            if (std::abs(h_) < 1e-15 * (std::abs(t_) + 1e-15))
                throw StiffnessFailure("step size underflow");
        }
    }

private:
    static int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

    void renormalize() {
        const double m = std::max(std::abs(y_[0]), std::abs(y_[1]));
        if (m > 1e200 || (m > 0.0 && m < 1e-200)) {
            y_[0] /= m;
            y_[1] /= m;
        }
    }

    void step(double h, double ynew[2], double& err) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2];
        rhs_(t_, y_, k1);
        for (int i = 0; i < 2; ++i) yt[i] = y_[i] + h * a21 * k1[i];
        rhs_(t_ + c2 * h, yt, k2);
        for (int i = 0; i < 2; ++i) yt[i] = y_[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs_(t_ + c3 * h, yt, k3);
        for (int i = 0; i < 2; ++i) yt[i] = y_[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs_(t_ + c4 * h, yt, k4);
        for (int i = 0; i < 2; ++i)
            yt[i] = y_[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs_(t_ + c5 * h, yt, k5);
        for (int i = 0; i < 2; ++i)
            yt[i] = y_[i] +
                    h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs_(t_ + h, yt, k6);
        for (int i = 0; i < 2; ++i)
            ynew[i] = y_[i] +
                      h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs_(t_ + h, ynew, k7);
        err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = rtol_ * std::max({std::abs(y_[i]), std::abs(ynew[i]), 1e-280});
            err = std::max(err, std::abs(e) / sc);
        }
    }

    std::function<void(double, const double*, double*)> rhs_;
    double rtol_;
    double max_h_;
    double t_ = 0.0;
    double h_ = 0.0;
    double y_[2] = {0.0, 0.0};
    int last_sign_ = 0;
};

// Frobenius data at x = 0 for the exponent rho = kappa - 1/2:
//   Q = x^rho (1 + c1 x + c2 x^2 + ...),
// from N(x)/(4(1-x)^2) = sum_m t_m x^m. The x^rho prefactor is dropped
// (linear equation), so the returned pair is (series, series').
std::array<double, 2> frobenius_left(const RadialOde& ode, double kap, double x0) {
    const double s0 = 4.0 * (ode.z_alpha * ode.z_alpha - ode.L);
    const double s1 = 4.0 * (ode.z_alpha * (ode.eps - 2.0 * ode.z_alpha) + ode.L);
    const double s2 = (ode.eps - 2.0 * ode.z_alpha) * (ode.eps - 2.0 * ode.z_alpha) -
                      ode.mu * ode.mu;
    auto t_coef = [&](long long m) {
        if (m == 0) return 0.25 * s0;
        if (m == 1) return 0.25 * (2.0 * s0 + s1);
        const double md = static_cast<double>(m);
        return 0.25 * (s0 * (md + 1.0) + s1 * md + s2 * (md - 1.0));
    };
    const double rho = kap - 0.5;
    std::array<double, 24> c{};
    c[0] = 1.0;
    double series = 1.0, dseries = rho / x0; // d/dx of x^rho(...) divided by x^rho
    double xk = 1.0;
    for (int k = 1; k < 24; ++k) {
        double acc = 0.0;
        for (int i = 0; i < k; ++i) acc += t_coef(k - i) * c[i];
        c[k] = -acc / (static_cast<double>(k) * (2.0 * kap + static_cast<double>(k)));
        xk *= x0;
        series += c[k] * xk;
        dseries += (rho + k) * c[k] * xk / x0;
        if (std::abs(c[k] * xk) < 1e-18) break;
    }
    return {series, dseries};
}

// First- and second-order series corrections for the local frame at x = 1,
// Q ~ s^t (1 + d1 s + d2 s^2), s = 1-x.
std::array<double, 2> frame_corrections(const RadialOde& ode, double t) {
    const double n0 = ode.eps * ode.eps - ode.mu * ode.mu;
    const double n1 = 2.0 * ode.eps * (2.0 * ode.z_alpha - ode.eps) + 2.0 * ode.mu * ode.mu -
                      4.0 * ode.L;
    const double n2 = (2.0 * ode.z_alpha - ode.eps) * (2.0 * ode.z_alpha - ode.eps) -
                      ode.mu * ode.mu;
    auto tau = [&](long long m) {
        if (m == 0) return 0.25 * n0;
        if (m == 1) return 0.25 * (2.0 * n0 + n1);
        const double md = static_cast<double>(m);
        return 0.25 * (n0 * (md + 1.0) + n1 * md + n2 * (md - 1.0));
    };
    // m (2t + m - 1) d_m = 2 sum_{k<m} (t+k) d_k - sum_{k<m} tau_{m-k} d_k
    std::array<double, 3> d{1.0, 0.0, 0.0};
    for (int m = 1; m <= 2; ++m) {
        const double denom = m * (2.0 * t + m - 1.0);
        if (std::abs(denom) < 1e-6) {
            d[m] = 0.0; // near-degenerate (lambda ~ integer): drop the correction
            continue;
        }
        double acc = 0.0;
        for (int k = 0; k < m; ++k) acc += (2.0 * (t + k) - tau(m - k)) * d[k];
        d[m] = acc / denom;
    }
    return {d[1], d[2]};
}

struct FitSample {
    double s;
    double q;
};

// Least-squares fit of q_i = cd * phi_d(s_i) + cg * phi_g(s_i) over the last
// decade of 1-x; mismatch is the growing-mode share, normalized into [-1,1].
double frame_fit_mismatch(const RadialOde& ode, double lambda,
                          const std::vector<FitSample>& samples) {
    const double td = 0.5 * (1.0 + lambda);
    const double tg = 0.5 * (1.0 - lambda);
    const auto cd = frame_corrections(ode, td);
    const auto cg = frame_corrections(ode, tg);
    auto phi = [](double s, double t, const std::array<double, 2>& c) {
        return std::pow(s, t) * (1.0 + s * (c[0] + s * c[1]));
    };
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, n1 = 0, n2 = 0;
    for (const auto& smp : samples) {
        const double f1 = phi(smp.s, td, cd);
        const double f2 = phi(smp.s, tg, cg);
        a11 += f1 * f1;
        a12 += f1 * f2;
        a22 += f2 * f2;
        b1 += f1 * smp.q;
        b2 += f2 * smp.q;
        n1 += f1 * f1;
        n2 += f2 * f2;
    }
    const double det = a11 * a22 - a12 * a12;
    if (!(std::abs(det) > 0.0)) throw StiffnessFailure("frame fit is singular");
    const double coef_d = (b1 * a22 - b2 * a12) / det;
    const double coef_g = (a11 * b2 - a12 * b1) / det;
    const double wd = std::abs(coef_d) * std::sqrt(n1);
    const double wg = coef_g * std::sqrt(n2);
    const double denom = wd + std::abs(wg);
    if (!(denom > 0.0)) return 0.0;
    return wg / denom;
}

} // namespace

ShotResult shoot(double eps, long long two_l, long long two_q, double z_alpha, double mu,
                 const ShootingConfig& cfg) {
    cfg.validate();
    const double lam2 = mu * mu + 1.0 - eps * eps;
    if (!(lam2 > 0.0)) throw BranchError("lambda <= 0: eps^2 >= mu^2 + 1");
    const double lambda = std::sqrt(lam2);
    const double kap = kappa(two_l, two_q, z_alpha); // throws if preconditions fail

    RadialOde ode;
    ode.eps = eps;
    ode.z_alpha = z_alpha;
    ode.mu = mu;
    {
        const double tl = static_cast<double>(two_l), tq = static_cast<double>(two_q);
        ode.L = 0.25 * (tl * (tl + 2.0) - tq * tq);
    }

    const double max_h = std::max(0.5 / 64.0, 8.0 * 0.5 / static_cast<double>(cfg.steps));

    // left half in x, Frobenius start at x_min
    Rk45 left([&](double t, const double* y, double* dy) { ode.rhs_x(t, y, dy); },
              cfg.rk_rel_tol, max_h);
    const auto init = frobenius_left(ode, kap, cfg.x_min);
    left.set_state(cfg.x_min, init[0], init[1]);
    left.integrate_to(0.5);

    // right half in s = 1-x (exact abscissae near the endpoint)
    Rk45 right([&](double t, const double* y, double* dy) { ode.rhs_s(t, y, dy); },
               cfg.rk_rel_tol, max_h);
    right.set_state(0.5, left.q(), -left.dq());
    right.sign_changes = left.sign_changes;

    const double s_end = 1.0 - cfg.x_max;
    constexpr int n_fit = 14;
    std::vector<FitSample> samples;
    samples.reserve(n_fit);
    for (int i = 0; i < n_fit; ++i) {
        // log-spaced over the last decade of 1-x
        const double s_i = 10.0 * s_end * std::pow(0.1, static_cast<double>(i) / (n_fit - 1));
        right.integrate_to(s_i);
        samples.push_back({s_i, right.q()});
    }

    ShotResult r;
    r.node_count = right.sign_changes;
    r.mismatch = frame_fit_mismatch(ode, lambda, samples);
    return r;
}

namespace {

struct Scanner {
    long long two_l, two_q;
    double z_alpha, mu;
    const ShootingConfig* cfg;

    ShotResult at(double eps) const { return shoot(eps, two_l, two_q, z_alpha, mu, *cfg); }

    // refine a sign change of the mismatch inside [a, b] by bisection with a
    // secant polish
    double refine(double a, double fa, double b, double fb) const {
        for (int it = 0; it < 200 && (b - a) > cfg->tol * std::max(1.0, std::abs(b)); ++it) {
            double m = 0.5 * (a + b);
            // secant proposal, clamped to the middle half
            if (fb != fa) {
                const double sec = b - fb * (b - a) / (fb - fa);
                if (sec > a + 0.25 * (b - a) && sec < b - 0.25 * (b - a)) m = sec;
            }
            const double fm = at(m).mismatch;
            if (fm == 0.0) return m;
            if ((fm < 0.0) == (fa < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
        return 0.5 * (a + b);
    }

    // split [a,b] by node count until each interval holds one eigenvalue
    void separate(double a, const ShotResult& ra, double b, const ShotResult& rb,
                  std::vector<double>& roots, int depth) const {
        const int jumps = rb.node_count - ra.node_count;
        if (jumps <= 0) {
            if ((ra.mismatch < 0.0) != (rb.mismatch < 0.0))
                roots.push_back(refine(a, ra.mismatch, b, rb.mismatch));
            return;
        }
        if (jumps == 1) {
            if ((ra.mismatch < 0.0) != (rb.mismatch < 0.0)) {
                roots.push_back(refine(a, ra.mismatch, b, rb.mismatch));
                return;
            }
            // fall back to the node jump itself when the fitted sign is noisy
            double lo = a, hi = b;
            while (hi - lo > cfg->tol * std::max(1.0, std::abs(hi))) {
                const double m = 0.5 * (lo + hi);
                if (at(m).node_count > ra.node_count)
                    hi = m;
                else
                    lo = m;
            }
            roots.push_back(0.5 * (lo + hi));
            return;
        }
        if (depth > 60) throw StiffnessFailure("eigenvalue separation failed to terminate");
        const double m = 0.5 * (a + b);
        const ShotResult rm = at(m);
        separate(a, ra, m, rm, roots, depth + 1);
        separate(m, rm, b, rb, roots, depth + 1);
    }
};

} // namespace

std::vector<double> find_eigenvalues(long long two_l, long long two_q, double z_alpha,
                                     double mu, const ShootingConfig& cfg) {
    cfg.validate();
    Scanner sc{two_l, two_q, z_alpha, mu, &cfg};
    const double lo = cfg.bracket_lo(z_alpha);
    const double hi = cfg.bracket_hi(mu);
    if (!(lo < hi)) throw DomainError("empty eps bracket");
    std::vector<double> roots;
    const ShotResult ra = sc.at(lo);
    const ShotResult rb = sc.at(hi);
    sc.separate(lo, ra, hi, rb, roots, 0);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace mesoatom
