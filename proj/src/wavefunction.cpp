#include "mesoatom/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mesoatom/specialfn.hpp"

namespace mesoatom {

double chi_to_x(double chi) {
    if (!(chi > 0.0)) throw DomainError("chi must be > 0");
    return -std::expm1(-2.0 * chi); // 1 - exp(-2 chi), stable at both ends
}

double x_to_chi(double x) {
    if (!(x > 0.0) || !(x < 1.0)) throw DomainError("x must lie in (0,1)");
    return -0.5 * std::log1p(-x);
}

namespace {

// l(l+1) - q^2 from doubled integers
double centrifugal(const QuantumNumbers& qn) {
    const double tl = static_cast<double>(qn.two_l);
    const double tq = static_cast<double>(qn.two_q);
    return 0.25 * (tl * (tl + 2.0) - tq * tq);
}

struct ProfilePieces {
    double C, kap, lam, eps;
    long long n;

    // Q and dQ/dx from (x, 1-x); 1-x is passed separately so the right
    // endpoint keeps full precision.
    double value(double x, double omx) const {
        const double P = jacobi_eval(n, 2.0 * kap, lam, 1.0 - 2.0 * x);
        return C * std::pow(x, kap - 0.5) * std::pow(omx, 0.5 * (1.0 + lam)) * P;
    }
    double dvalue_dx(double x, double omx) const {
        const double arg = 1.0 - 2.0 * x;
        const double P = jacobi_eval(n, 2.0 * kap, lam, arg);
        const double dP = jacobi_deriv(n, 2.0 * kap, lam, arg);
        const double G = (kap - 0.5) * omx * P - 0.5 * (1.0 + lam) * x * P -
                         2.0 * x * omx * dP;
        return C * std::pow(x, kap - 1.5) * std::pow(omx, 0.5 * (lam - 1.0)) * G;
    }
};

ProfilePieces pieces(const RadialProfile& p) {
    return {p.norm_const, p.level.kappa, p.level.lambda, p.level.eps, p.level.qn.n};
}

// ---------------------------------------------------------------------------
// Composite Gauss-Legendre with dyadic panels clustered toward the singular
// endpoint(s). Depth is chosen from the endpoint exponent so the truncated
// mass is below 1e-13 relative; the node-doubling gate then certifies the
// panel sums.
// ---------------------------------------------------------------------------

int dyadic_depth(double exponent_plus_1) {
    const double p = std::max(exponent_plus_1, 0.02);
    const int j = static_cast<int>(std::ceil(43.5 / p)) + 4;
    return std::clamp(j, 16, 900);
}

double panel_sum(const std::function<double(double)>& f,
                 const std::vector<double>& brk, const QuadratureRule& rule) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        const double a = brk[i], b = brk[i + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            s += rule.weights[k] * f(mid + half * rule.nodes[k]);
        acc += s * half;
    }
    return acc;
}

// Breakpoints 0, 2^-J, ..., 1/4, 1/2, scale] clustered toward zero.
std::vector<double> left_cluster(int depth, double scale) {
    std::vector<double> brk;
    brk.push_back(0.0);
    for (int j = depth; j >= 1; --j) brk.push_back(std::ldexp(scale, -j));
    brk.push_back(scale);
    return brk;
}

double gated_composite(const std::function<double(double)>& f,
                       const std::vector<double>& brk, const char* what) {
    static const QuadratureRule coarse = gauss_legendre(24);
    static const QuadratureRule fine = gauss_legendre(48);
    const double i1 = panel_sum(f, brk, coarse);
    const double i2 = panel_sum(f, brk, fine);
    if (!std::isfinite(i2) ||
        std::abs(i2 - i1) > 1e-8 * std::max(std::abs(i2), 1e-300))
        throw DivergentIntegral(std::string(what) + ": node doubling failed the 1e-8 gate");
    return i2;
}

// Integral over x in (0,1) of g(x, 1-x) with endpoint behavior
// x^p0 ... (1-x)^p1. Split at 1/2; the right half runs in the 1-x variable.
double integrate_unit(const std::function<double(double, double)>& g,
                      double p0, double p1, const char* what) {
    const auto left = left_cluster(dyadic_depth(p0 + 1.0), 0.5);
    const auto right = left_cluster(dyadic_depth(p1 + 1.0), 0.5);
    const double il = gated_composite([&](double x) { return g(x, 1.0 - x); }, left, what);
    const double ir = gated_composite([&](double s) { return g(1.0 - s, s); }, right, what);
    return il + ir;
}

} // namespace

double RadialProfile::eval_x(double x) const {
    if (!(x > 0.0) || !(x < 1.0)) throw DomainError("x must lie in (0,1)");
    return pieces(*this).value(x, 1.0 - x);
}

double RadialProfile::deriv_x(double x) const {
    if (!(x > 0.0) || !(x < 1.0)) throw DomainError("x must lie in (0,1)");
    return pieces(*this).dvalue_dx(x, 1.0 - x);
}

double RadialProfile::eval(double chi) const {
    if (!(chi > 0.0)) throw DomainError("chi must be > 0");
    if (2.0 * level.kappa < 1.0 && chi < 1e-8)
        throw DomainError("profile diverges as x^{kappa-1/2}: evaluation below chi = 1e-8 refused");
    const double omx = std::exp(-2.0 * chi);
    return pieces(*this).value(chi_to_x(chi), omx);
}

double RadialProfile::deriv(double chi) const {
    if (!(chi > 0.0)) throw DomainError("chi must be > 0");
    if (2.0 * level.kappa < 1.0 && chi < 1e-8)
        throw DomainError("profile diverges as x^{kappa-1/2}: evaluation below chi = 1e-8 refused");
    const double omx = std::exp(-2.0 * chi);
    return 2.0 * omx * pieces(*this).dvalue_dx(chi_to_x(chi), omx);
}

double charge_functional(const RadialProfile& p) {
    const auto pc = pieces(p);
    const double za = p.z_alpha;
    // weight 2[eps + Zalpha(coth chi - 1)] against sinh^2 chi dchi reduces to
    // x^{2 kappa}(1-x)^{lambda-1} times a polynomial
    auto g = [&](double x, double omx) {
        const double Q = pc.value(x, omx);
        return 0.25 * x * (pc.eps * x + 2.0 * za * omx) * Q * Q / (omx * omx);
    };
    return integrate_unit(g, 2.0 * pc.kap, pc.lam - 1.0, "charge_functional");
}

double energy_functional(const RadialProfile& p) {
    const auto pc = pieces(p);
    const double za = p.z_alpha;
    const double L = centrifugal(p.level.qn);
    const double mu2 = p.mu * p.mu;
    auto g = [&](double x, double omx) {
        const double Q = pc.value(x, omx);
        const double dQ = pc.dvalue_dx(x, omx); // dQ/dx
        const double q2 = Q * Q;
        // per term against dx, after the chi -> x reduction:
        //   (eps^2 + mu^2) |Q|^2 sinh^2 dchi = (eps^2+mu^2) x^2 Q^2/(8 omx^2) dx
        //   -(Za w)^2 |Q|^2 sinh^2 dchi     = -(Za)^2 Q^2/2 dx
        //   |dQ/dchi|^2 sinh^2 dchi         = x^2 (dQ/dx)^2/2 dx
        //   L |Q|^2 dchi                    = L Q^2/(2 omx) dx
        return 0.125 * (pc.eps * pc.eps + mu2) * x * x * q2 / (omx * omx) -
               0.5 * za * za * q2 + 0.5 * x * x * dQ * dQ + 0.5 * L * q2 / omx;
    };
    return integrate_unit(g, 2.0 * pc.kap - 1.0, pc.lam - 1.0, "energy_functional");
}

double charge_overlap(const RadialProfile& a, const RadialProfile& b) {
    if (a.level.qn.two_l != b.level.qn.two_l || a.level.qn.two_q != b.level.qn.two_q)
        throw DomainError("charge_overlap needs profiles in the same (l, q) channel");
    const auto pa = pieces(a), pb = pieces(b);
    const double za = a.z_alpha;
    const double eps_bar = 0.5 * (pa.eps + pb.eps);
    auto g = [&](double x, double omx) {
        const double Qa = pa.value(x, omx);
        const double Qb = pb.value(x, omx);
        return 0.25 * x * (eps_bar * x + 2.0 * za * omx) * Qa * Qb / omx / omx;
    };
    return integrate_unit(g, 2.0 * pa.kap, 0.5 * (pa.lam + pb.lam) - 1.0, "charge_overlap");
}

double sobolev_norm(const RadialProfile& p) {
    const auto pc = pieces(p);
    // head: chi in (0, 1], integrand ~ chi^{2 kappa - 1} at the origin
    auto head = [&](double chi) {
        const double omx = std::exp(-2.0 * chi);
        const double x = -std::expm1(-2.0 * chi);
        const double Q = pc.value(x, omx);
        const double dQ = 2.0 * omx * pc.dvalue_dx(x, omx); // dQ/dchi
        const double sh2 = 0.25 * x * x / omx;              // sinh^2 chi
        return (sh2 + 1.0) * Q * Q + sh2 * dQ * dQ;
    };
    const double ih = gated_composite(head, left_cluster(dyadic_depth(2.0 * pc.kap), 1.0),
                                      "sobolev_norm head");
    // tail: t = exp(-chi), chi in [1, inf) -> t in (0, 1/e]; ~ t^{2 lambda - 1}
    auto tail = [&](double t) {
        const double chi = -std::log(t);
        const double omx = t * t;
        const double x = 1.0 - omx;
        const double Q = pc.value(x, omx);
        const double dQ = 2.0 * omx * pc.dvalue_dx(x, omx);
        const double sh2 = 0.25 * x * x / omx;
        return ((sh2 + 1.0) * Q * Q + sh2 * dQ * dQ) / t;
    };
    const double it = gated_composite(tail, left_cluster(dyadic_depth(2.0 * pc.lam), std::exp(-1.0)),
                                      "sobolev_norm tail");
    return ih + it;
}

RadialProfile make_profile(const Level& level, const DimensionlessParams& dp) {
    dp.validate();
    RadialProfile p;
    p.level = level;
    p.mu = dp.mu;
    p.z_alpha = dp.z_alpha;
    p.norm_const = 1.0;
    const double q1 = charge_functional(p);
    if (!(q1 > 0.0)) throw DivergentIntegral("charge functional not positive");
    p.norm_const = 1.0 / std::sqrt(q1);
    return p;
}

std::vector<RadialSample> sample_profile(const RadialProfile& p, double chi_min,
                                         double chi_max, int count) {
    if (!(chi_min > 0.0) || !(chi_max > chi_min) || count < 2)
        throw DomainError("need 0 < chi_min < chi_max and count >= 2");
    std::vector<RadialSample> out(count);
    for (int i = 0; i < count; ++i) {
        const double chi = chi_min + (chi_max - chi_min) * i / (count - 1);
        const double omx = std::exp(-2.0 * chi);
        const double x = -std::expm1(-2.0 * chi);
        const auto pc = pieces(p);
        out[i] = {chi, x, pc.value(x, omx), 2.0 * omx * pc.dvalue_dx(x, omx)};
    }
    return out;
}

int count_nodes(const RadialProfile& p, double chi_min, double chi_max, int samples) {
    int nodes = 0;
    double last = 0.0;
    const auto pc = pieces(p);
    for (int i = 0; i < samples; ++i) {
        const double chi = chi_min + (chi_max - chi_min) * i / (samples - 1);
        const double omx = std::exp(-2.0 * chi);
        const double v = pc.value(-std::expm1(-2.0 * chi), omx);
        if (v == 0.0) continue;
        if (last != 0.0 && std::signbit(v) != std::signbit(last)) ++nodes;
        last = v;
    }
    return nodes;
}

} // namespace mesoatom
