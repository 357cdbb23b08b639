#include "mesoatom/spectrum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace mesoatom {

double epsilon_formula(double N, double mu, double z_alpha) {
    const double D = mu * mu + 1.0 - N * N - z_alpha * z_alpha;
    const double S = N * N + z_alpha * z_alpha;
    if (!(D >= 0.0)) throw DomainError("epsilon radicand negative");
    return z_alpha + N * std::sqrt(D) / std::sqrt(S);
}

double epsilon_of(double N, double mu, double z_alpha) {
    const SpectrumBounds caps = spectrum_caps(mu, z_alpha);
    if (!(N > 0.0) || !(N < caps.n0_cap))
        throw OutOfSpectrum("N = " + std::to_string(N) + " outside (0, N0 = " +
                            std::to_string(caps.n0_cap) + ")");
    const double D = mu * mu + 1.0 - N * N - z_alpha * z_alpha;
    assert(D > 0.0); // guaranteed by N < N0
    return epsilon_formula(N, mu, z_alpha);
}

double energy_of(double N, const PhysicalParams& p) {
    const DimensionlessParams d = from_physical(p);
    const SpectrumBounds caps = spectrum_caps(d.mu, d.z_alpha);
    if (!(N > 0.0) || !(N < caps.n0_cap))
        throw OutOfSpectrum("N outside (0, N0)");
    // Direct physical-units form; equals epsilon_of(...)*hbar*c/a.
    const double m0c2 = p.m0_g * p.c * p.c;
    const double hc_a = p.hbar * p.c / p.a_cm;
    const double za = d.z_alpha;
    const double rad = m0c2 * m0c2 + (1.0 - N * N - za * za) * hc_a * hc_a;
    const double coul = static_cast<double>(p.Z) * p.e_esu * p.e_esu / p.a_cm;
    return coul + N * std::sqrt(rad) / std::sqrt(N * N + za * za);
}

double quantization_residual(double eps, long long n, double kappa, double mu, double z_alpha) {
    const double lam2 = mu * mu + 1.0 - eps * eps;
    if (!(lam2 > 0.0)) throw BranchError("lambda^2 <= 0");
    const double lam = std::sqrt(lam2);
    const double a_plus =
        kappa + 0.5 * (lam + 1.0 -
                       std::sqrt(lam * lam + 4.0 * z_alpha * (eps - z_alpha)));
    return a_plus + static_cast<double>(n);
}

Level make_level(const QuantumNumbers& qn, const DimensionlessParams& dp,
                 const PhysicalParams* pp) {
    qn.validate();
    dp.validate();
    Level lv;
    lv.qn = qn;
    lv.kappa = kappa(qn.two_l, qn.two_q, dp.z_alpha);
    lv.principal = principal_number(qn.n, lv.kappa);
    lv.eps = epsilon_of(lv.principal, dp.mu, dp.z_alpha);
    const double lam2 = dp.mu * dp.mu + 1.0 - lv.eps * lv.eps;
    if (!(lam2 > 0.0)) throw BranchError("level has lambda^2 <= 0");
    lv.lambda = std::sqrt(lam2);
    lv.degeneracy = qn.two_l + 1;

    // Back-substitution guard: the closed form must invert A+ = -n. Catches
    // any sign or branch slip before a level escapes this module.
    const double resid = quantization_residual(lv.eps, qn.n, lv.kappa, dp.mu, dp.z_alpha);
    if (std::abs(resid) > 1e-9)
        throw DomainError("quantization residual |A+ + n| = " + std::to_string(resid));

    if (pp) lv.energy_erg = energy_of(lv.principal, *pp);
    return lv;
}

Spectrum build_spectrum(const DimensionlessParams& dp, const PhysicalParams* pp,
                        std::size_t max_count) {
    Spectrum sp;
    sp.bounds = spectrum_caps(dp.mu, dp.z_alpha);
    Enumeration en = enumerate_levels(dp, max_count);
    sp.truncated = en.truncated;
    sp.levels.reserve(en.levels.size());
    for (const auto& qn : en.levels) sp.levels.push_back(make_level(qn, dp, pp));
    std::stable_sort(sp.levels.begin(), sp.levels.end(), [](const Level& a, const Level& b) {
        if (a.eps != b.eps) return a.eps < b.eps;
        return a.qn.two_l < b.qn.two_l;
    });
    return sp;
}

} // namespace mesoatom
