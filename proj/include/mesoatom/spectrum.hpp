#pragma once

#include <optional>
#include <vector>

#include "mesoatom/quantum_numbers.hpp"

namespace mesoatom {

/// One discrete-spectrum entry. Invariants: z_alpha < eps < mu,
/// lambda^2 + eps^2 = mu^2 + 1, N < N0.
struct Level {
    QuantumNumbers qn;
    double kappa     = 0.0;
    double principal = 0.0; // N
    double eps       = 0.0;
    double lambda    = 0.0; // sqrt(mu^2 + 1 - eps^2)
    std::optional<double> energy_erg;
    long long degeneracy = 1; // 2l + 1
};

// Closed-form dimensionless energy as a function of the principal number,
// without the N < N0 admissibility gate. Exposed for limit studies; the
// radicand must stay positive.
double epsilon_formula(double N, double mu, double z_alpha);

/// eps = Zalpha + N*sqrt(mu^2+1-N^2-(Zalpha)^2)/sqrt(N^2+(Zalpha)^2),
/// valid for 0 < N < N0. Throws OutOfSpectrum otherwise.
double epsilon_of(double N, double mu, double z_alpha);

/// Energy in erg evaluated directly in physical units; algebraically equal
/// to epsilon_of(...)*hbar*c/a.
double energy_of(double N, const PhysicalParams& p);

// Quantization residual A+ + n; vanishes identically at a true level.
// Used as a mandatory back-substitution guard inside build routines.
double quantization_residual(double eps, long long n, double kappa, double mu, double z_alpha);

Level make_level(const QuantumNumbers& qn, const DimensionlessParams& dp,
                 const PhysicalParams* pp = nullptr);

struct Spectrum {
    std::vector<Level> levels; // sorted by eps ascending
    SpectrumBounds bounds;
    bool truncated = false;
};

Spectrum build_spectrum(const DimensionlessParams& dp,
                        const PhysicalParams* pp = nullptr,
                        std::size_t max_count = 1000000);

} // namespace mesoatom
