#pragma once

#include <cstdint>
#include <vector>

#include "mesoatom/params.hpp"

namespace mesoatom {

/// Level label (n, l, 2q). l and m are half-integers stored doubled.
struct QuantumNumbers {
    long long n     = 0; // radial number, >= 0
    long long two_l = 0; // 2l, l >= |q|, l - |q| integer
    long long two_m = 0; // 2m, -l <= m <= l (not used for energies)
    long long two_q = 0;

    double l() const { return 0.5 * static_cast<double>(two_l); }
    double m() const { return 0.5 * static_cast<double>(two_m); }
    double q() const { return 0.5 * static_cast<double>(two_q); }

    void validate() const;
};

/// Existence caps of the discrete spectrum. The spectrum is empty iff
/// n0_cap <= 1/2 or |q| >= q0_cap.
struct SpectrumBounds {
    double n0_cap = 0.0; // N0
    double q0_cap = 0.0; // |q|0, reported 0 when n0_cap <= 1/2
    bool   empty  = true;
};

// kappa = sqrt((l+1/2)^2 - (Z alpha)^2 - q^2); real and > 0 whenever
// l >= |q| and Z alpha < 1/2.
double kappa(long long two_l, long long two_q, double z_alpha);

// N = n + kappa + 1/2
double principal_number(long long n, double kappa);

SpectrumBounds spectrum_caps(double mu, double z_alpha);

/// Largest admissible l for given |q| (as a half-integer value), or a
/// negative value when no l qualifies.
double l0_cap(const SpectrumBounds& b, long long two_q);

/// Number of radial levels in the (l, q) channel: n runs 0..n0; returns -1
/// when the channel is empty.
long long n0_cap(const SpectrumBounds& b, long long two_l, long long two_q, double z_alpha);

struct Enumeration {
    std::vector<QuantumNumbers> levels; // m omitted (two_m = 0)
    bool truncated = false;
};

/// All (n, l) with N = n + kappa + 1/2 < N0, sorted by (N, l) ascending,
/// truncated at max_count.
Enumeration enumerate_levels(const DimensionlessParams& params, std::size_t max_count = 1000000);

} // namespace mesoatom
