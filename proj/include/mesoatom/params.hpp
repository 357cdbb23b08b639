#pragma once

#include <string>

#include "mesoatom/constants.hpp"
#include "mesoatom/errors.hpp"

namespace mesoatom {

/// Physical inputs in CGS units. The magnetic charge gm must satisfy the
/// Dirac condition e*gm/(hbar*c) = half-integer; validate() enforces it.
struct PhysicalParams {
    double a_cm  = 0.0;            // curvature radius, > 0
    double m0_g  = 0.0;            // particle mass, > 0
    int    Z     = 1;              // nuclear charge number, >= 1
    double gm    = 0.0;            // magnetic charge, esu*cm-consistent units
    double e_esu = cgs::e_esu;
    double hbar  = cgs::hbar_erg_s;
    double c     = cgs::c_cm_s;

    void validate() const;

    // e*gm/(hbar*c), before rounding to a half-integer
    double raw_q() const { return e_esu * gm / (hbar * c); }

    static PhysicalParams with_two_q(double a_cm, double m0_g, int Z, long long two_q);
};

/// Dimensionless couplings: everything downstream of this module works in
/// these variables only. 2q is kept as an exact integer.
struct DimensionlessParams {
    double    mu      = 0.0; // m0*a*c/hbar
    double    z_alpha = 0.0; // Z*e^2/(hbar*c)
    long long two_q   = 0;

    double q() const { return 0.5 * static_cast<double>(two_q); }

    void validate() const;
};

// Relative tolerance for the half-integer quantization check. Tighter is
// pointless given physical-constant precision.
inline constexpr double half_integer_tol = 1e-9;

DimensionlessParams from_physical(const PhysicalParams& p);

/// E = eps*hbar*c/a. Exact inverse of E -> E*a/(hbar*c).
double epsilon_to_energy(double eps, const PhysicalParams& p);
double energy_to_epsilon(double energy_erg, const PhysicalParams& p);

/// Parses {"a_cm","m0_g","Z","two_q"[,"gm"]} or {"mu","z_alpha","two_q"};
/// the dimensionless form takes precedence if both are present.
DimensionlessParams params_from_json(const std::string& json_text,
                                     PhysicalParams* physical_out = nullptr,
                                     bool* has_physical = nullptr);

} // namespace mesoatom
