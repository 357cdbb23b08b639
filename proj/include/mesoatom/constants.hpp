#pragma once

// CGS (Gaussian) values, CODATA 2018.
namespace mesoatom::cgs {

inline constexpr double hbar_erg_s = 1.054571817e-27;   // erg*s
inline constexpr double c_cm_s     = 2.99792458e10;     // cm/s
inline constexpr double e_esu      = 4.80320471257e-10; // statC

// PDG charged pion mass, 139.57039 MeV/c^2 in grams.
inline constexpr double m_pion_g = 2.4880681963975512e-25;

} // namespace mesoatom::cgs
