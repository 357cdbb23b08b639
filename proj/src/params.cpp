#include "mesoatom/params.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace mesoatom {

void PhysicalParams::validate() const {
    if (!(a_cm > 0.0)) throw DomainError("curvature radius a must be > 0");
    if (!(m0_g > 0.0)) throw DomainError("particle mass m0 must be > 0");
    if (Z < 1) throw DomainError("nuclear charge number Z must be >= 1");
    if (!(e_esu > 0.0) || !(hbar > 0.0) || !(c > 0.0))
        throw DomainError("fundamental constants must be positive");
    const double twoq = 2.0 * raw_q();
    const double nearest = std::round(twoq);
    if (std::abs(twoq - nearest) > half_integer_tol * std::max(1.0, std::abs(twoq)))
        throw NotHalfInteger("e*gm/(hbar*c) = " + std::to_string(raw_q()) +
                             " is not a half-integer");
}

PhysicalParams PhysicalParams::with_two_q(double a_cm, double m0_g, int Z, long long two_q) {
    PhysicalParams p;
    p.a_cm = a_cm;
    p.m0_g = m0_g;
    p.Z = Z;
    // gm chosen so that 2 e gm / (hbar c) = two_q exactly
    p.gm = 0.5 * static_cast<double>(two_q) * p.hbar * p.c / p.e_esu;
    return p;
}

void DimensionlessParams::validate() const {
    if (!(mu > 0.0)) throw DomainError("mu must be > 0");
    if (!(z_alpha >= 0.0)) throw DomainError("Z alpha must be >= 0");
    if (z_alpha >= 0.5)
        throw CouplingTooLarge("Z alpha = " + std::to_string(z_alpha) +
                               " >= 1/2: kappa is no longer guaranteed real");
}

DimensionlessParams from_physical(const PhysicalParams& p) {
    p.validate();
    DimensionlessParams d;
    d.mu = p.m0_g * p.a_cm * p.c / p.hbar;
    d.z_alpha = static_cast<double>(p.Z) * p.e_esu * p.e_esu / (p.hbar * p.c);
    d.two_q = static_cast<long long>(std::llround(2.0 * p.raw_q()));
    d.validate();
    return d;
}

double epsilon_to_energy(double eps, const PhysicalParams& p) {
    return eps * p.hbar * p.c / p.a_cm;
}

double energy_to_epsilon(double energy_erg, const PhysicalParams& p) {
    return energy_erg * p.a_cm / (p.hbar * p.c);
}

DimensionlessParams params_from_json(const std::string& json_text,
                                     PhysicalParams* physical_out,
                                     bool* has_physical) {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw DomainError("parameter config must be a JSON object");

    const long long two_q = j.value("two_q", 0LL);

    // dimensionless form takes precedence if both are present
    if (j.contains("mu") || j.contains("z_alpha")) {
        if (!j.contains("mu") || !j.contains("z_alpha"))
            throw DomainError("dimensionless config needs both \"mu\" and \"z_alpha\"");
        DimensionlessParams d;
        d.mu = j.at("mu").get<double>();
        d.z_alpha = j.at("z_alpha").get<double>();
        d.two_q = two_q;
        d.validate();
        if (has_physical) *has_physical = false;
        return d;
    }

    if (!j.contains("a_cm") || !j.contains("m0_g") || !j.contains("Z"))
        throw DomainError("physical config needs \"a_cm\", \"m0_g\" and \"Z\"");
    PhysicalParams p = PhysicalParams::with_two_q(j.at("a_cm").get<double>(),
                                                  j.at("m0_g").get<double>(),
                                                  j.at("Z").get<int>(), two_q);
    if (j.contains("gm")) p.gm = j.at("gm").get<double>();
    auto d = from_physical(p);
    if (physical_out) *physical_out = p;
    if (has_physical) *has_physical = true;
    return d;
}

} // namespace mesoatom
