#include "bubble/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace bubble {

void MediumBubbleSpec::validate(std::vector<std::string>* warnings) const {
    if (!(rho_m > 0.0 && k_m > 0.0 && rho_c_bar > 0.0 && k_c_bar > 0.0))
        throw std::runtime_error("medium/bubble parameters must be > 0");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::runtime_error("delta must be in (0, 1]");
    if (delta > 0.1 && warnings)
        warnings->push_back("delta > 0.1: outside the small-bubble asymptotic regime");
}

double minnaert_frequency(double k_c_bar, double rho_m, double A_dB) {
    if (!(k_c_bar > 0.0 && rho_m > 0.0 && A_dB > 0.0))
        throw std::runtime_error("minnaert_frequency arguments must be > 0");
    return std::sqrt(2.0 * k_c_bar / (A_dB * rho_m));
}

double hand_identity_residual(const MediumBubbleSpec& spec, const DerivedConstants& d) {
    const double ratio = spec.k_c() / spec.rho_c();  // k_c_bar / rho_c_bar
    const double lhs = 1.0 - d.gamma * spec.k_c() * spec.rho_m / spec.rho_c();
    const double rhs = ratio / (d.c0 * d.c0);
    return std::abs(lhs - rhs);
}

DerivedConstants derive_constants(const MediumBubbleSpec& spec, const ShapeFactors& factors) {
    spec.validate();
    if (!(factors.A_dB > 0.0)) throw std::runtime_error("A_dB must be > 0");

    DerivedConstants d;
    const double rho_c = spec.rho_c();
    const double k_c = spec.k_c();
    const double delta = spec.delta;

    d.c0 = std::sqrt(spec.k_m / spec.rho_m);
    d.alpha = 1.0 / rho_c - 1.0 / spec.rho_m;
    d.beta = 1.0 / k_c - 1.0 / spec.k_m;
    // gamma = beta - alpha * rho_c / k_c; the 1/k_c terms cancel exactly, so
    // assemble the reduced form to avoid losing digits at small delta.
    d.gamma = rho_c / (spec.rho_m * k_c) - 1.0 / spec.k_m;
    d.A_dB = factors.A_dB;
    d.A_dOmega = delta * delta * factors.A_dB;
    d.omega_M = minnaert_frequency(spec.k_c_bar, spec.rho_m, factors.A_dB);
    d.p = 0.5 * d.alpha * spec.rho_m * (rho_c / k_c) * d.A_dOmega;
    d.vol_B = factors.vol_B;
    d.vol_Omega = delta * delta * delta * factors.vol_B;

    d.prefactor = d.omega_M * spec.rho_m * factors.vol_B * delta / (4.0 * M_PI * spec.k_c_bar);

    // Leading-order assembly D, then D * (rho_m / k_m) * |Omega|.
    const double D = (d.c0 * d.c0 / (4.0 * M_PI)) * (1.0 / (delta * delta)) *
                     (spec.rho_m / spec.k_c_bar) * d.omega_M;
    d.prefactor_via_D = D * (spec.rho_m / spec.k_m) * d.vol_Omega;

    // Exact-alpha assembly: keeps alpha (not its leading term 1/rho_c) and the
    // exact resonance rate p^{-1/2} instead of omega_M.
    const double D_exact = (d.alpha * spec.rho_m / (4.0 * M_PI)) * (rho_c / k_c) *
                           d.c0 * d.c0 / std::sqrt(d.p);
    d.prefactor_exact = D_exact * (spec.rho_m / spec.k_m) * d.vol_Omega;

    return d;
}

}  // namespace bubble
