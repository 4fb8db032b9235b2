#pragma once

#include <string>
#include <vector>

#include "bubble/potentials.hpp"
#include "bubble/vec3.hpp"

namespace bubble {

/// Background medium plus bubble under the critical scaling
/// rho_c = rho_c_bar * delta^2, k_c = k_c_bar * delta^2. SI units.
struct MediumBubbleSpec {
    double rho_m = 1000.0;   // kg/m^3
    double k_m = 2.2e9;      // Pa
    double delta = 1e-2;     // m
    Vec3 z{0, 0, 0};         // bubble center, m
    double rho_c_bar = 1.0;  // kg/m^3 (rho_c = rho_c_bar * delta^2)
    double k_c_bar = 1.0;    // Pa (k_c = k_c_bar * delta^2)

    double rho_c() const { return rho_c_bar * delta * delta; }
    double k_c() const { return k_c_bar * delta * delta; }

    /// Throws on nonpositive parameters or delta > 1; appends a warning for
    /// delta above 0.1 (outside the asymptotic comfort zone).
    void validate(std::vector<std::string>* warnings = nullptr) const;
};

/// Every derived constant of the dominant-field formula, with both the
/// leading-order assembly and the exact-alpha assembly kept for cross-checks.
struct DerivedConstants {
    double c0 = 0.0;        // sqrt(k_m / rho_m)
    double alpha = 0.0;     // 1/rho_c - 1/rho_m
    double beta = 0.0;      // 1/k_c - 1/k_m
    double gamma = 0.0;     // beta - alpha * rho_c / k_c
    double A_dB = 0.0;      // shape factor of the reference mesh B
    double A_dOmega = 0.0;  // delta^2 * A_dB
    double omega_M = 0.0;   // sqrt(2 k_c_bar / (A_dB rho_m))
    double p = 0.0;         // (alpha rho_m / 2)(rho_c / k_c) A_dOmega, exact alpha
    double vol_B = 0.0;
    double vol_Omega = 0.0;  // delta^3 * vol_B

    // Field amplitude coefficient omega_M rho_m |B| delta / (4 pi k_c_bar),
    // plus the independent assembly D * (rho_m/k_m) * |Omega| and its
    // exact-alpha counterpart.
    double prefactor = 0.0;
    double prefactor_via_D = 0.0;
    double prefactor_exact = 0.0;
};

/// Residual of the algebraic identity
/// 1 - gamma k_c rho_m / rho_c = (k_c / rho_c) / c0^2 (zero up to rounding).
double hand_identity_residual(const MediumBubbleSpec& spec, const DerivedConstants& d);

DerivedConstants derive_constants(const MediumBubbleSpec& spec, const ShapeFactors& factors);

double minnaert_frequency(double k_c_bar, double rho_m, double A_dB);

}  // namespace bubble
