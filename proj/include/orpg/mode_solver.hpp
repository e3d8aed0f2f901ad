#pragma once

#include <vector>

#include "orpg/numerics.hpp"
#include "orpg/resonator.hpp"

namespace orpg {

// Truncated coupled-harmonic system for a sinusoidal grating. Row n couples
// the amplitudes A_{n-1}, A_n, A_{n+1} of f2(xi) = e^{i s xi} sum_n A_n
// e^{i n alpha xi}; the round-trip eigenvalue w = exp(-i chi_bar) enters only
// through the diagonal phase matrix D_nn = exp(i (s + n alpha)^2).
struct BlochSystem {
    double s_j = 0.0;
    double alpha = 0.0;
    int truncation_N = 16;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double m = 0.0;
    ComplexMatrix T;  // tridiagonal, dimension 2N+1
    ComplexVector D;  // unimodular diagonal

    int dim() const { return 2 * truncation_N + 1; }
    int index_of(int harmonic) const { return harmonic + truncation_N; }
};

BlochSystem build_bloch(const SinusoidalProfile& profile,
                        const ResonatorConfig& config, double s_j,
                        int truncation_N);

/// Variant used by scans that already carry dimensionless parameters.
BlochSystem build_bloch_dimensionless(double alpha, double s_j, double beta1,
                                      double beta2, double m, int truncation_N);

// One round-trip eigenvalue continued onto branch j, with the longitudinal
// bookkeeping of the physical resonator attached.
struct Spectrum {
    Complex chi_bar;        // round-trip phase eigenvalue on this branch
    int branch_j = 0;
    int dominant_harmonic = 0;  // harmonic carrying most eigenvector weight
    double s_eff = 0.0;         // |s_j + n* alpha| of that harmonic
    Complex w;                  // exp(-i chi_bar)
    int q_prime = 0;            // longitudinal index, >= 1
    Complex k;                  // complex wavenumber
    double k_x = 0.0;           // s_eff * sqrt(k/2l)
    Complex k_z;
    double Q = 0.0;             // -pi q' / Im(chi_bar)
};

/// Solves det(T + wD) = 0, anchors each chi_bar = i ln w to the branch
/// nearest the dominant harmonic's free phase (s + n alpha)^2, and then
/// replicates every eigenvalue over branches chi_bar - 4 pi j for
/// j in [branch_j_min, branch_j_max]. Longitudinal indices q' are assigned
/// from the configured wavelength; branches that would give q' < 1 are
/// dropped. Throws std::runtime_error("degenerate eigenvalue") if |w| = 0.
std::vector<Spectrum> solve_spectrum(const BlochSystem& sys,
                                     const ResonatorConfig& config,
                                     int branch_j_min, int branch_j_max);

// beta2-perturbation data for the mode continuing cos(s_j xi).
struct PerturbativeMode {
    enum class Base { Traveling, Cosine, Sine };
    Base base = Base::Cosine;
    double s_j = 0.0;
    double alpha = 0.0;
    double m = 0.0;

    struct HarmonicTerm {
        int harmonic;        // coefficient of cos((s_j + harmonic*alpha) xi)
        Complex coefficient;
    };
    std::vector<std::vector<HarmonicTerm>> corrections;  // [order-1]
    // chl_bar series: chi_bar = chi0 + beta2*mu[0] + beta2^2*mu[1] + ...
    std::vector<Complex> mu;
};

/// Closed-form perturbation series up to `order` (1 or 2). Throws
/// std::domain_error("perturbation invalid near resonance") when either
/// phase alpha^2 +- 2 alpha s_j sits within breakdown_margin of 2 pi n.
PerturbativeMode perturbative_mode(const SinusoidalProfile& profile, double s_j,
                                   double alpha, int order,
                                   double breakdown_margin = 1e-3);

/// Distance of (alpha, s_j) from the nearest point-lattice resonance:
/// min over integers n of |(alpha^2 +- 2 alpha s_j) - 2 pi n|.
double breakdown_distance(double alpha, double s_j);

struct QualityFactors {
    double Q = 0.0;      // grating mode, losses (1-beta1)(1-beta2)
    double Q_bar = 0.0;  // complementary mode, losses (1-beta1)(1-beta2(1-gamma))
};

/// Q_{q'} = -pi q' / ln[(1-beta1)(1-beta2)] and the complementary-mode value.
/// Throws std::domain_error("infinite Q") when the round trip is lossless.
QualityFactors quality_factor(int q_prime, double beta1, double beta2,
                              double gamma = 0.0);

/// Longitudinal index of the mode nearest the configured wavelength for a
/// given dimensionless transverse wavenumber.
int longitudinal_index(const ResonatorConfig& config, double s);

}  // namespace orpg
