#pragma once

#include <string>
#include <variant>
#include <vector>

#include "orpg/field_eval.hpp"
#include "orpg/resonator.hpp"

namespace orpg {

struct LobeInfo {
    double x = 0.0;       // transverse position at distance z
    double height = 0.0;  // intensity at the refined maximum
    double width = 0.0;   // null-to-null width, 0 when a null is out of range
    int order = 0;        // nearest diffraction order round(p x / (lambda z))
};

struct DiffractionPattern {
    std::vector<double> x;
    std::vector<double> intensity;
    std::vector<double> normalized;
    std::vector<LobeInfo> main_lobes;
    std::vector<std::string> warnings;
    double z = 0.0;
    double wavelength = 0.0;
    double aperture_a = 0.0;
};

using NearFieldInput = std::variant<DeltaComb, MaskedField, FieldGrid>;

/// |F|^2 of the aperture-limited near field at distance z, sampled on
/// x_grid. Delta combs reduce to an exact phase sum over nodes inside the
/// aperture; masked fields are integrated slot by slot with oscillatory
/// quadrature; sampled grids use the trapezoid rule. The normalized column
/// is the reduced intensity for masked fields and the peak-normalized
/// intensity otherwise. Requires z >= 10 a^2/lambda (warns below 100x).
DiffractionPattern fraunhofer(const NearFieldInput& nearfield, double aperture_a,
                              double wavelength, double z,
                              const std::vector<double>& x_grid);

// Cosine-series coefficients of the inter-slot window of a stepped grating,
// Gbar(x) = sum b_n cos(2 pi n x / p).
struct FourierCoeffs {
    std::vector<double> b;  // b[0..N]
    double sigma = 0.0;

    double b0() const { return b.front(); }
};

/// Closed-form coefficients of the uniformly excited window: b0 = s/(1+s),
/// b_n = 2/(1+s) sinc(n/(1+s)).
FourierCoeffs fourier_coeffs_uniform(double sigma, int n_terms);

/// Quadrature of the slot-indicator Fourier integrals, kept independent of
/// the closed form. Signs are centering-dependent; magnitudes are not.
FourierCoeffs fourier_coeffs_numeric(double sigma, int n_terms,
                                     int panels_per_period = 64);

/// Two-branch sinc^2 sum for the complementary stepped mode under p << a.
/// Peaks sit at theta_n = [2 pi n / p +- s (pi/lambda l)^(1/2)] lambda/(2 pi)
/// with reduced heights b'_n^2 (b'_0 = 2 b0). The two branches add in
/// intensity, so an s = 0 pattern carries twice the single-branch height.
DiffractionPattern intensity_closed_form(const ResonancePair& pair,
                                         const ResonatorConfig& config,
                                         const SteppedProfile& profile,
                                         const FourierCoeffs& coeffs,
                                         double amplitude, double z,
                                         const std::vector<double>& x_grid);

/// Main-lobe count n* from the duty factor: 2 [1 + 1/sigma] - 1 when
/// 1 + 1/sigma is within frac_small of its integer part, else + 1.
int lobe_count(double sigma, double frac_small = 0.1);

/// Local maxima above `floor` times the global maximum, refined by a
/// three-point parabola; widths measured null-to-null.
std::vector<LobeInfo> extract_peaks(const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    double floor_fraction = 1e-3);

/// Drops maxima dominated by a higher one within `radius` — a single
/// aperture lobe then contributes one entry instead of its whole sinc
/// ringing. radius just below the null-to-null width lambda z / a works.
std::vector<LobeInfo> filter_main_lobes(const std::vector<LobeInfo>& peaks,
                                        double radius);

}  // namespace orpg
