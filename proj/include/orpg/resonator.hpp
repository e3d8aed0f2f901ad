#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace orpg {

// Two plane mirrors at z = +-l. The z = -l mirror is uniform with amplitude
// reflection 1 - beta1; the z = +l mirror carries the periodic profile.
// Lengths are in whatever unit the wavelength is given in; the aperture is
// the half-width of the illuminated strip, |x| <= aperture_a.
struct ResonatorConfig {
    double half_length_l = 0.0;
    double wavelength = 1.0;
    double beta1 = 0.0;
    double aperture_a = 0.0;
    std::optional<double> aperture_b;

    double wavenumber() const;
    double length() const { return 2.0 * half_length_l; }

    // Enforces l*k >= 100 and 0 <= beta1 < 1; returns warnings for the
    // soft regime 100 <= l*k < 1e4 where the paraxial reduction is marginal.
    std::vector<std::string> validate() const;
};

struct UniformProfile {};

struct SinusoidalProfile {
    double beta2 = 0.0;   // in [0, 1/2]
    double m = 0.0;       // modulation depth in [0, 1]
    double period_p = 0.0;
};

struct SteppedProfile {
    double beta2 = 0.0;   // in [0, 1)
    double gamma = 0.0;   // slot contrast in [0, 1]
    double period_p = 0.0;
    double slot_tau = 0.0;  // 0 < tau < p

    double duty_sigma() const { return (period_p - slot_tau) / slot_tau; }
};

using MirrorProfile = std::variant<UniformProfile, SinusoidalProfile, SteppedProfile>;

std::optional<double> profile_period(const MirrorProfile& profile);
void validate_profile(const MirrorProfile& profile);

struct DimensionlessGeometry {
    double alpha = 0.0;   // (2 pi / p) sqrt(2l/k)
    double p_bar = 0.0;   // p sqrt(k/2l); alpha * p_bar == 2 pi
    std::optional<double> tau_bar;  // stepped profiles only
    std::optional<double> sigma;    // duty (p - tau)/tau
    double xi_scale = 0.0;          // sqrt(2l/k): x = xi_scale * xi
};

/// Dimensionless grating geometry for a periodic profile; throws
/// std::invalid_argument("no period defined") for a uniform mirror.
DimensionlessGeometry dimensionless(const ResonatorConfig& config,
                                    const MirrorProfile& profile);

/// Periodic mirror transmission T2 at dimensionless transverse coordinate xi.
double evaluate_T2(const MirrorProfile& profile,
                   const DimensionlessGeometry& geom, double xi);
/// Same profile evaluated at physical x (the period is physical there).
double evaluate_T2_physical(const MirrorProfile& profile, double x);

enum class Parity { Odd, Even };

// One resonant index pair: alpha^2 = pi (n1 + n2), s^2 = pi (n1-n2)^2 / (4 (n1+n2)).
struct ResonancePair {
    int n1 = 0;
    int n2 = 0;
    Parity parity = Parity::Odd;
    double s = 0.0;  // transverse wavenumber, >= 0

    int pair_sum() const { return n1 + n2; }
    double s_squared() const { return s * s; }
};

/// All index pairs with |n1|, |n2| <= n_max compatible with the configured
/// geometry. Empty when alpha^2 / pi is not an integer to 1e-9 relative
/// (the resonator length does not support point-lattice modes).
std::vector<ResonancePair> enumerate_resonances(const ResonatorConfig& config,
                                                const MirrorProfile& profile,
                                                int n_max,
                                                double rel_tol = 1e-9);

/// The same test applied directly to a candidate pair.
bool pair_is_resonant(const ResonatorConfig& config, const MirrorProfile& profile,
                      const ResonancePair& pair, double rel_tol = 1e-9);

/// Builds the pair (n1, K - n1) for integer K = alpha^2/pi of the geometry.
ResonancePair make_pair(int n1, int n2);

struct AdmissibleLengths {
    std::vector<double> odd_family;   // L0 (2r-1)/4, supports odd pair sums
    std::vector<double> even_family;  // L0 r/2, the only family with stepped modes
    double L0 = 0.0;                  // 2 p^2 / lambda
};

AdmissibleLengths admissible_lengths(double period_p, double wavelength, int r_max);

}  // namespace orpg
