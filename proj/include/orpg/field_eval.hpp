#pragma once

#include <functional>
#include <vector>

#include "orpg/numerics.hpp"
#include "orpg/resonator.hpp"

namespace orpg {

// Point-lattice near field stored symbolically: node positions plus complex
// weights under a common prefactor. Rasterization replaces each delta by a
// unit-mass Gaussian of width regularization_width (in xi).
struct DeltaComb {
    std::vector<double> node_xi;
    std::vector<Complex> node_weight;  // envelope value per node
    Complex prefactor;
    double regularization_width = 0.0;
    double xi_spacing = 0.0;  // lattice pitch in xi
    double xi_scale = 1.0;    // x = xi_scale * xi

    Complex weight_at(size_t i) const { return prefactor * node_weight[i]; }
    size_t size() const { return node_xi.size(); }
};

// Field confined to the slots of a stepped grating (or their complement):
// prefactor * cos(s xi) * shape(xi) on the support, exactly zero elsewhere.
struct MaskedField {
    double s = 0.0;
    double p_bar = 0.0;
    double tau_bar = 0.0;
    double shift_xi = 0.0;   // pi/alpha on the uniform mirror for odd n1
    bool complementary = false;
    Complex prefactor;
    std::function<double(double)> shape;  // defaults to 1 on the support
    double xi_scale = 1.0;

    bool on_support(double xi) const;
    Complex value(double xi) const;
    Complex value_physical(double x) const { return value(x / xi_scale); }
};

struct FieldGrid {
    std::vector<double> xi;
    std::vector<double> zeta;
    std::vector<Complex> values;  // values[iz * xi.size() + ix]

    Complex at(size_t ix, size_t iz) const { return values[iz * xi.size() + ix]; }
};

/// Boundary-comb near field of a sinusoidal grating at the resonance `pair`.
/// Odd pair sums use the single-constant comb; even pair sums alternate the
/// weight between C1 + iC2 and C1 - iC2. side = -0.5 (uniform mirror) keeps
/// the structure but displaces the odd-case nodes by a quarter period.
/// Throws std::invalid_argument("not a periodic mode") off resonance.
DeltaComb nearfield_sinusoidal(const ResonancePair& pair,
                               const ResonatorConfig& config,
                               const SinusoidalProfile& profile, Complex C1,
                               Complex C2, double side = 0.5);

/// Volume field of an odd-parity point-lattice mode: the truncated harmonic
/// sum with counter-propagating loss factors exp(+-zeta/2 ln[(1-b1)(1-b2)]).
/// Harmonic n is damped by exp(-((s+2n alpha) w)^2 / 2) with
/// w = regularization_width; passing w = 0 evaluates the bare partial sum,
/// which concentrates on the node lattice and does not converge pointwise.
FieldGrid volume_field(const ResonancePair& pair, const ResonatorConfig& config,
                       const SinusoidalProfile& profile, Complex C1,
                       const std::vector<double>& xi_grid,
                       const std::vector<double>& zeta_grid, int truncation_N,
                       double regularization_width = -1.0);  // -1: p_bar/50

/// Slot-supported (or complementary) eigenfield of a stepped grating,
/// defined for even pair sums only. side = -0.5 evaluates the uniform-mirror
/// face: amplitude -A beta1 / [(1-b1)(1-b2eff)]^{1/4} and a half-period mask
/// shift when n1 is odd.
MaskedField nearfield_stepped(const ResonancePair& pair,
                              const ResonatorConfig& config,
                              const SteppedProfile& profile,
                              std::function<double(double)> shape,
                              bool complementary, double side = 0.5,
                              Complex amplitude = Complex(1.0, 0.0));

/// Central-plane (zeta = 0) comb of an odd-parity sinusoidal mode: pitch a
/// quarter period with weights alternating between the two bracket values.
/// Valid down to beta2 = 0, where the comb survives.
DeltaComb midplane_comb(const ResonancePair& pair, const ResonatorConfig& config,
                        const SinusoidalProfile& profile, Complex C);

FieldGrid midplane_field(const ResonancePair& pair, const ResonatorConfig& config,
                         const SinusoidalProfile& profile, Complex C,
                         const std::vector<double>& xi_grid);

/// Gaussian rasterization of a comb onto a xi grid (single zeta row).
FieldGrid rasterize(const DeltaComb& comb, const std::vector<double>& xi_grid,
                    double zeta_row);

std::vector<double> linspace(double lo, double hi, size_t n);

}  // namespace orpg
