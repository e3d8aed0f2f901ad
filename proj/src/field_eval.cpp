#include "orpg/field_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "orpg/mode_solver.hpp"

namespace orpg {

namespace {

const Complex kI(0.0, 1.0);

void require_resonant(const ResonancePair& pair, const ResonatorConfig& config,
                      const MirrorProfile& profile) {
    if (!pair_is_resonant(config, profile, pair))
        throw std::invalid_argument("not a periodic mode for this geometry");
}

}  // namespace

std::vector<double> linspace(double lo, double hi, size_t n) {
    std::vector<double> out(n);
    if (n == 1) { out[0] = lo; return out; }
    for (size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

DeltaComb nearfield_sinusoidal(const ResonancePair& pair,
                               const ResonatorConfig& config,
                               const SinusoidalProfile& profile, Complex C1,
                               Complex C2, double side) {
    require_resonant(pair, config, MirrorProfile(profile));
    const auto geom = dimensionless(config, MirrorProfile(profile));
    const double alpha = geom.alpha;
    const double s = pair.s;
    const int q_prime = longitudinal_index(config, s);

    DeltaComb comb;
    comb.xi_scale = geom.xi_scale;
    comb.xi_spacing = M_PI / alpha;  // physical pitch p/2
    comb.regularization_width = geom.p_bar / 50.0;
    comb.prefactor = M_PI * profile.beta2 * std::pow(1.0 - config.beta1, 0.25) /
                     (alpha * std::pow(1.0 - profile.beta2, 0.75)) *
                     std::exp(-0.25 * kI * (s * s - 2.0 * M_PI * q_prime));

    const bool odd = pair.parity == Parity::Odd;
    // Node n sits at (2n-1) pi / (2 alpha); the uniform mirror sees the odd
    // comb displaced by a quarter period.
    double offset = -M_PI / (2.0 * alpha);
    if (odd && side < 0.0) offset += M_PI / (2.0 * alpha);

    const double xi_max = config.aperture_a / geom.xi_scale;
    // Recover the integer label of each node so the (-1)^n weight of the
    // even case stays tied to the lattice, not to enumeration order.
    const double spacing = comb.xi_spacing;
    const long lo = static_cast<long>(std::ceil((-xi_max - offset) / spacing - 1e-12));
    const long hi = static_cast<long>(std::floor((xi_max - offset) / spacing + 1e-12));
    for (long idx = lo; idx <= hi; ++idx) {
        const double xi_n = offset + static_cast<double>(idx) * spacing;
        const long n = idx;  // node label in xi_n = (2n-1) pi / (2 alpha)
        const double envelope = std::cos(s * xi_n);
        Complex w;
        if (odd) {
            w = C1 * envelope;
        } else {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            w = (C1 + kI * sign * C2) * envelope;
        }
        comb.node_xi.push_back(xi_n);
        comb.node_weight.push_back(w);
    }
    return comb;
}

FieldGrid volume_field(const ResonancePair& pair, const ResonatorConfig& config,
                       const SinusoidalProfile& profile, Complex C1,
                       const std::vector<double>& xi_grid,
                       const std::vector<double>& zeta_grid, int truncation_N,
                       double regularization_width) {
    if (truncation_N < 4) throw std::invalid_argument("truncation_N must be >= 4");
    if (pair.parity == Parity::Even)
        throw std::invalid_argument(
            "volume field is available only for odd pair sums; the even case "
            "is specified at the boundary alone");
    require_resonant(pair, config, MirrorProfile(profile));

    const auto geom = dimensionless(config, MirrorProfile(profile));
    const double alpha = geom.alpha;
    const double s = pair.s;
    const int K = pair.pair_sum();
    const int r = (K - 1) / 2;
    const int q_prime = longitudinal_index(config, s);
    const double loss = std::log((1.0 - config.beta1) * (1.0 - profile.beta2));
    const double ratio = std::sqrt((1.0 - config.beta1) / (1.0 - profile.beta2));
    const double width =
        (regularization_width < 0.0) ? geom.p_bar / 50.0 : regularization_width;

    FieldGrid grid;
    grid.xi = xi_grid;
    grid.zeta = zeta_grid;
    grid.values.assign(xi_grid.size() * zeta_grid.size(), Complex(0.0, 0.0));

    for (int n = -truncation_N; n <= truncation_N; ++n) {
        const double u = s + 2.0 * n * alpha;
        const double damp = (width > 0.0) ? std::exp(-0.5 * u * u * width * width) : 1.0;
        if (damp < 1e-300) continue;
        // Phase integer: 2j - q + 2 n n1 + n(2n-1)(2r+1), expressed through
        // q' = q - 2j; its parity matches q's.
        const double theta =
            static_cast<double>(-q_prime + 2 * n * pair.n1 +
                                n * (2 * n - 1) * (2 * r + 1));
        const double sign_qn = ((q_prime + n) % 2 == 0) ? 1.0 : -1.0;
        const Complex head = std::exp(-0.25 * kI * (u * u)) * damp;
        for (size_t iz = 0; iz < zeta_grid.size(); ++iz) {
            const double zeta = zeta_grid[iz];
            const Complex travel =
                ratio * std::exp(-0.5 * zeta * loss) *
                std::exp(-kI * M_PI * zeta * theta);
            const Complex counter =
                sign_qn * std::exp(0.5 * zeta * loss) *
                std::exp(kI * M_PI * zeta * theta);
            const Complex zfac = C1 * head * (travel - counter);
            for (size_t ix = 0; ix < xi_grid.size(); ++ix)
                grid.values[iz * xi_grid.size() + ix] +=
                    zfac * std::cos(u * xi_grid[ix]);
        }
    }
    return grid;
}

bool MaskedField::on_support(double xi) const {
    double u = std::remainder(xi + shift_xi, p_bar);
    if (u >= p_bar / 2.0) u -= p_bar;
    const bool on_slot = std::abs(u) <= tau_bar / 2.0;
    return complementary ? !on_slot : on_slot;
}

Complex MaskedField::value(double xi) const {
    if (!on_support(xi)) return Complex(0.0, 0.0);
    const double g = shape ? shape(xi) : 1.0;
    return prefactor * std::cos(s * xi) * g;
}

MaskedField nearfield_stepped(const ResonancePair& pair,
                              const ResonatorConfig& config,
                              const SteppedProfile& profile,
                              std::function<double(double)> shape,
                              bool complementary, double side,
                              Complex amplitude) {
    if (pair.parity != Parity::Even)
        throw std::invalid_argument(
            "stepped periodic modes exist only for even (n1+n2)");
    require_resonant(pair, config, MirrorProfile(profile));

    const auto geom = dimensionless(config, MirrorProfile(profile));
    const double s = pair.s;
    const int q_prime = longitudinal_index(config, s);
    const double beta1 = config.beta1;
    const double beta2_eff =
        complementary ? profile.beta2 * (1.0 - profile.gamma) : profile.beta2;

    MaskedField field;
    field.s = s;
    field.p_bar = geom.p_bar;
    field.tau_bar = *geom.tau_bar;
    field.complementary = complementary;
    field.shape = std::move(shape);
    field.xi_scale = geom.xi_scale;
    field.shift_xi = 0.0;

    if (side >= 0.0) {
        field.prefactor = amplitude * beta2_eff * std::pow(1.0 - beta1, 0.25) /
                          std::pow(1.0 - beta2_eff, 0.75) *
                          std::exp(-0.25 * kI * (s * s - 2.0 * M_PI * q_prime));
    } else {
        field.prefactor = -amplitude * beta1 /
                          std::pow((1.0 - beta1) * (1.0 - beta2_eff), 0.25) *
                          std::exp(-0.25 * kI * (s * s + 2.0 * M_PI * q_prime));
        if (pair.n1 % 2 != 0) field.shift_xi = M_PI / geom.alpha;  // p/2 shift
    }
    return field;
}

DeltaComb midplane_comb(const ResonancePair& pair, const ResonatorConfig& config,
                        const SinusoidalProfile& profile, Complex C) {
    if (pair.parity != Parity::Odd)
        throw std::invalid_argument("central-plane comb derived for odd pair sums");
    require_resonant(pair, config, MirrorProfile(profile));
    const auto geom = dimensionless(config, MirrorProfile(profile));
    const double alpha = geom.alpha;
    const double s = pair.s;
    const int q_prime = longitudinal_index(config, s);
    const double beta = profile.beta2;
    const double inv_root = 1.0 / std::sqrt(1.0 - beta);
    const double q_sign = (q_prime % 2 == 0) ? 1.0 : -1.0;  // exp(i pi q)

    DeltaComb comb;
    comb.xi_scale = geom.xi_scale;
    comb.xi_spacing = M_PI / (2.0 * alpha);  // physical pitch p/4
    comb.regularization_width = geom.p_bar / 50.0;
    comb.prefactor = C * (M_PI / (2.0 * alpha)) * std::exp(-0.25 * kI * s * s);

    const Complex sym = inv_root - q_sign;
    const Complex anti = (inv_root + q_sign) * std::exp(-kI * alpha * s);
    const double xi_max = config.aperture_a / geom.xi_scale;
    const double offset = M_PI / (4.0 * alpha);
    const double spacing = comb.xi_spacing;
    const long lo = static_cast<long>(std::ceil((-xi_max - offset) / spacing - 1e-12));
    const long hi = static_cast<long>(std::floor((xi_max - offset) / spacing + 1e-12));
    for (long n = lo; n <= hi; ++n) {
        const double xi_n = offset + static_cast<double>(n) * spacing;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        comb.node_xi.push_back(xi_n);
        comb.node_weight.push_back(std::exp(kI * s * xi_n) *
                                   (sym - kI * sign * anti));
    }
    return comb;
}

FieldGrid rasterize(const DeltaComb& comb, const std::vector<double>& xi_grid,
                    double zeta_row) {
    FieldGrid grid;
    grid.xi = xi_grid;
    grid.zeta = {zeta_row};
    grid.values.assign(xi_grid.size(), Complex(0.0, 0.0));
    const double w = comb.regularization_width;
    if (!(w > 0.0))
        throw std::invalid_argument("rasterization needs a positive width");
    const double norm = 1.0 / (w * std::sqrt(2.0 * M_PI));
    for (size_t i = 0; i < comb.size(); ++i) {
        const Complex weight = comb.weight_at(i);
        for (size_t ix = 0; ix < xi_grid.size(); ++ix) {
            const double d = (xi_grid[ix] - comb.node_xi[i]) / w;
            if (std::abs(d) > 12.0) continue;
            grid.values[ix] += weight * norm * std::exp(-0.5 * d * d);
        }
    }
    return grid;
}

FieldGrid midplane_field(const ResonancePair& pair, const ResonatorConfig& config,
                         const SinusoidalProfile& profile, Complex C,
                         const std::vector<double>& xi_grid) {
    return rasterize(midplane_comb(pair, config, profile, C), xi_grid, 0.0);
}

}  // namespace orpg
