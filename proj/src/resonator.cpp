#include "orpg/resonator.hpp"

#include <cmath>
#include <stdexcept>

namespace orpg {

double ResonatorConfig::wavenumber() const {
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
    return 2.0 * M_PI / wavelength;
}

std::vector<std::string> ResonatorConfig::validate() const {
    std::vector<std::string> warnings;
    if (!(half_length_l > 0.0))
        throw std::invalid_argument("half_length_l must be positive");
    if (beta1 < 0.0 || beta1 >= 1.0)
        throw std::invalid_argument("beta1 must lie in [0, 1)");
    const double kl = half_length_l * wavenumber();
    if (kl < 100.0)
        throw std::invalid_argument("l*k = " + std::to_string(kl) +
                                    " violates the paraxial regime (need >= 100)");
    if (kl < 1e4)
        warnings.push_back("l*k = " + std::to_string(kl) +
                           " is below 1e4; paraxial reduction is marginal");
    return warnings;
}

std::optional<double> profile_period(const MirrorProfile& profile) {
    if (const auto* s = std::get_if<SinusoidalProfile>(&profile)) return s->period_p;
    if (const auto* s = std::get_if<SteppedProfile>(&profile)) return s->period_p;
    return std::nullopt;
}

void validate_profile(const MirrorProfile& profile) {
    if (const auto* s = std::get_if<SinusoidalProfile>(&profile)) {
        if (s->beta2 < 0.0 || s->beta2 > 0.5)
            throw std::invalid_argument("sinusoidal beta2 must lie in [0, 1/2]");
        if (s->m < 0.0 || s->m > 1.0)
            throw std::invalid_argument("modulation depth m must lie in [0, 1]");
        if (!(s->period_p > 0.0))
            throw std::invalid_argument("grating period must be positive");
    } else if (const auto* s = std::get_if<SteppedProfile>(&profile)) {
        if (s->beta2 < 0.0 || s->beta2 >= 1.0)
            throw std::invalid_argument("stepped beta2 must lie in [0, 1)");
        if (s->gamma < 0.0 || s->gamma > 1.0)
            throw std::invalid_argument("gamma must lie in [0, 1]");
        if (!(s->period_p > 0.0))
            throw std::invalid_argument("grating period must be positive");
        if (!(s->slot_tau > 0.0) || !(s->slot_tau < s->period_p))
            throw std::invalid_argument("slot width must satisfy 0 < tau < p");
    }
}

DimensionlessGeometry dimensionless(const ResonatorConfig& config,
                                    const MirrorProfile& profile) {
    const auto period = profile_period(profile);
    if (!period) throw std::invalid_argument("no period defined for uniform mirror");
    validate_profile(profile);

    const double k = config.wavenumber();
    const double scale = std::sqrt(2.0 * config.half_length_l / k);
    DimensionlessGeometry geom;
    geom.xi_scale = scale;
    geom.alpha = 2.0 * M_PI / *period * scale;
    geom.p_bar = *period / scale;
    if (const auto* s = std::get_if<SteppedProfile>(&profile)) {
        geom.tau_bar = s->slot_tau / scale;
        geom.sigma = s->duty_sigma();
    }
    return geom;
}

namespace {

// Folds u into [-p/2, p/2).
double fold_period(double u, double p) {
    double r = std::remainder(u, p);
    if (r >= p / 2.0) r -= p;
    return r;
}

}  // namespace

double evaluate_T2_physical(const MirrorProfile& profile, double x) {
    if (std::holds_alternative<UniformProfile>(profile)) return 1.0;
    if (const auto* s = std::get_if<SinusoidalProfile>(&profile)) {
        return 1.0 - s->beta2 * (1.0 + s->m * std::cos(2.0 * M_PI * x / s->period_p));
    }
    const auto& st = std::get<SteppedProfile>(profile);
    const double u = fold_period(x, st.period_p);
    const bool on_slot = std::abs(u) <= st.slot_tau / 2.0;
    return on_slot ? 1.0 - st.beta2 : 1.0 - st.beta2 * (1.0 - st.gamma);
}

double evaluate_T2(const MirrorProfile& profile,
                   const DimensionlessGeometry& geom, double xi) {
    if (!std::isfinite(xi)) throw std::invalid_argument("xi must be finite");
    return evaluate_T2_physical(profile, xi * geom.xi_scale);
}

ResonancePair make_pair(int n1, int n2) {
    if (n1 + n2 <= 0) throw std::invalid_argument("pair requires n1 + n2 > 0");
    ResonancePair pair;
    pair.n1 = n1;
    pair.n2 = n2;
    pair.parity = ((n1 + n2) % 2 != 0) ? Parity::Odd : Parity::Even;
    const double d = static_cast<double>(n1 - n2);
    pair.s = std::sqrt(M_PI * d * d / (4.0 * (n1 + n2)));
    return pair;
}

std::vector<ResonancePair> enumerate_resonances(const ResonatorConfig& config,
                                                const MirrorProfile& profile,
                                                int n_max, double rel_tol) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const auto geom = dimensionless(config, profile);
    const double ratio = geom.alpha * geom.alpha / M_PI;  // = 2 L lambda / p^2
    const double nearest = std::round(ratio);
    std::vector<ResonancePair> pairs;
    if (std::abs(ratio - nearest) > rel_tol * std::max(1.0, std::abs(ratio)))
        return pairs;
    const int pair_sum = static_cast<int>(nearest);
    if (pair_sum <= 0) return pairs;

    for (int n1 = -n_max; n1 <= n_max; ++n1) {
        const int n2 = pair_sum - n1;
        if (n2 < -n_max || n2 > n_max) continue;
        pairs.push_back(make_pair(n1, n2));
    }
    return pairs;
}

bool pair_is_resonant(const ResonatorConfig& config, const MirrorProfile& profile,
                      const ResonancePair& pair, double rel_tol) {
    const auto geom = dimensionless(config, profile);
    const double target = M_PI * pair.pair_sum();
    const double a2 = geom.alpha * geom.alpha;
    return std::abs(a2 - target) <= rel_tol * std::max(1.0, std::abs(a2));
}

AdmissibleLengths admissible_lengths(double period_p, double wavelength, int r_max) {
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    if (!(period_p > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument("period and wavelength must be positive");
    AdmissibleLengths lengths;
    lengths.L0 = 2.0 * period_p * period_p / wavelength;
    lengths.odd_family.reserve(r_max);
    lengths.even_family.reserve(r_max);
    for (int r = 1; r <= r_max; ++r) {
        lengths.odd_family.push_back(lengths.L0 * (2.0 * r - 1.0) / 4.0);
        lengths.even_family.push_back(lengths.L0 * r / 2.0);
    }
    return lengths;
}

}  // namespace orpg
