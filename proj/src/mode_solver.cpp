#include "orpg/mode_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace orpg {

namespace {
const Complex kI(0.0, 1.0);
}

BlochSystem build_bloch_dimensionless(double alpha, double s_j, double beta1,
                                      double beta2, double m, int truncation_N) {
    if (truncation_N < 1) throw std::invalid_argument("truncation_N must be >= 1");
    BlochSystem sys;
    sys.s_j = s_j;
    sys.alpha = alpha;
    sys.truncation_N = truncation_N;
    sys.beta1 = beta1;
    sys.beta2 = beta2;
    sys.m = m;

    const int dim = sys.dim();
    sys.T = ComplexMatrix::Zero(dim, dim);
    sys.D = ComplexVector(dim);
    const double couple = 0.5 * (1.0 - beta1) * beta2 * m;
    const double a2 = alpha * alpha;
    for (int idx = 0; idx < dim; ++idx) {
        const double n = idx - truncation_N;
        const double u = s_j + n * alpha;
        sys.T(idx, idx) = -(1.0 - beta1) * (1.0 - beta2);
        sys.D(idx) = std::exp(kI * (u * u));
        if (idx > 0)
            sys.T(idx, idx - 1) =
                couple * std::exp(kI * (2.0 * a2 * n - (a2 - 2.0 * alpha * s_j)));
        if (idx + 1 < dim)
            sys.T(idx, idx + 1) =
                couple * std::exp(-kI * (2.0 * a2 * n + (a2 + 2.0 * alpha * s_j)));
    }
    return sys;
}

BlochSystem build_bloch(const SinusoidalProfile& profile,
                        const ResonatorConfig& config, double s_j,
                        int truncation_N) {
    const auto geom = dimensionless(config, MirrorProfile(profile));
    return build_bloch_dimensionless(geom.alpha, s_j, config.beta1,
                                     profile.beta2, profile.m, truncation_N);
}

int longitudinal_index(const ResonatorConfig& config, double s) {
    const double k = config.wavenumber();
    const double l = config.half_length_l;
    return static_cast<int>(std::round((k - s * s / (4.0 * l)) * 2.0 * l / M_PI));
}

std::vector<Spectrum> solve_spectrum(const BlochSystem& sys,
                                     const ResonatorConfig& config,
                                     int branch_j_min, int branch_j_max) {
    if (branch_j_min > branch_j_max)
        throw std::invalid_argument("empty branch range");
    const auto eig = generalized_eigensystem(sys.T, sys.D);
    const double l = config.half_length_l;

    std::vector<Spectrum> out;
    out.reserve(eig.values.size() *
                static_cast<size_t>(branch_j_max - branch_j_min + 1));
    for (size_t col = 0; col < eig.values.size(); ++col) {
        const Complex w = eig.values[col];
        if (std::abs(w) < 1e-300)
            throw std::runtime_error("degenerate eigenvalue: |w| = 0");

        int n_star = 0;
        double best = -1.0;
        for (int idx = 0; idx < sys.dim(); ++idx) {
            const double weight = std::norm(eig.vectors(idx, static_cast<Eigen::Index>(col)));
            if (weight > best) { best = weight; n_star = idx - sys.truncation_N; }
        }
        const double u_star = sys.s_j + n_star * sys.alpha;

        // chi_bar = i ln w, branch anchored at the free-phase value u*^2.
        Complex chi = kI * std::log(w);
        chi += 2.0 * M_PI * std::round((u_star * u_star - chi.real()) / (2.0 * M_PI));

        const int q_base = longitudinal_index(config, std::abs(u_star));
        for (int j = branch_j_min; j <= branch_j_max; ++j) {
            Spectrum entry;
            entry.chi_bar = chi - 4.0 * M_PI * j;
            entry.branch_j = j;
            entry.dominant_harmonic = n_star;
            entry.s_eff = std::abs(u_star);
            entry.w = w;
            entry.q_prime = q_base - 2 * j;
            if (entry.q_prime < 1) continue;
            entry.k = Complex(M_PI / (2.0 * l) * entry.q_prime +
                                  entry.s_eff * entry.s_eff / (4.0 * l),
                              chi.imag() / (4.0 * l));
            entry.k_x = entry.s_eff * std::sqrt(config.wavenumber() / (2.0 * l));
            entry.k_z = Complex(M_PI / (2.0 * l) * entry.q_prime,
                                chi.imag() / (4.0 * l));
            entry.Q = (chi.imag() != 0.0)
                          ? -M_PI * entry.q_prime / chi.imag()
                          : std::numeric_limits<double>::infinity();
            out.push_back(entry);
        }
    }
    return out;
}

double breakdown_distance(double alpha, double s_j) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    const auto dist = [](double phase) {
        return std::abs(phase - 2.0 * M_PI * std::round(phase / (2.0 * M_PI)));
    };
    const double plus = alpha * alpha + 2.0 * alpha * s_j;
    const double minus = alpha * alpha - 2.0 * alpha * s_j;
    return std::min(dist(plus), dist(minus));
}

PerturbativeMode perturbative_mode(const SinusoidalProfile& profile, double s_j,
                                   double alpha, int order,
                                   double breakdown_margin) {
    if (order < 1 || order > 2)
        throw std::invalid_argument("perturbation order must be 1 or 2");
    if (breakdown_distance(alpha, s_j) < breakdown_margin)
        throw std::domain_error(
            "perturbation invalid near resonance: phase within margin of 2 pi n");

    const double m = profile.m;
    const double phi_plus = alpha * alpha + 2.0 * alpha * s_j;
    const double phi_minus = alpha * alpha - 2.0 * alpha * s_j;

    PerturbativeMode mode;
    mode.s_j = s_j;
    mode.alpha = alpha;
    mode.m = m;

    const Complex a_plus = -0.5 * m / (1.0 - std::exp(-kI * phi_plus));
    const Complex a_minus = -0.5 * m / (1.0 - std::exp(-kI * phi_minus));
    mode.corrections.push_back({{+1, a_plus}, {-1, a_minus}});
    // Round-trip eigenvalue series (chi_bar convention; the half-trip series
    // carries half these values).
    mode.mu.push_back(Complex(0.0, -1.0));

    if (order == 2) {
        // Second order from the same recurrence: the +-1 coefficients repeat
        // and the +-2 harmonics open up.
        const double a2 = alpha * alpha;
        const auto g = [&](int n) {
            const double u = s_j + n * alpha;
            return std::exp(kI * (u * u - s_j * s_j));
        };
        const Complex phase_p2 = std::exp(kI * (3.0 * a2 + 2.0 * alpha * s_j));
        const Complex phase_m2 = std::exp(kI * (3.0 * a2 - 2.0 * alpha * s_j));
        const Complex a_p2 = 0.5 * m * a_plus * phase_p2 / (1.0 - g(2));
        const Complex a_m2 = 0.5 * m * a_minus * phase_m2 / (1.0 - g(-2));
        mode.corrections.push_back(
            {{+2, a_p2}, {+1, a_plus}, {-1, a_minus}, {-2, a_m2}});
        const Complex mu2 =
            Complex(0.0, -0.5) +
            0.25 * kI * m * m *
                (1.0 / (std::exp(kI * phi_plus) - 1.0) +
                 1.0 / (std::exp(kI * phi_minus) - 1.0));
        mode.mu.push_back(mu2);
    }
    return mode;
}

QualityFactors quality_factor(int q_prime, double beta1, double beta2,
                              double gamma) {
    if (q_prime < 1) throw std::invalid_argument("q_prime must be >= 1");
    const double beta2_bar = beta2 * (1.0 - gamma);
    const double loss = std::log((1.0 - beta1) * (1.0 - beta2));
    const double loss_bar = std::log((1.0 - beta1) * (1.0 - beta2_bar));
    if (loss == 0.0 || loss_bar == 0.0)
        throw std::domain_error("infinite Q: lossless round trip");
    return {-M_PI * q_prime / loss, -M_PI * q_prime / loss_bar};
}

}  // namespace orpg
