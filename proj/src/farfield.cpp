#include "orpg/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orpg {

namespace {

const Complex kI(0.0, 1.0);

void check_zone(double aperture_a, double wavelength, double z,
                std::vector<std::string>* warnings) {
    const double rayleigh = aperture_a * aperture_a / wavelength;
    if (z < 10.0 * rayleigh)
        throw std::domain_error("Fraunhofer precondition violated: z < 10 a^2/lambda");
    if (z < 100.0 * rayleigh)
        warnings->push_back("z below 100 a^2/lambda; far-field pattern is marginal");
}

Complex comb_transform(const DeltaComb& comb, double aperture_a, double kappa) {
    Complex sum(0.0, 0.0);
    for (size_t i = 0; i < comb.size(); ++i) {
        const double x_n = comb.node_xi[i] * comb.xi_scale;
        if (std::abs(x_n) > aperture_a) continue;
        sum += comb.weight_at(i) * std::exp(-kI * kappa * x_n);
    }
    // One xi-delta carries measure dx/dxi.
    return sum * comb.xi_scale;
}

Complex masked_transform(const MaskedField& field, double aperture_a,
                         double kappa) {
    // Support intervals in physical x, clipped to the aperture.
    const double p = field.p_bar * field.xi_scale;
    const double tau = field.tau_bar * field.xi_scale;
    const double shift = -field.shift_xi * field.xi_scale;
    std::vector<std::pair<double, double>> pieces;
    const long n_lo = static_cast<long>(std::floor((-aperture_a - shift) / p)) - 1;
    const long n_hi = static_cast<long>(std::ceil((aperture_a - shift) / p)) + 1;
    for (long n = n_lo; n <= n_hi; ++n) {
        const double center = shift + static_cast<double>(n) * p;
        double lo, hi;
        if (!field.complementary) {
            lo = center - tau / 2.0;
            hi = center + tau / 2.0;
        } else {
            lo = center + tau / 2.0;
            hi = center + p - tau / 2.0;
        }
        lo = std::max(lo, -aperture_a);
        hi = std::min(hi, aperture_a);
        if (hi > lo) pieces.emplace_back(lo, hi);
    }

    const double rate_budget = std::abs(kappa) + std::abs(field.s / field.xi_scale);
    Complex total(0.0, 0.0);
    for (const auto& [lo, hi] : pieces) {
        const int panels = panels_for_phase(rate_budget, lo, hi, 2);
        total += oscillatory_quadrature(
            [&](double x) { return field.value_physical(x); }, lo, hi, kappa,
            panels);
    }
    return total;
}

Complex grid_transform(const FieldGrid& grid, double aperture_a, double kappa) {
    if (grid.zeta.size() != 1)
        throw std::invalid_argument("far field needs a single-row field grid");
    if (grid.xi.size() < 2)
        throw std::invalid_argument("field grid too small");
    // Grid is in xi with unspecified scale; interpret xi as physical x when
    // callers pass a sampled physical field.
    Complex total(0.0, 0.0);
    for (size_t i = 0; i + 1 < grid.xi.size(); ++i) {
        const double x0 = grid.xi[i], x1 = grid.xi[i + 1];
        if (x1 < -aperture_a || x0 > aperture_a) continue;
        const Complex f0 = grid.values[i] * std::exp(-kI * kappa * x0);
        const Complex f1 = grid.values[i + 1] * std::exp(-kI * kappa * x1);
        total += 0.5 * (x1 - x0) * (f0 + f1);
    }
    return total;
}

}  // namespace

std::vector<LobeInfo> extract_peaks(const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    double floor_fraction) {
    std::vector<LobeInfo> peaks;
    if (y.size() < 3) return peaks;
    const double ymax = *std::max_element(y.begin(), y.end());
    const double floor = ymax * floor_fraction;
    for (size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] < floor) continue;
        if (!(y[i] >= y[i - 1] && y[i] > y[i + 1])) continue;
        // Three-point parabolic refinement.
        const double d1 = 0.5 * (y[i + 1] - y[i - 1]);
        const double d2 = y[i + 1] - 2.0 * y[i] + y[i - 1];
        double dx = 0.0, height = y[i];
        if (d2 < 0.0) {
            dx = std::clamp(-d1 / d2, -1.0, 1.0);
            height = y[i] - d1 * d1 / (2.0 * d2);
        }
        LobeInfo lobe;
        const double h = (i + 1 < x.size()) ? (x[i + 1] - x[i]) : 1.0;
        lobe.x = x[i] + dx * h;
        lobe.height = height;
        // Null-to-null width: walk to the nearest local minima.
        size_t left = i;
        while (left > 0 && y[left - 1] < y[left]) --left;
        size_t right = i;
        while (right + 1 < y.size() && y[right + 1] < y[right]) ++right;
        lobe.width = (left < i && right > i) ? (x[right] - x[left]) : 0.0;
        peaks.push_back(lobe);
    }
    return peaks;
}

std::vector<LobeInfo> filter_main_lobes(const std::vector<LobeInfo>& peaks,
                                        double radius) {
    std::vector<LobeInfo> main;
    for (const auto& lobe : peaks) {
        bool dominated = false;
        for (const auto& other : peaks) {
            if (&other == &lobe) continue;
            if (std::abs(other.x - lobe.x) <= radius &&
                other.height > lobe.height) {
                dominated = true;
                break;
            }
        }
        if (!dominated) main.push_back(lobe);
    }
    return main;
}

DiffractionPattern fraunhofer(const NearFieldInput& nearfield, double aperture_a,
                              double wavelength, double z,
                              const std::vector<double>& x_grid) {
    DiffractionPattern pattern;
    pattern.z = z;
    pattern.wavelength = wavelength;
    pattern.aperture_a = aperture_a;
    check_zone(aperture_a, wavelength, z, &pattern.warnings);

    pattern.x = x_grid;
    pattern.intensity.resize(x_grid.size());
    const double scale = 1.0 / (wavelength * z);
    for (size_t i = 0; i < x_grid.size(); ++i) {
        const double kappa = 2.0 * M_PI * x_grid[i] / (wavelength * z);
        Complex integral;
        std::visit(
            [&](const auto& field) {
                using T = std::decay_t<decltype(field)>;
                if constexpr (std::is_same_v<T, DeltaComb>)
                    integral = comb_transform(field, aperture_a, kappa);
                else if constexpr (std::is_same_v<T, MaskedField>)
                    integral = masked_transform(field, aperture_a, kappa);
                else
                    integral = grid_transform(field, aperture_a, kappa);
            },
            nearfield);
        pattern.intensity[i] = std::norm(integral) * scale * scale;
    }

    // Reduced intensity for masked modes; peak-normalized otherwise.
    pattern.normalized.resize(x_grid.size());
    if (const auto* masked = std::get_if<MaskedField>(&nearfield)) {
        const double p2 = std::norm(masked->prefactor);
        const double factor = (p2 > 0.0)
                                  ? 4.0 * wavelength * wavelength * z * z /
                                        (aperture_a * aperture_a * p2)
                                  : 0.0;
        for (size_t i = 0; i < x_grid.size(); ++i)
            pattern.normalized[i] = pattern.intensity[i] * factor;
    } else {
        const double peak = *std::max_element(pattern.intensity.begin(),
                                              pattern.intensity.end());
        for (size_t i = 0; i < x_grid.size(); ++i)
            pattern.normalized[i] = (peak > 0.0) ? pattern.intensity[i] / peak : 0.0;
    }
    pattern.main_lobes = extract_peaks(pattern.x, pattern.intensity);
    return pattern;
}

FourierCoeffs fourier_coeffs_uniform(double sigma, int n_terms) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (n_terms < 0) throw std::invalid_argument("n_terms must be >= 0");
    FourierCoeffs coeffs;
    coeffs.sigma = sigma;
    coeffs.b.resize(static_cast<size_t>(n_terms) + 1);
    coeffs.b[0] = sigma / (1.0 + sigma);
    for (int n = 1; n <= n_terms; ++n) {
        const double u = n / (1.0 + sigma);
        coeffs.b[static_cast<size_t>(n)] =
            2.0 / (1.0 + sigma) * (std::sin(M_PI * u) / (M_PI * u));
    }
    return coeffs;
}

FourierCoeffs fourier_coeffs_numeric(double sigma, int n_terms,
                                     int panels_per_period) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    FourierCoeffs coeffs;
    coeffs.sigma = sigma;
    coeffs.b.resize(static_cast<size_t>(n_terms) + 1);
    // Window indicator on one period with the slot [-tau/2, tau/2] removed;
    // p = 1, tau = 1/(1+sigma).
    const double tau = 1.0 / (1.0 + sigma);
    for (int n = 0; n <= n_terms; ++n) {
        const auto f = [n](double x) { return std::cos(2.0 * M_PI * n * x); };
        const double integral =
            gauss_legendre(f, tau / 2.0, 0.5, panels_per_period) * 2.0;
        coeffs.b[static_cast<size_t>(n)] = (n == 0 ? 1.0 : 2.0) * integral;
    }
    return coeffs;
}

DiffractionPattern intensity_closed_form(const ResonancePair& pair,
                                         const ResonatorConfig& config,
                                         const SteppedProfile& profile,
                                         const FourierCoeffs& coeffs,
                                         double amplitude, double z,
                                         const std::vector<double>& x_grid) {
    DiffractionPattern pattern;
    pattern.z = z;
    pattern.wavelength = config.wavelength;
    pattern.aperture_a = config.aperture_a;
    const double a = config.aperture_a;
    const double lambda = config.wavelength;
    const double p = profile.period_p;
    if (p / a > 0.1)
        pattern.warnings.push_back("closed form degrades for p/a > 0.1");

    const double beta2_bar = profile.beta2 * (1.0 - profile.gamma);
    const double s_x =
        pair.s * std::sqrt(M_PI / (lambda * config.half_length_l));
    const double pre = amplitude * amplitude * beta2_bar * beta2_bar *
                       std::sqrt(1.0 - config.beta1) * a * a /
                       (4.0 * std::pow(1.0 - beta2_bar, 1.5) * lambda * lambda *
                        z * z);

    const int n_orders = static_cast<int>(coeffs.b.size()) - 1;
    const auto b_prime = [&](int n) {
        const double b = coeffs.b[static_cast<size_t>(std::abs(n))];
        return (n == 0) ? 2.0 * b : b;
    };
    const auto sinc = [](double u) {
        return (u == 0.0) ? 1.0 : std::sin(M_PI * u) / (M_PI * u);
    };

    pattern.x = x_grid;
    pattern.intensity.resize(x_grid.size());
    pattern.normalized.resize(x_grid.size());
    for (size_t i = 0; i < x_grid.size(); ++i) {
        const double kappa = 2.0 * M_PI * x_grid[i] / (lambda * z);
        double sum = 0.0;
        for (int n = -n_orders; n <= n_orders; ++n) {
            const double bp = b_prime(n);
            if (bp == 0.0) continue;
            const double base = 2.0 * M_PI * n / p - kappa;
            const double t1 = sinc((s_x + base) * a / M_PI);
            const double t2 = sinc((-s_x + base) * a / M_PI);
            sum += bp * bp * (t1 * t1 + t2 * t2);
        }
        pattern.intensity[i] = pre * sum;
        // Reduced intensity: peaks at x_bar_n carry b'_n^2 per branch.
        pattern.normalized[i] = (pre > 0.0) ? sum : 0.0;
    }
    pattern.main_lobes = extract_peaks(pattern.x, pattern.intensity);
    for (auto& lobe : pattern.main_lobes)
        lobe.order = static_cast<int>(std::round(lobe.x * p / (lambda * z)));
    return pattern;
}

int lobe_count(double sigma, double frac_small) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const double v = 1.0 + 1.0 / sigma;
    const double integer_part = std::floor(v);
    const double frac = v - integer_part;
    const int fl = static_cast<int>(integer_part);
    const int n_star = (frac <= frac_small) ? 2 * fl - 1 : 2 * fl + 1;
    return std::max(1, n_star);
}

}  // namespace orpg
