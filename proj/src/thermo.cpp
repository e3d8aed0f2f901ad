#include "orpg/thermo.hpp"

#include <cmath>
#include <stdexcept>

#include "orpg/numerics.hpp"

namespace orpg {

namespace {

double artanh(double x) { return std::atanh(x); }

// Root of ratio * u = tanh(scale * u / T) on u in (1, 1/ratio], given that
// an ordered solution exists (ratio < tanh(scale/T)). The left side is the
// steeper function at the origin only when disordered; for T < T_c there is
// exactly one crossing with u > 1.
double gap_root(double ratio, double scale, double T) {
    const auto g = [&](double u) { return std::tanh(scale * u / T) - ratio * u; };
    const RootResult root = find_root_bracketed(g, 1.0, 1.0 / ratio, 1e-14);
    return root.root;
}

double ln_2cosh(double x) {
    // log(2 cosh x) without overflow.
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax));
}

}  // namespace

std::optional<double> dicke_critical_temperature(const DickeParams& params) {
    if (!(params.epsilon > 0.0) || !(params.lambda >= 0.0))
        throw std::invalid_argument("epsilon must be positive, lambda nonnegative");
    const double r = params.epsilon * params.epsilon /
                     (params.lambda * params.lambda);
    if (!(r < 1.0)) return std::nullopt;  // strong coupling fails
    return params.epsilon / (2.0 * artanh(r));
}

PhasePoint dicke_solve(const DickeParams& params, double hbar_omega, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("temperature must be positive");
    if (!(hbar_omega > 0.0))
        throw std::invalid_argument("photon energy must be positive");
    const double eps = params.epsilon;
    const double lam = params.lambda;

    PhasePoint point;
    point.T = T;
    const double ratio = eps * hbar_omega / (lam * lam);
    const bool ordered =
        ratio < 1.0 && std::tanh(eps / (2.0 * T)) > ratio;
    if (!ordered) {
        point.f = -T * ln_2cosh(eps / (2.0 * T));
        point.s_or_y2b = -std::tanh(eps / (2.0 * T));
        return point;
    }
    const double u = gap_root(ratio, eps / 2.0, T);
    const double E = eps * u;
    point.y2 = eps * eps * (u * u - 1.0) / (4.0 * lam * lam);
    point.ordered = true;
    point.f = hbar_omega * point.y2 - T * ln_2cosh(E / (2.0 * T));
    // Level inversion of the dressed two-level system.
    point.s_or_y2b = -(eps / E) * std::tanh(E / (2.0 * T));
    return point;
}

double dicke_order_parameter(const DickeParams& params, double hbar_omega,
                             double T) {
    return dicke_solve(params, hbar_omega, T).y2;
}

std::optional<double> od_critical_temperature(const OrderDisorderParams& params) {
    if (!(params.hbar_Omega > 0.0))
        throw std::invalid_argument("tunneling energy must be positive");
    const double ratio = 2.0 * params.hbar_Omega / params.J0_tilde();
    if (!(ratio > 0.0) || !(ratio < 1.0)) return std::nullopt;
    return params.hbar_Omega / (2.0 * artanh(ratio));
}

PhasePoint od_gap_solve(const OrderDisorderParams& params, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("temperature must be positive");
    const double hOm = params.hbar_Omega;
    const double J0t = params.J0_tilde();
    const double ratio = 2.0 * hOm / J0t;

    PhasePoint point;
    point.T = T;
    const bool ordered =
        ratio > 0.0 && ratio < 1.0 && std::tanh(hOm / (2.0 * T)) > ratio;
    if (!ordered) {
        point.f = -T * ln_2cosh(hOm / (2.0 * T));
        return point;
    }
    const double u = gap_root(ratio, hOm / 2.0, T);
    // Pseudospin from the gap variable, photons from the cavity coupling;
    // the two routes differ so the s^2 = (hw/lambda)^2 y^2 relation stays a
    // nontrivial check.
    point.s_or_y2b = (hOm / J0t) * std::sqrt(u * u - 1.0);
    if (params.lambda > 0.0) {
        const double c = J0t * params.hbar_omega / (params.lambda * hOm);
        point.y2 = (u * u - 1.0) / (c * c);
    } else {
        point.y2 = 0.0;  // decoupled cavity stays empty
    }
    point.ordered = true;
    point.sign = +1;  // the conjugate branch carries (y, -s)
    // beta f = beta hw y^2 + beta J0 s^2/2 - ln 2cosh(beta E/2), E = hOm u.
    point.f = params.hbar_omega * point.y2 +
              0.5 * params.J0 * point.s_or_y2b * point.s_or_y2b -
              T * ln_2cosh(hOm * u / (2.0 * T));
    return point;
}

std::vector<std::string> DisplacementParams::smallness_warnings(
    double threshold) const {
    std::vector<std::string> warnings;
    const double c = chi();
    const double d1 = delta1(), d2 = delta2();
    if (c > threshold)
        warnings.push_back("chi = " + std::to_string(c) + " is not small");
    if (c * c / (d1 * d2) > threshold)
        warnings.push_back("chi^2/(delta1 delta2) = " +
                           std::to_string(c * c / (d1 * d2)) + " is not small");
    if (c * c / (d1 * d1) > threshold)
        warnings.push_back("chi^2/delta1^2 = " +
                           std::to_string(c * c / (d1 * d1)) + " is not small");
    return warnings;
}

DisplacementParams displacement_couplings(const MaterialParams& material) {
    if (!(material.m_star_g > 0.0) || !(material.ion_mass_M_g > 0.0))
        throw std::invalid_argument("masses must be positive");
    if (!(material.density_per_cm3 > 0.0) || !(material.lattice_l_cm > 0.0))
        throw std::invalid_argument("density and lattice period must be positive");
    if (std::abs(material.polarization_dot) > 1.0)
        throw std::invalid_argument("|e_q . n| must not exceed 1");

    const double e = material.electron_charge_esu;
    const double nv = material.density_per_cm3;

    DisplacementParams params;
    params.epsilon = material.epsilon_erg;
    params.hbar_Omega0 = kHbarErgS * material.Omega0_rad_s;
    params.hbar_omega_q = kHbarErgS * material.omega_q_rad_s;
    params.lambda1 = material.lambda1_erg;
    params.lambda2 = M_PI * e * kHbarErgS /
                     (material.m_star_g * material.lattice_l_cm) *
                     std::sqrt(2.0 * M_PI * kHbarErgS * nv / material.omega_q_rad_s);
    params.gamma_abs =
        std::sqrt(M_PI * e * e * kHbarErgS * kHbarErgS * material.omega_q_rad_s *
                  nv / (material.ion_mass_M_g * material.Omega0_rad_s)) *
        std::abs(material.polarization_dot);
    return params;
}

std::optional<double> disp_critical_temperature(const DisplacementParams& params) {
    const double R = params.coupling_ratio();
    if (!(R > 0.0) || !(R < 1.0)) return std::nullopt;
    return params.epsilon / (4.0 * artanh(R));
}

PhasePoint disp_gap_solve(const DisplacementParams& params, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("temperature must be positive");
    const double eps = params.epsilon;
    const double R = params.coupling_ratio();
    const double chi = params.chi();

    PhasePoint point;
    point.T = T;
    const bool ordered =
        R > 0.0 && R < 1.0 && std::tanh(eps / (4.0 * T)) > R;
    if (!ordered) {
        point.f = -2.0 * T * ln_2cosh(eps / (4.0 * T));
        return point;
    }
    const double u = gap_root(R, eps / 4.0, T);
    const double d1 = params.delta1(), d2 = params.delta2();
    const double grow = u * u - 1.0;
    // y_i = sqrt(u^2-1) (R/delta_i) eps/(2 lambda_i)
    const double y1 = std::sqrt(grow) * R / d1 * eps / (2.0 * params.lambda1);
    const double y2 = std::sqrt(grow) * R / d2 * eps / (2.0 * params.lambda2);
    point.y2 = y1 * y1;
    point.s_or_y2b = y2 * y2;
    point.phi = std::atan2(chi, R);
    point.ordered = true;

    // Free energy per cell at the saddle.
    const double r1 = 2.0 * params.lambda1 * y1 / eps;
    const double r2 = 2.0 * params.lambda2 * y2 / eps;
    const double v = std::sqrt(1.0 + r1 * r1 + r2 * r2 +
                               2.0 * r1 * r2 * std::cos(point.phi));
    point.f = (eps / 4.0) * (d1 * r1 * r1 + d2 * r2 * r2 -
                             2.0 * chi * r1 * r2 * std::sin(point.phi)) -
              2.0 * T * ln_2cosh(eps * v / (4.0 * T));
    return point;
}

std::optional<double> critical_temperature(const ThermoModel& model) {
    return std::visit(
        [](const auto& m) -> std::optional<double> {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, DickeModel>) {
                // Off resonance the vanishing point of y^2 sits where
                // tanh(eps/2T) = eps hw / lambda^2.
                const double r = m.params.epsilon * m.hbar_omega /
                                 (m.params.lambda * m.params.lambda);
                if (!(r > 0.0) || !(r < 1.0)) return std::nullopt;
                return m.params.epsilon / (2.0 * artanh(r));
            } else if constexpr (std::is_same_v<M, OrderDisorderParams>) {
                return od_critical_temperature(m);
            } else {
                return disp_critical_temperature(m);
            }
        },
        model);
}

PhasePoint solve_point(const ThermoModel& model, double T) {
    return std::visit(
        [T](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, DickeModel>)
                return dicke_solve(m.params, m.hbar_omega, T);
            else if constexpr (std::is_same_v<M, OrderDisorderParams>)
                return od_gap_solve(m, T);
            else
                return disp_gap_solve(m, T);
        },
        model);
}

PhaseCurve phase_curve(const ThermoModel& model,
                       const std::vector<double>& T_grid) {
    if (T_grid.empty()) throw std::invalid_argument("empty temperature grid");
    for (size_t i = 0; i < T_grid.size(); ++i) {
        if (!(T_grid[i] > 0.0))
            throw std::invalid_argument("temperatures must be positive");
        if (i > 0 && !(T_grid[i] > T_grid[i - 1]))
            throw std::invalid_argument("temperature grid must increase strictly");
    }

    PhaseCurve curve;
    curve.points.reserve(T_grid.size());
    for (double T : T_grid) {
        try {
            curve.points.push_back(solve_point(model, T));
        } catch (const std::exception& err) {
            throw std::runtime_error("phase point failed at T = " +
                                     std::to_string(T) + ": " + err.what());
        }
    }

    const auto Tc_closed = critical_temperature(model);
    if (!Tc_closed) return curve;

    // Locate the onset by bisection on the gap-opening condition; for every
    // model this is tanh(scale/T) - ratio changing sign.
    const auto onset = [&](double T) {
        return solve_point(model, T).ordered ? 1.0 : -1.0;
    };
    double lo = *Tc_closed * 0.5, hi = *Tc_closed * 2.0;
    if (onset(lo) > 0.0 && onset(hi) < 0.0) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (onset(mid) > 0.0 ? lo : hi) = mid;
            if ((hi - lo) <= 1e-8 * hi) break;
        }
        curve.T_c = 0.5 * (lo + hi);
    } else {
        curve.T_c = *Tc_closed;
    }

    // Linear fit of y^2 against (T_c - T) over the top 5% band below T_c.
    const double Tc = *curve.T_c;
    std::vector<double> ts, ys;
    for (const auto& pt : curve.points) {
        if (pt.ordered && pt.T >= 0.95 * Tc && pt.T < Tc) {
            ts.push_back(Tc - pt.T);
            ys.push_back(pt.y2);
        }
    }
    if (ts.size() >= 3) {
        double st = 0, sy = 0, stt = 0, sty = 0;
        const double n = static_cast<double>(ts.size());
        for (size_t i = 0; i < ts.size(); ++i) {
            st += ts[i]; sy += ys[i];
            stt += ts[i] * ts[i]; sty += ts[i] * ys[i];
        }
        const double denom = n * stt - st * st;
        if (denom > 0.0) {
            const double slope = (n * sty - st * sy) / denom;
            const double intercept = (sy - slope * st) / n;
            double ss_res = 0.0, ss_tot = 0.0;
            for (size_t i = 0; i < ts.size(); ++i) {
                const double fit = slope * ts[i] + intercept;
                ss_res += (ys[i] - fit) * (ys[i] - fit);
                ss_tot += (ys[i] - sy / n) * (ys[i] - sy / n);
            }
            curve.exponent_slope = slope;
            curve.fit_r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
        }
    }
    return curve;
}

}  // namespace orpg
