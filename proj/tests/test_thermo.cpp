#include <doctest.h>

#include <cmath>

#include "orpg/thermo.hpp"

using namespace orpg;

namespace {

constexpr double kArtanhHalf = 0.54930614433405484;  // artanh(1/2)

// Order-disorder free energy per dipole, straight from the model.
double od_free_energy(const OrderDisorderParams& p, double T, double y, double s) {
    const double E = std::sqrt(p.hbar_Omega * p.hbar_Omega +
                               std::pow(p.J0 * s - 2.0 * p.lambda * y, 2));
    return p.hbar_omega * y * y + 0.5 * p.J0 * s * s -
           T * std::log(2.0 * std::cosh(E / (2.0 * T)));
}

double dicke_free_energy(const DickeParams& p, double hw, double T, double y) {
    const double E = std::sqrt(p.epsilon * p.epsilon +
                               4.0 * p.lambda * p.lambda * y * y);
    return hw * y * y - T * std::log(2.0 * std::cosh(E / (2.0 * T)));
}

// Displacement free energy per cell at phi; r_i = 2 lambda_i y_i / eps.
double disp_free_energy(const DisplacementParams& p, double T, double r1,
                        double r2, double phi) {
    const double v = std::sqrt(1.0 + r1 * r1 + r2 * r2 +
                               2.0 * r1 * r2 * std::cos(phi));
    return (p.epsilon / 4.0) * (p.delta1() * r1 * r1 + p.delta2() * r2 * r2 -
                                2.0 * p.chi() * r1 * r2 * std::sin(phi)) -
           2.0 * T * std::log(2.0 * std::cosh(p.epsilon * v / (4.0 * T)));
}

// Coarse grid + two refinement passes; independent of the root-finder path.
template <typename F>
double grid_minimize_1d(const F& f, double lo, double hi, int n, int passes) {
    double best_x = lo, best = f(lo);
    for (int pass = 0; pass < passes; ++pass) {
        for (int i = 0; i <= n; ++i) {
            const double x = lo + (hi - lo) * i / n;
            const double v = f(x);
            if (v < best) { best = v; best_x = x; }
        }
        const double h = (hi - lo) / n;
        lo = std::max(lo, best_x - 2.0 * h);
        hi = best_x + 2.0 * h;
    }
    return best_x;
}

}  // namespace

TEST_CASE("Dicke critical temperature") {
    CHECK(!dicke_critical_temperature({1.0, 1.0}).has_value());
    CHECK(!dicke_critical_temperature({1.0, 0.5}).has_value());
    const auto Tc = dicke_critical_temperature({1.0, std::sqrt(2.0)});
    REQUIRE(Tc.has_value());
    CHECK(*Tc == doctest::Approx(1.0 / (2.0 * kArtanhHalf)).epsilon(1e-12));
}

TEST_CASE("Dicke order parameter against a dense-grid minimum") {
    const DickeParams params{1.0, std::sqrt(2.0)};
    const double hw = 1.0;
    const double Tc = *dicke_critical_temperature(params);
    for (double frac : {0.3, 0.6, 0.9}) {
        const double T = frac * Tc;
        const double y2 = dicke_order_parameter(params, hw, T);
        const double y_star = grid_minimize_1d(
            [&](double y) { return dicke_free_energy(params, hw, T, y); }, 0.0,
            10.0 * params.lambda / hw, 20000, 3);
        CHECK(y2 == doctest::Approx(y_star * y_star).epsilon(1e-6));
    }
    CHECK(dicke_order_parameter(params, hw, Tc * 1.0001) == 0.0);
    CHECK(dicke_order_parameter(params, hw, Tc * 3.0) == 0.0);
}

TEST_CASE("Dicke zero-temperature limit") {
    const DickeParams params{1.0, std::sqrt(2.0)};
    const double hw = 1.0;
    const double y2 = dicke_order_parameter(params, hw, 1e-6);
    const double u_max = params.lambda * params.lambda / (params.epsilon * hw);
    const double expected =
        params.epsilon * params.epsilon * (u_max * u_max - 1.0) /
        (4.0 * params.lambda * params.lambda);
    CHECK(y2 == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("order-disorder critical temperature and gates") {
    OrderDisorderParams params{1.0, 3.0, 0.6, 1.2};
    // J0_tilde = 3 + 0.6 => ratio = 2/3.6.
    CHECK(params.J0_tilde() == doctest::Approx(3.6));
    const auto Tc = od_critical_temperature(params);
    REQUIRE(Tc.has_value());
    CHECK(*Tc ==
          doctest::Approx(1.0 / (2.0 * std::atanh(2.0 / 3.6))).epsilon(1e-12));

    // ratio = 1/2 reproduces the closed artanh value.
    OrderDisorderParams half{1.0, 4.0, 0.0, 1.0};
    half.lambda = 0.0;
    CHECK(2.0 * half.hbar_Omega / half.J0_tilde() == doctest::Approx(0.5));
    CHECK(*od_critical_temperature(half) ==
          doctest::Approx(1.0 / (2.0 * kArtanhHalf)).epsilon(1e-12));

    // No transition when tunneling dominates.
    OrderDisorderParams weak{1.0, 1.5, 0.2, 1.0};
    CHECK(2.0 * weak.hbar_Omega / weak.J0_tilde() > 1.0);
    CHECK(!od_critical_temperature(weak).has_value());
    for (double T : {0.05, 0.5, 5.0}) {
        const auto pt = od_gap_solve(weak, T);
        CHECK(pt.y2 == 0.0);
        CHECK(!pt.ordered);
    }

    // Pure-field mechanism: J0 = 0, lambda^2 > hOm * hw.
    OrderDisorderParams pure{1.0, 0.0, 1.5, 1.0};
    CHECK(pure.J0_tilde() == doctest::Approx(4.5));
    CHECK(od_critical_temperature(pure).has_value());
}

TEST_CASE("order-disorder gap solution against the 2D free-energy minimum") {
    const OrderDisorderParams params{1.0, 3.0, 0.6, 1.2};
    const double Tc = *od_critical_temperature(params);
    const double T = 0.5 * Tc;
    const auto pt = od_gap_solve(params, T);
    REQUIRE(pt.ordered);

    // Gap-equation residual.
    const double u = std::sqrt(
        1.0 + std::pow(params.J0_tilde() * params.hbar_omega /
                           (params.lambda * params.hbar_Omega), 2) * pt.y2);
    const double resid = std::tanh(params.hbar_Omega * u / (2.0 * T)) -
                         2.0 * params.hbar_Omega / params.J0_tilde() * u;
    CHECK(std::abs(resid) < 1e-10);

    // Dense 2D grid over (y, s) with refinement, both signs.
    double best = 1e300, by = 0.0, bs = 0.0;
    double ylo = -1.0, yhi = 1.0, slo = -1.0, shi = 1.0;
    for (int pass = 0; pass < 4; ++pass) {
        const int n = 400;
        for (int i = 0; i <= n; ++i) {
            const double y = ylo + (yhi - ylo) * i / n;
            for (int j = 0; j <= n; ++j) {
                const double s = slo + (shi - slo) * j / n;
                const double f = od_free_energy(params, T, y, s);
                if (f < best) { best = f; by = y; bs = s; }
            }
        }
        const double hy = (yhi - ylo) / n, hs = (shi - slo) / n;
        ylo = by - 2.0 * hy; yhi = by + 2.0 * hy;
        slo = bs - 2.0 * hs; shi = bs + 2.0 * hs;
    }
    CHECK(pt.y2 == doctest::Approx(by * by).epsilon(1e-6));
    CHECK(pt.s_or_y2b * pt.s_or_y2b == doctest::Approx(bs * bs).epsilon(1e-6));
    // The minimum anti-aligns y and s.
    CHECK(by * bs < 0.0);

    // Ordered free energy beats the disordered branch.
    CHECK(pt.f < od_free_energy(params, T, 0.0, 0.0));
    CHECK(pt.f == doctest::Approx(best).epsilon(1e-9));

    // Eq-consistency: s^2 = (hw/lambda)^2 y^2 holds to 1e-10.
    const double s2 = std::pow(params.hbar_omega / params.lambda, 2) * pt.y2;
    CHECK(std::abs(pt.s_or_y2b * pt.s_or_y2b - s2) < 1e-10);
}

TEST_CASE("photon coupling raises the ordering temperature monotonically") {
    const double hOm = 1.0, J0 = 3.0, hw = 1.3;
    double prev = *od_critical_temperature({hOm, J0, 0.0, hw});
    for (double lambda : {0.2, 0.5, 0.9, 1.4}) {
        const double Tc = *od_critical_temperature({hOm, J0, lambda, hw});
        CHECK(Tc > prev);
        prev = Tc;
    }
    // Condition (32) stays true for any lambda once 2 hOm / J0 < 1.
    for (double lambda : {0.0, 1.0, 10.0}) {
        OrderDisorderParams p{hOm, 2.5, lambda, hw};
        CHECK(od_critical_temperature(p).has_value());
    }
}

TEST_CASE("displacement couplings from CGS material constants") {
    MaterialParams material;
    material.m_star_g = 1e-27;
    material.ion_mass_M_g = 1e-22;
    material.lattice_l_cm = 5e-8;
    material.density_per_cm3 = 1e20;
    material.Omega0_rad_s = 3e13;
    material.omega_q_rad_s = 1.5e15;
    material.polarization_dot = 1.0;
    material.epsilon_erg = 1.0 * kErgPerEv;
    material.lambda1_erg = 0.25 * kErgPerEv;
    const auto params = displacement_couplings(material);

    // Smallness regime at the quoted magnitudes.
    CHECK(params.chi() < 0.1);
    CHECK(params.chi() * params.chi() / (params.delta1() * params.delta2()) < 0.1);
    CHECK(params.chi() * params.chi() / (params.delta1() * params.delta1()) < 0.1);
    CHECK(params.smallness_warnings().empty());

    // Hand-computed magnitudes: lambda2 = pi e hbar/(m* l) sqrt(2 pi hbar N / (w V)).
    const double lam2_expected =
        M_PI * material.electron_charge_esu * kHbarErgS /
        (material.m_star_g * material.lattice_l_cm) *
        std::sqrt(2.0 * M_PI * kHbarErgS * 1e20 / material.omega_q_rad_s);
    CHECK(params.lambda2 == doctest::Approx(lam2_expected).epsilon(1e-12));

    // Orthogonal polarizations kill the cross coupling.
    MaterialParams crossed = material;
    crossed.polarization_dot = 0.0;
    CHECK(displacement_couplings(crossed).gamma_abs == 0.0);
    CHECK(displacement_couplings(crossed).chi() == 0.0);

    // Halving the density halves lambda2^2 and gamma^2.
    MaterialParams diluted = material;
    diluted.density_per_cm3 = 5e19;
    const auto thin = displacement_couplings(diluted);
    CHECK(thin.lambda2 * thin.lambda2 ==
          doctest::Approx(0.5 * params.lambda2 * params.lambda2).epsilon(1e-12));
    CHECK(thin.gamma_abs * thin.gamma_abs ==
          doctest::Approx(0.5 * params.gamma_abs * params.gamma_abs)
              .epsilon(1e-12));
}

TEST_CASE("displacement critical temperature at ratio 1/2") {
    // delta1 = delta2 = 1 gives (d1^-1 + d2^-1)^-1 = 1/2.
    DisplacementParams params;
    params.epsilon = 1.0;
    params.hbar_Omega0 = 0.04;
    params.lambda1 = 0.2;  // delta1 = 1
    params.hbar_omega_q = 1.0;
    params.lambda2 = 1.0;  // delta2 = 1
    params.gamma_abs = 0.0;
    CHECK(params.coupling_ratio() == doctest::Approx(0.5));
    const auto Tc = disp_critical_temperature(params);
    REQUIRE(Tc.has_value());
    CHECK(*Tc == doctest::Approx(1.0 / (4.0 * kArtanhHalf)).epsilon(1e-12));
}

TEST_CASE("displacement gap solution matches the free-energy minimum") {
    DisplacementParams params;
    params.epsilon = 1.0;
    params.hbar_Omega0 = 0.4;
    params.lambda1 = 0.5;   // delta1 = 1.6
    params.hbar_omega_q = 0.6;
    params.lambda2 = 0.5;   // delta2 = 2.4
    params.gamma_abs = 0.0;  // exact locking limit
    const double Tc = *disp_critical_temperature(params);
    const double T = 0.5 * Tc;
    const auto pt = disp_gap_solve(params, T);
    REQUIRE(pt.ordered);

    // 2D refinement over (r1, r2) with the in-phase lock.
    double best = 1e300, b1 = 0.0, b2 = 0.0;
    double lo1 = 0.0, hi1 = 1.0, lo2 = 0.0, hi2 = 1.0;
    for (int pass = 0; pass < 4; ++pass) {
        const int n = 400;
        for (int i = 0; i <= n; ++i) {
            const double r1 = lo1 + (hi1 - lo1) * i / n;
            for (int j = 0; j <= n; ++j) {
                const double r2 = lo2 + (hi2 - lo2) * j / n;
                const double f = disp_free_energy(params, T, r1, r2, 0.0);
                if (f < best) { best = f; b1 = r1; b2 = r2; }
            }
        }
        const double h1 = (hi1 - lo1) / n, h2 = (hi2 - lo2) / n;
        lo1 = std::max(0.0, b1 - 2.0 * h1); hi1 = b1 + 2.0 * h1;
        lo2 = std::max(0.0, b2 - 2.0 * h2); hi2 = b2 + 2.0 * h2;
    }
    const double y1_grid = params.epsilon * b1 / (2.0 * params.lambda1);
    const double y2_grid = params.epsilon * b2 / (2.0 * params.lambda2);
    CHECK(pt.y2 == doctest::Approx(y1_grid * y1_grid).epsilon(1e-6));
    CHECK(pt.s_or_y2b == doctest::Approx(y2_grid * y2_grid).epsilon(1e-6));
    CHECK(pt.f == doctest::Approx(best).epsilon(1e-9));
    CHECK(pt.f < disp_free_energy(params, T, 0.0, 0.0, 0.0));
    CHECK(pt.phi == doctest::Approx(0.0));

    // The mode amplitudes lock with r2/r1 = delta1/delta2.
    CHECK(b2 / b1 ==
          doctest::Approx(params.delta1() / params.delta2()).epsilon(1e-4));
}

TEST_CASE("displacement phase tilts with a small cross coupling") {
    DisplacementParams params;
    params.epsilon = 1.0;
    params.hbar_Omega0 = 0.4;
    params.lambda1 = 0.5;
    params.hbar_omega_q = 0.6;
    params.lambda2 = 0.5;
    params.gamma_abs = 0.01;  // chi = 0.04
    const double Tc = *disp_critical_temperature(params);
    const auto pt = disp_gap_solve(params, 0.6 * Tc);
    REQUIRE(pt.ordered);
    CHECK(pt.phi == doctest::Approx(std::atan2(params.chi(),
                                               params.coupling_ratio())));
    // The printed saddle beats both phi = 0 and phi = pi/2 at these values.
    const double r1 = 2.0 * params.lambda1 * std::sqrt(pt.y2) / params.epsilon;
    const double r2 = 2.0 * params.lambda2 * std::sqrt(pt.s_or_y2b) / params.epsilon;
    const double T = 0.6 * Tc;
    CHECK(disp_free_energy(params, T, r1, r2, pt.phi) <
          disp_free_energy(params, T, r1, r2, M_PI / 2.0));
}

TEST_CASE("condition gates flip across the boundary for all three models") {
    // Dicke: lambda^2/eps^2 through 1.
    for (double ratio : {0.9, 0.99}) {
        CHECK(!dicke_critical_temperature({1.0, std::sqrt(ratio)}).has_value());
    }
    double prev = 0.0;
    for (double ratio : {1.01, 1.1}) {
        const auto Tc = dicke_critical_temperature({1.0, std::sqrt(ratio)});
        REQUIRE(Tc.has_value());
        CHECK(*Tc > prev);  // grows away from the boundary, -> 0 at it
        prev = *Tc;
    }
    // Order-disorder: 2 hOm / J0t through 1 (ordered side below 1).
    for (double ratio : {1.01, 1.1}) {
        OrderDisorderParams p{1.0, 2.0 / ratio, 0.0, 1.0};
        p.lambda = 0.0;
        CHECK(!od_critical_temperature(p).has_value());
    }
    prev = 0.0;
    for (double ratio : {0.99, 0.9}) {
        OrderDisorderParams p{1.0, 2.0 / ratio, 0.0, 1.0};
        const auto Tc = od_critical_temperature(p);
        REQUIRE(Tc.has_value());
        CHECK(*Tc > prev);
        prev = *Tc;
    }
    // Displacement: coupling ratio through 1.
    const auto disp_with_ratio = [](double R) {
        DisplacementParams p;
        p.epsilon = 1.0;
        p.hbar_Omega0 = 1.0;
        p.hbar_omega_q = 1.0;
        p.lambda1 = std::sqrt(1.0 / (2.0 * R));  // delta1 = 2R
        p.lambda2 = std::sqrt(1.0 / (2.0 * R));  // delta2 = 2R
        return p;
    };
    for (double R : {1.01, 1.1})
        CHECK(!disp_critical_temperature(disp_with_ratio(R)).has_value());
    prev = 0.0;
    for (double R : {0.99, 0.9}) {
        const auto Tc = disp_critical_temperature(disp_with_ratio(R));
        REQUIRE(Tc.has_value());
        CHECK(*Tc > prev);
        prev = *Tc;
    }
}

TEST_CASE("phase curves: onset location, continuity and linear exponent") {
    // J0_tilde = 3.5 + 2*0.25/1 = 4: ratio exactly 1/2.
    const OrderDisorderParams params{1.0, 3.5, 0.5, 1.0};
    const double Tc_closed = 1.0 / (2.0 * kArtanhHalf);
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(0.02 + 1.2 * i / 400.0);
    const auto curve = phase_curve(params, grid);
    REQUIRE(curve.T_c.has_value());
    CHECK(*curve.T_c == doctest::Approx(Tc_closed).epsilon(1e-6));
    REQUIRE(curve.fit_r_squared.has_value());
    CHECK(*curve.fit_r_squared > 0.999);

    // Continuity: no jump above grid resolution near the transition.
    for (size_t i = 1; i < curve.points.size(); ++i) {
        const double dy = std::abs(curve.points[i].y2 - curve.points[i - 1].y2);
        CHECK(dy < 0.05);
    }
    // Zero above, positive below.
    for (const auto& pt : curve.points) {
        if (pt.T >= Tc_closed) CHECK(pt.y2 == 0.0);
        if (pt.T < 0.9 * Tc_closed) CHECK(pt.y2 > 0.0);
    }
}

TEST_CASE("phase curve with no transition is flat") {
    const DickeModel model{{1.0, 0.5}, 1.0};
    std::vector<double> grid;
    for (int i = 0; i <= 50; ++i) grid.push_back(0.05 + i * 0.02);
    const auto curve = phase_curve(model, grid);
    CHECK(!curve.T_c.has_value());
    for (const auto& pt : curve.points) CHECK(pt.y2 == 0.0);
}
