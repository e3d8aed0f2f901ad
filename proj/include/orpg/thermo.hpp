#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace orpg {

// Temperatures and couplings are energies (k_B = 1) in a common unit.

struct DickeParams {
    double epsilon = 0.0;  // two-level spacing
    double lambda = 0.0;   // rotating-wave coupling amplitude
};

struct OrderDisorderParams {
    double hbar_Omega = 0.0;  // tunneling
    double J0 = 0.0;          // summed dipole-dipole coupling
    double lambda = 0.0;      // photon coupling
    double hbar_omega = 0.0;  // bare photon energy

    double J0_tilde() const { return J0 + 2.0 * lambda * lambda / hbar_omega; }
};

struct DisplacementParams {
    double epsilon = 0.0;       // band gap
    double hbar_Omega0 = 0.0;   // bare optical phonon
    double hbar_omega_q = 0.0;  // photon
    double lambda1 = 0.0;       // vibronic coupling
    double lambda2 = 0.0;       // electron-photon coupling
    double gamma_abs = 0.0;     // |phonon-photon coupling|

    double delta1() const { return epsilon * hbar_Omega0 / (lambda1 * lambda1); }
    double delta2() const { return epsilon * hbar_omega_q / (lambda2 * lambda2); }
    double chi() const { return epsilon * gamma_abs / (lambda1 * lambda2); }
    // (delta1^-1 + delta2^-1)^-1, the coupling ratio that gates condensation.
    double coupling_ratio() const {
        return 1.0 / (1.0 / delta1() + 1.0 / delta2());
    }
    std::vector<std::string> smallness_warnings(double threshold = 0.1) const;
};

/// CGS material inputs for the displacement couplings. Masses in grams,
/// lengths in cm, frequencies in rad/s, charge in esu, density in cm^-3.
struct MaterialParams {
    double m_star_g = 0.0;
    double electron_charge_esu = 4.80320471e-10;
    double ion_mass_M_g = 0.0;
    double lattice_l_cm = 0.0;
    double density_per_cm3 = 0.0;  // N/V
    double Omega0_rad_s = 0.0;
    double omega_q_rad_s = 0.0;
    double polarization_dot = 1.0;  // e_q . n, in [-1, 1]
    double epsilon_erg = 0.0;       // band gap
    double lambda1_erg = 0.0;       // vibronic coupling (model input)
};

constexpr double kHbarErgS = 1.054571817e-27;
constexpr double kErgPerEv = 1.602176634e-12;
constexpr double kBoltzmannErgK = 1.380649e-16;

/// lambda2 and |gamma| from the material constants, bundled with the model
/// energies (all in erg).
DisplacementParams displacement_couplings(const MaterialParams& material);

struct PhasePoint {
    double T = 0.0;
    double y2 = 0.0;        // photons (or phonons) per particle
    double s_or_y2b = 0.0;  // pseudospin s, photon y2^2, or level inversion
    double phi = 0.0;       // relative phase (displacement model)
    double f = 0.0;         // free energy per particle
    bool ordered = false;
    int sign = +1;  // the broken-symmetry pair is (+y,-s) and (-y,+s)
};

struct PhaseCurve {
    std::vector<PhasePoint> points;
    std::optional<double> T_c;
    std::optional<double> exponent_slope;  // d(y^2)/d(T_c - T) near T_c
    std::optional<double> fit_r_squared;
};

/// T_c = eps / (2 artanh(eps^2/lambda^2)) under strong coupling
/// lambda^2 > eps^2; nullopt otherwise (no transition).
std::optional<double> dicke_critical_temperature(const DickeParams& params);

/// Condensate density y^2 minimizing f(y) = hw y^2 - T ln 2cosh(E/2T),
/// E = sqrt(eps^2 + 4 lambda^2 y^2); zero at and above the transition.
double dicke_order_parameter(const DickeParams& params, double hbar_omega,
                             double T);
PhasePoint dicke_solve(const DickeParams& params, double hbar_omega, double T);

/// T_c^(1) = hOm / (2 artanh(2 hOm / J0_tilde)) when 2 hOm / J0_tilde < 1.
std::optional<double> od_critical_temperature(const OrderDisorderParams& params);

/// Photon density and pseudospin from the tanh gap equation, solved in
/// u = sqrt(1 + c^2 y^2) by bracketed root finding; disordered branch when
/// the condensation condition fails or T >= T_c.
PhasePoint od_gap_solve(const OrderDisorderParams& params, double T);

std::optional<double> disp_critical_temperature(const DisplacementParams& params);

/// Phonon/photon densities y1^2, y2^2 of the displacement model; both gap
/// equations share one root u, and the relative phase sits at the saddle
/// tan(phi) = chi / coupling_ratio.
PhasePoint disp_gap_solve(const DisplacementParams& params, double T);

struct DickeModel {
    DickeParams params;
    double hbar_omega = 0.0;
};
using ThermoModel = std::variant<DickeModel, OrderDisorderParams, DisplacementParams>;

std::optional<double> critical_temperature(const ThermoModel& model);
PhasePoint solve_point(const ThermoModel& model, double T);

/// Order-parameter curve over the grid plus the bisection-located T_c and a
/// linear fit of y^2 against (T_c - T) over the top 5% band below T_c.
PhaseCurve phase_curve(const ThermoModel& model, const std::vector<double>& T_grid);

}  // namespace orpg
