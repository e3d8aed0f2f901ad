#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orpg/resonator.hpp"

namespace orpg {

struct TrapNode {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Intensity-node lattice of a point-lattice mode. Transverse pitch p/2 with
// nodes at x = p(2n-1)/4 inside |x| <= a (and likewise in y for dims >= 2);
// axial planes spaced p/2 with the first plane z_offset from the periodic
// mirror.
struct TrapLattice {
    std::vector<TrapNode> nodes;
    int count_x = 0;
    int count_y = 1;
    int count_z = 1;
    double pitch_x = 0.0;
    double pitch_y = 0.0;
    double pitch_z = 0.0;

    size_t size() const { return nodes.size(); }
};

TrapLattice node_lattice(const ResonatorConfig& config,
                         const MirrorProfile& profile, const ResonancePair& pair,
                         int dims, double z_offset_fraction = 0.25);

struct LatticeCounts {
    long count_x = 0;
    long count_y = 1;
    long count_z = 1;
    long total() const { return count_x * count_y * count_z; }
};

/// Exact per-axis counts of the same lattice without materializing nodes.
LatticeCounts node_counts(const ResonatorConfig& config,
                          const MirrorProfile& profile, const ResonancePair& pair,
                          int dims, double z_offset_fraction = 0.25);

/// Conclusion-scale estimate 8 A^2 L / p^3 with A the full transverse
/// aperture width (= 2 a for the half-aperture a used elsewhere).
double trap_count_estimate(double aperture_full_A, double length_L, double period_p);

struct LengthCheck {
    long n = 0;
    double residual = 0.0;
    bool pass = false;
};

/// Nearest integer n with L = (2 p^2 / lambda) n and the residual; passes
/// when |residual| / L <= 1e-9.
LengthCheck admissible_length_check(double length_L, double period_p,
                                    double wavelength, double rel_tol = 1e-9);

struct ModeIndices3D {
    double s_x = 0.0;
    double s_y = 0.0;
    int m1 = 0;
    int m2 = 0;
    int m_sum = 0;
    bool admissible = false;
    std::string note;
};

/// Transverse wavenumbers of a doubly periodic boundary: equal periods share
/// the pair sum (m1 + m2 = n1 + n2); unequal periods require
/// n1 + n2 = (p_y/p_x)^2 (m1 + m2) with the y sum even.
ModeIndices3D mode_indices_3d(int q_prime, int n1, int pair_sum, double p_x,
                              double p_y, int m1);

}  // namespace orpg
