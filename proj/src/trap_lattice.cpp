#include "orpg/trap_lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace orpg {

namespace {

// x = p (2n - 1) / 4 for all integers n with |x| <= limit.
std::vector<double> axis_nodes(double period_p, double limit) {
    std::vector<double> nodes;
    const double pitch = period_p / 2.0;
    const long lo = static_cast<long>(std::ceil((-limit / pitch + 0.5) - 1e-12));
    const long hi = static_cast<long>(std::floor((limit / pitch + 0.5) + 1e-12));
    for (long n = lo; n <= hi; ++n)
        nodes.push_back(period_p * (2.0 * static_cast<double>(n) - 1.0) / 4.0);
    return nodes;
}

long axis_count(double period_p, double limit) {
    const double pitch = period_p / 2.0;
    const long lo = static_cast<long>(std::ceil((-limit / pitch + 0.5) - 1e-12));
    const long hi = static_cast<long>(std::floor((limit / pitch + 0.5) + 1e-12));
    return hi - lo + 1;
}

}  // namespace

LatticeCounts node_counts(const ResonatorConfig& config,
                          const MirrorProfile& profile, const ResonancePair& pair,
                          int dims, double z_offset_fraction) {
    if (dims < 1 || dims > 3) throw std::invalid_argument("dims must be 1, 2 or 3");
    if (!pair_is_resonant(config, profile, pair))
        throw std::invalid_argument("not a periodic mode for this geometry");
    const double p = *profile_period(profile);
    LatticeCounts counts;
    counts.count_x = axis_count(p, config.aperture_a);
    if (dims >= 2)
        counts.count_y = axis_count(p, config.aperture_b.value_or(config.aperture_a));
    if (dims == 3) {
        const double z0 = z_offset_fraction * p;
        counts.count_z = static_cast<long>(
            std::floor((config.length() - z0) / (p / 2.0) + 1e-12)) + 1;
        if (counts.count_z < 0) counts.count_z = 0;
    }
    return counts;
}

TrapLattice node_lattice(const ResonatorConfig& config,
                         const MirrorProfile& profile, const ResonancePair& pair,
                         int dims, double z_offset_fraction) {
    if (dims < 1 || dims > 3) throw std::invalid_argument("dims must be 1, 2 or 3");
    if (!pair_is_resonant(config, profile, pair))
        throw std::invalid_argument("not a periodic mode for this geometry");
    const double p = *profile_period(profile);

    TrapLattice lattice;
    lattice.pitch_x = p / 2.0;
    const auto xs = axis_nodes(p, config.aperture_a);
    lattice.count_x = static_cast<int>(xs.size());

    std::vector<double> ys{0.0};
    if (dims >= 2) {
        const double b = config.aperture_b.value_or(config.aperture_a);
        ys = axis_nodes(p, b);
        lattice.pitch_y = p / 2.0;
    }
    lattice.count_y = static_cast<int>(ys.size());

    std::vector<double> zs{0.0};
    if (dims == 3) {
        zs.clear();
        const double pitch = p / 2.0;
        const double z0 = z_offset_fraction * p;
        for (double z = z0; z <= config.length() + 1e-12 * p; z += pitch)
            zs.push_back(z);
        lattice.pitch_z = pitch;
    }
    lattice.count_z = static_cast<int>(zs.size());

    lattice.nodes.reserve(xs.size() * ys.size() * zs.size());
    for (double z : zs)
        for (double y : ys)
            for (double x : xs) lattice.nodes.push_back({x, y, z});
    return lattice;
}

double trap_count_estimate(double aperture_full_A, double length_L,
                           double period_p) {
    if (!(aperture_full_A > 0.0) || !(length_L > 0.0) || !(period_p > 0.0))
        throw std::invalid_argument("aperture, length and period must be positive");
    return 8.0 * aperture_full_A * aperture_full_A * length_L /
           (period_p * period_p * period_p);
}

LengthCheck admissible_length_check(double length_L, double period_p,
                                    double wavelength, double rel_tol) {
    if (!(length_L > 0.0) || !(period_p > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument("lengths must be positive");
    const double unit = 2.0 * period_p * period_p / wavelength;
    LengthCheck check;
    check.n = static_cast<long>(std::round(length_L / unit));
    check.residual = length_L - unit * static_cast<double>(check.n);
    check.pass = check.n >= 1 && std::abs(check.residual) / length_L <= rel_tol;
    return check;
}

ModeIndices3D mode_indices_3d(int q_prime, int n1, int pair_sum, double p_x,
                              double p_y, int m1) {
    if (q_prime < 1) throw std::invalid_argument("q_prime must be >= 1");
    if (pair_sum <= 0) throw std::invalid_argument("pair sum must be positive");
    if (!(p_x > 0.0) || !(p_y > 0.0))
        throw std::invalid_argument("periods must be positive");

    ModeIndices3D out;
    const int n2 = pair_sum - n1;
    out.s_x = std::sqrt(M_PI * static_cast<double>((n1 - n2) * (n1 - n2)) /
                        (4.0 * pair_sum));

    const double ratio2 = (p_x / p_y) * (p_x / p_y);
    const double m_sum_real = static_cast<double>(pair_sum) * ratio2;
    const double nearest = std::round(m_sum_real);
    if (std::abs(m_sum_real - nearest) > 1e-9 * std::max(1.0, m_sum_real)) {
        out.note = "no 3D periodic mode: (p_y/p_x)^2 constraint has no integer solution";
        return out;
    }
    out.m_sum = static_cast<int>(nearest);
    const bool equal_periods = std::abs(p_x - p_y) <= 1e-12 * std::max(p_x, p_y);
    if (!equal_periods && out.m_sum % 2 != 0) {
        out.note = "no 3D periodic mode: m1 + m2 must be even for unequal periods";
        return out;
    }
    if (out.m_sum <= 0) {
        out.note = "no 3D periodic mode: nonpositive m1 + m2";
        return out;
    }
    out.m1 = m1;
    out.m2 = out.m_sum - m1;
    out.s_y = std::sqrt(M_PI *
                        static_cast<double>((out.m1 - out.m2) * (out.m1 - out.m2)) /
                        (4.0 * out.m_sum));
    out.admissible = true;
    return out;
}

}  // namespace orpg
