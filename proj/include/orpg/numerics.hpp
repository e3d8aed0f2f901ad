#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace orpg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// Brent-style bracketed root finder: bisection with inverse-quadratic /
/// secant steps. Requires f(lo)*f(hi) <= 0. Stops when the bracket width
/// or |f| drops below tol. Throws std::invalid_argument("bracket invalid")
/// when there is no sign change and std::runtime_error("evaluation failure")
/// on non-finite f values.
RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double tol,
                               int max_iterations = 200);

/// All w solving det(T + w*D) = 0 for diagonal D, i.e. the eigenvalues of
/// -D^{-1} T. Sorted by |w| descending (ties broken by real, then imag part,
/// so the order is deterministic). Throws std::invalid_argument("singular
/// scaling") if any |D_nn| <= 1e-14.
std::vector<Complex> generalized_eigenvalues(const ComplexMatrix& T,
                                             const ComplexMatrix& D);
std::vector<Complex> generalized_eigenvalues(const ComplexMatrix& T,
                                             const ComplexVector& D_diagonal);

/// Eigenvalues plus right eigenvectors of the same pencil, in the same
/// deterministic order. Column j of the returned matrix belongs to w[j].
struct GeneralizedEigenSystem {
    std::vector<Complex> values;
    ComplexMatrix vectors;
};
GeneralizedEigenSystem generalized_eigensystem(const ComplexMatrix& T,
                                               const ComplexVector& D_diagonal);

/// Integral of g(x)*exp(-i*phase_rate*x) over [a, b] by composite
/// Gauss-Legendre panels. The accumulated phase per panel must stay below
/// pi/4; otherwise throws std::invalid_argument("insufficient resolution")
/// naming the panel count that would satisfy the bound.
Complex oscillatory_quadrature(const std::function<Complex(double)>& g,
                               double a, double b, double phase_rate,
                               int n_panels);

/// Panel count satisfying the pi/4 phase-advance bound for the given total
/// oscillation budget |rate|*(b-a), with a little headroom.
int panels_for_phase(double phase_rate, double a, double b, int minimum = 1);

/// Plain composite Gauss-Legendre for smooth real integrands.
double gauss_legendre(const std::function<double(double)>& f,
                      double a, double b, int n_panels);

}  // namespace orpg
