#include "orpg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orpg {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussOrder = 16;
constexpr double kGaussX[kGaussOrder] = {
    -0.9894009349916499325961542, -0.9445750230732325760779884,
    -0.8656312023878317438804679, -0.7554044083550030338951012,
    -0.6178762444026437484466718, -0.4580167776572273863424194,
    -0.2816035507792589132304605, -0.0950125098376374401853193,
    0.0950125098376374401853193,  0.2816035507792589132304605,
    0.4580167776572273863424194,  0.6178762444026437484466718,
    0.7554044083550030338951012,  0.8656312023878317438804679,
    0.9445750230732325760779884,  0.9894009349916499325961542};
constexpr double kGaussW[kGaussOrder] = {
    0.0271524594117540948517806, 0.0622535239386478928628438,
    0.0951585116824927848099251, 0.1246289712555338720524763,
    0.1495959888165767320815017, 0.1691565193950025381893121,
    0.1826034150449235888667637, 0.1894506104550684962853967,
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

double eval_checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw std::runtime_error("evaluation failure: f(" + std::to_string(x) +
                                 ") is not finite");
    }
    return v;
}

}  // namespace

RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double tol,
                               int max_iterations) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (lo > hi) std::swap(lo, hi);

    double a = lo, b = hi;
    double fa = eval_checked(f, a);
    double fb = eval_checked(f, b);
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if (fa * fb > 0.0) {
        throw std::invalid_argument("bracket invalid: no sign change on [" +
                                    std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }

    // Brent: keep [a,b] bracketing, c the previous b.
    double c = a, fc = fa;
    double d = b - a, e = d;
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b;  b = c;  c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol1 || fb == 0.0 || std::abs(fb) <= tol) break;
        if (std::abs(e) < tol1 || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;  // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q),
                                   std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : (m > 0.0 ? tol1 : -tol1);
        fb = eval_checked(f, b);
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; e = d = b - a; }
    }
    return {b, std::abs(fb), iter};
}

static std::vector<Complex> sorted_eigenvalues(ComplexVector w) {
    std::vector<Complex> out(w.data(), w.data() + w.size());
    std::sort(out.begin(), out.end(), [](const Complex& x, const Complex& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return out;
}

static void check_pencil(const ComplexMatrix& T, Eigen::Index dim_d) {
    if (T.rows() != T.cols()) throw std::invalid_argument("T must be square");
    if (T.rows() != dim_d)
        throw std::invalid_argument("T and D dimensions disagree");
}

GeneralizedEigenSystem generalized_eigensystem(const ComplexMatrix& T,
                                               const ComplexVector& D_diagonal) {
    check_pencil(T, D_diagonal.size());
    for (Eigen::Index i = 0; i < D_diagonal.size(); ++i) {
        if (std::abs(D_diagonal[i]) <= 1e-14) {
            throw std::invalid_argument(
                "singular scaling: |D| entry below 1e-14 at index " +
                std::to_string(i));
        }
    }
    // det(T + wD) = 0  <=>  w is an eigenvalue of -D^{-1} T.
    ComplexMatrix A = -(D_diagonal.cwiseInverse().asDiagonal() * T);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(A, true);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue iteration failed to converge");

    GeneralizedEigenSystem
        sys{sorted_eigenvalues(solver.eigenvalues()),
            ComplexMatrix(T.rows(), T.cols())};
    // Reorder eigenvector columns to match the sorted values.
    std::vector<bool> used(static_cast<size_t>(T.rows()), false);
    for (size_t j = 0; j < sys.values.size(); ++j) {
        Eigen::Index pick = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
            if (used[static_cast<size_t>(k)]) continue;
            const double dist = std::abs(solver.eigenvalues()[k] - sys.values[j]);
            if (dist < best) { best = dist; pick = k; }
        }
        used[static_cast<size_t>(pick)] = true;
        sys.vectors.col(static_cast<Eigen::Index>(j)) = solver.eigenvectors().col(pick);
    }
    return sys;
}

std::vector<Complex> generalized_eigenvalues(const ComplexMatrix& T,
                                             const ComplexVector& D_diagonal) {
    check_pencil(T, D_diagonal.size());
    for (Eigen::Index i = 0; i < D_diagonal.size(); ++i) {
        if (std::abs(D_diagonal[i]) <= 1e-14) {
            throw std::invalid_argument(
                "singular scaling: |D| entry below 1e-14 at index " +
                std::to_string(i));
        }
    }
    ComplexMatrix A = -(D_diagonal.cwiseInverse().asDiagonal() * T);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(A, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue iteration failed to converge");
    return sorted_eigenvalues(solver.eigenvalues());
}

std::vector<Complex> generalized_eigenvalues(const ComplexMatrix& T,
                                             const ComplexMatrix& D) {
    if (D.rows() != D.cols()) throw std::invalid_argument("D must be square");
    return generalized_eigenvalues(T, ComplexVector(D.diagonal()));
}

int panels_for_phase(double phase_rate, double a, double b, int minimum) {
    const double budget = std::abs(phase_rate) * std::abs(b - a);
    const int need = static_cast<int>(std::ceil(budget / (M_PI / 4.0) * 1.05)) + 1;
    return std::max(minimum, need);
}

Complex oscillatory_quadrature(const std::function<Complex(double)>& g,
                               double a, double b, double phase_rate,
                               int n_panels) {
    if (!(a < b)) throw std::invalid_argument("require a < b");
    if (n_panels < 1) throw std::invalid_argument("n_panels must be >= 1");
    const double per_panel = std::abs(phase_rate) * (b - a) / n_panels;
    if (per_panel >= M_PI / 4.0) {
        throw std::invalid_argument(
            "insufficient resolution: phase advances " +
            std::to_string(per_panel) + " per panel; use n_panels >= " +
            std::to_string(panels_for_phase(phase_rate, a, b)));
    }
    const Complex I(0.0, 1.0);
    Complex total(0.0, 0.0);
    const double h = (b - a) / n_panels;
    for (int p = 0; p < n_panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        Complex panel(0.0, 0.0);
        for (int k = 0; k < kGaussOrder; ++k) {
            const double x = mid + 0.5 * h * kGaussX[k];
            panel += kGaussW[k] * g(x) * std::exp(-I * phase_rate * x);
        }
        total += 0.5 * h * panel;
    }
    return total;
}

double gauss_legendre(const std::function<double(double)>& f,
                      double a, double b, int n_panels) {
    double total = 0.0;
    const double h = (b - a) / n_panels;
    for (int p = 0; p < n_panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double panel = 0.0;
        for (int k = 0; k < kGaussOrder; ++k) {
            panel += kGaussW[k] * f(mid + 0.5 * h * kGaussX[k]);
        }
        total += 0.5 * h * panel;
    }
    return total;
}

}  // namespace orpg
