#include <cmath>
#include <limits>

#include "phasekit/error.h"
#include "phasekit/optimizer.h"

namespace phasekit {

namespace {

double degeneracy_tolerance(double scale) {
    return 1e-10 * std::max(1.0, scale);
}

/// Real symmetric tridiagonal with no complex parts: returns diagonal and
/// off-diagonal when the matrix has that shape.
bool extract_tridiagonal(const HermitianMatrix &m, std::vector<double> &diag, std::vector<double> &off) {
    const Eigen::Index n = m.rows();
    diag.resize(static_cast<std::size_t>(n));
    off.resize(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (m(i, j).imag() != 0.0) {
                return false;
            }
            if (std::abs(i - j) > 1 && m(i, j) != Complex(0.0, 0.0)) {
                return false;
            }
        }
        diag[static_cast<std::size_t>(i)] = m(i, i).real();
        if (i + 1 < n) {
            off[static_cast<std::size_t>(i)] = m(i, i + 1).real();
        }
    }
    return true;
}

/// Number of eigenvalues strictly below sigma (Sturm sequence).
int count_below(std::span<const double> d, std::span<const double> e, double sigma) {
    int count = 0;
    double q = d[0] - sigma;
    if (q < 0.0) {
        ++count;
    }
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0) {
            q = std::numeric_limits<double>::epsilon() * (std::abs(e[i - 1]) + 1.0);
        }
        q = d[i] - sigma - e[i - 1] * e[i - 1] / q;
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

}  // namespace

TridiagonalEigenpair tridiagonal_min_eigenpair(std::span<const double> d, std::span<const double> e) {
    const std::size_t n = d.size();
    if (n == 0 || e.size() + 1 != n) {
        fail(ErrorKind::DimensionMismatch, "tridiagonal: off-diagonal must have length n-1");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    for (int iter = 0; iter < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(d, e, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    TridiagonalEigenpair out;
    out.value = 0.5 * (lo + hi);
    out.multiplicity = count_below(d, e, out.value + degeneracy_tolerance(scale));

    // Inverse iteration with a shift just below the eigenvalue: T - sigma I is
    // positive definite, so the LDL^T sweep needs no pivoting.
    const double sigma = out.value - 1e-9 * std::max(scale, 1.0);
    std::vector<double> ld(n), lsub(n > 0 ? n - 1 : 0);
    ld[0] = d[0] - sigma;
    for (std::size_t i = 1; i < n; ++i) {
        lsub[i - 1] = e[i - 1] / ld[i - 1];
        ld[i] = d[i] - sigma - lsub[i - 1] * e[i - 1];
    }
    Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    for (int iter = 0; iter < 6; ++iter) {
        for (std::size_t i = 1; i < n; ++i) {
            x(static_cast<Eigen::Index>(i)) -= lsub[i - 1] * x(static_cast<Eigen::Index>(i - 1));
        }
        for (std::size_t i = 0; i < n; ++i) {
            x(static_cast<Eigen::Index>(i)) /= ld[i];
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            x(static_cast<Eigen::Index>(i)) -= lsub[i] * x(static_cast<Eigen::Index>(i + 1));
        }
        x.normalize();
    }
    out.vector = x;
    return out;
}

MinEigenpair min_eigenpair(const HermitianMatrix &matrix) {
    const Eigen::Index n = matrix.rows();
    if (n == 0 || matrix.cols() != n) {
        fail(ErrorKind::DimensionMismatch, "eigenproblem needs a non-empty square matrix");
    }
    const double norm = matrix.cwiseAbs().maxCoeff();
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, norm)) {
        fail(ErrorKind::NonHermitianInput, "cost matrix is not Hermitian");
    }
    if (!matrix.allFinite()) {
        fail(ErrorKind::InvalidArgument, "cost matrix has non-finite entries");
    }

    if (n > kDenseSolverLimit) {
        std::vector<double> d, e;
        if (extract_tridiagonal(matrix, d, e)) {
            auto tri = tridiagonal_min_eigenpair(d, e);
            if (tri.multiplicity == 1) {
                MinEigenpair out;
                out.value = tri.value;
                out.vector = tri.vector.cast<Complex>();
                out.eigenspace = out.vector;
                return out;
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(matrix);
    if (solver.info() != Eigen::Success) {
        fail(ErrorKind::SolverFailure, "dense Hermitian eigensolver did not converge");
    }
    const auto &values = solver.eigenvalues();
    const double tol = degeneracy_tolerance(values.cwiseAbs().maxCoeff());
    int multiplicity = 1;
    while (multiplicity < n && values(multiplicity) - values(0) <= tol) {
        ++multiplicity;
    }
    MinEigenpair out;
    out.value = values(0);
    out.vector = solver.eigenvectors().col(0);
    out.multiplicity = multiplicity;
    out.eigenspace = solver.eigenvectors().leftCols(multiplicity);
    return out;
}

}  // namespace phasekit
