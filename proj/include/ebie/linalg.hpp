#pragma once
// Dense complex direct solve and full (non-restarted) GMRES with
// residual history.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace ebie::la {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cxd = std::complex<double>;

struct SolveReport {
    VectorXcd solution;
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
    double tolerance = 0.0;
};

/// Partial-pivoting LU solve. Throws std::runtime_error on singular pivot.
VectorXcd lu_solve(const MatrixXcd& A, const VectorXcd& b);

using Op = std::function<VectorXcd(const VectorXcd&)>;

/// Full-memory GMRES (modified Gram-Schmidt, Givens rotations) down to a
/// relative residual ||b - A x|| / ||b|| <= tol.
SolveReport gmres(const Op& apply, const VectorXcd& b, double tol, int max_it);
SolveReport gmres(const MatrixXcd& A, const VectorXcd& b, double tol, int max_it);

} // namespace ebie::la
