#include "ebie/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace ebie::la {

VectorXcd lu_solve(const MatrixXcd& A, const VectorXcd& b)
{
    Eigen::PartialPivLU<MatrixXcd> lu(A);
    // detect a (numerically) singular pivot
    double mn = 1e300, mx = 0.0;
    for (int i = 0; i < A.rows(); ++i) {
        double d = std::abs(lu.matrixLU()(i, i));
        mn = std::min(mn, d);
        mx = std::max(mx, d);
    }
    if (mn == 0.0 || (mx > 0 && mn / mx < 1e-300))
        throw std::runtime_error("lu_solve: singular pivot");
    return lu.solve(b);
}

SolveReport gmres(const Op& apply, const VectorXcd& b, double tol, int max_it)
{
    SolveReport rep;
    rep.tolerance = tol;
    const int n = int(b.size());
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        rep.solution = VectorXcd::Zero(n);
        rep.converged = true;
        rep.residual_history = {0.0};
        return rep;
    }
    max_it = std::min(max_it, n);
    std::vector<VectorXcd> V;
    V.reserve(max_it + 1);
    V.push_back(b / bnorm);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(max_it + 1, max_it);
    std::vector<cxd> cs(max_it), sn(max_it);
    VectorXcd g = VectorXcd::Zero(max_it + 1);
    g(0) = bnorm;
    rep.residual_history.push_back(1.0);

    int k = 0;
    for (; k < max_it; ++k) {
        VectorXcd w = apply(V[k]);
        for (int j = 0; j <= k; ++j) { // modified Gram-Schmidt
            cxd hjk = V[j].dot(w);
            H(j, k) = hjk;
            w -= hjk * V[j];
        }
        double hnext = w.norm();
        H(k + 1, k) = hnext;
        if (hnext > 0) V.push_back(w / hnext);
        // apply stored rotations
        for (int j = 0; j < k; ++j) {
            cxd t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
            H(j + 1, k) = -std::conj(sn[j]) * H(j, k) + std::conj(cs[j]) * H(j + 1, k);
            H(j, k) = t;
        }
        // new rotation zeroing H(k+1,k)
        cxd a = H(k, k), bb = H(k + 1, k);
        double denom = std::sqrt(std::norm(a) + std::norm(bb));
        if (denom == 0.0) { cs[k] = 1.0; sn[k] = 0.0; }
        else { cs[k] = std::conj(a) / denom; sn[k] = std::conj(bb) / denom; }
        H(k, k) = cs[k] * a + sn[k] * bb;
        H(k + 1, k) = 0.0;
        cxd t = cs[k] * g(k);
        g(k + 1) = -std::conj(sn[k]) * g(k);
        g(k) = t;
        double res = std::abs(g(k + 1)) / bnorm;
        rep.residual_history.push_back(res);
        if (res <= tol || hnext == 0.0) {
            ++k;
            rep.converged = true;
            break;
        }
    }
    rep.iterations = k;
    // back substitution on the k x k triangular system
    VectorXcd y = VectorXcd::Zero(k);
    for (int i = k - 1; i >= 0; --i) {
        cxd s = g(i);
        for (int j = i + 1; j < k; ++j) s -= H(i, j) * y(j);
        y(i) = s / H(i, i);
    }
    VectorXcd x = VectorXcd::Zero(n);
    for (int j = 0; j < k; ++j) x += y(j) * V[j];
    rep.solution = x;
    if (!rep.converged && rep.residual_history.back() <= tol) rep.converged = true;
    return rep;
}

SolveReport gmres(const MatrixXcd& A, const VectorXcd& b, double tol, int max_it)
{
    return gmres([&A](const VectorXcd& x) { return VectorXcd(A * x); }, b, tol, max_it);
}

} // namespace ebie::la
