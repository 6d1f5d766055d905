#pragma once
// Pointwise Navier kernels: the fundamental solution, its tractions, the
// four dynamic boundary kernels V, K, K^T, W, their elastostatic
// counterparts, and the log-splitting structure of dynamic-static
// differences used by the Kussmaul-Martensen discretization.

#include "ebie/geometry.hpp"

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>

namespace ebie::kern {

using cxd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2d;

struct MaterialParams {
    double lambda = 1.0;
    double mu = 1.0;
    cxd omega = 1.0;
    cxd kp, ks; // pressure and shear wavenumbers

    double lam2mu() const { return lambda + 2 * mu; }
};

MaterialParams material(double lambda, double mu, cxd omega);

enum class Part { Full, LogCoeff }; // LogCoeff: coefficient of log(4 sin^2((t-tau)/2))

/// Fundamental solution Phi(x, y) = gamma1(r) I + gamma2(r) rhat rhat^T.
Mat2 navier_green(const Vec2& x, const Vec2& y, const MaterialParams& m);

/// dPhi/dx_k, k = 0, 1.
std::array<Mat2, 2> navier_green_grad(const Vec2& x, const Vec2& y, const MaterialParams& m);

/// Traction T u = lambda (div u) n + 2 mu (n . grad) u - mu (curl u) t from
/// the gradient G_{ij} = du_i/dx_j of a displacement field.
Eigen::Vector2cd traction(const MaterialParams& m, const Vec2& n, const Vec2& t,
                          const Mat2& grad);

// Slim frame for kernel evaluation; t is the mesh parameter of the point.
struct PFrame {
    double t;
    Vec2 x, n, tan;
    double jac;
};
PFrame pframe(const geom::GeometricFrame& f);

/// Parameterized kernels (dynamic or elastostatic). V carries no Jacobian
/// (it sits in the density); K carries |x'(tau)|, K^T carries |x'(t)|, W both.
Mat2 kernel_V(const PFrame& X, const PFrame& Y, const MaterialParams& m, Part part, bool dynamic);
Mat2 kernel_K(const PFrame& X, const PFrame& Y, const MaterialParams& m, Part part, bool dynamic);
Mat2 kernel_KT(const PFrame& X, const PFrame& Y, const MaterialParams& m, Part part, bool dynamic);
Mat2 kernel_W(const PFrame& X, const PFrame& Y, const MaterialParams& m, Part part, bool dynamic);

enum class SplitKind { V, KmK0, KTmKT0, WmW0 };

struct KernelSplit {
    Mat2 log_coeff; // multiplies log(4 sin^2((t-tau)/2))
    Mat2 smooth;
};

/// Off-diagonal split (X.t != Y.t): kind = log_coeff * log(4 sin^2) + smooth.
KernelSplit km_log_split(SplitKind kind, const PFrame& X, const PFrame& Y,
                         const MaterialParams& m);

/// Diagonal limits of the split parts at parameter t by log-aware
/// extrapolation along tau -> t on the (possibly graded) mesh map.
KernelSplit km_split_diagonal(SplitKind kind, const geom::Mesh& mesh, double t,
                              const MaterialParams& m);

/// Constant Cauchy (cot((t-tau)/2)) coefficient of the elastostatic double
/// layer kernels K0 and K0^T: mu / (4 pi (lambda+2mu)) * [[0,1],[-1,0]].
Eigen::Matrix2d k0_cot_coefficient(const MaterialParams& m);

/// Smooth remainders of K0 / K0^T after removing the Cauchy part.
Mat2 k0_smooth(const PFrame& X, const PFrame& Y, const MaterialParams& m, bool transposed);
Mat2 k0_smooth_diagonal(const geom::Mesh& mesh, double t, const MaterialParams& m,
                        bool transposed);

/// Maue-form W0 kernel M(t,tau) = d/dtau(-log r I + G(r)) acting on g':
/// smooth remainder after removing (1/2) cot((t-tau)/2) I, and its diagonal.
Mat2 w0_maue_smooth(const PFrame& X, const PFrame& Y);
Mat2 w0_maue_smooth_diagonal(const geom::Mesh& mesh, double t);
double w0_maue_prefactor(const MaterialParams& m); // mu(lambda+mu)/((lambda+2mu) pi)

/// Log-aware extrapolation to h -> 0 of symmetrized samples F(h):
/// fits c0 + c1 h^2 ln h + c2 h^2 + c3 h^4 ln h + c4 h^4.
Mat2 diagonal_limit(const std::function<Mat2(double)>& sym_sample);

} // namespace ebie::kern
