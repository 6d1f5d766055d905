#pragma once
// Dense Nystrom assembly of the Navier boundary integral operators on
// global trigonometric meshes (Kussmaul-Martensen and Alpert paths), the
// Fourier-multiplier regularizers, the combined-field formulations, and the
// open-arc first-kind/preconditioned systems.

#include "ebie/geometry.hpp"
#include "ebie/kernels.hpp"
#include "ebie/quadrature.hpp"

#include <Eigen/Dense>

namespace ebie::nys {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using kern::cxd;
using kern::MaterialParams;

enum class Method { KM, Alpert3, Alpert10 };
enum class OpKind { V, Khalf, KThalf, W }; // Khalf = 1/2 I + K, KThalf = -1/2 I + K^T

/// Dense operator on the interleaved 2-vector grid (size 2 * 2n).
/// Requires a global equispaced mesh on a closed curve (sigmoid-graded when
/// corners are present). Warns to stderr for Alpert10 on corner meshes.
MatrixXcd assemble_operator(OpKind kind, Method method, const geom::Mesh& mesh,
                            const MaterialParams& m);

enum class PsKind { Y, Yinv };

/// Fourier multiplier PS_kappa(Y) (or its per-mode matrix inverse) acting on
/// the Cartesian components of an interleaved density on the 2n grid.
MatrixXcd ps_multiplier_matrix(PsKind kind, cxd kappa, int n, const MaterialParams& m);

/// 2x2 symbol of PS_kappa(Y) at integer mode xi.
Eigen::Matrix2cd ps_symbol(double xi, cxd kappa, const MaterialParams& m);

cxd eta_d_opt(const MaterialParams& m);
cxd eta_n_opt(const MaterialParams& m);
cxd default_kappa(const MaterialParams& m); // ks + 0.4 ks^{1/3} i

enum class BC { Dirichlet, Neumann };
enum class Family {
    SLManufactured,  // V lambda = f            u = S[lambda]
    DLManufactured,  // (1/2 + K) g = f          u = D[g]     (Dirichlet)
                     // W g = g_N                u = D[g]     (Neumann)
    KTManufactured,  // (-1/2 + K^T) phi = g_N   u = S[phi]
    CFIE,
    CFIER,
    DCFIER
};
enum class Regularizer { None, PsY, PsYinv, LowOrder };

struct FormulationConfig {
    BC bc = BC::Dirichlet;
    Family family = Family::CFIE;
    Method method = Method::KM;
    cxd eta = 0.0;      // coupling; 0 selects the quasi-optimal value
    Regularizer reg = Regularizer::None;
    cxd kappa = 0.0;    // 0 selects default_kappa
};

// How the scattered field is represented in terms of the solved vector x:
// u = S[lambda] + D[g] with the parameterized single layer density
// lambda = sl_density * x (Jacobian-weighted samples) and the double layer
// density g = dl_density * x (plain samples). Empty matrices mean zero.
struct Representation {
    MatrixXcd sl_density;
    MatrixXcd dl_density;
};

enum class RhsForm { DirichletTrace, NeumannTrace, Dcfier };

struct NavierSystem {
    MatrixXcd A;
    Representation rep;
    RhsForm rhs = RhsForm::DirichletTrace;
    MatrixXcd rhs_R; // left regularizer applied to (parts of) the data
    std::string tag;
};

NavierSystem assemble_formulation(const FormulationConfig& cfg, const geom::Mesh& mesh,
                                  const MaterialParams& m);

/// Open-arc systems on the doubled cos-squashed parametrization. Unknowns
/// are the interior nodes j = 1..n-1 (two components each); `expand` maps
/// the reduced solution to the full 2n-grid density (even for Dirichlet,
/// odd for Neumann) used in potential evaluations.
struct ArcSystem {
    MatrixXcd A;
    Eigen::MatrixXd expand; // reduced -> full-grid density
    Representation rep;
    RhsForm rhs = RhsForm::DirichletTrace;
    MatrixXcd rhs_R;        // maps full-grid data samples to the reduced rhs
    std::string tag;
};

ArcSystem arc_dirichlet_system(const geom::Mesh& mesh, const MaterialParams& m,
                               bool preconditioned, cxd kappa = 0.0);
ArcSystem arc_neumann_system(const geom::Mesh& mesh, const MaterialParams& m,
                             bool preconditioned, cxd kappa = 0.0);

/// Spectral differentiation of interleaved vector densities.
MatrixXcd vector_diff_matrix(int n);

} // namespace ebie::nys
