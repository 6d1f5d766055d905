#pragma once
// Incident fields, right-hand sides, far-field patterns, potential
// evaluation, and convergence-study bookkeeping.

#include "ebie/geometry.hpp"
#include "ebie/kernels.hpp"
#include "ebie/linalg.hpp"
#include "ebie/nystrom.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ebie::scat {

using Eigen::VectorXcd;
using kern::cxd;
using kern::Mat2;
using kern::MaterialParams;
using kern::Vec2;
using Vec2c = Eigen::Vector2cd;

/// An incident (or prescribed scattered) elastic field with the evaluators
/// the solvers need; phi_p/phi_s carry the Helmholtz decomposition
/// u = grad phi_p + curl phi_s used by the scalar decomposition systems.
struct IncidentField {
    std::function<Vec2c(const Vec2&)> u;
    std::function<Mat2(const Vec2&)> grad; // G_ij = du_i/dx_j
    std::function<cxd(const Vec2&)> phi_p, phi_s;
    std::function<Vec2c(const Vec2&)> grad_phi_p, grad_phi_s;
};

/// Point source u(x) = Phi(x, x0) c.
IncidentField point_source(const Vec2& x0, const Vec2c& c, const MaterialParams& m);
/// Plane pressure wave (p = d) and shear wave (p orthogonal to d).
IncidentField plane_wave(const Vec2& d, const Vec2& p, const MaterialParams& m);
/// The field scaled by a constant (e.g. -1 for scattering data).
IncidentField scaled(const IncidentField& f, cxd s);

Vec2c traction_of(const IncidentField& f, const geom::GeometricFrame& fr,
                  const MaterialParams& m);

struct FarFieldPattern {
    std::vector<double> angles;
    std::vector<Vec2c> up, us;
};

/// Max-norm distance over both polarizations.
double ff_error(const FarFieldPattern& a, const FarFieldPattern& b);

/// Exact pattern of the point source Phi(., x0) c.
FarFieldPattern point_source_far_field(const Vec2& x0, const Vec2c& c, const MaterialParams& m,
                                       int ndir = 256);

/// Pattern of the representation u = S[sl_density x] + D[dl_density x].
FarFieldPattern navier_far_field(const nys::Representation& rep, const VectorXcd& x,
                                 const geom::Mesh& mesh, const MaterialParams& m, int ndir = 256);

/// Potential evaluation at a point away from the boundary.
Vec2c navier_potential(const nys::Representation& rep, const VectorXcd& x,
                       const geom::Mesh& mesh, const MaterialParams& m, const Vec2& z);

/// Right-hand side for a Navier system given the prescribed scattered-field
/// data (for plane-wave scattering pass scaled(incident, -1)).
VectorXcd navier_rhs(const nys::NavierSystem& sys, const geom::Mesh& mesh,
                     const MaterialParams& m, const IncidentField& data);
VectorXcd arc_rhs(const nys::ArcSystem& sys, const geom::Mesh& mesh, const MaterialParams& m,
                  const IncidentField& data);

struct CaseResult {
    la::SolveReport report;
    FarFieldPattern pattern;
    double eps_inf = 0.0; // against the provided reference
};

struct ConvergenceRow {
    double omega;
    int N;
    std::string method;
    double eps;
    double eoc; // log2(eps(N)/eps(2N)), 0 for the first row
    double seconds;
};

/// e.o.c. column from consecutive rows (paired by method tag).
std::vector<ConvergenceRow> with_eoc(std::vector<ConvergenceRow> rows);

} // namespace ebie::scat
