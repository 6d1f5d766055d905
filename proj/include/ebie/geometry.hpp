#pragma once
// Parametrized boundary curves, sigmoid (graded) reparametrization for
// corners, and global/panel meshes with per-node geometric data.

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ebie::geom {

using Vec2 = Eigen::Vector2d;

struct CurvePoint {
    Vec2 x;   // position
    Vec2 d1;  // dx/dt
    Vec2 d2;  // d2x/dt2
};

struct ParamCurve {
    std::string name;
    bool is_open = false;
    std::vector<double> corner_params; // sorted, in [0, 2pi)
    std::function<CurvePoint(double)> eval;

    bool has_corners() const { return !corner_params.empty(); }
};

/// Catalog lookup. Throws std::invalid_argument for unknown names.
/// Names: starfish, cavity, kite, teardrop, boomerang, flat, vshape, circle.
ParamCurve curve_catalog(const std::string& name);
std::vector<std::string> curve_catalog_names();

/// Kress sigmoid transform of order p on [T0, T1]: returns w, w', w''.
/// w is an increasing bijection of [T0,T1] onto itself with derivatives
/// 1..p-1 vanishing at the endpoints.
struct SigmoidValue { double w, dw, ddw; };
SigmoidValue sigmoid_map(int p, double T0, double T1, double t);

enum class MeshKind { GlobalEquispaced, ChebyshevPanels };

struct MeshSpec {
    MeshKind kind = MeshKind::GlobalEquispaced;
    int n = 32;                 // half the global node count / nodes per panel
    int panels = 1;             // base panel count (panel meshes)
    int sigmoid_order = 0;      // 0 = none; >= 2 when grading
    int dyadic_levels = 0;      // corner-adjacent panel refinement
};

struct GeometricFrame {
    double t;        // mesh parameter in [0, 2pi)
    Vec2 x;
    Vec2 d1, d2;     // derivatives of the composed map
    double jac;      // |d1|
    Vec2 tangent;    // d1/|d1|
    Vec2 normal;     // outward; tangent = (-n2, n1)
    double curvature;
};

struct Panel {
    double a, b;     // parameter interval
    int first, count; // node range
};

struct Mesh {
    std::shared_ptr<const ParamCurve> curve;
    MeshSpec spec;
    std::vector<GeometricFrame> nodes;
    std::vector<double> weights;     // parameter-space quadrature weight per node
    std::vector<double> w_samples;   // sigmoid w(t_j) (identity when ungraded)
    std::vector<double> dw_samples;  // sigmoid w'(t_j)
    std::vector<int> panel_of;       // panel index per node (-1 for global)
    std::vector<Panel> panels;
    std::vector<int> corner_nodes;   // node indices that sit on corners

    int size() const { return int(nodes.size()); }
    bool global() const { return spec.kind == MeshKind::GlobalEquispaced; }
    double spacing() const; // global grid spacing pi/n
    bool is_corner_node(int j) const;
};

/// Build a mesh. Global meshes use t_j = j pi / n (2n nodes), composed with
/// the sigmoid map when the curve has corners. Panel meshes place n
/// first-kind Chebyshev nodes per panel with corners at panel ends and
/// optional dyadic refinement toward them.
Mesh build_mesh(std::shared_ptr<const ParamCurve> curve, const MeshSpec& spec);

/// Evaluate the composed (graded) map and its frame at an arbitrary t.
GeometricFrame frame_at(const Mesh& mesh, double t);

/// Frame of an ungraded curve at parameter t.
GeometricFrame frame_of(const ParamCurve& curve, double t);

/// Signed area of a closed curve (positive = counterclockwise).
double signed_area(const ParamCurve& c, int nquad = 4096);

} // namespace ebie::geom
