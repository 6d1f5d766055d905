#include "ebie/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ebie::geom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ParamCurve make_closed(std::string name, std::function<CurvePoint(double)> f,
                       std::vector<double> corners = {})
{
    ParamCurve c;
    c.name = std::move(name);
    c.is_open = false;
    c.corner_params = std::move(corners);
    c.eval = std::move(f);
    return c;
}

// Open arcs are parametrized over [0, 2pi] through s -> -cos(t) style
// squashing so that nodes cluster at the endpoints (Chebyshev in arc
// parameter) and the curve is traversed twice, 2pi-periodically.
ParamCurve make_arc(std::string name, std::function<CurvePoint(double)> base,
                    double s0, double s1, std::vector<double> corners_t = {})
{
    double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
    ParamCurve c;
    c.name = std::move(name);
    c.is_open = true;
    c.corner_params = std::move(corners_t);
    c.eval = [base, mid, half](double t) {
        double s = mid - half * std::cos(t);
        double ds = half * std::sin(t);
        double dds = half * std::cos(t);
        CurvePoint b = base(s);
        CurvePoint out;
        out.x = b.x;
        out.d1 = b.d1 * ds;
        out.d2 = b.d2 * ds * ds + b.d1 * dds;
        return out;
    };
    return c;
}

double wrap2pi(double t)
{
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

} // namespace

ParamCurve curve_catalog(const std::string& name)
{
    if (name == "circle") {
        return make_closed("circle", [](double t) {
            CurvePoint p;
            p.x = {std::cos(t), std::sin(t)};
            p.d1 = {-std::sin(t), std::cos(t)};
            p.d2 = {-std::cos(t), -std::sin(t)};
            return p;
        });
    }
    if (name == "starfish") {
        return make_closed("starfish", [](double t) {
            double r = 1.0 + 0.25 * std::sin(5 * t);
            double dr = 1.25 * std::cos(5 * t);
            double ddr = -6.25 * std::sin(5 * t);
            double c = std::cos(t), s = std::sin(t);
            CurvePoint p;
            p.x = {r * c, r * s};
            p.d1 = {dr * c - r * s, dr * s + r * c};
            p.d2 = {ddr * c - 2 * dr * s - r * c, ddr * s + 2 * dr * c - r * s};
            return p;
        });
    }
    if (name == "kite") {
        return make_closed("kite", [](double t) {
            CurvePoint p;
            p.x = {std::cos(t) + 0.65 * (std::cos(2 * t) - 1.0), 1.5 * std::sin(t)};
            p.d1 = {-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t)};
            p.d2 = {-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t)};
            return p;
        });
    }
    if (name == "cavity") {
        // displayed formula; the paper's own figure uses 2.5 instead of 4 in
        // the first coordinate scaling, we keep the displayed 1/4.
        return make_closed("cavity", [](double t) {
            auto A = [](double u) { return std::sin(u) + std::sin(2 * u) + 0.5 * std::sin(3 * u); };
            auto dA = [](double u) { return std::cos(u) + 2 * std::cos(2 * u) + 1.5 * std::cos(3 * u); };
            auto ddA = [](double u) { return -std::sin(u) - 4 * std::sin(2 * u) - 4.5 * std::sin(3 * u); };
            auto As = [](double u) { return -4 * std::sin(u) + 7 * std::sin(2 * u) - 6 * std::sin(3 * u) + 2 * std::sin(4 * u); };
            auto dAs = [](double u) { return -4 * std::cos(u) + 14 * std::cos(2 * u) - 18 * std::cos(3 * u) + 8 * std::cos(4 * u); };
            auto ddAs = [](double u) { return 4 * std::sin(u) - 28 * std::sin(2 * u) + 54 * std::sin(3 * u) - 32 * std::sin(4 * u); };
            CurvePoint p;
            p.x = {0.25 * (std::cos(t) + 2 * std::cos(2 * t)), 0.5 * A(t) - As(t) / 48.0};
            p.d1 = {0.25 * (-std::sin(t) - 4 * std::sin(2 * t)), 0.5 * dA(t) - dAs(t) / 48.0};
            p.d2 = {0.25 * (-std::cos(t) - 8 * std::cos(2 * t)), 0.5 * ddA(t) - ddAs(t) / 48.0};
            return p;
        });
    }
    if (name == "teardrop") {
        // corner at t = 0 where x = (0,0); on (0, 2pi) sin(t/2) >= 0
        return make_closed("teardrop", [](double t) {
            t = wrap2pi(t);
            CurvePoint p;
            p.x = {2 * std::sin(t / 2), -std::sin(t)};
            p.d1 = {std::cos(t / 2), -std::cos(t)};
            p.d2 = {-0.5 * std::sin(t / 2), std::sin(t)};
            return p;
        }, {0.0});
    }
    if (name == "boomerang") {
        return make_closed("boomerang", [](double t) {
            CurvePoint p;
            p.x = {-(2.0 / 3.0) * std::sin(3 * t / 2), -std::sin(t)};
            p.d1 = {-std::cos(3 * t / 2), -std::cos(t)};
            p.d2 = {1.5 * std::sin(3 * t / 2), std::sin(t)};
            return p;
        }, {0.0});
    }
    if (name == "flat") {
        return make_arc("flat", [](double s) {
            CurvePoint p;
            p.x = {s, 0.0};
            p.d1 = {1.0, 0.0};
            p.d2 = {0.0, 0.0};
            return p;
        }, -1.0, 1.0);
    }
    if (name == "vshape") {
        const double a = 1.0 / std::sqrt(2.0);
        // corner at s = 0, i.e. t = pi/2 and 3pi/2
        return make_arc("vshape", [a](double s) {
            CurvePoint p;
            p.x = {s, std::abs(s) - 0.5 * a};
            p.d1 = {1.0, s >= 0 ? 1.0 : -1.0};
            p.d2 = {0.0, 0.0};
            return p;
        }, -a, a, {kPi / 2, 3 * kPi / 2});
    }
    throw std::invalid_argument("curve_catalog: unknown curve '" + name + "'");
}

std::vector<std::string> curve_catalog_names()
{
    return {"starfish", "cavity", "kite", "teardrop", "boomerang", "flat", "vshape", "circle"};
}

SigmoidValue sigmoid_map(int p, double T0, double T1, double t)
{
    if (t < T0 - 1e-12 || t > T1 + 1e-12)
        throw std::invalid_argument("sigmoid_map: t outside [T0, T1]");
    const double d = T1 - T0;
    const double sig = (t - T0) / d;
    const double xi = 2 * sig - 1;
    const double c3 = 1.0 / p - 0.5, c1 = 1.0 / p;
    // v(sig) = c3 (1 - 2 sig)^3 + c1 (2 sig - 1) + 1/2
    const double v = -c3 * xi * xi * xi + c1 * xi + 0.5;
    const double vp = -6 * c3 * xi * xi + 2 * c1;   // dv/dsigma
    const double vpp = -24 * c3 * xi;               // d2v/dsigma2
    const double a = std::pow(v, p), b = std::pow(1 - v, p);
    const double den = a + b;
    const double G = a / den;
    const double core = std::pow(v * (1 - v), p - 1);
    const double dGdv = p * core / (den * den);
    const double dden = p * (std::pow(v, p - 1) - std::pow(1 - v, p - 1));
    const double dcore = (p - 1) * std::pow(v * (1 - v), p - 2) * (1 - 2 * v);
    const double d2Gdv2 = p * (dcore * den - 2 * core * dden) / (den * den * den);

    SigmoidValue out;
    out.w = T0 + d * G;
    out.dw = dGdv * vp;
    out.ddw = (d2Gdv2 * vp * vp + dGdv * vpp) / d;
    return out;
}

namespace {

GeometricFrame frame_from_point(double t, const CurvePoint& p)
{
    GeometricFrame f;
    f.t = t;
    f.x = p.x;
    f.d1 = p.d1;
    f.d2 = p.d2;
    f.jac = p.d1.norm();
    if (f.jac > 1e-14) {
        f.tangent = p.d1 / f.jac;
    } else {
        // arc endpoint: direction from the second derivative
        double n2 = p.d2.norm();
        f.tangent = n2 > 0 ? Vec2(p.d2 / n2) : Vec2(1, 0);
    }
    f.normal = {f.tangent.y(), -f.tangent.x()};
    double j3 = std::max(f.jac * f.jac * f.jac, 1e-300);
    f.curvature = (p.d1.x() * p.d2.y() - p.d1.y() * p.d2.x()) / j3;
    return f;
}

// composed (sigmoid-graded) curve point
CurvePoint graded_point(const ParamCurve& c, int p, double t)
{
    if (p < 2 || c.corner_params.empty()) return c.eval(t);
    // segment [T_j, T_{j+1}] containing t
    std::vector<double> T = c.corner_params;
    if (c.is_open) {
        // grade between consecutive corners and the periodic seam like a
        // closed contour in parameter space
    }
    double T0 = T.back() - kTwoPi, T1 = T.front();
    for (size_t j = 0; j + 1 < T.size(); ++j)
        if (t >= T[j] && t <= T[j + 1]) { T0 = T[j]; T1 = T[j + 1]; }
    if (t >= T.back()) { T0 = T.back(); T1 = T.front() + kTwoPi; }
    else if (t <= T.front()) { T0 = T.back() - kTwoPi; T1 = T.front(); }
    SigmoidValue s = sigmoid_map(p, T0, T1, t);
    CurvePoint b = c.eval(wrap2pi(s.w));
    CurvePoint out;
    out.x = b.x;
    out.d1 = b.d1 * s.dw;
    out.d2 = b.d2 * s.dw * s.dw + b.d1 * s.ddw;
    return out;
}

} // namespace

double Mesh::spacing() const
{
    return kPi / spec.n;
}

bool Mesh::is_corner_node(int j) const
{
    for (int c : corner_nodes)
        if (c == j) return true;
    return false;
}

GeometricFrame frame_of(const ParamCurve& curve, double t)
{
    return frame_from_point(wrap2pi(t), curve.eval(wrap2pi(t)));
}

GeometricFrame frame_at(const Mesh& mesh, double t)
{
    CurvePoint p = graded_point(*mesh.curve, mesh.spec.sigmoid_order, wrap2pi(t));
    return frame_from_point(wrap2pi(t), p);
}

Mesh build_mesh(std::shared_ptr<const ParamCurve> curve, const MeshSpec& spec)
{
    if (spec.n < 4) throw std::invalid_argument("build_mesh: n < 4");
    Mesh m;
    m.curve = curve;
    m.spec = spec;
    if (curve->has_corners() && spec.kind == MeshKind::GlobalEquispaced && spec.sigmoid_order < 2
        && !curve->is_open)
        throw std::invalid_argument("build_mesh: corners require sigmoid_order >= 2 on global meshes");

    if (spec.kind == MeshKind::GlobalEquispaced) {
        int N = 2 * spec.n;
        double h = kPi / spec.n;
        m.nodes.reserve(N);
        for (int j = 0; j < N; ++j) {
            double t = j * h;
            CurvePoint p = graded_point(*curve, spec.sigmoid_order, t);
            m.nodes.push_back(frame_from_point(t, p));
            m.weights.push_back(h);
            if (spec.sigmoid_order >= 2 && curve->has_corners()) {
                // record w, w' for the weighted formulations
                // (recomputed here to store the samples)
                double T0, T1;
                std::vector<double> T = curve->corner_params;
                T0 = T.back() - kTwoPi; T1 = T.front();
                for (size_t q = 0; q + 1 < T.size(); ++q)
                    if (t >= T[q] && t <= T[q + 1]) { T0 = T[q]; T1 = T[q + 1]; }
                if (t >= T.back()) { T0 = T.back(); T1 = T.front() + kTwoPi; }
                else if (t <= T.front()) { T0 = T.back() - kTwoPi; T1 = T.front(); }
                SigmoidValue s = sigmoid_map(spec.sigmoid_order, T0, T1, t);
                m.w_samples.push_back(s.w);
                m.dw_samples.push_back(s.dw);
            } else {
                m.w_samples.push_back(t);
                m.dw_samples.push_back(1.0);
            }
            m.panel_of.push_back(-1);
            for (double c : curve->corner_params)
                if (std::abs(t - c) < 1e-13 || std::abs(t - c - kTwoPi) < 1e-13)
                    m.corner_nodes.push_back(j);
        }
        return m;
    }

    // Chebyshev panels
    std::vector<std::pair<double, double>> segments;
    if (curve->has_corners() && !curve->is_open) {
        auto T = curve->corner_params;
        for (size_t j = 0; j < T.size(); ++j) {
            double a = T[j];
            double b = (j + 1 < T.size()) ? T[j + 1] : T[0] + kTwoPi;
            segments.push_back({a, b});
        }
    } else {
        segments.push_back({0.0, kTwoPi});
    }
    // distribute base panels over segments proportionally
    std::vector<Panel> panels;
    int total = std::max(spec.panels, int(segments.size()));
    for (size_t s = 0; s < segments.size(); ++s) {
        auto [a, b] = segments[s];
        int k = std::max(1, int(std::lround(double(total) * (b - a) / kTwoPi)));
        if (segments.size() == 1) k = total;
        double w = (b - a) / k;
        for (int q = 0; q < k; ++q) panels.push_back({a + q * w, a + (q + 1) * w, 0, 0});
    }
    // dyadic refinement toward corners (segment endpoints are corners)
    if (spec.dyadic_levels > 0 && curve->has_corners()) {
        auto touches_corner = [&](const Panel& p, bool& at_a, bool& at_b) {
            at_a = at_b = false;
            for (double c : curve->corner_params) {
                for (double shift : {0.0, kTwoPi, -kTwoPi}) {
                    if (std::abs(p.a - (c + shift)) < 1e-12) at_a = true;
                    if (std::abs(p.b - (c + shift)) < 1e-12) at_b = true;
                }
            }
        };
        for (int lev = 0; lev < spec.dyadic_levels; ++lev) {
            std::vector<Panel> next;
            for (auto& p : panels) {
                bool aa, bb;
                touches_corner(p, aa, bb);
                if (aa) {
                    double mid = 0.5 * (p.a + p.b);
                    next.push_back({p.a, mid, 0, 0});
                    next.push_back({mid, p.b, 0, 0});
                } else if (bb) {
                    double mid = 0.5 * (p.a + p.b);
                    next.push_back({p.a, mid, 0, 0});
                    next.push_back({mid, p.b, 0, 0});
                } else {
                    next.push_back(p);
                }
            }
            panels.swap(next);
        }
    }
    // nodes: first-kind Chebyshev points per panel, Fejer weights
    int nr = spec.n;
    std::vector<double> fw(nr);
    for (int j = 1; j <= nr; ++j) {
        double th = (2 * j - 1) * kPi / (2 * nr);
        double s = 0;
        for (int q = 1; q <= nr / 2; ++q) s += std::cos(2 * q * th) / (4.0 * q * q - 1.0);
        fw[j - 1] = 2.0 / nr * (1.0 - 2.0 * s);
    }
    for (auto& p : panels) {
        p.first = int(m.nodes.size());
        p.count = nr;
        double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
        for (int j = 1; j <= nr; ++j) {
            double th = (2 * j - 1) * kPi / (2 * nr);
            double t = mid - half * std::cos(th);
            CurvePoint cp = curve->eval(wrap2pi(t));
            m.nodes.push_back(frame_from_point(wrap2pi(t), cp));
            m.nodes.back().t = t; // keep unwrapped panel parameter
            m.weights.push_back(fw[j - 1] * half);
            m.w_samples.push_back(t);
            m.dw_samples.push_back(1.0);
            m.panel_of.push_back(int(&p - panels.data()));
        }
    }
    m.panels = panels;
    return m;
}

double signed_area(const ParamCurve& c, int nquad)
{
    double h = kTwoPi / nquad, area = 0;
    for (int j = 0; j < nquad; ++j) {
        CurvePoint p = c.eval(j * h);
        area += 0.5 * (p.x.x() * p.d1.y() - p.x.y() * p.d1.x()) * h;
    }
    return area;
}

} // namespace ebie::geom
