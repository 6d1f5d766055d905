#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ebie/geometry.hpp"

#include <cmath>
#include <numbers>

using namespace ebie::geom;
constexpr double kPi = std::numbers::pi;

TEST_CASE("catalog basics")
{
    for (const auto& name : curve_catalog_names()) {
        auto c = curve_catalog(name);
        CHECK(c.name == name);
    }
    CHECK_THROWS_AS((void)curve_catalog("nope"), std::invalid_argument);

    auto sf = curve_catalog("starfish");
    auto p = sf.eval(0.0);
    CHECK(p.x.x() == doctest::Approx(1.0)); // r(0) = 1 + sin(0)/4
    CHECK(p.x.y() == doctest::Approx(0.0));

    auto td = curve_catalog("teardrop");
    auto q = td.eval(0.0);
    CHECK(q.x.norm() < 1e-15);
    CHECK(td.corner_params == std::vector<double>{0.0});
}

TEST_CASE("catalog derivative consistency (finite differences)")
{
    for (const auto& name : curve_catalog_names()) {
        auto c = curve_catalog(name);
        for (double t : {0.31, 1.7, 2.9, 4.2, 5.8}) {
            double h = 1e-6;
            auto pm = c.eval(t - h), pp = c.eval(t + h), p = c.eval(t);
            double h2 = 1e-4;
            auto qm = c.eval(t - h2), qp = c.eval(t + h2);
            Vec2 d1 = (pp.x - pm.x) / (2 * h);
            Vec2 d2 = (qp.x - 2 * p.x + qm.x) / (h2 * h2);
            CHECK((d1 - p.d1).norm() < 1e-7 * std::max(1.0, p.d1.norm()));
            CHECK((d2 - p.d2).norm() < 2e-4 * std::max(1.0, p.d2.norm()));
        }
    }
}

TEST_CASE("closed catalog curves are counterclockwise")
{
    for (const auto& name : {"circle", "starfish", "kite", "cavity", "teardrop", "boomerang"}) {
        auto c = curve_catalog(name);
        CHECK(signed_area(c) > 0.0);
    }
}

TEST_CASE("circle frames: curvature 1, unit jacobian")
{
    auto c = std::make_shared<ParamCurve>(curve_catalog("circle"));
    MeshSpec spec;
    spec.n = 8;
    auto m = build_mesh(c, spec);
    CHECK(m.size() == 16);
    for (const auto& f : m.nodes) {
        CHECK(f.jac == doctest::Approx(1.0));
        CHECK(f.curvature == doctest::Approx(1.0));
    }
}

TEST_CASE("frame orthonormality and orientation")
{
    for (const auto& name : {"starfish", "kite", "cavity"}) {
        auto c = std::make_shared<ParamCurve>(curve_catalog(name));
        MeshSpec spec;
        spec.n = 24;
        auto m = build_mesh(c, spec);
        for (const auto& f : m.nodes) {
            CHECK(std::abs(f.tangent.norm() - 1.0) < 1e-14);
            CHECK(std::abs(f.normal.norm() - 1.0) < 1e-14);
            CHECK(std::abs(f.tangent.dot(f.normal)) < 1e-14);
            // t = (-n2, n1)
            CHECK(std::abs(f.tangent.x() + f.normal.y()) < 1e-14);
            CHECK(std::abs(f.tangent.y() - f.normal.x()) < 1e-14);
        }
    }
}

TEST_CASE("rotation index: integral of curvature is 2 pi on smooth curves")
{
    for (const auto& name : {"circle", "starfish", "kite", "cavity"}) {
        auto c = std::make_shared<ParamCurve>(curve_catalog(name));
        MeshSpec spec;
        spec.n = 256;
        auto m = build_mesh(c, spec);
        double s = 0;
        for (int j = 0; j < m.size(); ++j)
            s += m.nodes[j].curvature * m.nodes[j].jac * m.weights[j];
        CHECK(std::abs(s - 2 * kPi) < 1e-10);
    }
}

TEST_CASE("sigmoid map endpoints, midpoint, and vanishing derivatives")
{
    double T0 = 0.0, T1 = 2 * kPi;
    for (int p : {2, 3, 4, 5}) {
        CHECK(sigmoid_map(p, T0, T1, T0).w == doctest::Approx(T0));
        CHECK(sigmoid_map(p, T0, T1, T1).w == doctest::Approx(T1));
        CHECK(sigmoid_map(p, T0, T1, kPi).w == doctest::Approx(kPi)); // symmetry
        CHECK(sigmoid_map(p, T0, T1, T0).dw == doctest::Approx(0.0));
        CHECK(sigmoid_map(p, T0, T1, T1).dw == doctest::Approx(0.0));
    }
    // p = 3: w'(T0) = w''(T0) = 0 confirmed by finite-difference decay O(h^2)
    double prev = 1e300;
    for (double h : {1e-1, 1e-2, 1e-3}) {
        double w1 = sigmoid_map(3, T0, T1, T0 + h).w;
        double fd = (w1 - T0) / h; // ~ w'(T0) + O(h) terms; decays like h^2
        CHECK(fd < prev);
        CHECK(fd < 3 * h * h * sigmoid_map(3, T0, T1, kPi).dw * 10 + 1e-2 * h);
        prev = fd;
    }
    CHECK_THROWS_AS((void)sigmoid_map(3, 0.0, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("sigmoid map is monotone")
{
    for (int p : {2, 3, 5}) {
        double prev = -1;
        for (int i = 0; i <= 1000; ++i) {
            double t = 2 * kPi * i / 1000.0;
            double w = sigmoid_map(p, 0.0, 2 * kPi, t).w;
            CHECK(w >= prev);
            prev = w;
        }
    }
}

TEST_CASE("sigmoid derivative consistency (finite differences)")
{
    for (int p : {2, 3, 4}) {
        for (double t : {0.7, 2.1, 4.4, 5.9}) {
            double h = 1e-6;
            auto sm = sigmoid_map(p, 0.0, 2 * kPi, t - h);
            auto sp = sigmoid_map(p, 0.0, 2 * kPi, t + h);
            auto s = sigmoid_map(p, 0.0, 2 * kPi, t);
            CHECK((sp.w - sm.w) / (2 * h) == doctest::Approx(s.dw).epsilon(1e-6));
            CHECK((sp.w - 2 * s.w + sm.w) / (h * h) == doctest::Approx(s.ddw).epsilon(2e-3));
        }
    }
}

TEST_CASE("starfish chebyshev panel mesh: 8 panels x 16 nodes")
{
    auto c = std::make_shared<ParamCurve>(curve_catalog("starfish"));
    MeshSpec spec;
    spec.kind = MeshKind::ChebyshevPanels;
    spec.n = 16;
    spec.panels = 8;
    auto m = build_mesh(c, spec);
    CHECK(m.size() == 128);
    CHECK(int(m.panels.size()) == 8);
    for (const auto& p : m.panels) CHECK(p.b - p.a == doctest::Approx(kPi / 4));
    // positive weights
    for (double w : m.weights) CHECK(w > 0.0);
}

TEST_CASE("graded teardrop mesh accumulates nodes at the corner")
{
    auto c = std::make_shared<ParamCurve>(curve_catalog("teardrop"));
    MeshSpec graded;
    graded.n = 64;
    graded.sigmoid_order = 3;
    auto mg = build_mesh(c, graded);
    // distance of the nearest non-corner node image to the corner (0,0)
    double dmin = 1e300;
    for (int j = 1; j < mg.size(); ++j) dmin = std::min(dmin, mg.nodes[j].x.norm());
    double h_uniform = 2 * kPi / 128;
    CHECK(dmin < 0.05 * h_uniform); // much closer than a uniform mesh would be
    CHECK(mg.corner_nodes.size() == 1);
    CHECK(mg.corner_nodes[0] == 0);
}

TEST_CASE("mesh validation errors")
{
    auto c = std::make_shared<ParamCurve>(curve_catalog("teardrop"));
    MeshSpec spec;
    spec.n = 2;
    CHECK_THROWS_AS((void)build_mesh(c, spec), std::invalid_argument);
    spec.n = 16;
    spec.sigmoid_order = 0;
    CHECK_THROWS_AS((void)build_mesh(c, spec), std::invalid_argument);
}

TEST_CASE("teardrop dyadic panel refinement, corners at panel ends")
{
    auto c = std::make_shared<ParamCurve>(curve_catalog("teardrop"));
    MeshSpec spec;
    spec.kind = MeshKind::ChebyshevPanels;
    spec.n = 8;
    spec.panels = 8;
    spec.dyadic_levels = 2;
    auto m = build_mesh(c, spec);
    CHECK(int(m.panels.size()) == 8 + 2 * 2);
    // no corner strictly inside a panel
    for (const auto& p : m.panels) {
        for (double corner : {0.0, 2 * kPi}) {
            CHECK(!(p.a + 1e-12 < corner && corner < p.b - 1e-12));
        }
    }
}

TEST_CASE("open arcs: flat endpoints and vanishing jacobian")
{
    auto c = curve_catalog("flat");
    CHECK(c.is_open);
    auto p0 = c.eval(0.0);
    CHECK(p0.x.x() == doctest::Approx(-1.0));
    auto ppi = c.eval(kPi);
    CHECK(ppi.x.x() == doctest::Approx(1.0));
    CHECK(p0.d1.norm() < 1e-15);
    // interior jacobian = |sin t|
    auto pm = c.eval(kPi / 2);
    CHECK(pm.d1.norm() == doctest::Approx(1.0));
}
