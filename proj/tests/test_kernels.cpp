#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ebie/kernels.hpp"
#include "ebie/specfun.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ebie;
using namespace ebie::kern;
constexpr double kPi = std::numbers::pi;

namespace {

std::mt19937 rng(42);
Vec2 rand_point(double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> U(lo, hi);
    return {U(rng), U(rng)};
}

Vec2 rand_unit()
{
    std::uniform_real_distribution<double> U(0, 2 * kPi);
    double a = U(rng);
    return {std::cos(a), std::sin(a)};
}

Vec2 rot90v(const Vec2& v) { return {-v.y(), v.x()}; }

cxd phi0(cxd k, double r) { return cxd(0, 0.25) * sf::hankel1_seq(0, k * r)[0]; }

} // namespace

TEST_CASE("material wavenumbers")
{
    auto m = material(2.0, 1.0, 5.0);
    CHECK(std::abs(m.kp * m.kp - m.omega * m.omega / 4.0) < 1e-14);
    CHECK(std::abs(m.ks * m.ks - m.omega * m.omega / 1.0) < 1e-14);
    CHECK_THROWS((void)material(-3.0, 1.0, 1.0));
}

TEST_CASE("fundamental solution is symmetric")
{
    auto m = material(2.0, 1.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        Vec2 x = rand_point(), y = rand_point(2.0, 3.0);
        Mat2 a = navier_green(x, y, m);
        CHECK((a - a.transpose()).cwiseAbs().maxCoeff() < 1e-14);
        Mat2 b = navier_green(y, x, m);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("grad-grad term against finite differences of phi0 difference")
{
    auto m = material(2.0, 1.0, 5.0);
    Vec2 y(0.0, 0.0);
    Vec2 x(0.7 * std::cos(0.3), 0.7 * std::sin(0.3));
    auto psi = [&](const Vec2& p) {
        double r = (p - y).norm();
        return phi0(m.ks, r) - phi0(m.kp, r);
    };
    double h = 1e-4;
    Mat2 hess;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Vec2 ei = Vec2::Zero(), ej = Vec2::Zero();
            ei(i) = h;
            ej(j) = h;
            hess(i, j) = (psi(x + ei + ej) - psi(x + ei - ej) - psi(x - ei + ej)
                          + psi(x - ei - ej))
                         / (4 * h * h);
        }
    double r = (x - y).norm();
    Mat2 phi = navier_green(x, y, m);
    Mat2 expected = (phi0(m.ks, r) / m.mu) * Mat2::Identity() + hess / (m.omega * m.omega);
    CHECK((phi - expected).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("gradient of the fundamental solution against finite differences")
{
    auto m = material(2.0, 1.0, 3.0);
    Vec2 y(0.1, -0.2);
    Vec2 x(1.0, 0.6);
    auto G = navier_green_grad(x, y, m);
    double h = 1e-5;
    for (int k = 0; k < 2; ++k) {
        Vec2 e = Vec2::Zero();
        e(k) = h;
        Mat2 fd = (navier_green(x + e, y, m) - navier_green(x - e, y, m)) / (2 * h);
        CHECK((G[k] - fd).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("PDE residual of the fundamental solution (finite differences)")
{
    auto m = material(2.0, 1.0, 5.0);
    Vec2 y(0.0, 0.0);
    Vec2 x(0.9, 0.45);
    double h = 1e-3;
    auto u = [&](const Vec2& p) { return Eigen::Vector2cd(navier_green(p, y, m).col(0)); };
    Eigen::Vector2cd lap = (u(x + Vec2(h, 0)) + u(x - Vec2(h, 0)) + u(x + Vec2(0, h))
                            + u(x - Vec2(0, h)) - 4 * u(x))
                           / (h * h);
    auto div_u = [&](const Vec2& p) {
        Eigen::Vector2cd dx = (u(p + Vec2(h, 0)) - u(p - Vec2(h, 0))) / (2 * h);
        Eigen::Vector2cd dy = (u(p + Vec2(0, h)) - u(p - Vec2(0, h))) / (2 * h);
        return dx(0) + dy(1);
    };
    Eigen::Vector2cd graddiv;
    graddiv(0) = (div_u(x + Vec2(h, 0)) - div_u(x - Vec2(h, 0))) / (2 * h);
    graddiv(1) = (div_u(x + Vec2(0, h)) - div_u(x - Vec2(0, h))) / (2 * h);
    Eigen::Vector2cd res = m.mu * lap + (m.lambda + m.mu) * graddiv + m.omega * m.omega * u(x);
    CHECK(res.norm() < 1e-4);
}

TEST_CASE("traction operator basics")
{
    auto m = material(2.0, 1.0, 5.0);
    Vec2 n = rand_unit();
    Vec2 t = rot90v(n);
    CHECK(traction(m, n, t, Mat2::Zero()).norm() < 1e-15);
    auto tu = traction(m, n, t, Mat2::Identity());
    Eigen::Vector2cd expect = (2 * m.lambda + 2 * m.mu) * Eigen::Vector2cd(n.x(), n.y());
    CHECK((tu - expect).norm() < 1e-14);
}

TEST_CASE("traction of a point-source column against finite differences")
{
    auto m = material(2.0, 1.0, 5.0);
    Vec2 x0(0.1, 0.2);
    Vec2 x(1.1, -0.4);
    Vec2 n = rand_unit();
    Vec2 t = rot90v(n);
    auto G = navier_green_grad(x, x0, m);
    Mat2 grad;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) grad(i, j) = G[j](i, 0);
    auto tu = traction(m, n, t, grad);
    double h = 1e-5;
    Mat2 gfd;
    for (int j = 0; j < 2; ++j) {
        Vec2 e = Vec2::Zero();
        e(j) = h;
        Mat2 p = (navier_green(x + e, x0, m) - navier_green(x - e, x0, m)) / (2 * h);
        for (int i = 0; i < 2; ++i) gfd(i, j) = p(i, 0);
    }
    auto tu_fd = traction(m, n, t, gfd);
    CHECK((tu - tu_fd).norm() < 1e-6);
    // and against the assembled K^T kernel (unit Jacobian)
    PFrame X{0.0, x, n, t, 1.0};
    PFrame Y{1.0, x0, rand_unit(), rand_unit(), 1.0};
    Mat2 kt = kernel_KT(X, Y, m, Part::Full, true);
    CHECK(std::abs(kt(0, 0) - tu(0)) < 1e-12);
    CHECK(std::abs(kt(1, 0) - tu(1)) < 1e-12);
}

TEST_CASE("transpose duality KT(t,tau) = K(tau,t)^T")
{
    auto m = material(2.0, 1.0, 7.0);
    for (int trial = 0; trial < 100; ++trial) {
        PFrame X{0.3, rand_point(), rand_unit(), Vec2(), 1.7};
        PFrame Y{2.1, rand_point(2.0, 3.5), rand_unit(), Vec2(), 0.6};
        X.tan = rot90v(X.n);
        Y.tan = rot90v(Y.n);
        Mat2 kt = kernel_KT(X, Y, m, Part::Full, true);
        PFrame X2 = Y, Y2 = X;
        Mat2 k = kernel_K(X2, Y2, m, Part::Full, true);
        CHECK((kt - k.transpose()).cwiseAbs().maxCoeff()
              < 1e-13 * std::max(1.0, k.cwiseAbs().maxCoeff()));
        Mat2 kt0 = kernel_KT(X, Y, m, Part::Full, false);
        Mat2 k0 = kernel_K(X2, Y2, m, Part::Full, false);
        CHECK((kt0 - k0.transpose()).cwiseAbs().maxCoeff()
              < 1e-13 * std::max(1.0, k0.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("K kernel against finite-difference traction of Phi columns")
{
    auto m = material(2.0, 1.0, 5.0);
    Vec2 x(1.3, 0.4), y(-0.2, 0.1);
    Vec2 ny = rand_unit();
    Vec2 ty = rot90v(ny);
    PFrame X{0.0, x, rand_unit(), rand_unit(), 1.0};
    PFrame Y{1.0, y, ny, ty, 1.0};
    Mat2 P = kernel_K(X, Y, m, Part::Full, true);
    double h = 1e-5;
    for (int i = 0; i < 2; ++i) {
        Mat2 grad;
        for (int j = 0; j < 2; ++j) {
            Vec2 e = Vec2::Zero();
            e(j) = h;
            Mat2 p = (navier_green(x, y + e, m) - navier_green(x, y - e, m)) / (2 * h);
            for (int a = 0; a < 2; ++a) grad(a, j) = p(a, i);
        }
        auto tu = traction(m, ny, ty, grad);
        CHECK(std::abs(P(i, 0) - tu(0)) < 1e-7);
        CHECK(std::abs(P(i, 1) - tu(1)) < 1e-7);
    }
}

TEST_CASE("W kernel against finite differences of the K kernel")
{
    auto m = material(2.0, 1.0, 5.0);
    Vec2 x(1.2, 0.3), y(-0.3, 0.2);
    Vec2 nx = rand_unit(), ny = rand_unit();
    Vec2 tx = rot90v(nx), ty = rot90v(ny);
    PFrame X{0.0, x, nx, tx, 1.0};
    PFrame Y{1.0, y, ny, ty, 1.0};
    Mat2 W = kernel_W(X, Y, m, Part::Full, true);
    double h = 1e-5;
    Mat2 dP[2];
    for (int k = 0; k < 2; ++k) {
        Vec2 e = Vec2::Zero();
        e(k) = h;
        PFrame Xp = X, Xm = X;
        Xp.x += e;
        Xm.x -= e;
        dP[k] = (kernel_K(Xp, Y, m, Part::Full, true) - kernel_K(Xm, Y, m, Part::Full, true))
                / (2 * h);
    }
    Mat2 Wfd;
    for (int j = 0; j < 2; ++j) {
        cxd div = dP[0](0, j) + dP[1](1, j);
        cxd curl = dP[0](1, j) - dP[1](0, j);
        for (int i = 0; i < 2; ++i) {
            cxd ng = nx(0) * dP[0](i, j) + nx(1) * dP[1](i, j);
            Wfd(i, j) = m.lambda * div * nx(i) + 2.0 * m.mu * ng - m.mu * curl * tx(i);
        }
    }
    CHECK((W - Wfd).cwiseAbs().maxCoeff() < 1e-5 * W.cwiseAbs().maxCoeff());
}

TEST_CASE("small-frequency smallness of K - K0")
{
    auto m = material(2.0, 1.0, 0.1);
    auto curve = geom::curve_catalog("circle");
    double t = 1.0, tau = t - 1e-3;
    auto X = pframe(geom::frame_of(curve, t)), Y = pframe(geom::frame_of(curve, tau));
    Mat2 kd = kernel_K(X, Y, m, Part::Full, true);
    Mat2 k0 = kernel_K(X, Y, m, Part::Full, false);
    CHECK((kd - k0).cwiseAbs().maxCoeff() < 1e-2 * k0.cwiseAbs().maxCoeff());
}

TEST_CASE("V kernel at the antipodal point matches the free-space value")
{
    auto m = material(2.0, 1.0, 1.0);
    auto c = std::make_shared<geom::ParamCurve>(geom::curve_catalog("circle"));
    geom::MeshSpec spec;
    spec.n = 16;
    auto mesh = geom::build_mesh(c, spec);
    auto X = pframe(mesh.nodes[0]);
    auto Y = pframe(mesh.nodes[16]);
    Mat2 v = kernel_V(X, Y, m, Part::Full, true);
    Mat2 phi = navier_green(X.x, Y.x, m);
    CHECK((v - phi).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("static V0 log coefficient")
{
    auto m = material(2.0, 1.0, 1.0);
    PFrame X{0.0, Vec2(0.3, 0.0), Vec2(1, 0), Vec2(0, 1), 1.0};
    PFrame Y{0.1, Vec2(0.0, 0.0), Vec2(1, 0), Vec2(0, 1), 1.0};
    Mat2 lc = kernel_V(X, Y, m, Part::LogCoeff, false);
    double c1 = (m.lambda + 3 * m.mu) / (4 * kPi * m.mu * m.lam2mu());
    CHECK(std::abs(lc(0, 0).real() + 0.5 * c1) < 1e-15);
    CHECK(std::abs(lc(0, 1)) < 1e-15);
}

TEST_CASE("rhat rhat^T is a projection")
{
    Vec2 d = rand_unit();
    Eigen::Matrix2d G = d * d.transpose();
    CHECK(((G * G) - G).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("km_log_split reassembles the kernels (starfish, omega=16)")
{
    auto m = material(1.0, 1.0, 16.0);
    auto curve = geom::curve_catalog("starfish");
    for (SplitKind kind : {SplitKind::V, SplitKind::KmK0, SplitKind::KTmKT0, SplitKind::WmW0}) {
        for (double dt : {1e-3, 0.02, 0.2, 1.5, kPi}) {
            double t = 0.7, tau = t - dt;
            auto X = pframe(geom::frame_of(curve, t));
            auto Y = pframe(geom::frame_of(curve, tau));
            auto sp = km_log_split(kind, X, Y, m);
            Mat2 recon = sp.log_coeff * std::log(4 * std::pow(std::sin(dt / 2), 2)) + sp.smooth;
            Mat2 direct;
            switch (kind) {
            case SplitKind::V: direct = kernel_V(X, Y, m, Part::Full, true); break;
            case SplitKind::KmK0:
                direct = kernel_K(X, Y, m, Part::Full, true) - kernel_K(X, Y, m, Part::Full, false);
                break;
            case SplitKind::KTmKT0:
                direct = kernel_KT(X, Y, m, Part::Full, true)
                         - kernel_KT(X, Y, m, Part::Full, false);
                break;
            case SplitKind::WmW0:
                direct = kernel_W(X, Y, m, Part::Full, true) - kernel_W(X, Y, m, Part::Full, false);
                break;
            }
            double scale = std::max(1.0, direct.cwiseAbs().maxCoeff());
            CHECK((recon - direct).cwiseAbs().maxCoeff() < 1e-11 * scale);
        }
    }
}

TEST_CASE("V log coefficient diagonal limit")
{
    auto m = material(2.0, 1.0, 3.0);
    auto c = std::make_shared<geom::ParamCurve>(geom::curve_catalog("circle"));
    geom::MeshSpec spec;
    spec.n = 16;
    auto mesh = geom::build_mesh(c, spec);
    auto d = km_split_diagonal(SplitKind::V, mesh, 0.5, m);
    double expect = -(m.lambda + 3 * m.mu) / (8 * kPi * m.mu * m.lam2mu());
    CHECK(std::abs(d.log_coeff(0, 0).real() - expect) < 1e-10);
    CHECK(std::abs(d.log_coeff(0, 1)) < 1e-10);
}

TEST_CASE("W - W0 log coefficient is continuous across the diagonal")
{
    auto m = material(1.0, 1.0, 16.0);
    auto curve = geom::curve_catalog("starfish");
    double t = 1.3;
    auto X = pframe(geom::frame_of(curve, t));
    auto Yp = pframe(geom::frame_of(curve, t + 1e-4));
    auto Ym = pframe(geom::frame_of(curve, t - 1e-4));
    Mat2 lp = km_log_split(SplitKind::WmW0, X, Yp, m).log_coeff;
    Mat2 lm = km_log_split(SplitKind::WmW0, X, Ym, m).log_coeff;
    CHECK((lp - lm).cwiseAbs().maxCoeff() < 1e-3 * std::max(1.0, lp.cwiseAbs().maxCoeff()));
}

TEST_CASE("complex frequency continuity")
{
    auto m1 = material(2.0, 1.0, cxd(5.0, 0.0));
    auto m2 = material(2.0, 1.0, cxd(5.0, 1e-8));
    PFrame X{0.0, Vec2(1.0, 0.2), Vec2(1, 0), Vec2(0, 1), 1.0};
    PFrame Y{0.4, Vec2(0.0, 0.0), Vec2(0, 1), Vec2(-1, 0), 1.0};
    using KernelFn = Mat2 (*)(const PFrame&, const PFrame&, const MaterialParams&, Part, bool);
    for (KernelFn kfun : {&kernel_V, &kernel_K, &kernel_KT, &kernel_W}) {
        Mat2 a = kfun(X, Y, m1, Part::Full, true);
        Mat2 b = kfun(X, Y, m2, Part::Full, true);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-6 * a.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("static K0 Cauchy structure on the unit circle")
{
    auto m = material(2.0, 1.0, 1.0);
    auto c = std::make_shared<geom::ParamCurve>(geom::curve_catalog("circle"));
    geom::MeshSpec spec;
    spec.n = 32;
    auto mesh = geom::build_mesh(c, spec);
    double t = 0.7;
    auto X = pframe(geom::frame_at(mesh, t));
    for (double dt : {1e-2, 1e-3, 1e-4}) {
        auto Y = pframe(geom::frame_at(mesh, t - dt));
        Mat2 s = k0_smooth(X, Y, m, false);
        CHECK(s.cwiseAbs().maxCoeff() < 1.0);
    }
    Mat2 diag = k0_smooth_diagonal(mesh, t, m, false);
    auto Y = pframe(geom::frame_at(mesh, t - 1e-4));
    CHECK((k0_smooth(X, Y, m, false) - diag).cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("W0 Maue smooth kernel diagonal")
{
    auto c = std::make_shared<geom::ParamCurve>(geom::curve_catalog("starfish"));
    geom::MeshSpec spec;
    spec.n = 32;
    auto mesh = geom::build_mesh(c, spec);
    double t = 2.0;
    Mat2 diag = w0_maue_smooth_diagonal(mesh, t);
    auto X = pframe(geom::frame_at(mesh, t));
    auto Y = pframe(geom::frame_at(mesh, t - 1e-3));
    Mat2 s = w0_maue_smooth(X, Y);
    CHECK((s - diag).cwiseAbs().maxCoeff() < 1e-1);
    CHECK(diag.cwiseAbs().maxCoeff() < 10.0);
}
