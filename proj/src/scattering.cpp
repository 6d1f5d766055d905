#include "ebie/scattering.hpp"

#include "ebie/parallel.hpp"
#include "ebie/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ebie::scat {

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 rot90(const Vec2& v) { return {-v.y(), v.x()}; }
Vec2c rot90c(const Vec2c& v) { return {-v.y(), v.x()}; }

cxd phi0_of(cxd k, double r) { return cxd(0, 0.25) * sf::hankel1_seq(0, k * r)[0]; }

// gradient and Hessian of phi0(k |x - x0|) in x
Vec2c grad_phi0(cxd k, const Vec2& x, const Vec2& x0)
{
    Vec2 rv = x - x0;
    double r = rv.norm();
    auto H = sf::hankel1_seq(1, k * r);
    cxd dg = -cxd(0, 0.25) * k * H[1];
    return dg * Vec2c(rv.x() / r, rv.y() / r);
}

Mat2 hess_phi0(cxd k, const Vec2& x, const Vec2& x0)
{
    Vec2 rv = x - x0;
    double r = rv.norm();
    Vec2 rh = rv / r;
    auto H = sf::hankel1_seq(1, k * r);
    cxd dg = -cxd(0, 0.25) * k * H[1];
    cxd ddg = -cxd(0, 0.25) * k * k * H[0] + cxd(0, 0.25) * k * H[1] / r;
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = ddg * rh(i) * rh(j) + dg / r * ((i == j ? 1.0 : 0.0) - rh(i) * rh(j));
    return out;
}

cxd farfield_constant(double k) { return std::exp(cxd(0, kPi / 4)) / std::sqrt(8 * kPi * k); }

} // namespace

IncidentField point_source(const Vec2& x0, const Vec2c& c, const MaterialParams& m)
{
    IncidentField f;
    f.u = [x0, c, m](const Vec2& x) { return Vec2c(kern::navier_green(x, x0, m) * c); };
    f.grad = [x0, c, m](const Vec2& x) {
        auto G = kern::navier_green_grad(x, x0, m);
        Mat2 g;
        for (int i = 0; i < 2; ++i)
            for (int kk = 0; kk < 2; ++kk) g(i, kk) = G[kk](i, 0) * c(0) + G[kk](i, 1) * c(1);
        return g;
    };
    const cxd w2 = m.omega * m.omega;
    Vec2c cq = rot90c(c);
    f.phi_p = [x0, c, m, w2](const Vec2& x) {
        Vec2c gp = grad_phi0(m.kp, x, x0);
        return cxd(-1.0) / w2 * (gp(0) * c(0) + gp(1) * c(1));
    };
    f.phi_s = [x0, cq, m, w2](const Vec2& x) {
        Vec2c gs = grad_phi0(m.ks, x, x0);
        return cxd(-1.0) / w2 * (gs(0) * cq(0) + gs(1) * cq(1));
    };
    f.grad_phi_p = [x0, c, m, w2](const Vec2& x) {
        return Vec2c(cxd(-1.0) / w2 * (hess_phi0(m.kp, x, x0) * c));
    };
    f.grad_phi_s = [x0, cq, m, w2](const Vec2& x) {
        return Vec2c(cxd(-1.0) / w2 * (hess_phi0(m.ks, x, x0) * cq));
    };
    return f;
}

IncidentField plane_wave(const Vec2& d, const Vec2& p, const MaterialParams& m)
{
    if (std::abs(d.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("plane_wave: |d| must be 1");
    IncidentField f;
    const double dp = d.dot(p);
    const Vec2 q = p - dp * d; // shear polarization
    const double as = 1.0 / m.mu, ap = 1.0 / m.lam2mu();
    const cxd iks = cxd(0, 1) * m.ks, ikp = cxd(0, 1) * m.kp;
    f.u = [=](const Vec2& x) {
        cxd es = std::exp(iks * d.dot(x)), ep = std::exp(ikp * d.dot(x));
        return Vec2c(as * es * Vec2c(q.x(), q.y()) + ap * dp * ep * Vec2c(d.x(), d.y()));
    };
    f.grad = [=](const Vec2& x) {
        cxd es = std::exp(iks * d.dot(x)), ep = std::exp(ikp * d.dot(x));
        Mat2 g;
        for (int i = 0; i < 2; ++i)
            for (int kk = 0; kk < 2; ++kk)
                g(i, kk) = as * iks * d(kk) * es * q(i) + ap * ikp * d(kk) * ep * dp * d(i);
        return g;
    };
    const Vec2 dperp(d.y(), -d.x());
    const cxd c0 = q.dot(dperp) / iks;
    f.phi_p = [=](const Vec2& x) { return ap * dp / ikp * std::exp(ikp * d.dot(x)); };
    f.phi_s = [=](const Vec2& x) { return as * c0 * std::exp(iks * d.dot(x)); };
    f.grad_phi_p = [=](const Vec2& x) {
        cxd v = ap * dp * std::exp(ikp * d.dot(x));
        return Vec2c(v * d.x(), v * d.y());
    };
    f.grad_phi_s = [=](const Vec2& x) {
        cxd v = as * c0 * iks * std::exp(iks * d.dot(x));
        return Vec2c(v * d.x(), v * d.y());
    };
    return f;
}

IncidentField scaled(const IncidentField& f, cxd s)
{
    IncidentField out;
    out.u = [f, s](const Vec2& x) { return Vec2c(s * f.u(x)); };
    out.grad = [f, s](const Vec2& x) { return Mat2(s * f.grad(x)); };
    out.phi_p = [f, s](const Vec2& x) { return s * f.phi_p(x); };
    out.phi_s = [f, s](const Vec2& x) { return s * f.phi_s(x); };
    out.grad_phi_p = [f, s](const Vec2& x) { return Vec2c(s * f.grad_phi_p(x)); };
    out.grad_phi_s = [f, s](const Vec2& x) { return Vec2c(s * f.grad_phi_s(x)); };
    return out;
}

Vec2c traction_of(const IncidentField& f, const geom::GeometricFrame& fr, const MaterialParams& m)
{
    return kern::traction(m, fr.normal, fr.tangent, f.grad(fr.x));
}

double ff_error(const FarFieldPattern& a, const FarFieldPattern& b)
{
    double e = 0;
    for (size_t i = 0; i < a.angles.size(); ++i) {
        e = std::max(e, (a.up[i] - b.up[i]).norm());
        e = std::max(e, (a.us[i] - b.us[i]).norm());
    }
    return e;
}

FarFieldPattern point_source_far_field(const Vec2& x0, const Vec2c& c, const MaterialParams& m,
                                       int ndir)
{
    double kp = m.kp.real(), ks = m.ks.real();
    cxd Cp = farfield_constant(kp) / m.lam2mu();
    cxd Cs = farfield_constant(ks) / m.mu;
    FarFieldPattern out;
    for (int i = 0; i < ndir; ++i) {
        double th = 2 * kPi * i / ndir;
        Vec2 xh(std::cos(th), std::sin(th));
        Vec2 xp(xh.y(), -xh.x());
        cxd ep = std::exp(cxd(0, -kp) * xh.dot(x0));
        cxd es = std::exp(cxd(0, -ks) * xh.dot(x0));
        cxd ap = Cp * (xh.x() * c(0) + xh.y() * c(1)) * ep;
        cxd bs = Cs * (xp.x() * c(0) + xp.y() * c(1)) * es;
        out.angles.push_back(th);
        out.up.push_back(Vec2c(ap * xh.x(), ap * xh.y()));
        out.us.push_back(Vec2c(bs * xp.x(), bs * xp.y()));
    }
    return out;
}

FarFieldPattern navier_far_field(const nys::Representation& rep, const VectorXcd& x,
                                 const geom::Mesh& mesh, const MaterialParams& m, int ndir)
{
    const int N = mesh.size();
    double kp = m.kp.real(), ks = m.ks.real();
    cxd Cp = farfield_constant(kp) / m.lam2mu();
    cxd Cs = farfield_constant(ks) / m.mu;
    VectorXcd lam = (rep.sl_density.size() > 0) ? VectorXcd(rep.sl_density * x)
                                                : VectorXcd(VectorXcd::Zero(2 * N));
    VectorXcd g = (rep.dl_density.size() > 0) ? VectorXcd(rep.dl_density * x)
                                              : VectorXcd(VectorXcd::Zero(2 * N));
    FarFieldPattern out;
    out.angles.resize(ndir);
    out.up.resize(ndir);
    out.us.resize(ndir);
    parallel_for(ndir, [&](int i) {
        double th = 2 * kPi * i / ndir;
        Vec2 xh(std::cos(th), std::sin(th));
        Vec2 xp(xh.y(), -xh.x());
        cxd accp = 0.0, accs = 0.0;
        for (int j = 0; j < N; ++j) {
            const auto& nd = mesh.nodes[j];
            double w = mesh.weights[j];
            cxd ep = std::exp(cxd(0, -kp) * xh.dot(nd.x));
            cxd es = std::exp(cxd(0, -ks) * xh.dot(nd.x));
            Vec2c lj(lam(2 * j), lam(2 * j + 1));
            Vec2c gj(g(2 * j), g(2 * j + 1));
            // single layer
            accp += Cp * w * (xh.x() * lj(0) + xh.y() * lj(1)) * ep;
            accs += Cs * w * (xp.x() * lj(0) + xp.y() * lj(1)) * es;
            // double layer
            cxd ng = nd.normal.x() * gj(0) + nd.normal.y() * gj(1);
            cxd xg = xh.x() * gj(0) + xh.y() * gj(1);
            cxd tg = nd.tangent.x() * gj(0) + nd.tangent.y() * gj(1);
            cxd xpg = xp.x() * gj(0) + xp.y() * gj(1);
            double nxh = nd.normal.dot(xh);
            accp += -cxd(0, kp) * Cp * w * nd.jac * (m.lambda * ng + 2 * m.mu * nxh * xg) * ep;
            accs += -cxd(0, ks) * Cs * w * nd.jac * (2 * m.mu * nxh * xpg + m.mu * tg) * es;
        }
        out.angles[i] = th;
        out.up[i] = Vec2c(accp * xh.x(), accp * xh.y());
        out.us[i] = Vec2c(accs * xp.x(), accs * xp.y());
    });
    return out;
}

Vec2c navier_potential(const nys::Representation& rep, const VectorXcd& x, const geom::Mesh& mesh,
                       const MaterialParams& m, const Vec2& z)
{
    const int N = mesh.size();
    VectorXcd lam = (rep.sl_density.size() > 0) ? VectorXcd(rep.sl_density * x)
                                                : VectorXcd(VectorXcd::Zero(2 * N));
    VectorXcd g = (rep.dl_density.size() > 0) ? VectorXcd(rep.dl_density * x)
                                              : VectorXcd(VectorXcd::Zero(2 * N));
    Vec2c acc = Vec2c::Zero();
    kern::PFrame Z{0.0, z, Vec2(1, 0), Vec2(0, 1), 1.0};
    for (int j = 0; j < N; ++j) {
        double w = mesh.weights[j];
        Vec2c lj(lam(2 * j), lam(2 * j + 1));
        Vec2c gj(g(2 * j), g(2 * j + 1));
        if (lj.norm() > 0) acc += w * (kern::navier_green(z, mesh.nodes[j].x, m) * lj);
        if (gj.norm() > 0) {
            Mat2 P = kern::kernel_K(Z, kern::pframe(mesh.nodes[j]), m, kern::Part::Full, true);
            acc += w * (P * gj);
        }
    }
    return acc;
}

VectorXcd navier_rhs(const nys::NavierSystem& sys, const geom::Mesh& mesh,
                     const MaterialParams& m, const IncidentField& data)
{
    const int N = mesh.size();
    VectorXcd rhs(2 * N);
    if (sys.rhs == nys::RhsForm::DirichletTrace) {
        for (int j = 0; j < N; ++j) {
            Vec2c v = data.u(mesh.nodes[j].x);
            rhs(2 * j) = v(0);
            rhs(2 * j + 1) = v(1);
        }
        if (sys.tag == "V") {
            for (int j : mesh.corner_nodes) {
                rhs(2 * j) = 0.0; // pinned vanishing weighted density
                rhs(2 * j + 1) = 0.0;
            }
        }
        return rhs;
    }
    if (sys.rhs == nys::RhsForm::NeumannTrace) {
        for (int j = 0; j < N; ++j) {
            Vec2c v = mesh.nodes[j].jac * traction_of(data, mesh.nodes[j], m);
            rhs(2 * j) = v(0);
            rhs(2 * j + 1) = v(1);
        }
        return rhs;
    }
    // DCFIER with prescribed scattered data s = -u_inc:
    // rhs = gamma u_inc - R (T u_inc) = -gamma s + R (T s)
    VectorXcd us(2 * N), ts(2 * N);
    for (int j = 0; j < N; ++j) {
        Vec2c v = data.u(mesh.nodes[j].x);
        Vec2c w = mesh.nodes[j].jac * traction_of(data, mesh.nodes[j], m);
        us(2 * j) = v(0);
        us(2 * j + 1) = v(1);
        ts(2 * j) = w(0);
        ts(2 * j + 1) = w(1);
    }
    return -us + sys.rhs_R * ts;
}

VectorXcd arc_rhs(const nys::ArcSystem& sys, const geom::Mesh& mesh, const MaterialParams& m,
                  const IncidentField& data)
{
    const int N = mesh.size();
    VectorXcd full(2 * N);
    if (sys.rhs == nys::RhsForm::DirichletTrace) {
        // first-kind arc equation: V[T u_tot] = gamma u_inc; the caller
        // passes data = u_inc (not negated)
        for (int j = 0; j < N; ++j) {
            Vec2c v = data.u(mesh.nodes[j].x);
            full(2 * j) = v(0);
            full(2 * j + 1) = v(1);
        }
    } else {
        // W[gamma u_tot] = -T u_inc (parameterized)
        for (int j = 0; j < N; ++j) {
            Vec2c v = -mesh.nodes[j].jac * traction_of(data, mesh.nodes[j], m);
            full(2 * j) = v(0);
            full(2 * j + 1) = v(1);
        }
    }
    return sys.rhs_R * full;
}

std::vector<ConvergenceRow> with_eoc(std::vector<ConvergenceRow> rows)
{
    for (size_t i = 0; i < rows.size(); ++i) {
        rows[i].eoc = 0.0;
        for (size_t j = 0; j < i; ++j) {
            if (rows[j].method == rows[i].method && rows[j].omega == rows[i].omega
                && rows[i].N == 2 * rows[j].N) {
                rows[i].eoc = std::log2(rows[j].eps / rows[i].eps);
            }
        }
    }
    return rows;
}

} // namespace ebie::scat
