#include "ebie/kernels.hpp"

#include "ebie/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ebie::kern {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = 0.57721566490153286060651209;

Vec2 rot90(const Vec2& v) { return {-v.y(), v.x()}; }

double log_factor(double dt) { return std::log(4.0 * std::pow(std::sin(0.5 * dt), 2)); }

// Radial coefficients of Phi = g1 I + g2 rhat rhat^T and the derivatives
// entering tractions of Phi and of the K kernel.
struct RadialCoeffs {
    cxd g1, g2;
    cxd dg1, dg2;   // gamma1', gamma2'
    cxd g2r;        // gamma2 / r
    cxd d, dd;      // div_x(Phi e_i) = d rhat_i, and d'
    cxd ddg1, ddg2; // gamma1'', gamma2''
    cxd dg2r;       // (gamma2/r)'
};

// g = (i/4) H0(kr) and its radial derivatives for one wavenumber.
// Part::LogCoeff substitutes H_nu -> (i/pi) J_nu term by term, which
// extracts the coefficient of log(4 sin^2((t-tau)/2)) of any linear
// combination of these scalars.
struct GSet {
    cxd g, dg, ddg, dddg;
};

GSet gset(cxd k, double r, Part part)
{
    const cxd i(0.0, 1.0);
    cxd z = k * r;
    cxd h0, h1;
    if (part == Part::Full) {
        auto H = sf::hankel1_seq(1, z);
        h0 = H[0];
        h1 = H[1];
    } else {
        auto J = sf::bessel_j_seq_cx(1, z);
        h0 = (i / kPi) * J[0];
        h1 = (i / kPi) * J[1];
    }
    GSet s;
    s.g = 0.25 * i * h0;
    s.dg = -0.25 * i * k * h1;
    s.ddg = -0.25 * i * k * k * h0 + 0.25 * i * k * h1 / r;
    s.dddg = 0.25 * i * k * k * k * h1 + 0.25 * i * k * k * h0 / r - 0.5 * i * k * h1 / (r * r);
    return s;
}

// Power-log series f(r) = sum_j (a_j + b_j ln r) r^(off + j); closed under
// differentiation and division by r. Used to evaluate the psi = g_s - g_p
// difference combinations stably at small r, where the naive Hankel
// evaluation loses up to nine digits to pole cancellations.
struct LogSeries {
    static constexpr int M = 24;
    int off = 0;
    std::array<cxd, M> a{}, b{};

    LogSeries deriv() const
    {
        LogSeries d;
        d.off = off - 1;
        for (int j = 0; j < M; ++j) {
            double p = off + j;
            d.a[j] = p * a[j] + b[j];
            d.b[j] = p * b[j];
        }
        return d;
    }
    LogSeries div_r() const
    {
        LogSeries d = *this;
        d.off = off - 1;
        return d;
    }
    LogSeries operator-(const LogSeries& o) const
    {
        // align offsets (assumes off <= o.off)
        LogSeries out;
        out.off = std::min(off, o.off);
        for (int j = 0; j < M; ++j) {
            int j1 = j + out.off - off, j2 = j + out.off - o.off;
            out.a[j] = (j1 >= 0 && j1 < M ? a[j1] : 0.0) - (j2 >= 0 && j2 < M ? o.a[j2] : 0.0);
            out.b[j] = (j1 >= 0 && j1 < M ? b[j1] : 0.0) - (j2 >= 0 && j2 < M ? o.b[j2] : 0.0);
        }
        return out;
    }
    LogSeries operator+(const LogSeries& o) const
    {
        LogSeries neg = o;
        for (int j = 0; j < M; ++j) {
            neg.a[j] = -neg.a[j];
            neg.b[j] = -neg.b[j];
        }
        return *this - neg;
    }
    cxd eval(double r) const
    {
        double L = std::log(r);
        cxd s = 0.0;
        for (int j = M - 1; j >= 0; --j) s = s * r + (a[j] + b[j] * L);
        return s * std::pow(r, double(off));
    }
};

// series of phi0(k r) = sum_m (alpha_m + beta_m ln r) r^{2m}
LogSeries phi0_series(cxd k)
{
    LogSeries s;
    s.off = 0;
    double Hm = 0.0, fact2 = 1.0; // harmonic number and (m!)^2
    cxd k2m = 1.0;
    for (int mdx = 0; 2 * mdx < LogSeries::M; ++mdx) {
        if (mdx > 0) {
            Hm += 1.0 / mdx;
            fact2 *= double(mdx) * double(mdx);
            k2m *= k * k;
        }
        double sign = (mdx % 2 == 0) ? 1.0 : -1.0;
        cxd jm = sign / (std::pow(4.0, mdx) * fact2);
        cxd common = jm * k2m;
        s.a[2 * mdx] = common
                       * (cxd(0, 0.25) - std::log(0.5 * k) / (2 * kPi) + (Hm - kEuler) / (2 * kPi));
        s.b[2 * mdx] = -common / (2 * kPi);
    }
    return s;
}

RadialCoeffs radial_dynamic(const MaterialParams& m, double r, Part part)
{
    const cxd w2 = m.omega * m.omega;
    GSet p = gset(m.kp, r, part);
    GSet s = gset(m.ks, r, part);

    RadialCoeffs c;
    c.d = (m.kp * m.kp / w2) * p.dg; // the shear parts cancel in the divergence
    c.dd = (m.kp * m.kp / w2) * p.ddg;

    if (part == Part::Full && std::abs(m.ks) * r < 0.5) {
        LogSeries psi = phi0_series(m.ks) - phi0_series(m.kp);
        LogSeries d1 = psi.deriv(), d2 = d1.deriv(), d3 = d2.deriv(), d4 = d3.deriv();
        LogSeries u2 = d2 - d1.div_r();
        LogSeries u4 = d3 - d2.div_r() + d1.div_r().div_r();
        LogSeries u5 = d3.div_r() - (d2.div_r().div_r() + d2.div_r().div_r())
                       + (d1.div_r().div_r().div_r() + d1.div_r().div_r().div_r());
        LogSeries u6 = d4 - d3.div_r() + (d2.div_r().div_r() + d2.div_r().div_r())
                       - (d1.div_r().div_r().div_r() + d1.div_r().div_r().div_r());
        c.g1 = s.g / m.mu + d1.div_r().eval(r) / w2;
        c.g2 = u2.eval(r) / w2;
        c.dg1 = s.dg / m.mu + u2.div_r().eval(r) / w2;
        c.dg2 = u4.eval(r) / w2;
        c.g2r = u2.div_r().eval(r) / w2;
        c.ddg1 = s.ddg / m.mu + u5.eval(r) / w2;
        c.ddg2 = u6.eval(r) / w2;
        c.dg2r = (u4.div_r() - u2.div_r().div_r()).eval(r) / w2;
        return c;
    }

    const cxd dpsi = s.dg - p.dg; // psi = g_s - g_p
    const cxd ddpsi = s.ddg - p.ddg;
    const cxd dddpsi = s.dddg - p.dddg;
    // fourth derivative via the radial Helmholtz identity
    // g'''' = -k^2 g'' - g'''/r + 2 g''/r^2 - 2 g'/r^3
    const cxd p4 = -m.kp * m.kp * p.ddg - p.dddg / r + 2.0 * p.ddg / (r * r) - 2.0 * p.dg / (r * r * r);
    const cxd s4 = -m.ks * m.ks * s.ddg - s.dddg / r + 2.0 * s.ddg / (r * r) - 2.0 * s.dg / (r * r * r);
    const cxd ddddpsi = s4 - p4;

    c.g1 = s.g / m.mu + dpsi / (r * w2);
    c.g2 = (ddpsi - dpsi / r) / w2;
    c.dg1 = s.dg / m.mu + (ddpsi / r - dpsi / (r * r)) / w2;
    c.dg2 = (dddpsi - ddpsi / r + dpsi / (r * r)) / w2;
    c.g2r = c.g2 / r;
    c.ddg1 = s.ddg / m.mu + (dddpsi / r - 2.0 * ddpsi / (r * r) + 2.0 * dpsi / (r * r * r)) / w2;
    c.ddg2 = (ddddpsi - dddpsi / r + 2.0 * ddpsi / (r * r) - 2.0 * dpsi / (r * r * r)) / w2;
    c.dg2r = c.dg2 / r - c.g2 / (r * r);
    return c;
}

RadialCoeffs radial_static(const MaterialParams& m, double r, Part part)
{
    const double c1 = (m.lambda + 3 * m.mu) / (4 * kPi * m.mu * m.lam2mu());
    const double c2 = (m.lambda + m.mu) / (4 * kPi * m.mu * m.lam2mu());
    RadialCoeffs c{};
    if (part == Part::LogCoeff) {
        c.g1 = -0.5 * c1; // -c1 log r = -(c1/2) log(4 sin^2) + smooth
        return c;
    }
    c.g1 = -c1 * std::log(r);
    c.g2 = c2;
    c.dg1 = -c1 / r;
    c.dg2 = 0.0;
    c.g2r = c2 / r;
    c.d = (c2 - c1) / r;
    c.dd = (c1 - c2) / (r * r);
    c.ddg1 = c1 / (r * r);
    c.ddg2 = 0.0;
    c.dg2r = -c2 / (r * r);
    return c;
}

RadialCoeffs radial(const MaterialParams& m, double r, Part part, bool dynamic)
{
    return dynamic ? radial_dynamic(m, r, part) : radial_static(m, r, part);
}

struct Geom {
    Vec2 rv;
    double r;
    Vec2 rh;
};

Geom geometry(const Vec2& x, const Vec2& y)
{
    Geom g;
    g.rv = x - y;
    g.r = g.rv.norm();
    if (g.r == 0.0) throw std::invalid_argument("kernel evaluation at coincident points");
    g.rh = g.rv / g.r;
    return g;
}

Mat2 phi_from(const RadialCoeffs& c, const Geom& g)
{
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = c.g1 * (i == j ? 1.0 : 0.0) + c.g2 * g.rh(i) * g.rh(j);
    return out;
}

// K kernel without Jacobian: P = [T_y Phi]^T, P_{ij} with i the component
// at x and j the density component.
Mat2 p_kernel(const RadialCoeffs& c, const Geom& g, const Vec2& ny, const Vec2& ty,
              const MaterialParams& m)
{
    const double nr = ny.dot(g.rh);
    const Vec2 rq = rot90(g.rh);
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cxd v = -m.lambda * c.d * g.rh(i) * ny(j);
            v += -2.0 * m.mu
                 * (c.dg1 * nr * (i == j ? 1.0 : 0.0) + c.dg2 * nr * g.rh(i) * g.rh(j)
                    + c.g2r * (ny(j) * g.rh(i) + ny(i) * g.rh(j) - 2.0 * nr * g.rh(i) * g.rh(j)));
            v += m.mu * (c.dg1 - c.g2r) * rq(i) * ty(j);
            out(i, j) = v;
        }
    return out;
}

// K^T kernel without Jacobian: T_x Phi.
Mat2 pt_kernel(const RadialCoeffs& c, const Geom& g, const Vec2& nx, const Vec2& tx,
               const MaterialParams& m)
{
    const double nr = nx.dot(g.rh);
    const Vec2 rq = rot90(g.rh);
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cxd v = m.lambda * c.d * nx(i) * g.rh(j);
            v += 2.0 * m.mu
                 * (c.dg1 * nr * (i == j ? 1.0 : 0.0) + c.dg2 * nr * g.rh(i) * g.rh(j)
                    + c.g2r * (nx(i) * g.rh(j) + nx(j) * g.rh(i) - 2.0 * nr * g.rh(i) * g.rh(j)));
            v += -m.mu * (c.dg1 - c.g2r) * tx(i) * rq(j);
            out(i, j) = v;
        }
    return out;
}

// dP_{ij}/dx_k by the product rule over the five shape terms of P.
void p_kernel_grad(const RadialCoeffs& c, const Geom& g, const Vec2& ny, const Vec2& ty,
                   const MaterialParams& m, Mat2 dP[2])
{
    const double r = g.r;
    const Vec2& rh = g.rh;
    const double nr = ny.dot(rh);
    const Vec2 rq = rot90(rh);
    const cxd p1 = -m.lambda * c.d;
    const cxd p2 = -2.0 * m.mu * c.dg1;
    const cxd p3 = -2.0 * m.mu * c.dg2;
    const cxd p4 = -2.0 * m.mu * c.g2r;
    const cxd p5 = m.mu * (c.dg1 - c.g2r);
    const cxd q1 = -m.lambda * c.dd;
    const cxd q2 = -2.0 * m.mu * c.ddg1;
    const cxd q3 = -2.0 * m.mu * c.ddg2;
    const cxd q4 = -2.0 * m.mu * c.dg2r;
    const cxd q5 = m.mu * (c.ddg1 - c.dg2r);

    for (int k = 0; k < 2; ++k) {
        const Vec2 drh{((0 == k ? 1.0 : 0.0) - rh(0) * rh(k)) / r,
                       ((1 == k ? 1.0 : 0.0) - rh(1) * rh(k)) / r};
        const Vec2 drq = rot90(drh);
        const double dnr = ny.dot(drh);
        Mat2 out;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const double dij = (i == j) ? 1.0 : 0.0;
                cxd v = (q1 * rh(k)) * rh(i) * ny(j) + p1 * drh(i) * ny(j);
                v += (q2 * rh(k)) * nr * dij + p2 * dnr * dij;
                v += (q3 * rh(k)) * nr * rh(i) * rh(j)
                     + p3 * (dnr * rh(i) * rh(j) + nr * drh(i) * rh(j) + nr * rh(i) * drh(j));
                const double S4 = ny(j) * rh(i) + ny(i) * rh(j) - 2.0 * nr * rh(i) * rh(j);
                const double dS4 = ny(j) * drh(i) + ny(i) * drh(j)
                                   - 2.0 * (dnr * rh(i) * rh(j) + nr * drh(i) * rh(j)
                                            + nr * rh(i) * drh(j));
                v += (q4 * rh(k)) * S4 + p4 * dS4;
                v += (q5 * rh(k)) * rq(i) * ty(j) + p5 * drq(i) * ty(j);
                out(i, j) = v;
            }
        dP[k] = out;
    }
}

// W kernel without Jacobians: T_x applied to the columns of P(., y).
Mat2 w_kernel_raw(const RadialCoeffs& c, const Geom& g, const Vec2& nx, const Vec2& tx,
                  const Vec2& ny, const Vec2& ty, const MaterialParams& m)
{
    Mat2 dP[2];
    p_kernel_grad(c, g, ny, ty, m, dP);
    Mat2 out;
    for (int j = 0; j < 2; ++j) {
        cxd div = dP[0](0, j) + dP[1](1, j);
        cxd curl = dP[0](1, j) - dP[1](0, j);
        for (int i = 0; i < 2; ++i) {
            cxd ngrad = nx(0) * dP[0](i, j) + nx(1) * dP[1](i, j);
            out(i, j) = m.lambda * div * nx(i) + 2.0 * m.mu * ngrad - m.mu * curl * tx(i);
        }
    }
    return out;
}

Mat2 split_eval(SplitKind kind, const PFrame& X, const PFrame& Y, const MaterialParams& m,
                Part part)
{
    switch (kind) {
    case SplitKind::V:
        return kernel_V(X, Y, m, part, true);
    case SplitKind::KmK0:
        if (part == Part::LogCoeff) return kernel_K(X, Y, m, part, true);
        return kernel_K(X, Y, m, part, true) - kernel_K(X, Y, m, part, false);
    case SplitKind::KTmKT0:
        if (part == Part::LogCoeff) return kernel_KT(X, Y, m, part, true);
        return kernel_KT(X, Y, m, part, true) - kernel_KT(X, Y, m, part, false);
    case SplitKind::WmW0:
        if (part == Part::LogCoeff) return kernel_W(X, Y, m, part, true);
        return kernel_W(X, Y, m, part, true) - kernel_W(X, Y, m, part, false);
    }
    return Mat2::Zero();
}

} // namespace

MaterialParams material(double lambda, double mu, cxd omega)
{
    if (mu <= 0 || lambda <= -2 * mu)
        throw std::invalid_argument("material: need mu > 0, lambda > -2 mu");
    MaterialParams m;
    m.lambda = lambda;
    m.mu = mu;
    m.omega = omega;
    m.kp = omega / std::sqrt(cxd(lambda + 2 * mu, 0.0));
    m.ks = omega / std::sqrt(cxd(mu, 0.0));
    return m;
}

Mat2 navier_green(const Vec2& x, const Vec2& y, const MaterialParams& m)
{
    Geom g = geometry(x, y);
    return phi_from(radial_dynamic(m, g.r, Part::Full), g);
}

std::array<Mat2, 2> navier_green_grad(const Vec2& x, const Vec2& y, const MaterialParams& m)
{
    Geom g = geometry(x, y);
    RadialCoeffs c = radial_dynamic(m, g.r, Part::Full);
    std::array<Mat2, 2> out;
    for (int k = 0; k < 2; ++k) {
        Mat2 d;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double dij = (i == j) ? 1.0 : 0.0;
                double drh_i = ((i == k ? 1.0 : 0.0) - g.rh(i) * g.rh(k)) / g.r;
                double drh_j = ((j == k ? 1.0 : 0.0) - g.rh(j) * g.rh(k)) / g.r;
                d(i, j) = c.dg1 * g.rh(k) * dij + c.dg2 * g.rh(k) * g.rh(i) * g.rh(j)
                          + c.g2 * (drh_i * g.rh(j) + g.rh(i) * drh_j);
            }
        out[k] = d;
    }
    return out;
}

Eigen::Vector2cd traction(const MaterialParams& m, const Vec2& n, const Vec2& t, const Mat2& grad)
{
    cxd div = grad(0, 0) + grad(1, 1);
    cxd curl = grad(1, 0) - grad(0, 1);
    Eigen::Vector2cd gn = grad * Eigen::Vector2cd(n.x(), n.y());
    Eigen::Vector2cd out;
    for (int i = 0; i < 2; ++i)
        out(i) = m.lambda * div * n(i) + 2.0 * m.mu * gn(i) - m.mu * curl * t(i);
    return out;
}

PFrame pframe(const geom::GeometricFrame& f)
{
    return PFrame{f.t, f.x, f.normal, f.tangent, f.jac};
}

Mat2 kernel_V(const PFrame& X, const PFrame& Y, const MaterialParams& m, Part part, bool dynamic)
{
    Geom g = geometry(X.x, Y.x);
    return phi_from(radial(m, g.r, part, dynamic), g);
}

Mat2 kernel_K(const PFrame& X, const PFrame& Y, const MaterialParams& m, Part part, bool dynamic)
{
    Geom g = geometry(X.x, Y.x);
    return Y.jac * p_kernel(radial(m, g.r, part, dynamic), g, Y.n, Y.tan, m);
}

Mat2 kernel_KT(const PFrame& X, const PFrame& Y, const MaterialParams& m, Part part, bool dynamic)
{
    Geom g = geometry(X.x, Y.x);
    return X.jac * pt_kernel(radial(m, g.r, part, dynamic), g, X.n, X.tan, m);
}

Mat2 kernel_W(const PFrame& X, const PFrame& Y, const MaterialParams& m, Part part, bool dynamic)
{
    Geom g = geometry(X.x, Y.x);
    return X.jac * Y.jac * w_kernel_raw(radial(m, g.r, part, dynamic), g, X.n, X.tan, Y.n, Y.tan, m);
}

KernelSplit km_log_split(SplitKind kind, const PFrame& X, const PFrame& Y, const MaterialParams& m)
{
    KernelSplit out;
    out.log_coeff = split_eval(kind, X, Y, m, Part::LogCoeff);
    out.smooth = split_eval(kind, X, Y, m, Part::Full) - out.log_coeff * log_factor(X.t - Y.t);
    return out;
}

Mat2 diagonal_limit(const std::function<Mat2(double)>& sym_sample)
{
    constexpr int NP = 7;
    const double hs[NP] = {1.8e-2, 1.2e-2, 8e-3, 5.3e-3, 3.6e-3, 2.4e-3, 1.6e-3};
    Eigen::Matrix<double, NP, NP> M;
    Mat2 vals[NP];
    for (int i = 0; i < NP; ++i) {
        double h = hs[i];
        vals[i] = sym_sample(h);
        double h2 = h * h, lg = std::log(h);
        M(i, 0) = 1.0;
        M(i, 1) = h2 * lg;
        M(i, 2) = h2;
        M(i, 3) = h2 * h2 * lg;
        M(i, 4) = h2 * h2;
        M(i, 5) = h2 * h2 * h2 * lg;
        M(i, 6) = h2 * h2 * h2;
    }
    Eigen::PartialPivLU<Eigen::Matrix<double, NP, NP>> lu(M);
    Mat2 out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Eigen::Matrix<double, NP, 1> re, im;
            for (int i = 0; i < NP; ++i) {
                re(i) = vals[i](a, b).real();
                im(i) = vals[i](a, b).imag();
            }
            Eigen::Matrix<double, NP, 1> cre = lu.solve(re), cim = lu.solve(im);
            out(a, b) = cxd(cre(0), cim(0));
        }
    return out;
}

KernelSplit km_split_diagonal(SplitKind kind, const geom::Mesh& mesh, double t,
                              const MaterialParams& m)
{
    PFrame X = pframe(geom::frame_at(mesh, t));
    auto log_sample = [&](double h) {
        PFrame Yp = pframe(geom::frame_at(mesh, t + h));
        PFrame Ym = pframe(geom::frame_at(mesh, t - h));
        return Mat2(0.5 * (split_eval(kind, X, Yp, m, Part::LogCoeff)
                           + split_eval(kind, X, Ym, m, Part::LogCoeff)));
    };
    auto smooth_sample = [&](double h) {
        PFrame Yp = pframe(geom::frame_at(mesh, t + h));
        PFrame Ym = pframe(geom::frame_at(mesh, t - h));
        double lf = log_factor(h);
        Mat2 sp = split_eval(kind, X, Yp, m, Part::Full)
                  - split_eval(kind, X, Yp, m, Part::LogCoeff) * lf;
        Mat2 sm = split_eval(kind, X, Ym, m, Part::Full)
                  - split_eval(kind, X, Ym, m, Part::LogCoeff) * lf;
        return Mat2(0.5 * (sp + sm));
    };
    KernelSplit out;
    out.log_coeff = diagonal_limit(log_sample);
    out.smooth = diagonal_limit(smooth_sample);
    return out;
}

Eigen::Matrix2d k0_cot_coefficient(const MaterialParams& m)
{
    Eigen::Matrix2d Q;
    Q << 0, 1, -1, 0;
    return (m.mu / (4 * kPi * m.lam2mu())) * Q;
}

Mat2 k0_smooth(const PFrame& X, const PFrame& Y, const MaterialParams& m, bool transposed)
{
    Mat2 full = transposed ? kernel_KT(X, Y, m, Part::Full, false)
                           : kernel_K(X, Y, m, Part::Full, false);
    double ct = 1.0 / std::tan(0.5 * (X.t - Y.t));
    return full - k0_cot_coefficient(m).cast<cxd>() * ct;
}

Mat2 k0_smooth_diagonal(const geom::Mesh& mesh, double t, const MaterialParams& m, bool transposed)
{
    // the Cauchy part is odd in (t - tau): symmetric averages of the full
    // kernel converge to the smooth diagonal directly
    PFrame X = pframe(geom::frame_at(mesh, t));
    auto sample = [&](double h) {
        PFrame Yp = pframe(geom::frame_at(mesh, t + h));
        PFrame Ym = pframe(geom::frame_at(mesh, t - h));
        Mat2 a = transposed ? kernel_KT(X, Yp, m, Part::Full, false)
                            : kernel_K(X, Yp, m, Part::Full, false);
        Mat2 b = transposed ? kernel_KT(X, Ym, m, Part::Full, false)
                            : kernel_K(X, Ym, m, Part::Full, false);
        return Mat2(0.5 * (a + b));
    };
    return diagonal_limit(sample);
}

Mat2 w0_maue_smooth(const PFrame& X, const PFrame& Y)
{
    // M(t,tau) = d/dt (-log r I + G(r)); its Cauchy part is -cot((t-tau)/2)/2
    Geom g = geometry(X.x, Y.x);
    const Vec2 xpt = X.jac * X.tan; // x'(t)
    const double rr = g.r * g.r;
    const double rdotxp = g.rv.dot(xpt);
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double dlog = (i == j) ? -rdotxp / rr : 0.0; // d/dt (-log r) I
            double dG = (xpt(i) * g.rv(j) + g.rv(i) * xpt(j)) / rr
                        - 2.0 * rdotxp * g.rv(i) * g.rv(j) / (rr * rr);
            out(i, j) = dlog + dG;
        }
    double ct = 1.0 / std::tan(0.5 * (X.t - Y.t));
    for (int i = 0; i < 2; ++i) out(i, i) += 0.5 * ct;
    return out;
}

Mat2 w0_maue_smooth_diagonal(const geom::Mesh& mesh, double t)
{
    PFrame X = pframe(geom::frame_at(mesh, t));
    auto sample = [&](double h) {
        // the subtracted cot parts cancel in the symmetric average
        PFrame Yp = pframe(geom::frame_at(mesh, t + h));
        PFrame Ym = pframe(geom::frame_at(mesh, t - h));
        return Mat2(0.5 * (w0_maue_smooth(X, Yp) + w0_maue_smooth(X, Ym)));
    };
    return diagonal_limit(sample);
}

double w0_maue_prefactor(const MaterialParams& m)
{
    return m.mu * (m.lambda + m.mu) / (m.lam2mu() * kPi);
}

} // namespace ebie::kern
