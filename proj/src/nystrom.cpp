#include "ebie/nystrom.hpp"

#include "ebie/parallel.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace ebie::nys {

namespace {

constexpr double kPi = std::numbers::pi;
using kern::Mat2;
using kern::Part;
using kern::PFrame;
using kern::SplitKind;

void put_block(MatrixXcd& A, int i, int j, const Mat2& B)
{
    A(2 * i, 2 * j) = B(0, 0);
    A(2 * i, 2 * j + 1) = B(0, 1);
    A(2 * i + 1, 2 * j) = B(1, 0);
    A(2 * i + 1, 2 * j + 1) = B(1, 1);
}

void add_block(MatrixXcd& A, int i, int j, const Mat2& B)
{
    A(2 * i, 2 * j) += B(0, 0);
    A(2 * i, 2 * j + 1) += B(0, 1);
    A(2 * i + 1, 2 * j) += B(1, 0);
    A(2 * i + 1, 2 * j + 1) += B(1, 1);
}

struct Ctx {
    const geom::Mesh& mesh;
    const MaterialParams& m;
    int n, N;
    double h;
    bool arc;
    std::vector<PFrame> F;
    quad::KmWeights km;
    Eigen::MatrixXd HW;

    Ctx(const geom::Mesh& mesh_, const MaterialParams& m_)
        : mesh(mesh_), m(m_), n(mesh_.spec.n), N(2 * mesh_.spec.n), h(kPi / mesh_.spec.n),
          arc(mesh_.curve->is_open), km(quad::km_weights(mesh_.spec.n)),
          HW(quad::hilbert_matrix(mesh_.spec.n))
    {
        if (!mesh.global())
            throw std::invalid_argument("assemble_operator: global equispaced mesh required");
        F.reserve(N);
        for (const auto& f : mesh.nodes) F.push_back(kern::pframe(f));
    }

    double kmw(int i, int j) const { return km.R(i, j); }
    double kmw_ref(int i, int j) const { return km.R(i, (N - j) % N); }
    int refl(int j) const { return (N - j) % N; }
    bool corner(int j) const { return mesh.is_corner_node(j); }
};

double log_factor(double dt) { return std::log(4.0 * std::pow(std::sin(0.5 * dt), 2)); }

// nearest non-corner node (diagonal fallback at corners)
int nearest_regular(const Ctx& c, int i)
{
    for (int d = 1; d < c.N; ++d)
        if (!c.corner((i + d) % c.N)) return (i + d) % c.N;
    return i;
}

// dynamic - static split matrix (or whole V) via the K-M product rule
MatrixXcd km_split_matrix(const Ctx& c, SplitKind kind)
{
    MatrixXcd A = MatrixXcd::Zero(2 * c.N, 2 * c.N);
    std::vector<kern::KernelSplit> diag(c.N);
    parallel_for(c.N, [&](int i) {
        int src = c.corner(i) ? nearest_regular(c, i) : i;
        if (c.arc && c.refl(i) == i) {
            // arc endpoint: both log factors collapse onto the diagonal
            double t = c.mesh.nodes[i].t;
            PFrame X = c.F[i];
            auto lsample = [&](double hh) {
                auto Yp = kern::pframe(geom::frame_at(c.mesh, t + hh));
                auto Ym = kern::pframe(geom::frame_at(c.mesh, t - hh));
                return Mat2(0.5 * (kern::km_log_split(kind, X, Yp, c.m).log_coeff
                                   + kern::km_log_split(kind, X, Ym, c.m).log_coeff));
            };
            auto ssample = [&](double hh) {
                auto Yp = kern::pframe(geom::frame_at(c.mesh, t + hh));
                auto Ym = kern::pframe(geom::frame_at(c.mesh, t - hh));
                auto sp = kern::km_log_split(kind, X, Yp, c.m);
                auto sm = kern::km_log_split(kind, X, Ym, c.m);
                // remove the second (reflected) log factor too
                Mat2 a = sp.smooth - sp.log_coeff * log_factor(2.0 * t + hh);
                Mat2 b = sm.smooth - sm.log_coeff * log_factor(2.0 * t - hh);
                return Mat2(0.5 * (a + b));
            };
            diag[i].log_coeff = kern::diagonal_limit(lsample);
            diag[i].smooth = kern::diagonal_limit(ssample);
        } else {
            diag[i] = kern::km_split_diagonal(kind, c.mesh, c.mesh.nodes[src].t, c.m);
        }
    });
    std::vector<Mat2> anti(c.N, Mat2::Zero());
    if (c.arc) {
        parallel_for(c.N, [&](int i) {
            int j = c.refl(i);
            if (j == i) return; // endpoint nodes: both factors meet the diagonal
            double t = c.F[i].t, tau = c.F[j].t;
            auto sample = [&](double hh) {
                auto Yp = kern::pframe(geom::frame_at(c.mesh, tau + hh));
                auto Ym = kern::pframe(geom::frame_at(c.mesh, tau - hh));
                auto sp = kern::km_log_split(kind, c.F[i], Yp, c.m);
                auto sm = kern::km_log_split(kind, c.F[i], Ym, c.m);
                Mat2 a = sp.smooth - sp.log_coeff * log_factor(t + (tau + hh));
                Mat2 b = sm.smooth - sm.log_coeff * log_factor(t + (tau - hh));
                return Mat2(0.5 * (a + b));
            };
            anti[i] = kern::diagonal_limit(sample);
        });
    }
    parallel_for(c.N, [&](int i) {
        for (int j = 0; j < c.N; ++j) {
            Mat2 L, S;
            if (j == i) {
                L = diag[i].log_coeff;
                S = diag[i].smooth;
                if (c.arc && c.refl(i) != i) S -= L * log_factor(2.0 * c.F[i].t);
            } else if (c.arc && j == c.refl(i)) {
                auto sp = kern::km_log_split(kind, c.F[i], c.F[j], c.m);
                L = sp.log_coeff;
                S = anti[i];
            } else {
                auto sp = kern::km_log_split(kind, c.F[i], c.F[j], c.m);
                L = sp.log_coeff;
                S = sp.smooth;
                if (c.arc) S -= L * log_factor(c.F[i].t + c.F[j].t);
            }
            Mat2 contrib = c.kmw(i, j) * L + c.h * S;
            if (c.arc) contrib += c.kmw_ref(i, j) * L;
            put_block(A, i, j, contrib);
        }
    });
    return A;
}

// Alpert path: black-box evaluation of the weakly singular kernel
MatrixXcd alpert_split_matrix(const Ctx& c, SplitKind kind, const quad::AlpertRule& rule)
{
    if (c.arc) throw std::invalid_argument("Alpert assembly is not supported on open arcs");
    auto kernel = [&](const PFrame& X, double tau) {
        PFrame Y = kern::pframe(geom::frame_at(c.mesh, tau));
        switch (kind) {
        case SplitKind::V: return Mat2(kern::kernel_V(X, Y, c.m, Part::Full, true));
        case SplitKind::KmK0:
            return Mat2(kern::kernel_K(X, Y, c.m, Part::Full, true)
                        - kern::kernel_K(X, Y, c.m, Part::Full, false));
        case SplitKind::KTmKT0:
            return Mat2(kern::kernel_KT(X, Y, c.m, Part::Full, true)
                        - kern::kernel_KT(X, Y, c.m, Part::Full, false));
        case SplitKind::WmW0:
            return Mat2(kern::kernel_W(X, Y, c.m, Part::Full, true)
                        - kern::kernel_W(X, Y, c.m, Part::Full, false));
        }
        return Mat2(Mat2::Zero());
    };
    MatrixXcd A = MatrixXcd::Zero(2 * c.N, 2 * c.N);
    parallel_for(c.N, [&](int i) {
        auto row = quad::alpert_row(rule, i, c.n);
        for (int j = 0; j < c.N; ++j)
            if (row.grid_w(j) != 0.0) add_block(A, i, j, row.grid_w(j) * kernel(c.F[i], c.F[j].t));
        for (const auto& og : row.off) {
            Mat2 kv = og.weight * kernel(c.F[i], og.tau);
            for (size_t q = 0; q < og.cols.size(); ++q) add_block(A, i, og.cols[q], og.coef[q] * kv);
        }
    });
    return A;
}

MatrixXcd split_matrix(const Ctx& c, SplitKind kind, Method method)
{
    if (method == Method::KM) return km_split_matrix(c, kind);
    if (method == Method::Alpert10 && c.mesh.curve->has_corners())
        std::cerr << "[ebie] warning: order-10 Alpert on a cornered mesh; "
                     "the low density regularity limits the attainable order\n";
    auto rule = quad::alpert_rule(method == Method::Alpert3 ? 3 : 10);
    return alpert_split_matrix(c, kind, rule);
}

// (1/2 I + K0) in the subtracted form sum_j K0_{ij} (g_j - g_i): no diagonal
// limits required, which also covers corner nodes.
MatrixXcd k0_subtracted(const Ctx& c)
{
    MatrixXcd A = MatrixXcd::Zero(2 * c.N, 2 * c.N);
    Mat2 acot = kern::k0_cot_coefficient(c.m).cast<cxd>();
    parallel_for(c.N, [&](int i) {
        Mat2 rowsum = Mat2::Zero();
        for (int j = 0; j < c.N; ++j) {
            if (j == i) continue;
            Mat2 contrib = -c.HW(i, j) * acot + c.h * kern::k0_smooth(c.F[i], c.F[j], c.m, false);
            put_block(A, i, j, contrib);
            rowsum += contrib;
        }
        put_block(A, i, i, Mat2(-rowsum));
    });
    return A;
}

// (-1/2 I + K0^T) assembled directly; the smooth diagonals are the
// transposed K0 limits (exact discrete duality).
MatrixXcd kt0_direct(const Ctx& c)
{
    MatrixXcd A = MatrixXcd::Zero(2 * c.N, 2 * c.N);
    Mat2 acot = kern::k0_cot_coefficient(c.m).cast<cxd>();
    std::vector<Mat2> diag(c.N);
    parallel_for(c.N, [&](int i) {
        int src = c.corner(i) ? nearest_regular(c, i) : i;
        diag[i] = kern::k0_smooth_diagonal(c.mesh, c.mesh.nodes[src].t, c.m, false)
                      .transpose();
    });
    parallel_for(c.N, [&](int i) {
        for (int j = 0; j < c.N; ++j) {
            Mat2 s = (j == i) ? diag[i] : kern::k0_smooth(c.F[i], c.F[j], c.m, true);
            put_block(A, i, j, Mat2(-c.HW(i, j) * acot + c.h * s));
        }
        add_block(A, i, i, Mat2(-0.5 * Mat2::Identity()));
    });
    return A;
}

// W0 in Maue form acting through the spectral derivative of the density
MatrixXcd w0_maue(const Ctx& c)
{
    const double pref = kern::w0_maue_prefactor(c.m);
    MatrixXcd M = MatrixXcd::Zero(2 * c.N, 2 * c.N);
    std::vector<Mat2> diag(c.N);
    parallel_for(c.N, [&](int i) {
        int src = c.corner(i) ? nearest_regular(c, i) : i;
        diag[i] = kern::w0_maue_smooth_diagonal(c.mesh, c.mesh.nodes[src].t);
    });
    std::vector<Mat2> anti(c.N, Mat2::Zero());
    if (c.arc) {
        parallel_for(c.N, [&](int i) {
            int j = c.refl(i);
            if (j == i) return;
            double tau = c.F[j].t;
            auto sample = [&](double hh) {
                auto Yp = kern::pframe(geom::frame_at(c.mesh, tau + hh));
                auto Ym = kern::pframe(geom::frame_at(c.mesh, tau - hh));
                Mat2 a = kern::w0_maue_smooth(c.F[i], Yp);
                Mat2 b = kern::w0_maue_smooth(c.F[i], Ym);
                double ca = 1.0 / std::tan(0.5 * (c.F[i].t + tau + hh));
                double cb = 1.0 / std::tan(0.5 * (c.F[i].t + tau - hh));
                for (int d = 0; d < 2; ++d) {
                    a(d, d) += 0.5 * ca;
                    b(d, d) += 0.5 * cb;
                }
                return Mat2(0.5 * (a + b));
            };
            anti[i] = kern::diagonal_limit(sample);
            // sign note: the reflected Cauchy part of d/dt is also -cot/2
        });
    }
    parallel_for(c.N, [&](int i) {
        for (int j = 0; j < c.N; ++j) {
            Mat2 s;
            if (j == i) {
                s = diag[i];
                if (c.arc && c.refl(i) != i)
                    for (int d = 0; d < 2; ++d) s(d, d) += 0.5 / std::tan(c.F[i].t);
            } else if (c.arc && j == c.refl(i)) {
                s = anti[i];
            } else {
                s = kern::w0_maue_smooth(c.F[i], c.F[j]);
                if (c.arc)
                    for (int d = 0; d < 2; ++d)
                        s(d, d) += 0.5 / std::tan(0.5 * (c.F[i].t + c.F[j].t));
            }
            Mat2 contrib = c.h * s;
            // int -cot((t-tau)/2)/2 g' dtau = +HW/2 g'; reflected part alike
            double cotw = 0.5 * c.HW(i, j);
            if (c.arc) cotw += 0.5 * c.HW(i, c.refl(j));
            contrib += cotw * Mat2::Identity();
            put_block(M, i, j, contrib);
        }
    });
    return pref * M * vector_diff_matrix(c.n);
}

} // namespace

MatrixXcd vector_diff_matrix(int n)
{
    Eigen::MatrixXd D = quad::trig_diff_matrix(n);
    MatrixXcd out = MatrixXcd::Zero(2 * D.rows(), 2 * D.cols());
    for (int i = 0; i < D.rows(); ++i)
        for (int j = 0; j < D.cols(); ++j) {
            out(2 * i, 2 * j) = D(i, j);
            out(2 * i + 1, 2 * j + 1) = D(i, j);
        }
    return out;
}

MatrixXcd assemble_operator(OpKind kind, Method method, const geom::Mesh& mesh,
                            const MaterialParams& m)
{
    Ctx c(mesh, m);
    switch (kind) {
    case OpKind::V: return split_matrix(c, SplitKind::V, method);
    case OpKind::Khalf: {
        MatrixXcd A = split_matrix(c, SplitKind::KmK0, method);
        A += k0_subtracted(c);
        return A;
    }
    case OpKind::KThalf: {
        MatrixXcd A = split_matrix(c, SplitKind::KTmKT0, method);
        A += kt0_direct(c);
        return A;
    }
    case OpKind::W: {
        MatrixXcd A = split_matrix(c, SplitKind::WmW0, method);
        A += w0_maue(c);
        return A;
    }
    }
    throw std::logic_error("assemble_operator: unknown kind");
}

Eigen::Matrix2cd ps_symbol(double xi, cxd kappa, const MaterialParams& m)
{
    const cxd i(0.0, 1.0);
    cxd root = std::sqrt(cxd(xi * xi, 0.0) - kappa * kappa);
    if (root.imag() < 0) root = -root; // branch with Im >= 0, continuous in xi
    double sgn = double((xi > 0) - (xi < 0));
    Eigen::Matrix2cd s;
    s << 0.5, i * m.mu / (2.0 * m.lam2mu()) * sgn, -i * m.mu / (2.0 * m.lam2mu()) * sgn, 0.5;
    return (-4.0 * m.mu * m.lam2mu() / (m.lambda + 3 * m.mu)) * root * s;
}

MatrixXcd ps_multiplier_matrix(PsKind kind, cxd kappa, int n, const MaterialParams& m)
{
    if (kappa.imag() <= 0) throw std::invalid_argument("ps_multiplier: Im kappa must be > 0");
    const int N = 2 * n;
    const double h = kPi / n;
    const cxd i(0.0, 1.0);
    std::vector<Eigen::Matrix2cd> row(N, Eigen::Matrix2cd::Zero());
    for (int mm = 0; mm < N; ++mm) {
        double xi = (mm <= n) ? mm : mm - N;
        Eigen::Matrix2cd s = ps_symbol(xi, kappa, m);
        if (mm == n) { // Nyquist: cosine-type mode, no odd (sign) part
            s(0, 1) = 0.0;
            s(1, 0) = 0.0;
        }
        if (kind == PsKind::Yinv) s = s.inverse().eval();
        for (int d = 0; d < N; ++d)
            row[d] += (1.0 / double(N)) * s * std::exp(i * xi * double(d) * h);
    }
    MatrixXcd out(2 * N, 2 * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) put_block(out, a, b, Mat2(row[((a - b) % N + N) % N]));
    return out;
}

cxd eta_d_opt(const MaterialParams& m)
{
    return 2.0 * m.mu * m.lam2mu() / (m.lambda + 3 * m.mu) * m.ks;
}

cxd eta_n_opt(const MaterialParams& m)
{
    return (m.lambda + 3 * m.mu) / (2.0 * m.mu * m.lam2mu()) / m.ks;
}

cxd default_kappa(const MaterialParams& m)
{
    return m.ks + cxd(0.0, 0.4) * std::pow(m.ks, 1.0 / 3.0);
}

NavierSystem assemble_formulation(const FormulationConfig& cfg, const geom::Mesh& mesh,
                                  const MaterialParams& m)
{
    NavierSystem sys;
    const int N = 2 * mesh.spec.n;
    cxd kappa = (cfg.kappa == cxd(0.0, 0.0)) ? default_kappa(m) : cfg.kappa;
    MatrixXcd I2N = MatrixXcd::Identity(2 * N, 2 * N);
    // Jacobian weights: physical density samples -> parameterized density
    MatrixXcd J = MatrixXcd::Zero(2 * N, 2 * N);
    for (int j = 0; j < N; ++j) {
        J(2 * j, 2 * j) = mesh.nodes[j].jac;
        J(2 * j + 1, 2 * j + 1) = mesh.nodes[j].jac;
    }

    if (cfg.family == Family::SLManufactured) {
        sys.A = assemble_operator(OpKind::V, cfg.method, mesh, m);
        sys.rep.sl_density = I2N;
        sys.rhs = RhsForm::DirichletTrace;
        sys.tag = "V";
        // corner nodes carry a vanishing weighted density: pin them
        for (int j : mesh.corner_nodes) {
            sys.A.row(2 * j).setZero();
            sys.A.row(2 * j + 1).setZero();
            sys.A.col(2 * j).setZero();
            sys.A.col(2 * j + 1).setZero();
            sys.A(2 * j, 2 * j) = 1.0;
            sys.A(2 * j + 1, 2 * j + 1) = 1.0;
        }
        return sys;
    }
    if (cfg.family == Family::KTManufactured) {
        sys.A = assemble_operator(OpKind::KThalf, cfg.method, mesh, m);
        sys.rep.sl_density = I2N;
        sys.rhs = RhsForm::NeumannTrace;
        sys.tag = "KT";
        return sys;
    }
    if (cfg.family == Family::DLManufactured) {
        if (cfg.bc == BC::Dirichlet) {
            sys.A = assemble_operator(OpKind::Khalf, cfg.method, mesh, m);
            sys.rhs = RhsForm::DirichletTrace;
            sys.tag = "K";
        } else {
            sys.A = assemble_operator(OpKind::W, cfg.method, mesh, m);
            sys.rhs = RhsForm::NeumannTrace;
            sys.tag = "W";
        }
        sys.rep.dl_density = I2N;
        return sys;
    }

    auto regmat = [&](PsKind which, cxd scalar_fallback) -> MatrixXcd {
        if (cfg.reg == Regularizer::LowOrder) return scalar_fallback * I2N;
        return ps_multiplier_matrix(which, kappa, mesh.spec.n, m);
    };

    if (cfg.bc == BC::Dirichlet) {
        MatrixXcd Khalf = assemble_operator(OpKind::Khalf, cfg.method, mesh, m);
        MatrixXcd V = assemble_operator(OpKind::V, cfg.method, mesh, m);
        if (cfg.family == Family::CFIE) {
            cxd eta = (cfg.eta == cxd(0.0, 0.0)) ? eta_d_opt(m) : cfg.eta;
            sys.A = Khalf - cxd(0, 1) * eta * V * J;
            sys.rep.dl_density = I2N;
            sys.rep.sl_density = -cxd(0, 1) * eta * J;
            sys.tag = "CFIE-D";
        } else if (cfg.family == Family::CFIER) {
            cxd r1 = -cxd(0, 1) * 2.0 * m.mu * m.lam2mu() / (m.lambda + 3 * m.mu) * kappa;
            MatrixXcd R = regmat(PsKind::Y, r1);
            sys.A = Khalf - V * J * R;
            sys.rep.dl_density = I2N;
            sys.rep.sl_density = -J * R;
            sys.tag = "CFIER-D";
        } else {
            throw std::invalid_argument("assemble_formulation: unsupported Dirichlet family");
        }
        sys.rhs = RhsForm::DirichletTrace;
        return sys;
    }

    MatrixXcd KThalf = assemble_operator(OpKind::KThalf, cfg.method, mesh, m);
    MatrixXcd W = assemble_operator(OpKind::W, cfg.method, mesh, m);
    if (cfg.family == Family::CFIE) {
        cxd eta = (cfg.eta == cxd(0.0, 0.0)) ? eta_n_opt(m) : cfg.eta;
        sys.A = -KThalf * J + cxd(0, 1) * eta * W;
        sys.rep.sl_density = -J;
        sys.rep.dl_density = cxd(0, 1) * eta * I2N;
        sys.rhs = RhsForm::NeumannTrace;
        sys.tag = "CFIE-N";
    } else if (cfg.family == Family::CFIER) {
        cxd r1 = cxd(0, 1) * (m.lambda + 3 * m.mu) / (2.0 * m.mu * m.lam2mu()) / kappa;
        MatrixXcd R = regmat(PsKind::Yinv, r1);
        sys.A = -KThalf * J + W * R;
        sys.rep.sl_density = -J;
        sys.rep.dl_density = R;
        sys.rhs = RhsForm::NeumannTrace;
        sys.tag = "CFIER-N";
    } else if (cfg.family == Family::DCFIER) {
        cxd r1 = cxd(0, 1) * (m.lambda + 3 * m.mu) / (2.0 * m.mu * m.lam2mu()) / kappa;
        MatrixXcd R = regmat(PsKind::Yinv, r1);
        MatrixXcd Khalf = assemble_operator(OpKind::Khalf, cfg.method, mesh, m);
        sys.A = MatrixXcd(I2N - Khalf) + R * W;
        sys.rep.dl_density = I2N;
        sys.rhs = RhsForm::Dcfier;
        sys.rhs_R = R;
        sys.tag = "DCFIER";
    } else {
        throw std::invalid_argument("assemble_formulation: unsupported Neumann family");
    }
    return sys;
}

namespace {

MatrixXcd ps_even_matrix(PsKind kind, cxd kappa, int n, const MaterialParams& m)
{
    int np = n + 1;
    Eigen::MatrixXd C(np, np);
    for (int j = 0; j <= n; ++j)
        for (int mm = 0; mm <= n; ++mm) C(j, mm) = std::cos(mm * j * kPi / n);
    Eigen::MatrixXd Cinv = C.inverse();
    MatrixXcd out = MatrixXcd::Zero(2 * np, 2 * np);
    for (int mm = 0; mm <= n; ++mm) {
        Eigen::Matrix2cd s = ps_symbol(mm, kappa, m);
        if (kind == PsKind::Yinv) s = s.inverse().eval();
        for (int a = 0; a < np; ++a)
            for (int b = 0; b < np; ++b) add_block(out, a, b, Mat2(C(a, mm) * Cinv(mm, b) * s));
    }
    return out;
}

MatrixXcd ps_odd_matrix(PsKind kind, cxd kappa, int n, const MaterialParams& m)
{
    int ni = n - 1;
    Eigen::MatrixXd S(ni, ni);
    for (int j = 1; j < n; ++j)
        for (int mm = 1; mm < n; ++mm) S(j - 1, mm - 1) = std::sin(mm * j * kPi / n);
    Eigen::MatrixXd Sinv = S.inverse();
    MatrixXcd out = MatrixXcd::Zero(2 * ni, 2 * ni);
    for (int mm = 1; mm < n; ++mm) {
        Eigen::Matrix2cd s = ps_symbol(mm, kappa, m);
        if (kind == PsKind::Yinv) s = s.inverse().eval();
        for (int a = 0; a < ni; ++a)
            for (int b = 0; b < ni; ++b)
                add_block(out, a, b, Mat2(S(a, mm - 1) * Sinv(mm - 1, b) * s));
    }
    return out;
}

} // namespace

ArcSystem arc_dirichlet_system(const geom::Mesh& mesh, const MaterialParams& m,
                               bool preconditioned, cxd kappa)
{
    if (!mesh.curve->is_open) throw std::invalid_argument("arc system requires an open curve");
    Ctx c(mesh, m);
    const int n = c.n, ni = n - 1;
    if (kappa == cxd(0.0, 0.0)) kappa = default_kappa(m);
    MatrixXcd Vfull = km_split_matrix(c, SplitKind::V);

    // even folding: columns j and 2n-j carry the same density value
    MatrixXcd Vfold = MatrixXcd::Zero(2 * (n + 1), 2 * ni);
    for (int i = 0; i <= n; ++i)
        for (int j = 1; j < n; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    Vfold(2 * i + a, 2 * (j - 1) + b) = Vfull(2 * i + a, 2 * j + b)
                                                        + Vfull(2 * i + a, 2 * c.refl(j) + b);
    ArcSystem sys;
    sys.rhs = RhsForm::DirichletTrace;
    sys.expand = Eigen::MatrixXd::Zero(2 * c.N, 2 * ni);
    for (int j = 1; j < n; ++j)
        for (int a = 0; a < 2; ++a) {
            sys.expand(2 * j + a, 2 * (j - 1) + a) = 1.0;
            sys.expand(2 * c.refl(j) + a, 2 * (j - 1) + a) = 1.0;
        }
    sys.rep.sl_density = -sys.expand.cast<cxd>(); // scattered field u = -S[density]
    if (!preconditioned) {
        sys.A = Vfold.middleRows(2, 2 * ni);
        sys.rhs_R = MatrixXcd::Zero(2 * ni, 2 * c.N);
        for (int i = 1; i < n; ++i)
            for (int a = 0; a < 2; ++a) sys.rhs_R(2 * (i - 1) + a, 2 * i + a) = 1.0;
        sys.tag = "arc-V";
    } else {
        MatrixXcd P = ps_even_matrix(PsKind::Y, kappa, n, m);
        MatrixXcd B = P * Vfold;
        sys.A = B.middleRows(2, 2 * ni);
        MatrixXcd samp = MatrixXcd::Zero(2 * (n + 1), 2 * c.N);
        for (int i = 0; i <= n; ++i)
            for (int a = 0; a < 2; ++a) samp(2 * i + a, 2 * i + a) = 1.0;
        sys.rhs_R = (P * samp).middleRows(2, 2 * ni);
        sys.tag = "arc-PSV";
    }
    return sys;
}

ArcSystem arc_neumann_system(const geom::Mesh& mesh, const MaterialParams& m,
                             bool preconditioned, cxd kappa)
{
    if (!mesh.curve->is_open) throw std::invalid_argument("arc system requires an open curve");
    Ctx c(mesh, m);
    const int n = c.n, ni = n - 1;
    if (kappa == cxd(0.0, 0.0)) kappa = default_kappa(m);
    MatrixXcd Wfull = km_split_matrix(c, SplitKind::WmW0) + w0_maue(c);

    // odd folding
    MatrixXcd Wred(2 * ni, 2 * ni);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    Wred(2 * (i - 1) + a, 2 * (j - 1) + b) =
                        Wfull(2 * i + a, 2 * j + b) - Wfull(2 * i + a, 2 * c.refl(j) + b);
    ArcSystem sys;
    sys.rhs = RhsForm::NeumannTrace;
    sys.expand = Eigen::MatrixXd::Zero(2 * c.N, 2 * ni);
    for (int j = 1; j < n; ++j)
        for (int a = 0; a < 2; ++a) {
            sys.expand(2 * j + a, 2 * (j - 1) + a) = 1.0;
            sys.expand(2 * c.refl(j) + a, 2 * (j - 1) + a) = -1.0;
        }
    sys.rep.dl_density = sys.expand.cast<cxd>(); // scattered field u = D[density]
    MatrixXcd samp = MatrixXcd::Zero(2 * ni, 2 * c.N);
    for (int i = 1; i < n; ++i)
        for (int a = 0; a < 2; ++a) samp(2 * (i - 1) + a, 2 * i + a) = 1.0;
    if (!preconditioned) {
        sys.A = Wred;
        sys.rhs_R = samp;
        sys.tag = "arc-W";
    } else {
        MatrixXcd P = ps_odd_matrix(PsKind::Yinv, kappa, n, m);
        sys.A = P * Wred;
        sys.rhs_R = P * samp;
        sys.tag = "arc-PSW";
    }
    return sys;
}

} // namespace ebie::nys
