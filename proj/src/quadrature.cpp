#include "ebie/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ebie::quad {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

double km_weight(int n, double u)
{
    double s = 0;
    for (int m = 1; m < n; ++m) s += std::cos(m * u) / m;
    s += std::cos(n * u) / (2.0 * n);
    return -kTwoPi / n * s;
}

double hilbert_weight(int n, double u)
{
    double s = 0;
    for (int m = 1; m < n; ++m) s += std::sin(m * u);
    return -kPi / n * (2.0 * s + std::sin(n * u));
}

KmWeights km_weights(int n)
{
    const int N = 2 * n;
    const double h = kPi / n;
    std::vector<double> row(N);
    for (int d = 0; d < N; ++d) row[d] = km_weight(n, d * h);
    KmWeights out;
    out.n = n;
    out.R.resize(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out.R(i, j) = row[((i - j) % N + N) % N];
    return out;
}

MatrixXd hilbert_matrix(int n)
{
    const int N = 2 * n;
    const double h = kPi / n;
    std::vector<double> row(N);
    for (int d = 0; d < N; ++d) row[d] = hilbert_weight(n, d * h);
    MatrixXd H(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) H(i, j) = row[((i - j) % N + N) % N];
    return H;
}

namespace {

// cardinal function of the 2n grid: l(u) = sin(n u) cot(u/2) / (2n)
double trig_cardinal(int n, double u)
{
    double s = std::sin(0.5 * u);
    if (std::abs(s) < 1e-14) return 1.0;
    return std::sin(n * u) * std::cos(0.5 * u) / s / (2.0 * n);
}

} // namespace

ShiftedRules hilbert_and_shift_rules(int n)
{
    const int N = 2 * n;
    const double h = kPi / n;
    ShiftedRules out;
    out.interp.resize(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out.interp(i, j) = trig_cardinal(n, (i - j) * h + h / 2);
    // product weights with sources at t_j + h/2: the shifted grid is again a
    // uniform 2n grid, so the node-based weight formulas apply with the
    // half-spacing offset folded into the distance.
    out.log_w.resize(N, N);
    out.cot_w.resize(N, N);
    out.trap_w = MatrixXd::Constant(N, N, h);
    std::vector<double> lw(2 * N), cw(2 * N);
    for (int d = -N; d < N; ++d) {
        double u = d * h - h / 2;
        lw[d + N] = km_weight(n, u);
        cw[d + N] = hilbert_weight(n, u);
    }
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            out.log_w(i, j) = lw[(i - j) + N];
            out.cot_w(i, j) = cw[(i - j) + N];
        }
    return out;
}

MatrixXd trig_diff_matrix(int n)
{
    const int N = 2 * n;
    const double h = kPi / n;
    MatrixXd D = MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            int d = ((i - j) % N + N) % N;
            double sgn = (d % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = 0.5 * sgn / std::tan(0.5 * d * h);
        }
    return D;
}

MatrixXd trig_interp_matrix(int n, const std::vector<double>& targets)
{
    const int N = 2 * n;
    const double h = kPi / n;
    MatrixXd M(targets.size(), N);
    for (size_t i = 0; i < targets.size(); ++i)
        for (int j = 0; j < N; ++j) M(i, j) = trig_cardinal(n, targets[i] - j * h);
    return M;
}

std::vector<double> fejer_weights(int n_r)
{
    if (n_r < 1) throw std::invalid_argument("fejer_weights: n_r < 1");
    std::vector<double> w(n_r);
    for (int j = 1; j <= n_r; ++j) {
        double th = (2 * j - 1) * kPi / (2 * n_r);
        double s = 0;
        for (int q = 1; q <= n_r / 2; ++q) s += std::cos(2 * q * th) / (4.0 * q * q - 1.0);
        w[j - 1] = 2.0 / n_r * (1.0 - 2.0 * s);
    }
    return w;
}

namespace {

uint64_t fnv1a64(const std::string& s)
{
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace

AlpertRule alpert_rule(int order, const std::string& path)
{
    std::string file = path.empty() ? std::string(EBIE_DATA_DIR) + "/alpert_log_rules.txt" : path;
    std::ifstream in(file);
    if (!in) throw std::runtime_error("alpert_rule: cannot open " + file);
    std::string line, payload;
    uint64_t want = 0;
    bool have_sum = false;
    std::vector<std::string> data_lines;
    while (std::getline(in, line)) {
        if (line.rfind("# fnv1a64 ", 0) == 0) {
            want = std::stoull(line.substr(10), nullptr, 16);
            have_sum = true;
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        // normalize whitespace
        std::istringstream ss(line);
        std::string tok, norm;
        while (ss >> tok) {
            if (!norm.empty()) norm += ' ';
            norm += tok;
        }
        data_lines.push_back(norm);
    }
    for (size_t i = 0; i < data_lines.size(); ++i) {
        payload += data_lines[i];
        if (i + 1 < data_lines.size()) payload += '\n';
    }
    if (have_sum && fnv1a64(payload) != want)
        throw std::runtime_error("alpert_rule: table checksum mismatch in " + file);

    size_t idx = 0;
    while (idx < data_lines.size()) {
        std::istringstream hd(data_lines[idx++]);
        int ord, a, m;
        hd >> ord >> a >> m;
        AlpertRule r;
        r.order = ord;
        r.a = a;
        r.m = m;
        for (int p = 0; p < m; ++p) {
            std::istringstream ln(data_lines[idx++]);
            double chi, w;
            ln >> chi >> w;
            r.chi.push_back(chi);
            r.w.push_back(w);
        }
        if (ord == order) return r;
    }
    throw std::invalid_argument("alpert_rule: no rule of order " + std::to_string(order));
}

namespace {

// one-sided Lagrange stencil of length L at integer offsets 1..L,
// evaluated at offset chi in (0, a)
std::vector<double> lagrange_onesided(int L, double chi)
{
    std::vector<double> c(L, 1.0);
    for (int p = 1; p <= L; ++p) {
        for (int q = 1; q <= L; ++q) {
            if (q == p) continue;
            c[p - 1] *= (chi - q) / double(p - q);
        }
    }
    return c;
}

} // namespace

AlpertRowExpansion alpert_row(const AlpertRule& rule, int i, int n)
{
    const int N = 2 * n;
    const double h = kPi / n;
    const int L = rule.m + 3;
    if (N <= 2 * rule.a) throw std::invalid_argument("alpert_row: grid too coarse (2n <= 2a)");
    AlpertRowExpansion out;
    out.grid_w = Eigen::VectorXd::Zero(N);
    for (int p = 0; p <= N - 2 * rule.a; ++p) {
        int col = ((i + rule.a + p) % N + N) % N;
        out.grid_w(col) += h;
    }
    for (int p = 0; p < rule.m; ++p) {
        double chi = rule.chi[p];
        auto coef = lagrange_onesided(L, chi);
        AlpertRowExpansion::OffGrid right, left;
        right.tau = i * h + chi * h;
        right.weight = h * rule.w[p];
        left.tau = i * h + kTwoPi - chi * h;
        left.weight = h * rule.w[p];
        for (int q = 1; q <= L; ++q) {
            right.cols.push_back(((i + q) % N + N) % N);
            right.coef.push_back(coef[q - 1]);
            left.cols.push_back(((i - q) % N + N) % N);
            left.coef.push_back(coef[q - 1]);
        }
        out.off.push_back(std::move(right));
        out.off.push_back(std::move(left));
    }
    return out;
}

cxd apply_alpert(const AlpertRule& rule, const std::function<cxd(double, double)>& kernel,
                 const Eigen::VectorXcd& sigma, int i, int n)
{
    const double h = kPi / n;
    const double ti = i * h;
    auto row = alpert_row(rule, i, n);
    cxd total = 0.0;
    for (int j = 0; j < row.grid_w.size(); ++j)
        if (row.grid_w(j) != 0.0) total += row.grid_w(j) * kernel(ti, j * h) * sigma(j);
    for (const auto& og : row.off) {
        cxd sval = 0.0;
        for (size_t q = 0; q < og.cols.size(); ++q) sval += og.coef[q] * sigma(og.cols[q]);
        total += og.weight * kernel(ti, og.tau) * sval;
    }
    return total;
}

} // namespace ebie::quad
