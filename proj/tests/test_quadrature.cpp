#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ebie/quadrature.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

using namespace ebie::quad;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * kPi;

namespace {

// adaptive Simpson oracle for (possibly endpoint-singular) integrands
double adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                int depth = 0)
{
    double m = 0.5 * (a + b);
    auto simpson = [&f](double a_, double b_) {
        return (b_ - a_) / 6.0 * (f(a_) + 4 * f(0.5 * (a_ + b_)) + f(b_));
    };
    double whole = simpson(a, b);
    double halves = simpson(a, m) + simpson(m, b);
    if (depth > 48 || std::abs(whole - halves) < 15 * tol) return halves;
    return adaptive(f, a, m, tol / 2, depth + 1) + adaptive(f, m, b, tol / 2, depth + 1);
}

} // namespace

TEST_CASE("K-M rule: exact on cos(m tau) against the displayed identity")
{
    int n = 16, m = 3;
    auto W = km_weights(n);
    int i = 0; // t_i = 0
    double qsum = 0;
    for (int j = 0; j < 2 * n; ++j) qsum += W.R(i, j) * std::cos(m * (j * kPi / n));
    CHECK(qsum == doctest::Approx(-kTwoPi / m).epsilon(1e-12));
}

TEST_CASE("K-M rule: vanishing mean of log(4 sin^2(tau/2))")
{
    int n = 12;
    auto W = km_weights(n);
    double qsum = W.R.row(0).sum();
    CHECK(std::abs(qsum) < 1e-12);
}

TEST_CASE("K-M rule matches adaptive quadrature on a random trig polynomial")
{
    int n = 16;
    auto W = km_weights(n);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    double a0 = U(rng);
    std::vector<double> ac(7), bc(7);
    for (int q = 0; q < 7; ++q) { ac[q] = U(rng); bc[q] = U(rng); }
    auto f = [&](double tau) {
        double s = a0;
        for (int q = 1; q <= 7; ++q) s += ac[q - 1] * std::cos(q * tau) + bc[q - 1] * std::sin(q * tau);
        return s;
    };
    double ti = 5 * kPi / n; // a grid node
    double exact = adaptive([&](double tau) {
        double d = 4 * std::pow(std::sin((ti - tau) / 2), 2);
        return (d > 0 ? std::log(d) : 0.0) * f(tau);
    }, 0.0, kTwoPi, 1e-14);
    double qsum = 0;
    for (int j = 0; j < 2 * n; ++j) qsum += W.R(5, j) * f(j * kPi / n);
    CHECK(qsum == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("Hilbert rule: analytic transform of sinusoids and constants")
{
    int n = 16;
    auto H = hilbert_matrix(n);
    // p.v. int cot((tau - t)/2) sin(m tau) dtau = 2 pi cos(m t)
    int m = 3;
    for (int i : {0, 3, 9}) {
        double t = i * kPi / n;
        double qs = 0, qc = 0, q1 = 0;
        for (int j = 0; j < 2 * n; ++j) {
            qs += H(i, j) * std::sin(m * (j * kPi / n));
            qc += H(i, j) * std::cos(m * (j * kPi / n));
            q1 += H(i, j);
        }
        CHECK(qs == doctest::Approx(kTwoPi * std::cos(m * t)).epsilon(1e-11));
        CHECK(qc == doctest::Approx(-kTwoPi * std::sin(m * t)).epsilon(1e-11));
        CHECK(std::abs(q1) < 1e-11);
    }
}

TEST_CASE("shifted rules: interpolation and product weights")
{
    int n = 16;
    auto S = hilbert_and_shift_rules(n);
    auto f = [](double t) { return std::exp(std::cos(t)) * std::sin(2 * t + 0.4); };
    Eigen::VectorXd fv(2 * n);
    for (int j = 0; j < 2 * n; ++j) fv(j) = f(j * kPi / n);
    Eigen::VectorXd fs = S.interp * fv;
    for (int j = 0; j < 2 * n; ++j) {
        double t = j * kPi / n + kPi / (2 * n);
        CHECK(fs(j) == doctest::Approx(f(t)).epsilon(1e-10));
    }
    // shifted trapezoid reproduces the periodic trapezoid value
    double tv = (S.trap_w.row(0).cwiseProduct(fs.transpose())).sum();
    double tv0 = fv.sum() * kPi / n;
    CHECK(tv == doctest::Approx(tv0).epsilon(1e-10));
    // shifted cot rule: Hilbert transform of sin(m tau)
    int m = 2, i = 4;
    double q = 0;
    for (int j = 0; j < 2 * n; ++j) q += S.cot_w(i, j) * std::sin(m * (j * kPi / n + kPi / (2 * n)));
    CHECK(q == doctest::Approx(kTwoPi * std::cos(m * (i * kPi / n))).epsilon(1e-11));
}

TEST_CASE("spectral differentiation")
{
    int n = 16;
    auto D = trig_diff_matrix(n);
    Eigen::VectorXd fv(2 * n), dfv(2 * n);
    for (int j = 0; j < 2 * n; ++j) {
        double t = j * kPi / n;
        fv(j) = std::sin(3 * t) + 0.5 * std::cos(5 * t);
        dfv(j) = 3 * std::cos(3 * t) - 2.5 * std::sin(5 * t);
    }
    Eigen::VectorXd got = D * fv;
    CHECK((got - dfv).lpNorm<Eigen::Infinity>() < 1e-11);
}

TEST_CASE("Fejer weights: sum, x^2, exponential")
{
    for (int nr : {1, 4, 12, 33}) {
        auto w = fejer_weights(nr);
        double s = 0;
        for (double x : w) s += x;
        CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    }
    {
        auto w = fejer_weights(4);
        double s = 0;
        for (int j = 1; j <= 4; ++j) {
            double x = std::cos((2 * j - 1) * kPi / 8);
            s += w[j - 1] * x * x;
        }
        CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    }
    {
        auto w = fejer_weights(12);
        double s = 0;
        for (int j = 1; j <= 12; ++j) {
            double x = std::cos((2 * j - 1) * kPi / 24);
            s += w[j - 1] * std::exp(x);
        }
        CHECK(s == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-12));
    }
}

TEST_CASE("Alpert tables load and are consistent")
{
    for (int order : {3, 10}) {
        auto r = alpert_rule(order);
        CHECK(r.order == order);
        CHECK(int(r.chi.size()) == r.m);
        double sw = 0;
        for (int p = 0; p < r.m; ++p) {
            CHECK(r.chi[p] > 0);
            CHECK(r.w[p] > 0);
            sw += r.w[p];
        }
        // composite rule applied to 1 gives exactly 2 pi
        CHECK(sw == doctest::Approx(r.a - 0.5).epsilon(1e-13));
    }
    CHECK(alpert_rule(10).a == 6);
    CHECK(alpert_rule(10).m == 10);
    CHECK(alpert_rule(3).a == 2);
    CHECK(alpert_rule(3).m == 3);
    CHECK_THROWS((void)alpert_rule(7));
}

TEST_CASE("Alpert rule integrates the constant to 2 pi")
{
    auto r = alpert_rule(10);
    int n = 24;
    auto row = alpert_row(r, 3, n);
    double s = row.grid_w.sum();
    for (const auto& og : row.off) s += og.weight;
    CHECK(s == doctest::Approx(kTwoPi).epsilon(1e-12));
}

TEST_CASE("Alpert on smooth kernels reduces to spectral accuracy")
{
    auto r = alpert_rule(10);
    int n = 32;
    Eigen::VectorXcd sigma(2 * n);
    for (int j = 0; j < 2 * n; ++j) sigma(j) = std::sin(j * kPi / n);
    auto kernel = [](double t, double tau) { return cxd(std::cos(tau - t), 0.0); };
    // exact: int cos(tau - t) sin(tau) dtau = pi sin(t)... at t = t_i
    int i = 5;
    double t = i * kPi / n;
    auto v = apply_alpert(r, kernel, sigma, i, n);
    CHECK(std::abs(v - cxd(kPi * std::sin(t), 0)) < 1e-12);
}

TEST_CASE("Alpert: log kernel with unit density integrates to ~0")
{
    auto r = alpert_rule(10);
    int n = 32;
    Eigen::VectorXcd one = Eigen::VectorXcd::Ones(2 * n);
    auto kernel = [](double t, double tau) {
        return cxd(std::log(4 * std::pow(std::sin((t - tau) / 2), 2)), 0.0);
    };
    auto v = apply_alpert(r, kernel, one, 0, n);
    CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("Alpert matches adaptive oracle for log|sin((t-tau)/2)| cos(tau)")
{
    auto r = alpert_rule(10);
    int n = 64;
    Eigen::VectorXcd one = Eigen::VectorXcd::Ones(2 * n);
    auto kernel = [](double t, double tau) {
        return cxd(std::log(std::abs(std::sin((t - tau) / 2)) + 1e-300) * std::cos(tau), 0.0);
    };
    double exact = adaptive([](double tau) {
        double s = std::abs(std::sin(tau / 2));
        return (s > 0 ? std::log(s) : 0.0) * std::cos(tau);
    }, 0.0, kTwoPi, 1e-13);
    auto v = apply_alpert(r, kernel, one, 0, n);
    CHECK(std::abs(v - cxd(exact, 0)) < 1e-9);
}

TEST_CASE("order verification on the log model integral")
{
    // estimated order of the order-10 rule is >= 9 until the error floor
    auto sigma_f = [](double tau) { return std::exp(std::cos(tau)); };
    auto kernel = [](double t, double tau) {
        double d = 4 * std::pow(std::sin((t - tau) / 2), 2);
        return cxd(d > 0 ? std::log(d) : 0.0, 0.0);
    };
    double exact = adaptive([&](double tau) {
        double d = 4 * std::pow(std::sin(tau / 2), 2);
        return (d > 0 ? std::log(d) : 0.0) * sigma_f(tau);
    }, 0.0, kTwoPi, 5e-15);
    auto r = alpert_rule(10);
    std::vector<double> errs;
    for (int n : {16, 32, 64}) {
        Eigen::VectorXcd s(2 * n);
        for (int j = 0; j < 2 * n; ++j) s(j) = sigma_f(j * kPi / n);
        auto v = apply_alpert(r, kernel, s, 0, n);
        errs.push_back(std::abs(v - cxd(exact, 0)));
    }
    double order1 = std::log2(errs[0] / errs[1]);
    CHECK(order1 >= 9.0);

    // K-M on the same integral converges superalgebraically
    std::vector<double> kmerrs;
    for (int n : {8, 16, 32}) {
        auto W = km_weights(n);
        double q = 0;
        for (int j = 0; j < 2 * n; ++j) q += W.R(0, j) * sigma_f(j * kPi / n);
        kmerrs.push_back(std::abs(q - exact));
    }
    CHECK((kmerrs[0] / kmerrs[1] >= 100.0 || kmerrs[1] < 5e-13));
    CHECK((kmerrs[1] / kmerrs[2] >= 100.0 || kmerrs[2] < 5e-13));
}

TEST_CASE("rules are linear")
{
    int n = 8;
    auto W = km_weights(n);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    Eigen::VectorXd f(2 * n), g(2 * n);
    for (int j = 0; j < 2 * n; ++j) { f(j) = U(rng); g(j) = U(rng); }
    double alpha = 1.3, beta = -0.7;
    Eigen::VectorXd lhs = W.R * (alpha * f + beta * g);
    Eigen::VectorXd rhs = alpha * (W.R * f) + beta * (W.R * g);
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-13);
}
