#include "ebie/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ebie::sf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = 0.57721566490153286060651209;

// Miller's downward recurrence. Real arguments normalize with the Neumann
// sum J_0 + 2 J_2 + ... = 1; complex arguments with the Jacobi-Anger value
// e^{-iz} = J_0 + 2 sum (-i)^nu J_nu (e^{+iz} for Im z < 0), whose terms
// share the e^{|Im z|} scale of the J's and so do not cancel.
template <typename T>
std::vector<T> miller_raw(int L, T z, int& start_out)
{
    double az = std::abs(z);
    int start = L + 24 + int(az * 1.3);
    if (start % 2) ++start;
    start_out = start;
    std::vector<T> f(start + 2, T(0));
    f[start + 1] = T(0);
    f[start] = T(1e-300);
    for (int nu = start; nu >= 1; --nu) {
        f[nu - 1] = (T(2.0 * nu) / z) * f[nu] - f[nu + 1];
        if (std::abs(f[nu - 1]) > 1e250) {
            for (int m = nu - 1; m <= start + 1; ++m) f[m] *= 1e-250;
        }
    }
    return f;
}

std::vector<double> miller_j_real(int L, double x)
{
    if (x == 0.0) {
        std::vector<double> out(L + 1, 0.0);
        out[0] = 1.0;
        return out;
    }
    int start = 0;
    auto f = miller_raw<double>(L, x, start);
    double norm = f[0];
    for (int nu = 2; nu <= start; nu += 2) norm += 2.0 * f[nu];
    std::vector<double> out(L + 1);
    for (int nu = 0; nu <= L; ++nu) out[nu] = f[nu] / norm;
    return out;
}

std::vector<cxd> miller_j_complex(int L, cxd z)
{
    if (z == cxd(0.0, 0.0)) {
        std::vector<cxd> out(L + 1, 0.0);
        out[0] = 1.0;
        return out;
    }
    const cxd i(0.0, 1.0);
    const cxd phase = (z.imag() >= 0) ? -i : i;
    int start = 0;
    auto f = miller_raw<cxd>(L, z, start);
    cxd norm = f[0];
    cxd p = 1.0;
    for (int nu = 1; nu <= start; ++nu) {
        p *= phase;
        norm += 2.0 * p * f[nu];
    }
    // target = e^{-iz} (or e^{+iz}); |target| = e^{|Im z|} can overflow, so
    // apply the exponential in halves
    const cxd ex = phase * z;
    const cxd half = std::exp(0.5 * ex);
    std::vector<cxd> out(L + 1);
    for (int nu = 0; nu <= L; ++nu) out[nu] = ((f[nu] / norm) * half) * half;
    return out;
}

int harmonic_terms_needed(double az) { return 18 + int(1.6 * az); }

// Asymptotic H^(1)_nu for large |z|, Im z >= 0, nu in {0,1}.
cxd hankel_asymptotic(int nu, cxd z)
{
    const cxd i(0.0, 1.0);
    const double mu = 4.0 * nu * nu;
    cxd sum = 1.0, term = 1.0;
    double prev = 1e300;
    for (int k = 1; k <= 40; ++k) {
        double num = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0));
        term *= i * num / (8.0 * double(k) * z);
        double a = std::abs(term);
        if (a > prev) break; // divergent tail: stop at smallest term
        sum += term;
        prev = a;
        if (a < 1e-17) break;
    }
    cxd omega = z - 0.5 * nu * kPi - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * z)) * std::exp(i * omega) * sum;
}

// Temme's CF2 for K_0, K_1 at Re zeta > 0 (complexified), used through
// H_nu(z) = (2/(i pi)) e^{-i nu pi/2} K_nu(-i z) where the power series
// would cancel catastrophically (moderate |z|, large Im z).
void hankel01_via_K(cxd z, cxd& h0, cxd& h1)
{
    const cxd i(0.0, 1.0);
    cxd x = -i * z; // Re x = Im z > 0
    cxd b = 2.0 * (1.0 + x);
    cxd d = 1.0 / b;
    cxd h = d, delh = d;
    cxd q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25; // 1/4 - mu^2 with mu = 0
    cxd q = a1, c = a1;
    double a = -a1;
    cxd s = 1.0 + q * delh;
    for (int it = 2; it < 20000; ++it) {
        a -= 2 * (it - 1);
        c = -a * c / double(it);
        cxd qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        cxd dels = q * delh;
        s += dels;
        if (std::abs(dels) < 1e-17 * std::abs(s)) break;
    }
    h = a1 * h;
    cxd k0 = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    cxd k1 = k0 * (x + 0.5 - h) / x;
    h0 = (2.0 / (i * kPi)) * k0;
    h1 = -(2.0 / kPi) * k1;
}

// Midrange near-real arguments: Y_0 from the Neumann series over the Miller
// J-sequence, Y_1 = -Y_0' differentiated term by term. Stable because the
// J_{2k} carry no exponential growth for small Im z.
void hankel01_neumann(cxd z, cxd& h0, cxd& h1)
{
    const cxd i(0.0, 1.0);
    int K = int(std::abs(z)) + 34;
    auto J = miller_j_complex(2 * K + 2, z);
    cxd lg = std::log(0.5 * z) + kEuler;
    cxd s0 = 0.0, s1 = 0.0;
    double sgn = 1.0; // (-1)^{k+1} starting at k=1
    for (int k = 1; k <= K; ++k) {
        s0 += sgn * J[2 * k] / double(k);
        s1 += sgn * (J[2 * k - 1] - J[2 * k + 1]) / double(k);
        sgn = -sgn;
    }
    cxd y0 = (2.0 / kPi) * lg * J[0] + (4.0 / kPi) * s0;
    cxd y1 = -(2.0 / kPi) * J[0] / z + (2.0 / kPi) * lg * J[1] - (2.0 / kPi) * s1;
    h0 = J[0] + i * y0;
    h1 = J[1] + i * y1;
}

} // namespace

// Regimes: power series for small |z|, CF2 (K-Bessel route) in the damped
// midrange, a Neumann-series route near the real axis, and the asymptotic
// expansion beyond the outer switch.
double hankel_switch_radius(int) { return 25.0; }
double hankel_series_radius() { return 8.0; }

std::vector<double> bessel_j_seq(int L, double x)
{
    return miller_j_real(L, x);
}

std::vector<cxd> bessel_j_seq_cx(int L, cxd z)
{
    return miller_j_complex(L, z);
}

void hankel_parts(int maxnu, cxd z, cxd* J, cxd* G)
{
    // power series for J_nu and G_nu = Y_nu - (2/pi) ln(z/2) J_nu
    const cxd z2 = 0.25 * z * z; // (z/2)^2
    const cxd zh = 0.5 * z;
    const int mmax = harmonic_terms_needed(std::abs(z));
    std::vector<double> H(mmax + maxnu + 2, 0.0); // harmonic numbers
    for (int m = 1; m < int(H.size()); ++m) H[m] = H[m - 1] + 1.0 / m;

    for (int nu = 0; nu <= maxnu; ++nu) {
        // J_nu series
        cxd zp = 1.0; // (z/2)^nu
        for (int p = 0; p < nu; ++p) zp *= zh;
        double fact = 1.0;
        for (int p = 1; p <= nu; ++p) fact *= p;
        cxd term = zp / fact;
        cxd j = term;
        for (int m = 1; m <= mmax; ++m) {
            term *= -z2 / (double(m) * double(m + nu));
            j += term;
        }
        J[nu] = j;

        // finite (pole) sum of G_nu
        cxd g = 0.0;
        if (nu > 0) {
            cxd zpin = 1.0; // (z/2)^{-nu}
            for (int p = 0; p < nu; ++p) zpin /= zh;
            double f1 = 1.0;
            for (int p = 1; p <= nu - 1; ++p) f1 *= p; // (nu-1)!
            double fm = 1.0;                           // m!
            cxd zpow = zpin;                           // (z/2)^{2m-nu}
            double fnum = f1;                          // (nu-m-1)!
            for (int m = 0; m <= nu - 1; ++m) {
                if (m > 0) {
                    fm *= m;
                    fnum /= (nu - m); // (nu-m-1)! from (nu-m)!
                    zpow *= z2;
                }
                g -= (fnum / fm) * zpow / kPi;
            }
        }
        // psi series
        {
            cxd zpow = 1.0;
            for (int p = 0; p < nu; ++p) zpow *= zh;
            double fm = 1.0, fnm = 1.0;
            for (int p = 1; p <= nu; ++p) fnm *= p;
            double sgn = 1.0;
            for (int m = 0; m <= mmax; ++m) {
                if (m > 0) {
                    fm *= m;
                    fnm *= (nu + m);
                    zpow *= z2;
                    sgn = -sgn;
                }
                double psis = (H[m] - kEuler) + (H[nu + m] - kEuler);
                g -= sgn * psis / (fm * fnm) * zpow / kPi;
            }
        }
        G[nu] = g;
    }
}

std::vector<cxd> hankel1_seq(int L, cxd z)
{
    if (z == cxd(0.0, 0.0)) throw std::domain_error("hankel1_seq: z = 0");
    const cxd i(0.0, 1.0);
    const double az = std::abs(z);
    std::vector<cxd> out(L + 1);

    if (az > hankel_switch_radius(0)) {
        out[0] = hankel_asymptotic(0, z);
        if (L >= 1) out[1] = hankel_asymptotic(1, z);
    } else if (az <= hankel_series_radius() && az + z.imag() <= 13.0) {
        cxd J[2], G[2];
        hankel_parts(1, z, J, G);
        cxd lg = std::log(0.5 * z);
        out[0] = J[0] + i * ((2.0 / kPi) * lg * J[0] + G[0]);
        if (L >= 1) out[1] = J[1] + i * ((2.0 / kPi) * lg * J[1] + G[1]);
    } else if (z.imag() >= 1.0) {
        cxd h1;
        hankel01_via_K(z, out[0], h1);
        if (L >= 1) out[1] = h1;
    } else {
        cxd h1;
        hankel01_neumann(z, out[0], h1);
        if (L >= 1) out[1] = h1;
    }
    for (int nu = 2; nu <= L; ++nu)
        out[nu] = (2.0 * (nu - 1.0) / z) * out[nu - 1] - out[nu - 2];
    return out;
}

std::vector<double> bessel_y_seq(int L, double x)
{
    auto h = hankel1_seq(L, cxd(x, 0.0));
    std::vector<double> out(L + 1);
    for (int nu = 0; nu <= L; ++nu) out[nu] = h[nu].imag();
    return out;
}

Phi0Split phi0_split(cxd k, double r, double q)
{
    const cxd i(0.0, 1.0);
    Phi0Split s;
    cxd z = k * r;
    cxd J[1], G[1];
    double az = std::abs(z);
    if (az <= hankel_series_radius() && az + z.imag() <= 13.0) {
        hankel_parts(0, z, J, G);
    } else {
        // recover G_0 from the full evaluation
        auto h = hankel1_seq(0, z);
        auto j = bessel_j_seq_cx(0, z);
        J[0] = j[0];
        G[0] = (h[0] - J[0]) / i - (2.0 / kPi) * std::log(0.5 * z) * J[0];
    }
    s.log_coefficient = -J[0] / (4.0 * kPi);
    cxd lnkq2 = std::log(0.5 * k * std::sqrt(q)); // ln(k sqrt(q) / 2)
    s.smooth = 0.25 * i * J[0] - 0.25 * ((2.0 / kPi) * lnkq2 * J[0] + G[0]);
    if (r > 0.0) {
        auto h = hankel1_seq(0, z);
        s.value = 0.25 * i * h[0];
    } else {
        s.value = s.smooth; // diagonal: log factor handled by the quadrature
    }
    return s;
}

} // namespace ebie::sf
