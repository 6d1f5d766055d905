#!/usr/bin/env python3
"""Generate hybrid Gauss-trapezoidal correction nodes/weights for log-singular
kernels (orders 3 and 10) by solving the endpoint moment conditions

    sum_p w_p chi_p^j        = -zeta(-j, a)      j = 0..m-1
    sum_p w_p chi_p^j ln chi = zeta'(-j, a)      j = 0..m-1

in high precision, then verify the composite periodic rule on a model
integral with a log singularity.
"""
import numpy as np
from scipy.optimize import fsolve
import mpmath as mp

mp.mp.dps = 50


def rhs_vectors(a, m):
    mono = [-mp.zeta(-j, a) for j in range(m)]
    logm = [mp.zeta(-j, a, 1) for j in range(m)]
    return mono, logm


def residual_np(u, a, m, mono, logm):
    chi = np.exp(u[:m])          # positivity via exp
    w = u[m:]
    r = np.empty(2 * m)
    for j in range(m):
        r[j] = np.sum(w * chi**j) - mono[j]
        r[m + j] = np.sum(w * chi**j * np.log(chi)) - logm[j]
    return r


def solve_double(a, m):
    mono, logm = rhs_vectors(a, m)
    mono = [float(v) for v in mono]
    logm = [float(v) for v in logm]
    best = None
    for smax in np.linspace(a * 0.8, a + m * 0.65, 24):
        for jitter in range(3):
            rng = np.random.default_rng(1234 + jitter)
            # seed: Chebyshev-like spread on (0, smax)
            kk = np.arange(1, m + 1)
            chi0 = smax * (1 - np.cos((2 * kk - 1) * np.pi / (2 * m))) / 2
            chi0 = np.maximum(chi0 * (1 + 0.02 * jitter * rng.standard_normal(m)), 1e-4)
            w0 = np.full(m, (float(-mp.zeta(0, a))) / m)
            u0 = np.concatenate([np.log(chi0), w0])
            sol, info, ier, msg = fsolve(residual_np, u0, args=(a, m, mono, logm),
                                         full_output=True, xtol=1e-13, maxfev=20000)
            if ier != 1:
                continue
            chi = np.exp(sol[:m]); w = sol[m:]
            if np.any(w <= 0):
                continue
            order = np.argsort(chi)
            chi, w = chi[order], w[order]
            if np.min(np.diff(chi)) < 1e-6:
                continue
            res = np.max(np.abs(residual_np(sol, a, m, mono, logm)))
            if res < 1e-9:
                best = (chi, w)
                break
        if best:
            break
    return best


def polish_mp(a, m, chi, w):
    mono, logm = rhs_vectors(a, m)

    def F(*u):
        chi_ = [mp.exp(x) for x in u[:m]]
        w_ = list(u[m:])
        out = []
        for j in range(m):
            out.append(mp.fsum(w_[p] * chi_[p]**j for p in range(m)) - mono[j])
        for j in range(m):
            out.append(mp.fsum(w_[p] * chi_[p]**j * mp.log(chi_[p]) for p in range(m)) - logm[j])
        return out

    u0 = [mp.log(mp.mpf(c)) for c in chi] + [mp.mpf(x) for x in w]
    sol = mp.findroot(F, u0, tol=1e-40)
    chi_mp = [mp.exp(sol[i]) for i in range(m)]
    w_mp = [sol[m + i] for i in range(m)]
    return chi_mp, w_mp


def composite_rule_value(a, m, chi, w, n, kernel, sigma, t=0.0):
    """Apply the periodic composite rule to int_0^{2pi} k(t,tau) sigma(tau) dtau."""
    h = 2 * np.pi / (2 * n)   # 2n points on [0,2pi)
    total = 0.0 + 0.0j
    # regular part: tau = t + a*h .. t + 2pi - a*h
    for p in range(0, 2 * n - 2 * a + 1):
        tau = t + a * h + p * h
        total += h * kernel(t, tau) * sigma(tau)
    # corrections both sides
    for p in range(m):
        taur = t + chi[p] * h
        taul = t + 2 * np.pi - chi[p] * h
        total += h * w[p] * (kernel(t, taur) * sigma(taur) + kernel(t, taul) * sigma(taul))
    return total


def verify(a, m, chi, w):
    kernel = lambda t, tau: np.log(4 * np.sin((t - tau) / 2) ** 2)
    sigma = lambda tau: np.exp(np.cos(tau)) * np.cos(2 * tau + 0.7)
    exact = mp.quad(lambda tau: mp.log(4 * mp.sin(tau / 2) ** 2) *
                    mp.exp(mp.cos(tau)) * mp.cos(2 * tau + 0.7), [0, mp.pi, 2 * mp.pi])
    exact = float(exact)
    errs = []
    for n in (16, 32, 64, 128):
        v = composite_rule_value(a, m, chi, w, n, kernel, sigma).real
        errs.append(abs(v - exact))
    orders = [np.log2(errs[i] / errs[i + 1]) for i in range(len(errs) - 1)
              if errs[i + 1] > 0]
    return errs, orders


def main():
    out = []
    for (order, a, m) in ((3, 2, 3), (10, 6, 10)):
        got = solve_double(a, m)
        assert got is not None, f"double solve failed for a={a} m={m}"
        chi, w = got
        chi_mp, w_mp = polish_mp(a, m, chi, w)
        chi_f = np.array([float(c) for c in chi_mp])
        w_f = np.array([float(x) for x in w_mp])
        errs, orders = verify(a, m, chi_f, w_f)
        print(f"order={order} a={a} m={m}")
        print("  chi:", ", ".join(mp.nstr(c, 22) for c in chi_mp))
        print("  w  :", ", ".join(mp.nstr(x, 22) for x in w_mp))
        print("  model errors:", ["%.3e" % e for e in errs])
        print("  observed orders:", ["%.2f" % o for o in orders])
        out.append((order, a, m, chi_mp, w_mp))

    with open("/root/proj/data/alpert_log_rules.txt", "w") as f:
        f.write("# hybrid Gauss-trapezoidal correction rules for log-singular kernels\n")
        f.write("# format: 'order a m' then m lines 'chi_p w_p' (>=20 significant digits)\n")
        for (order, a, m, chi_mp, w_mp) in out:
            f.write(f"{order} {a} {m}\n")
            for c, x in zip(chi_mp, w_mp):
                f.write(f"{mp.nstr(c, 22)} {mp.nstr(x, 22)}\n")
    print("wrote /root/proj/data/alpert_log_rules.txt")


if __name__ == "__main__":
    main()
