#!/usr/bin/env python3
"""Reference values for the C++ test suite, computed with mpmath/scipy.

Each block prints constants that are frozen into tests/. Rerun after editing:
    python3 tools/oracles/frozen_values.py
"""
import mpmath as mp

mp.mp.dps = 40


def p_kernel(x, w, eps):
    # box average of ln|t-w| over [x-eps, x+eps], brute-force quadrature
    return mp.quad(lambda t: mp.log(abs(t - w)), [x - eps, w, x + eps]) / (2 * eps) \
        if x - eps < w < x + eps else \
        mp.quad(lambda t: mp.log(abs(t - w)), [x - eps, x + eps]) / (2 * eps)


print("== smoothed log kernel p(x,w;eps), brute-force box averages ==")
for (x, w, eps) in [(0.0, 10.0, 0.01), (1.0, 2.5, 0.3), (0.5, 0.5, 0.2), (-1.2, -0.9, 0.4)]:
    print(f"p({x},{w},{eps}) = {mp.nstr(p_kernel(mp.mpf(x), mp.mpf(w), mp.mpf(eps)), 20)}")

print("\n== semicircle (V = x^2/2, support [-2,2], rho = sqrt(4-x^2)/(2pi)) ==")
rho_sc = lambda x: mp.sqrt(4 - x**2) / (2 * mp.pi)
print("mass      =", mp.nstr(mp.quad(rho_sc, [-2, 2]), 20))
print("F(1.0)    =", mp.nstr(mp.quad(rho_sc, [-2, 1]), 20))
print("F(-0.5)   =", mp.nstr(mp.quad(rho_sc, [-2, -0.5]), 20))
# quantile: F(x)=0.75
q75 = mp.findroot(lambda x: mp.quad(rho_sc, [-2, x]) - mp.mpf(3) / 4, 0.8)
print("F^-1(3/4) =", mp.nstr(q75, 20))
print("m(3i)     =", mp.nstr(mp.quad(lambda t: rho_sc(t) / (3j - t), [-2, 2]), 20),
      " closed form:", mp.nstr(1j * (3 - mp.sqrt(13)) / 2, 20))
print("m(0.5+0.8i) =", mp.nstr(mp.quad(lambda t: rho_sc(t) / (0.5 + 0.8j - t), [-2, 2]), 20))
zc = mp.mpf(1) / 2 + mp.mpf(4) / 5 * 1j
print("   closed form:", mp.nstr((zc - mp.sqrt(zc * zc - 4)) / 2, 20))
# W1 between a single atom at 0 and the semicircle: integral of |1_{x>=0} - F(x)|
F = lambda x: mp.quad(rho_sc, [-2, x])
w1 = mp.quad(lambda x: abs((1 if x >= 0 else 0) - F(x)), [-2, 0, 2])
print("W1(delta_0, sc) =", mp.nstr(w1, 20))

print("\n== symmetric two-cut quartic V = x^4/4 - c x^2, c = 2 ==")
# support [-b,-a] u [a,b], a^2 = 2c-2, b^2 = 2c+2; rho = |x|/(2pi) sqrt((x^2-a^2)(b^2-x^2))
c = mp.mpf(2)
a, b = mp.sqrt(2 * c - 2), mp.sqrt(2 * c + 2)
rho2 = lambda x: abs(x) / (2 * mp.pi) * mp.sqrt((x * x - a * a) * (b * b - x * x))
print("a =", mp.nstr(a, 20), " b =", mp.nstr(b, 20))
print("mass     =", mp.nstr(2 * mp.quad(rho2, [a, b]), 20))
print("rho(1.5) =", mp.nstr(rho2(mp.mpf(1.5)), 20))
print("m(2i)    =", mp.nstr(mp.quad(lambda t: rho2(t) / (2j - t), [-b, -a]) +
                            mp.quad(lambda t: rho2(t) / (2j - t), [a, b]), 20))
# cross-block interaction energy: sum_{i!=j} int_{cut_i} int_{cut_j} rho rho ln|x-y|
inner = lambda x: mp.quad(lambda y: rho2(y) * mp.log(abs(x - y)), [a, b])
sigma_star = 2 * mp.quad(lambda x: rho2(x) * inner(x), [-b, -a])
print("cross-block energy Sigma* =", mp.nstr(sigma_star, 20))
# effective potential value on the support (the Lagrange constant):
# ell = V(x) - 2 int ln|x-y| rho(y) dy at x = a (edge, still on support)
V = lambda x: x**4 / 4 - c * x * x
logint = lambda x: (mp.quad(lambda y: rho2(y) * mp.log(abs(x - y)), [-b, -a]) +
                    mp.quad(lambda y: rho2(y) * mp.log(abs(x - y)), [a, (a + x) / 2, x, (x + b) / 2, b]))
for x0 in [mp.mpf(1.6), mp.mpf(2.0)]:
    print(f"ell at x={float(x0)} :", mp.nstr(V(x0) - 2 * logint(x0), 20))

print("\n== Fourier coefficients of the log kernel: r_k = -Si(pi k)/(pi k) ==")
for k in [1, 2, 3, 10, 100]:
    print(f"r_{k} =", mp.nstr(-mp.si(mp.pi * k) / (mp.pi * k), 22))
print("int_0^1 ln(t) cos(k pi t) dt  (independent oscillatory quadrature):")
for k in [1, 2, 3, 10]:
    v = mp.quad(lambda t: mp.log(t) * mp.cos(k * mp.pi * t), [0, mp.mpf(1) / k, 1], maxdegree=12)
    print(f"k={k}: {mp.nstr(v, 22)}   -Si/(pik): {mp.nstr(-mp.si(mp.pi*k)/(mp.pi*k), 22)}")

print("\n== Si(x) reference points ==")
for x in [mp.mpf('0.5'), mp.mpf(1), mp.mpf(4), mp.mpf(10), mp.mpf(25), mp.mpf(100),
          mp.pi * 100, mp.pi * 10000]:
    print(f"Si({mp.nstr(x, 12)}) = {mp.nstr(mp.si(x), 22)}")

print("\n== log-energy of a smooth zero-mass measure (for the Fourier/direct cross-check) ==")
# density g(x) = cos(pi x) on [0,1] wrt dx has zero mass; energy = -int int g g ln|x-y|.
# Inner integral in closed form via Si/Ci (integration by parts kills the boundary terms):
inner_cf = lambda x: -(1 / mp.pi) * (mp.cos(mp.pi * x) * (mp.si(mp.pi * (1 - x)) + mp.si(mp.pi * x))
                                     + mp.sin(mp.pi * x) * (mp.ci(mp.pi * (1 - x)) - mp.ci(mp.pi * x)))
E = -2 * mp.quad(lambda x: mp.cos(mp.pi * x) * inner_cf(x), [0, mp.mpf(1) / 2], maxdegree=10)
print("E[cos-pi-x density] =", mp.nstr(E, 22))
# Fourier route with exact coefficients: |c_1|^2 = 1/4, even k: |c_k|^2 = (1/pi^2)(1/(k+1)+1/(k-1))^2,
# odd k>1: 0.  (Numerical quadrature of e^{-ik pi x} is useless at large k; do not "simplify" back.)
tot = mp.mpf(0)
for k in range(1, 200001):
    if k == 1:
        ck2 = mp.mpf(1) / 4
    elif k % 2 == 0:
        s = (mp.mpf(1) / (k + 1) + mp.mpf(1) / (k - 1)) / mp.pi
        ck2 = s * s
    else:
        continue
    tot += 2 * (mp.si(mp.pi * k) / (mp.pi * k)) * ck2
print("Fourier sum (2e5 terms) =", mp.nstr(tot, 22))
