#!/usr/bin/env python3
"""Fixture generator for the frozen reference values used in the Rust tests.

Runs at 50 significant digits with mpmath. The printed values are pasted
into `tests/fixtures.rs`; this script is not run by `cargo test`.
"""
import mpmath as mp

mp.mp.dps = 50


def show(label, v):
    if isinstance(v, mp.mpc):
        print(f"{label}: re = {mp.nstr(v.real, 20)}, im = {mp.nstr(v.imag, 20)}")
    else:
        print(f"{label}: {mp.nstr(v, 20)}")


# Gamma spot values.
for z in [mp.mpc(0.5, 1.0), mp.mpc(2.0, 2.0), mp.mpc(10.5, -7.25)]:
    show(f"gamma({z})", mp.gamma(z))

# Principal log-gamma, continuous on Re z > 0.
for z in [mp.mpc(0.5, 1.0), mp.mpc(3.0, 40.0), mp.mpc(25.0, -30.0)]:
    show(f"loggamma({z})", mp.loggamma(z))

# Kernel K(1+i, 1-i) for a=2, rho=1: (1/2pi) 2^{-(2+2i)} Gamma(2+2i).
s = mp.mpc(2, 2)
show("kernel_M(1+i,1-i;2,1)", mp.power(2, -s) * mp.gamma(s) / (2 * mp.pi))

# Spectral norm of the indicator of [-1,0] for a=2, rho=1.
val = mp.quad(lambda u: mp.exp(2 * u) / u, [1 / mp.e, 1])
show("int_{1/e}^1 e^{2u}/u du", val)
show("sqrt of the above", mp.sqrt(val))

# Harmonic number and Carleman ratio for z_j = j at R = 1000.
h = mp.fsum(mp.mpf(1) / j for j in range(1, 1001))
show("H_1000", h)
show("H_1000 / log 1000", h / mp.log(1000))

# Carleman ratio along the 45 degree ray z_j = j(1+i)/sqrt 2, R = 1000:
# Re(1/z_j) = 1/(j sqrt 2).
show("45deg ratio R=1000", mp.fsum(1 / (j * mp.sqrt(2)) for j in range(1, 1001)) / mp.log(1000))


# Lower bound sweep: bound(n,u,rho,y,p) / |Gamma(n/2+u/rho+iy)|^p, n = 1..40.
def bound(n, u, rho, y, p):
    return mp.exp(-p * u / rho - p * mp.pi * abs(y) / 2
                  + p * (n - 1) / 2 * mp.log(mp.mpf(n) / 2) - p * n / 2)


for (u, rho, y, p) in [(1, 1, 0, 2), (1, 1, 3, 4), (mp.mpf("0.5"), 2, 1, 3)]:
    ratios = [bound(n, u, rho, y, p) / abs(mp.gamma(mp.mpf(n) / 2 + mp.mpf(u) / rho + 1j * y)) ** p
              for n in range(1, 41)]
    show(f"max bound ratio u={u} rho={rho} y={y} p={p}", max(ratios))

# Growth envelope ratio sqrt(K(x,x)) / envelope(x) on x = 1, 1.5, ..., 30 (a = 2, rho = 1).
def ratio(x, a=2, rho=1):
    x = mp.mpf(x)
    k = mp.power(a, -2 * x / rho) * mp.gamma(2 * x / rho) / (2 * mp.pi * rho)
    env = x ** mp.mpf(0.25) * mp.power(mp.mpf(2) / a, x / rho) * mp.gamma(x / rho)
    return mp.sqrt(k) / env


show("max envelope ratio a=2 rho=1", max(ratio(1 + 0.5 * i) for i in range(59)))
show("max envelope ratio a=0.5 rho=2", max(ratio(1 + 0.5 * i, 0.5, 2) for i in range(59)))

# Projection series, p = 2, a = 2, rho = 1, u = 1: terms (1/n!) int |Gamma(n/2+1+iy)|^2 dy
# = 2 pi (n+1)/2^{n+2}. Relative gap between N = 10 and N = 60 partial sums.
s10 = mp.fsum((n + 1) / mp.mpf(2) ** (n + 2) for n in range(0, 11))
s60 = mp.fsum((n + 1) / mp.mpf(2) ** (n + 2) for n in range(0, 61))
show("projection p=2 relative gap N=10 vs N=60", (s60 - s10) / s60)

# Counterexample (1): direct line integral sum for k = 1, N = 40, Y = 200.
def fk_norm(k, N=40, Y=200):
    tot = mp.mpf(0)
    for n in range(N + 1):
        c = 1 + mp.mpf(k) * n / 2
        tot += mp.mpf(2) ** n / mp.factorial(n) * 2 / (k * c) * mp.atan(k * Y / c)
    return tot


for k in [1, 2, 4, 8, 16]:
    show(f"fk_norm2 k={k}", fk_norm(k))
