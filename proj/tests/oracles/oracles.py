"""Independent reference values frozen into the unit tests.

Plain Python / mpmath, no code shared with the library. Run with
`python3 tests/oracles/oracles.py`; the output is what the tests pin.
"""
import cmath
import math

import mpmath as mp

A = 0.95


def q1(z, a=A):
    return z * z + a * z ** 3


def f(z, a=A):
    return z + q1(z, a)


def omega_in(z, b):
    return -1 / z - b * cmath.log(-1 / z)


def omega_out(z, b):
    return -1 / z - b * cmath.log(1 / z)


def richardson(vals):
    # values at n, 2n, 4n with error ~ c/n: two rounds of 1/n extrapolation
    r1 = [2 * vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return [(4 * r1[i + 1] - r1[i]) / 3 for i in range(len(r1) - 1)][-1]


def phi_brute(z, n0=100000, b=1 - A):
    # double rounding over 10^5 steps costs ~1e-9, so iterate at 30 digits
    mp.mp.dps = 30
    a = mp.mpf(A)
    b = 1 - a
    vals = []
    w = mp.mpc(z.real, z.imag)
    k = 0
    for n in (n0, 2 * n0, 4 * n0):
        while k < n:
            w = w + w * w + a * w ** 3
            k += 1
        vals.append(-1 / w - b * mp.log(-1 / w) - n)
    return complex(richardson(vals))


def omega_out_inv(Z, b):
    # z = -1/(Z + b log(1/z)) is a contraction for large |Z|
    Zm = mp.mpc(Z.real, Z.imag)
    z = -1 / Zm
    for _ in range(200):
        z = -1 / (Zm + b * mp.log(1 / z))
    return z


def psi_brute(Z, n0=10000, b=1 - A):
    mp.mp.dps = 30
    a = mp.mpf(A)
    b = 1 - a
    vals = []
    for n in (n0, 2 * n0, 4 * n0):
        z = omega_out_inv(Z - n, b)
        for _ in range(n):
            z = z + z * z + a * z ** 3
        vals.append(z)
    return complex(richardson(vals))


if __name__ == "__main__":
    print("q1(0.1)", q1(0.1))
    d = 0.1
    s = 0.1 + d * 0.2
    F = (0.1 + q1(s), d * 0.2 - q1(s))
    print("F(0.1,0.2) delta 0.1", F)
    print("pi^2/400", math.pi ** 2 / 400)
    sw = 0.01 + d * 0.02
    q2 = -sw * sw
    print("G(0.01,0.02) delta 0.1", (0.01 + q2, d * 0.02 - q2))
    print("H(0.1,0.2,0.01,0.02) delta 0.1", (F[0] + math.pi ** 2 * 0.01 / 4, F[1], 0.01 + q2, d * 0.02 - q2))
    # stable manifold, degree 2: s2 + d^2 = s2 d^2
    print("s2 delta 0.1", -d * d / (1 - d * d))
    print("omega_in(-0.05+0.01i; 0.05)", omega_in(-0.05 + 0.01j, 0.05))
    print("omega_out_inv(-100+5i; 0.05)", complex(omega_out_inv(-100 + 5j, 0.05)))
    print("k_n(400, 0.55)", math.floor(400 ** 0.55))
    print("r_w, R_w at 1e-4, alpha 0.6", 1e-4 ** 0.2, 1e-4 ** -0.3)
    phi = phi_brute(-0.05)
    print("phi_f(-0.05)", phi)
    psi0 = psi_brute(0j)
    print("psi_f(0)", psi0)
    print("L_f(-0.3+0.2i)", psi_brute(phi_brute(-0.3 + 0.2j)))
    zhat = -0.22498196338461338 + 0.12964909125179411j
    lz = psi_brute(phi_brute(zhat))
    print("|L_f(zhat) - zhat|", abs(lz - zhat))
