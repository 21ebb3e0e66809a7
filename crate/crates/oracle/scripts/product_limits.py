"""Closed-form infinite-product limits used as frozen oracle values.

Each family is a product of bicomplex factors 1 + c*f(n) with
c = 0.3 + 0.4*i2.  The product is evaluated per idempotent component
(P1(c) = 0.3 - 0.4i, P2(c) = 0.3 + 0.4i) at 60 digits, cross-checked
two independent ways, and printed as the four real coordinates
x1 + x2*i1 + x3*i2 + x4*j.

Run: python3 product_limits.py
"""
import mpmath as mp

mp.mp.dps = 60

C_RE = mp.mpf(0.3)  # the f64 value actually fed to the library
C_I2 = mp.mpf(0.4)
P1 = mp.mpc(C_RE, -C_I2)
P2 = mp.mpc(C_RE, C_I2)


def n2_closed(a):
    # prod (1 + a/n^2) = sinh(pi sqrt a) / (pi sqrt a)
    s = mp.pi * mp.sqrt(a)
    return mp.sinh(s) / s


def n3_closed(a):
    # 1 + a/n^3 = prod_k (1 - zeta_k x / n) with x^3 = a, zeta_k^3 = -1
    x = mp.cbrt(a)
    out = mp.mpf(1)
    for k in range(3):
        zeta = mp.exp(1j * mp.pi * (2 * k + 1) / 3)
        out /= mp.gamma(1 - zeta * x)
    return out


def geo_closed(a):
    # prod_{n>=1} (1 + a/2^n) = (-a/2; 1/2)_inf
    return mp.qp(-a / 2, mp.mpf(1) / 2)


def brute(a, f, n_max):
    out = mp.mpf(1)
    for n in range(1, n_max + 1):
        out *= 1 + a * f(n)
    return out


def assemble(l1, l2):
    z1 = (l1 + l2) / 2
    z2 = 1j * (l1 - l2) / 2
    return [z1.real, z1.imag, z2.real, z2.imag]


def main():
    fams = {
        "n2": (n2_closed, lambda n: mp.mpf(1) / n**2),
        "n3": (n3_closed, lambda n: mp.mpf(1) / n**3),
        "geo": (geo_closed, lambda n: mp.mpf(2) ** (-n)),
    }
    for name, (closed, f) in fams.items():
        l1, l2 = closed(P1), closed(P2)
        # independent check: nprod with Richardson/Euler-Maclaurin acceleration
        c1 = mp.nprod(lambda n: 1 + P1 * f(n), [1, mp.inf])
        assert abs(c1 - l1) < mp.mpf(10) ** -25, (name, c1, l1)
        if name == "geo":
            assert abs(brute(P2, f, 400) - l2) < mp.mpf(10) ** -50
        print(name, [mp.nstr(v, 20) for v in assemble(l1, l2)])


if __name__ == "__main__":
    main()
