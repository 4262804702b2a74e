"""Hypergeometric functions and Gaunt coefficients, checked against mpmath.

    python3 demos/special_functions.py
"""
import warnings

import mpmath

from dirac_matel.angular import gaunt_legendre, gaunt_sph_value
from dirac_matel.numerics import hyp1f1, hyp2f1

mpmath.mp.dps = 40

print("1F1(a; c; z): value, route taken, relative error against mpmath")
for a, c, z in [(0.5, 1.5, 2.0), (1 + 2j, 3.5, 20j), (2 - 1j, 1.5 + 0.5j, -60.0),
                (9.25 + 2.9j, -7.36 - 6.38j, 1.73 + 4.42j)]:
    v, d = hyp1f1(a, c, z)
    ref = complex(mpmath.hyp1f1(a, c, z))
    print(f"  a={a!s:>12} c={c!s:>14} z={z!s:>12}  {v:.12g}  {d.transformation_applied:<22} "
          f"{abs(v - ref) / abs(ref):.1e}")

print("\n2F1(a, b; c; z) across the plane")
for a, b, c, z in [(1, 1, 2, -1), (0.5, 0.5, 1.5, 0.25), (1.5, 2.5, 3.0, 0.9 + 0.1j),
                   (0.3, 0.7, 1.2, 0.5 + 0.866j), (2.0, 2.0, 5.0, -4.0 + 1.0j),
                   (-1.58 + 3.97j, -3.77 + 2.73j, 0.88 - 4.80j, 2.51 - 1.27j)]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        v, d = hyp2f1(a, b, c, z)
    ref = complex(mpmath.hyp2f1(a, b, c, z))
    print(f"  z={complex(z)!s:>12}  {v:.12g}  {d.transformation_applied:<36} {abs(v - ref) / abs(ref):.1e}")

print("\nGaunt coefficients: values and the rule that zeroes them")
for l, m in [((1, 1, 0), (0, 0, 0)), ((2, 1, 1), (0, 0, 0)), ((2, 2, 2), (1, -1, 0))]:
    g = gaunt_legendre((*l, *m))
    print(f"  legendre l={l} m={m}: {g.value:.12g} ({g.vanishing_reason})")
for args in [(2, 1, 1, 0, 1, 1), (1, 0, 1, 1, 1, 0), (3, 0, 1, 0, 1, 0), (6, 0, 1, 0, 1, 0)]:
    g = gaunt_sph_value(*args)
    print(f"  spherical (l, m, l1, m1, l2, m2)={args}: {g.value:.12g} ({g.vanishing_reason})")
