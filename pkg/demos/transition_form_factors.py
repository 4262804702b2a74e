"""Transition form factors t0..t3 between hydrogen bound states.

Each quadruple comes from the closed-form radial integrals; one k per pair is
checked against the brute-force 3D quadrature oracle.

    python3 demos/transition_form_factors.py
"""
import numpy as np

from dirac_matel.matel import transition_quadruple
from dirac_matel.oracle import oracle_quadruple
from dirac_matel.states import BoundState, PhysicalConstants, bound_energy

consts = PhysicalConstants(Z=1)
za = consts.za
s1s = BoundState(0, -1, "1/2", consts)
s2s = BoundState(1, -1, "1/2", consts)
p12 = BoundState(1, 1, "1/2", consts)
p32 = BoundState(0, -2, "1/2", consts)

print(f"binding energies: 1s {1 - bound_energy(s1s):.6e}, 2s {1 - bound_energy(s2s):.6e}, "
      f"2p1/2 {1 - bound_energy(p12):.6e}, 2p3/2 {1 - bound_energy(p32):.6e}")
print("the 2s and 2p1/2 levels coincide in the Coulomb field:",
      bound_energy(s2s) == bound_energy(p12))

ks = np.geomspace(0.01, 10, 7) * za
for label, final in [("1s -> 1s", s1s), ("2s -> 1s", s2s), ("2p1/2 -> 1s", p12), ("2p3/2 -> 1s", p32)]:
    print(f"\n{label}")
    print(f"  {'k/(Z alpha)':>11} {'t0':>14} {'t1':>14} {'combined':>14}")
    for k in ks:
        q = transition_quadruple(s1s, final, float(k))
        print(f"  {k / za:11.3g} {q.t0:14.6e} {q.t1:14.6e} {q.combined:14.6e}")
    k = float(ks[3])
    got = transition_quadruple(s1s, final, k).as_tuple()
    ref = oracle_quadruple(s1s, final, k)
    err = max(abs(g - r) for g, r in zip(got, ref)) / max(abs(r) for r in ref)
    print(f"  oracle check at k = {k / za:.3g} Z alpha: max deviation {err:.1e} of the largest entry")
