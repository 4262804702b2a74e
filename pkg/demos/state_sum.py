"""Itemised second-order shift of hydrogen 1s on a small truncation.

Sums the principal-value k integral over bound and discretised continuum
intermediate states, for a ladder of Pauli-Villars cutoffs, and breaks the
total down by |kappa| shell and by bound/continuum.  The default CLI run
(N_max=2, K_max=3, 64 continuum nodes) takes a few minutes; this one takes
well under a minute.

    python3 demos/state_sum.py
"""
import warnings

from dirac_matel.errors import CancellationWarning, TruncationWarning
from dirac_matel.shift import DeltaMHook, RegularizationSpec, Truncation, state_sum, state_sum_ladder
from dirac_matel.states import BoundState, PhysicalConstants

s1 = BoundState(0, -1, "1/2", PhysicalConstants(Z=1))
trunc = Truncation(N_max=1, K_max=2, p_nodes=12)
lams = (10.0, 20.0, 40.0)

with warnings.catch_warnings():
    warnings.simplefilter("ignore", CancellationWarning)
    warnings.simplefilter("ignore", TruncationWarning)
    ladder = state_sum_ladder(s1, trunc, lams)
    hooked = state_sum(s1, trunc, RegularizationSpec(10.0), DeltaMHook.self_subtraction())

print(f"{len(ladder[0].records)} records per cutoff")
print(f"{'Lambda':>8} {'total':>16} {'bound':>16} {'continuum':>16} {'|kappa|=1':>12} {'|kappa|=2':>12}")
for lam, res in zip(lams, ladder):
    bound = sum(r.dm_subtracted for r in res.records if not r.s2_label.startswith("free"))
    shells = [sum(r.dm_subtracted for r in res.records if abs(r.diagnostics.get("kappa")) == K) for K in (1, 2)]
    print(f"{lam:8g} {res.total:16.9e} {bound:16.9e} {res.total - bound:16.9e} "
          f"{shells[0]:12.4e} {shells[1]:12.4e}")
d1 = abs(ladder[0].total - ladder[1].total)
d2 = abs(ladder[1].total - ladder[2].total)
print(f"successive cutoff differences {d1:.2e}, {d2:.2e}")

print("\nlargest single contributions at Lambda = 10:")
for r in sorted(ladder[0].records, key=lambda r: -abs(r.dm_subtracted))[:5]:
    print(f"  {r.s2_label:<40} {r.dm_subtracted:13.5e}")

print(f"\nwith the self-subtracting mass hook the total is {hooked.total:g}")
