"""Plane-wave matrix elements of Dirac-Coulomb states and second-order shift assembly."""
from .angular import GauntKey, GauntValue, gaunt_legendre, gaunt_sph, sph_harm
from .errors import (
    BranchCutError,
    CancellationWarning,
    DegenerateTransformError,
    DiracMatelError,
    DomainError,
    NoConvergence,
    PoleError,
    PoleMisconfigured,
    PreconditionError,
    SubcriticalError,
    TruncationWarning,
    UnsupportedM,
    WindowTooWide,
)
from .matel import TransitionQuadruple, fourier_block, spinor_coefficients, transition_quadruple
from .numerics import gamma_c, hyp1f1, hyp2f1, sph_bessel
from .radial import radial_integral
from .shift import DeltaMHook, KGrid, RegularizationSpec, Truncation, k_integrand, pv_integrate, state_sum
from .states import BoundState, FreeState, PhysicalConstants, energy, radial_pair

__version__ = "0.1.0"
