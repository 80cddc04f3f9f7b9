"""Symmetric bound states of the planar cubic Dirac equation

    (D + m sigma_3 - omega) psi = |psi|^2 psi,   D = -i sigma . grad,

computed by radial shooting, together with the closed-form massless bubbles,
Fourier-grid resolvent tools and the Green's kernel."""

__version__ = "0.1.0"

from .domain import (PAULI, SIGMA0, SIGMA1, SIGMA2, SIGMA3, PhysParams, RadialProfile,
                     SpinorField2D, ansatz_embed, make_params, mu)
from .bubbles import (BubbleSpec, bubble_energy, bubble_eval, bubble_moment_M, bubble_residual,
                      scale_field)
from .radial import ActionParts, RadialState, action_radial, rhs, series_origin
from .shooting import (ShootingConfig, ShotKind, ShotOutcome, classify_shot, node_count,
                       solve_all, solve_bound_state)
from .spectral import (Branch, apply_dirac, apply_resolvent, build_test_spinor, dual_gap_report,
                       dual_quotient_J, integral_residual)
from .greens import GreenKernel, bessel_k0, bessel_k1, gamma_kernel, green_scalar
from .decay import DecayFit, identity_checks, tail_fit
from .report import DiagnosticsReport
