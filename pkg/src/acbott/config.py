"""Numerical configuration shared across modules.

All tolerances live here so that contracts stay testable with one documented
set of defaults.  Every knob can be overridden per call; these are the values
used by the test suite and the CLI unless flags say otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Certified validity thresholds for the indices.  KAPPA_THRESHOLD gates the
# signature-based index, LOG_THRESHOLD the logarithm-based route.
KAPPA_THRESHOLD = 0.206007
LOG_THRESHOLD = 0.125


@dataclass(frozen=True)
class Tolerances:
    """Default gate widths for structural checks."""

    unitary: float = 1e-8          # ||U*U - I|| gate
    hermitian: float = 1e-8        # ||H - H*|| gate
    skew: float = 1e-8             # ||X + X^T|| gate (relative to scale)
    selfdual: float = 1e-9         # ||X - X^sharp|| gate for validated inputs
    reconstruction: float = 1e-8   # ||exp(iK) - V|| gate
    singular: float = 1e-12        # smallest singular value gate for polar part
    rounding_soft: float = 1e-6    # expected integer residue for winding sums
    rounding_hard: float = 0.01    # residue beyond which the input is broken
    gap_per_dim: float = 1e-8      # signature gap tolerance = gap_per_dim * dim
    branch: float = 1e-12          # half-width of the eigenvalue cluster at -1


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class EnvelopeConfig:
    """Grid accounting for slope/offset bound lines.

    Offsets are measured on a uniform grid; the between-sample error is folded
    into the offset using a Lipschitz budget.  ``h_lipschitz`` is a verified
    ceiling for the bump function's derivative (true sup is about 1.1928),
    ``f_lipschitz`` is exact for the degree-5 sine polynomial.
    """

    grid: int = 2 ** 20
    h_lipschitz: float = 1.2
    f_lipschitz: float = 1.875
    drift_gate: float = 1e-3


DEFAULT_ENVELOPE = EnvelopeConfig()


@dataclass(frozen=True)
class CertifyConfig:
    """Parameters for the homotopy certification sweep."""

    threshold: float = 0.95
    step_budget: float = math.sqrt(0.05)   # max allowed ||df|| + ||dg|| + ||dh||
    mesh_per_stage: int = 65
    max_degree: int = 48                   # degree cap for optimized approximants
    fine_grid: int = 2 ** 18               # half-period samples for offsets
    coarse_points: int = 512               # initial support of the line optimizer
    exchange_rounds: int = 1               # extrema re-insertion passes


DEFAULT_CERTIFY = CertifyConfig()
