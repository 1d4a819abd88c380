"""matpolkit: exact spectral analysis of square matrix polynomials.

The pipeline goes: diagonalize L(z) by tracked elementary transformations
(`smith`), read eigenvalues and Jordan chains off the diagonal form
(`spectral`), then either solve the ODE system L(d/dt)u = 0 (`odesolve`)
or build and verify a finite-dimensional Pontryagin-space realization of
-L(z)^-1 (`kreinlanger`).  Everything runs over the Gaussian rationals
with exact arithmetic (`polyalg`, `linalg`); approximate eigenvalues exist
only behind an explicit numeric fallback.
"""

from .errors import (
    ConvergenceAtInfinityError,
    GammaSolveError,
    InputFormatError,
    MpkError,
    NotHermitianError,
    NotInvertibleError,
    SpectrumError,
    VerificationError,
)
from .polyalg import (
    NUMERIC_TOL,
    GaussianRational,
    Limit,
    Poly,
    RatFun,
    RootSpec,
    find_roots,
    gr,
    poly_gcd,
    ratfun_limit,
    ratfun_limit_at_infinity,
    root_multiplicity,
    taylor_shift,
)
from .matpoly import DegreeReport, MatPoly, MatRatFun
from .smith import DiagForm, ElementaryMove, diagonalize, replay_transcript, verify_diag
from .spectral import (
    CanonicalSystem,
    ChainCheck,
    EigenEntry,
    EigenTable,
    PoleCancellationRecord,
    RootFunctionRecord,
    canonical_system,
    eigen_table,
    pole_cancellation,
    root_function,
    verify_chain,
)
from .odesolve import GeneralSolution, SolutionTerm, general_solution, verify_solution
from .kreinlanger import (
    BlockSpec,
    GammaBlock,
    Representation,
    assemble_aj,
    blocks_from_system,
    chain_limit,
    check_representability,
    limit_at_infinity_matrix,
    partial_fractions,
    reconstruct,
    represent,
    sip_matrix,
    solve_gamma,
    verify_representation,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
