"""Mollified Möbius sums, Dirichlet-character closed forms and the mollified distance integral."""

from .arith import ArithTables, ConvergentList, RationalPoint, build_tables, convergents, frac, sawtooth, sawtooth2
from .characters import CharacterGroup, DirichletCharacter, character_group, gauss_sum, induced_primitive, lemma2_sum
from .criterion import (
    MollifierCoeffs,
    PiecewiseIntegral,
    criterion_report,
    lhs_quadrature,
    mollifier_coeffs,
    pair_kernel,
    rhs_piecewise,
    rhs_via_pairs,
    weighted_mertens,
)
from .exceptions import CapacityError, ConsistencyError, DomainError
from .series import (
    SeriesScan,
    boundedness_monitor,
    convergence_scan,
    jump_probe,
    s_exponential,
    tsum_partial,
    u_partial,
    v_partial,
    vstar_partial,
    w_partial,
)
from .special_values import (
    ClosedFormTarget,
    hurwitz_zeta_zero,
    l_at_one,
    l_at_zero,
    log_deriv_l_at_one,
    prime_power_tail,
    prop2_target,
    prop3_target,
    prop4_target,
)
from .zeta import zeta_critical

__version__ = "0.1.0"
