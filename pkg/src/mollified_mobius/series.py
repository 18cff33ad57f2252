"""Partial sums of the conditionally convergent Möbius and von Mangoldt series.

Six families are supported, all functions of ``alpha`` mod 1:

====== =========================================================
kind   summand (``n <= N``)
====== =========================================================
U      ``mu(n) {n alpha} / n``
V      ``mu(n) {n alpha} log n / n``
Vstar  ``mu(n) log n psi(n alpha) / n``
W      ``mu(n) log(N/n)/log N {n alpha} / n``
Tsum   ``Lambda(n) sin(2 pi n alpha) / n``
S      ``Lambda(n) sin(2 pi n alpha)``
====== =========================================================

``alpha`` may be a :class:`RationalPoint`, a ``Fraction``/``int`` (both
evaluated in exact residue arithmetic) or a float. All asserted sums use
``math.fsum``; the boundedness monitor, which needs every prefix, uses
``numpy.cumsum``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import ArithTables, RationalPoint, sin_turns
from .characters import euler_phi, factorize
from .exceptions import DomainError
from .special_values import prop2_target, prop3_target, prop4_target

KINDS = ("U", "V", "Vstar", "W", "Tsum", "S")

Alpha = RationalPoint | Fraction | int | float


def coerce_alpha(alpha: Alpha) -> RationalPoint | float:
    """Exact rationals become :class:`RationalPoint`; floats are reduced mod 1."""
    if isinstance(alpha, RationalPoint):
        return alpha
    if isinstance(alpha, (Fraction, int, np.integer)):
        return RationalPoint.from_fraction(Fraction(int(alpha)) if isinstance(alpha, np.integer) else alpha)
    x = float(alpha)
    if not math.isfinite(x):
        raise DomainError(f"non-finite alpha {alpha!r}")
    f = x - math.floor(x)
    return 0.0 if f >= 1.0 else f


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise DomainError(f"unknown series kind {kind!r}; expected one of {KINDS}")


class _Terms:
    """Summands of every kind for one ``alpha`` up to ``n_max``, built lazily.

    Terms are computed elementwise, so the prefix of length ``k`` is identical
    whatever ``n_max`` the object was built with.
    """

    def __init__(self, alpha: Alpha, n_max: int, tables: ArithTables, split: bool = False):
        tables.require(n_max)
        self.alpha = coerce_alpha(alpha)
        self.n_max = n_max
        self.tables = tables
        self.split = split
        self._cache: dict[str, np.ndarray] = {}
        sq = tables.squarefree
        pp = tables.prime_powers
        self.sq = sq[: np.searchsorted(sq, n_max, side="right")]
        self.pp = pp[: np.searchsorted(pp, n_max, side="right")]

    def _frac(self, n: np.ndarray) -> np.ndarray:
        alpha = self.alpha
        if isinstance(alpha, RationalPoint):
            return (n * alpha.a % alpha.q) / alpha.q
        if self.split:
            # n * hi is exact for n < 2**27, so only n * lo carries rounding
            hi = math.ldexp(math.floor(math.ldexp(alpha, 26)), -26)
            lo = alpha - hi
            x = n * hi
            x = x - np.floor(x) + n * lo
        else:
            x = n * alpha
        f = x - np.floor(x)
        f[f >= 1.0] = 0.0
        return f

    def _get(self, key: str) -> np.ndarray:
        if key in self._cache:
            return self._cache[key]
        t = self.tables
        if key == "frac":
            out = self._frac(self.sq)
        elif key == "psi":
            f = self._get("frac")
            out = np.where(f == 0.0, 0.0, f - 0.5)
        elif key == "logn_sq":
            out = np.log(self.sq.astype(np.float64))
        elif key == "mu_over_n":
            out = t.mobius[self.sq] / self.sq
        elif key == "sin":
            if isinstance(self.alpha, RationalPoint):
                out = sin_turns(self.pp * self.alpha.a, self.alpha.q)
            else:
                out = np.sin(2.0 * np.pi * self._frac(self.pp))
        elif key == "U":
            out = self._get("mu_over_n") * self._get("frac")
        elif key == "V":
            out = self._get("U") * self._get("logn_sq")
        elif key == "Vstar":
            out = self._get("mu_over_n") * self._get("logn_sq") * self._get("psi")
        elif key == "S":
            out = t.lam[self.pp] * self._get("sin")
        elif key == "Tsum":
            out = self._get("S") / self.pp
        else:
            raise KeyError(key)
        self._cache[key] = out
        return out

    def partial(self, kind: str, n: int) -> float:
        """Compensated partial sum of ``kind`` over ``1 <= m <= n``."""
        _check_kind(kind)
        if n > self.n_max:
            raise DomainError(f"n={n} beyond prepared range {self.n_max}")
        idx = self.pp if kind in ("Tsum", "S") else self.sq
        k = int(np.searchsorted(idx, n, side="right"))
        if kind == "W":
            if n < 2:
                raise DomainError("W_N needs N >= 2 (log N > 0)")
            n_sq = self.sq[:k]
            weights = np.log(n / n_sq) / math.log(n)
            return math.fsum(self._get("U")[:k] * weights)
        return math.fsum(self._get(kind)[:k])

    def prefix_sums(self, kind: str) -> tuple[np.ndarray, np.ndarray]:
        """Support indices and running sums (``cumsum``) for ``kind``."""
        if kind == "W":
            raise DomainError("W has N-dependent weights; no single running sum")
        idx = self.pp if kind in ("Tsum", "S") else self.sq
        return idx, np.cumsum(self._get(kind))


def partial_sum(kind: str, alpha: Alpha, n_max: int, tables: ArithTables) -> float:
    """Partial sum of series ``kind`` at ``alpha`` up to ``n_max``."""
    _check_kind(kind)
    if kind == "W" and n_max < 2:
        raise DomainError("W_N needs N >= 2 (log N > 0)")
    return _Terms(alpha, n_max, tables).partial(kind, n_max)


def u_partial(alpha: Alpha, n_max: int, tables: ArithTables) -> float:
    """``U_N(alpha) = sum_{n <= N} mu(n) {n alpha} / n``."""
    return partial_sum("U", alpha, n_max, tables)


def v_partial(alpha: Alpha, n_max: int, tables: ArithTables) -> float:
    """``V_N(alpha) = sum_{n <= N} mu(n) {n alpha} log n / n``."""
    return partial_sum("V", alpha, n_max, tables)


def vstar_partial(alpha: Alpha, n_max: int, tables: ArithTables) -> float:
    """``V*_N(alpha) = sum_{n <= N} mu(n) log n psi(n alpha) / n``."""
    return partial_sum("Vstar", alpha, n_max, tables)


def w_partial(alpha: Alpha, n_max: int, tables: ArithTables) -> float:
    """Levinson-weighted sum ``sum_{n <= N} mu(n) (log(N/n)/log N) {n alpha} / n``.

    Raises:
        DomainError: if ``n_max < 2``.
    """
    return partial_sum("W", alpha, n_max, tables)


def tsum_partial(alpha: Alpha, n_max: int, tables: ArithTables) -> float:
    """``sum_{n <= N} Lambda(n) sin(2 pi n alpha) / n`` (no ``1/pi``)."""
    return partial_sum("Tsum", alpha, n_max, tables)


def t_of_alpha(alpha: Alpha, n_max: int, tables: ArithTables) -> float:
    """Partial-sum estimate of ``T(alpha) = (1/pi) sum Lambda(n) sin(2 pi n alpha)/n``."""
    return tsum_partial(alpha, n_max, tables) / math.pi


def s_exponential(alpha: Alpha, u: int, tables: ArithTables) -> float:
    """Unweighted prime exponential sum ``S_u(alpha) = sum_{n <= u} Lambda(n) sin(2 pi n alpha)``."""
    return partial_sum("S", alpha, u, tables)


def mobius_log_sum(n_max: int, tables: ArithTables, divisible_by: int = 1) -> float:
    """``sum_{n <= N, d | n} mu(n) log n / n`` for ``d = divisible_by``."""
    tables.require(n_max)
    n = tables.squarefree[: np.searchsorted(tables.squarefree, n_max, side="right")]
    n = n[n % divisible_by == 0]
    return math.fsum(tables.mobius[n] * np.log(n.astype(np.float64)) / n)


def reconciliation_residual(alpha: Alpha, n_max: int, tables: ArithTables) -> float:
    """Residual of ``V = V* + (1/2) sum mu(n) log n / n - (1/2) sum_{q | n} mu(n) log n / n``.

    The last sum is present only for rational ``alpha = a/q``; it removes the
    terms where ``{n alpha} = psi(n alpha) = 0``.
    """
    terms = _Terms(alpha, n_max, tables)
    v = terms.partial("V", n_max)
    vs = terms.partial("Vstar", n_max)
    correction = 0.5 * mobius_log_sum(n_max, tables)
    if isinstance(terms.alpha, RationalPoint):
        correction -= 0.5 * mobius_log_sum(n_max, tables, divisible_by=terms.alpha.q)
    return v - vs - correction


def _mobius_of(q: int) -> int:
    fac = factorize(q)
    return 0 if any(e > 1 for _, e in fac) else (-1) ** len(fac)


def series_target(kind: str, alpha: Alpha) -> float | None:
    """Limit of the partial sums where a closed form is known, else ``None``.

    ``U`` and ``W`` tend to ``-sin(2 pi alpha)/pi`` for every ``alpha``. At a
    rational ``a/q``, ``Tsum`` and ``Vstar`` have closed forms through
    character sums, and ``V = V* + 1/2 sum mu log n/n - 1/2 sum_{q|n} ...``
    tends to ``Vstar_limit - 1/2 + mu(q)/(2 phi(q))``.
    """
    _check_kind(kind)
    a = coerce_alpha(alpha)
    if kind in ("U", "W"):
        if isinstance(a, RationalPoint):
            return prop2_target(a)
        return -math.sin(2.0 * math.pi * a) / math.pi
    if not isinstance(a, RationalPoint):
        return None
    if kind == "Tsum":
        return prop4_target(a).value
    if kind == "Vstar":
        return prop3_target(a)
    if kind == "V":
        return prop3_target(a) - 0.5 + 0.5 * _mobius_of(a.q) / euler_phi(a.q)
    return None


@dataclass(frozen=True)
class SeriesScan:
    """Partial sums of one series at a schedule of ``N`` values."""

    kind: str
    alpha: RationalPoint | float
    schedule: list[int]
    values: list[float]
    target: float | None = None
    errors: list[float] | None = None


def convergence_scan(
    kind: str,
    alpha: Alpha,
    schedule: Sequence[int],
    tables: ArithTables,
    target: float | None = None,
) -> SeriesScan:
    """Partial sums at every ``N`` in ``schedule`` from a single set of summands.

    The target defaults to :func:`series_target`. Values equal the
    corresponding single-``N`` calls (e.g. :func:`u_partial`) exactly.
    """
    _check_kind(kind)
    schedule = [int(n) for n in schedule]
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise DomainError("schedule must be non-empty and strictly increasing")
    terms = _Terms(alpha, schedule[-1], tables)
    values = [terms.partial(kind, n) for n in schedule]
    if target is None:
        target = series_target(kind, terms.alpha)
    errors = None if target is None else [v - target for v in values]
    return SeriesScan(kind=kind, alpha=terms.alpha, schedule=schedule, values=values, target=target, errors=errors)


@dataclass(frozen=True)
class JumpRow:
    eps: float
    t_left: float
    t_right: float

    @property
    def average(self) -> float:
        return 0.5 * (self.t_left + self.t_right)

    @property
    def measured_half_jump(self) -> float:
        return 0.5 * (self.t_right - self.t_left)


@dataclass(frozen=True)
class JumpReport:
    """Measured one-sided values of ``T`` around ``a/q``. Nothing here is asserted."""

    point: RationalPoint
    n_max: int
    t_at: float
    conjectured_half_jump: float
    rows: list[JumpRow]

    def averaging_residuals(self) -> list[float]:
        return [abs(self.t_at - r.average) for r in self.rows]


def jump_probe(point: RationalPoint, eps_schedule: Sequence[float], n_max: int, tables: ArithTables) -> JumpReport:
    """Estimate ``T(a/q +- eps)`` by partial sums up to ``n_max``.

    Reports the one-sided values, their average against ``T(a/q)`` and the
    measured half-jump against the conjectured ``mu(q)/(2 phi(q))``. The
    partial sums only resolve ``eps`` well above ``1/n_max``.
    """
    eps_schedule = [float(e) for e in eps_schedule]
    if any(e <= 0 for e in eps_schedule) or any(b >= a for a, b in zip(eps_schedule, eps_schedule[1:])):
        raise DomainError("eps_schedule must be positive and strictly decreasing")
    tables.require(n_max)
    centre = point.a / point.q
    rows = [
        JumpRow(eps=e, t_left=t_of_alpha(centre - e, n_max, tables), t_right=t_of_alpha(centre + e, n_max, tables))
        for e in eps_schedule
    ]
    return JumpReport(
        point=point,
        n_max=n_max,
        t_at=t_of_alpha(point, n_max, tables),
        conjectured_half_jump=0.5 * _mobius_of(point.q) / euler_phi(point.q),
        rows=rows,
    )


@dataclass(frozen=True)
class MonitorReport:
    """Empirical ``sup |partial sum|`` over an ``alpha`` grid and all ``N <= n_max``."""

    kind: str
    n_max: int
    sup: float
    alpha_at_sup: float
    n_at_sup: int
    ceiling: float | None

    @property
    def within_ceiling(self) -> bool:
        return self.ceiling is None or self.sup <= self.ceiling


def boundedness_monitor(
    kind: str,
    alpha_grid: Sequence[Alpha],
    n_max: int,
    tables: ArithTables,
    ceiling: float | None = None,
) -> MonitorReport:
    """Supremum of ``|partial sum|`` over the grid and every ``N <= n_max``.

    ``kind`` is one of ``V``, ``Vstar`` or ``Tsum``; ``Tsum`` is reported
    divided by ``pi``, i.e. as partial sums of ``T(alpha)``. The optional
    ceiling is a regression tripwire, not a bound from the theory.
    """
    if kind not in ("V", "Vstar", "Tsum"):
        raise DomainError(f"monitor supports V, Vstar, Tsum; got {kind!r}")
    if not len(alpha_grid):
        raise DomainError("alpha_grid must be non-empty")
    scale = 1.0 / math.pi if kind == "Tsum" else 1.0
    best = (-1.0, 0.0, 0)
    for alpha in alpha_grid:
        idx, running = _Terms(alpha, n_max, tables).prefix_sums(kind)
        if running.size == 0:
            continue
        j = int(np.argmax(np.abs(running)))
        val = abs(running[j]) * scale
        if val > best[0]:
            best = (val, float(coerce_alpha(alpha)), int(idx[j]))
    sup, a_sup, n_sup = best
    return MonitorReport(kind=kind, n_max=n_max, sup=float(max(sup, 0.0)), alpha_at_sup=a_sup, n_at_sup=n_sup, ceiling=ceiling)
