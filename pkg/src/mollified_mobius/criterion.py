"""The mollified distance integral evaluated on both sides of its Fourier identity.

The fractional-part side ``int_0^inf |sum b_n {nu}/n|^2 du/u^2`` is integrated
exactly between consecutive breakpoints ``m/n``, where the inner sum is
affine. The critical-line side ``(1/2pi) int |zeta M_N|^2 / |s|^2 dt`` uses
composite Gauss-Legendre quadrature of the smooth integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .arith import ArithTables
from .exceptions import CapacityError, ConsistencyError, DomainError
from .zeta import T_CAP, zeta_critical_many

MAX_BREAKPOINTS = 20_000_000
LHS_MAX_N = 64


@dataclass(frozen=True)
class MollifierCoeffs:
    """Coefficients ``b[n]`` for ``1 <= n <= n_max``; ``b[0]`` is padding.

    The default family is ``b[n] = mu(n) log(N/n) / log N``; arbitrary vectors
    are accepted through :meth:`from_vector`.
    """

    n_max: int
    b: np.ndarray = field(repr=False)

    @classmethod
    def from_vector(cls, values: Sequence[float]) -> "MollifierCoeffs":
        """Wrap ``values[0..N-1]`` as ``b[1..N]``."""
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("coefficient vector must be 1-d and non-empty")
        if not np.all(np.isfinite(arr)):
            raise DomainError("coefficients must be finite")
        b = np.concatenate([[0.0], arr])
        b.flags.writeable = False
        return cls(n_max=arr.size, b=b)

    @property
    def support(self) -> np.ndarray:
        """Indices ``n`` with ``b[n] != 0``."""
        return np.flatnonzero(self.b)

    def dirichlet_poly(self, s: np.ndarray) -> np.ndarray:
        """``M(s) = sum b_n n^{-s}`` at complex points ``s``."""
        s = np.asarray(s, dtype=complex)
        n = self.support
        return np.exp(-np.multiply.outer(s, np.log(n.astype(np.float64)))) @ self.b[n]


def mollifier_coeffs(n_max: int, tables: ArithTables) -> MollifierCoeffs:
    """Levinson weights ``b[n] = mu(n) log(N/n) / log N``.

    Raises:
        DomainError: if ``n_max < 2``.
    """
    if n_max < 2:
        raise DomainError("mollifier needs N >= 2 (log N > 0)")
    tables.require(n_max)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    vals = tables.mobius[1 : n_max + 1] * (np.log(n_max / n) / math.log(n_max))
    vals[-1] = 0.0
    return MollifierCoeffs.from_vector(vals)


def sharp_cutoff_coeffs(n_max: int, tables: ArithTables) -> MollifierCoeffs:
    """Unweighted truncation ``b[n] = mu(n)``."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    tables.require(n_max)
    return MollifierCoeffs.from_vector(tables.mobius[1 : n_max + 1].astype(np.float64))


def weighted_mertens(n_max: int, tables: ArithTables) -> float:
    """``sum_{n <= N} mu(n) log(N/n) / log N``, the slope of the inner sum near ``u = 0``."""
    return math.fsum(mollifier_coeffs(n_max, tables).b)


# --- fractional-part side -------------------------------------------------


def _breakpoints(ns: np.ndarray, weights: np.ndarray, u_max: float, max_breakpoints: int):
    """Distinct breakpoints ``m/n <= u_max`` with the summed jump weight at each.

    Returns ``(num, den, u, jump)`` where ``num/den`` is one representative
    fraction per breakpoint. Distinct fractions with ``den <= 10^4`` and
    ``m/n <= 10^7`` never round to the same double, so float equality merges
    exactly the coincident ones; the order is re-checked by cross-multiplication.
    """
    counts = np.floor(u_max * ns + 1e-9 * ns).astype(np.int64)
    counts = np.array([c - 1 if c / n > u_max else c for c, n in zip(counts, ns)], dtype=np.int64)
    total = int(counts.sum())
    if total > max_breakpoints:
        raise CapacityError(f"{total} breakpoints exceed the cap {max_breakpoints}")
    den = np.repeat(ns, counts)
    w = np.repeat(weights, counts)
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    num = np.arange(total, dtype=np.int64) - starts + 1
    u = num / den
    order = np.lexsort((den, u))
    num, den, u, w = num[order], den[order], u[order], w[order]
    if total == 0:
        return num, den, u, w
    first = np.concatenate([[True], u[1:] != u[:-1]])
    idx = np.flatnonzero(first)
    jump = np.add.reduceat(w, idx)
    num, den, u = num[idx], den[idx], u[idx]
    if np.any(num[1:] * den[:-1] <= num[:-1] * den[1:]):
        raise ConsistencyError("breakpoints not strictly increasing in exact arithmetic")
    return num, den, u, jump


@dataclass(frozen=True)
class PiecewiseIntegral:
    """Exact integral of the squared fractional-part sum over ``(0, u_max]``.

    On the segment ending at ``breakpoints[i]`` the inner sum is
    ``A u - B[i]`` with ``A = sum b_n``. ``value`` covers ``(0, u_max]``;
    ``tail_estimate`` models ``(u_max, inf)`` as ``mean / u_max`` with the
    mean of the squared sum over ``[u_max/10, u_max]``.
    """

    breakpoints: np.ndarray = field(repr=False)
    slope: float
    offsets: np.ndarray = field(repr=False)
    segment_integrals: np.ndarray = field(repr=False)
    u_max: float
    value: float
    tail_estimate: float

    @property
    def total(self) -> float:
        return self.value + self.tail_estimate

    @property
    def uncertainty(self) -> float:
        return 0.5 * self.tail_estimate

    @property
    def segment_data(self) -> list[tuple[float, float]]:
        return [(self.slope, float(b)) for b in self.offsets]


def _affine_sq_over_u2(a: float, b: np.ndarray, u0: np.ndarray, u1: np.ndarray) -> np.ndarray:
    # int_{u0}^{u1} (a u - b)^2 / u^2 du for u0 > 0
    d = u1 - u0
    return a * a * d - 2.0 * a * b * np.log1p(d / u0) + b * b * d / (u0 * u1)


def _affine_sq(a: float, b: np.ndarray, u0: np.ndarray, u1: np.ndarray) -> np.ndarray:
    # int_{u0}^{u1} (a u - b)^2 du
    s0, s1 = a * u0 - b, a * u1 - b
    return (u1 - u0) * (s0 * s0 + s0 * s1 + s1 * s1) / 3.0


def _window_mean(edges_lo: np.ndarray, edges_hi: np.ndarray, seg_fn, lo: float, hi: float) -> float:
    # mean over [lo, hi] of a piecewise integrand given per-segment integrators
    a = np.maximum(edges_lo, lo)
    b = np.minimum(edges_hi, hi)
    keep = b > a
    return math.fsum(seg_fn(a[keep], b[keep], keep)) / (hi - lo)


def rhs_piecewise(
    coeffs: MollifierCoeffs,
    u_max: float = 1e4,
    max_breakpoints: int = MAX_BREAKPOINTS,
    include_tail: bool = True,
) -> PiecewiseIntegral:
    """``int_0^inf |sum_n b_n {nu}/n|^2 du/u^2`` by exact segment integration.

    Raises:
        DomainError: if ``u_max < 1``.
        CapacityError: if the breakpoint count exceeds ``max_breakpoints``.
    """
    if not u_max >= 1:
        raise DomainError("u_max must be >= 1")
    ns = coeffs.support
    bn = coeffs.b[ns]
    a = math.fsum(bn)
    _, _, bps, jump = _breakpoints(ns, bn / ns, u_max, max_breakpoints)
    # offset B on each segment: before the first breakpoint 0, then cumulative jumps
    offsets = np.concatenate([[0.0], np.cumsum(jump)])
    lo = np.concatenate([[0.0], bps])
    hi = np.concatenate([bps, [u_max]])
    if hi.size > 1 and hi[-2] == u_max:
        lo, hi, offsets = lo[:-1], hi[:-1], offsets[:-1]
    seg = np.empty(lo.size)
    seg[0] = a * a * hi[0]
    seg[1:] = _affine_sq_over_u2(a, offsets[1:], lo[1:], hi[1:])
    tail = 0.0
    if include_tail:
        mean = _window_mean(lo, hi, lambda x, y, k: _affine_sq(a, offsets[k], x, y), u_max / 10.0, u_max)
        tail = mean / u_max
    return PiecewiseIntegral(
        breakpoints=bps,
        slope=a,
        offsets=offsets,
        segment_integrals=seg,
        u_max=float(u_max),
        value=math.fsum(seg),
        tail_estimate=tail,
    )


def inner_sum(coeffs: MollifierCoeffs, u: np.ndarray) -> np.ndarray:
    """``sum_n b_n {nu}/n`` evaluated directly at points ``u``."""
    u = np.asarray(u, dtype=np.float64)
    out = np.zeros_like(u)
    for n in coeffs.support:
        x = n * u
        out += coeffs.b[n] * (x - np.floor(x)) / n
    return out


@dataclass(frozen=True)
class PairKernel:
    h: int
    k: int
    u_max: float
    value: float
    tail_estimate: float

    @property
    def total(self) -> float:
        return self.value + self.tail_estimate


def pair_kernel_detail(h: int, k: int, u_max: float = 1e4, include_tail: bool = True,
                       max_breakpoints: int = MAX_BREAKPOINTS) -> PairKernel:
    """``(1/h) int_0^{u_max} {hu}{ku} du/u^2`` exactly, plus the tail model."""
    if h < 1 or k < 1:
        raise DomainError("h and k must be >= 1")
    if not u_max >= 1:
        raise DomainError("u_max must be >= 1")
    _, _, bps, _ = _breakpoints(np.array([h, k], dtype=np.int64), np.zeros(2), u_max, max_breakpoints)
    lo = np.concatenate([[0.0], bps])
    hi = np.concatenate([bps, [u_max]])
    if hi.size > 1 and hi[-2] == u_max:
        lo, hi = lo[:-1], hi[:-1]
    # floor values on each open segment, from the midpoint
    mid = 0.5 * (lo + hi)
    fa = np.floor(h * mid)
    fc = np.floor(k * mid)

    def prod_over_u2(x, y, sel):
        ar, cr = fa[sel], fc[sel]
        d = y - x
        return h * k * d - (h * cr + k * ar) * np.log1p(d / x) + ar * cr * d / (x * y)

    seg = np.empty(lo.size)
    seg[0] = h * k * hi[0]
    rest = np.arange(1, lo.size)
    seg[1:] = prod_over_u2(lo[1:], hi[1:], rest)
    tail = 0.0
    if include_tail:

        def prod(x, y, sel):
            ar, cr = fa[sel], fc[sel]
            # int (hu - a)(ku - c) du
            return (h * k * (y**3 - x**3) / 3.0 - (h * cr + k * ar) * (y**2 - x**2) / 2.0
                    + ar * cr * (y - x))

        tail = _window_mean(lo, hi, prod, u_max / 10.0, u_max) / u_max / h
    return PairKernel(h=h, k=k, u_max=float(u_max), value=math.fsum(seg) / h, tail_estimate=tail)


def pair_kernel(h: int, k: int, u_max: float = 1e4, include_tail: bool = True) -> float:
    """``F(h/k) = (1/h) int_0^inf {hu}{ku} du/u^2`` truncated at ``u_max`` plus the tail model."""
    return pair_kernel_detail(h, k, u_max, include_tail).total


def rhs_via_pairs(coeffs: MollifierCoeffs, u_max: float = 1e4, include_tail: bool = True) -> float:
    """``sum_{h,k} b_h b_k / k * F(h/k)`` over the nonzero coefficients."""
    ns = [int(n) for n in coeffs.support]
    terms = []
    for i, h in enumerate(ns):
        for k in ns[i:]:
            f = pair_kernel(h, k, u_max, include_tail)
            # F(h/k)/k = F(k/h)/h, so each unordered pair counts twice
            terms.append((1.0 if h == k else 2.0) * coeffs.b[h] * coeffs.b[k] / k * f)
    return math.fsum(terms)


# --- critical-line side ---------------------------------------------------


@dataclass(frozen=True)
class QuadratureResult:
    """Critical-line integral over ``[-t_max, t_max]`` with a modelled tail."""

    value: float
    uncertainty: float
    tail_estimate: float
    discretisation: float
    t_max: float

    @property
    def total(self) -> float:
        return self.value + self.tail_estimate


def lhs_integrand(coeffs: MollifierCoeffs, t: np.ndarray, precision_target: float = 1e-12) -> np.ndarray:
    """``(1/2pi) |zeta(1/2+it) M(1/2+it)|^2 / (1/4 + t^2)``."""
    t = np.asarray(t, dtype=np.float64)
    zm = zeta_critical_many(t, precision_target) * coeffs.dirichlet_poly(0.5 + 1j * t)
    return (np.abs(zm) ** 2) / (0.25 + t * t) / (2.0 * math.pi)


def _gauss_panels(coeffs, t_max, panels, order, precision_target):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, t_max, panels + 1)
    half = 0.5 * np.diff(edges)
    nodes = (edges[:-1, None] + half[:, None] * (x[None, :] + 1.0)).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    f = lhs_integrand(coeffs, nodes, precision_target)
    return nodes, f, weights


def lhs_quadrature(
    coeffs: MollifierCoeffs,
    t_max: float = 200.0,
    precision_target: float = 1e-8,
) -> QuadratureResult:
    """Left side of the identity by composite Gauss-Legendre on ``[0, t_max]``, doubled.

    The discretisation error is estimated by halving the panel width. The tail
    beyond ``t_max`` uses the mean-value shape
    ``int_0^T |zeta M|^2 dt ~ c1 T log T + c0 T``: the two constants are fitted
    to the running integral over ``[t_max/10, t_max]`` and the density
    ``c1 (log t + 1) + c0`` is integrated against ``dt/(pi t^2)``. The reported
    uncertainty is the discretisation estimate plus half the tail.

    Raises:
        CapacityError: if ``t_max`` exceeds the zeta cap or ``N > 64``.
    """
    if not 0 < t_max <= T_CAP:
        raise CapacityError(f"t_max must lie in (0, {T_CAP}]")
    if coeffs.n_max > LHS_MAX_N:
        raise CapacityError(f"critical-line side limited to N <= {LHS_MAX_N}")
    panels = max(8, int(math.ceil(t_max)))
    order = 12
    nodes, f, w = _gauss_panels(coeffs, t_max, panels, order, precision_target)
    coarse = 2.0 * math.fsum(f * w)
    _, f2, w2 = _gauss_panels(coeffs, t_max, 2 * panels, order, precision_target)
    fine = 2.0 * math.fsum(f2 * w2)
    disc = abs(fine - coarse)

    # running integral of |zeta M|^2 = 2 pi (1/4 + t^2) * integrand, at panel ends
    dens = f * (0.25 + nodes**2) * 2.0 * math.pi
    per_panel = (dens * w).reshape(panels, order).sum(axis=1)
    ends = np.linspace(0.0, t_max, panels + 1)[1:]
    running = np.cumsum(per_panel)
    sel = ends >= t_max / 10.0
    design = np.column_stack([ends[sel] * np.log(ends[sel]), ends[sel]])
    (c1, c0), *_ = np.linalg.lstsq(design, running[sel], rcond=None)
    tail = (c1 * (math.log(t_max) + 2.0) + c0) / t_max / math.pi
    tail = max(float(tail), 0.0)
    return QuadratureResult(
        value=fine,
        uncertainty=disc + 0.5 * tail,
        tail_estimate=tail,
        discretisation=disc,
        t_max=float(t_max),
    )


# --- report ---------------------------------------------------------------


@dataclass(frozen=True)
class CriterionRow:
    n: int
    rhs_value: float
    rhs_uncertainty: float
    pairs_consistency: float
    weighted_mertens: float
    lhs_value: float | None = None
    lhs_uncertainty: float | None = None

    @property
    def gap_to_one(self) -> float:
        return abs(1.0 - self.rhs_value)


def criterion_report(
    n_schedule: Sequence[int],
    tables: ArithTables,
    u_max: float = 1e3,
    with_lhs: bool = False,
    t_max: float = 200.0,
    pairs_check_max_n: int = 30,
) -> list[CriterionRow]:
    """Distance-integral value per ``N``. Only the pairs-vs-piecewise column is a check.

    ``pairs_consistency`` compares the two fractional-part evaluations without
    tails at the same ``u_max``; it is NaN for ``N > pairs_check_max_n``,
    where the quadratic pair count makes it too slow to be worthwhile.
    """
    rows = []
    for n in n_schedule:
        coeffs = mollifier_coeffs(int(n), tables)
        rhs = rhs_piecewise(coeffs, u_max)
        if n <= pairs_check_max_n:
            pairs = rhs_via_pairs(coeffs, u_max, include_tail=False)
            consistency = abs(pairs - rhs.value)
        else:
            consistency = float("nan")
        lhs_v = lhs_u = None
        if with_lhs:
            q = lhs_quadrature(coeffs, t_max)
            lhs_v, lhs_u = q.total, q.uncertainty
        rows.append(
            CriterionRow(
                n=int(n),
                rhs_value=rhs.total,
                rhs_uncertainty=rhs.uncertainty,
                pairs_consistency=consistency,
                weighted_mertens=weighted_mertens(int(n), tables),
                lhs_value=lhs_v,
                lhs_uncertainty=lhs_u,
            )
        )
    return rows
