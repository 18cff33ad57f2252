"""Sieved arithmetic functions and elementary real functions.

The sieve produces the Möbius function, von Mangoldt function, Euler's totient
and the smallest-prime-factor table in one go. Everything downstream (series,
characters, mollifier coefficients) reads from an :class:`ArithTables`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator

import numpy as np

from .exceptions import CapacityError, DomainError

MAX_SIEVE_LIMIT = 30_000_000


@dataclass(frozen=True, eq=False)
class ArithTables:
    """Arithmetic tables indexed by ``n`` for ``0 <= n <= limit``.

    Index 0 is padding (all zero). Arrays are read-only so a single instance
    can be shared freely.

    Attributes:
        limit: Largest tabulated ``n``.
        mobius: ``mu(n)`` as int8.
        lam: von Mangoldt ``Lambda(n)`` in natural-log units.
        phi: Euler totient.
        spf: Smallest prime factor (``spf[1] == 1``).
    """

    limit: int
    mobius: np.ndarray = field(repr=False)
    lam: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)
    spf: np.ndarray = field(repr=False)

    @cached_property
    def squarefree(self) -> np.ndarray:
        """Sorted ``n >= 1`` with ``mu(n) != 0``."""
        idx = np.flatnonzero(self.mobius).astype(np.int64)
        idx.flags.writeable = False
        return idx

    @cached_property
    def prime_powers(self) -> np.ndarray:
        """Sorted ``n`` with ``Lambda(n) != 0``."""
        idx = np.flatnonzero(self.lam).astype(np.int64)
        idx.flags.writeable = False
        return idx

    @cached_property
    def primes(self) -> np.ndarray:
        n = np.arange(self.limit + 1)
        idx = np.flatnonzero((self.spf == n) & (n >= 2)).astype(np.int64)
        idx.flags.writeable = False
        return idx

    def require(self, n_max: int) -> None:
        """Raise :class:`CapacityError` unless ``n_max`` is tabulated."""
        if n_max > self.limit:
            raise CapacityError(f"n_max={n_max} exceeds sieve limit {self.limit}")


def _smallest_prime_factors(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            tail = spf[p * p :: p]
            tail[tail == 0] = p
    n = np.arange(limit + 1, dtype=np.int32)
    unset = spf == 0
    spf[unset] = n[unset]
    spf[0] = 0
    if limit >= 1:
        spf[1] = 1
    return spf


def build_tables(limit: int, max_limit: int = MAX_SIEVE_LIMIT) -> ArithTables:
    """Sieve ``mu``, ``Lambda``, ``phi`` and the smallest prime factor up to ``limit``.

    The smallest-prime-factor table comes from a vectorised Eratosthenes pass;
    ``mu`` and ``phi`` are then obtained by peeling one prime factor off every
    ``n`` simultaneously, and ``Lambda`` by walking the powers of each prime.

    Raises:
        CapacityError: if ``limit < 1`` or ``limit > max_limit``.
    """
    if limit < 1 or limit > max_limit:
        raise CapacityError(f"sieve limit must be in [1, {max_limit}], got {limit}")
    spf = _smallest_prime_factors(limit)

    mobius = np.ones(limit + 1, dtype=np.int8)
    mobius[0] = 0
    phi = np.arange(limit + 1, dtype=np.int64)

    idx = np.arange(2, limit + 1, dtype=np.int64)
    rest = idx.copy()
    last = np.zeros_like(idx)
    while idx.size:
        p = spf[rest].astype(np.int64)
        repeat = p == last
        mobius[idx[repeat]] = 0
        fresh = ~repeat
        i_new, p_new = idx[fresh], p[fresh]
        mobius[i_new] *= -1
        phi[i_new] = phi[i_new] // p_new * (p_new - 1)
        rest //= p
        last = p
        keep = rest > 1
        idx, rest, last = idx[keep], rest[keep], last[keep]

    lam = np.zeros(limit + 1, dtype=np.float64)
    primes = np.flatnonzero(spf == np.arange(limit + 1))
    primes = primes[primes >= 2].astype(np.int64)
    logs = np.log(primes.astype(np.float64))
    power = primes.copy()
    while power.size:
        lam[power] = logs[: power.size]
        power = power * primes[: power.size]
        # primes are sorted, so the surviving powers form a prefix
        power = power[: int(np.count_nonzero(power <= limit))]

    phi = phi.astype(np.int32) if limit < 2**31 else phi
    for arr in (mobius, lam, phi, spf):
        arr.flags.writeable = False
    return ArithTables(limit=limit, mobius=mobius, lam=lam, phi=phi, spf=spf)


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"non-finite argument {x!r}")
    return x


def frac(x: float) -> float:
    """Fractional part ``x - floor(x)``, always in ``[0, 1)``."""
    x = _check_finite(x)
    f = x - math.floor(x)
    # tiny negative x rounds x + 1 up to 1.0
    return 0.0 if f >= 1.0 else f


def sawtooth(x: float) -> float:
    """Saw-tooth ``psi(x) = {x} - 1/2``, defined as 0 at integers."""
    f = frac(x)
    return 0.0 if f == 0.0 else f - 0.5


def sawtooth2(t: float, terms: int) -> float:
    """Truncated cosine series ``(1/2pi^2) sum_{m<=terms} cos(2 pi m t)/m^2``.

    This is the antiderivative ``int_0^t psi(u) du + 1/12``; the truncation
    error is at most ``1/(2 pi^2 terms)``.
    """
    if terms < 1:
        raise DomainError("terms must be >= 1")
    t = frac(t)
    m = np.arange(1, terms + 1, dtype=np.float64)
    # reduce m*t mod 1 before the cosine to keep the argument small
    mt = m * t
    mt -= np.floor(mt)
    return math.fsum(np.cos(2.0 * np.pi * mt) / (m * m)) / (2.0 * math.pi**2)


def sin_turns(r, q: int):
    """``sin(2 pi r / q)`` for integer ``r`` (scalar or array), exact at quarter turns."""
    r = np.asarray(r, dtype=np.int64) % q
    # evaluate on the half period so sin_turns(-r) == -sin_turns(r) bit for bit
    upper = 2 * r > q
    out = np.sin(2.0 * np.pi * (np.where(upper, q - r, r) / q))
    out = np.where(upper, -out, out)
    quarter = (4 * r) % q == 0
    if np.any(quarter):
        out = np.where(quarter, np.array([0.0, 1.0, 0.0, -1.0])[(4 * r // q) % 4], out)
    return out if out.ndim else float(out)


@dataclass(frozen=True, order=True)
class RationalPoint:
    """Reduced fraction ``a/q`` with ``0 <= a < q`` and ``gcd(a, q) = 1``."""

    a: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise DomainError(f"denominator must be >= 1, got {self.q}")
        if not 0 <= self.a < self.q:
            raise DomainError(f"numerator must satisfy 0 <= a < q, got {self.a}/{self.q}")
        if math.gcd(self.a, self.q) != 1:
            raise DomainError(f"{self.a}/{self.q} is not reduced")

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "RationalPoint":
        """Reduce an arbitrary rational modulo 1."""
        value = Fraction(value)
        return cls(value.numerator % value.denominator, value.denominator)

    @classmethod
    def parse(cls, text: str) -> "RationalPoint":
        """Parse ``"a/q"``; the fraction must already be reduced with ``0 <= a < q``."""
        num, sep, den = text.strip().partition("/")
        try:
            a, q = int(num), int(den) if sep else 1
        except ValueError:
            raise DomainError(f"cannot parse rational point {text!r}") from None
        return cls(a, q)

    def __float__(self) -> float:
        return self.a / self.q

    def __str__(self) -> str:
        return f"{self.a}/{self.q}"


@dataclass(frozen=True)
class ConvergentList:
    """Continued-fraction convergents ``p_m/q_m`` of ``alpha`` (the zeroth, ``a_0/1``, omitted)."""

    alpha: float
    entries: list[tuple[int, int]]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def denominators(self) -> list[int]:
        return [q for _, q in self.entries]


def convergents(alpha: float | Fraction, max_q: int) -> ConvergentList:
    """Convergents of ``alpha`` with denominator at most ``max_q``.

    Floats are expanded exactly as the binary rationals they are, so the
    expansion always terminates and never suffers from reciprocal round-off.
    """
    if max_q < 1:
        raise DomainError("max_q must be >= 1")
    x = Fraction(alpha) if isinstance(alpha, Fraction) else Fraction(_check_finite(alpha))
    a0 = math.floor(x)
    p_prev, q_prev = 1, 0
    p, q = a0, 1
    rem = x - a0
    entries: list[tuple[int, int]] = []
    while rem:
        x = 1 / rem
        ak = math.floor(x)
        rem = x - ak
        p, p_prev = ak * p + p_prev, p
        q, q_prev = ak * q + q_prev, q
        if q > max_q:
            break
        entries.append((p, q))
    return ConvergentList(alpha=float(alpha), entries=entries)


def reciprocal_phi_sum(convs: ConvergentList, tables: ArithTables) -> float:
    """``sum_m 1/phi(q_m)`` over the convergent denominators."""
    qs = convs.denominators
    if qs:
        tables.require(max(qs))
    return math.fsum(1.0 / int(tables.phi[q]) for q in qs)
