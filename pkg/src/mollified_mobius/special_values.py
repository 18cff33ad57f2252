"""Special values of Dirichlet L-functions and closed forms at rational points.

Covers ``L(0, chi)`` (via the Hurwitz zeta function at 0), ``L(1, chi)``,
``L'/L(1, chi)`` for odd characters, and the closed forms for the limits of
the Möbius and von Mangoldt series at ``a/q``.

Two corrections relative to the formulas as usually quoted are built in and
checked against direct summation in the test-suite:

* the finite expression for ``L'/L(1, chi)`` carries ``gamma`` (Euler's
  constant), not ``gamma/2``;
* the character part of the von Mangoldt sine series carries ``-L'/L``, since
  ``sum Lambda(n) chi(n) / n = -L'/L(1, chi)``.

The uncorrected expression stays available through
:func:`log_deriv_crosscheck`, which reports it next to the series oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import ArithTables, RationalPoint, sin_turns
from .characters import (
    DirichletCharacter,
    character_group,
    factorize,
    gauss_sum,
    induced_primitive,
)
from .exceptions import ConsistencyError, DomainError

EULER_GAMMA = 0.57721566490153286061
LOG_2PI = math.log(2.0 * math.pi)

# coefficient of gamma in the finite L'/L(1) expression
VERIFIED_GAMMA_COEFFICIENT = 1.0
QUOTED_GAMMA_COEFFICIENT = 0.5

IMAG_TOL = 1e-8

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma(x: float) -> float:
    """``log Gamma(x)`` for real ``x > 0`` by the Lanczos approximation (g=7, n=9)."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    if x < 0.5:
        # reflection keeps the Lanczos sum in its accurate range
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    x -= 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return 0.5 * LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(acc)


def hurwitz_zeta_zero(b: int, q: int) -> float:
    """``zeta(0, b/q) = 1/2 - b/q`` for ``1 <= b <= q``."""
    if q < 1 or not 1 <= b <= q:
        raise DomainError(f"need 1 <= b <= q, got b={b}, q={q}")
    return 0.5 - b / q


def l_at_zero(chi: DirichletCharacter) -> complex:
    """``L(0, chi) = sum_{b=1}^q chi(b) (1/2 - b/q)``."""
    q = chi.modulus
    b = np.arange(1, q + 1)
    return complex(np.sum(chi.values[b % q] * (0.5 - b / q)))


_BERNOULLI_2K = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66)


def _block_derivative(cb: np.ndarray, b: np.ndarray, q: int, x: float, m: int) -> complex:
    # m-th derivative of f(x) = sum_b chi(b) / (q x + b)
    return complex(np.sum(cb * (-1) ** m * math.factorial(m) * q**m / (q * x + b) ** (m + 1)))


def l_at_one(chi: DirichletCharacter, precision_target: float = 1e-12) -> complex:
    """``L(1, chi)`` for non-principal ``chi``.

    Sums complete periods ``f(j) = sum_{b=1}^q chi(b)/(jq + b)`` for ``j < J``
    and replaces the rest by an Euler-Maclaurin tail with four Bernoulli
    corrections; ``J`` doubles until the first omitted correction is below
    ``precision_target``.
    """
    if chi.is_principal:
        raise DomainError("L(1, chi) diverges for the principal character")
    if not precision_target > 0:
        raise DomainError("precision_target must be positive")
    q = chi.modulus
    b = np.arange(1, q + 1, dtype=np.float64)
    cb = chi.values[np.arange(1, q + 1) % q]
    J = 8
    while True:
        remainder = abs(_BERNOULLI_2K[4] / math.factorial(10) * _block_derivative(cb, b, q, J, 9))
        if remainder < precision_target or J > 2**20:
            break
        J *= 2
    n = np.arange(1, J * q + 1)
    terms = chi.values[n % q] / n
    head = complex(math.fsum(terms.real), math.fsum(terms.imag))
    # sum chi(b) = 0 lets log(qJ + b) be replaced by log1p(b/(qJ))
    integral = complex(-np.sum(cb * np.log1p(b / (q * J))) / q)
    tail = integral + complex(np.sum(cb / (q * J + b))) / 2
    for k, bern in enumerate(_BERNOULLI_2K[:4], start=1):
        tail -= bern / math.factorial(2 * k) * _block_derivative(cb, b, q, J, 2 * k - 1)
    return head + tail


def _finite_log_deriv(chi: DirichletCharacter, gamma_coefficient: float) -> complex:
    # the finite expression evaluated with conj(chi), giving L'/L(1, chi)
    q = chi.modulus
    a = np.arange(1, q + 1)
    cbar = np.conj(chi.values[a % q])
    lg = np.array([log_gamma(x) for x in a / q])
    return LOG_2PI + gamma_coefficient * EULER_GAMMA + complex(np.sum(cbar * lg) / np.sum(cbar * a / q))


def log_deriv_l_at_one(chi: DirichletCharacter, gamma_coefficient: float = VERIFIED_GAMMA_COEFFICIENT) -> complex:
    """``L'/L(1, chi)`` for an odd character from finitely many ``log Gamma`` values.

    For primitive ``chi`` this is ``log 2pi + gamma + S_lg / S_a`` with
    ``S_lg = sum_a conj chi(a) log Gamma(a/q)`` and ``S_a = sum_a conj chi(a) a/q``.
    An imprimitive character is reduced to its primitive inducer ``chi1`` mod
    ``r``; the missing Euler factors contribute
    ``sum_{p | q, p !| r} chi1(p) log p / (p - chi1(p))``.

    Args:
        chi: an odd character.
        gamma_coefficient: coefficient of Euler's constant. The default is
            the verified value 1; pass ``QUOTED_GAMMA_COEFFICIENT`` to
            reproduce the ``gamma/2`` variant.

    Raises:
        DomainError: for even (including principal) characters.
    """
    if not chi.is_odd:
        raise DomainError("finite L'/L(1) expression needs an odd character")
    prim = induced_primitive(chi)
    value = _finite_log_deriv(prim, gamma_coefficient)
    r = prim.modulus
    for p, _ in factorize(chi.modulus):
        if r % p:
            c = prim(p)
            value += c * math.log(p) / (p - c)
    return value


def log_deriv_series_oracle(chi: DirichletCharacter, tables: ArithTables, n_max: int | None = None) -> complex:
    """Independent estimate of ``L'/L(1, chi)`` from ``-sum Lambda(n) chi(n)/n``.

    Uses the second-order Riesz mean with weight ``(1 - n/N)^2``, which
    removes the slowly decaying oscillation of the raw partial sums.
    """
    n_max = tables.limit if n_max is None else n_max
    tables.require(n_max)
    n = tables.prime_powers[tables.prime_powers <= n_max]
    w = tables.lam[n] * (1.0 - n / n_max) ** 2 / n
    terms = chi.values[n % chi.modulus] * w
    return -complex(math.fsum(terms.real), math.fsum(terms.imag))


@dataclass(frozen=True)
class LogDerivCrossCheck:
    """``L'/L(1, chi)`` by the finite expression (two constants) and by the series oracle."""

    modulus: int
    index: int
    quoted_expression: complex
    corrected_expression: complex
    series_oracle: complex
    tolerance: float

    @property
    def quoted_agrees(self) -> bool:
        return abs(self.quoted_expression - self.series_oracle) <= self.tolerance

    @property
    def corrected_agrees(self) -> bool:
        return abs(self.corrected_expression - self.series_oracle) <= self.tolerance

    @property
    def flagged(self) -> bool:
        """True when the ``gamma/2`` expression disagrees with the oracle."""
        return not self.quoted_agrees


def log_deriv_crosscheck(
    chi: DirichletCharacter, tables: ArithTables, n_max: int | None = None, tolerance: float = 1e-3
) -> LogDerivCrossCheck:
    return LogDerivCrossCheck(
        modulus=chi.modulus,
        index=chi.index,
        quoted_expression=log_deriv_l_at_one(chi, QUOTED_GAMMA_COEFFICIENT),
        corrected_expression=log_deriv_l_at_one(chi),
        series_oracle=log_deriv_series_oracle(chi, tables, n_max),
        tolerance=tolerance,
    )


def prime_power_tail(point: RationalPoint, tol: float = 1e-16) -> float:
    """``sum_{p | q} log p sum_{k >= 1} sin(2 pi a p^k / q) / p^k``.

    ``a p^k mod q`` is reduced in exact integer arithmetic. Each inner sum
    stops once ``log p * sum_{j > k} p^-j`` drops below ``tol``.
    """
    a, q = point.a, point.q
    terms = []
    for p, _ in factorize(q):
        logp = math.log(p)
        k = 1
        while True:
            r = a * pow(p, k, q) % q
            terms.append(logp * sin_turns(r, q) / p**k)
            if logp * p ** (-k) / (p - 1) < tol:
                break
            k += 1
    return math.fsum(terms)


def prop2_target(point: RationalPoint) -> float:
    """Limit of the Möbius fractional-part series: ``-sin(2 pi a/q)/pi``."""
    return -sin_turns(point.a, point.q) / math.pi


@dataclass(frozen=True)
class ClosedFormTarget:
    """Closed form of ``sum_n Lambda(n) sin(2 pi a n/q)/n`` split into its two parts."""

    point: RationalPoint
    value: float
    character_part: float
    prime_power_part: float

    @property
    def decomposition(self) -> tuple[float, float]:
        return self.character_part, self.prime_power_part


def character_sum_part(point: RationalPoint) -> complex:
    """``-(1/(i phi(q))) sum_{chi odd} chi(a) tau(conj chi) L'/L(1, chi)`` before taking the real part."""
    group = character_group(point.q)
    total = 0j
    for chi in group.odd():
        total += chi(point.a) * gauss_sum(chi.conjugate()) * log_deriv_l_at_one(chi)
    return -total / (1j * len(group))


def prop4_target(point: RationalPoint) -> ClosedFormTarget:
    """Closed form of ``sum_{n >= 1} Lambda(n) sin(2 pi a n / q) / n``.

    Raises:
        ConsistencyError: if the character sum has an imaginary part above 1e-8.
    """
    char = character_sum_part(point)
    if abs(char.imag) > IMAG_TOL:
        raise ConsistencyError(f"character part at {point} has imaginary residue {char.imag:.3e}")
    tail = prime_power_tail(point)
    return ClosedFormTarget(point=point, value=char.real + tail, character_part=char.real, prime_power_part=tail)


def prop3_target(point: RationalPoint) -> float:
    """Limit of ``sum mu(n) log n psi(n a/q) / n``, i.e. the closed form above divided by pi."""
    return prop4_target(point).value / math.pi
