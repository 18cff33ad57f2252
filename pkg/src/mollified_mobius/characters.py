"""Dirichlet characters as dense value tables.

A character group mod ``q`` is built from the CRT decomposition of
``(Z/qZ)^*``: each odd prime power contributes one cyclic generator (a
primitive root) and ``2^e`` contributes ``-1`` and ``5`` for ``e >= 3``.
Character values are stored both as complex numbers and as integer exponents
of a primitive ``e``-th root of unity, so parity and conductor tests are
exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import RationalPoint
from .exceptions import CapacityError, DomainError

MAX_MODULUS = 1_000_000
# phi(q) * q complex entries; dense tables beyond this are refused
MAX_TABLE_ENTRIES = 10_000_000

EXACT_TOL = 1e-10


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorisation by trial division, ascending primes."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def _primitive_root(p: int, e: int) -> int:
    """A generator of ``(Z/p^e)^*`` for odd prime ``p``."""
    rs = [r for r, _ in factorize(p - 1)]
    g = next(g for g in range(2, p + 1) if all(pow(g, (p - 1) // r, p) != 1 for r in rs))
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _generator_logs(q: int) -> tuple[list[int], list[int], list[np.ndarray]]:
    """Generators, their orders, and per-generator discrete-log tables mod ``q``.

    Each log table has length ``q`` and holds -1 on residues not coprime to ``q``.
    """
    residues = np.arange(q, dtype=np.int64)
    coprime = np.gcd(residues, q) == 1
    gens: list[int] = []
    orders: list[int] = []
    logs: list[np.ndarray] = []
    for p, e in factorize(q):
        pe = p**e
        cofactor = q // pe
        # lift a local generator to a residue mod q that is 1 on the other components
        lift = (lambda g: g) if cofactor == 1 else (
            lambda g: (g * cofactor * pow(cofactor, -1, pe) + pe * pow(pe, -1, cofactor)) % q
        )
        local = residues % pe
        if p == 2:
            if e == 1:
                continue
            minus = np.where(local % 4 == 1, 0, 1)
            gens.append(lift(pe - 1))
            orders.append(2)
            logs.append(np.where(coprime, minus, -1))
            if e >= 3:
                order5 = pe // 4
                table = np.full(pe, -1, dtype=np.int64)
                x = 1
                for k in range(order5):
                    table[x] = k
                    x = x * 5 % pe
                # b = (-1)^s 5^k, so (-1)^s b is the power of 5
                unsigned = np.where(minus == 0, local, (-local) % pe)
                gens.append(lift(5))
                orders.append(order5)
                logs.append(np.where(coprime, table[unsigned], -1))
        else:
            g = _primitive_root(p, e)
            order = pe // p * (p - 1)
            table = np.full(pe, -1, dtype=np.int64)
            x = 1
            for k in range(order):
                table[x] = k
                x = x * g % pe
            gens.append(lift(g))
            orders.append(order)
            logs.append(np.where(coprime, table[local], -1))
    return gens, orders, logs


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """A Dirichlet character mod ``modulus`` stored as a value table.

    ``values[b]`` is ``chi(b)`` for ``0 <= b < modulus``; ``exponents[b]`` is
    the integer ``k`` with ``chi(b) = exp(2 pi i k / root_order)``, or -1 where
    ``gcd(b, modulus) > 1``.
    """

    modulus: int
    values: np.ndarray = field(repr=False)
    parity: str
    conductor: int
    is_principal: bool
    index: int
    label: tuple[int, ...]
    orders: tuple[int, ...] = field(repr=False)
    root_order: int = field(repr=False)
    exponents: np.ndarray = field(repr=False)

    def __call__(self, n: int) -> complex:
        return complex(self.values[n % self.modulus])

    @property
    def is_odd(self) -> bool:
        return self.parity == "odd"

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_real(self) -> bool:
        e = self.exponents[self.exponents >= 0]
        return bool(np.all((2 * e) % self.root_order == 0))

    def conjugate(self) -> "DirichletCharacter":
        """The complex-conjugate character, with its index in the same group."""
        label = tuple((-k) % o for k, o in zip(self.label, self.orders))
        exps = np.where(self.exponents < 0, -1, (-self.exponents) % self.root_order)
        values = np.conj(self.values)
        for arr in (values, exps):
            arr.flags.writeable = False
        return DirichletCharacter(
            modulus=self.modulus,
            values=values,
            parity=self.parity,
            conductor=self.conductor,
            is_principal=self.is_principal,
            index=_mixed_radix(label, self.orders),
            label=label,
            orders=self.orders,
            root_order=self.root_order,
            exponents=exps,
        )


def _mixed_radix(label: tuple[int, ...], orders: tuple[int, ...]) -> int:
    idx = 0
    for k, o in zip(label, orders):
        idx = idx * o + k
    return idx


@dataclass(frozen=True, eq=False)
class CharacterGroup:
    """All ``phi(q)`` characters mod ``q``, principal first."""

    modulus: int
    characters: tuple[DirichletCharacter, ...]
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    def __iter__(self):
        return iter(self.characters)

    def __len__(self) -> int:
        return len(self.characters)

    def __getitem__(self, i: int) -> DirichletCharacter:
        return self.characters[i]

    @property
    def principal(self) -> DirichletCharacter:
        return self.characters[0]

    def odd(self) -> list[DirichletCharacter]:
        return [c for c in self.characters if c.is_odd]

    def primitive(self) -> list[DirichletCharacter]:
        return [c for c in self.characters if c.is_primitive]

    def value_matrix(self) -> np.ndarray:
        """``(phi(q), q)`` array with row ``i`` the values of character ``i``."""
        return np.vstack([c.values for c in self.characters])


def _conductor(exponents: np.ndarray, q: int) -> int:
    residues = np.arange(q)
    coprime = exponents >= 0
    for d in divisors(q):
        # chi factors through mod d iff chi(b) = 1 for every unit b = 1 (mod d)
        if np.all(exponents[coprime & (residues % d == 1 % d)] == 0):
            return d
    return q


def _root_table(e: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(e) / e)
    exact = (1, 1j, -1, -1j)
    for k in range(e):
        if 4 * k % e == 0:
            roots[k] = exact[4 * k // e]
    return roots


@lru_cache(maxsize=256)
def character_group(q: int) -> CharacterGroup:
    """Build the full character group mod ``q``.

    Characters are enumerated lexicographically in their exponent vectors on
    the CRT generators, so the principal character comes first.

    Raises:
        DomainError: if ``q < 1``.
        CapacityError: if ``q`` or the dense table size exceeds the caps.
    """
    if q < 1:
        raise DomainError(f"modulus must be >= 1, got {q}")
    if q > MAX_MODULUS or euler_phi(q) * q > MAX_TABLE_ENTRIES:
        raise CapacityError(f"character table for q={q} exceeds the configured cap")
    gens, orders, logs = _generator_logs(q)
    e = math.lcm(*orders) if orders else 1
    roots = _root_table(e)
    coprime = np.gcd(np.arange(q), q) == 1
    scaled = [lg * (e // o) for lg, o in zip(logs, orders)]
    chars = []
    for index, label in enumerate(itertools.product(*(range(o) for o in orders))):
        exps = np.zeros(q, dtype=np.int64)
        for k, s in zip(label, scaled):
            exps += k * s
        exps %= e
        exps[~coprime] = -1
        values = np.where(coprime, roots[np.maximum(exps, 0)], 0.0 + 0.0j)
        minus_one = exps[(q - 1) % q]
        parity = "odd" if 2 * minus_one == e else "even"
        for arr in (values, exps):
            arr.flags.writeable = False
        chars.append(
            DirichletCharacter(
                modulus=q,
                values=values,
                parity=parity,
                conductor=_conductor(exps, q),
                is_principal=not any(label),
                index=index,
                label=tuple(label),
                orders=tuple(orders),
                root_order=e,
                exponents=exps,
            )
        )
    return CharacterGroup(modulus=q, characters=tuple(chars), generators=tuple(gens), orders=tuple(orders))


def gauss_sum(chi: DirichletCharacter) -> complex:
    """``tau(chi) = sum_b chi(b) e(b/q)``."""
    q = chi.modulus
    phases = np.exp(2j * np.pi * np.arange(q) / q)
    return complex(np.sum(chi.values * phases))


def induced_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod ``conductor(chi)`` that induces ``chi``."""
    f = chi.conductor
    if f == chi.modulus:
        return chi
    q = chi.modulus
    target = np.zeros(f, dtype=complex)
    for c in range(f):
        if math.gcd(c, f) != 1:
            continue
        b = next(b for b in range(c, q + f, f) if math.gcd(b, q) == 1)
        target[c] = chi.values[b % q]
    for cand in character_group(f):
        if cand.is_primitive and np.allclose(cand.values, target, atol=1e-12):
            return cand
    raise AssertionError(f"no primitive character mod {f} induces character {chi.index} mod {q}")


def lemma2_sum(point: RationalPoint) -> complex:
    """``(1/(i phi(q))) sum_{chi odd} chi(a) tau(conj chi)``, which equals ``sin(2 pi a/q)``."""
    group = character_group(point.q)
    total = sum((chi(point.a) * gauss_sum(chi.conjugate()) for chi in group.odd()), 0j)
    return total / (1j * len(group))


def orthogonality_residuals(group: CharacterGroup) -> tuple[float, float]:
    """Max deviations of both orthogonality relations.

    Returns:
        ``(over_characters, over_residues)``: the first checks
        ``sum_chi chi(a) conj chi(b) = phi(q) [a = b]`` on units, the second
        ``sum_b chi(b) conj psi(b) = phi(q) [chi = psi]``.
    """
    q = group.modulus
    v = group.value_matrix()
    n = len(group)
    units = np.gcd(np.arange(q), q) == 1
    by_char = v[:, units].T @ np.conj(v[:, units])
    by_res = v @ np.conj(v).T
    r1 = float(np.max(np.abs(by_char - n * np.eye(by_char.shape[0]))))
    r2 = float(np.max(np.abs(by_res - n * np.eye(n))))
    return r1, r2
