"""Exact arithmetic in GF(p^R) = F_p[x]/(m(x)).

Elements are handled as integer *codes*: the element with coefficient
vector ``(c_0, ..., c_{R-1})`` (constant term first) has code
``sum(c_j * p**(R-1-j))``. Ordering codes numerically therefore orders
elements lexicographically by coefficient vector, low degree first, which is
the canonical vertex order used everywhere else in the package.

Multiplication, inversion and powers go through a discrete-log table that is
built once per field; addition works digit-wise.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _config
from .errors import (
    BoundExceeded,
    DivisionByZero,
    NotADivisor,
    NotPrime,
    ZeroArgument,
)

__all__ = [
    "FieldElement",
    "FieldSpec",
    "build_field",
    "is_prime",
    "prime_factors",
    "divisors",
    "prime_power",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, R)`` with ``q == p**R`` and p prime, or None."""
    if q < 2:
        return None
    p = prime_factors(q)[0]
    R = 0
    while q % p == 0:
        q //= p
        R += 1
    return (p, R) if q == 1 else None


# -- polynomials over F_p, coefficient lists with the constant term first ----

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for j in range(dm + 1):
            a[shift + j] = (a[shift + j] - c * m[j]) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_mulmod(a, b, m, p):
    return _poly_mod(_poly_mul(a, b, p), m, p)


def _poly_powmod(a, e: int, m, p):
    result = [1]
    base = _poly_mod(list(a), m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return _trim(result)


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [(c * inv) % p for c in b]
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial via gcds with x^(p^i) - x."""
    R = len(m) - 1
    if R == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(1, R):
        xp = _poly_powmod(xp, p, m, p)
        g = _poly_gcd(m, _poly_sub(xp, x, p), p)
        if len(g) > 1:
            return False
    xp = _poly_powmod(xp, p, m, p)
    return _poly_sub(xp, x, p) == []


@dataclass(frozen=True)
class FieldElement:
    """Coefficient vector of a field element, constant term first."""

    coeffs: tuple[int, ...]

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
                terms.append(f"{c}" if not mono else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(terms) or "0"


class FieldSpec:
    """GF(p^R) with a fixed modulus, primitive element and log tables.

    Instances are immutable once built and are shared through
    :func:`build_field`'s cache.
    """

    def __init__(self, p: int, R: int, modulus: Sequence[int], omega: Sequence[int]):
        self.p = p
        self.R = R
        self.q = p**R
        self.modulus = tuple(modulus)
        self._weights = np.array([p ** (R - 1 - j) for j in range(R)], dtype=np.int64)
        self.omega = self.code(omega)
        self._exp, self._log = self._build_tables()
        self._exp.flags.writeable = False
        self._log.flags.writeable = False

    # -- encoding ----------------------------------------------------------
    def code(self, coeffs: Sequence[int] | FieldElement) -> int:
        if isinstance(coeffs, FieldElement):
            coeffs = coeffs.coeffs
        coeffs = list(coeffs) + [0] * (self.R - len(coeffs))
        return int(sum((c % self.p) * int(w) for c, w in zip(coeffs, self._weights)))

    def coeffs(self, a: int) -> tuple[int, ...]:
        a = int(a)
        out = []
        for w in self._weights:
            out.append((a // int(w)) % self.p)
        return tuple(out)

    def element(self, a: int) -> FieldElement:
        return FieldElement(self.coeffs(a))

    def digits(self, a) -> np.ndarray:
        """Coefficient vectors of an array of codes, shape ``(..., R)``."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._weights) % self.p

    def encode(self, digits) -> np.ndarray:
        d = np.asarray(digits, dtype=np.int64) % self.p
        return d @ self._weights

    @property
    def one(self) -> int:
        return self.code([1])

    def basis(self) -> list[int]:
        """Codes of 1, x, ..., x^(R-1): the F_p-basis underlying the encoding."""
        return [int(w) for w in self._weights]

    def elements(self) -> range:
        return range(self.q)

    # -- tables ---------------------------------------------------------------
    def _build_tables(self):
        p, R, q = self.p, self.R, self.q
        m = list(self.modulus)
        omega_poly = list(self.coeffs(self.omega))
        n = q - 1
        # Rows are coefficient vectors of omega^0, omega^1, ...; doubled by
        # multiplying the whole block with the matrix of omega^len.
        powers = np.zeros((1, R), dtype=np.int64)
        powers[0, 0] = 1
        while len(powers) < n:
            shift = len(powers)
            e = _poly_powmod(omega_poly, shift, m, p)
            mat = np.zeros((R, R), dtype=np.int64)
            for j in range(R):
                row = _poly_mulmod([0] * j + [1], e, m, p)
                mat[j, : len(row)] = row
            block = (powers @ mat) % p
            powers = np.concatenate([powers, block])[:n]
        exp = powers @ self._weights
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if (log[1:] < 0).any() or self.omega == 0:
            raise AssertionError("omega is not primitive")
        return exp, log

    @property
    def exp_table(self) -> np.ndarray:
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        return self._log

    # -- arithmetic on single codes ------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return int(a) ^ int(b)
        if self.R == 1:
            return (int(a) + int(b)) % self.p
        return int(self.add_arrays(a, b))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return int(a)
        return int(self.encode(-self.digits(a)))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZero("negative power of zero")
            return 0 if n > 0 else self.one
        return int(self._exp[(int(self._log[a]) * n) % (self.q - 1)])

    def omega_pow(self, i: int) -> int:
        return int(self._exp[i % (self.q - 1)])

    def discrete_log(self, a: int) -> int:
        if a == 0:
            raise ZeroArgument("discrete log of zero")
        return int(self._log[a])

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- vectorised arithmetic -----------------------------------------------
    def add_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.R == 1:
            return (a + b) % self.p
        return self.encode(self.digits(a) + self.digits(b))

    def neg_arrays(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return self.encode(-self.digits(a))

    def sub_arrays(self, a, b) -> np.ndarray:
        return self.add_arrays(a, self.neg_arrays(b))

    def mul_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_arrays(self, a, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self._exp[(self._log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0 if n > 0 else self.one, out)

    # -- structure ------------------------------------------------------------
    def subfield_elements(self, a: int) -> list[int]:
        """Codes of GF(p^a) inside this field, in canonical order."""
        if a < 1 or self.R % a:
            raise NotADivisor(f"{a} does not divide {self.R}")
        step = (self.q - 1) // (self.p**a - 1)
        nonzero = self._exp[::step]
        return [0] + sorted(int(v) for v in nonzero)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "R": self.R,
            "modulus": list(self.modulus),
            "omega": list(self.coeffs(self.omega)),
        }

    def __repr__(self):
        return f"FieldSpec(p={self.p}, R={self.R})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash((self.p, self.R, self.modulus, self.omega))


def _lex_vectors(p: int, R: int, start: int = 0) -> Iterable[list[int]]:
    """Length-R vectors over [0, p) in lex order, first entry most significant."""
    for idx in range(start, p**R):
        v = []
        for j in range(R):
            v.append((idx // p ** (R - 1 - j)) % p)
        yield v


def _is_primitive_poly_element(e, m, p, q, factors) -> bool:
    if not any(e):
        return False
    for t in factors:
        if _poly_powmod(e, (q - 1) // t, m, p) == [1]:
            return False
    return True


@functools.lru_cache(maxsize=None)
def build_field(p: int, R: int, bound: int | None = None) -> FieldSpec:
    """Canonical GF(p^R).

    The modulus is the lexicographically smallest monic irreducible of degree
    R and omega the lexicographically smallest primitive element, both
    compared by coefficient vector with the constant term first.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if R < 1:
        raise ValueError("extension degree must be positive")
    limit = _config.max_q() if bound is None else bound
    if p**R > limit:
        raise BoundExceeded(f"{p}^{R} exceeds bound {limit}")
    q = p**R
    # a zero constant term means x divides the candidate
    for low in _lex_vectors(p, R, start=p ** (R - 1) if R > 1 else 0):
        modulus = low + [1]
        if is_irreducible(modulus, p):
            break
    factors = prime_factors(q - 1) if q > 2 else []
    for cand in _lex_vectors(p, R):
        if _is_primitive_poly_element(_trim(list(cand)), modulus, p, q, factors):
            break
    return FieldSpec(p, R, modulus, cand)


def field_from_json(data: dict) -> FieldSpec:
    """Rebuild a field from its JSON form, insisting on the canonical choices."""
    field = build_field(int(data["p"]), int(data["R"]))
    if list(data["modulus"]) != list(field.modulus) or list(data["omega"]) != list(
        field.coeffs(field.omega)
    ):
        raise ValueError("serialized field does not match the canonical construction")
    return field
