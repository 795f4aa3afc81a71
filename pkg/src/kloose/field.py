"""Arithmetic over the small finite fields GF(q), q in {2, 3, 4, 5, 7, 8, 9}.

Elements are integers in ``[0, q)``.  The polynomial ``sum(a_i x^i)`` over
GF(p) is encoded as ``sum(a_i p^i)``, so 0 and 1 are the identities and the
encoding of a vector ``(v_0, ..., v_{r-1})`` as ``sum(v_i q^i)`` is
well-defined for every supported field.  In characteristic 2 that vector
encoding is plain bit concatenation and vector addition is XOR.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# q -> (p, m, modulus encoded as sum(a_i p^i)); modulus is 0 for prime fields
_CANONICAL = {
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (2, 2, 0b111),  # x^2 + x + 1
    5: (5, 1, 0),
    7: (7, 1, 0),
    8: (2, 3, 0b1011),  # x^3 + x + 1
    9: (3, 2, 10),  # x^2 + 1
}


class FieldError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(q) with its canonical modulus and full operation tables."""

    q: int
    p: int
    m: int
    modulus: int
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __str__(self):
        return f"GF({self.q})"

    @property
    def is_binary(self) -> bool:
        return self.q == 2

    @property
    def char2(self) -> bool:
        return self.p == 2

    def check(self, a) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.q})")
        return a

    def elements(self) -> range:
        return range(self.q)

    def as_dict(self) -> dict:
        return {"q": self.q, "p": self.p, "m": self.m}


def _digits(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _poly_mul_mod(a: int, b: int, p: int, m: int, modulus: int) -> int:
    da, db = _digits(a, p, m), _digits(b, p, m)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = _digits(modulus, p, m + 1)  # monic, degree m
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg]
        if c:
            for i in range(m + 1):
                prod[deg - m + i] = (prod[deg - m + i] - c * mod[i]) % p
    return _undigits(prod[:m], p)


def _build(q: int) -> FieldSpec:
    p, m, modulus = _CANONICAL[q]
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        da = _digits(a, p, m)
        for b in range(q):
            db = _digits(b, p, m)
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            mul[a, b] = (a * b) % p if m == 1 else _poly_mul_mod(a, b, p, m, modulus)
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if len(hits) != 1:
            raise AssertionError(f"GF({q}) modulus is not irreducible")
        inv[a] = hits[0]
    for t in (add, mul, neg, inv):
        t.flags.writeable = False
    return FieldSpec(q, p, m, modulus, add, mul, neg, inv)


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    if q not in _CANONICAL:
        raise FieldError(
            f"unsupported order {q}; supported orders are {', '.join(map(str, SUPPORTED_ORDERS))}"
        )
    return _build(q)


def add(F: FieldSpec, a: int, b: int) -> int:
    return int(F.add_table[F.check(a), F.check(b)])


def sub(F: FieldSpec, a: int, b: int) -> int:
    return int(F.add_table[F.check(a), F.neg_table[F.check(b)]])


def neg(F: FieldSpec, a: int) -> int:
    return int(F.neg_table[F.check(a)])


def mul(F: FieldSpec, a: int, b: int) -> int:
    return int(F.mul_table[F.check(a), F.check(b)])


def inv(F: FieldSpec, a: int) -> int:
    if F.check(a) == 0:
        raise ZeroDivisionError(f"0 has no inverse in GF({F.q})")
    return int(F.inv_table[a])


# -- vectors encoded as integers sum(v_i q^i) ---------------------------------


def encode_vector(F: FieldSpec, v) -> int:
    code = 0
    for x in reversed(list(v)):
        code = code * F.q + int(x)
    return code


def decode_vector(F: FieldSpec, code: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(code % F.q)
        code //= F.q
    return out


class VectorSpace:
    """Vectorised addition and scaling on encoded vectors of GF(q)^r.

    The whole space has ``q**r`` points; codes are ``int64`` numpy arrays.
    """

    def __init__(self, F: FieldSpec, r: int):
        self.F = F
        self.r = r
        self.size = F.q**r
        self._pow = F.q ** np.arange(r, dtype=np.int64)

    def digits(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._pow) % self.F.q

    def undigits(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._pow

    def add(self, codes: np.ndarray, v: int) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if self.F.char2:
            return codes ^ v
        vd = self.digits(np.int64(v))
        return self.undigits(self.F.add_table[self.digits(codes), vd])

    def scale(self, codes: np.ndarray, c: int) -> np.ndarray:
        return self.undigits(self.F.mul_table[c, self.digits(codes)])

    def multiples(self, v: int) -> list[tuple[int, int]]:
        """``(c, c*v)`` for every nonzero scalar ``c``."""
        if self.F.q == 2:
            return [(1, v)]
        return [(c, int(self.scale(np.int64(v), c))) for c in range(1, self.F.q)]
