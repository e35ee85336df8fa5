"""Exact coefficient arithmetic: GF(p), GF(p^k) and big rationals.

Scalars are plain Python values owned by a field handle: ints in [0, p) for
prime fields, coefficient tuples (constant term first) for extension fields,
and ``fractions.Fraction`` for the rationals.  All arithmetic goes through
the field handle; matrices carry the handle and refuse to mix fields.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import FieldMismatch, FieldTooSmall, NonPrimeModulus, ReducibleModulus


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient tuples, constant term first,
# trailing zeros stripped
# ---------------------------------------------------------------------------

def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of a by monic m over GF(p)."""
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[dm], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            f = c * inv_lead % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - f * m[j]) % p
    return _poly_trim(tuple(v % p for v in a[:dm]))


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_divmod(a: tuple[int, ...], b: tuple[int, ...], p: int):
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[db], p - 2, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            f = c * inv_lead % p
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return _poly_trim(tuple(q)), _poly_trim(tuple(v % p for v in a))


def _poly_irreducible(m: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic factor of degree <= deg(m)/2."""
    k = len(m) - 1
    if k <= 0:
        return False
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = tuple(tail) + (1,)
            _, r = _poly_divmod(m, cand, p)
            if not r:
                return False
    return True


def _find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k over GF(p) in counting order."""
    if k == 1:
        return (0, 1)
    for low in range(p ** k):
        coeffs = []
        v = low
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        cand = tuple(coeffs) + (1,)
        if _poly_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# field specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "prime" | "extension" | "rational"
    p: Optional[int] = None
    k: int = 1
    modulus: Optional[tuple[int, ...]] = None  # constant term first, monic

    def __post_init__(self):
        if self.kind not in ("prime", "extension", "rational"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "rational":
            return
        if not _is_prime(self.p or 0):
            raise NonPrimeModulus(f"{self.p} is not prime")
        if self.kind == "extension":
            m = self.modulus
            if m is None or len(m) != self.k + 1 or m[-1] % self.p != 1:
                raise ReducibleModulus("modulus must be monic of degree k")
            object.__setattr__(self, "modulus", tuple(c % self.p for c in m))
            if not _poly_irreducible(self.modulus, self.p):
                raise ReducibleModulus(f"modulus {self.modulus} reducible over GF({self.p})")

    def cardinality(self) -> Optional[int]:
        """p^k for finite kinds, None for the rationals."""
        if self.kind == "rational":
            return None
        return self.p ** (self.k if self.kind == "extension" else 1)

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {"kind": "extension", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(d: dict) -> "FieldSpec":
        kind = d["kind"]
        if kind == "rational":
            return FieldSpec("rational")
        if kind == "prime":
            return FieldSpec("prime", p=int(d["p"]))
        return FieldSpec("extension", p=int(d["p"]), k=int(d["k"]),
                         modulus=tuple(int(c) for c in d["modulus"]))


# ---------------------------------------------------------------------------
# field handles
# ---------------------------------------------------------------------------

class Field:
    """Common interface of the three concrete fields."""

    spec: FieldSpec

    def cardinality(self) -> Optional[int]:
        return self.spec.cardinality()

    def is_finite(self) -> bool:
        return self.cardinality() is not None

    def check(self, other: "Field") -> None:
        if self.spec != other.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    # subclasses implement: zero, one, add, sub, mul, neg, inv, is_zero,
    # from_int, elements, scalar_to_json, scalar_from_json, scalar_str

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Field({self.spec})"


class PrimeField(Field):
    def __init__(self, p: int):
        self.spec = FieldSpec("prime", p=p)
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, i: int):
        return i % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def scalar_to_json(self, a):
        return a % self.p

    def scalar_from_json(self, v):
        return int(v) % self.p

    def scalar_str(self, a) -> str:
        return str(a % self.p)


class ExtensionField(Field):
    """GF(p)[x]/(modulus); elements are coefficient tuples of length k."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.spec = FieldSpec("extension", p=p, k=k, modulus=tuple(modulus))
        self.p = p
        self.k = k
        self.modulus = self.spec.modulus
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def _pad(self, c: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(c) + (0,) * (self.k - len(c))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        prod = _poly_mul(_poly_trim(a), _poly_trim(b), self.p)
        return self._pad(_poly_mod(prod, self.modulus, self.p))

    def inv(self, a):
        # extended Euclid on (a, modulus)
        r0, r1 = _poly_trim(a), self.modulus
        if not r0:
            raise ZeroDivisionError("inverse of zero")
        s0, s1 = (1,), ()
        while r1:
            q, r = _poly_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_trim(tuple(
                (x - y) % self.p for x, y in itertools.zip_longest(
                    s0, _poly_mul(q, s1, self.p), fillvalue=0)))
        # r0 is a nonzero constant gcd
        c_inv = pow(r0[0], self.p - 2, self.p)
        return self._pad(_poly_trim(tuple(v * c_inv % self.p for v in s0)))

    def is_zero(self, a):
        return all(x % self.p == 0 for x in a)

    def from_int(self, i: int):
        return self._pad((i % self.p,))

    def elements(self) -> Iterator[tuple[int, ...]]:
        # counting order: constant coefficient varies fastest (degree-lex)
        for low in range(self.p ** self.k):
            coeffs = []
            v = low
            for _ in range(self.k):
                coeffs.append(v % self.p)
                v //= self.p
            yield tuple(coeffs)

    def scalar_to_json(self, a):
        return list(a)

    def scalar_from_json(self, v):
        if isinstance(v, int):
            return self.from_int(v)
        return self._pad(tuple(int(c) % self.p for c in v))

    def scalar_str(self, a) -> str:
        return "[" + ",".join(str(c) for c in a) + "]"


class RationalField(Field):
    def __init__(self):
        self.spec = FieldSpec("rational")
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def from_int(self, i: int):
        return Fraction(i)

    def elements(self):
        raise FieldTooSmall("cannot enumerate an infinite field")

    def scalar_to_json(self, a):
        return f"{a.numerator}/{a.denominator}"

    def scalar_from_json(self, v):
        if isinstance(v, str):
            return Fraction(v)
        return Fraction(int(v))

    def scalar_str(self, a) -> str:
        return str(a)


def make_field(spec: FieldSpec) -> Field:
    if spec.kind == "rational":
        return RationalField()
    if spec.kind == "prime":
        return PrimeField(spec.p)
    return ExtensionField(spec.p, spec.k, spec.modulus)


# ---------------------------------------------------------------------------
# operations from the module contract
# ---------------------------------------------------------------------------

def ensure_size(field: Field, t: int):
    """Return (field', embed) with |field'| >= t.

    embed is a ring homomorphism from the original field into field'; it is
    the identity when the field is already large enough.
    """
    card = field.cardinality()
    if card is None or card >= t:
        return field, lambda a: a
    p = field.spec.p
    k_old = field.spec.k if field.spec.kind == "extension" else 1
    k = k_old
    while p ** k < t:
        k += k_old  # keep GF(p^k_old) a subfield
    big = ExtensionField(p, k, _find_irreducible(p, k))
    if field.spec.kind == "prime":
        return big, big.from_int
    # embed GF(p^k_old) by sending x to the first root of the old modulus
    old_mod = field.spec.modulus
    root = None
    for cand in big.elements():
        acc = big.zero
        power = big.one
        for c in old_mod:
            acc = big.add(acc, big.mul(big.from_int(c), power))
            power = big.mul(power, cand)
        if big.is_zero(acc):
            root = cand
            break
    assert root is not None

    def embed(a):
        acc = big.zero
        power = big.one
        for c in a:
            acc = big.add(acc, big.mul(big.from_int(c), power))
            power = big.mul(power, root)
        return acc

    return big, embed


def distinct_elements(field: Field, t: int) -> list:
    """First t elements of the field in its canonical enumeration order."""
    card = field.cardinality()
    if card is not None and card < t:
        raise FieldTooSmall(f"need {t} elements, field has {card}")
    if card is None:
        return [Fraction(i) for i in range(t)]
    return list(itertools.islice(field.elements(), t))
