"""Monomials spanning the cohomology of the additive group of GF(p^r),
and the weight-divisibility condition cutting out the invariant basis.

A monomial x^A y^B is stored as the pair (ext, pows): ext lists the
exterior exponents a_k in {0,1} (always all zero for p = 2), pows lists
the polynomial exponents b_k.  Its weight is sum p^k (a_k + b_k); the
monomial belongs to the invariant basis exactly when q - 1 divides the
weight.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class ContextMismatch(ValueError):
    """Operands built over different (p, r, n) contexts."""


class NotInvariant(ValueError):
    """Monomial fails the weight-divisibility condition."""


class ParseError(ValueError):
    """Malformed monomial text."""


@dataclass(frozen=True)
class Monomial:
    ext: tuple[int, ...]
    pows: tuple[int, ...]

    def __post_init__(self):
        if len(self.ext) != len(self.pows):
            raise ValueError("ext and pows must have equal length")
        if any(a not in (0, 1) for a in self.ext):
            raise ValueError("exterior exponents must be 0 or 1")
        if any(b < 0 for b in self.pows):
            raise ValueError("polynomial exponents must be >= 0")

    @property
    def r(self) -> int:
        return len(self.ext)

    @classmethod
    def unit(cls, r: int) -> "Monomial":
        return cls((0,) * r, (0,) * r)

    def is_unit(self) -> bool:
        return not any(self.ext) and not any(self.pows)

    def to_json(self) -> dict:
        return {"A": list(self.ext), "B": list(self.pows)}

    @classmethod
    def from_json(cls, obj) -> "Monomial":
        return cls(tuple(obj["A"]), tuple(obj["B"]))


def degree(m: Monomial, p: int) -> int:
    """Cohomological degree: generators x_k sit in degree 1 and y_k in
    degree 2, except that for p = 2 the y_k sit in degree 1."""
    if p == 2:
        return sum(m.pows)
    return sum(m.ext) + 2 * sum(m.pows)


def weight(m: Monomial, p: int) -> int:
    return sum(p**k * (a + b) for k, (a, b) in enumerate(zip(m.ext, m.pows)))


def is_invariant(m: Monomial, p: int, r: int | None = None) -> bool:
    """Whether q - 1 divides the weight (q = p^r); trivially true for q = 2."""
    if r is not None and r != m.r:
        raise ContextMismatch(f"monomial has r = {m.r}, expected {r}")
    q1 = p**m.r - 1
    if q1 == 1:
        return True
    return weight(m, p) % q1 == 0


def check_valid(m: Monomial, p: int, r: int) -> None:
    if m.r != r:
        raise ContextMismatch(f"monomial has r = {m.r}, expected {r}")
    if p == 2 and any(m.ext):
        raise ValueError("p = 2 admits no exterior generators")


def sort_key(m: Monomial, p: int):
    """Canonical total order: degree first, then lexicographic on (A, B)."""
    return (degree(m, p), m.ext, m.pows)


def multiply(m1: Monomial, m2: Monomial) -> Monomial | None:
    """Product of monomials; None when a square of an exterior generator
    appears (such products vanish)."""
    if m1.r != m2.r:
        raise ContextMismatch("monomial rank mismatch")
    if any(a1 and a2 for a1, a2 in zip(m1.ext, m2.ext)):
        return None
    return Monomial(
        tuple(a1 + a2 for a1, a2 in zip(m1.ext, m2.ext)),
        tuple(b1 + b2 for b1, b2 in zip(m1.pows, m2.pows)),
    )


def _compositions(total: int, parts: int):
    """All tuples of `parts` naturals summing to `total`, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_invariant_basis(p: int, r: int, d: int) -> list[Monomial]:
    """All invariant monomials of degree d, in canonical order."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    found = []
    if p == 2:
        for pows in _compositions(d, r):
            m = Monomial((0,) * r, pows)
            if is_invariant(m, p):
                found.append(m)
    else:
        for ext_total in range(min(d, r) + 1):
            rem = d - ext_total
            if rem % 2:
                continue
            for ext in _compositions(ext_total, r):
                if any(a > 1 for a in ext):
                    continue
                for pows in _compositions(rem // 2, r):
                    m = Monomial(ext, pows)
                    if is_invariant(m, p):
                        found.append(m)
    found.sort(key=lambda m: sort_key(m, p))
    return found


# -- text grammar ------------------------------------------------------------

_TOKEN = re.compile(r"([xy])(\d*)(?:\^(\d+))?$")


def parse_monomial(text: str, r: int) -> Monomial:
    """Parse the grammar `x0 x1 y0^3 y1^2`; for r = 1 indices may be
    omitted (`x y^4`); the literal `1` is the unit monomial."""
    text = text.strip()
    if text == "1":
        return Monomial.unit(r)
    ext = [0] * r
    pows = [0] * r
    for pos, token in enumerate(text.split()):
        match = _TOKEN.match(token)
        if not match:
            raise ParseError(f"bad token {token!r} at position {pos}")
        kind, idx_s, exp_s = match.groups()
        if idx_s == "":
            if r != 1:
                raise ParseError(
                    f"token {token!r} at position {pos} needs an index for r = {r}"
                )
            idx = 0
        else:
            idx = int(idx_s)
        if idx >= r:
            raise ParseError(f"index {idx} out of range for r = {r} (token {token!r})")
        exp = 1 if exp_s is None else int(exp_s)
        if kind == "x":
            if exp != 1 or ext[idx]:
                raise ParseError(f"exterior generator repeated or powered: {token!r}")
            ext[idx] = 1
        else:
            pows[idx] += exp
    return Monomial(tuple(ext), tuple(pows))


def format_monomial(m: Monomial) -> str:
    if m.is_unit():
        return "1"
    r = m.r
    parts = []
    for k, a in enumerate(m.ext):
        if a:
            parts.append("x" if r == 1 else f"x{k}")
    for k, b in enumerate(m.pows):
        if b:
            name = "y" if r == 1 else f"y{k}"
            parts.append(name if b == 1 else f"{name}^{b}")
    return " ".join(parts)


# -- sparse classes ----------------------------------------------------------


def _normalized(p: int, terms: dict) -> dict:
    out = {}
    for key, c in terms.items():
        c %= p
        if c:
            out[key] = c
    return out


@dataclass
class CohClass:
    """F_p-linear combination of monomials (sparse, no zero coefficients)."""

    p: int
    r: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = _normalized(self.p, self.terms)
        for m in self.terms:
            check_valid(m, self.p, self.r)

    @classmethod
    def from_monomial(cls, p, r, m: Monomial, coeff: int = 1) -> "CohClass":
        return cls(p, r, {m: coeff})

    def _check(self, other: "CohClass"):
        if (self.p, self.r) != (other.p, other.r):
            raise ContextMismatch("CohClass context mismatch")

    def add(self, other: "CohClass") -> "CohClass":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return CohClass(self.p, self.r, terms)

    def scale(self, c: int) -> "CohClass":
        return CohClass(self.p, self.r, {m: v * c for m, v in self.terms.items()})

    def neg(self) -> "CohClass":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(m, 0)

    def canonical_items(self):
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0], self.p))

    def __eq__(self, other):
        return (
            isinstance(other, CohClass)
            and (self.p, self.r) == (other.p, other.r)
            and self.terms == other.terms
        )

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.canonical_items():
            s = format_monomial(m)
            parts.append(s if c == 1 else f"{c} {s}")
        return " + ".join(parts)


@dataclass
class TensorClass:
    """Sparse F_p-combination of n-tuples of monomials."""

    p: int
    r: int
    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = _normalized(self.p, self.terms)
        for tup in self.terms:
            if len(tup) != self.n:
                raise ContextMismatch(f"tuple arity {len(tup)} != {self.n}")
            for m in tup:
                check_valid(m, self.p, self.r)

    @classmethod
    def zero(cls, p, r, n) -> "TensorClass":
        return cls(p, r, n, {})

    @classmethod
    def from_class(cls, c: CohClass) -> "TensorClass":
        return cls(c.p, c.r, 1, {(m,): v for m, v in c.terms.items()})

    def _check(self, other: "TensorClass"):
        if (self.p, self.r, self.n) != (other.p, other.r, other.n):
            raise ContextMismatch("TensorClass context mismatch")

    def add(self, other: "TensorClass") -> "TensorClass":
        self._check(other)
        terms = dict(self.terms)
        for t, c in other.terms.items():
            terms[t] = terms.get(t, 0) + c
        return TensorClass(self.p, self.r, self.n, terms)

    def scale(self, c: int) -> "TensorClass":
        return TensorClass(
            self.p, self.r, self.n, {t: v * c for t, v in self.terms.items()}
        )

    def neg(self) -> "TensorClass":
        return self.scale(-1)

    def tensor(self, other: "TensorClass") -> "TensorClass":
        """Juxtaposition product: concatenates factor tuples."""
        if (self.p, self.r) != (other.p, other.r):
            raise ContextMismatch("TensorClass context mismatch")
        terms = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                terms[t1 + t2] = terms.get(t1 + t2, 0) + c1 * c2
        return TensorClass(self.p, self.r, self.n + other.n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, tup) -> int:
        return self.terms.get(tuple(tup), 0)

    def canonical_items(self):
        p = self.p
        return sorted(
            self.terms.items(),
            key=lambda kv: tuple(sort_key(m, p) for m in kv[0]),
        )

    def __eq__(self, other):
        return (
            isinstance(other, TensorClass)
            and (self.p, self.r, self.n) == (other.p, other.r, other.n)
            and self.terms == other.terms
        )

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for tup, c in self.canonical_items():
            s = "⊗".join(format_monomial(m) for m in tup)
            parts.append(s if c == 1 else f"{c} {s}")
        return " + ".join(parts)
