"""Exact rational-tangle calculus.

A rational tangle is named by a reduced fraction p/q in Q+ = Q ∪ {1/0}. The
continued-fraction form (a1, ..., an), n odd, encodes its twist-by-twist
construction: a1 is the innermost block, blocks alternate horizontal/vertical,
and the value is an + 1/(a_{n-1} + 1/(... + 1/a1)). a1 may be infinite (the
vertical trivial tangle) and an may be 0; interior terms are nonzero.

Endpoint labels follow the fixed disk picture: a = top-left (NW), b = top-right
(NE), c = bottom-left (SW), d = bottom-right (SE). The horizontal trivial
tangle 0/1 joins a-b and c-d; the vertical trivial tangle 1/0 joins a-c and
b-d. Negative twists are crossing-wise mirrors of positive ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "TangleFraction",
    "ContinuedFraction",
    "TangleWord",
    "CompiledTangle",
    "ConnectivityClass",
    "cf_to_fraction",
    "fraction_to_cf",
    "cf_to_word",
    "word_fraction",
    "compile_word",
    "fraction_word",
    "connectivity",
    "trace_connectivity",
    "orientation_class",
    "compatible_classes",
    "PARALLEL",
    "ANTIPARALLEL",
    "AB_CD",
    "AC_BD",
    "AD_BC",
]

PARALLEL = "parallel"
ANTIPARALLEL = "antiparallel"

# Connectivity classes, keyed by (p mod 2, q mod 2).
AB_CD = "AB|CD"
AC_BD = "AC|BD"
AD_BC = "AD|BC"

_CLASS_BY_PARITY = {(0, 1): AB_CD, (1, 0): AC_BD, (1, 1): AD_BC}
_PARITY_BY_CLASS = {v: k for k, v in _CLASS_BY_PARITY.items()}


@dataclass(frozen=True, order=True)
class TangleFraction:
    """A reduced element of Q+ : q >= 0, gcd(|p|, q) = 1, infinity stored as 1/0."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValueError("denominator must be nonnegative after normalization")
        if self.q == 0 and self.p != 1:
            raise ValueError("infinity must be normalized to 1/0")
        if gcd(abs(self.p), self.q) != 1:
            raise ValueError(f"fraction {self.p}/{self.q} is not reduced")

    @staticmethod
    def make(p: int, q: int) -> "TangleFraction":
        """Normalize an arbitrary integer pair: sign into p, q >= 0, reduced."""
        if p == 0 and q == 0:
            raise ValueError("0/0 is not an element of Q+")
        if q == 0:
            return TangleFraction(1, 0)
        if q < 0:
            p, q = -p, -q
        g = gcd(abs(p), q)
        return TangleFraction(p // g, q // g)

    @staticmethod
    def parse(text: str) -> "TangleFraction":
        s = text.strip()
        if "/" in s:
            num, _, den = s.partition("/")
            return TangleFraction.make(int(num), int(den))
        return TangleFraction.make(int(s), 1)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def mirror(self) -> "TangleFraction":
        return TangleFraction.make(-self.p, self.q)

    def parity(self) -> tuple[int, int]:
        return (self.p % 2, self.q % 2)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class ContinuedFraction:
    """Odd-length tangle continued fraction; terms[0] may be None, meaning 1/0."""

    terms: tuple[int | None, ...]

    def __post_init__(self) -> None:
        t = self.terms
        if len(t) == 0 or len(t) % 2 == 0:
            raise ValueError("continued fraction must have odd positive length")
        for i, a in enumerate(t):
            if a is None:
                if i != 0:
                    raise ValueError("infinite term allowed only in the first slot")
            elif not isinstance(a, int):
                raise TypeError("terms must be integers (or None first)")
        if len(t) > 1 and t[0] == 0:
            raise ValueError("leading term must be nonzero or infinite")
        for a in t[1:-1]:
            if a == 0:
                raise ValueError("interior terms must be nonzero")

    def __str__(self) -> str:
        return "(" + ",".join("inf" if a is None else str(a) for a in self.terms) + ")"

    @staticmethod
    def parse(text: str) -> "ContinuedFraction":
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        parts = [p.strip() for p in s.split(",") if p.strip()]
        if not parts:
            raise ValueError("empty continued fraction")
        terms: list[int | None] = []
        for i, p in enumerate(parts):
            if p.lower() in ("inf", "infinity", "1/0"):
                if i != 0:
                    raise ValueError("infinite term allowed only first")
                terms.append(None)
            else:
                terms.append(int(p))
        return ContinuedFraction(tuple(terms))


@dataclass(frozen=True)
class TangleWord:
    """Alternating twist instructions applied to a trivial tangle.

    start is 'h' (two horizontal strands) or 'v' (two vertical strands); each
    op ('h', k) adds |k| half-twists on the right, ('v', k) stacks |k|
    half-twists below; the sign is the handedness.
    """

    start: str
    ops: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if self.start not in ("h", "v"):
            raise ValueError("start must be 'h' or 'v'")
        for kind, twists in self.ops:
            if kind not in ("h", "v"):
                raise ValueError("op kind must be 'h' or 'v'")
            if twists == 0:
                raise ValueError("zero-twist ops are dropped at construction")

    @property
    def crossing_count(self) -> int:
        return sum(abs(t) for _, t in self.ops)


@dataclass(frozen=True)
class CompiledTangle:
    """Crossings of a compiled word plus its four boundary edges.

    Crossing tuples follow the ambient PD convention (counterclockwise from the
    incoming under-strand). Edge labels are 1..label_count; stub edges may
    coincide (trivial tangles). first_block_last is the index of the last
    crossing of the innermost twist block, when there is one.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    nw: int
    ne: int
    sw: int
    se: int
    label_count: int
    first_block_last: int | None = None

    @property
    def stubs(self) -> tuple[int, int, int, int]:
        return (self.nw, self.ne, self.sw, self.se)


def cf_to_fraction(cf: ContinuedFraction) -> TangleFraction:
    """Evaluate a continued fraction exactly in Q+.

    Equivalent to the 2x2 integer matrix product over the twist terms applied
    to the innermost tangle's vector.
    """
    first = cf.terms[0]
    if first is None:
        p, q = 1, 0
    else:
        p, q = first, 1
    for i, a in enumerate(cf.terms[1:], start=2):
        if i % 2 == 0:  # vertical block: p/q -> p/(a p + q)
            q = a * p + q
        else:  # horizontal block: p/q -> (p + a q)/q
            p = p + a * q
    return TangleFraction.make(p, q)


def fraction_to_cf(f: TangleFraction) -> ContinuedFraction:
    """Canonical odd-length continued fraction of a reduced fraction.

    Euclidean expansion of |f| with positive terms, innermost term first; an
    infinite term is prepended when needed to make the length odd. Negative
    fractions negate every finite term (mirror).
    """
    if f.is_infinity:
        return ContinuedFraction((None,))
    if f.p == 0:
        return ContinuedFraction((0,))
    sign = 1 if f.p > 0 else -1
    p, q = abs(f.p), f.q
    quotients: list[int] = []  # standard cf of p/q, outermost first
    while q:
        quotients.append(p // q)
        p, q = q, p % q
    terms: list[int | None] = [sign * a for a in reversed(quotients)]
    if len(terms) % 2 == 0:
        terms = [None] + terms
    return ContinuedFraction(tuple(terms))


def cf_to_word(cf: ContinuedFraction) -> TangleWord:
    """Twist word of a continued fraction; crossing count is sum(|a_i|)."""
    first = cf.terms[0]
    ops: list[tuple[str, int]] = []
    if first is None:
        start = "v"
    else:
        start = "h"
        if first != 0:
            ops.append(("h", first))
    for i, a in enumerate(cf.terms[1:], start=2):
        kind = "v" if i % 2 == 0 else "h"
        if a != 0:
            ops.append((kind, a))
    return TangleWord(start, tuple(ops))


def fraction_word(f: TangleFraction) -> TangleWord:
    return cf_to_word(fraction_to_cf(f))


def word_fraction(w: TangleWord) -> TangleFraction:
    """Fraction of a word, folded op by op (independent of cf evaluation)."""
    p, q = (0, 1) if w.start == "h" else (1, 0)
    for kind, k in w.ops:
        if kind == "h":
            p = p + k * q
        else:
            q = q + k * p
    return TangleFraction.make(p, q)


def compile_word(w: TangleWord) -> CompiledTangle:
    """Compile a word to PD crossings with four boundary stubs.

    Positive horizontal twists make the SW-NE strand pass over; positive
    vertical twists are the same crossing read sideways. Fresh edge labels are
    issued left to right, top to bottom.
    """
    crossings: list[tuple[int, int, int, int]] = []
    next_label = 3
    if w.start == "h":
        nw = ne = 1
        sw = se = 2
    else:
        nw = sw = 1
        ne = se = 2

    first_block_last: int | None = None
    for op_index, (kind, k) in enumerate(w.ops):
        for _ in range(abs(k)):
            a, b = next_label, next_label + 1
            next_label += 2
            if kind == "h":
                t, u = ne, se  # left-side edges of the new crossing
                if k > 0:
                    crossings.append((t, u, b, a))
                else:
                    crossings.append((u, b, a, t))
                ne, se = a, b
            else:
                l, r = sw, se  # top-side edges of the new crossing
                if k > 0:
                    crossings.append((l, a, b, r))
                else:
                    crossings.append((r, l, a, b))
                sw, se = a, b
        if op_index == 0:
            first_block_last = len(crossings) - 1
    return CompiledTangle(
        crossings=tuple(crossings),
        nw=nw,
        ne=ne,
        sw=sw,
        se=se,
        label_count=next_label - 1,
        first_block_last=first_block_last,
    )


def connectivity(f: TangleFraction) -> str:
    """Endpoint pairing of the tangle p/q, read off the numerator/denominator
    parities: (0,1) joins a-b|c-d, (1,0) joins a-c|b-d, (1,1) joins a-d|b-c."""
    return _CLASS_BY_PARITY[f.parity()]


def class_parity(cls: str) -> tuple[int, int]:
    return _PARITY_BY_CLASS[cls]


def trace_connectivity(t: CompiledTangle) -> str:
    """Endpoint pairing found by brute-force strand tracing of compiled
    crossings; independent of the parity rule."""
    parent: dict[int, int] = {i: i for i in range(1, t.label_count + 1)}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        parent[find(x)] = find(y)

    for a, b, c, d in t.crossings:
        union(a, c)
        union(b, d)
    if find(t.nw) == find(t.ne):
        if find(t.sw) != find(t.se):
            raise ValueError("compiled tangle does not pair its endpoints")
        return AB_CD
    if find(t.nw) == find(t.sw):
        if find(t.ne) != find(t.se):
            raise ValueError("compiled tangle does not pair its endpoints")
        return AC_BD
    if find(t.nw) == find(t.se):
        return AD_BC
    raise ValueError("compiled tangle does not pair its endpoints")


def orientation_class(f: TangleFraction) -> str | None:
    """Strand-orientation constraint for a denominator-odd tangle: even
    numerator forces antiparallel strands, odd forces parallel. Denominator-even
    tangles are unconstrained (None): their strands lie on different components.
    """
    if f.q % 2 == 0:
        return None
    return ANTIPARALLEL if f.p % 2 == 0 else PARALLEL


def compatible_classes(tag: str) -> frozenset[str]:
    """Connectivity classes insertable into the default closure for a given
    relative orientation of its two closure arcs. The a-c/b-d class is
    compatible either way; the other two split between the orientations."""
    if tag == PARALLEL:
        return frozenset((AD_BC, AC_BD))
    if tag == ANTIPARALLEL:
        return frozenset((AB_CD, AC_BD))
    raise ValueError(f"unknown orientation tag: {tag!r}")
