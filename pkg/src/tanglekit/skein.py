"""Mediant engine for skein triples and the linear determinant model.

A Farey pair is two reduced fractions a/b, c/d with |ad - bc| = 1; together
with their mediant (a+c)/(b+d) they form an unoriented skein triple, and the
mediant differs from (a-c)/(b-d) by a single crossing change. A template is a
diagram with tangle slots; for each slot there are integers (a, b) with
det(splice(p/q)) = |b*p - a*q| for every insertion, so at most one insertion
can have determinant zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .coloring import determinant
from .diagram import LinkDiagram, fill_slot, parse_pd
from .tangle import (
    AB_CD,
    AC_BD,
    AD_BC,
    ANTIPARALLEL,
    PARALLEL,
    CompiledTangle,
    TangleFraction,
    TangleWord,
    compile_word,
    connectivity,
    fraction_to_cf,
    fraction_word,
    word_fraction,
)

__all__ = [
    "FareyPair",
    "SkeinTriple",
    "TangleTemplate",
    "TemplateError",
    "farey_neighbor",
    "mediant",
    "partner",
    "unoriented_triple",
    "oriented_triple",
    "splice",
    "slot_io",
    "compatible_classes_for_slot",
    "orientation_compatible",
    "fit_coefficients",
    "fitted",
    "zero_locus",
    "insertion_det",
    "two_slot_scan",
    "ScanReport",
    "figure8_template",
    "reduced_fractions",
    "aligned_words",
    "mediant_words",
    "AlignedWords",
]


class TemplateError(ValueError):
    """Template lacking the structure an operation needs."""


@dataclass(frozen=True)
class FareyPair:
    f1: TangleFraction
    f2: TangleFraction

    def __post_init__(self) -> None:
        a, b = self.f1.p, self.f1.q
        c, d = self.f2.p, self.f2.q
        if abs(a * d - b * c) != 1:
            raise ValueError(f"{self.f1} and {self.f2} are not Farey neighbors")


@dataclass(frozen=True)
class SkeinTriple:
    """Fractions of an unoriented (pair + mediant) or oriented skein triple.

    For the oriented kind, `partner` is the crossing-change companion of the
    mediant and `resolution` is whichever pair member the orientation selects.
    """

    kind: str
    f1: TangleFraction
    f2: TangleFraction
    mediant: TangleFraction
    partner: TangleFraction | None = None
    resolution: TangleFraction | None = None


@dataclass(frozen=True)
class TangleTemplate:
    """A diagram with open slots and optional per-slot determinant model."""

    diagram: LinkDiagram
    coeffs: tuple[tuple[int, int] | None, ...] = ()

    def __post_init__(self) -> None:
        if not self.diagram.slots:
            raise TemplateError("template diagram has no slots")
        if not self.coeffs:
            object.__setattr__(
                self, "coeffs", (None,) * len(self.diagram.slots)
            )
        elif len(self.coeffs) != len(self.diagram.slots):
            raise TemplateError("one coefficient pair per slot required")

    @property
    def slot_count(self) -> int:
        return len(self.diagram.slots)

    def with_coeffs(self, slot: int, ab: tuple[int, int]) -> "TangleTemplate":
        cs = list(self.coeffs)
        cs[slot] = ab
        return TangleTemplate(self.diagram, tuple(cs))

    def oriented(self, flags: tuple[int, ...]) -> "TangleTemplate":
        return TangleTemplate(self.diagram.with_orientation(flags), self.coeffs)


def farey_neighbor(f: TangleFraction) -> TangleFraction:
    """A canonical reduced f' with |p*q' - q*p'| = 1: the least nonnegative
    q' solving p*q' = 1 (mod q), found by the extended Euclidean algorithm."""
    if f.q == 0:
        return TangleFraction(0, 1)
    qq = pow(f.p, -1, f.q) if f.q > 1 else 0
    pp = (f.p * qq - 1) // f.q
    return TangleFraction.make(pp, qq)


def mediant(pair: FareyPair) -> TangleFraction:
    """(a+c)/(b+d); automatically reduced for Farey neighbors."""
    return TangleFraction.make(pair.f1.p + pair.f2.p, pair.f1.q + pair.f2.q)


def partner(pair: FareyPair) -> TangleFraction:
    """(a-c)/(b-d), the crossing-change companion of the mediant."""
    return TangleFraction.make(pair.f1.p - pair.f2.p, pair.f1.q - pair.f2.q)


def unoriented_triple(pair: FareyPair) -> SkeinTriple:
    return SkeinTriple("unoriented", pair.f1, pair.f2, mediant(pair))


# -- splicing ----------------------------------------------------------------


def splice(t: TangleTemplate, slot: int, w):
    """Insert a tangle (fraction, word, or compiled crossings) into a slot.

    Returns a plain LinkDiagram once every slot is filled, otherwise a
    TangleTemplate with the remaining slots. Oriented templates reject
    insertions whose endpoint pairing fights the strand directions.
    """
    if not 0 <= slot < t.slot_count:
        raise TemplateError(f"slot {slot} out of range")
    if isinstance(w, CompiledTangle):
        compiled, frac = w, None
    else:
        word = fraction_word(w) if isinstance(w, TangleFraction) else w
        if not isinstance(word, TangleWord):
            raise TypeError(f"cannot splice {type(w).__name__}")
        compiled = compile_word(word)
        frac = word_fraction(word)
    if t.diagram.is_oriented and frac is not None:
        if not orientation_compatible(t, slot, frac):
            raise TemplateError(
                f"tangle {frac} is not orientation compatible with slot {slot}"
            )
    out = fill_slot(t.diagram, slot, compiled.crossings, compiled.stubs)
    if out.slots:
        coeffs = tuple(c for j, c in enumerate(t.coeffs) if j != slot)
        return TangleTemplate(out, coeffs)
    return out


# -- orientation at a slot -----------------------------------------------------

_PAIRINGS = {AB_CD: ((0, 1), (2, 3)), AC_BD: ((0, 2), (1, 3)), AD_BC: ((0, 3), (1, 2))}


def slot_io(t: TangleTemplate, slot: int) -> tuple[str, str, str, str]:
    """Per-endpoint flow at a slot of an oriented template: 'in' where the
    strand runs into the deleted disk, 'out' where it leaves."""
    if not t.diagram.is_oriented:
        raise TemplateError("template is not oriented")
    dirs = t.diagram.edge_directions()
    flags = []
    for p, e in enumerate(t.diagram.slots[slot]):
        flags.append("in" if dirs[e][1] == (1, slot, p) else "out")
    return tuple(flags)


def compatible_classes_for_slot(t: TangleTemplate, slot: int) -> frozenset[str]:
    """Connectivity classes whose endpoint pairing joins each entering
    endpoint to a leaving one; exactly two of three for a two-in-two-out slot."""
    io = slot_io(t, slot)
    ok = set()
    for cls, pairs in _PAIRINGS.items():
        if all(io[i] != io[j] for i, j in pairs):
            ok.add(cls)
    return frozenset(ok)


def orientation_compatible(t: TangleTemplate, slot: int, f: TangleFraction) -> bool:
    return connectivity(f) in compatible_classes_for_slot(t, slot)


def oriented_triple(pair: FareyPair, t: TangleTemplate, slot: int) -> SkeinTriple:
    """Oriented skein triple at a slot: (mediant, crossing-change partner,
    the unique orientation-compatible resolution among the pair)."""
    med = mediant(pair)
    par = partner(pair)
    compat = compatible_classes_for_slot(t, slot)
    if connectivity(med) not in compat:
        raise TemplateError(f"mediant {med} is not orientation compatible")
    picks = [f for f in (pair.f1, pair.f2) if connectivity(f) in compat]
    if len(picks) != 1:  # pragma: no cover - classes of a triple are distinct
        raise TemplateError("expected exactly one compatible resolution")
    return SkeinTriple("oriented", pair.f1, pair.f2, med, par, picks[0])


# -- determinant model ---------------------------------------------------------


def _insertion_determinant(t: TangleTemplate, slot: int, f: TangleFraction) -> int:
    out = splice(TangleTemplate(t.diagram.with_orientation(None)), slot, f)
    if isinstance(out, TangleTemplate):
        raise TemplateError("fit requires all other slots to be filled")
    return determinant(out)


def fit_coefficients(t: TangleTemplate, slot: int = 0) -> tuple[int, int]:
    """Integers (a, b) with det(splice(p/q)) = |b*p - a*q|.

    Probed at 0/1, 1/0 and 1/1 (the third probe resolves the relative sign),
    then validated against 1/2, 2/1 and 1/3; a mismatch means the slot does
    not obey the linear model, i.e. a splicing bug.
    """
    if t.slot_count != 1:
        raise TemplateError("fit one slot at a time: fill the others first")
    det_a = _insertion_determinant(t, slot, TangleFraction(0, 1))
    det_b = _insertion_determinant(t, slot, TangleFraction(1, 0))
    det_c = _insertion_determinant(t, slot, TangleFraction(1, 1))
    if abs(det_b - det_a) == det_c:
        a, b = det_a, det_b
    elif det_a + det_b == det_c:
        a, b = -det_a, det_b
    else:
        raise TemplateError(
            f"no linear model fits probes ({det_a}, {det_b}, {det_c})"
        )
    for f in (TangleFraction(1, 2), TangleFraction(2, 1), TangleFraction(1, 3)):
        got = _insertion_determinant(t, slot, f)
        want = abs(b * f.p - a * f.q)
        if got != want:
            raise TemplateError(
                f"linear model (a={a}, b={b}) fails at {f}: {got} != {want}"
            )
    return (a, b)


def fitted(t: TangleTemplate, slot: int = 0) -> TangleTemplate:
    return t.with_coeffs(slot, fit_coefficients(t, slot))


def zero_locus(t: TangleTemplate, slot: int = 0) -> TangleFraction:
    """The unique insertion with determinant zero: the reduced a/b."""
    ab = t.coeffs[slot]
    if ab is None:
        raise TemplateError("slot coefficients not fitted")
    a, b = ab
    if a == 0 and b == 0:
        raise TemplateError(
            "every insertion has determinant zero: invalid template"
        )
    return TangleFraction.make(a, b)


def insertion_det(t: TangleTemplate, slot: int, f: TangleFraction) -> int:
    """|b*p - a*q| from fitted coefficients (no splicing)."""
    ab = t.coeffs[slot]
    if ab is None:
        raise TemplateError("slot coefficients not fitted")
    a, b = ab
    return abs(b * f.p - a * f.q)


def reduced_fractions(bound: int, nonnegative: bool = False) -> list[TangleFraction]:
    """All reduced p/q with |p| <= bound and q <= bound, including 1/0."""
    out = []
    if bound >= 1:
        out.append(TangleFraction(1, 0))
    for q in range(1, bound + 1):
        lo = 0 if nonnegative else -bound
        for p in range(lo, bound + 1):
            if gcd(abs(p), q) == 1:
                out.append(TangleFraction(p, q))
    return out


@dataclass(frozen=True)
class ScanReport:
    """Per-x zero-determinant companions of a two-slot template."""

    bound: int
    records: tuple[tuple[TangleFraction, int, tuple[TangleFraction, ...]], ...]

    @property
    def max_zero_count(self) -> int:
        return max((r[1] for r in self.records), default=0)

    def lines(self) -> list[str]:
        return [
            f"{x} | {count} | {' '.join(str(w) for w in witnesses)}".rstrip()
            for x, count, witnesses in self.records
        ]


def two_slot_scan(
    t: TangleTemplate, slot1: int, slot2: int, bound: int
) -> ScanReport:
    """Count, for each first-slot insertion x, the second-slot insertions y
    giving determinant zero; at most one y can exist for each x."""
    if t.slot_count < 2:
        raise TemplateError("scan needs two open slots")
    if slot1 == slot2:
        raise TemplateError("scan slots must differ")
    fractions = reduced_fractions(bound)
    records = []
    inner = slot2 if slot2 < slot1 else slot2 - 1
    for x in fractions:
        filled = splice(t, slot1, x)
        zeros = []
        for y in fractions:
            out = splice(filled, inner, y)
            if isinstance(out, TangleTemplate):
                raise TemplateError("scan requires exactly two open slots")
            if determinant(out) == 0:
                zeros.append(y)
        records.append((x, len(zeros), tuple(zeros)))
    return ScanReport(bound, tuple(records))


# -- stock templates -----------------------------------------------------------


def figure8_template(tag: str | None = None) -> TangleTemplate:
    """The minimal one-slot closure: both left endpoints joined by one arc,
    both right endpoints by the other, so 0/1 closes to the unknot and 1/0
    to a split pair of circles. Fitted model: determinant |q|, zero locus 1/0.

    `tag` orients the two closure arcs: 'parallel' admits the odd/odd classes,
    'antiparallel' the even/odd ones; denominator-even insertions work either
    way.
    """
    t = TangleTemplate(parse_pd("T[1,2,1,2]"), ((1, 0),))
    if tag is None:
        return t
    if tag == PARALLEL:
        return t.oriented((1, 1))
    if tag == ANTIPARALLEL:
        return t.oriented((1, -1))
    raise ValueError(f"unknown orientation tag {tag!r}")


# -- aligned compilations ------------------------------------------------------


@dataclass(frozen=True)
class AlignedWords:
    """Structurally aligned compilations of a skein triple.

    All four tangles share every twist block except the innermost one, where
    the mediant carries k+1 twists, the two resolutions carry k and a trivial
    pass, and the crossing-change companion is the mediant's compilation with
    its distinguished crossing flipped.
    """

    mediant: CompiledTangle
    res_block: CompiledTangle  # innermost block shortened by one twist
    res_trivial: CompiledTangle  # innermost block replaced by the trivial pass
    partner_flipped: CompiledTangle  # mediant with one crossing changed
    distinguished: int
    res_block_fraction: TangleFraction
    res_trivial_fraction: TangleFraction
    partner_fraction: TangleFraction


def _raw_terms(f: TangleFraction) -> tuple[tuple[int, ...], str]:
    """Reversed Euclidean quotients of |f| (innermost first) and the twist
    direction ('h' or 'v') of the innermost block."""
    cf = fraction_to_cf(f)
    if cf.terms[0] is None:
        return tuple(cf.terms[1:]), "v"
    return tuple(cf.terms), "h"


def _raw_word(terms: tuple[int, ...], parity: str) -> TangleWord:
    start = "h" if parity == "h" else "v"
    ops = []
    kind = parity
    for a in terms:
        if a != 0:
            ops.append((kind, a))
        kind = "v" if kind == "h" else "h"
    return TangleWord(start, tuple(ops))


def _flip_crossing(t: CompiledTangle, index: int) -> CompiledTangle:
    x = t.crossings[index]
    flipped = (x[1], x[2], x[3], x[0])
    return CompiledTangle(
        t.crossings[:index] + (flipped,) + t.crossings[index + 1 :],
        t.nw,
        t.ne,
        t.sw,
        t.se,
        t.label_count,
        t.first_block_last,
    )


def mediant_words(med: TangleFraction) -> AlignedWords:
    """Aligned compilation of a mediant's canonical skein triple.

    The innermost twist block of the mediant's canonical word has one crossing
    distinguished: undoing it shortens the block (one resolution), capping it
    replaces the block with the trivial pass (the other), and flipping it is
    the crossing change onto the companion."""
    if med.p == 0 or med.q == 0:
        raise ValueError(f"{med} has no twist block to resolve")
    sign = 1 if med.p > 0 else -1
    terms, parity = _raw_terms(med if sign == 1 else med.mirror())
    if sign == -1:
        terms = tuple(-a for a in terms)
    t1, rest = terms[0], terms[1:]
    flip_parity = "v" if parity == "h" else "h"

    med_word = _raw_word(terms, parity)
    res_block_word = _raw_word((t1 - sign,) + rest, parity)
    res_trivial_word = _raw_word(rest, flip_parity)

    med_compiled = compile_word(med_word)
    distinguished = med_compiled.first_block_last
    if distinguished is None:  # pragma: no cover - p != 0 implies a block
        raise ValueError("mediant word has no crossings")

    rb_frac = word_fraction(res_block_word)
    rt_frac = word_fraction(res_trivial_word)
    return AlignedWords(
        mediant=med_compiled,
        res_block=compile_word(res_block_word),
        res_trivial=compile_word(res_trivial_word),
        partner_flipped=_flip_crossing(med_compiled, distinguished),
        distinguished=distinguished,
        res_block_fraction=rb_frac,
        res_trivial_fraction=rt_frac,
        partner_fraction=TangleFraction.make(
            rb_frac.p - rt_frac.p, rb_frac.q - rt_frac.q
        ),
    )


def aligned_words(pair: FareyPair) -> AlignedWords:
    """Compile a Farey pair's triple so the members differ only in the
    innermost twist block of the mediant's canonical word; the pair must be
    the mediant's canonical parent pair (integer mediants admit one other)."""
    med = mediant(pair)
    if med.p == 0:
        raise ValueError("mediant 0/1 has no twist block to resolve")
    aw = mediant_words(med)
    if {aw.res_block_fraction, aw.res_trivial_fraction} != {pair.f1, pair.f2}:
        raise ValueError(
            f"pair {pair.f1}, {pair.f2} is not the canonical parent pair of {med}"
        )
    return aw
