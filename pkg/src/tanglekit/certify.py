"""Skein-derivation certificates: generation and independent verification.

A certificate is a DAG of fraction-labelled links over a fixed one-slot
ambient template. BASE nodes are restricted to the generating family (integer
insertions for the unoriented kind; integer and half-integer insertions, i.e.
unknot and Hopf closures, for the oriented kind). Every TRIPLE node is a
verified skein triple with all members of nonzero determinant:

- unoriented: the node is the mediant of its two parents (a Farey pair);
- oriented: the node is the mediant of a Farey pair reconstructed from the
  node and its partner parent, with the other parent the marked resolution,
  the unique pair member whose endpoint pairing suits the orientation sector.

The verifier re-derives every identity with exact integer arithmetic and
shares no code path with the generators' recursions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .coloring import determinant
from .diagram import LinkDiagram, components, connected_sum, parse_pd
from .skein import (
    TangleTemplate,
    TemplateError,
    compatible_classes_for_slot,
    farey_neighbor,
    figure8_template,
    fit_coefficients,
    insertion_det,
    splice,
    SkeinTriple,
)
from .tangle import (
    ANTIPARALLEL,
    PARALLEL,
    TangleFraction,
    compatible_classes,
    connectivity,
    orientation_class,
)

__all__ = [
    "Certificate",
    "CertNode",
    "OrientedTarget",
    "Verdict",
    "CertificateError",
    "span_certificate",
    "oriented_span_certificate",
    "verify_certificate",
    "connected_sum_certificate",
    "component_reduction_step",
    "certificate_to_json",
    "certificate_from_json",
    "save_certificate",
    "load_certificate",
    "UNORIENTED",
    "ORIENTED",
]

UNORIENTED = "unoriented"
ORIENTED = "oriented"

BASE_UNKNOT = "unknot"
BASE_HOPF = "hopf"


class CertificateError(ValueError):
    """A certificate cannot be generated for the requested target."""


@dataclass(frozen=True)
class CertNode:
    frac: TangleFraction
    orient: str | None
    just: tuple  # ("base", name) | ("triple", i, j, resolution_index_or_None)


@dataclass(frozen=True)
class OrientedTarget:
    fraction: TangleFraction
    orientation: str

    def __post_init__(self) -> None:
        if self.orientation not in (PARALLEL, ANTIPARALLEL):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        forced = (
            orientation_class(self.fraction) if self.fraction.q % 2 == 1 else None
        )
        if forced is not None and forced != self.orientation:
            raise CertificateError(
                f"{self.fraction} admits only the {forced} orientation"
            )


@dataclass(frozen=True)
class Certificate:
    kind: str
    nodes: tuple[CertNode, ...]
    ambient: TangleTemplate

    @property
    def target(self) -> TangleFraction:
        return self.nodes[-1].frac

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    check: int | None = None
    node: int | None = None
    message: str = "ACCEPT"

    def __str__(self) -> str:
        if self.accepted:
            return "ACCEPT"
        where = f" at node {self.node}" if self.node is not None else ""
        return f"REJECT (check {self.check}{where}: {self.message})"


def _default_ambient() -> TangleTemplate:
    return figure8_template()


# -- unoriented generation -----------------------------------------------------


def span_certificate(
    target: TangleFraction, ambient: TangleTemplate | None = None
) -> Certificate:
    """Derive a target insertion from integer (unknot-valued) bases by the
    denominator recursion: for j/k pick q with q*j = -1 (mod k), parents
    (qj+1)/k over q and (j(k-q)-1)/k over k-q, a Farey pair with mediant j/k.
    """
    ambient = ambient or _default_ambient()
    if ambient.slot_count != 1:
        raise CertificateError("certificates need a one-slot ambient")
    if target.q == 0:
        raise CertificateError(
            "the infinity insertion is not a mediant of anything"
        )
    if insertion_det(ambient, 0, target) == 0:
        raise CertificateError(
            f"target {target} is the ambient zero locus: no certificate exists"
        )
    nodes: list[CertNode] = []
    memo: dict[TangleFraction, int] = {}

    def parents_of(f: TangleFraction) -> tuple[TangleFraction, TangleFraction]:
        j, k = f.p, f.q
        qh = (-pow(j, -1, k)) % k
        ph = (qh * j + 1) // k
        s = k - qh
        r = (j * s - 1) // k
        return TangleFraction(ph, qh), TangleFraction(r, s)

    stack = [target]
    while stack:
        f = stack[-1]
        if f in memo:
            stack.pop()
            continue
        if insertion_det(ambient, 0, f) == 0:
            raise CertificateError(
                f"canonical derivation of {target} passes through the zero locus {f}"
            )
        if f.q == 1:
            nodes.append(CertNode(f, None, ("base", BASE_UNKNOT)))
        else:
            p1, p2 = parents_of(f)
            pending = [p for p in (p1, p2) if p not in memo]
            if pending:
                stack.extend(reversed(pending))
                continue
            nodes.append(CertNode(f, None, ("triple", memo[p1], memo[p2], None)))
        memo[f] = len(nodes) - 1
        stack.pop()
    return Certificate(UNORIENTED, tuple(nodes), ambient)


# -- oriented generation ---------------------------------------------------------


def oriented_span_certificate(
    target: OrientedTarget, ambient: TangleTemplate | None = None
) -> Certificate:
    """Derive an oriented target from unknot and Hopf bases.

    Numerator recursion: for k/(ki+j) with gcd(j,k)=1, take p = j^{-1} mod k,
    q = (p*k*i + p*j - 1)/k, r = k - p, s = (r*k*i + r*j + 1)/k; then
    |ps - qr| = 1, the mediant is the target, and the triple used is
    (target, (p-r)/(q-s), compatible one of p/q, r/s). Numerator-one targets
    use the twist ladder over the pair (1/(n-1), 0/1). Denominator 1 and 2
    insertions close to the unknot and the Hopf link and are bases.
    """
    ambient = ambient or _default_ambient()
    if ambient.slot_count != 1:
        raise CertificateError("certificates need a one-slot ambient")
    f0 = target.fraction
    tag = target.orientation
    if f0.q == 0:
        raise CertificateError("the infinity insertion has no certificate")
    if insertion_det(ambient, 0, f0) == 0:
        raise CertificateError(f"target {f0} is the ambient zero locus")

    mirror = f0.p < 0
    work = f0.mirror() if mirror else f0
    compat = compatible_classes(tag)
    if connectivity(work) not in compat:
        raise CertificateError(f"{f0} is not {tag}-compatible")

    nodes: list[CertNode] = []
    memo: dict[TangleFraction, int] = {}

    def parents_of(
        f: TangleFraction,
    ) -> tuple[TangleFraction, TangleFraction]:
        """(crossing-change partner, selected resolution) of the node f."""
        if f.p == 1:
            pick = _pick_resolution(
                TangleFraction(1, f.q - 1), TangleFraction(0, 1), compat
            )
            return TangleFraction(1, f.q - 2), pick
        k, q = f.p, f.q
        j = q % k
        ph = pow(j, -1, k)
        qh = (ph * q - 1) // k
        r = k - ph
        s = (r * q + 1) // k
        pick = _pick_resolution(TangleFraction(ph, qh), TangleFraction(r, s), compat)
        return TangleFraction.make(ph - r, qh - s), pick

    stack = [work]
    while stack:
        f = stack[-1]
        if f in memo:
            stack.pop()
            continue
        if connectivity(f) not in compat:  # pragma: no cover - selection bug
            raise CertificateError(f"node {f} incompatible with {tag} sector")
        if insertion_det(ambient, 0, f) == 0:
            raise CertificateError(
                f"derivation of {f0} passes through the zero locus {f}"
            )
        if f.q in (1, 2):
            name = BASE_UNKNOT if f.q == 1 else BASE_HOPF
            nodes.append(CertNode(f, tag, ("base", name)))
        else:
            partner_f, pick = parents_of(f)
            pending = [p for p in (partner_f, pick) if p not in memo]
            if pending:
                stack.extend(reversed(pending))
                continue
            i_res = memo[pick]
            nodes.append(CertNode(f, tag, ("triple", memo[partner_f], i_res, i_res)))
        memo[f] = len(nodes) - 1
        stack.pop()
    out = tuple(
        CertNode(n.frac.mirror(), n.orient, n.just) for n in nodes
    ) if mirror else tuple(nodes)
    return Certificate(ORIENTED, out, ambient)


def _pick_resolution(
    c1: TangleFraction, c2: TangleFraction, compat: frozenset[str]
) -> TangleFraction:
    picks = [c for c in (c1, c2) if connectivity(c) in compat]
    if len(picks) != 1:  # pragma: no cover - pair classes are always distinct
        raise CertificateError(f"no unique compatible resolution in ({c1}, {c2})")
    return picks[0]


# -- verification ----------------------------------------------------------------


def verify_certificate(
    cert: Certificate, ambient: TangleTemplate | None = None
) -> Verdict:
    """Re-check a certificate independently of how it was generated.

    0. the recorded ambient coefficients match a fresh fit of its diagram;
    1. DAG order: triples reference strictly earlier nodes;
    2. exact mediant/Farey identities at every triple;
    3. nonzero determinant of every node under the ambient model;
    4. (oriented) orientation tags, compatibility of all members, and
       correctness of the marked resolution;
    5. bases restricted to the generating family.
    """
    ambient = ambient or cert.ambient
    if ambient.slot_count != 1 or ambient.coeffs[0] is None:
        return Verdict(False, 0, None, "ambient must be one fitted slot")
    try:
        refit = fit_coefficients(TangleTemplate(ambient.diagram.with_orientation(None)))
    except Exception as exc:  # noqa: BLE001 - a verdict, not a fault
        return Verdict(False, 0, None, f"ambient cannot be refitted: {exc}")
    if refit != ambient.coeffs[0]:
        return Verdict(
            False, 0, None, f"recorded coefficients {ambient.coeffs[0]} != refit {refit}"
        )
    if cert.kind not in (UNORIENTED, ORIENTED):
        return Verdict(False, 0, None, f"unknown kind {cert.kind!r}")
    if not cert.nodes:
        return Verdict(False, 0, None, "empty certificate")

    for m, node in enumerate(cert.nodes):
        kind = node.just[0]
        if kind == "triple":
            _, i, j, res = node.just
            if not (0 <= i < m and 0 <= j < m and i != j):
                return Verdict(False, 1, m, "triple must reference earlier nodes")
            if cert.kind == ORIENTED and res not in (i, j):
                return Verdict(False, 1, m, "resolution marker must be a parent")
            v = _check_triple_identities(cert, m, node)
            if v is not None:
                return v
        elif kind != "base":
            return Verdict(False, 1, m, f"unknown justification {kind!r}")

        if insertion_det(ambient, 0, node.frac) == 0:
            return Verdict(False, 3, m, f"{node.frac} has determinant zero")

        if cert.kind == ORIENTED:
            v = _check_orientation(cert, m, node)
            if v is not None:
                return v
        elif node.orient is not None:
            return Verdict(False, 4, m, "unoriented node carries a tag")

        if kind == "base":
            v = _check_base(cert.kind, m, node)
            if v is not None:
                return v
    return Verdict(True)


def _oriented_pair(
    node: CertNode, fp: TangleFraction
) -> tuple[TangleFraction, TangleFraction] | None:
    """Farey pair reconstructed from a mediant node and its partner, or None."""
    sp, sq = node.frac.p + fp.p, node.frac.q + fp.q
    dp, dq = node.frac.p - fp.p, node.frac.q - fp.q
    if sp % 2 or sq % 2 or dp % 2 or dq % 2:
        return None
    p1 = (sp // 2, sq // 2)
    p2 = (dp // 2, dq // 2)
    if abs(p1[0] * p2[1] - p1[1] * p2[0]) != 1:
        return None
    try:
        return TangleFraction.make(*p1), TangleFraction.make(*p2)
    except ValueError:
        return None


def _check_triple_identities(
    cert: Certificate, m: int, node: CertNode
) -> Verdict | None:
    _, i, j, res = node.just
    fi, fj = cert.nodes[i].frac, cert.nodes[j].frac
    if cert.kind == UNORIENTED:
        if abs(fi.p * fj.q - fi.q * fj.p) != 1:
            return Verdict(False, 2, m, f"parents {fi}, {fj} are not a Farey pair")
        med = TangleFraction.make(fi.p + fj.p, fi.q + fj.q)
        if med != node.frac:
            return Verdict(False, 2, m, f"mediant of parents is {med}, not {node.frac}")
        return None
    if res is None:
        return Verdict(False, 2, m, "oriented triple lacks a resolution marker")
    fr = cert.nodes[res].frac
    fp = cert.nodes[j if res == i else i].frac
    pair = _oriented_pair(node, fp)
    if pair is None:
        return Verdict(
            False, 2, m, f"{node.frac} and {fp} do not span a Farey pair"
        )
    if fr not in pair:
        return Verdict(
            False, 2, m, f"marked resolution {fr} is not a member of the pair"
        )
    return None


def _check_orientation(cert: Certificate, m: int, node: CertNode) -> Verdict | None:
    if node.orient not in (PARALLEL, ANTIPARALLEL):
        return Verdict(False, 4, m, "oriented node missing its tag")
    forced = orientation_class(node.frac) if node.frac.q % 2 == 1 else None
    if forced is not None and forced != node.orient:
        return Verdict(False, 4, m, f"{node.frac} cannot be {node.orient}")
    compat = compatible_classes(node.orient)
    if connectivity(node.frac) not in compat:
        return Verdict(False, 4, m, f"{node.frac} incompatible with its sector")
    if node.just[0] != "triple":
        return None
    _, i, j, res = node.just
    if cert.nodes[i].orient != node.orient or cert.nodes[j].orient != node.orient:
        return Verdict(False, 4, m, "triple members carry different tags")
    fr = cert.nodes[res].frac
    fp = cert.nodes[j if res == i else i].frac
    pair = _oriented_pair(node, fp)
    if pair is None:  # pragma: no cover - caught at check 2
        return Verdict(False, 4, m, "pair reconstruction failed")
    other = pair[1] if fr == pair[0] else pair[0]
    if connectivity(fr) not in compat:
        return Verdict(False, 4, m, f"marked resolution {fr} is incompatible")
    if connectivity(other) in compat:
        return Verdict(
            False, 4, m, f"resolution is ambiguous: {other} is also compatible"
        )
    return None


def _check_base(kind: str, m: int, node: CertNode) -> Verdict | None:
    name = node.just[1]
    q = node.frac.q
    if kind == UNORIENTED:
        if name != BASE_UNKNOT or q != 1:
            return Verdict(
                False, 5, m, f"{node.frac} ({name}) is not an unknot-valued base"
            )
        return None
    if name == BASE_UNKNOT and q == 1:
        return None
    if name == BASE_HOPF and q == 2:
        return None
    return Verdict(
        False, 5, m, f"{node.frac} ({name}) is not an unknot or Hopf base"
    )


# -- composition -----------------------------------------------------------------


def connected_sum_certificate(
    c1: Certificate, c2: Certificate, k2: LinkDiagram
) -> Certificate:
    """Lift every node of c1 to its connected sum with k2.

    c2 must be a verified certificate witnessing k2's closure (its target
    insertion matches k2's determinant and component count). Determinants
    multiply, so the lifted ambient's coefficients scale by det(k2) and the
    lifted certificate verifies as-is.
    """
    det2 = determinant(k2)
    if det2 == 0:
        raise CertificateError("summand has determinant zero")
    v1 = verify_certificate(c1)
    if not v1.accepted:
        raise CertificateError(f"first certificate does not verify: {v1}")
    v2 = verify_certificate(c2)
    if not v2.accepted:
        raise CertificateError(f"witness certificate does not verify: {v2}")
    witness = splice(
        TangleTemplate(c2.ambient.diagram.with_orientation(None)), 0, c2.target
    )
    if determinant(witness) != det2 or components(witness) != components(k2):
        raise CertificateError(
            "witness certificate does not match the summand's invariants"
        )
    lifted_diagram = connected_sum(c1.ambient.diagram, 1, k2, 1)
    a, b = c1.ambient.coeffs[0]
    lifted = TangleTemplate(lifted_diagram, ((a * det2, b * det2),))
    return Certificate(c1.kind, c1.nodes, lifted)


def component_reduction_step(
    t: TangleTemplate, slot: int, f: TangleFraction, m: int = 0
) -> SkeinTriple:
    """The merging triple (f, C_m, C_{m+1}) with C_m = (p'+mp)/(q'+mq) for a
    canonical neighbor p'/q', taking the least m >= the given one for which
    both companions miss the zero locus; the three endpoint pairings are
    pairwise distinct, so the companions really merge components.
    """
    from .skein import zero_locus

    zl = zero_locus(t, slot)
    nb = farey_neighbor(f)

    oriented = t.diagram.is_oriented
    compat = compatible_classes_for_slot(t, slot) if oriented else None
    if oriented and connectivity(f) not in compat:
        raise TemplateError(f"{f} is not orientation compatible at slot {slot}")

    def companion(mm: int) -> TangleFraction:
        return TangleFraction.make(nb.p + mm * f.p, nb.q + mm * f.q)

    mm = m
    while True:
        c_m, c_m1 = companion(mm), companion(mm + 1)
        ok = c_m != zl and c_m1 != zl
        if ok and oriented:
            # the resolution of the merging triple must be f itself
            ok = connectivity(c_m) not in compat and companion(mm - 1) != zl
        if ok:
            break
        mm += 1
    if not oriented:
        return SkeinTriple(UNORIENTED, f, c_m, c_m1)
    return SkeinTriple(
        ORIENTED, f, c_m, mediant=c_m1, partner=companion(mm - 1), resolution=f
    )


# -- serialization ---------------------------------------------------------------


def certificate_to_json(cert: Certificate) -> dict:
    from .diagram import pd_string

    nodes = []
    for n in cert.nodes:
        just = n.just
        if just[0] == "base":
            j: dict = {"base": just[1]}
        else:
            j = {"triple": [just[1], just[2]]}
            if just[3] is not None:
                j["resolution"] = just[3]
        entry: dict = {"frac": str(n.frac), "just": j}
        if n.orient is not None:
            entry["orient"] = n.orient
        nodes.append(entry)
    return {
        "kind": cert.kind,
        "ambient": {
            "pd": pd_string(cert.ambient.diagram),
            "coeffs": list(cert.ambient.coeffs[0]),
        },
        "nodes": nodes,
    }


def certificate_from_json(data: dict) -> Certificate:
    diagram = parse_pd(data["ambient"]["pd"])
    a, b = data["ambient"]["coeffs"]
    ambient = TangleTemplate(diagram, ((int(a), int(b)),))
    nodes = []
    for entry in data["nodes"]:
        frac = TangleFraction.parse(entry["frac"])
        orient = entry.get("orient")
        j = entry["just"]
        if "base" in j:
            just: tuple = ("base", j["base"])
        else:
            i, k = j["triple"]
            just = ("triple", int(i), int(k), j.get("resolution"))
        nodes.append(CertNode(frac, orient, just))
    return Certificate(data["kind"], tuple(nodes), ambient)


def save_certificate(cert: Certificate, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(certificate_to_json(cert), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_certificate(path: str) -> Certificate:
    with open(path, "r", encoding="utf-8") as fh:
        return certificate_from_json(json.load(fh))
