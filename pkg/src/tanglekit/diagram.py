"""PD-code link diagrams: parsing, component tracing, crossing surgery.

A crossing X[a,b,c,d] lists its four incident edges counterclockwise starting
from the incoming under-strand, so the under-strand runs a->c and the
over-strand joins b and d. A slot T[a,b,c,d] lists the four boundary edges of
a deleted tangle disk: a top-left, b top-right, c bottom-left, d bottom-right.
`U` is a crossing-free unknot loop. Every edge label occurs exactly twice
across all crossing and slot tuples.

Crossing tuples are stored canonically: a tuple and its rotation by two
positions name the same unoriented crossing (the under-strand read from the
other end), and the lexicographically smaller is kept. Labels are compacted to
1..n in order of first appearance.

Orientation is one direction flag per traced unit (open strands first, then
closed components), relative to the canonical traversal; per-edge directions
are derived. Crossing-free loops carry no flag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "LinkDiagram",
    "CrossingSite",
    "PDError",
    "parse_pd",
    "pd_string",
    "components",
    "resolve",
    "crossing_change",
    "oriented_resolve",
    "disjoint_union",
    "connected_sum",
    "fill_slot",
]

Occ = tuple[int, int, int]  # (kind, index, position); kind 0 = crossing, 1 = slot


class PDError(ValueError):
    """Malformed PD text or invalid diagram data."""


@dataclass(frozen=True)
class CrossingSite:
    index: int


def _site_index(site: "CrossingSite | int") -> int:
    return site.index if isinstance(site, CrossingSite) else int(site)


def _canon(t: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    rot = (t[2], t[3], t[0], t[1])
    return min(t, rot)


class _UnionFind:
    def __init__(self, labels) -> None:
        self.parent = {x: x for x in labels}

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        """Merge; returns False when already merged (a closure event)."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...] = ()
    slots: tuple[tuple[int, int, int, int], ...] = ()
    loops: int = 0
    orientation: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "crossings", tuple(_canon(tuple(t)) for t in self.crossings)
        )
        object.__setattr__(self, "slots", tuple(tuple(t) for t in self.slots))
        if self.loops < 0:
            raise PDError("negative loop count")
        if not self.crossings and not self.slots and self.loops == 0:
            raise PDError("empty diagram")
        counts: dict[int, int] = {}
        for t in list(self.crossings) + list(self.slots):
            if len(t) != 4:
                raise PDError("tuples must have four entries")
            for e in t:
                counts[e] = counts.get(e, 0) + 1
        n = len(counts)
        if counts and (min(counts) != 1 or max(counts) != n):
            raise PDError("edge labels must be compact 1..n")
        bad = [e for e, c in counts.items() if c != 2]
        if bad:
            raise PDError(f"edge labels must occur exactly twice, got {sorted(bad)}")
        if self.orientation is not None:
            units = self._trace()
            if len(self.orientation) != len(units):
                raise PDError(
                    f"orientation needs {len(units)} flags, got {len(self.orientation)}"
                )
            if any(f not in (1, -1) for f in self.orientation):
                raise PDError("orientation flags must be +1 or -1")

    # -- structure ---------------------------------------------------------

    @property
    def arc_count(self) -> int:
        m = 0
        for t in self.crossings + self.slots:
            m = max(m, *t)
        return m

    @property
    def is_oriented(self) -> bool:
        return self.orientation is not None

    def occurrences(self) -> dict[int, list[Occ]]:
        occ: dict[int, list[Occ]] = {}
        for i, t in enumerate(self.crossings):
            for p, e in enumerate(t):
                occ.setdefault(e, []).append((0, i, p))
        for j, t in enumerate(self.slots):
            for p, e in enumerate(t):
                occ.setdefault(e, []).append((1, j, p))
        return occ

    def _trace(self) -> list[list[tuple[int, Occ, Occ]]]:
        """Traced units: open strands (slot to slot), then closed components.

        Each unit is a list of steps (edge, from_occ, to_occ) in traversal
        order. Deterministic: paths start from slot occurrences in scan order,
        cycles from the smallest unvisited edge toward its later occurrence.
        """
        occ = self.occurrences()
        visited: set[int] = set()
        units: list[list[tuple[int, Occ, Occ]]] = []

        def other(e: int, o: Occ) -> Occ:
            a, b = occ[e]
            return b if o == a else a

        def walk(e: int, start: Occ) -> list[tuple[int, Occ, Occ]]:
            steps = []
            cur, frm = e, start
            while True:
                visited.add(cur)
                to = other(cur, frm)
                steps.append((cur, frm, to))
                if to[0] == 1:
                    return steps  # path end at a slot
                nxt_pos = (to[2] + 2) % 4
                nxt = self.crossings[to[1]][nxt_pos]
                frm = (0, to[1], nxt_pos)
                if nxt == e and frm == start:
                    return steps  # cycle closed
                cur = nxt

        for j, t in enumerate(self.slots):
            for p, e in enumerate(t):
                if e not in visited:
                    units.append(walk(e, (1, j, p)))
        for e in sorted(occ):
            if e not in visited:
                units.append(walk(e, occ[e][0]))
        return units

    def edge_directions(self) -> dict[int, tuple[Occ, Occ]]:
        """Per-edge (tail, head) occurrences under the stored orientation."""
        if self.orientation is None:
            raise PDError("diagram is not oriented")
        dirs: dict[int, tuple[Occ, Occ]] = {}
        for flag, unit in zip(self.orientation, self._trace()):
            for e, frm, to in unit:
                dirs[e] = (frm, to) if flag == 1 else (to, frm)
        return dirs

    def incoming_positions(self, crossing: int) -> set[int]:
        """Positions of the two edges directed into the given crossing."""
        dirs = self.edge_directions()
        ins: set[int] = set()
        for p, e in enumerate(self.crossings[crossing]):
            if dirs[e][1] == (0, crossing, p):
                ins.add(p)
        return ins

    def with_orientation(self, flags: tuple[int, ...] | None) -> "LinkDiagram":
        return LinkDiagram(self.crossings, self.slots, self.loops, flags)


# -- construction helpers ----------------------------------------------------


def _rebuild(
    crossings,
    slots,
    loops: int,
    label_map=None,
) -> tuple[LinkDiagram, dict[int, int]]:
    """Relabel (optional map), compact to 1..n by first appearance, build.

    Returns (diagram, compact map from mapped label to new label).
    """
    mapped_crossings = []
    for t in crossings:
        mapped_crossings.append(tuple(label_map(e) if label_map else e for e in t))
    mapped_slots = []
    for t in slots:
        mapped_slots.append(tuple(label_map(e) if label_map else e for e in t))
    labels = {e for t in mapped_crossings + mapped_slots for e in t}
    if labels == set(range(1, len(labels) + 1)):
        compact = {e: e for e in labels}
    else:
        compact = {}
        for t in mapped_crossings + mapped_slots:
            for e in t:
                if e not in compact:
                    compact[e] = len(compact) + 1
    new_crossings = tuple(tuple(compact[e] for e in t) for t in mapped_crossings)
    new_slots = tuple(tuple(compact[e] for e in t) for t in mapped_slots)
    diagram = LinkDiagram(new_crossings, new_slots, loops)
    # the constructor may rotate a tuple by two; record the shift per crossing
    rotations = tuple(
        0 if diagram.crossings[i] == t else 2 for i, t in enumerate(new_crossings)
    )
    return diagram, compact, rotations


def _orient_from_heads(new: LinkDiagram, heads: dict[int, Occ]) -> tuple[int, ...]:
    """Orientation flags for `new` given inherited head occurrences: for each
    directed surviving edge, the occurrence its strand flows into."""
    flags: list[int] = []
    for unit in new._trace():
        flag = 0
        for e, frm, to in unit:
            h = heads.get(e)
            if h == to:
                flag = 1
                break
            if h == frm:
                flag = -1
                break
        if flag == 0:
            raise PDError("cannot inherit orientation: unit has no directed edge")
        flags.append(flag)
    return tuple(flags)


# -- parsing / rendering -----------------------------------------------------

_TOKEN = re.compile(
    r"(?P<kind>[XT])\[(?P<body>-?\d+(?:\s*,\s*-?\d+){3})\]|(?P<loop>U)\b|O\[(?P<orient>[^\]]*)\]"
)


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text: X[i,j,k,l] crossings, T[a,b,c,d] slots, U loops, and an
    optional O[1:+,2:-] orientation directive indexing traced units."""
    crossings: list[tuple[int, int, int, int]] = []
    slots: list[tuple[int, int, int, int]] = []
    loops = 0
    orient_spec: str | None = None
    pos = 0
    for m in _TOKEN.finditer(text):
        if text[pos : m.start()].strip():
            raise PDError(f"unrecognized PD text: {text[pos:m.start()]!r}")
        pos = m.end()
        if m.group("loop"):
            loops += 1
        elif m.group("orient") is not None:
            if orient_spec is not None:
                raise PDError("multiple orientation directives")
            orient_spec = m.group("orient")
        else:
            entries = tuple(int(x) for x in m.group("body").split(","))
            if any(e <= 0 for e in entries):
                raise PDError("edge labels must be positive")
            if m.group("kind") == "X":
                crossings.append(entries)
            else:
                slots.append(entries)
    if text[pos:].strip():
        raise PDError(f"unrecognized PD text: {text[pos:]!r}")
    if not crossings and not slots and loops == 0:
        raise PDError("empty PD text")

    counts: dict[int, int] = {}
    for t in crossings + slots:
        for e in t:
            counts[e] = counts.get(e, 0) + 1
    wrong = {e: c for e, c in counts.items() if c != 2}
    if wrong:
        slot_labels = {e for t in slots for e in t}
        if any(e in slot_labels for e in wrong):
            raise PDError(f"slot endpoint reuse: labels {sorted(wrong)} occur != 2 times")
        raise PDError(f"edge labels must occur exactly twice: {sorted(wrong)}")

    d, _, _ = _rebuild(crossings, slots, loops)
    if orient_spec is not None:
        flags = _parse_orientation(orient_spec, d)
        d = d.with_orientation(flags)
    return d


def _parse_orientation(spec: str, d: LinkDiagram) -> tuple[int, ...]:
    unit_count = len(d._trace())
    entries = [s.strip() for s in spec.split(",") if s.strip()]
    flags = [0] * unit_count
    for entry in entries:
        m = re.fullmatch(r"(\d+)\s*:\s*([+-])", entry)
        if not m:
            raise PDError(f"bad orientation entry {entry!r}")
        idx = int(m.group(1))
        if not 1 <= idx <= unit_count:
            raise PDError(f"orientation index {idx} out of range (1..{unit_count})")
        flags[idx - 1] = 1 if m.group(2) == "+" else -1
    if any(f == 0 for f in flags):
        raise PDError("orientation directive must cover every component")
    return tuple(flags)


def pd_string(d: LinkDiagram) -> str:
    parts = [f"X[{','.join(map(str, t))}]" for t in d.crossings]
    parts += [f"T[{','.join(map(str, t))}]" for t in d.slots]
    parts += ["U"] * d.loops
    if d.orientation is not None:
        body = ",".join(
            f"{i + 1}:{'+' if f == 1 else '-'}" for i, f in enumerate(d.orientation)
        )
        parts.append(f"O[{body}]")
    return " ".join(parts)


# -- operations --------------------------------------------------------------


def components(d: LinkDiagram) -> int:
    """Number of link components; rejects diagrams with unfilled slots."""
    if d.slots:
        raise PDError("diagram has unfilled slots")
    return len(d._trace()) + d.loops


def _surgery(
    d: LinkDiagram, site: int, joins: list[tuple[int, int]]
) -> tuple[LinkDiagram, dict[int, int], tuple[int, ...]]:
    """Remove crossing `site`, identify edge pairs, renormalize.

    Returns (diagram, compact label map over union-find representatives,
    per-crossing position rotations applied by canonicalization)."""
    labels = range(1, d.arc_count + 1)
    uf = _UnionFind(labels)
    closed = 0
    for x, y in joins:
        if not uf.union(x, y):
            closed += 1
    rest = [t for i, t in enumerate(d.crossings) if i != site]
    new, compact, rotations = _rebuild(rest, d.slots, d.loops + closed, uf.find)
    mapping = {e: compact[uf.find(e)] for e in labels if uf.find(e) in compact}
    return new, mapping, rotations


def resolve(d: LinkDiagram, site: "CrossingSite | int", which: int) -> LinkDiagram:
    """Smooth one crossing the chosen way (0 or 1); the input diagram, and its
    two smoothings at a site, form an unoriented skein triple by construction.
    """
    i = _site_index(site)
    if not 0 <= i < len(d.crossings):
        raise PDError(f"crossing index {i} out of range")
    if which not in (0, 1):
        raise PDError("smoothing must be 0 or 1")
    if d.is_oriented:
        raise PDError("resolve acts on unoriented diagrams; see oriented_resolve")
    t = d.crossings[i]
    joins = [(t[0], t[3]), (t[1], t[2])] if which == 0 else [(t[0], t[1]), (t[2], t[3])]
    out, _, _ = _surgery(d, i, joins)
    return out


def crossing_change(d: LinkDiagram, site: "CrossingSite | int") -> LinkDiagram:
    """Swap over/under at one crossing; an involution on canonical diagrams.

    Strand directions are physical data, so an oriented diagram keeps every
    edge's direction even when canonicalization rotates the flipped tuple.
    """
    i = _site_index(site)
    if not 0 <= i < len(d.crossings):
        raise PDError(f"crossing index {i} out of range")
    t = d.crossings[i]
    raw = (t[1], t[2], t[3], t[0])
    flipped = _canon(raw)
    rot = 0 if flipped == raw else 2
    new_crossings = d.crossings[:i] + (flipped,) + d.crossings[i + 1 :]
    out = LinkDiagram(new_crossings, d.slots, d.loops)
    if d.orientation is None:
        return out

    def map_occ(o: Occ) -> Occ:
        kind, idx, p = o
        if kind == 0 and idx == i:
            # old position p sits at raw position p-1, then the rotation
            return (0, i, ((p + 3) + rot) % 4)
        return o

    heads = {
        e: map_occ(head) for e, (_, head) in d.edge_directions().items()
    }
    return out.with_orientation(_orient_from_heads(out, heads))


def oriented_resolve(d: LinkDiagram, site: "CrossingSite | int") -> LinkDiagram:
    """The unique smoothing consistent with strand directions at the site;
    orientation carries to the result."""
    i = _site_index(site)
    if not d.is_oriented:
        raise PDError("diagram is not oriented")
    if not 0 <= i < len(d.crossings):
        raise PDError(f"crossing index {i} out of range")
    ins = d.incoming_positions(i)
    t = d.crossings[i]
    if ins in ({0, 3}, {1, 2}):
        joins = [(t[0], t[1]), (t[2], t[3])]
    elif ins in ({0, 1}, {2, 3}):
        joins = [(t[0], t[3]), (t[1], t[2])]
    else:  # pragma: no cover - tracing guarantees one under-, one over-entry
        raise PDError(f"inconsistent directions at crossing {i}: {ins}")
    stripped = d.with_orientation(None)
    out, label_map, rotations = _surgery(stripped, i, joins)

    join_partner: dict[int, int] = {}
    pos_pairs = ((0, 1), (2, 3)) if ins in ({0, 3}, {1, 2}) else ((0, 3), (1, 2))
    for x, y in pos_pairs:
        join_partner[x] = y
        join_partner[y] = x

    occ = d.occurrences()

    def map_occ(o: Occ) -> Occ:
        kind, idx, p = o
        if kind != 0:
            return o
        new_idx = idx - 1 if idx > i else idx
        return (0, new_idx, (p + rotations[new_idx]) % 4)

    def chase(o: Occ) -> Occ | None:
        """Follow a strand head through the smoothed site to a surviving
        occurrence; None when the strand closed into a free loop."""
        seen = set()
        while o[0] == 0 and o[1] == i:
            if o in seen:
                return None
            seen.add(o)
            exit_pos = join_partner[o[2]]
            e2 = d.crossings[i][exit_pos]
            a, b = occ[e2]
            o = b if a == (0, i, exit_pos) else a
        return map_occ(o)

    heads: dict[int, Occ] = {}
    for e, (tail, head) in d.edge_directions().items():
        if e not in label_map:
            continue
        h = chase(head)
        if h is not None:
            heads[label_map[e]] = h
    flags = _orient_from_heads(out, heads)
    return out.with_orientation(flags)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Place two diagrams side by side; components add."""
    shift = d1.arc_count
    crossings = d1.crossings + tuple(
        tuple(e + shift for e in t) for t in d2.crossings
    )
    slots = d1.slots + tuple(tuple(e + shift for e in t) for t in d2.slots)
    orientation = None
    if d1.is_oriented and d2.is_oriented:
        orientation = d1.orientation + d2.orientation
    out = LinkDiagram(crossings, slots, d1.loops + d2.loops)
    if orientation is not None and not out.slots:
        # unit order is d1 units then d2 units: labels are disjoint and ordered
        out = out.with_orientation(orientation)
    return out


def connected_sum(
    d1: LinkDiagram, a1: int, d2: LinkDiagram, a2: int
) -> LinkDiagram:
    """Cut edge a1 of d1 and edge a2 of d2 and cross-join the loose ends.

    Component counts satisfy |result| = |d1| + |d2| - 1. The result is
    unoriented. Summing with a crossing-free unknot returns the other diagram.
    """
    if not d2.crossings and not d2.slots:
        if d2.loops != 1:
            raise PDError("connected sum with a bare unlink is ambiguous")
        return d1.with_orientation(None)
    if not d1.crossings and not d1.slots:
        if d1.loops != 1:
            raise PDError("connected sum with a bare unlink is ambiguous")
        return d2.with_orientation(None)
    if a1 < 1 or a1 > d1.arc_count:
        raise PDError(f"edge {a1} not in first diagram")
    if a2 < 1 or a2 > d2.arc_count:
        raise PDError(f"edge {a2} not in second diagram")
    shift = d1.arc_count
    a2s = a2 + shift

    # Replace the second occurrence of a1 with a2s and the first occurrence of
    # a2s with a1: the two cut strands cross-join into two merged edges.
    seen_a1 = 0
    seen_a2 = 0
    crossings: list[tuple[int, ...]] = []
    slots: list[tuple[int, ...]] = []
    for src, dst in ((d1.crossings, crossings), (d1.slots, slots)):
        for t in src:
            row = []
            for e in t:
                if e == a1:
                    seen_a1 += 1
                    row.append(a1 if seen_a1 == 1 else a2s)
                else:
                    row.append(e)
            dst.append(tuple(row))
    for src, dst in ((d2.crossings, crossings), (d2.slots, slots)):
        for t in src:
            row = []
            for e in t:
                if e + shift == a2s:
                    seen_a2 += 1
                    row.append(a1 if seen_a2 == 1 else a2s)
                else:
                    row.append(e + shift)
            dst.append(tuple(row))
    out, _, _ = _rebuild(crossings, slots, d1.loops + d2.loops)
    return out


def fill_slot(
    d: LinkDiagram,
    slot_index: int,
    crossings: tuple[tuple[int, int, int, int], ...],
    stubs: tuple[int, int, int, int],
) -> LinkDiagram:
    """Replace one slot with compiled tangle crossings.

    `stubs` are the tangle's (nw, ne, sw, se) boundary edges in its own label
    space; they are glued to the slot's (a, b, c, d). Orientation, when
    present, carries to the result.
    """
    if not 0 <= slot_index < len(d.slots):
        raise PDError(f"slot index {slot_index} out of range")
    shift = d.arc_count
    add = [tuple(e + shift for e in t) for t in crossings]
    glue = [s + shift for s in stubs]
    tangle_labels = {e for t in add for e in t} | set(glue)
    slot = d.slots[slot_index]

    uf = _UnionFind(list(range(1, shift + 1)) + sorted(tangle_labels))
    closed = 0
    for end, stub in zip(slot, glue):
        if not uf.union(end, stub):
            closed += 1
    keep_slots = tuple(t for j, t in enumerate(d.slots) if j != slot_index)
    new, compact, rotations = _rebuild(
        tuple(d.crossings) + tuple(add), keep_slots, d.loops + closed, uf.find
    )
    if d.orientation is None:
        return new

    label_map = {e: compact.get(uf.find(e)) for e in range(1, shift + 1)}
    occ = d.occurrences()
    n_old = len(d.crossings)

    # occurrences of each tangle edge: crossing positions and boundary stubs
    tangle_occ: dict[int, list[tuple[str, int, int]]] = {}
    for j, t in enumerate(add):
        for p, e in enumerate(t):
            tangle_occ.setdefault(e, []).append(("x", j, p))
    for p, s in enumerate(glue):
        tangle_occ.setdefault(s, []).append(("b", p, 0))

    def map_occ(o: Occ) -> Occ:
        kind, idx, p = o
        if kind == 1:
            return (1, idx - 1 if idx > slot_index else idx, p)
        return (0, idx, (p + rotations[idx]) % 4)

    def chase(o: Occ) -> Occ | None:
        """Follow a strand head through the glued slot until it reaches a
        crossing or a surviving slot; None when it closed into a loop."""
        seen = set()
        while o[0] == 1 and o[1] == slot_index:
            if o in seen:
                return None
            seen.add(o)
            s = glue[o[2]]
            ends = tangle_occ[s]
            # step into the tangle at boundary position o[2]
            nxt = next(e for e in ends if e != ("b", o[2], 0))
            if nxt[0] == "x":
                return (0, n_old + nxt[1], (nxt[2] + rotations[n_old + nxt[1]]) % 4)
            # the stub edge crosses straight to another boundary position
            p2 = nxt[1]
            e2 = slot[p2]
            a, b = occ[e2]
            o = b if a == (1, slot_index, p2) else a
        return map_occ(o)

    heads: dict[int, Occ] = {}
    for e, (tail, head) in d.edge_directions().items():
        if label_map.get(e) is None:
            continue
        h = chase(head)
        if h is not None:
            heads[label_map[e]] = h
    flags = _orient_from_heads(new, heads)
    return new.with_orientation(flags)
