"""Oriented link diagrams given as PD codes, and local moves on them.

A crossing is written ``X(a,b,c,d)``: the four arc labels around the
crossing read counterclockwise starting at the incoming under-strand, so
the under-strand runs a -> c.  The over-strand direction (hence the
crossing sign) is inferred from the orientation data of the whole
diagram; components that never pass under anything are oriented by the
label-succession convention (labels increase along the orientation, with
wraparound), and a crossing may carry an explicit ``+``/``-`` suffix
where that convention is ambiguous (over-only components with at most
two arcs).

Crossingless unknot components cannot be expressed by PD codes and are
tracked by the ``free_loops`` counter; the textual form declares them
with an ``O*n`` prefix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

UNDER_IN, OVER_A, UNDER_OUT, OVER_B = 0, 1, 2, 3


class DiagramError(ValueError):
    """Malformed PD text or an inconsistent diagram."""


class SiteError(ValueError):
    """A crossing triple that does not match a triangle template."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: arc quadruple (CCW from the incoming under-strand)
    plus the resolved sign."""

    arcs: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DiagramError(f"bad crossing sign {self.sign}")

    @property
    def over_in_slot(self) -> int:
        return OVER_B if self.sign > 0 else OVER_A

    @property
    def over_out_slot(self) -> int:
        return OVER_A if self.sign > 0 else OVER_B

    def in_slots(self) -> tuple[int, int]:
        return (UNDER_IN, self.over_in_slot)

    def out_slots(self) -> tuple[int, int]:
        return (UNDER_OUT, self.over_out_slot)


@dataclass(frozen=True)
class DeltaSite:
    """Three crossings pairwise joined by the arcs of an empty triangle."""

    crossings: tuple[int, int, int]
    triangle_arcs: tuple[int, int, int] = ()


class LinkDiagram:
    """An oriented link diagram; immutable once constructed.

    Crossing ids are list positions.  Components are the oriented arc
    cycles, ordered by their minimal arc label, followed by the
    crossingless free loops.
    """

    __slots__ = ("crossings", "free_loops", "components", "_arc_component",
                 "_occurrences")

    def __init__(self, crossings: Sequence[Crossing], free_loops: int = 0):
        if free_loops < 0:
            raise DiagramError("free_loops must be nonnegative")
        crossings = tuple(crossings)
        occurrences: dict[int, list[tuple[int, int]]] = {}
        for ci, c in enumerate(crossings):
            for slot, arc in enumerate(c.arcs):
                occurrences.setdefault(arc, []).append((ci, slot))
        for arc, occ in occurrences.items():
            if len(occ) != 2:
                raise DiagramError(
                    f"arc {arc} appears {len(occ)} times; every arc label "
                    f"must appear exactly twice")
        # orientation consistency: one head (in-slot) and one tail (out-slot)
        heads: dict[int, tuple[int, int]] = {}
        tails: dict[int, tuple[int, int]] = {}
        for ci, c in enumerate(crossings):
            for slot in c.in_slots():
                arc = c.arcs[slot]
                if arc in heads:
                    raise DiagramError(f"arc {arc} enters two crossings")
                heads[arc] = (ci, slot)
            for slot in c.out_slots():
                arc = c.arcs[slot]
                if arc in tails:
                    raise DiagramError(f"arc {arc} leaves two crossings")
                tails[arc] = (ci, slot)
        # oriented components
        cycles: list[tuple[int, ...]] = []
        seen: set[int] = set()
        for start in sorted(occurrences):
            if start in seen:
                continue
            cycle = []
            arc = start
            while arc not in seen:
                seen.add(arc)
                cycle.append(arc)
                ci, slot = heads[arc]
                c = crossings[ci]
                nxt_slot = UNDER_OUT if slot == UNDER_IN else c.over_out_slot
                arc = c.arcs[nxt_slot]
            if arc != start:
                raise DiagramError(f"arc cycle through {start} is not closed")
            cycles.append(tuple(cycle))
        cycles.sort(key=min)
        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "free_loops", int(free_loops))
        object.__setattr__(self, "components", tuple(cycles))
        arc_component = {}
        for idx, cyc in enumerate(cycles):
            for arc in cyc:
                arc_component[arc] = idx
        object.__setattr__(self, "_arc_component", arc_component)
        object.__setattr__(self, "_occurrences", occurrences)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("LinkDiagram is immutable")

    # -- basic queries -------------------------------------------------------

    @property
    def num_components(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def component_of(self, arc: int) -> int:
        return self._arc_component[arc]

    def strand_components(self, ci: int) -> tuple[int, int]:
        """(under component, over component) at crossing ci."""
        c = self.crossings[ci]
        return (self._arc_component[c.arcs[UNDER_IN]],
                self._arc_component[c.arcs[OVER_A]])

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def is_alternating(self) -> bool:
        """True when every component alternates over/under along its way."""
        for cyc in self.components:
            states = []
            for arc in cyc:
                ci, slot = self._head(arc)
                states.append(slot != UNDER_IN)
            if len(states) >= 2 and any(
                    a == b for a, b in zip(states, states[1:] + states[:1])):
                return False
        return True

    def _head(self, arc: int) -> tuple[int, int]:
        for ci, slot in self._occurrences[arc]:
            c = self.crossings[ci]
            if slot in c.in_slots():
                return (ci, slot)
        raise DiagramError(f"arc {arc} has no head")

    def _tail(self, arc: int) -> tuple[int, int]:
        for ci, slot in self._occurrences[arc]:
            c = self.crossings[ci]
            if slot in c.out_slots():
                return (ci, slot)
        raise DiagramError(f"arc {arc} has no tail")

    # -- text form -----------------------------------------------------------

    def to_pd(self) -> str:
        items = []
        if self.free_loops:
            items.append(f"O*{self.free_loops}")
        for c in self.crossings:
            suffix = "+" if c.sign > 0 else "-"
            items.append(f"X{suffix}({','.join(str(a) for a in c.arcs)})")
        return ",".join(items)

    def __repr__(self) -> str:
        return f"LinkDiagram({self.to_pd()!r})"

    def relabeled(self) -> "LinkDiagram":
        """Renumber arcs 1..2n following the component order."""
        mapping: dict[int, int] = {}
        nxt = 1
        for cyc in self.components:
            for arc in cyc:
                mapping[arc] = nxt
                nxt += 1
        return LinkDiagram(
            [Crossing(tuple(mapping[a] for a in c.arcs), c.sign)
             for c in self.crossings],
            self.free_loops)


# -- parsing -------------------------------------------------------------------

_ITEM_RE = re.compile(r"X([+-]?)\(([-\d]+),([-\d]+),([-\d]+),([-\d]+)\)")
_LOOPS_RE = re.compile(r"O\*(\d+)")


def parse_pd(text: str) -> LinkDiagram:
    """Parse a PD string into a validated, oriented diagram."""
    compact = "".join(text.split())
    free_loops = 0
    if compact.startswith("O*"):
        m = _LOOPS_RE.match(compact)
        if not m:
            raise DiagramError(f"malformed free-loop prefix in {text!r}")
        free_loops = int(m.group(1))
        compact = compact[m.end():]
        if compact.startswith(","):
            compact = compact[1:]
    raw: list[tuple[tuple[int, int, int, int], int | None]] = []
    if compact:
        pos = 0
        while pos < len(compact):
            m = _ITEM_RE.match(compact, pos)
            if not m:
                raise DiagramError(f"malformed PD item at {compact[pos:]!r}")
            sign = {"": None, "+": 1, "-": -1}[m.group(1)]
            arcs = tuple(int(m.group(i)) for i in range(2, 6))
            raw.append((arcs, sign))
            pos = m.end()
            if pos < len(compact):
                if compact[pos] != ",":
                    raise DiagramError(f"expected ',' at {compact[pos:]!r}")
                pos += 1
    if not raw:
        if free_loops == 0:
            raise DiagramError("empty diagram must declare free loops (O*n)")
        return LinkDiagram((), free_loops)

    occurrences: dict[int, list[tuple[int, int]]] = {}
    for ci, (arcs, _) in enumerate(raw):
        for slot, arc in enumerate(arcs):
            occurrences.setdefault(arc, []).append((ci, slot))
    for arc, occ in occurrences.items():
        if len(occ) != 2:
            raise DiagramError(
                f"arc {arc} appears {len(occ)} times; every arc label must "
                f"appear exactly twice")

    # undirected components: pair slots (0,2) and (1,3) at every crossing
    def partner(ci: int, slot: int) -> tuple[int, int]:
        return (ci, {UNDER_IN: UNDER_OUT, UNDER_OUT: UNDER_IN,
                     OVER_A: OVER_B, OVER_B: OVER_A}[slot])

    def other_occurrence(arc: int, occ: tuple[int, int]) -> tuple[int, int]:
        a, b = occurrences[arc]
        return b if occ == a else a

    unvisited = set(occurrences)
    cycles: list[list[tuple[int, tuple[int, int]]]] = []
    while unvisited:
        start = min(unvisited)
        # walk: (arc, occurrence we are heading towards)
        walk: list[tuple[int, tuple[int, int]]] = []
        arc, occ = start, occurrences[start][0]
        while True:
            walk.append((arc, occ))
            unvisited.discard(arc)
            nci, nslot = partner(*occ)
            nxt = raw[nci][0][nslot]
            nocc = other_occurrence(nxt, (nci, nslot))
            arc, occ = nxt, nocc
            if arc == start and occ == occurrences[start][0]:
                break
            if arc == start and walk[0][1] != occ:
                # closed up traversing the start arc from its other end
                break
        cycles.append(walk)

    # orient each cycle: in the traversal above, `occ` is the candidate head
    # of `arc` (the end it runs into).  Under-slots force the choice.
    head_of: dict[int, tuple[int, int]] = {}
    pending: list[list[tuple[int, tuple[int, int]]]] = []
    for walk in cycles:
        verdicts = set()
        for arc, occ in walk:
            ci, slot = occ
            if slot == UNDER_IN:
                verdicts.add(True)     # traversal direction is correct
            elif slot == UNDER_OUT:
                verdicts.add(False)    # traversal runs against orientation
            other = other_occurrence(arc, occ)
            if other[1] == UNDER_IN:
                verdicts.add(False)
            elif other[1] == UNDER_OUT:
                verdicts.add(True)
        if len(verdicts) > 1:
            raise DiagramError("inconsistent strand orientations in PD code")
        if len(verdicts) == 1:
            forward = verdicts.pop()
            for arc, occ in walk:
                head_of[arc] = occ if forward else other_occurrence(arc, occ)
        else:
            pending.append(walk)

    for walk in pending:
        arcs_in_walk = [arc for arc, _ in walk]
        forward = None
        if len(walk) >= 3:
            ordered = sorted(arcs_in_walk)
            succ = {ordered[i]: ordered[(i + 1) % len(ordered)]
                    for i in range(len(ordered))}
            fwd = all(succ[arcs_in_walk[i]] == arcs_in_walk[(i + 1) % len(walk)]
                      for i in range(len(walk)))
            rev = all(succ[arcs_in_walk[(i + 1) % len(walk)]] == arcs_in_walk[i]
                      for i in range(len(walk)))
            if fwd != rev:
                forward = fwd
        if forward is None:
            # fall back to a declared sign at a crossing this cycle passes over
            for arc, occ in walk:
                ci, slot = occ
                if slot in (OVER_A, OVER_B) and raw[ci][1] is not None:
                    over_in = OVER_B if raw[ci][1] > 0 else OVER_A
                    forward = (slot == over_in)
                    break
                oci, oslot = other_occurrence(arc, occ)
                if oslot in (OVER_A, OVER_B) and raw[oci][1] is not None:
                    over_in = OVER_B if raw[oci][1] > 0 else OVER_A
                    forward = (oslot != over_in)
                    break
        if forward is None:
            raise DiagramError(
                "ambiguous orientation for an over-only component "
                f"(arcs {sorted(arcs_in_walk)}); add +/- sign suffixes")
        for arc, occ in walk:
            head_of[arc] = occ if forward else other_occurrence(arc, occ)

    crossings: list[Crossing] = []
    for ci, (arcs, declared) in enumerate(raw):
        over_in = None
        for slot in (OVER_A, OVER_B):
            if head_of[arcs[slot]] == (ci, slot):
                over_in = slot
                break
        if over_in is None:
            raise DiagramError(f"crossing {ci} has no incoming over-strand")
        sign = 1 if over_in == OVER_B else -1
        if declared is not None and declared != sign:
            raise DiagramError(
                f"crossing {ci} declared sign {declared:+d} but orientations "
                f"force {sign:+d}")
        crossings.append(Crossing(arcs, sign))
    return LinkDiagram(crossings, free_loops)


# -- linking data ---------------------------------------------------------------


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    """Symmetric matrix of pairwise linking numbers, zero diagonal."""
    m = d.num_components
    sums = [[0] * m for _ in range(m)]
    for ci in range(d.num_crossings):
        i, j = d.strand_components(ci)
        if i != j:
            s = d.crossings[ci].sign
            sums[i][j] += s
            sums[j][i] += s
    for i in range(m):
        for j in range(m):
            if sums[i][j] % 2:
                raise DiagramError("odd signed crossing count between "
                                   f"components {i} and {j}")
            sums[i][j] //= 2
    return sums


def is_algebraically_split(d: LinkDiagram) -> bool:
    lk = linking_matrix(d)
    return all(lk[i][j] == 0
               for i in range(len(lk)) for j in range(len(lk)) if i != j)


def is_proper(d: LinkDiagram) -> bool:
    lk = linking_matrix(d)
    total = sum(lk[i][j] for i in range(len(lk)) for j in range(i + 1, len(lk)))
    return total % 2 == 0


# -- mirror ---------------------------------------------------------------------


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Switch every crossing (over <-> under); an involution."""
    out = []
    for c in d.crossings:
        a, b, cc, dd = c.arcs
        if c.sign > 0:
            out.append(Crossing((dd, a, b, cc), -1))
        else:
            out.append(Crossing((b, cc, dd, a), 1))
    return LinkDiagram(out, d.free_loops)


# -- rebuilding helper ----------------------------------------------------------


class _ArcUnion:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent.get(x, x)
        if p == x:
            return x
        root = self.find(p)
        self.parent[x] = root
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _rebuild(d: LinkDiagram, retained: list[int], unions: _ArcUnion,
             kept_components: Iterable[int] | None = None) -> LinkDiagram:
    """Build a diagram from the retained crossings of ``d`` after arc
    unification, preserving the relative order of the kept components."""
    total = d.num_components
    if kept_components is None:
        kept = list(range(total))
    else:
        kept = sorted(kept_components)
    new_crossings = []
    present: set[int] = set()
    for ci in retained:
        c = d.crossings[ci]
        arcs = tuple(unions.find(a) for a in c.arcs)
        present.update(arcs)
        new_crossings.append(Crossing(arcs, c.sign))
    # stable arc relabeling: walk kept components in order
    mapping: dict[int, int] = {}
    nxt = 1
    loops = 0
    n_cyclic = len(d.components)
    for comp in kept:
        if comp >= n_cyclic:
            loops += 1           # kept free loop
            continue
        roots_in_order = []
        seen_roots = set()
        for arc in d.components[comp]:
            r = unions.find(arc)
            if r in present and r not in seen_roots:
                seen_roots.add(r)
                roots_in_order.append(r)
        if not roots_in_order:
            loops += 1           # component lost all of its crossings
            continue
        for r in roots_in_order:
            if r not in mapping:
                mapping[r] = nxt
                nxt += 1
    final = [Crossing(tuple(mapping[a] for a in c.arcs), c.sign)
             for c in new_crossings]
    return LinkDiagram(final, loops)


# -- sublink extraction ----------------------------------------------------------


def extract_sublink(d: LinkDiagram, keep: Iterable[int]) -> LinkDiagram:
    """Delete the components not in ``keep``, smoothing every crossing where
    a kept strand passes over or under a deleted one."""
    keep_set = set(keep)
    if not keep_set:
        raise DiagramError("keep set must be nonempty")
    if not keep_set.issubset(range(d.num_components)):
        raise DiagramError(f"keep set {sorted(keep_set)} out of range")
    unions = _ArcUnion()
    retained = []
    for ci, c in enumerate(d.crossings):
        under_c, over_c = d.strand_components(ci)
        if under_c in keep_set and over_c in keep_set:
            retained.append(ci)
        elif under_c in keep_set:
            unions.union(c.arcs[UNDER_IN], c.arcs[UNDER_OUT])
        elif over_c in keep_set:
            unions.union(c.arcs[OVER_A], c.arcs[OVER_B])
    return _rebuild(d, retained, unions, keep_set)


# -- Reidemeister I/II reduction ---------------------------------------------------


def _find_r1(d: LinkDiagram) -> tuple[int, int, int] | None:
    """Return (crossing, loop slot pair start) for a kink, if any."""
    for ci, c in enumerate(d.crossings):
        a = c.arcs
        if c.sign > 0:
            if a[UNDER_IN] == a[OVER_A]:
                return (ci, UNDER_IN, OVER_A)
            if a[UNDER_OUT] == a[OVER_B]:
                return (ci, UNDER_OUT, OVER_B)
        else:
            if a[OVER_A] == a[UNDER_OUT]:
                return (ci, OVER_A, UNDER_OUT)
            if a[OVER_B] == a[UNDER_IN]:
                return (ci, OVER_B, UNDER_IN)
    return None


def _find_r2(d: LinkDiagram) -> tuple[int, int, int, int] | None:
    """Return (ci, cj, over_arc, under_arc) for a cancelling bigon."""
    by_pair: dict[tuple[int, int], dict[str, list[int]]] = {}
    for arc, occ in d._occurrences.items():
        (ci, si), (cj, sj) = occ
        if ci == cj:
            continue
        key = (min(ci, cj), max(ci, cj))
        kinds = {True: "over", False: "under"}
        kind_i = kinds[si in (OVER_A, OVER_B)]
        kind_j = kinds[sj in (OVER_A, OVER_B)]
        if kind_i != kind_j:
            continue
        by_pair.setdefault(key, {"over": [], "under": []})[kind_i].append(arc)
    for (ci, cj), found in by_pair.items():
        if found["over"] and found["under"]:
            if d.crossings[ci].sign != -d.crossings[cj].sign:
                continue
            return (ci, cj, found["over"][0], found["under"][0])
    return None


def simplify(d: LinkDiagram) -> LinkDiagram:
    """Greedy Reidemeister I/II reduction; idempotent on its own output."""
    while True:
        kink = _find_r1(d)
        if kink is not None:
            ci, s1, s2 = kink
            c = d.crossings[ci]
            others = [slot for slot in range(4) if slot not in (s1, s2)]
            p, q = c.arcs[others[0]], c.arcs[others[1]]
            unions = _ArcUnion()
            if p != q:
                unions.union(p, q)
            retained = [k for k in range(d.num_crossings) if k != ci]
            d = _rebuild(d, retained, unions)
            continue
        bigon = _find_r2(d)
        if bigon is not None:
            ci, cj, over_arc, under_arc = bigon
            unions = _ArcUnion()
            for arc, pair in ((over_arc, (OVER_A, OVER_B)),
                              (under_arc, (UNDER_IN, UNDER_OUT))):
                ends = []
                for ck in (ci, cj):
                    c = d.crossings[ck]
                    for slot in pair:
                        if c.arcs[slot] != arc:
                            ends.append(c.arcs[slot])
                        elif c.arcs[slot] == arc and c.arcs[pair[0]] == c.arcs[pair[1]]:
                            # the strand enters and leaves through `arc`
                            pass
                if len(ends) == 2:
                    if ends[0] != ends[1]:
                        unions.union(ends[0], ends[1])
                # if fewer than 2 ends remain the strand closes on itself and
                # _rebuild counts the resulting free loop
            retained = [k for k in range(d.num_crossings) if k not in (ci, cj)]
            d = _rebuild(d, retained, unions)
            continue
        return d


# -- faces (rotation-system embedding) ---------------------------------------------


def faces(d: LinkDiagram) -> list[tuple[tuple[int, int], ...]]:
    """Faces of the checkerboard surface induced by the CCW slot order.

    Each face is a cyclic tuple of directed arc sides ``(arc, dir)`` with
    ``dir`` +1 along the arc orientation.  For a connected planar diagram
    the count satisfies F = n + 2.
    """
    # directed edge: (arc, dir); dir=+1 tail->head, -1 head->tail
    def arrival(arc: int, direction: int) -> tuple[int, int]:
        return d._head(arc) if direction > 0 else d._tail(arc)

    def departure_slot_to_edge(ci: int, slot: int) -> tuple[int, int]:
        arc = d.crossings[ci].arcs[slot]
        tci, tslot = d._tail(arc)
        if (tci, tslot) == (ci, slot):
            return (arc, 1)
        return (arc, -1)

    remaining = {(arc, s) for arc in d._occurrences for s in (1, -1)}
    out: list[tuple[tuple[int, int], ...]] = []
    while remaining:
        start = min(remaining)
        face = []
        edge = start
        while True:
            face.append(edge)
            remaining.discard(edge)
            ci, slot = arrival(*edge)
            edge = departure_slot_to_edge(ci, (slot + 1) % 4)
            if edge == start:
                break
        out.append(tuple(face))
    return out


def has_nugatory_crossing(d: LinkDiagram) -> bool:
    """A crossing is nugatory when one face touches two opposite corners."""
    face_of_corner: dict[tuple[int, int], int] = {}
    for fid, face in enumerate(faces(d)):
        for arc, direction in face:
            ci, slot = (d._head(arc) if direction > 0 else d._tail(arc))
            face_of_corner[(ci, slot)] = fid
    for ci in range(d.num_crossings):
        corners = [face_of_corner.get((ci, s)) for s in range(4)]
        if None in corners:
            continue
        if corners[0] == corners[2] or corners[1] == corners[3]:
            return True
    return False


def is_planar(d: LinkDiagram) -> bool:
    """Euler-characteristic check of the rotation system, per connected
    piece of the 4-valent graph."""
    if d.num_crossings == 0:
        return True
    # connected pieces via shared crossings
    parent = list(range(d.num_crossings))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for arc, occ in d._occurrences.items():
        (ci, _), (cj, _) = occ
        ri, rj = find(ci), find(cj)
        if ri != rj:
            parent[ri] = rj
    pieces = {find(ci) for ci in range(d.num_crossings)}
    face_list = faces(d)
    # assign each face to a piece
    by_piece: dict[int, int] = {p: 0 for p in pieces}
    for face in face_list:
        arc = face[0][0]
        ci = d._occurrences[arc][0][0]
        by_piece[find(ci)] += 1
    crossings_by_piece: dict[int, int] = {p: 0 for p in pieces}
    for ci in range(d.num_crossings):
        crossings_by_piece[find(ci)] += 1
    return all(by_piece[p] == crossings_by_piece[p] + 2 for p in pieces)


# -- triangle sites and the local move ----------------------------------------------


def _site_structure(d: LinkDiagram, site: DeltaSite):
    """Validate the triangle structure; return per-strand wiring data."""
    trip = tuple(site.crossings)
    if len(set(trip)) != 3:
        raise SiteError("site needs three distinct crossings")
    for ci in trip:
        if not 0 <= ci < d.num_crossings:
            raise SiteError(f"crossing id {ci} out of range")
    shared: dict[tuple[int, int], list[int]] = {}
    for arc, occ in d._occurrences.items():
        cs = tuple(sorted({ci for ci, _ in occ}))
        if len(cs) == 2 and cs[0] in trip and cs[1] in trip:
            shared.setdefault(cs, []).append(arc)
    pairs = sorted({tuple(sorted(p)) for p in
                    [(trip[0], trip[1]), (trip[0], trip[2]),
                     (trip[1], trip[2])]})
    for p in pairs:
        if not shared.get(p):
            raise SiteError(
                f"crossings {p} are not joined by an arc free of other "
                f"crossings")
    triangle_faces = {tuple(sorted(e[0] for e in face))
                      for face in faces(d) if len(face) == 3}
    if site.triangle_arcs:
        triangle_arcs = list(site.triangle_arcs)
        if sorted(set(triangle_arcs)) != sorted(triangle_arcs):
            raise SiteError("triangle arcs are not distinct")
        claimed = set(triangle_arcs)
        for p in pairs:
            if not claimed & set(shared[p]):
                raise SiteError(f"no declared triangle arc joins {p}")
        if tuple(sorted(triangle_arcs)) not in triangle_faces:
            raise SiteError("triangle arcs do not bound an empty triangle")
    else:
        from itertools import product

        candidates = []
        for combo in product(*(shared[p] for p in pairs)):
            if len(set(combo)) == 3 and tuple(sorted(combo)) in triangle_faces:
                candidates.append(combo)
        if not candidates:
            raise SiteError("triangle arcs do not bound an empty triangle")
        if len({tuple(sorted(c)) for c in candidates}) > 1:
            raise SiteError(
                "site is ambiguous: the three crossings bound more than one "
                "triangle; specify the triangle arcs")
        triangle_arcs = list(candidates[0])
    strands = []
    for t in triangle_arcs:
        a_ci, a_slot = d._tail(t)    # strand leaves its first site crossing
        b_ci, b_slot = d._head(t)
        ca, cb = d.crossings[a_ci], d.crossings[b_ci]
        a_in = UNDER_IN if a_slot == UNDER_OUT else ca.over_in_slot
        b_out = UNDER_OUT if b_slot == UNDER_IN else cb.over_out_slot
        strands.append({
            "arc": t,
            "A": a_ci, "A_out": a_slot, "A_in": a_in,
            "B": b_ci, "B_in": b_slot, "B_out": b_out,
            "over_at_A": a_slot in (OVER_A, OVER_B),
            "over_at_B": b_slot in (OVER_A, OVER_B),
        })
    return triangle_arcs, strands


def describe_site(d: LinkDiagram, site: DeltaSite) -> DeltaSite:
    """Validate a Delta-move site and fill in its triangle arcs."""
    triangle_arcs, strands = _site_structure(d, site)
    for s in strands:
        if s["over_at_A"] == s["over_at_B"]:
            raise SiteError(
                "triangle is a Reidemeister-III configuration, not a "
                "Delta-move template (a strand passes over or under both "
                "of its site crossings)")
    return DeltaSite(tuple(site.crossings), tuple(triangle_arcs))


def _rewire(d: LinkDiagram, strands) -> LinkDiagram:
    new_arcs = {ci: list(d.crossings[ci].arcs) for ci in
                {s["A"] for s in strands} | {s["B"] for s in strands}}
    for s in strands:
        t = s["arc"]
        in_arc = d.crossings[s["A"]].arcs[s["A_in"]]
        out_arc = d.crossings[s["B"]].arcs[s["B_out"]]
        new_arcs[s["A"]][s["A_in"]] = t
        new_arcs[s["A"]][s["A_out"]] = out_arc
        new_arcs[s["B"]][s["B_in"]] = in_arc
        new_arcs[s["B"]][s["B_out"]] = t
    crossings = []
    for ci, c in enumerate(d.crossings):
        if ci in new_arcs:
            crossings.append(Crossing(tuple(new_arcs[ci]), c.sign))
        else:
            crossings.append(c)
    return LinkDiagram(crossings, d.free_loops)


def apply_delta_move(d: LinkDiagram, site: DeltaSite) -> LinkDiagram:
    """Replace the triangle at ``site`` by the opposite template.

    Every strand's two site crossings swap their order along the strand;
    each pair keeps its over/under relation and its sign, so the linking
    matrix is untouched.  The move is an involution at the image site.
    """
    triangle_arcs, strands = _site_structure(d, site)
    for s in strands:
        if s["over_at_A"] == s["over_at_B"]:
            raise SiteError(
                "triangle is a Reidemeister-III configuration, not a "
                "Delta-move template (a strand passes over or under both "
                "of its site crossings)")
    return _rewire(d, strands)


def apply_r3_move(d: LinkDiagram, site: DeltaSite) -> LinkDiagram:
    """Slide a strand across the opposite crossing of a triangle face in
    which it passes over (or under) both of its site crossings.  This is
    an isotopy; the link type is unchanged."""
    triangle_arcs, strands = _site_structure(d, site)
    overs = [s["over_at_A"] + s["over_at_B"] for s in strands]
    if sorted(overs) != [0, 1, 2]:
        raise SiteError("triangle is a Delta-move template, not a "
                        "Reidemeister-III configuration")
    return _rewire(d, strands)


def _triangle_candidates(d: LinkDiagram) -> list[DeltaSite]:
    out = []
    for face in faces(d):
        if len(face) != 3:
            continue
        arcs = tuple(sorted(e[0] for e in face))
        if len(set(arcs)) != 3:
            continue
        cs = set()
        for arc in arcs:
            cs.add(d._head(arc)[0])
            cs.add(d._tail(arc)[0])
        if len(cs) != 3:
            continue
        out.append(DeltaSite(tuple(sorted(cs)), arcs))
    return out


def find_delta_sites(d: LinkDiagram) -> list[DeltaSite]:
    """All triangle faces matching the Delta-move template."""
    sites = []
    for cand in _triangle_candidates(d):
        try:
            sites.append(describe_site(d, cand))
        except SiteError:
            continue
    return sites


def find_r3_sites(d: LinkDiagram) -> list[DeltaSite]:
    """All triangle faces matching the Reidemeister-III configuration."""
    sites = []
    for cand in _triangle_candidates(d):
        try:
            triangle_arcs, strands = _site_structure(d, cand)
        except SiteError:
            continue
        overs = sorted(s["over_at_A"] + s["over_at_B"] for s in strands)
        if overs == [0, 1, 2]:
            sites.append(cand)
    return sites
