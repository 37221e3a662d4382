"""Diagram constructions shared by the test suites: braid closures and
round-trip helpers between annular data and two-component links."""

from deltalink.diagram import (OVER_A, OVER_B, UNDER_IN, UNDER_OUT, Crossing,
                               LinkDiagram)
from deltalink.solid_torus import AnnularDiagram, annular_diagram


def from_braid(word, strands):
    """Trace closure of a braid word; letters ±i denote sigma_i^{±1},
    strands travel upward, and positive crossings have the left strand
    passing over."""
    nxt = strands + 1
    pos = list(range(1, strands + 1))
    initial = list(pos)
    crossings = []
    for letter in word:
        i = abs(letter)
        if not 1 <= i < strands:
            raise ValueError(f"letter {letter} needs 1 <= |letter| < {strands}")
        u, v = pos[i - 1], pos[i]
        nu, nv = nxt, nxt + 1
        nxt += 2
        if letter > 0:
            crossings.append(((v, nu, nv, u), 1))
        else:
            crossings.append(((u, v, nu, nv), -1))
        pos[i - 1], pos[i] = nv, nu
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    used = {a for arcs, _ in crossings for a in arcs}
    loops = 0
    for p in range(strands):
        top, bottom = pos[p], initial[p]
        if top == bottom and bottom not in used:
            loops += 1
            continue
        ra, rb = find(top), find(bottom)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return LinkDiagram(
        [Crossing(tuple(find(a) for a in arcs), s) for arcs, s in crossings],
        loops)


def reconstruct_link(a: AnnularDiagram) -> LinkDiagram:
    """Rebuild the 2-component link (knot plus solid-torus axis) encoded by
    annular data.

    The axis runs above the plane along the cut ray (crossing over every
    cut arc once, at ray positions in list order) and returns below the
    plane (crossing under each once); both legs clear the rest of the
    diagram, so the list order does not affect the link type.
    """
    base, cuts = a.base, a.cuts
    if not cuts:
        return LinkDiagram(base.crossings, base.free_loops + 1)
    k = len(cuts)
    nxt = max(base._occurrences) + 1

    def fresh():
        nonlocal nxt
        nxt += 1
        return nxt - 1

    circle = [fresh() for _ in range(2 * k)]   # c_0 .. c_{2k-1} along the axis
    per_arc = {}
    for idx, (arc, _) in enumerate(cuts):
        per_arc.setdefault(arc, []).append(idx)
    segments = {}      # cut idx -> (seg_in, seg_mid, seg_out)
    arc_last = {}      # arc -> final segment label
    for arc, idxs in per_arc.items():
        labels = [arc] + [fresh() for _ in range(2 * len(idxs))]
        for j, idx in enumerate(idxs):
            segments[idx] = (labels[2 * j], labels[2 * j + 1],
                             labels[2 * j + 2])
        arc_last[arc] = labels[-1]

    new_crossings = []
    for i, (arc, direction) in enumerate(cuts):
        s_in, s_mid, s_out = segments[i]
        o_in, o_out = circle[i], circle[(i + 1) % (2 * k)]          # O_i
        u_pos = 2 * k - 1 - i                                        # U_i
        u_in, u_out = circle[u_pos], circle[(u_pos + 1) % (2 * k)]
        if direction > 0:
            # arc crosses the ray "northward": under leg first, over leg next
            new_crossings.append(Crossing((u_in, s_mid, u_out, s_in), 1))
            new_crossings.append(Crossing((s_mid, o_out, s_out, o_in), 1))
        else:
            new_crossings.append(Crossing((s_in, o_in, s_mid, o_out), -1))
            new_crossings.append(Crossing((u_in, s_mid, u_out, s_out), -1))

    rewired = []
    for c in base.crossings:
        arcs_t = list(c.arcs)
        for slot in c.in_slots():
            arc = arcs_t[slot]
            if arc in arc_last:
                arcs_t[slot] = arc_last[arc]
        rewired.append(Crossing(tuple(arcs_t), c.sign))
    return LinkDiagram(rewired + new_crossings, base.free_loops)


def derive_annular(link: LinkDiagram, circle_comp: int) -> AnnularDiagram:
    """Present the other component of a 2-component link as a knot in the
    solid torus complementing ``circle_comp``, which must be a round circle
    in the diagram (no self-crossings).  Cuts sit at the crossings where
    the knot passes under the circle; the spanning disk of the circle can
    be pushed below every under-dip, so those are the only punctures."""
    if link.num_components != 2:
        raise ValueError("need a 2-component link")
    knot_comp = 1 - circle_comp
    for ci in range(link.num_crossings):
        under_c, over_c = link.strand_components(ci)
        if under_c == circle_comp and over_c == circle_comp:
            raise ValueError("circle component has a self-crossing")

    cycle = list(link.components[knot_comp])
    survives = []
    for arc in cycle:
        ci, slot = link._head(arc)
        under_c, over_c = link.strand_components(ci)
        survives.append(under_c == knot_comp and over_c == knot_comp)
    if not any(survives):
        raise ValueError("the knot component has no self-crossings")
    # rotate so the cycle starts right after a surviving crossing
    anchor = survives.index(True)
    cycle = cycle[anchor + 1:] + cycle[:anchor + 1]
    survives = survives[anchor + 1:] + survives[:anchor + 1]

    run_of = {}
    run = 1
    for arc, s in zip(cycle, survives):
        run_of[arc] = run
        if s:
            run += 1
    base_crossings = []
    for ci in range(link.num_crossings):
        under_c, over_c = link.strand_components(ci)
        if under_c == knot_comp and over_c == knot_comp:
            c = link.crossings[ci]
            base_crossings.append(
                Crossing(tuple(run_of[a] for a in c.arcs), c.sign))
    base = LinkDiagram(base_crossings, 0)

    cuts = []
    state = 0
    for arc in cycle:
        ci, slot = link._head(arc)
        under_c, over_c = link.strand_components(ci)
        if {under_c, over_c} == {knot_comp, circle_comp}:
            if under_c == knot_comp:
                cuts.append((run_of[arc], 1 if state == 0 else -1))
            state ^= 1
    return annular_diagram(base, tuple(cuts))
