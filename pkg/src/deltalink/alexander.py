"""Alexander invariants from planar diagrams via Wirtinger presentations
and Fox calculus.

Generators are the overpasses of the diagram (PD edges merged through
over-crossings); each crossing contributes the relation
``x_c = x_o^e x_a x_o^-e`` whose Fox derivatives fill one matrix row.
The one-variable polynomial of a knot is an (n-1)-minor; for a
two-component link the minor is divided by ``t_c - 1`` where ``c`` is
the component of the deleted generator (the Torres relation).  Both are
computed twice, deleting generator 0 and generator 1, and the results
must agree up to units.

Diagrams are Reidemeister-I/II reduced before the presentation is
built; this changes nothing (the polynomials are link invariants) and
removes kink degeneracies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import (OVER_A, OVER_B, UNDER_IN, UNDER_OUT, DiagramError,
                      LinkDiagram, extract_sublink, is_algebraically_split,
                      is_proper, linking_matrix, simplify)
from .laurent import LaurentError, LaurentPoly, exact_divide


class AlexanderError(ValueError):
    """Internal cross-check failure or unusable input."""


# -- Wirtinger/Fox matrix -------------------------------------------------------


@dataclass(frozen=True)
class AlexanderMatrix:
    """Fox-calculus presentation matrix.

    ``rows[i][j]`` is the derivative of relation ``i`` by generator ``j``,
    over the Laurent ring in one variable per link component (components
    all map to ``t`` when ``reduced``).
    """

    rows: tuple[tuple[LaurentPoly, ...], ...]
    generators: tuple[int, ...]          # representative arc per overpass
    component_of: tuple[int, ...]        # component index per generator
    nvars: int

    @property
    def num_relations(self) -> int:
        return len(self.rows)

    @property
    def num_generators(self) -> int:
        return len(self.generators)


def _overpass_classes(d: LinkDiagram) -> dict[int, int]:
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for c in d.crossings:
        a, b = find(c.arcs[OVER_A]), find(c.arcs[OVER_B])
        if a != b:
            parent[max(a, b)] = min(a, b)
    return {arc: find(arc) for arc in d._occurrences}


def alexander_matrix(d: LinkDiagram, reduced: bool = False) -> AlexanderMatrix:
    """Fox matrix of the Wirtinger presentation of ``d``.

    With ``reduced`` every component maps to the same variable; otherwise
    the diagram must have at most two components.
    """
    m = d.num_components
    if reduced or m == 1:
        nvars = 1
        var_of = lambda comp: 0
    elif m == 2:
        nvars = 2
        var_of = lambda comp: comp
    else:
        raise AlexanderError(
            "full multivariable matrices are only built for one or two "
            "components; pass reduced=True")
    classes = _overpass_classes(d)
    gens = sorted(set(classes.values()))
    gidx = {g: i for i, g in enumerate(gens)}
    zero = LaurentPoly.zero(nvars)
    one = LaurentPoly.one(nvars)
    rows = []
    for c in d.crossings:
        o = gidx[classes[c.arcs[OVER_A]]]
        a = gidx[classes[c.arcs[UNDER_IN]]]
        cc = gidx[classes[c.arcs[UNDER_OUT]]]
        t_u = LaurentPoly.variable(var_of(d.component_of(c.arcs[UNDER_IN])), nvars)
        t_o = LaurentPoly.variable(var_of(d.component_of(c.arcs[OVER_A])), nvars)
        row = [zero] * len(gens)
        if c.sign > 0:
            row[o] = row[o] + (one - t_u)
            row[a] = row[a] + t_o
            row[cc] = row[cc] - one
        else:
            t_o_inv = LaurentPoly.variable(
                var_of(d.component_of(c.arcs[OVER_A])), nvars, power=-1)
            row[o] = row[o] + t_o_inv * (t_u - one)
            row[a] = row[a] + t_o_inv
            row[cc] = row[cc] - one
        rows.append(tuple(row))
    return AlexanderMatrix(
        tuple(rows), tuple(gens),
        tuple(d.component_of(g) for g in gens), nvars)


def _determinant(rows: list[list[LaurentPoly]], nvars: int) -> LaurentPoly:
    """Exact determinant by memoized expansion along rows."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.one(nvars)
    assert all(len(r) == n for r in rows)
    cols = list(range(n))
    memo: dict[int, LaurentPoly] = {}
    full = (1 << n) - 1

    def rec(mask: int) -> LaurentPoly:
        if mask == 0:
            return LaurentPoly.one(nvars)
        if mask in memo:
            return memo[mask]
        i = n - bin(mask).count("1")
        total = LaurentPoly.zero(nvars)
        sign = 1
        for pos, j in enumerate(cols):
            bit = 1 << pos
            if not mask & bit:
                continue
            entry = rows[i][j]
            if not entry.is_zero():
                term = entry * rec(mask & ~bit)
                total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[mask] = total
        return total

    return rec(full)


def _minor(matrix: AlexanderMatrix, drop_rows: int, drop_col: int) -> LaurentPoly:
    rows = [[row[j] for j in range(matrix.num_generators) if j != drop_col]
            for row in matrix.rows[:matrix.num_relations - drop_rows]]
    return _determinant(rows, matrix.nvars)


def _first_minors(d: LinkDiagram, reduced: bool = False):
    """Yield (generator index, quotient-by-(t_c - 1) flag, minor poly) for
    deleted generators 0 and 1."""
    matrix = alexander_matrix(d, reduced=reduced)
    n, k = matrix.num_relations, matrix.num_generators
    if k - 1 > n:
        return matrix, None      # more than one over-only component: split
    drop_rows = n - (k - 1)
    if drop_rows not in (0, 1):
        raise AlexanderError(
            f"unexpected presentation shape {n} relations x {k} generators")
    out = []
    for j in (0, 1):
        if j >= k:
            break
        out.append((j, _minor(matrix, drop_rows, j)))
    return matrix, out


def alexander_poly_knot(d: LinkDiagram) -> LaurentPoly:
    """Normalized one-variable Alexander polynomial of a knot diagram."""
    if d.num_components != 1:
        raise AlexanderError("alexander_poly_knot needs a one-component "
                             f"diagram, got {d.num_components}")
    d = simplify(d)
    if d.num_crossings == 0:
        return LaurentPoly.one(1)
    matrix, minors = _first_minors(d)
    results = [poly.normalize() for _, poly in minors]
    if len(results) == 2 and results[0] != results[1]:
        raise AlexanderError(
            f"minor choice changed the knot polynomial: {results[0]} vs "
            f"{results[1]}")
    return results[0]


def _torres_quotient(minor: LaurentPoly, comp_var: int,
                     nvars: int) -> LaurentPoly:
    factor = (LaurentPoly.variable(comp_var, nvars)
              - LaurentPoly.one(nvars))
    try:
        return exact_divide(minor, factor)
    except LaurentError as exc:
        raise AlexanderError(
            f"Wirtinger minor is not divisible by (t_{comp_var} - 1): "
            f"{exc}") from exc


def alexander_poly_link2(d: LinkDiagram) -> LaurentPoly:
    """Normalized two-variable Alexander polynomial of a 2-component link.

    Zero when the diagram is split (including a crossingless component).
    """
    if d.num_components != 2:
        raise AlexanderError("alexander_poly_link2 needs two components, "
                             f"got {d.num_components}")
    d = simplify(d)
    if d.free_loops or d.num_crossings == 0:
        return LaurentPoly.zero(2)
    comps_with_crossings = {comp
                            for ci in range(d.num_crossings)
                            for comp in d.strand_components(ci)}
    if len(comps_with_crossings) < 2:
        return LaurentPoly.zero(2)
    matrix, minors = _first_minors(d)
    if minors is None:
        return LaurentPoly.zero(2)
    results = []
    for j, poly in minors:
        quotient = _torres_quotient(poly, matrix.component_of[j], 2)
        results.append(quotient.normalize())
    if len(results) == 2 and results[0] != results[1]:
        raise AlexanderError(
            f"minor choice changed the link polynomial: {results[0]} vs "
            f"{results[1]}")
    return results[0]


def reduced_alexander_poly(d: LinkDiagram) -> LaurentPoly:
    """One-variable reduction (all components read the same variable),
    normalized; zero for split diagrams."""
    if d.num_components == 1:
        return alexander_poly_knot(d)
    d = simplify(d)
    if d.free_loops or d.num_crossings == 0:
        return LaurentPoly.zero(1)
    comps_with_crossings = {comp
                            for ci in range(d.num_crossings)
                            for comp in d.strand_components(ci)}
    if len(comps_with_crossings) < d.num_components:
        return LaurentPoly.zero(1)
    matrix, minors = _first_minors(d, reduced=True)
    if minors is None:
        return LaurentPoly.zero(1)
    results = [(j, _torres_quotient(poly, 0, 1).normalize())
               for j, poly in minors]
    polys = [p for _, p in results]
    if len(polys) == 2 and polys[0] != polys[1]:
        raise AlexanderError(
            f"minor choice changed the reduced polynomial: {polys[0]} vs "
            f"{polys[1]}")
    return polys[0]


# -- classical consequences ------------------------------------------------------


def arf_knot(d: LinkDiagram) -> int:
    """Arf invariant of a knot: 0 iff |Delta(-1)| is ±1 mod 8."""
    value = abs(alexander_poly_knot(d).evaluate((-1,)))
    residue = value % 8
    if residue in (1, 7):
        return 0
    if residue in (3, 5):
        return 1
    raise AlexanderError(
        f"|Delta(-1)| = {value} is even; not a valid knot determinant")


def milnor_1122(d: LinkDiagram) -> int:
    """|mu-bar(1122)| of an algebraically split 2-component link: write
    Delta = (x-1)(y-1) f and return |f(1,1)|."""
    if d.num_components != 2:
        raise AlexanderError("milnor_1122 needs a 2-component diagram")
    if not is_algebraically_split(d):
        raise AlexanderError("milnor_1122 needs vanishing linking number")
    delta = alexander_poly_link2(d)
    if delta.is_zero():
        return 0
    x1 = LaurentPoly.variable(0, 2) - LaurentPoly.one(2)
    y1 = LaurentPoly.variable(1, 2) - LaurentPoly.one(2)
    f = exact_divide(delta, x1 * y1)
    return abs(f.evaluate((1, 1)))


# -- identification fingerprints ---------------------------------------------------


def canonical_poly_1var(p: LaurentPoly) -> str:
    """Canonical string under t <-> 1/t and unit multiplication."""
    forms = {str(p.normalize()), str(p.invert_vars((True,)).normalize())}
    return min(forms)


def canonical_poly_2var(p: LaurentPoly) -> str:
    """Canonical string under variable swap, inversions, and units."""
    forms = set()
    for q in (p, p.swap_vars()):
        for ix in (False, True):
            for iy in (False, True):
                forms.add(str(q.invert_vars((ix, iy)).normalize()))
    return min(forms)


@dataclass(frozen=True)
class Fingerprint:
    """Computable identification tuple, closed under component reordering,
    mirroring, and orientation reversal.  ``arf`` participates in
    comparisons only when known on both sides."""

    m: int
    lk: tuple[int, ...]
    delta: str | None
    component_deltas: tuple[str, ...]
    reduced: str | None = None
    pair_deltas: tuple[str, ...] | None = None
    arf: int | None = None

    def matches(self, other: "Fingerprint") -> bool:
        if (self.m, self.lk, self.delta, self.component_deltas,
                self.reduced, self.pair_deltas) != \
           (other.m, other.lk, other.delta, other.component_deltas,
                other.reduced, other.pair_deltas):
            return False
        if self.arf is not None and other.arf is not None:
            return self.arf == other.arf
        return True

    def with_arf(self, arf: int | None) -> "Fingerprint":
        return Fingerprint(self.m, self.lk, self.delta,
                           self.component_deltas, self.reduced,
                           self.pair_deltas, arf)


def fingerprint(d: LinkDiagram) -> Fingerprint:
    """Invariant tuple used to identify catalog links and pathway nodes."""
    d = simplify(d)
    m = d.num_components
    lk = linking_matrix(d)
    lk_multiset = tuple(sorted(abs(lk[i][j])
                               for i in range(m) for j in range(i + 1, m)))
    comp_polys = []
    for comp in range(m):
        sub = extract_sublink(d, {comp})
        comp_polys.append(canonical_poly_1var(alexander_poly_knot(sub)))
    delta = None
    reduced = None
    pair_deltas = None
    arf = None
    if m == 1:
        delta = canonical_poly_1var(alexander_poly_knot(d))
        if is_proper(d):
            arf = arf_knot(d)
    elif m == 2:
        delta = canonical_poly_2var(alexander_poly_link2(d))
    else:
        reduced = canonical_poly_1var(reduced_alexander_poly(d))
        pairs = []
        for i in range(m):
            for j in range(i + 1, m):
                sub = extract_sublink(d, {i, j})
                pairs.append(canonical_poly_2var(alexander_poly_link2(sub)))
        pair_deltas = tuple(sorted(pairs))
    return Fingerprint(m, lk_multiset, delta, tuple(sorted(comp_polys)),
                       reduced, pair_deltas, arf)
