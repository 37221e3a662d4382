"""The beta_1 invariant of a winding-zero knot in a solid torus.

The knot is given as an ordinary one-component diagram together with cut
data: a list of ``cut(arc, dir)`` entries recording where (and with which
sign) the knot crosses a fixed ray from the puncture to infinity.  The
net signed cut count around the knot must vanish; the lifts of the knot
to the infinite cyclic cover of the solid torus are then closed curves
K_n, and

    beta_1 = lk(K_0, K_1)
           = 1/2 * sum of signs of crossings whose strands sit on
             adjacent levels.

Levels are attached to arc tails (a cut in the middle of an arc takes
effect before the arc's head), so the two strands at a crossing read
their levels from the outgoing arcs.  The sign of beta_1 depends on the
orientation convention for the cut ray; only |beta_1| is used downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import (OVER_A, UNDER_IN, UNDER_OUT, DiagramError, LinkDiagram,
                      parse_pd)


class AnnularError(ValueError):
    """Malformed annular data (bad arcs or nonzero winding)."""


@dataclass(frozen=True)
class AnnularDiagram:
    """A one-component diagram with transverse cut-ray data."""

    base: LinkDiagram
    cuts: tuple[tuple[int, int], ...]
    levels: dict[int, int]               # arc -> level at the arc's tail

    @property
    def winding(self) -> int:
        return sum(direction for _, direction in self.cuts)


def _derive_levels(base: LinkDiagram,
                   cuts: tuple[tuple[int, int], ...]) -> dict[int, int]:
    if base.num_components != 1 or base.free_loops:
        raise AnnularError("annular diagrams carry exactly one knot "
                           f"component, got {base.num_components}")
    net: dict[int, int] = {}
    for arc, direction in cuts:
        if direction not in (1, -1):
            raise AnnularError(f"cut direction must be +-1, got {direction}")
        if arc not in base._occurrences:
            raise AnnularError(f"cut names unknown arc {arc}")
        net[arc] = net.get(arc, 0) + direction
    winding = sum(d for _, d in cuts)
    if winding:
        raise AnnularError(
            f"total winding is {winding}, but the lifts close up only for "
            f"winding zero")
    levels: dict[int, int] = {}
    if base.num_crossings == 0:
        return levels
    cycle = base.components[0]
    level = 0
    for arc in cycle:
        levels[arc] = level
        level += net.get(arc, 0)
    return levels


def annular_diagram(base: LinkDiagram,
                    cuts: tuple[tuple[int, int], ...]) -> AnnularDiagram:
    return AnnularDiagram(base, tuple(cuts), _derive_levels(base, cuts))


_CUT_RE = re.compile(r"cut\(\s*(-?\d+)\s*,\s*([+-]?1)\s*\)")


def parse_annular(text: str) -> AnnularDiagram:
    """Annular file format: a PD line, then one ``cut(arc,dir)`` per line.

    Blank lines and ``#`` comments are ignored."""
    pd_line = None
    cuts: list[tuple[int, int]] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if pd_line is None:
            pd_line = line
            continue
        m = _CUT_RE.fullmatch(line)
        if not m:
            raise AnnularError(f"malformed cut entry {line!r}")
        cuts.append((int(m.group(1)), int(m.group(2))))
    if pd_line is None:
        raise AnnularError("annular file is empty")
    try:
        base = parse_pd(pd_line)
    except DiagramError as exc:
        raise AnnularError(f"bad PD line: {exc}") from exc
    return annular_diagram(base, tuple(cuts))


def beta1(a: AnnularDiagram) -> int:
    """Linking number of the adjacent lifts K_0, K_1 in the infinite
    cyclic cover."""
    d = a.base
    total = 0
    for c in d.crossings:
        level_under = a.levels[c.arcs[UNDER_OUT]]
        level_over = a.levels[c.arcs[c.over_out_slot]]
        if abs(level_under - level_over) == 1:
            total += c.sign
    if total % 2:
        raise AnnularError("odd signed adjacent-level crossing count; "
                           "inconsistent cut data")
    return total // 2


def obstructs_single_toroidal_delta(b: int) -> bool:
    """One toroidal Delta-move changes beta_1 by at most 2 and the trivial
    link has beta_1 = 0, so |beta_1| >= 3 rules out a one-move unlinking."""
    return abs(b) >= 3
