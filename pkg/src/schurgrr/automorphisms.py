"""Exact automorphism group order of small arc-coloured digraphs.

This is the independent check on closure-based certification, so it never
touches group-ring arithmetic.  A graph is a list of layers; each layer maps
every vertex ``0..n-1`` to its out-neighbours.  Automorphisms must preserve
every layer.

The order is computed along a base: individualise a vertex ``v``, count the
vertices ``w`` to which some automorphism (fixing the earlier base points)
sends ``v``, multiply, and recurse into the stabiliser.  Each "does an
automorphism map v to w" question is answered by a refinement-pruned
backtrack, and orbits found so far are used to skip redundant questions.
"""

from __future__ import annotations

import os
from collections.abc import Sequence

from schurgrr.errors import ResourceLimit

DEFAULT_ORACLE_LIMIT = 64

Layers = Sequence[Sequence[Sequence[int]]]


def oracle_limit() -> int:
    return int(os.environ.get("SCHUR_ORACLE_LIMIT", DEFAULT_ORACLE_LIMIT))


class _Graph:
    def __init__(self, n: int, layers: Layers):
        self.n = n
        self.out = [[tuple(adj[v]) for v in range(n)] for adj in layers]
        inn = [[[] for _ in range(n)] for _ in layers]
        for c, adj in enumerate(layers):
            for u in range(n):
                for v in adj[u]:
                    inn[c][v].append(u)
        self.inn = [[tuple(x) for x in layer] for layer in inn]
        self.arcs = [
            {(u, v) for u in range(n) for v in adj[u]} for adj in layers
        ]

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        return all(
            (perm[u], perm[v]) in arcs for arcs in self.arcs for (u, v) in arcs
        )

    def refine(self, cells: list[list[int]]) -> list[list[int]]:
        """Equitable refinement of an ordered partition.

        New subcells are ordered by their signature, which only depends on
        the graph structure and the input cell order, so an automorphism
        carrying one input partition to another carries the results too.
        """
        cells = [list(c) for c in cells]
        while True:
            cell_of = [0] * self.n
            for idx, cell in enumerate(cells):
                for v in cell:
                    cell_of[v] = idx
            new_cells: list[list[int]] = []
            changed = False
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: dict[tuple, list[int]] = {}
                for v in cell:
                    groups.setdefault(self._signature(v, cell_of), []).append(v)
                if len(groups) > 1:
                    changed = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
            cells = new_cells
            if not changed:
                return cells

    def signature_trace(self, cells: list[list[int]]) -> tuple:
        """Isomorphism-invariant summary of a refined partition."""
        cell_of = [0] * self.n
        for idx, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = idx
        return tuple((len(c), self._signature(c[0], cell_of)) for c in cells)

    def _signature(self, v: int, cell_of: list[int]) -> tuple:
        sig = []
        for c in range(len(self.out)):
            sig.append(tuple(sorted(cell_of[w] for w in self.out[c][v])))
            sig.append(tuple(sorted(cell_of[w] for w in self.inn[c][v])))
        return tuple(sig)


def _individualise(cells: list[list[int]], v: int) -> list[list[int]]:
    out = []
    for cell in cells:
        if v in cell and len(cell) > 1:
            out.append([v])
            out.append([w for w in cell if w != v])
        else:
            out.append(cell)
    return out


def _find_isomorphism(g: _Graph, left: list[list[int]], right: list[list[int]]):
    """Search for an automorphism sending the ordered partition ``left`` onto ``right``."""
    left = g.refine(left)
    right = g.refine(right)
    if g.signature_trace(left) != g.signature_trace(right):
        return None
    for idx, cell in enumerate(left):
        if len(cell) > 1:
            x = cell[0]
            for y in right[idx]:
                found = _find_isomorphism(g, _individualise(left, x), _individualise(right, y))
                if found is not None:
                    return found
            return None
    perm = [0] * g.n
    for lc, rc in zip(left, right):
        perm[lc[0]] = rc[0]
    return perm if g.is_automorphism(perm) else None


def _orbit(v: int, gens: list[list[int]]) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for p in gens:
            y = p[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def automorphism_group_order(
    n: int, layers: Layers, limit: int | None = None
) -> tuple[int, list[list[int]]]:
    """Return ``(|Aut|, generators)`` for the coloured digraph on ``n`` vertices."""
    limit = oracle_limit() if limit is None else limit
    if n > limit:
        raise ResourceLimit(
            f"graph has {n} vertices, above the oracle limit of {limit}; "
            "certify through the Schur-ring closure instead"
        )
    g = _Graph(n, layers)
    generators: list[list[int]] = []
    order = 1
    cells = g.refine([list(range(n))])
    # stabiliser chain: at each level, generators found so far fix the base prefix
    level_gens: list[list[int]] = []
    while True:
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            break
        v = target[0]
        orbit = {v}
        for w in target[1:]:
            if w in orbit:
                continue
            perm = _find_isomorphism(g, _individualise(cells, v), _individualise(cells, w))
            if perm is not None:
                level_gens.append(perm)
                generators.append(perm)
                orbit = _orbit(v, level_gens)
        order *= len(orbit)
        cells = g.refine(_individualise(cells, v))
        # generators of the next stabiliser must fix v; earlier ones generally do not
        level_gens = [p for p in level_gens if p[v] == v]
    for p in generators:
        if not g.is_automorphism(p):
            raise AssertionError("oracle produced a non-automorphism")
    return order, generators
