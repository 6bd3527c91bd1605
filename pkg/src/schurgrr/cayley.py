"""Cayley (di)graphs, colour graphs, walk counts and GRR checks.

Vertices are group elements numbered by ``Group.index``; ``u`` has an arc to
``u*s`` for every ``s`` in the connection set.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Literal

from schurgrr.automorphisms import automorphism_group_order
from schurgrr.errors import InvalidInput, InvariantViolation
from schurgrr.groups import Group, GroupElement, generated_subgroup, inv
from schurgrr.schur import SchurPartition, closure, is_trivial

log = logging.getLogger(__name__)

PALETTE = (
    "red", "blue", "green", "black", "orange", "purple",
    "brown", "cyan", "magenta", "gold", "gray", "darkgreen",
)  # fmt: skip

Method = Literal["closure", "oracle", "both"]


@dataclass(frozen=True)
class CayleyGraph:
    group: Group
    connection: tuple[GroupElement, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def is_undirected(self) -> bool:
        return {inv(s) for s in self.connection} == set(self.connection)

    @property
    def order(self) -> int:
        return self.group.order

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs]

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph() if self.is_undirected else nx.DiGraph()
        g.add_nodes_from(range(self.order))
        g.add_edges_from(self.arcs())
        return g


def _adjacency(group: Group, S: Sequence[GroupElement]) -> tuple[tuple[int, ...], ...]:
    table = group.mul_table()
    cols = [group.index(s) for s in S]
    return tuple(tuple(int(table[u, c]) for c in cols) for u in range(group.order))


def cayley_graph(
    group: Group, S: Iterable[GroupElement], allow_nongenerating: bool = False
) -> CayleyGraph:
    S = tuple(sorted(set(S)))
    if not S:
        raise InvalidInput("connection set is empty")
    for s in S:
        if s.group != group:
            raise InvalidInput(f"{s!r} is not an element of {group}")
    if group.identity in S:
        raise InvalidInput("the identity may not belong to a connection set")
    if not allow_nongenerating:
        sub = generated_subgroup(group, S)
        if len(sub) != group.order:
            raise InvalidInput(
                f"connection set generates a proper subgroup of order {len(sub)} "
                f"in {group} (pass allow_nongenerating to build it anyway)"
            )
    return CayleyGraph(group, S, _adjacency(group, S))


@dataclass(frozen=True)
class ColouredCayleyGraph:
    """Superposition of the basic Cayley graphs, keyed by basic-set index."""

    group: Group
    layers: tuple[tuple[int, CayleyGraph], ...]

    @classmethod
    def from_partition(cls, partition: SchurPartition) -> ColouredCayleyGraph:
        layers = []
        for i, block in enumerate(partition.basic_sets):
            if i == 0 or partition.group.identity in block:
                continue
            layers.append((i, cayley_graph(partition.group, block, allow_nongenerating=True)))
        return cls(partition.group, tuple(layers))

    def layer(self, colour: int) -> CayleyGraph:
        if colour == 0:
            # the identity class: every vertex joined to itself
            n = self.group.order
            return CayleyGraph(self.group, (self.group.identity,), tuple((u,) for u in range(n)))
        for c, g in self.layers:
            if c == colour:
                return g
        raise InvalidInput(f"no layer with colour {colour}")


def walk_count(colour_graph: ColouredCayleyGraph, i: int, j: int, k: int) -> int:
    """Number of two-step walks a -> x -> b along colours i then j, for an arc (a, b) of colour k.

    The count is checked to be the same for every arc of colour k.
    """
    first = colour_graph.layer(i).adjacency
    second = [set(nbrs) for nbrs in colour_graph.layer(j).adjacency]
    arcs = colour_graph.layer(k).arcs()
    if not arcs:
        raise InvalidInput(f"colour {k} has no arcs")
    counts = set()
    for a, b in arcs:
        counts.add(sum(1 for x in first[a] if b in second[x]))
        if len(counts) > 1:
            raise InvariantViolation(
                f"walk counts for colours ({i}, {j}) differ across arcs of colour {k}: "
                "the partition is not a Schur partition"
            )
    return counts.pop()


def automorphism_order(graph, limit: int | None = None) -> tuple[int, list[list[int]]]:
    """Exact ``|Aut|`` and generating automorphisms by backtracking.

    Accepts a :class:`CayleyGraph` or a :class:`ColouredCayleyGraph`; for the
    latter the result is the intersection of the layer automorphism groups.
    """
    if isinstance(graph, ColouredCayleyGraph):
        layers = [g.adjacency for _, g in graph.layers]
    else:
        layers = [graph.adjacency]
    return automorphism_group_order(graph.group.order, layers, limit)


def left_translation(group: Group, g: GroupElement) -> list[int]:
    table = group.mul_table()
    gi = group.index(g)
    return [int(table[gi, u]) for u in range(group.order)]


def is_graph_automorphism(graph: CayleyGraph, perm: Sequence[int]) -> bool:
    arcs = set(graph.arcs())
    return all((perm[u], perm[v]) in arcs for u, v in arcs)


def left_regular_embeds(graph: CayleyGraph) -> bool:
    return all(is_graph_automorphism(graph, left_translation(graph.group, g)) for g in graph.group)


@dataclass(frozen=True)
class GRRCertificate:
    method: Method
    is_grr: bool
    trivial_closure: bool | None = None
    aut_order: int | None = None
    generators: tuple[tuple[int, ...], ...] | None = None
    closure_rank: int | None = None

    def to_json(self) -> dict:
        out: dict = {"method": self.method, "is_grr": self.is_grr}
        out["trivial_closure"] = self.trivial_closure
        if self.closure_rank is not None:
            out["closure_rank"] = self.closure_rank
        if self.aut_order is not None:
            out["aut_order"] = self.aut_order
        if self.generators is not None:
            out["generators"] = [list(p) for p in self.generators]
        return out


def is_grr(
    group: Group, S: Iterable[GroupElement], method: Method = "both", limit: int | None = None
) -> GRRCertificate:
    """Decide whether ``Cay(group, S)`` is a graphical regular representation.

    ``closure`` certifies through a trivial Schur-ring closure (sufficient
    only); ``oracle`` computes the automorphism group directly; ``both`` runs
    both and insists a trivial closure is confirmed by the oracle.
    """
    S = set(S)
    if {inv(s) for s in S} != S:
        raise InvalidInput("connection set must be closed under inverses")
    graph = cayley_graph(group, S)
    if method not in ("closure", "oracle", "both"):
        raise InvalidInput(f"unknown method {method!r}")

    trivial = rank = None
    if method in ("closure", "both"):
        part = closure(group, S)
        trivial, rank = is_trivial(part), part.rank
        if method == "closure":
            return GRRCertificate("closure", trivial, trivial_closure=trivial, closure_rank=rank)

    order, gens = automorphism_order(graph, limit)
    verdict = order == group.order and left_regular_embeds(graph)
    if method == "both":
        if trivial and not verdict:
            raise InvariantViolation(
                f"closure is trivial but the oracle found |Aut| = {order} for {group}"
            )
        if verdict and not trivial:
            log.info("GRR with non-trivial closure of rank %s in %s", rank, group)
    return GRRCertificate(
        method,
        verdict,
        trivial_closure=trivial,
        aut_order=order,
        generators=tuple(tuple(p) for p in gens),
        closure_rank=rank,
    )


# -- DOT export -------------------------------------------------------------


def _quote(g: GroupElement) -> str:
    return f'"{g}"'


def colour_graph_dot(group: Group, colour_sets: Sequence[Iterable[GroupElement]], name: str = "G") -> str:
    """DOT text with one colour per set; inverse-paired arcs of one colour become an edge."""
    colour_sets = [tuple(sorted(set(c))) for c in colour_sets]
    directed = [{inv(s) for s in c} != set(c) for c in colour_sets]
    kind, arrow = ("digraph", "->") if any(directed) else ("graph", "--")
    elements = group.elements()
    lines = [f"{kind} {name} {{"]
    for g in elements:
        lines.append(f"  {_quote(g)};")
    for idx, block in enumerate(colour_sets):
        colour = PALETTE[idx % len(PALETTE)]
        adj = _adjacency(group, block)
        seen = set()
        for u, nbrs in enumerate(adj):
            for v in nbrs:
                key = (u, v) if directed[idx] else (min(u, v), max(u, v))
                if key in seen:
                    continue
                seen.add(key)
                a, b = elements[key[0]], elements[key[1]]
                attrs = f"color={colour}"
                if any(directed) and not directed[idx]:
                    attrs += ", dir=none"
                lines.append(f"  {_quote(a)} {arrow} {_quote(b)} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_colour_graph(partition: SchurPartition, name: str = "G") -> str:
    """Colour graph of a Schur partition; the identity class (loops) is left out.

    Basic set ``i`` gets palette colour ``i - 1``.
    """
    return colour_graph_dot(partition.group, partition.basic_sets[1:], name)


def cayley_colour_dot(group: Group, S: Sequence[GroupElement], name: str = "G") -> str:
    """Cayley colour graph: one colour per connection element (an inverse pair shares one)."""
    classes: list[list[GroupElement]] = []
    for s in S:
        if any(s in c for c in classes):
            continue
        classes.append([s] if inv(s) == s or inv(s) not in S else [s, inv(s)])
    return colour_graph_dot(group, classes, name)
