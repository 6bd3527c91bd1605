"""Schur partitions, axiom checks, structure constants and the closure engine.

The closure of a subset ``C`` is the coarsest Schur partition having ``C`` as
a union of basic sets.  It is computed by repeatedly splitting a working
partition until it is stable under two forced refinements:

* inverse split: each class is intersected with the inverses of the classes;
* product split: elements are separated whenever they receive different
  coefficients in some product of class sums (the Schur-Wielandt rule).

Every split is forced in any Schur ring containing the starting classes, so
the fixpoint is the coarsest one.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from schurgrr.errors import InvalidInput, InvariantViolation
from schurgrr.group_ring import RingElement, ring_mul, simple_quantity
from schurgrr.groups import Group, GroupElement, inv, mul


@dataclass(frozen=True)
class SchurPartition:
    """An ordered partition of a group into basic sets.

    Construction only checks that the sets cover the group disjointly; the
    Schur axioms are checked by :func:`validate_schur`.
    """

    group: Group
    basic_sets: tuple[tuple[GroupElement, ...], ...]
    labels: np.ndarray = field(repr=False, compare=False)

    def __init__(self, group: Group, basic_sets: Iterable[Iterable[GroupElement]]):
        sets = []
        owner: dict[GroupElement, int] = {}
        for i, block in enumerate(basic_sets):
            block = tuple(sorted(set(block)))
            if not block:
                raise InvalidInput(f"basic set {i} is empty")
            for g in block:
                if g.group != group:
                    raise InvalidInput(f"{g!r} is not an element of {group}")
                if g in owner:
                    raise InvalidInput(f"element {g} lies in basic sets {owner[g]} and {i}")
                owner[g] = i
            sets.append(block)
        missing = [g for g in group if g not in owner]
        if missing:
            raise InvalidInput(f"element {missing[0]} is not covered by any basic set")
        labels = np.array([owner[g] for g in group], dtype=np.int64)
        labels.setflags(write=False)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "basic_sets", tuple(sets))
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(cls, group: Group, labels: Sequence[int]) -> SchurPartition:
        blocks: dict[int, list[GroupElement]] = {}
        for i, lab in enumerate(labels):
            blocks.setdefault(int(lab), []).append(group.from_index(i))
        return cls(group, [blocks[k] for k in sorted(blocks)])

    @property
    def rank(self) -> int:
        return len(self.basic_sets)

    def class_of(self, g: GroupElement) -> int:
        return int(self.labels[self.group.index(g)])

    def basic_element(self, i: int) -> RingElement:
        return simple_quantity(self.basic_sets[i], self.group)

    def is_union_of_classes(self, subset: Iterable[GroupElement]) -> bool:
        subset = set(subset)
        touched = {self.class_of(g) for g in subset}
        return all(set(self.basic_sets[i]) <= subset for i in touched)

    def refines(self, other: SchurPartition) -> bool:
        """True when every basic set of ``self`` lies inside a basic set of ``other``."""
        return all(len({other.class_of(g) for g in block}) == 1 for block in self.basic_sets)

    def to_json(self) -> list[list[str]]:
        return [[str(g) for g in block] for block in self.basic_sets]

    def __str__(self) -> str:
        return " | ".join("{" + ", ".join(str(g) for g in b) + "}" for b in self.basic_sets)


@dataclass(frozen=True)
class SchurReport:
    ok: bool
    axiom: str | None = None
    message: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class StructureConstants:
    """``beta[i, j, k]`` is the multiplicity of basic set k in ``B_i * B_j``."""

    rank: int
    beta: np.ndarray
    sizes: tuple[int, ...]

    def __getitem__(self, ijk: tuple[int, int, int]) -> int:
        return int(self.beta[ijk])


def _constant_on_classes(x: RingElement, part: SchurPartition):
    """Return the per-class coefficients of ``x``, or the first offending class index."""
    dense = x.dense
    values = []
    for k, block in enumerate(part.basic_sets):
        z = dense[block[0].index]
        if any(dense[g.index] != z for g in block[1:]):
            return k
        values.append(z)
    return values


def validate_schur(partition: SchurPartition) -> SchurReport:
    """Check the Schur-ring axioms, reporting the first one that fails."""
    group = partition.group
    sets = partition.basic_sets
    if sets[0] != (group.identity,):
        return SchurReport(False, "identity", "the first basic set must be {1}", (0,))
    for i, block in enumerate(sets):
        image = {inv(g) for g in block}
        j = partition.class_of(next(iter(image)))
        if set(sets[j]) != image:
            return SchurReport(
                False, "inverse", f"inverse of basic set {i} is not a basic set", (i,)
            )
    quantities = [partition.basic_element(i) for i in range(partition.rank)]
    for i, x in enumerate(quantities):
        for j, y in enumerate(quantities):
            res = _constant_on_classes(ring_mul(x, y), partition)
            if isinstance(res, int):
                return SchurReport(
                    False,
                    "product",
                    f"B{i}*B{j} is not constant on basic set {res}",
                    (i, j, res),
                )
    return SchurReport(True)


def structure_constants(partition: SchurPartition) -> StructureConstants:
    r = partition.rank
    beta = np.zeros((r, r, r), dtype=np.int64)
    quantities = [partition.basic_element(i) for i in range(r)]
    for i, x in enumerate(quantities):
        for j, y in enumerate(quantities):
            res = _constant_on_classes(ring_mul(x, y), partition)
            if isinstance(res, int):
                raise InvalidInput(f"not a Schur partition: B{i}*B{j} splits basic set {res}")
            beta[i, j] = res
    beta.setflags(write=False)
    return StructureConstants(r, beta, tuple(len(b) for b in partition.basic_sets))


def is_trivial(partition: SchurPartition) -> bool:
    return partition.rank == partition.group.order


# -- closure engine ---------------------------------------------------------


def _relabel(keys: np.ndarray) -> np.ndarray:
    """Number the distinct rows of ``keys`` in order of first appearance."""
    keys = np.ascontiguousarray(keys, dtype=np.int64)
    rows = keys.view(np.dtype((np.void, keys.dtype.itemsize * keys.shape[1]))).ravel()
    _, first, inverse = np.unique(rows, return_index=True, return_inverse=True)
    rank_of = np.empty(len(first), dtype=np.int64)
    rank_of[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank_of[inverse.reshape(-1)]


def _refine(group: Group, labels: np.ndarray, early_exit: bool) -> tuple[np.ndarray, int]:
    order = group.order
    table = group.mul_table()
    inv_t = group.inv_table()
    labels = _relabel(labels[:, None])
    passes = 0
    while True:
        passes += 1
        if passes > order:
            raise InvariantViolation("closure did not stabilise within |G| passes")
        start = int(labels.max()) + 1
        labels = _relabel(np.stack([labels, labels[inv_t]], axis=1))
        i = 0
        while i <= labels.max():
            if early_exit and labels.max() + 1 == order:
                return labels, passes
            rank = int(labels.max()) + 1
            members = np.flatnonzero(labels == i)
            # counts[j, z] = coefficient of z in B_i * B_j
            prods = table[members]
            keys = labels[None, :] * order + prods
            counts = np.bincount(keys.ravel(), minlength=rank * order).reshape(rank, order)
            labels = _relabel(np.column_stack([labels, counts.T]))
            i += 1
        if int(labels.max()) + 1 == start:
            return labels, passes


def closure_of_family(
    group: Group, sets: Sequence[Iterable[GroupElement]], *, early_exit: bool = True
) -> SchurPartition:
    """Coarsest Schur partition in which every given set is a union of basic sets."""
    sets = [set(s) for s in sets]
    if not sets or any(not s for s in sets):
        raise InvalidInput("closure needs at least one nonempty set")
    for s in sets:
        for g in s:
            if g.group != group:
                raise InvalidInput(f"{g!r} is not an element of {group}")
    keys = np.zeros((group.order, len(sets) + 1), dtype=np.int64)
    keys[0, 0] = 1
    for c, s in enumerate(sets, start=1):
        for g in s:
            keys[group.index(g), c] = 1
    labels, _ = _refine(group, _relabel(keys), early_exit)
    return SchurPartition.from_labels(group, labels)


def closure(group: Group, C: Iterable[GroupElement], *, early_exit: bool = True) -> SchurPartition:
    """The Schur partition of the ring generated by the simple quantity of ``C``.

    The identity must not be in ``C``.  Basic sets come out ordered by their
    smallest element, so ``{1}`` is always first.
    """
    C = set(C)
    if not C:
        raise InvalidInput("closure of an empty set")
    if group.identity in C:
        raise InvalidInput("the identity may not belong to the connecting set")
    C_inv = {inv(g) for g in C} - C
    return closure_of_family(group, [C, C_inv] if C_inv else [C], early_exit=early_exit)


# -- orbit (cyclotomic) Schur rings -----------------------------------------


def _generator_images(group: Group, images: Sequence[GroupElement]) -> list[GroupElement]:
    """Extend generator images to a map on all elements, listed by index."""
    if group.is_dihedral:
        if len(images) != 2:
            raise InvalidInput("dihedral automorphisms are given as images of (a, b)")
        ia, ib = images
    else:
        if len(images) != 1:
            raise InvalidInput("cyclic automorphisms are given as the image of g")
        ia, ib = group.identity, images[0]
    powers = [group.identity]
    for _ in range(group.n - 1):
        powers.append(mul(powers[-1], ib))
    return [mul(ia, powers[g.rot]) if g.flip else powers[g.rot] for g in group]


def check_automorphism(group: Group, images: Sequence[GroupElement]) -> list[GroupElement]:
    """Return the full element map, or raise with a witness pair."""
    for g in images:
        if g.group != group:
            raise InvalidInput(f"{g!r} is not an element of {group}")
    phi = _generator_images(group, images)
    if len(set(phi)) != group.order:
        raise InvalidInput(f"generator images {[str(g) for g in images]} do not give a bijection")
    elems = group.elements()
    for x in elems:
        for y in elems:
            if phi[mul(x, y).index] != mul(phi[x.index], phi[y.index]):
                raise InvalidInput(f"not a homomorphism: witness pair ({x}, {y})")
    return phi


def inner_automorphism(g: GroupElement) -> tuple[GroupElement, ...]:
    """Generator images of conjugation ``x -> g x g^-1``."""
    group = g.group
    gi = inv(g)
    gens = (group.reflection(0), group.rotation(1)) if group.is_dihedral else (group.rotation(1),)
    return tuple(mul(mul(g, x), gi) for x in gens)


def orbit_schur_ring(group: Group, automorphisms: Iterable[Sequence[GroupElement]]) -> SchurPartition:
    """Partition into orbits of the automorphism group generated by the given maps."""
    maps = [check_automorphism(group, images) for images in automorphisms]
    seen: dict[GroupElement, int] = {}
    blocks = []
    for g in group:
        if g in seen:
            continue
        orbit = generated_orbit(g, maps)
        for h in orbit:
            seen[h] = len(blocks)
        blocks.append(orbit)
    return SchurPartition(group, blocks)


def generated_orbit(g: GroupElement, maps) -> list[GroupElement]:
    orbit = [g]
    known = {g}
    for x in orbit:
        for phi in maps:
            y = phi[x.index]
            if y not in known:
                known.add(y)
                orbit.append(y)
    return orbit
