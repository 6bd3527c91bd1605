import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schurgrr.cayley import automorphism_order, cayley_graph
from schurgrr.errors import InvalidInput
from schurgrr.group_ring import RingElement, level_sets, ring_mul, scale, simple_quantity
from schurgrr.groups import cyclic, dihedral, inv, mul, parse_set
from schurgrr.schur import (
    SchurPartition,
    check_automorphism,
    closure,
    closure_of_family,
    inner_automorphism,
    is_trivial,
    orbit_schur_ring,
    structure_constants,
    validate_schur,
)

D7 = dihedral(7)
Z8 = cyclic(8)


def z8_example():
    return SchurPartition(Z8, [parse_set(Z8, b) for b in ["1", "g,g^5", "g^3,g^7", "g^2,g^6", "g^4"]])


def as_blocks(part):
    return {frozenset(b) for b in part.basic_sets}


def reference_closure(group, C):
    """Pair-by-pair refinement using only ring_mul and level_sets."""
    C = set(C)
    C_inv = {inv(g) for g in C} - C
    blocks = [{group.identity}, C] + ([C_inv] if C_inv else [])
    rest = set(group) - set().union(*blocks)
    if rest:
        blocks.append(rest)

    def split(blocks, key):
        out = []
        for b in blocks:
            groups = {}
            for g in sorted(b):
                groups.setdefault(key(g), set()).add(g)
            out.extend(groups.values())
        return out

    while True:
        before = len(blocks)
        owner = {g: i for i, b in enumerate(blocks) for g in b}
        blocks = split(blocks, lambda g: owner[inv(g)])
        i = 0
        while i < len(blocks):
            j = 0
            while j < len(blocks):
                prod = ring_mul(simple_quantity(blocks[i], group), simple_quantity(blocks[j], group))
                level = {g: k for k, members in level_sets(prod).items() for g in members}
                blocks = split(blocks, lambda g: level.get(g, 0))
                j += 1
            i += 1
        if len(blocks) == before:
            return {frozenset(b) for b in blocks}


# -- validate_schur -----------------------------------------------------------


def test_validate_z8_example():
    assert validate_schur(z8_example())


def test_validate_conjugacy_classes():
    classes = []
    for x in D7:
        cls = {mul(mul(g, x), inv(g)) for g in D7}
        if cls not in classes:
            classes.append(cls)
    assert validate_schur(SchurPartition(D7, classes))


def test_validate_reports_product_failure():
    part = SchurPartition(Z8, [parse_set(Z8, "1"), parse_set(Z8, "g,g^2"), parse_set(Z8, "g^3,g^4,g^5,g^6,g^7")])
    rep = validate_schur(part)
    assert not rep and rep.axiom in ("inverse", "product")
    # (g + g^2)^2 = g^2 + 2 g^3 + g^4 has mixed support over the last class
    sq = ring_mul(part.basic_element(1), part.basic_element(1))
    assert {sq[g] for g in part.basic_sets[2]} == {0, 1, 2}


def test_validate_reports_identity_and_inverse():
    Z7 = cyclic(7)
    rep = validate_schur(SchurPartition(Z7, [parse_set(Z7, "g,g^6"), parse_set(Z7, "1,g^2,g^3,g^4,g^5")]))
    assert rep.axiom == "identity"
    rep = validate_schur(SchurPartition(Z7, [parse_set(Z7, "1"), parse_set(Z7, "g"), parse_set(Z7, "g^2,g^3,g^4,g^5,g^6")]))
    assert rep.axiom == "inverse" and rep.witness == (1,)


def test_malformed_partition():
    with pytest.raises(InvalidInput, match="g\\^2"):
        SchurPartition(Z8, [parse_set(Z8, "1,g"), parse_set(Z8, "g^3,g^4,g^5,g^6,g^7")])
    with pytest.raises(InvalidInput, match="lies in"):
        SchurPartition(Z8, [parse_set(Z8, "1,g"), parse_set(Z8, "g,g^2,g^3,g^4,g^5,g^6,g^7")])


# -- closure ----------------------------------------------------------------------


def test_closure_d7_worked_example():
    part = closure(D7, parse_set(D7, "a,ab,ab^3,b,b^6"))
    assert part.rank == 14 and is_trivial(part)
    assert validate_schur(part)


@pytest.mark.parametrize("G", [cyclic(2), cyclic(5), cyclic(8), dihedral(3), D7, dihedral(10)], ids=str)
def test_closure_of_everything_is_rank_two(G):
    part = closure(G, [g for g in G if not g.is_identity])
    assert part.rank == min(2, G.order)


def test_closure_d9_negative_control():
    D9 = dihedral(9)
    C = parse_set(D9, "a,ab^3,ab^6")
    part = closure(D9, C)
    assert not is_trivial(part) and validate_schur(part)
    assert part.is_union_of_classes(C)
    order, _ = automorphism_order(cayley_graph(D9, C, allow_nongenerating=True))
    assert order > 18


def test_closure_z8_matches_z8_example():
    assert as_blocks(closure(Z8, parse_set(Z8, "g,g^5"))) == as_blocks(z8_example())


def test_closure_errors():
    with pytest.raises(InvalidInput):
        closure(D7, [])
    with pytest.raises(InvalidInput):
        closure(D7, [D7.identity, D7.rotation(1)])


def test_closure_output_order_is_canonical():
    part = closure(dihedral(9), parse_set(dihedral(9), "a,ab^3,ab^6"))
    assert part.basic_sets[0] == (dihedral(9).identity,)
    firsts = [b[0] for b in part.basic_sets]
    assert firsts == sorted(firsts)


def test_is_trivial():
    assert is_trivial(closure(dihedral(11), parse_set(dihedral(11), "ab,ab^3,ab^4")))
    assert not is_trivial(closure(D7, [g for g in D7 if not g.is_identity]))


def random_subsets(group, inverse_closed):
    elems = [g for g in group if not g.is_identity]

    def build(mask):
        C = {g for g, keep in zip(elems, mask) if keep}
        if inverse_closed:
            C |= {inv(g) for g in C}
        return C

    return st.lists(st.booleans(), min_size=len(elems), max_size=len(elems)).map(build).filter(bool)


GROUPS = [D7, dihedral(9), dihedral(11), Z8, cyclic(12)]


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(GROUPS).flatmap(lambda G: random_subsets(G, False)))
def test_closure_matches_reference(C):
    G = next(iter(C)).group
    part = closure(G, C)
    assert as_blocks(part) == reference_closure(G, C)
    assert as_blocks(closure(G, C, early_exit=False)) == as_blocks(part)


@settings(max_examples=220, deadline=None)
@given(st.sampled_from([D7, dihedral(9), dihedral(11)]).flatmap(lambda G: random_subsets(G, True)))
def test_closure_is_sound_and_stable(C):
    G = next(iter(C)).group
    part = closure(G, C)
    assert validate_schur(part)
    assert part.is_union_of_classes(C)
    for block in part.basic_sets[1:]:
        assert part.refines(closure(G, block))
    C_sym = C | {inv(g) for g in C}
    assert as_blocks(closure(G, C_sym)) == as_blocks(part)


def test_closure_not_inverse_closed_set():
    Z7 = cyclic(7)
    one_way = closure(Z7, [Z7.rotation(1)])
    both_ways = closure(Z7, [Z7.rotation(1), Z7.rotation(6)])
    assert is_trivial(one_way)
    assert both_ways.rank == 4 and one_way.refines(both_ways)


def test_closure_of_family_recovers_z8_example():
    sets = [parse_set(Z8, t) for t in ("g,g^5", "g^3,g^7", "g^2,g^6", "g^4")]
    assert as_blocks(closure_of_family(Z8, sets)) == as_blocks(z8_example())


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _symmetric_schur_partitions(G):
    """All Schur partitions of G whose basic sets are inverse-closed, by brute force."""
    atoms = []
    for g in G:
        if g.is_identity or any(g in a for a in atoms):
            continue
        atoms.append(sorted({g, inv(g)}))
    N = G.order
    table = G.mul_table()
    U, V = np.divmod(np.arange(N * N), N)
    Z = table[U, V]
    found = []
    for blocks in _set_partitions(atoms):
        labels = np.zeros(N, dtype=np.int64)
        for c, blk in enumerate(blocks, start=1):
            for atom in blk:
                for g in atom:
                    labels[g.index] = c
        R = len(blocks) + 1
        counts = np.bincount((labels[U] * R + labels[V]) * N + Z, minlength=R * R * N).reshape(R, R, N)
        rep = np.array([np.flatnonzero(labels == c)[0] for c in range(R)])
        if np.array_equal(counts, counts[:, :, rep[labels]]):
            found.append(SchurPartition.from_labels(G, labels))
    return found


def test_closure_is_coarsest_in_d7():
    schur_rings = _symmetric_schur_partitions(D7)
    assert all(validate_schur(q) for q in schur_rings)
    atoms = [[D7.rotation(k), D7.rotation(-k)] for k in (1, 2, 3)] + [[D7.reflection(k)] for k in range(7)]
    checked = 0
    for m in range(1, 4):
        for combo in itertools.combinations(atoms, m):
            C = [g for atom in combo for g in atom]
            if len(C) > 3:
                continue
            P = closure(D7, C)
            assert as_blocks(P) in [as_blocks(q) for q in schur_rings]
            for q in schur_rings:
                if q.is_union_of_classes(C):
                    assert q.refines(P)
            checked += 1
    assert checked == 7 + 3 + 21 + 21 + 35


# -- structure constants ------------------------------------------------------------


def test_structure_constants_z8_example():
    sc = structure_constants(z8_example())
    assert sc[2, 4, 2] == 1
    assert all(sc[2, 4, k] == 0 for k in range(5) if k != 2)
    assert sc[2, 3, 1] == 2
    assert sc[2, 1, 4] == 2
    assert all(sc[0, j, k] == (j == k) for j in range(5) for k in range(5))


def test_structure_constants_reject_non_schur():
    part = SchurPartition(Z8, [parse_set(Z8, "1"), parse_set(Z8, "g,g^2"), parse_set(Z8, "g^3,g^4,g^5,g^6,g^7")])
    with pytest.raises(InvalidInput, match="B1\\*B1"):
        structure_constants(part)


def schur_partitions_for_tests():
    out = [z8_example(), closure(dihedral(9), parse_set(dihedral(9), "a,ab^3,ab^6"))]
    out.append(orbit_schur_ring(D7, [inner_automorphism(g) for g in D7]))
    out.append(orbit_schur_ring(cyclic(12), [[cyclic(12).rotation(5)], [cyclic(12).rotation(7)]]))
    rng = random.Random(3)
    for G in (D7, dihedral(9), dihedral(11), cyclic(15)):
        for _ in range(6):
            C = set(rng.sample([g for g in G if not g.is_identity], 3))
            out.append(closure(G, C | {inv(g) for g in C}))
    return out


SCHUR_PARTITIONS = schur_partitions_for_tests()


@pytest.mark.parametrize("part", SCHUR_PARTITIONS, ids=lambda p: f"{p.group}-r{p.rank}")
def test_structure_constant_identities(part):
    sc = structure_constants(part)
    sizes = sc.sizes
    for i, j in itertools.product(range(sc.rank), repeat=2):
        assert sum(sc[i, j, k] * sizes[k] for k in range(sc.rank)) == sizes[i] * sizes[j]
        inverse = {inv(g) for g in part.basic_sets[i]} == set(part.basic_sets[j])
        assert sc[i, j, 0] == (sizes[i] if inverse else 0)
    assert (sc.beta >= 0).all()


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_schur_wielandt_stability(data):
    part = data.draw(st.sampled_from(SCHUR_PARTITIONS[:8]))
    G = part.group

    def member():
        alphas = data.draw(st.lists(st.integers(-3, 3), min_size=part.rank, max_size=part.rank))
        x = RingElement.zero(G)
        for a, i in zip(alphas, range(part.rank)):
            x = x + scale(a, part.basic_element(i))
        return x

    x, y = member(), member()
    for z in (x, ring_mul(x, y)):
        for members in level_sets(z).values():
            assert part.is_union_of_classes(members)


# -- orbit Schur rings -------------------------------------------------------------


def test_orbit_inner_automorphisms_d7():
    part = orbit_schur_ring(D7, [inner_automorphism(g) for g in D7])
    conj = {frozenset(mul(mul(g, x), inv(g)) for g in D7) for x in D7}
    assert as_blocks(part) == conj
    assert as_blocks(part) == {
        frozenset([D7.identity]),
        frozenset(parse_set(D7, "b,b^6")),
        frozenset(parse_set(D7, "b^2,b^5")),
        frozenset(parse_set(D7, "b^3,b^4")),
        frozenset(D7.reflection(k) for k in range(7)),
    }
    assert validate_schur(part)


def test_orbit_identity_map_is_trivial():
    part = orbit_schur_ring(D7, [(D7.reflection(0), D7.rotation(1))])
    assert is_trivial(part)


def test_orbit_z8_multiplier_five():
    part = orbit_schur_ring(Z8, [[Z8.rotation(5)]])
    assert as_blocks(part) == {frozenset(parse_set(Z8, s)) for s in ["1", "g,g^5", "g^3,g^7", "g^2", "g^4", "g^6"]}
    assert validate_schur(part)
    assert part.refines(z8_example())


def test_orbit_rejects_non_automorphisms():
    with pytest.raises(InvalidInput, match="bijection"):
        check_automorphism(Z8, [Z8.rotation(2)])
    with pytest.raises(InvalidInput, match="bijection"):
        check_automorphism(D7, [D7.rotation(1), D7.rotation(1)])
    with pytest.raises(InvalidInput):
        check_automorphism(D7, [D7.rotation(1)])
    assert len(set(check_automorphism(D7, [D7.reflection(2), D7.rotation(3)]))) == 14
