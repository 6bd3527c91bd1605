"""Published worked examples and claims, each runnable as a named check.

Every check returns ``(passed, detail)``.  Checks are module-level functions
with plain arguments so they can be farmed out to worker processes.
"""

from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from schurgrr.cayley import (
    ColouredCayleyGraph,
    automorphism_order,
    cayley_graph,
    is_grr,
    left_regular_embeds,
    walk_count,
)
from schurgrr.construct import build_connecting_set, certify, inherit, make_spec, primes_between, table_row
from schurgrr.group_ring import inverse_image, level_sets, ring_mul, ring_pow, simple_quantity
from schurgrr.groups import cyclic, dihedral, parse_set
from schurgrr.schur import SchurPartition, closure, is_trivial, structure_constants, validate_schur

# (p, r, s, t, connecting set as printed)
PRINTED_TABLE: tuple[tuple[int, int, int, int, str], ...] = (
    (7, 2, 3, 0, "ab^2,ab^3,a"),
    (11, 3, 4, 1, "ab^3,ab^4,ab"),
    (13, 4, 6, 0, "ab^4,ab^6,a"),
    (17, 5, 7, 1, "ab^5,ab^7,ab"),
    (19, 6, 9, 0, "ab^6,ab^9,a"),
    (23, 7, 10, 1, "ab^7,ab^10,ab"),
    (29, 9, 13, 1, "ab^9,ab^13,ab"),
    (31, 10, 15, 0, "ab^10,ab^15,a"),
    (37, 12, 18, 0, "ab^12,ab^18,a"),
    (41, 13, 19, 1, "ab^13,ab^19,ab"),
    (43, 14, 21, 0, "ab^14,ab^21,a"),
    (47, 15, 22, 1, "ab^15,ab^22,ab"),
    (53, 17, 25, 1, "ab^17,ab^25,ab"),
    (59, 19, 28, 1, "ab^19,ab^28,ab"),
    (61, 20, 30, 0, "ab^20,ab^30,a"),
    (67, 22, 33, 0, "ab^22,ab^38,a"),  # printed set disagrees with the s column
    (71, 23, 34, 1, "ab^23,ab^34,ab"),
    (73, 24, 36, 0, "ab^24,ab^36,a"),
    (79, 26, 39, 0, "ab^26,ab^39,a"),
    (83, 27, 40, 1, "ab^27,ab^40,ab"),
    (89, 29, 43, 1, "ab^29,ab^43,ab"),
    (97, 32, 48, 0, "ab^32,ab^48,a"),
)
TABLE_ERRATA = {67: "printed connecting set {ab^22, ab^38, a} contradicts s = 33; using the columns"}

# C^2 for C = {a, ab, ab^3, b, b^6} in D7
D7_SQUARE = {
    "1": 5,
    "ab^2": 4,
    "a": 2, "ab": 2, "b^2": 2, "ab^4": 2, "b^5": 2, "ab^6": 2,
    "b^3": 1, "b": 1, "b^4": 1, "b^6": 1,
}  # fmt: skip

Z8_EXAMPLE = ["1", "g,g^5", "g^3,g^7", "g^2,g^6", "g^4"]


def z8_example_partition() -> SchurPartition:
    Z8 = cyclic(8)
    return SchurPartition(Z8, [parse_set(Z8, b) for b in Z8_EXAMPLE])


def check_d7_square():
    D7 = dihedral(7)
    x = simple_quantity(parse_set(D7, "a,ab,ab^3,b,b^6"))
    got = {str(g): z for g, z in ring_mul(x, x).coeffs().items()}
    want = {str(D7.parse(k)): v for k, v in D7_SQUARE.items()}
    return got == want, f"coefficients {sorted(got.values(), reverse=True)}"


def check_d7_levels():
    D7 = dihedral(7)
    x = simple_quantity(parse_set(D7, "a,ab,ab^3,b,b^6"))
    levels = level_sets(ring_mul(x, x))
    want_x = set(parse_set(D7, "ab^2"))
    want_y = set(parse_set(D7, "a,ab,b^2,ab^4,b^5,ab^6"))
    return levels[4] == want_x and levels[2] == want_y, "x = ab^2, y = a+ab+b^2+ab^4+b^5+ab^6"


def check_d7_inverse():
    D7 = dihedral(7)
    xy = ring_mul(simple_quantity(parse_set(D7, "ab^2")),
                  simple_quantity(parse_set(D7, "a,ab,b^2,ab^4,b^5,ab^6")))  # fmt: skip
    ok1 = xy == simple_quantity(parse_set(D7, "a,b^2,b^4,ab^4,b^5,b^6"))
    ok2 = inverse_image(xy) == simple_quantity(parse_set(D7, "a,b^5,b^3,ab^4,b^2,b"))
    return ok1 and ok2, "xy and (xy)^-1"


def check_d7_trivial():
    D7 = dihedral(7)
    P = closure(D7, parse_set(D7, "a,ab,ab^3,b,b^6"))
    return is_trivial(P), f"rank {P.rank}"


def check_d7_grr(max_n: int):
    D7 = dihedral(7)
    cert = is_grr(D7, parse_set(D7, "a,ab,ab^3,b,b^6"), "both", limit=max(4 * max_n, 14))
    return cert.is_grr and cert.aut_order == 14, f"|Aut| = {cert.aut_order}"


def check_z8_example_valid():
    rep = validate_schur(z8_example_partition())
    return rep.ok, rep.message or "Schur partition"


def check_z8_example_beta(i: int, j: int, k: int, want: int, only: bool):
    sc = structure_constants(z8_example_partition())
    ok = sc[i, j, k] == want
    if only:
        ok = ok and all(sc[i, j, m] == 0 for m in range(sc.rank) if m != k)
    return ok, f"beta[{i},{j}]^{k} = {sc[i, j, k]}"


def check_z8_example_walks():
    part = z8_example_partition()
    cg = ColouredCayleyGraph.from_partition(part)
    sc = structure_constants(part)
    bad = [
        (i, j, k)
        for i in range(1, part.rank)
        for j in range(1, part.rank)
        for k in range(1, part.rank)
        if walk_count(cg, i, j, k) != sc[i, j, k]
    ]
    red_blue_green = walk_count(cg, 2, 3, 1)
    black_blue_red = walk_count(cg, 2, 1, 4)
    ok = not bad and red_blue_green == 2 and black_blue_red == 2
    return ok, f"mismatches {bad}, blue-green->red {red_blue_green}, blue-red->black {black_blue_red}"


def check_identity_i(n: int, r: int, s: int):
    D = dihedral(n)
    x = simple_quantity([D.reflection(r), D.reflection(s), D.reflection(3 * r - 2 * s)])
    d = r - s
    want = ring_mul(x, x) == (
        3 * simple_quantity([D.identity])
        + simple_quantity([D.rotation(m * d) for m in (1, 2, 3, -1, -2, -3)])
    )
    return want, f"n={n}, r={r}, s={s}"


def check_binomial(n: int, r: int, t: int):
    from math import comb

    Z = cyclic(n)
    got = ring_pow(simple_quantity([Z.rotation(r), Z.rotation(t)]), n)
    want = {Z.rotation((r - t) * i): 0 for i in range(n + 1)}
    for i in range(n + 1):
        want[Z.rotation((r - t) * i)] += comb(n, i)
    return got.coeffs() == {g: z for g, z in want.items() if z}, f"n={n}"


def check_table_rows():
    bad = []
    for p, r, s, t, printed in PRINTED_TABLE:
        spec = table_row(p)
        if spec.rst != (r, s, t):
            bad.append(p)
            continue
        if p in TABLE_ERRATA:
            continue
        D = dihedral(p)
        if set(build_connecting_set(spec)) != set(parse_set(D, printed)):
            bad.append(p)
    primes = [row[0] for row in PRINTED_TABLE]
    ok = not bad and primes == primes_between(7, 97)
    return ok, f"{len(PRINTED_TABLE)} rows, mismatches {bad}"


def check_row_certified(p: int):
    cert = certify(table_row(p), "closure")
    return cert.certified, f"closure rank {cert.grr.closure_rank} of {2 * p}"


def check_row_oracle(p: int):
    spec = table_row(p)
    D = dihedral(spec.n)
    graph = cayley_graph(D, build_connecting_set(spec))
    order, _ = automorphism_order(graph, limit=max(64, 2 * p))
    ok = order == 2 * p and left_regular_embeds(graph)
    return ok, f"|Aut| = {order}, expected {2 * p}"


def check_inherit(rst: tuple[int, int, int], p1: int, p2: int, rule: str = "3r-2s"):
    spec = inherit(make_spec(p1, *rst, rule), p2)
    cert = certify(spec, "closure")
    return cert.certified, f"{rst} from D{p1} to D{p2}: rank {cert.grr.closure_rank}"


def check_conclusion(n: int, rst: tuple[int, int, int], rule: str):
    cert = certify(make_spec(n, *rst, rule), "closure")
    return cert.certified, f"rank {cert.grr.closure_rank} of {2 * n}"


def check_negative_d9():
    D9 = dihedral(9)
    P = closure(D9, parse_set(D9, "a,ab^3,ab^6"))
    return not is_trivial(P), f"rank {P.rank}"


def check_negative_d5():
    D5 = dihedral(5)
    cert = is_grr(D5, parse_set(D5, "a,ab,ab^2"), "oracle")
    return not cert.is_grr and cert.aut_order > 10, f"|Aut| = {cert.aut_order}"


@dataclass(frozen=True)
class Item:
    id: str
    group: str
    check: Callable[[], tuple[bool, str]]


GROUPS = ("closure", "example", "identities", "table", "oracle", "inherit", "conclusion", "negative")


def items(max_n: int = 19) -> list[Item]:
    out = [
        Item("closure.d7-square", "closure", check_d7_square),
        Item("closure.d7-levels", "closure", check_d7_levels),
        Item("closure.d7-inverse", "closure", check_d7_inverse),
        Item("closure.d7-trivial", "closure", check_d7_trivial),
        Item("example.z8-valid", "example", check_z8_example_valid),
        Item("example.beta-2-4-2", "example", partial(check_z8_example_beta, 2, 4, 2, 1, True)),
        Item("example.beta-2-3-1", "example", partial(check_z8_example_beta, 2, 3, 1, 2, False)),
        Item("example.beta-2-1-4", "example", partial(check_z8_example_beta, 2, 1, 4, 2, False)),
        Item("example.walks", "example", check_z8_example_walks),
        Item("identities.square-11", "identities", partial(check_identity_i, 11, 3, 4)),
        Item("identities.square-29", "identities", partial(check_identity_i, 29, 9, 13)),
        Item("identities.binomial-7", "identities", partial(check_binomial, 7, 3, 1)),
        Item("identities.binomial-97", "identities", partial(check_binomial, 97, 5, 2)),
        Item("table.rows", "table", check_table_rows),
    ]
    for p, *_ in PRINTED_TABLE:
        out.append(Item(f"table.certify-{p}", "table", partial(check_row_certified, p)))
    if max_n >= 7:
        out.append(Item("oracle.d7-example", "oracle", partial(check_d7_grr, max_n)))
    for p in primes_between(7, max_n):
        out.append(Item(f"oracle.aut-{p}", "oracle", partial(check_row_oracle, p)))
    out.append(Item("inherit.341-11-13", "inherit", partial(check_inherit, (3, 4, 1), 11, 13)))
    for p in primes_between(11, 31):
        out.append(Item(f"inherit.230-7-{p}", "inherit", partial(check_inherit, (2, 3, 0), 7, p)))
    for p in primes_between(13, 31):
        out.append(Item(f"conclusion.a-ab2-ab3-{p}", "conclusion", partial(check_conclusion, p, (2, 3, 0), "3r-2s")))
        out.append(Item(f"conclusion.a-ab3-ab4-{p}", "conclusion", partial(check_conclusion, p, (4, 0, 3), "3r+s")))
    out.append(Item("negative.d9", "negative", check_negative_d9))
    out.append(Item("negative.d5", "negative", check_negative_d5))
    return out


def _run(check) -> tuple[bool, str]:
    try:
        return check()
    except Exception as exc:  # a crash is a failed item, not a crashed suite
        return False, f"{type(exc).__name__}: {exc}"


def run(selected: list[Item], jobs: int = 1) -> list[tuple[Item, bool, str]]:
    checks = [it.check for it in selected]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, checks))
    else:
        results = [_run(c) for c in checks]
    return [(it, ok, detail) for it, (ok, detail) in zip(selected, results)]
