"""Parametric trivalent connecting sets ``{ab^r, ab^s, ab^t}`` for dihedral groups.

Two congruence rules are supported:

* ``3r-2s``: ``3r - 2s = t (mod n)``
* ``3r+s``: ``3r + s = 4t (mod n)``

together with pairwise-coprime differences and odd ``n > 5``.  A spec that
passes :func:`check_spec` is only a candidate; :func:`certify` decides.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Literal

from schurgrr.cayley import GRRCertificate, Method, is_grr
from schurgrr.errors import InvalidInput, SchurError
from schurgrr.groups import GroupElement, dihedral

Rule = Literal["3r-2s", "3r+s"]

RULE_ALIASES = {
    "3r-2s": "3r-2s",
    "3r-2s=t": "3r-2s",
    "ThreeRTwoS": "3r-2s",
    "3r+s": "3r+s",
    "3r+s=4t": "3r+s",
    "ThreeRPlusS": "3r+s",
}


def normalise_rule(rule: str) -> Rule:
    try:
        return RULE_ALIASES[rule.replace(" ", "")]  # type: ignore[return-value]
    except KeyError:
        raise InvalidInput(f"unknown rule {rule!r}; use 3r-2s or 3r+s") from None


def combination(r: int, s: int, rule: Rule) -> int:
    """Integer value of the left-hand side: ``3r - 2s`` or ``3r + s``."""
    return 3 * r - 2 * s if rule == "3r-2s" else 3 * r + s


def rhs(t: int, rule: Rule) -> int:
    return t if rule == "3r-2s" else 4 * t


@dataclass(frozen=True)
class ConnectingSpec:
    n: int
    r: int
    s: int
    t: int
    rule: Rule = "3r-2s"

    @property
    def rst(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "s": self.s, "t": self.t, "rule": self.rule}


@dataclass(frozen=True)
class SpecReport:
    ok: bool
    spec: ConnectingSpec | None = None
    failed: str | None = None
    message: str = ""
    no_midpoint: bool | None = None

    def __bool__(self) -> bool:
        return self.ok


class SpecViolation(SchurError):
    def __init__(self, report: SpecReport):
        super().__init__(report.message)
        self.report = report


def _no_midpoint(n: int, r: int, s: int, t: int) -> bool:
    """No one of r, s, t is the average of the other two mod n."""
    return all((x + y - 2 * z) % n for x, y, z in ((r, t, s), (r, s, t), (s, t, r)))


def check_spec(n: int, r: int, s: int, t: int, rule: str = "3r-2s") -> SpecReport:
    """Check the hypotheses of the construction, stopping at the first failure."""
    rule = normalise_rule(rule)

    def fail(name: str, msg: str) -> SpecReport:
        return SpecReport(False, failed=name, message=msg)

    if n % 2 == 0:
        return fail("odd", f"n = {n} is not odd")
    if n <= 5:
        return fail("n>5", f"n = {n} is not greater than 5")
    for name, v in (("r", r), ("s", s), ("t", t)):
        if not 0 <= v < n:
            return fail("range", f"{name} = {v} is not in [0, {n})")
    if len({r, s, t}) < 3:
        return fail("distinct", f"r, s, t = {r}, {s}, {t} are not pairwise distinct")
    for (x, xn), (y, yn) in (((r, "r"), (s, "s")), ((s, "s"), (t, "t")), ((r, "r"), (t, "t"))):
        d = gcd(abs(x - y), n)
        if d != 1:
            return fail("coprime", f"gcd(|{xn}-{yn}|, {n}) = gcd({abs(x - y)}, {n}) = {d}")
    lhs = combination(r, s, rule)
    if (lhs - rhs(t, rule)) % n:
        want = "3r-2s = t" if rule == "3r-2s" else "3r+s = 4t"
        return fail("congruence", f"{want} (mod {n}) fails: {lhs} vs {rhs(t, rule)}")
    return SpecReport(
        True, spec=ConnectingSpec(n, r, s, t, rule), no_midpoint=_no_midpoint(n, r, s, t)
    )


def make_spec(n: int, r: int, s: int, t: int, rule: str = "3r-2s") -> ConnectingSpec:
    report = check_spec(n, r, s, t, rule)
    if not report:
        raise SpecViolation(report)
    return report.spec


def build_connecting_set(spec: ConnectingSpec) -> tuple[GroupElement, ...]:
    D = dihedral(spec.n)
    return tuple(D.reflection(k) for k in spec.rst)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in range(lo, hi + 1) if is_prime(p)]


def table_row(p: int) -> ConnectingSpec:
    """The tabulated ``3r-2s`` solution for a prime ``p >= 7``.

    ``r = p // 3``; ``t = 0, s = 3r/2`` when ``p = 1 (mod 3)`` and
    ``t = 1, s = (3r-1)/2`` when ``p = 2 (mod 3)``.  Then ``3r - 2s = t`` holds
    over the integers, so the row inherits to every larger prime.
    """
    if p < 7 or not is_prime(p):
        raise InvalidInput(f"table rows exist for primes p >= 7, got {p}")
    r = p // 3
    if p % 3 == 1:
        s, t = 3 * r // 2, 0
    else:
        s, t = (3 * r - 1) // 2, 1
    return make_spec(p, r, s, t, "3r-2s")


def table(p_max: int) -> list[ConnectingSpec]:
    return [table_row(p) for p in primes_between(7, p_max)]


def inherit(spec: ConnectingSpec, p2: int) -> ConnectingSpec:
    """Reuse ``(r, s, t)`` for the larger prime modulus ``p2``."""
    if not is_prime(p2):
        raise InvalidInput(f"{p2} is not prime")
    if p2 <= spec.n:
        raise InvalidInput(f"inheritance needs p2 > {spec.n}, got {p2}")
    value = combination(spec.r, spec.s, spec.rule)
    if not 0 <= value <= spec.n:
        raise SpecViolation(
            SpecReport(
                False,
                failed="inheritable",
                message=f"{value} lies outside [0, {spec.n}]; inheritance is not guaranteed",
            )
        )
    return make_spec(p2, spec.r, spec.s, spec.t, spec.rule)


@dataclass(frozen=True)
class Certificate:
    spec: ConnectingSpec
    grr: GRRCertificate

    @property
    def certified(self) -> bool:
        return self.grr.is_grr

    def to_json(self) -> dict:
        out = self.spec.to_json()
        out["connecting_set"] = [str(g) for g in build_connecting_set(self.spec)]
        out["certified"] = self.certified
        out.update({k: v for k, v in self.grr.to_json().items() if k != "is_grr"})
        return out


def certify(spec: ConnectingSpec, mode: Method = "closure", limit: int | None = None) -> Certificate:
    if not check_spec(spec.n, *spec.rst, spec.rule):
        raise SpecViolation(check_spec(spec.n, *spec.rst, spec.rule))
    C = build_connecting_set(spec)
    return Certificate(spec, is_grr(dihedral(spec.n), C, mode, limit))


def default_mode(n: int) -> Method:
    return "both" if n <= 32 else "closure"
