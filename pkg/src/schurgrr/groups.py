"""Dihedral and cyclic groups with elements in the canonical form ``a^e b^k``.

Dihedral groups use the presentation ``<a, b | a^2 = b^n = abab = 1>`` so that
``b a = a b^-1``.  Cyclic groups reuse the same element type with the flip bit
pinned to zero; their generator is rendered as ``g``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal

import numpy as np

from schurgrr.errors import DomainMismatch, InvalidInput, InvalidParameter

Kind = Literal["dihedral", "cyclic"]


@dataclass(frozen=True, order=True)
class Group:
    kind: Kind
    n: int

    def __post_init__(self):
        if self.kind not in ("dihedral", "cyclic"):
            raise InvalidParameter(f"unknown group kind {self.kind!r}")
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise InvalidParameter(f"rotation order must be an integer, got {self.n!r}")
        low = 3 if self.kind == "dihedral" else 1
        if self.n < low:
            raise InvalidParameter(f"{self.kind} group needs n >= {low}, got {self.n}")

    @property
    def order(self) -> int:
        return 2 * self.n if self.kind == "dihedral" else self.n

    @property
    def is_dihedral(self) -> bool:
        return self.kind == "dihedral"

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, 0, 0)

    def element(self, flip: int, rot: int) -> GroupElement:
        if flip and not self.is_dihedral:
            raise InvalidInput("cyclic groups have no reflections")
        return GroupElement(self, int(flip) & 1, rot % self.n)

    def rotation(self, k: int) -> GroupElement:
        return GroupElement(self, 0, k % self.n)

    def reflection(self, k: int) -> GroupElement:
        """The element ``a b^k``."""
        return self.element(1, k)

    def elements(self) -> list[GroupElement]:
        """All elements sorted by ``(flip, rot)``; position equals :meth:`index`."""
        return list(self)

    def __iter__(self) -> Iterator[GroupElement]:
        flips = (0, 1) if self.is_dihedral else (0,)
        for e in flips:
            for k in range(self.n):
                yield GroupElement(self, e, k)

    def __len__(self) -> int:
        return self.order

    def index(self, g: GroupElement) -> int:
        self._check(g)
        return g.flip * self.n + g.rot

    def from_index(self, i: int) -> GroupElement:
        return GroupElement(self, i // self.n, i % self.n)

    def _check(self, g: GroupElement) -> None:
        if g.group != self:
            raise DomainMismatch(f"{g} belongs to {g.group}, not {self}")

    def mul_table(self) -> np.ndarray:
        """``T[i, j]`` is the index of ``from_index(i) * from_index(j)``."""
        return _mul_table(self)

    def inv_table(self) -> np.ndarray:
        return _inv_table(self)

    def parse(self, token: str) -> GroupElement:
        return parse_element(self, token)

    def __str__(self) -> str:
        return f"D{self.n}" if self.is_dihedral else f"Z{self.n}"


@dataclass(frozen=True)
class GroupElement:
    group: Group
    flip: int
    rot: int

    def __mul__(self, other: GroupElement) -> GroupElement:
        return mul(self, other)

    def __pow__(self, m: int) -> GroupElement:
        if m < 0:
            return inv(self) ** (-m)
        out = self.group.identity
        for _ in range(m):
            out = mul(out, self)
        return out

    def __lt__(self, other: GroupElement) -> bool:
        return (self.flip, self.rot) < (other.flip, other.rot)

    @property
    def is_identity(self) -> bool:
        return self.flip == 0 and self.rot == 0

    @property
    def index(self) -> int:
        return self.flip * self.group.n + self.rot

    def __str__(self) -> str:
        if self.is_identity:
            return "1"
        base = "g" if not self.group.is_dihedral else "b"
        power = "" if self.rot == 0 else base if self.rot == 1 else f"{base}^{self.rot}"
        if not self.flip:
            return power
        return "a" if not power else f"a*{power}"

    def __repr__(self) -> str:
        return f"<{self} in {self.group}>"


def make_group(kind: Kind, n: int) -> Group:
    return Group(kind, n)


def dihedral(n: int) -> Group:
    return Group("dihedral", n)


def cyclic(n: int) -> Group:
    return Group("cyclic", n)


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.group != h.group:
        raise DomainMismatch(f"cannot multiply {g!r} by {h!r}")
    n = g.group.n
    k1 = -g.rot if h.flip else g.rot
    return GroupElement(g.group, g.flip ^ h.flip, (k1 + h.rot) % n)


def inv(g: GroupElement) -> GroupElement:
    if g.flip:
        return g
    return GroupElement(g.group, 0, (-g.rot) % g.group.n)


def element_order(g: GroupElement) -> int:
    if g.flip:
        return 2
    n = g.group.n
    return n // math.gcd(n, g.rot)


def generated_subgroup(group: Group, gens) -> set[GroupElement]:
    """Closure of ``gens`` under multiplication (a subgroup, since the group is finite)."""
    seen = {group.identity}
    frontier = [group.identity]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = mul(x, s)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


@lru_cache(maxsize=64)
def _mul_table(group: Group) -> np.ndarray:
    n = group.n
    idx = np.arange(group.order)
    flip, rot = np.divmod(idx, n)
    f1, f2 = flip[:, None], flip[None, :]
    k1 = np.where(f2 == 1, -rot[:, None], rot[:, None])
    table = (f1 ^ f2) * n + (k1 + rot[None, :]) % n
    table.setflags(write=False)
    return table


@lru_cache(maxsize=64)
def _inv_table(group: Group) -> np.ndarray:
    table = np.array([inv(g).index for g in group], dtype=np.int64)
    table.setflags(write=False)
    return table


_TOKEN = re.compile(
    r"""^(?:
        (?P<one>1)
      | (?P<refl>a)(?:\*?(?P<rb>[bg])(?:\^(?P<rk>-?\d+))?)?
      | (?P<rot>[bg])(?:\^(?P<k>-?\d+))?
    )$""",
    re.VERBOSE,
)


def parse_element(group: Group, token: str) -> GroupElement:
    """Parse ``1``, ``a``, ``ab^k``/``a*b^k``, ``b^k`` or (cyclic) ``g^k``."""
    m = _TOKEN.match(token.strip().replace(" ", ""))
    if m is None:
        raise InvalidInput(f"cannot parse group element {token!r}")
    if m["one"]:
        return group.identity
    if m["refl"]:
        if not group.is_dihedral:
            raise InvalidInput(f"{token!r}: cyclic groups have no reflection a")
        if m["rb"] == "g":
            raise InvalidInput(f"{token!r}: use b for the rotation in dihedral groups")
        k = 0 if m["rb"] is None else int(m["rk"] or 1)
        return group.reflection(k)
    letter = m["rot"]
    if group.is_dihedral and letter == "g":
        raise InvalidInput(f"{token!r}: use b for the rotation in dihedral groups")
    return group.rotation(int(m["k"] or 1))


def parse_set(group: Group, text: str) -> list[GroupElement]:
    """Parse a comma separated element list, keeping first-seen order and dropping repeats."""
    out: list[GroupElement] = []
    for tok in text.split(","):
        if not tok.strip():
            continue
        g = parse_element(group, tok)
        if g not in out:
            out.append(g)
    return out
