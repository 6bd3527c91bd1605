"""The integer group ring Z[G] over a dihedral or cyclic group.

Elements are stored densely, one Python ``int`` per group element in
``(flip, rot)`` order, so coefficients never overflow.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from schurgrr.errors import DomainMismatch, InvalidInput
from schurgrr.groups import Group, GroupElement


class RingElement:
    __slots__ = ("group", "_c")

    def __init__(self, group: Group, coeffs: Mapping[GroupElement, int] | Iterable[int] = ()):
        self.group = group
        if isinstance(coeffs, Mapping):
            dense = [0] * group.order
            for g, z in coeffs.items():
                dense[group.index(g)] += int(z)
        else:
            dense = [int(z) for z in coeffs]
            if not dense:
                dense = [0] * group.order
            if len(dense) != group.order:
                raise InvalidInput(f"expected {group.order} coefficients, got {len(dense)}")
        self._c = tuple(dense)

    @classmethod
    def zero(cls, group: Group) -> RingElement:
        return cls(group)

    @classmethod
    def unit(cls, group: Group) -> RingElement:
        return cls(group, {group.identity: 1})

    @property
    def dense(self) -> tuple[int, ...]:
        return self._c

    def __getitem__(self, g: GroupElement) -> int:
        return self._c[self.group.index(g)]

    def coeffs(self) -> dict[GroupElement, int]:
        """Sparse view: nonzero coefficients only."""
        fi = self.group.from_index
        return {fi(i): z for i, z in enumerate(self._c) if z}

    def support(self) -> set[GroupElement]:
        fi = self.group.from_index
        return {fi(i) for i, z in enumerate(self._c) if z}

    def total(self) -> int:
        return sum(self._c)

    def _same(self, other: RingElement) -> None:
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.group != self.group:
            raise DomainMismatch(f"ring elements over {self.group} and {other.group}")

    def __add__(self, other: RingElement) -> RingElement:
        return add(self, other)

    def __sub__(self, other: RingElement) -> RingElement:
        return add(self, scale(-1, other))

    def __neg__(self) -> RingElement:
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        return ring_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        return NotImplemented

    def __pow__(self, m: int) -> RingElement:
        return ring_pow(self, m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.group == other.group and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.group, self._c))

    def __bool__(self) -> bool:
        return any(self._c)

    def __str__(self) -> str:
        terms = []
        for i, z in enumerate(self._c):
            if z:
                terms.append(f"({z})*{self.group.from_index(i)}")
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


def simple_quantity(elements: Iterable[GroupElement], group: Group | None = None) -> RingElement:
    """The sum of the given elements, each with coefficient 1."""
    members = list(elements)
    if not members:
        raise InvalidInput("simple quantity of an empty set")
    group = group or members[0].group
    dense = [0] * group.order
    for g in members:
        dense[group.index(g)] = 1
    return RingElement(group, dense)


def add(x: RingElement, y: RingElement) -> RingElement:
    x._same(y)
    return RingElement(x.group, [p + q for p, q in zip(x._c, y._c)])


def scale(c: int, x: RingElement) -> RingElement:
    return RingElement(x.group, [c * z for z in x._c])


def ring_mul(x: RingElement, y: RingElement) -> RingElement:
    """Convolution product: the coefficient of g is the sum of x(u) y(v) over uv = g."""
    x._same(y)
    table = x.group.mul_table()
    out = [0] * x.group.order
    ys = [(j, z) for j, z in enumerate(y._c) if z]
    for i, zx in enumerate(x._c):
        if not zx:
            continue
        row = table[i]
        for j, zy in ys:
            out[row[j]] += zx * zy
    return RingElement(x.group, out)


def ring_pow(x: RingElement, m: int) -> RingElement:
    if m < 0:
        raise InvalidInput("negative powers are not defined in Z[G]")
    result = RingElement.unit(x.group)
    base = x
    while m:
        if m & 1:
            result = ring_mul(result, base)
        m >>= 1
        if m:
            base = ring_mul(base, base)
    return result


def inverse_image(x: RingElement) -> RingElement:
    """Coefficient of g in the result is the coefficient of g^-1 in ``x``."""
    inv = x.group.inv_table()
    return RingElement(x.group, [x._c[inv[i]] for i in range(x.group.order)])


def level_sets(x: RingElement) -> dict[int, set[GroupElement]]:
    """Group the support of ``x`` by coefficient value."""
    out: dict[int, set[GroupElement]] = {}
    for i, z in enumerate(x._c):
        if z:
            out.setdefault(z, set()).add(x.group.from_index(i))
    return out
