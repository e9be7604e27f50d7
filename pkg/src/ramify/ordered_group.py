"""Ordered abelian groups of finite rational rank, with exact arithmetic.

Three families cover every value group used in this package:

* ``int_lex(n)``    -- Z^n with the lexicographic order (discrete for n = 1,
  non-archimedean for n >= 2).
* ``p_inverted(p)`` -- Z[1/p], a dense subgroup of the rationals.
* ``quadratic(d)``  -- Q + Q*sqrt(d), a dense subgroup of the reals.

Elements are immutable and exact: integer tuples for ``int_lex``, Fractions
with p-power denominator for ``p_inverted``, pairs of Fractions for
``quadratic``.  No comparison ever touches floating point; the sign of
a + b*sqrt(d) is decided by comparing a^2 against d*b^2, which is
conclusive because sqrt(d) is irrational.

Each group sits inside its divisible hull (Q^n lex, Q, Q + Q*sqrt(d)).
Hull points get their own type: a ``HullElement`` never compares equal to a
``GroupElement``, so confusing the two spaces is a type error rather than a
silent coercion.  Membership of a hull point in the group is decidable
(integrality, p-power denominator, or always for the quadratic case).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

KIND_INT_LEX = "zlex"
KIND_P_INVERTED = "zp"
KIND_QUADRATIC = "quad"

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _is_squarefree_nonsquare(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class GroupDescriptor:
    """Names one ordered group.

    ``param`` is the rank for ``zlex``, the inverted prime for ``zp`` and
    the radicand for ``quad``.
    """

    kind: str
    param: int

    def __post_init__(self) -> None:
        if self.kind == KIND_INT_LEX:
            if self.param < 1:
                raise ValueError(f"lexicographic rank must be >= 1, got {self.param}")
        elif self.kind == KIND_P_INVERTED:
            if not _is_prime(self.param):
                raise ValueError(f"inverted denominator must be prime, got {self.param}")
        elif self.kind == KIND_QUADRATIC:
            if not _is_squarefree_nonsquare(self.param):
                raise ValueError(
                    f"radicand must be a squarefree non-square >= 2, got {self.param}"
                )
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")

    @property
    def is_dense(self) -> bool:
        return self.kind != KIND_INT_LEX

    @property
    def rank(self) -> int:
        return self.param if self.kind == KIND_INT_LEX else 1

    def __str__(self) -> str:
        return f"{self.kind}:{self.param}"


def int_lex(n: int) -> GroupDescriptor:
    return GroupDescriptor(KIND_INT_LEX, n)


def p_inverted(p: int) -> GroupDescriptor:
    return GroupDescriptor(KIND_P_INVERTED, p)


def quadratic(d: int) -> GroupDescriptor:
    return GroupDescriptor(KIND_QUADRATIC, d)


def quad_sign(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for squarefree non-square d."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    sa = 1 if a > 0 else -1
    sb = 1 if b > 0 else -1
    if sa == sb:
        return sa
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:  # would force sqrt(d) rational
        raise ArithmeticError(f"sqrt({d}) behaved rationally; invalid radicand")
    return sa if lhs > rhs else sb


def _p_power_denominator(q: Fraction, p: int) -> bool:
    den = q.denominator
    while den % p == 0:
        den //= p
    return den == 1


def _coerce_rational(raw) -> Fraction:
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, int):
        return Fraction(raw)
    raise TypeError(f"expected an exact rational, got {type(raw).__name__}")


def _coerce_value(descriptor: GroupDescriptor, raw, hull: bool):
    kind = descriptor.kind
    if kind == KIND_INT_LEX:
        if isinstance(raw, (int, Fraction)):
            raw = (raw,)
        coords = tuple(_coerce_rational(c) for c in raw)
        if len(coords) != descriptor.param:
            raise ValueError(
                f"expected {descriptor.param} coordinates, got {len(coords)}"
            )
        if hull:
            return coords
        if any(c.denominator != 1 for c in coords):
            raise ValueError(f"coordinates {coords} do not lie in Z^{descriptor.param}")
        return tuple(int(c) for c in coords)
    if kind == KIND_P_INVERTED:
        q = _coerce_rational(raw)
        if not hull and not _p_power_denominator(q, descriptor.param):
            raise ValueError(f"{q} has a denominator prime to {descriptor.param}")
        return q
    # quadratic: the group equals its hull
    if isinstance(raw, (int, Fraction)):
        raw = (raw, 0)
    a, b = raw
    return (_coerce_rational(a), _coerce_rational(b))


@dataclass(frozen=True)
class _Element:
    descriptor: GroupDescriptor
    value: Union[tuple, Fraction]

    def _check_peer(self, other: "_Element") -> None:
        if type(other) is not type(self):
            raise TypeError(
                f"cannot mix {type(self).__name__} with {type(other).__name__}"
            )
        if other.descriptor != self.descriptor:
            raise ValueError(
                f"group mismatch: {self.descriptor} vs {other.descriptor}"
            )

    def __lt__(self, other) -> bool:
        return compare(self, other) < 0

    def __le__(self, other) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other) -> bool:
        return compare(self, other) >= 0

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __neg__(self):
        return neg(self)


class GroupElement(_Element):
    """A point of the group itself."""

    __slots__ = ()


class HullElement(_Element):
    """A point of the divisible hull (rational coordinates throughout)."""

    __slots__ = ()


def element(descriptor: GroupDescriptor, raw) -> GroupElement:
    return GroupElement(descriptor, _coerce_value(descriptor, raw, hull=False))


def hull_element(descriptor: GroupDescriptor, raw) -> HullElement:
    return HullElement(descriptor, _coerce_value(descriptor, raw, hull=True))


def zero(descriptor: GroupDescriptor, hull: bool = False):
    if descriptor.kind == KIND_INT_LEX:
        raw = (0,) * descriptor.param
    else:
        raw = 0
    return hull_element(descriptor, raw) if hull else element(descriptor, raw)


def compare(x: _Element, y: _Element) -> int:
    """Three-way comparison; requires matching type and descriptor."""
    x._check_peer(y)
    kind = x.descriptor.kind
    if kind == KIND_QUADRATIC:
        a = x.value[0] - y.value[0]
        b = x.value[1] - y.value[1]
        return quad_sign(a, b, x.descriptor.param)
    if x.value == y.value:
        return 0
    return 1 if x.value > y.value else -1


def add(x: _Element, y: _Element) -> _Element:
    x._check_peer(y)
    kind = x.descriptor.kind
    if kind == KIND_P_INVERTED:
        value = x.value + y.value
    else:
        value = tuple(a + b for a, b in zip(x.value, y.value))
    return type(x)(x.descriptor, _coerce_value(x.descriptor, value, hull=isinstance(x, HullElement)))


def neg(x: _Element) -> _Element:
    if x.descriptor.kind == KIND_P_INVERTED:
        value = -x.value
    else:
        value = tuple(-a for a in x.value)
    return type(x)(x.descriptor, _coerce_value(x.descriptor, value, hull=isinstance(x, HullElement)))


def int_scale(n: int, x: _Element) -> _Element:
    if not isinstance(n, int):
        raise TypeError(f"scale factor must be an integer, got {type(n).__name__}")
    if x.descriptor.kind == KIND_P_INVERTED:
        value = n * x.value
    else:
        value = tuple(n * a for a in x.value)
    return type(x)(x.descriptor, _coerce_value(x.descriptor, value, hull=isinstance(x, HullElement)))


def divide_exact(x: _Element, n: int):
    """x / n within the same space, or None when no such point exists.

    Hull points and quadratic group points always divide.  For ``int_lex``
    every coordinate must be divisible; for ``p_inverted`` the quotient must
    keep a p-power denominator.
    """
    if not isinstance(n, int) or n == 0:
        raise ValueError(f"divisor must be a nonzero integer, got {n!r}")
    hull = isinstance(x, HullElement)
    kind = x.descriptor.kind
    if kind == KIND_P_INVERTED:
        q = x.value / n
        if not hull and not _p_power_denominator(q, x.descriptor.param):
            return None
        return type(x)(x.descriptor, q)
    if kind == KIND_QUADRATIC:
        return type(x)(x.descriptor, (x.value[0] / n, x.value[1] / n))
    coords = tuple(Fraction(a, n) for a in x.value)
    if not hull and any(c.denominator != 1 for c in coords):
        return None
    if not hull:
        coords = tuple(int(c) for c in coords)
    return type(x)(x.descriptor, coords)


def min_positive(descriptor: GroupDescriptor) -> Optional[GroupElement]:
    """Least positive element, or None for the dense groups."""
    if descriptor.kind != KIND_INT_LEX:
        return None
    return element(descriptor, (0,) * (descriptor.param - 1) + (1,))


def to_hull(x: GroupElement) -> HullElement:
    if not isinstance(x, GroupElement):
        raise TypeError(f"expected a GroupElement, got {type(x).__name__}")
    return hull_element(x.descriptor, x.value)


def in_group(h: HullElement) -> bool:
    """Whether a hull point lies in the group itself."""
    if not isinstance(h, HullElement):
        raise TypeError(f"expected a HullElement, got {type(h).__name__}")
    kind = h.descriptor.kind
    if kind == KIND_INT_LEX:
        return all(c.denominator == 1 for c in h.value)
    if kind == KIND_P_INVERTED:
        return _p_power_denominator(h.value, h.descriptor.param)
    return True


def from_hull(h: HullElement) -> GroupElement:
    if not in_group(h):
        raise ValueError(f"{h.value} is not a group point of {h.descriptor}")
    return element(h.descriptor, h.value)


def is_positive(x: _Element) -> bool:
    return compare(x, zero(x.descriptor, hull=isinstance(x, HullElement))) > 0


def sign(x: _Element) -> int:
    return compare(x, zero(x.descriptor, hull=isinstance(x, HullElement)))
