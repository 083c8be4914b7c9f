"""Finite abelian groups given by prime-power cyclic factors.

A primary (one-prime) group is described by its partition data: classes
(r, l) meaning l cyclic factors of order p^r, with exponents strictly
decreasing.  Elements are exponent vectors in the short-generator basis,
one residue per cyclic factor, and are enumerated mixed-radix
lexicographically.  The long presentation refines each factor of order p^s
into a chain of s generators x_{(s,j),a} with x^p at depth a equal to the
generator at depth a-1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

from .errors import GroupSpecError, SpecMismatchError
from .numtheory import is_prime


@dataclass(frozen=True)
class LongGenerator:
    """Chain generator x_{(s,j),a}: the p^(s-a) power of the short generator
    of the cyclic factor at place (s, j)."""

    place: tuple[int, int]  # (exponent s of the factor order p^s, copy index j)
    power: int  # depth a in the chain, 1 <= a <= s

    def __str__(self) -> str:
        return f"x{{{self.place},{self.power}}}"


@dataclass(frozen=True)
class PrimaryGroupSpec:
    """Abelian p-group: classes is a tuple of (exponent r, multiplicity l)
    with exponents strictly decreasing.  An empty tuple is the trivial group.
    """

    p: int
    classes: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise GroupSpecError(f"{self.p} is not prime")
        object.__setattr__(
            self, "classes", tuple((int(r), int(l)) for r, l in self.classes)
        )
        prev = None
        for r, l in self.classes:
            if r < 1 or l < 1:
                raise GroupSpecError(f"invalid class ({r},{l})")
            if prev is not None and r >= prev:
                raise GroupSpecError("exponents must be strictly decreasing")
            prev = r

    @cached_property
    def factor_orders(self) -> tuple[int, ...]:
        return tuple(self.p**r for r, l in self.classes for _ in range(l))

    @cached_property
    def factor_places(self) -> tuple[tuple[int, int], ...]:
        return tuple((r, j) for r, l in self.classes for j in range(1, l + 1))

    @cached_property
    def order(self) -> int:
        return self.p ** self.num_generators

    @cached_property
    def num_generators(self) -> int:
        # One long generator per composition step.
        return sum(r * l for r, l in self.classes)

    @cached_property
    def exponent(self) -> int:
        return self.p ** self.classes[0][0] if self.classes else 1

    def spec_text(self) -> str:
        exps = [str(r) for r, l in self.classes for _ in range(l)]
        return f"{self.p}:[{','.join(exps)}]"

    def __str__(self) -> str:
        if not self.classes:
            return "C_1"
        return " x ".join(f"C_{d}" for d in self.factor_orders)


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Finite abelian group as a product of primary parts with strictly
    increasing primes."""

    parts: tuple[PrimaryGroupSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        primes = [part.p for part in self.parts]
        if any(q <= p for p, q in zip(primes, primes[1:])):
            raise GroupSpecError("primary parts must have strictly increasing primes")

    @cached_property
    def factor_orders(self) -> tuple[int, ...]:
        return tuple(d for part in self.parts for d in part.factor_orders)

    @cached_property
    def order(self) -> int:
        return math.prod(part.order for part in self.parts)

    @cached_property
    def exponent(self) -> int:
        return math.prod(part.exponent for part in self.parts)

    @cached_property
    def part_offsets(self) -> tuple[int, ...]:
        # Index of each part's first factor in the concatenated exponent vector.
        offsets = []
        total = 0
        for part in self.parts:
            offsets.append(total)
            total += len(part.factor_orders)
        return tuple(offsets)

    def spec_text(self) -> str:
        return ";".join(part.spec_text() for part in self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "C_1"
        return " x ".join(str(part) for part in self.parts)


GroupSpec = Union[PrimaryGroupSpec, AbelianGroupSpec]


_PART_RE = re.compile(r"^(\d+):\[(\d+(?:,\d+)*)\]$")


def parse_group_spec(text: str) -> AbelianGroupSpec:
    """Parse the group grammar  prime ":[" exponents "]" (";"-separated parts).

    Exponents are listed with repetition and may come in any order.

    >>> str(parse_group_spec("2:[2,1,1]"))
    'C_4 x C_2 x C_2'
    >>> parse_group_spec("2:[1];3:[2]").order
    18
    """
    compact = text.replace(" ", "")
    if not compact:
        raise GroupSpecError("empty group spec")
    parts = []
    for chunk in compact.split(";"):
        m = _PART_RE.match(chunk)
        if m is None:
            raise GroupSpecError(f"cannot parse group part {chunk!r}")
        p = int(m.group(1))
        exps = sorted((int(e) for e in m.group(2).split(",")), reverse=True)
        if exps[-1] < 1:
            raise GroupSpecError(f"exponents must be positive in {chunk!r}")
        classes = []
        for r in exps:
            if classes and classes[-1][0] == r:
                classes[-1][1] += 1
            else:
                classes.append([r, 1])
        parts.append(PrimaryGroupSpec(p, tuple((r, l) for r, l in classes)))
    primes = [part.p for part in parts]
    if len(set(primes)) != len(primes):
        raise GroupSpecError("duplicate prime in group spec")
    parts.sort(key=lambda part: part.p)
    return AbelianGroupSpec(tuple(parts))


@dataclass(frozen=True)
class GroupElement:
    """Exponent vector of a group element, one reduced residue per factor."""

    spec: GroupSpec
    exps: tuple[int, ...]

    def __post_init__(self):
        orders = self.spec.factor_orders
        if len(self.exps) != len(orders):
            raise GroupSpecError("exponent vector has wrong length")
        if any(not 0 <= e < d for e, d in zip(self.exps, orders)):
            raise GroupSpecError("exponent out of range; use element() to reduce")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_mul(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        return _raw_element(
            self.spec,
            tuple((e * k) % d for e, d in zip(self.exps, self.spec.factor_orders)),
        )

    def inverse(self) -> "GroupElement":
        return self**-1

    def __hash__(self) -> int:
        # the group spec is deliberately left out: element containers are
        # per-group, and hashing it on every set lookup dominates closures.
        return hash(self.exps)

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.exps) + ")"


def _raw_element(spec: GroupSpec, exps: tuple[int, ...]) -> GroupElement:
    # Internal constructor for values already reduced; skips validation.
    g = object.__new__(GroupElement)
    object.__setattr__(g, "spec", spec)
    object.__setattr__(g, "exps", exps)
    return g


def element(spec: GroupSpec, exps: Iterable[int]) -> GroupElement:
    """Build an element, reducing each exponent modulo its factor order."""
    return GroupElement(
        spec, tuple(int(e) % d for e, d in zip(exps, spec.factor_orders))
    )


def identity(spec: GroupSpec) -> GroupElement:
    return _raw_element(spec, (0,) * len(spec.factor_orders))


def element_index(g: GroupElement) -> int:
    """Position of g in the mixed-radix lexicographic enumeration."""
    idx = 0
    for e, d in zip(g.exps, g.spec.factor_orders):
        idx = idx * d + e
    return idx


def element_from_index(spec: GroupSpec, idx: int) -> GroupElement:
    exps = []
    for d in reversed(spec.factor_orders):
        exps.append(idx % d)
        idx //= d
    return _raw_element(spec, tuple(reversed(exps)))


def elements(spec: GroupSpec):
    """All group elements in canonical enumeration order."""
    for idx in range(spec.order):
        yield element_from_index(spec, idx)


def group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.spec is not b.spec and a.spec != b.spec:
        raise SpecMismatchError("elements belong to different groups")
    return _raw_element(
        a.spec,
        tuple((x + y) % d for x, y, d in zip(a.exps, b.exps, a.spec.factor_orders)),
    )


def element_order(g: GroupElement) -> int:
    """Least k >= 1 with g^k = identity."""
    return math.lcm(
        *(d // math.gcd(e, d) for e, d in zip(g.exps, g.spec.factor_orders)), 1
    )


def subgroup_closure(
    spec: GroupSpec, gens: Iterable[GroupElement]
) -> frozenset[GroupElement]:
    """Smallest subgroup containing gens (the identity if gens is empty)."""
    gens = list(gens)
    for g in gens:
        if g.spec != spec:
            raise SpecMismatchError("generator from a different group")
    seen = {identity(spec)}
    frontier = list(seen)
    while frontier:
        fresh = []
        for h in frontier:
            for g in gens:
                w = group_mul(h, g)
                if w not in seen:
                    seen.add(w)
                    fresh.append(w)
        frontier = fresh
    return frozenset(seen)


def long_generator_sequence(spec: PrimaryGroupSpec) -> list[LongGenerator]:
    """Canonical composition-chain order of the long generators.

    Classes come exponent-descending, copies within a class descending, and
    the chain inside one factor depth-ascending, so every length-l prefix
    generates a subgroup of order p^l.

    >>> [str(g) for g in long_generator_sequence(PrimaryGroupSpec(3, ((1, 2),)))]
    ['x{(1, 2),1}', 'x{(1, 1),1}']
    """
    out = []
    for r, l in spec.classes:
        for j in range(l, 0, -1):
            for a in range(1, r + 1):
                out.append(LongGenerator((r, j), a))
    return out


def embed_generator(spec: PrimaryGroupSpec, gen: LongGenerator) -> GroupElement:
    """Long generator as an exponent vector: x_{(s,j),a} has exponent
    p^(s-a) in its own factor and 0 elsewhere."""
    places = spec.factor_places
    if gen.place not in places:
        raise GroupSpecError(f"no cyclic factor at place {gen.place}")
    s = gen.place[0]
    if not 1 <= gen.power <= s:
        raise GroupSpecError(f"power index {gen.power} out of range for place {gen.place}")
    pos = places.index(gen.place)
    exps = [0] * len(places)
    exps[pos] = spec.p ** (s - gen.power)
    return GroupElement(spec, tuple(exps))
