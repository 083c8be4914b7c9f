"""Exact arithmetic in the rational group algebra Q[G].

Elements are dense coefficient vectors over the canonical element
enumeration, stored as integer numerators on one common denominator and
fully reduced, so equality is plain tuple comparison with zero tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InconsistencyError, InvariantError, SpecMismatchError
from .groups import (
    GroupElement,
    GroupSpec,
    PrimaryGroupSpec,
    element_from_index,
    element_index,
    identity,
    subgroup_closure,
)
from .kernels import convolve_ints, translate_indices
from .numtheory import euler_phi, prime_power


class AlgebraElement:
    """Element of Q[G] with exact rational coefficients."""

    __slots__ = ("spec", "nums", "den")

    def __init__(self, spec: GroupSpec, nums: Iterable[int], den: int = 1):
        nums = tuple(int(v) for v in nums)
        den = int(den)
        if len(nums) != spec.order:
            raise InvariantError("coefficient vector length != group order")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = tuple(-v for v in nums)
            den = -den
        g = den
        for v in nums:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            nums = tuple(v // g for v in nums)
            den //= g
        if not any(nums):
            den = 1
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("AlgebraElement is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, spec: GroupSpec) -> "AlgebraElement":
        return cls(spec, (0,) * spec.order)

    @classmethod
    def one(cls, spec: GroupSpec) -> "AlgebraElement":
        return cls.basis(spec, identity(spec))

    @classmethod
    def basis(cls, spec: GroupSpec, g: GroupElement) -> "AlgebraElement":
        nums = [0] * spec.order
        nums[element_index(g)] = 1
        return cls(spec, nums)

    @classmethod
    def from_coeffs(cls, spec: GroupSpec, coeffs) -> "AlgebraElement":
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs), 1)
        return cls(spec, (c.numerator * (den // c.denominator) for c in coeffs), den)

    @classmethod
    def subgroup_average(
        cls, spec: GroupSpec, subgroup: Iterable[GroupElement]
    ) -> "AlgebraElement":
        """The idempotent (1/|H|) * sum of the elements of a subgroup H."""
        members = list(subgroup)
        nums = [0] * spec.order
        for h in members:
            nums[element_index(h)] += 1
        return cls(spec, nums, len(members))

    # -- accessors ----------------------------------------------------

    def coeff(self, at) -> Fraction:
        idx = element_index(at) if isinstance(at, GroupElement) else int(at)
        return Fraction(self.nums[idx], self.den)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.nums)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.nums) if v)

    def is_zero(self) -> bool:
        return not any(self.nums)

    # -- arithmetic ---------------------------------------------------

    def _check_spec(self, other: "AlgebraElement"):
        if self.spec != other.spec:
            raise SpecMismatchError("elements belong to different group algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_spec(other)
        return AlgebraElement(
            self.spec,
            (a * other.den + b * self.den for a, b in zip(self.nums, other.nums)),
            self.den * other.den,
        )

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_spec(other)
        return AlgebraElement(
            self.spec,
            (a * other.den - b * self.den for a, b in zip(self.nums, other.nums)),
            self.den * other.den,
        )

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.spec, (-v for v in self.nums), self.den)

    def scaled(self, c) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement(
            self.spec,
            (v * c.numerator for v in self.nums),
            self.den * c.denominator,
        )

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.spec == other.spec
            and self.den == other.den
            and self.nums == other.nums
        )

    def __hash__(self) -> int:
        return hash((self.den, self.nums))

    def __repr__(self) -> str:
        return f"AlgebraElement({self.spec.spec_text()}, {list(self.to_strings())})"

    # -- serialization ------------------------------------------------

    def to_strings(self) -> list[str]:
        """Coefficients as exact "num/den" strings in enumeration order."""
        out = []
        for v in self.nums:
            f = Fraction(v, self.den)
            out.append(f"{f.numerator}/{f.denominator}")
        return out

    @classmethod
    def from_strings(cls, spec: GroupSpec, strings: Sequence[str]) -> "AlgebraElement":
        return cls.from_coeffs(spec, (Fraction(s) for s in strings))


def convolve(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Group-algebra product: coefficient of g*h accumulates a_g * b_h."""
    a._check_spec(b)
    nums = convolve_ints(a.nums, b.nums, a.spec.factor_orders)
    return AlgebraElement(a.spec, nums, a.den * b.den)


def is_idempotent(a: AlgebraElement) -> bool:
    return convolve(a, a) == a


def are_orthogonal(a: AlgebraElement, b: AlgebraElement) -> bool:
    return convolve(a, b).is_zero()


def translate(g: GroupElement, a: AlgebraElement) -> AlgebraElement:
    """Left multiplication by the group element g (a basis permutation)."""
    if g.spec != a.spec:
        raise SpecMismatchError("element from a different group")
    perm = translate_indices(element_index(g), a.spec.factor_orders)
    nums = [0] * a.spec.order
    for j, v in enumerate(a.nums):
        if v:
            nums[perm[j]] = v
    return AlgebraElement(a.spec, nums, a.den)


@dataclass(frozen=True)
class FactoredIdempotent:
    """Symbolic idempotent: the average over the subgroup generated by
    kernel_gens, optionally times (1 - average of the primed element's
    p-th-root cycle)."""

    spec: PrimaryGroupSpec
    kernel_gens: tuple[GroupElement, ...]
    primed: GroupElement | None = None


def expand_from_subgroup(
    spec: PrimaryGroupSpec,
    kernel: frozenset[GroupElement],
    primed: GroupElement | None,
) -> AlgebraElement:
    """Expansion of K-average times (1 - (1 + z + ... + z^(p-1))/p) for an
    already-computed subgroup K."""
    if primed is None:
        return AlgebraElement.subgroup_average(spec, kernel)
    if primed in kernel:
        raise InvariantError("primed element lies in the averaged subgroup")
    p = spec.p
    size = len(kernel)
    idxs = np.fromiter((element_index(k) for k in kernel), dtype=np.int64, count=size)
    perm = translate_indices(element_index(primed), spec.factor_orders)
    # common denominator p*|K|: p at kernel positions minus the z-cycle counts
    nums = np.zeros(spec.order, dtype=np.int64)
    nums[idxs] = p
    cur = idxs
    for _ in range(p):
        nums[cur] -= 1  # each translate of K has distinct indices
        cur = perm[cur]
    return AlgebraElement(spec, nums.tolist(), p * size)


def expand_factored(f: FactoredIdempotent) -> AlgebraElement:
    """Exact coefficient vector of a factored idempotent.

    With K the subgroup generated by kernel_gens and z the primed element,
    the expansion is K-average times (1 - (1 + z + ... + z^(p-1))/p).
    """
    return expand_from_subgroup(
        f.spec, subgroup_closure(f.spec, f.kernel_gens), f.primed
    )


def fraction_free_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free (Bareiss)
    elimination; all intermediate values stay integral."""
    m = [list(row) for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = None
        for i in range(rank, n_rows):
            if m[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, n_rows):
            factor = m[i][col]
            for j in range(col, n_cols):
                m[i][j] = (pivot * m[i][j] - factor * m[rank][j]) // prev
        prev = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


@dataclass(frozen=True)
class KernelInfo:
    """Kernel subgroup of an idempotent plus the invariants of the simple
    component it generates."""

    kernel: frozenset[GroupElement]
    quotient_order: int
    dim: int

    @property
    def field_index(self) -> int | None:
        """r with quotient order p^r, or None when it is not a prime power."""
        if self.quotient_order == 1:
            return 0
        pp = prime_power(self.quotient_order)
        return pp[1] if pp else None


def kernel_subgroup(e: AlgebraElement) -> frozenset[GroupElement]:
    """{g : g*e = e}, computed by direct translation tests over all of G."""
    spec = e.spec
    members = []
    for i in range(spec.order):
        perm = translate_indices(i, spec.factor_orders)
        if all(e.nums[perm[j]] == v for j, v in enumerate(e.nums)):
            members.append(element_from_index(spec, i))
    return frozenset(members)


def kernel_and_field(e: AlgebraElement) -> KernelInfo:
    """Kernel, cyclic quotient order and exact component dimension of a
    primitive idempotent; raises if e is not idempotent or not primitive."""
    if not is_idempotent(e):
        raise InvariantError("input is not an idempotent")
    spec = e.spec
    rows: dict[tuple[int, ...], None] = {}
    kernel = []
    for i in range(spec.order):
        perm = translate_indices(i, spec.factor_orders)
        moved = [0] * spec.order
        for j, v in enumerate(e.nums):
            if v:
                moved[perm[j]] = v
        moved = tuple(moved)
        if moved == e.nums:
            kernel.append(element_from_index(spec, i))
        rows.setdefault(moved)
    quotient = spec.order // len(kernel)
    dim = fraction_free_rank(list(rows))
    if dim != euler_phi(quotient):
        raise InconsistencyError(
            f"component dimension {dim} != phi({quotient}); input is not primitive"
        )
    return KernelInfo(frozenset(kernel), quotient, dim)
