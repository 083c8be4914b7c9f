"""Exact arithmetic in cyclotomic fields Q(zeta_m) and in group algebras
with cyclotomic coefficients.

CycloNumber keeps the canonical reduced form: rational coordinates over the
power basis 1, zeta, ..., zeta^(phi(m)-1) modulo the m-th cyclotomic
polynomial.  CycloAlgebraElement stores an integer lattice over
(group element, zeta power) with one common denominator; products are then
plain convolutions over the extended abelian group G x C_m (zeta is a formal
m-th root of unity), and reduction modulo the cyclotomic polynomial happens
lazily, only for comparisons and output.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce as _reduce
from typing import Iterable, Sequence

from .algebra import AlgebraElement
from .errors import InconsistencyError, InvariantError, SpecMismatchError
from .groups import GroupElement, GroupSpec, element_index
from .kernels import convolve_ints, translate_indices
from .numtheory import cyclotomic_poly, euler_phi, mobius


def ramanujan_sum(m: int, t: int) -> int:
    """Sum of zeta_m^(t*k) over the k in 1..m coprime to m, as an exact
    integer via the closed form mu(m/d) * phi(m) / phi(m/d), d = gcd(t, m).

    >>> ramanujan_sum(4, 2)
    -2
    >>> ramanujan_sum(5, 0)
    4
    """
    if m < 1:
        raise InvariantError(f"modulus must be positive, got {m}")
    d = math.gcd(t % m, m)
    q = m // d
    return mobius(q) * (euler_phi(m) // euler_phi(q))


def ramanujan_sum_direct(m: int, t: int) -> "CycloNumber":
    """Same sum evaluated term by term in Q(zeta_m); the independent twin of
    the closed form."""
    total = CycloNumber.zero(m)
    for k in range(1, m + 1):
        if math.gcd(k, m) == 1:
            total = total + CycloNumber.zeta(m, t * k)
    return total


def _reduce_mod_cyclotomic(coeffs: list, m: int) -> list:
    # Polynomial remainder modulo the (monic, integer) m-th cyclotomic
    # polynomial; works for int or Fraction coefficients.
    phi_poly = cyclotomic_poly(m)
    deg = len(phi_poly) - 1
    c = list(coeffs)
    if len(c) < deg:
        c += [0] * (deg - len(c))
    for j in range(len(c) - 1, deg - 1, -1):
        v = c[j]
        if v:
            c[j] = 0
            for t in range(deg):
                if phi_poly[t]:
                    c[j - deg + t] -= v * phi_poly[t]
    return c[:deg]


class CycloNumber:
    """Element of Q(zeta_m) in the canonical reduced power basis."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable):
        reduced = _reduce_mod_cyclotomic([Fraction(c) for c in coeffs], m)
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in reduced))

    def __setattr__(self, *args):
        raise AttributeError("CycloNumber is immutable")

    @classmethod
    def zero(cls, m: int) -> "CycloNumber":
        return cls(m, ())

    @classmethod
    def one(cls, m: int) -> "CycloNumber":
        return cls(m, (1,))

    @classmethod
    def from_rational(cls, m: int, value) -> "CycloNumber":
        return cls(m, (Fraction(value),))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycloNumber":
        """The root of unity zeta_m^k."""
        k %= m
        return cls(m, (0,) * k + (1,))

    def _check_modulus(self, other: "CycloNumber"):
        if self.m != other.m:
            raise SpecMismatchError("cyclotomic moduli differ")

    def __add__(self, other: "CycloNumber") -> "CycloNumber":
        self._check_modulus(other)
        return CycloNumber(self.m, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycloNumber") -> "CycloNumber":
        self._check_modulus(other)
        return CycloNumber(self.m, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.m, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, CycloNumber):
            return cyclo_mul(self, other)
        return CycloNumber(self.m, (a * Fraction(other) for a in self.coeffs))

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycloNumber)
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InvariantError("value is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycloNumber":
        return cls(data["m"], (Fraction(s) for s in data["coeffs"]))

    def __repr__(self) -> str:
        return f"CycloNumber({self.m}, {[str(c) for c in self.coeffs]})"


def cyclo_mul(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    """Field product: polynomial product reduced modulo the cyclotomic
    polynomial of the shared modulus."""
    a._check_modulus(b)
    out = [Fraction(0)] * (2 * max(len(a.coeffs), 1) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, bj in enumerate(b.coeffs):
                if bj:
                    out[i + j] += ai * bj
    return CycloNumber(a.m, out)


def galois_apply(k: int, a: CycloNumber) -> CycloNumber:
    """Field automorphism zeta -> zeta^k (k coprime to the modulus)."""
    if math.gcd(k, a.m) != 1:
        raise InvariantError(f"{k} is not coprime to the modulus {a.m}")
    out = [Fraction(0)] * a.m
    for i, c in enumerate(a.coeffs):
        if c:
            out[(i * k) % a.m] += c
    return CycloNumber(a.m, out)


class CycloAlgebraElement:
    """Element of Q(zeta_m)[G] on the integer lattice over
    (group index, zeta power); index = group_index * m + zeta_power."""

    __slots__ = ("spec", "m", "nums", "den", "_reduced")

    def __init__(self, spec: GroupSpec, m: int, nums: Iterable[int], den: int = 1):
        nums = tuple(int(v) for v in nums)
        den = int(den)
        if len(nums) != spec.order * m:
            raise InvariantError("lattice length != group order * modulus")
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
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_reduced", None)

    def __setattr__(self, *args):
        raise AttributeError("CycloAlgebraElement is immutable")

    @property
    def _ext_orders(self) -> tuple[int, ...]:
        return self.spec.factor_orders + (self.m,)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, spec: GroupSpec, m: int) -> "CycloAlgebraElement":
        return cls(spec, m, (0,) * (spec.order * m))

    @classmethod
    def one(cls, spec: GroupSpec, m: int) -> "CycloAlgebraElement":
        nums = [0] * (spec.order * m)
        nums[0] = 1
        return cls(spec, m, nums)

    @classmethod
    def from_rational_element(cls, a: AlgebraElement, m: int) -> "CycloAlgebraElement":
        nums = [0] * (a.spec.order * m)
        for g, v in enumerate(a.nums):
            nums[g * m] = v
        return cls(a.spec, m, nums, a.den)

    @classmethod
    def monomial(
        cls, spec: GroupSpec, m: int, g: GroupElement, zeta_exp: int, den: int = 1
    ) -> "CycloAlgebraElement":
        """den^-1 * zeta^zeta_exp * g."""
        nums = [0] * (spec.order * m)
        nums[element_index(g) * m + zeta_exp % m] = 1
        return cls(spec, m, nums, den)

    @classmethod
    def from_cyclo_coeffs(
        cls, spec: GroupSpec, coeffs: Sequence[CycloNumber]
    ) -> "CycloAlgebraElement":
        if len(coeffs) != spec.order:
            raise InvariantError("wrong number of coefficients")
        m = coeffs[0].m
        if any(c.m != m for c in coeffs):
            raise SpecMismatchError("coefficients with mixed moduli")
        den = 1
        for c in coeffs:
            for f in c.coeffs:
                den = math.lcm(den, f.denominator)
        nums = [0] * (spec.order * m)
        for g, c in enumerate(coeffs):
            for e, f in enumerate(c.coeffs):
                nums[g * m + e] = f.numerator * (den // f.denominator)
        return cls(spec, m, nums, den)

    # -- canonical form -----------------------------------------------

    def reduced(self) -> tuple[int, tuple[int, ...]]:
        """(den, integer matrix of shape order x phi(m), flattened) with every
        zeta block reduced modulo the cyclotomic polynomial and the whole
        thing gcd-normalized."""
        if self._reduced is not None:
            return self._reduced
        deg = euler_phi(self.m)
        flat: list[int] = []
        for g in range(self.spec.order):
            block = list(self.nums[g * self.m : (g + 1) * self.m])
            flat.extend(_reduce_mod_cyclotomic(block, self.m))
        den = self.den
        g = den
        for v in flat:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            flat = [v // g for v in flat]
            den //= g
        if not any(flat):
            den = 1
        if len(flat) != deg * self.spec.order:
            raise InconsistencyError("reduction produced a lattice of the wrong size")
        result = (den, tuple(flat))
        object.__setattr__(self, "_reduced", result)
        return result

    def cyclo_coeff(self, at) -> CycloNumber:
        idx = element_index(at) if isinstance(at, GroupElement) else int(at)
        den, flat = self.reduced()
        deg = euler_phi(self.m)
        block = flat[idx * deg : (idx + 1) * deg]
        return CycloNumber(self.m, (Fraction(v, den) for v in block))

    @property
    def coeffs(self) -> tuple[CycloNumber, ...]:
        return tuple(self.cyclo_coeff(i) for i in range(self.spec.order))

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other: "CycloAlgebraElement"):
        if self.spec != other.spec:
            raise SpecMismatchError("elements belong to different group algebras")
        if self.m != other.m:
            raise SpecMismatchError("cyclotomic moduli differ")

    def __add__(self, other: "CycloAlgebraElement") -> "CycloAlgebraElement":
        self._check_compatible(other)
        return CycloAlgebraElement(
            self.spec,
            self.m,
            (a * other.den + b * self.den for a, b in zip(self.nums, other.nums)),
            self.den * other.den,
        )

    def __sub__(self, other: "CycloAlgebraElement") -> "CycloAlgebraElement":
        self._check_compatible(other)
        return CycloAlgebraElement(
            self.spec,
            self.m,
            (a * other.den - b * self.den for a, b in zip(self.nums, other.nums)),
            self.den * other.den,
        )

    def __neg__(self) -> "CycloAlgebraElement":
        return CycloAlgebraElement(self.spec, self.m, (-v for v in self.nums), self.den)

    def __mul__(self, other):
        if not isinstance(other, CycloAlgebraElement):
            other = Fraction(other)
            return CycloAlgebraElement(
                self.spec,
                self.m,
                (v * other.numerator for v in self.nums),
                self.den * other.denominator,
            )
        self._check_compatible(other)
        nums = convolve_ints(self.nums, other.nums, self._ext_orders)
        return CycloAlgebraElement(self.spec, self.m, nums, self.den * other.den)

    def __rmul__(self, other):
        return self * other

    def zeta_scale(self, k: int) -> "CycloAlgebraElement":
        """Multiply by the root of unity zeta^k (a rotation of every block)."""
        k %= self.m
        nums = [0] * len(self.nums)
        for g in range(self.spec.order):
            base = g * self.m
            for e in range(self.m):
                v = self.nums[base + e]
                if v:
                    nums[base + (e + k) % self.m] = v
        return CycloAlgebraElement(self.spec, self.m, nums, self.den)

    def group_translate(self, g: GroupElement) -> "CycloAlgebraElement":
        """Left multiplication by the group element g."""
        if g.spec != self.spec:
            raise SpecMismatchError("element from a different group")
        perm = translate_indices(element_index(g), self.spec.factor_orders)
        nums = [0] * len(self.nums)
        for j in range(self.spec.order):
            tgt = int(perm[j]) * self.m
            src = j * self.m
            nums[tgt : tgt + self.m] = self.nums[src : src + self.m]
        return CycloAlgebraElement(self.spec, self.m, nums, self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloAlgebraElement):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.m == other.m
            and self.reduced() == other.reduced()
        )

    def __hash__(self) -> int:
        return hash((self.m, self.reduced()))

    def is_zero(self) -> bool:
        return not any(self.reduced()[1])

    # -- rationality --------------------------------------------------

    def is_rational(self) -> bool:
        """True when every coefficient lies in Q (zeta components vanish)."""
        den, flat = self.reduced()
        deg = euler_phi(self.m)
        for g in range(self.spec.order):
            if any(flat[g * deg + 1 : (g + 1) * deg]):
                return False
        return True

    def rational_part(self) -> AlgebraElement:
        if not self.is_rational():
            raise InconsistencyError("element has irrational coefficients")
        den, flat = self.reduced()
        deg = euler_phi(self.m)
        return AlgebraElement(
            self.spec, (flat[g * deg] for g in range(self.spec.order)), den
        )

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [c.to_json() for c in self.coeffs]}

    def __repr__(self) -> str:
        return f"CycloAlgebraElement({self.spec.spec_text()}, m={self.m})"


def cyclo_sum(terms: Iterable[CycloAlgebraElement]) -> CycloAlgebraElement:
    """Sum of a nonempty sequence of compatible elements."""
    terms = list(terms)
    if not terms:
        raise InvariantError("empty sum")
    return _reduce(lambda a, b: a + b, terms)
