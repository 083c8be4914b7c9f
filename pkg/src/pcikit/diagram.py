"""Inductive construction of the primitive central idempotents of Q[G].

Along a composition chain G_0 < G_1 < ... < G_N (one new chain generator
per step), the idempotent set of each level refines the previous one:

* the trivial idempotent (full subgroup average) splits into the new
  average and its complement;
* a nontrivial idempotent with kernel K and primed element z persists
  unchanged when the quotient G_{l+1}/K stays cyclic, which happens exactly
  when no element of the new coset u*G_l has its p-th power inside K;
* otherwise any such coset element w gives the p enlarged kernels
  <K, z^i * w> (w = u itself whenever u^p lies in K, which covers every
  split in elementary abelian and cyclic chains), and the vertex splits
  into those p children, keeping the same primed element.

Leaves at the last level are the complete set of primitive central
idempotents of Q[G].  The same chain refines over Q(zeta_m), where every
level splits into p one-dimensional components; summing those over Galois
orbits collapses back to the rational set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    AlgebraElement,
    FactoredIdempotent,
    expand_factored,
    expand_from_subgroup,
)
from .cyclotomic import CycloAlgebraElement, CycloNumber, cyclo_sum
from .errors import (
    CapExceededError,
    GroupSpecError,
    InconsistencyError,
    InvariantError,
    SpecMismatchError,
)
from .groups import (
    AbelianGroupSpec,
    GroupElement,
    LongGenerator,
    PrimaryGroupSpec,
    element_index,
    element_order,
    embed_generator,
    identity,
    long_generator_sequence,
    subgroup_closure,
)


@dataclass(frozen=True)
class PciVertex:
    """One idempotent of Q[G_level]: a factored form plus tracked kernel
    size and the index r of the component field Q(zeta_{p^r})."""

    level: int
    index: int
    form: FactoredIdempotent
    trivial: bool
    kernel_order: int
    field_index: int

    def expansion(self) -> AlgebraElement:
        return expand_factored(self.form)


@dataclass(frozen=True)
class PciDiagram:
    """Leveled refinement graph of idempotents along a composition chain."""

    spec: PrimaryGroupSpec
    generators: tuple[GroupElement, ...]
    generator_labels: tuple[LongGenerator, ...]
    levels: tuple[tuple[PciVertex, ...], ...]
    edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    leaf_kernels: tuple[frozenset[GroupElement], ...]

    @property
    def leaves(self) -> tuple[PciVertex, ...]:
        return self.levels[-1]

    def leaf_expansions(self) -> list[AlgebraElement]:
        # Kernel subgroups were accumulated during the build; reusing them
        # here skips one closure computation per leaf.
        return [
            expand_from_subgroup(self.spec, kernel, v.form.primed)
            for v, kernel in zip(self.leaves, self.leaf_kernels)
        ]

    def level_sizes(self) -> list[int]:
        return [len(level) for level in self.levels]

    def level_subgroup(self, level: int) -> frozenset[GroupElement]:
        return subgroup_closure(self.spec, self.generators[:level])


def cyclic_group_spec(p: int, n: int) -> PrimaryGroupSpec:
    """The cyclic group of order p^n (trivial for n = 0)."""
    if n < 0:
        raise GroupSpecError(f"negative exponent {n}")
    return PrimaryGroupSpec(p, ((n, 1),) if n >= 1 else ())


def _validate_generator_order(spec: PrimaryGroupSpec, labels: Sequence[LongGenerator]):
    canonical = long_generator_sequence(spec)
    if sorted(labels, key=lambda g: (g.place, g.power)) != sorted(
        canonical, key=lambda g: (g.place, g.power)
    ):
        raise GroupSpecError("generator order is not a permutation of the chain generators")
    # Power-monotone per factor: each new generator's p-th power must already
    # be available, otherwise the refinement steps are not defined.
    depth: dict[tuple[int, int], int] = {}
    for g in labels:
        if depth.get(g.place, 0) != g.power - 1:
            raise GroupSpecError("generator order is not power-monotone per factor")
        depth[g.place] = g.power


def alternate_generator_labels(spec: PrimaryGroupSpec) -> list[LongGenerator]:
    """A non-canonical but power-monotone chain order: exponent classes
    ascending and copies ascending."""
    out = []
    for r, l in reversed(spec.classes):
        for j in range(1, l + 1):
            for a in range(1, r + 1):
                out.append(LongGenerator((r, j), a))
    return out


def _split_witness(
    u: GroupElement,
    level_elements: list[GroupElement],
    kernel: frozenset[GroupElement],
    p: int,
    level_order: int,
) -> GroupElement | None:
    """An element w of the coset u*G_l with w^p in K, or None.

    None means G_{l+1}/K stays cyclic and the vertex persists; that holds
    exactly when u^p generates the cyclic G_l/K, a single powering test.
    Otherwise a witness exists and the p subgroups <K, z^i w> are the
    children kernels; w := u when valid, else the first hit scanning G_l in
    enumeration order, for reproducible output.
    """
    up = u**p
    if up in kernel:
        return u
    quotient = level_order // len(kernel)
    if up ** (quotient // p) not in kernel:
        return None
    for g in level_elements:
        w = u * g
        if w**p in kernel:
            return w
    raise InconsistencyError("no coset witness despite a non-cyclic quotient")


def _coset_span(
    kernel: frozenset[GroupElement], w: GroupElement, p: int
) -> frozenset[GroupElement]:
    # The subgroup <K, w> as the union of the cosets K*w^c, valid since
    # w^p lies in K.
    out = set()
    t = identity(w.spec)
    for _ in range(p):
        out.update(k * t for k in kernel)
        t = t * w
    return frozenset(out)


def build_pci_diagram(
    spec: PrimaryGroupSpec,
    generator_labels: Sequence[LongGenerator] | None = None,
    max_order: int | None = None,
) -> PciDiagram:
    """Build the full refinement diagram for an abelian p-group.

    The leaves are the complete primitive central idempotent set of Q[G].
    """
    if max_order is not None and spec.order > max_order:
        raise CapExceededError(f"group order {spec.order} exceeds cap {max_order}")
    if generator_labels is None:
        labels = long_generator_sequence(spec)
    else:
        labels = list(generator_labels)
        _validate_generator_order(spec, labels)
    gens = [embed_generator(spec, lab) for lab in labels]
    p = spec.p

    root = PciVertex(0, 0, FactoredIdempotent(spec, ()), True, 1, 0)
    levels: list[tuple[PciVertex, ...]] = [(root,)]
    edges: list[tuple[tuple[int, int], tuple[int, int]]] = []
    level_set: frozenset[GroupElement] = frozenset([identity(spec)])
    kernel_sets: dict[int, frozenset[GroupElement]] = {0: level_set}

    for l, u in enumerate(gens):
        level_elements = sorted(level_set, key=element_index)
        next_level_set = frozenset(
            g * t for g in level_set for t in (u**c for c in range(p))
        )
        if len(next_level_set) != p * len(level_set):
            raise InconsistencyError("chain generator does not extend the subgroup")
        nxt: list[PciVertex] = []
        next_kernels: dict[int, frozenset[GroupElement]] = {}

        def attach(parent: PciVertex, vertex: PciVertex, kernel):
            nxt.append(vertex)
            next_kernels[vertex.index] = kernel
            edges.append(((l, parent.index), (l + 1, vertex.index)))

        for v in levels[l]:
            kernel = kernel_sets[v.index]
            if v.trivial:
                attach(
                    v,
                    PciVertex(
                        l + 1,
                        len(nxt),
                        FactoredIdempotent(spec, tuple(gens[: l + 1])),
                        True,
                        v.kernel_order * p,
                        0,
                    ),
                    next_level_set,
                )
                attach(
                    v,
                    PciVertex(
                        l + 1,
                        len(nxt),
                        FactoredIdempotent(spec, v.form.kernel_gens, u),
                        False,
                        v.kernel_order,
                        1,
                    ),
                    kernel,
                )
            else:
                z = v.form.primed
                w = _split_witness(u, level_elements, kernel, p, len(level_set))
                if w is None:
                    # The component stays simple; the vertex carries over.
                    attach(
                        v,
                        PciVertex(
                            l + 1, len(nxt), v.form, False, v.kernel_order, v.field_index + 1
                        ),
                        kernel,
                    )
                else:
                    for i in range(p):
                        extra = (z**i) * w
                        grown_set = _coset_span(kernel, extra, p)
                        if len(grown_set) != p * len(kernel) or z in grown_set:
                            raise InconsistencyError(
                                "split produced an invalid child kernel"
                            )
                        attach(
                            v,
                            PciVertex(
                                l + 1,
                                len(nxt),
                                FactoredIdempotent(
                                    spec, v.form.kernel_gens + (extra,), z
                                ),
                                False,
                                v.kernel_order * p,
                                v.field_index,
                            ),
                            grown_set,
                        )
        levels.append(tuple(nxt))
        level_set = next_level_set
        kernel_sets = next_kernels

    leaf_kernels = tuple(kernel_sets[i] for i in range(len(levels[-1])))
    return PciDiagram(
        spec, tuple(gens), tuple(labels), tuple(levels), tuple(edges), leaf_kernels
    )


def cyclic_rational_pcis(p: int, n: int) -> list[AlgebraElement]:
    """Closed-form primitive central idempotents of Q[C_{p^n}]: the full
    average, plus one difference of consecutive chain-subgroup averages per
    chain step (n + 1 idempotents in total)."""
    spec = cyclic_group_spec(p, n)
    if n == 0:
        return [AlgebraElement.one(spec)]
    order = spec.order

    def chain_average(i: int) -> AlgebraElement:
        # Average over the subgroup of order p^i.
        step = p ** (n - i)
        nums = [0] * order
        for j in range(0, order, step):
            nums[j] = 1
        return AlgebraElement(spec, nums, p**i)

    return [chain_average(n)] + [
        chain_average(i - 1) - chain_average(i) for i in range(1, n + 1)
    ]


def _root_average_factor(
    spec: PrimaryGroupSpec, m: int, g: GroupElement, root_exp: int
) -> CycloAlgebraElement:
    """(1/p) * sum over c < p of (zeta^root_exp * g)^c."""
    p = spec.p
    nums = [0] * (spec.order * m)
    w = identity(spec)
    e = 0
    for _ in range(p):
        nums[element_index(w) * m + e] += 1
        w = w * g
        e = (e + root_exp) % m
    return CycloAlgebraElement(spec, m, nums, p)


def splitting_field_pcis(
    p: int, n: int, max_order: int | None = None
) -> list[CycloAlgebraElement]:
    """The p^n primitive idempotents of Q(zeta_{p^n})[C_{p^n}], built as the
    product of one root-twisted average per chain generator.

    Index t carries the character sending the group generator to
    zeta^t, so the t-th result equals (1/p^n) * sum_k zeta^(-t*k) x^k.
    """
    spec = cyclic_group_spec(p, n)
    m = spec.order
    if max_order is not None and m > max_order:
        raise CapExceededError(f"group order {m} exceeds cap {max_order}")
    if n == 0:
        return [CycloAlgebraElement.one(spec, 1)]
    gen = GroupElement(spec, (1,))
    out = []
    for t in range(m):
        acc = CycloAlgebraElement.one(spec, m)
        for j in range(1, n + 1):
            # Chain generator x_j = gen^(p^(n-j)) paired with a compatible
            # p^j-th root: the p-th power of each root is the previous one.
            acc = acc * _root_average_factor(
                spec, m, gen ** (p ** (n - j)), (-t * p ** (n - j)) % m
            )
        out.append(acc)
    return out


def lift_into_extension(eta: CycloAlgebraElement) -> CycloAlgebraElement:
    """Reindex a splitting idempotent of C_{p^(n-1)} into C_{p^n}: the small
    group embeds as the subgroup of p-th powers, and zeta_{p^(n-1)} becomes
    the p-th power of the larger root of unity."""
    small = eta.spec
    if not isinstance(small, PrimaryGroupSpec) or len(small.factor_orders) > 1:
        raise InvariantError("input must live over a cyclic p-power group")
    if eta.m != small.order:
        raise SpecMismatchError("modulus must equal the group order")
    p = small.p
    n_small = small.classes[0][0] if small.classes else 0
    big = cyclic_group_spec(p, n_small + 1)
    m_big = big.order
    nums = [0] * (big.order * m_big)
    for g in range(small.order):
        for e in range(eta.m):
            v = eta.nums[g * eta.m + e]
            if v:
                nums[(g * p) * m_big + e * p] = v
    return CycloAlgebraElement(big, m_big, nums, eta.den)


def extension_children(
    eta: CycloAlgebraElement, top_gen: GroupElement
) -> list[CycloAlgebraElement]:
    """The p idempotents refining eta one level up.

    eta must be a splitting idempotent of the index-p subgroup, already
    lifted into the big group's algebra (see lift_into_extension); top_gen
    is the new chain generator.  Children multiply eta by the p root-twisted
    averages of top_gen whose roots are the p-th roots of eta's own top root.
    """
    spec = eta.spec
    if not isinstance(spec, PrimaryGroupSpec) or len(spec.factor_orders) > 1:
        raise InvariantError("extension requires a cyclic p-power group")
    m = eta.m
    if m != spec.order:
        raise SpecMismatchError("modulus must equal the group order")
    p = spec.p
    if top_gen.spec != spec or element_order(top_gen) != spec.order:
        raise InvariantError("top generator must generate the whole group")
    if spec.order == p:
        if eta != CycloAlgebraElement.one(spec, m):
            raise InvariantError("the only level-0 idempotent is the identity")
        root_exp = 0
    else:
        sub_order = spec.order // p
        attached = sub_order * eta.cyclo_coeff(element_index(top_gen**p))
        matches = [e for e in range(m) if CycloNumber.zeta(m, e) == attached]
        if len(matches) != 1 or matches[0] % p:
            raise InvariantError("input is not a lifted splitting idempotent")
        root_exp = matches[0] // p
    step = m // p
    return [
        eta * _root_average_factor(spec, m, top_gen, (root_exp + i * step) % m)
        for i in range(p)
    ]


def galois_orbits(m: int) -> list[list[int]]:
    """Orbits of Z/m under multiplication by units, sorted by least member."""
    units = [k for k in range(1, m + 1) if math.gcd(k, m) == 1]
    orbits = []
    seen: set[int] = set()
    for t in range(m):
        if t in seen:
            continue
        orbit = sorted({(k * t) % m for k in units})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def galois_orbit_collapse(
    splitting: Sequence[CycloAlgebraElement], m: int
) -> list[AlgebraElement]:
    """Sum the splitting idempotents over each unit-multiplication orbit of
    the character index; every sum is rational and the results are exactly
    the rational primitive central idempotents."""
    if len(splitting) != m:
        raise InvariantError("need one splitting idempotent per character index")
    out = []
    for orbit in galois_orbits(m):
        total = cyclo_sum(splitting[t] for t in orbit)
        if not total.is_rational():
            raise InconsistencyError(
                f"orbit {orbit} does not sum to a rational element"
            )
        out.append(total.rational_part())
    return out


@dataclass(frozen=True)
class PciRecord:
    """A primitive central idempotent with its component bookkeeping."""

    element: AlgebraElement
    kernel_order: int
    quotient_order: int


def lift_to_product(
    spec: AbelianGroupSpec, part_index: int, a: AlgebraElement
) -> AlgebraElement:
    """Embed an element of one primary part's algebra into Q[G]."""
    part = spec.parts[part_index]
    if a.spec != part:
        raise SpecMismatchError("element does not belong to the given part")
    after = math.prod(q.order for q in spec.parts[part_index + 1 :])
    nums = [0] * spec.order
    for idx, v in enumerate(a.nums):
        if v:
            nums[idx * after] = v
    return AlgebraElement(spec, nums, a.den)


def cross_prime_product(
    spec: AbelianGroupSpec, per_part_sets: Sequence[Sequence[AlgebraElement]]
) -> list[AlgebraElement]:
    """All products of one idempotent per primary part, lifted to Q[G].

    The coefficient vector of each product is the tensor product of the
    per-part vectors (parts occupy disjoint factor blocks)."""
    if len(per_part_sets) != len(spec.parts):
        raise SpecMismatchError("need one idempotent set per primary part")
    for part, pcis in zip(spec.parts, per_part_sets):
        for e in pcis:
            if e.spec != part:
                raise SpecMismatchError("idempotent does not match its primary part")
    out = []
    for combo in itertools.product(*per_part_sets):
        nums = [1]
        den = 1
        for e in combo:
            nums = [x * y for x in nums for y in e.nums]
            den *= e.den
        out.append(AlgebraElement(spec, nums, den))
    return out


def pci_records(
    spec,
    alternate_order: bool = False,
    max_order: int | None = None,
) -> list[PciRecord]:
    """Engine-side primitive central idempotents of Q[G] with component
    bookkeeping; primary groups come from the diagram leaves, multi-prime
    groups from the product of the per-part leaf sets."""
    if isinstance(spec, PrimaryGroupSpec):
        labels = alternate_generator_labels(spec) if alternate_order else None
        diagram = build_pci_diagram(spec, labels, max_order=max_order)
        return [
            PciRecord(expansion, v.kernel_order, spec.p**v.field_index)
            for v, expansion in zip(diagram.leaves, diagram.leaf_expansions())
        ]
    if max_order is not None and spec.order > max_order:
        raise CapExceededError(f"group order {spec.order} exceeds cap {max_order}")
    part_records = [
        pci_records(part, alternate_order=alternate_order) for part in spec.parts
    ]
    elements = cross_prime_product(
        spec, [[r.element for r in records] for records in part_records]
    )
    out = []
    for pos, combo in enumerate(itertools.product(*part_records)):
        kernel_order = math.prod(r.kernel_order for r in combo)
        quotient = math.prod(r.quotient_order for r in combo)
        out.append(PciRecord(elements[pos], kernel_order, quotient))
    return out


def pci_set(spec, alternate_order: bool = False, max_order: int | None = None):
    """Just the idempotents, without bookkeeping."""
    return [r.element for r in pci_records(spec, alternate_order, max_order)]


def _vertex_label(spec: PrimaryGroupSpec, v: PciVertex, is_leaf: bool) -> str:
    if v.trivial:
        label = "trivial"
    else:
        gens = ",".join(str(g) for g in v.form.kernel_gens)
        label = f"K=<{gens}>; z={v.form.primed}"
    if is_leaf:
        label += f"\\nQ(zeta_{spec.p ** v.field_index})"
    return label


def emit_dot(diagrams: Sequence[PciDiagram]) -> str:
    """Graphviz rendering: one rank per level, factored-form labels, leaves
    annotated with their component field."""
    lines = ["digraph pci_diagram {", "  node [shape=box];"]
    clustered = len(diagrams) > 1
    for diagram in diagrams:
        p = diagram.spec.p
        indent = "  "
        if clustered:
            lines.append(f"  subgraph cluster_p{p} {{")
            lines.append(f'    label="p={p} part";')
            indent = "    "
        last = len(diagram.levels) - 1
        for l, level in enumerate(diagram.levels):
            names = " ".join(f"p{p}_v{l}_{v.index};" for v in level)
            lines.append(f"{indent}{{ rank=same; {names} }}")
            for v in level:
                label = _vertex_label(diagram.spec, v, l == last)
                lines.append(f'{indent}p{p}_v{l}_{v.index} [label="{label}"];')
        if clustered:
            lines.append("  }")
    for diagram in diagrams:
        p = diagram.spec.p
        for (pl, pi), (cl, ci) in diagram.edges:
            lines.append(f"  p{p}_v{pl}_{pi} -> p{p}_v{cl}_{ci};")
    lines.append("}")
    return "\n".join(lines) + "\n"
