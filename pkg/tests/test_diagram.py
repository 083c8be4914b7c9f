from collections import Counter
from fractions import Fraction

import pytest

from pcikit import (
    AlgebraElement,
    CapExceededError,
    CycloAlgebraElement,
    GroupElement,
    GroupSpecError,
    LongGenerator,
    PrimaryGroupSpec,
    build_pci_diagram,
    compare_pci_sets,
    cross_prime_product,
    cyclic_group_spec,
    cyclic_rational_pcis,
    emit_dot,
    extension_children,
    galois_orbit_collapse,
    galois_orbits,
    kernel_and_field,
    lift_into_extension,
    lift_to_product,
    oracle_pci_set,
    parse_group_spec,
    pci_records,
    pci_set,
    splitting_field_pcis,
    subgroup_closure,
)
from pcikit.diagram import alternate_generator_labels
from pcikit.numtheory import euler_phi


def test_level_sizes_c3c3():
    diag = build_pci_diagram(PrimaryGroupSpec(3, ((1, 2),)))
    assert diag.level_sizes() == [1, 2, 5]


def test_c8_leaf_count():
    diag = build_pci_diagram(PrimaryGroupSpec(2, ((3, 1),)))
    assert len(diag.leaves) == 4


def test_c4c2_field_index_census():
    diag = build_pci_diagram(PrimaryGroupSpec(2, ((2, 1), (1, 1))))
    assert len(diag.leaves) == 6
    census = Counter(v.field_index for v in diag.leaves)
    assert census == {0: 1, 1: 3, 2: 2}
    # component dimensions fill the regular representation: 1*1 + 3*1 + 2*2
    assert sum(euler_phi(2**r) * c for r, c in census.items()) == 8


def test_levels_partition_identity():
    # At every level the expansions are orthogonal idempotents summing to 1.
    from pcikit import are_orthogonal, is_idempotent

    for spec in (
        PrimaryGroupSpec(2, ((2, 2),)),
        PrimaryGroupSpec(3, ((2, 1), (1, 1))),
        PrimaryGroupSpec(2, ((3, 1), (1, 1))),
    ):
        diag = build_pci_diagram(spec)
        for level in diag.levels:
            exps = [v.expansion() for v in level]
            total = AlgebraElement.zero(spec)
            for e in exps:
                assert is_idempotent(e)
                total = total + e
            assert total == AlgebraElement.one(spec)
            for i in range(len(exps)):
                for j in range(i + 1, len(exps)):
                    assert are_orthogonal(exps[i], exps[j])


def test_trivial_group_diagram():
    diag = build_pci_diagram(PrimaryGroupSpec(3, ()))
    assert diag.level_sizes() == [1]
    assert diag.leaf_expansions() == [AlgebraElement.one(PrimaryGroupSpec(3, ()))]


def test_max_order_cap():
    with pytest.raises(CapExceededError):
        build_pci_diagram(PrimaryGroupSpec(2, ((3, 1),)), max_order=4)
    with pytest.raises(CapExceededError):
        splitting_field_pcis(2, 3, max_order=4)


def test_generator_order_validation():
    spec = PrimaryGroupSpec(2, ((2, 1), (1, 1)))
    out_of_chain = [
        LongGenerator((2, 1), 2),
        LongGenerator((2, 1), 1),
        LongGenerator((1, 1), 1),
    ]
    with pytest.raises(GroupSpecError):
        build_pci_diagram(spec, out_of_chain)
    with pytest.raises(GroupSpecError):
        build_pci_diagram(spec, [LongGenerator((2, 1), 1)])
    # interleaved but power-monotone orders are allowed and stay sound
    interleaved = [
        LongGenerator((2, 1), 1),
        LongGenerator((1, 1), 1),
        LongGenerator((2, 1), 2),
    ]
    diag = build_pci_diagram(spec, interleaved)
    assert compare_pci_sets(diag.leaf_expansions(), list(oracle_pci_set(spec))).equal


def test_homocyclic_split_uses_coset_witness():
    # In C_4 x C_4 a chain generator's p-th power can fall outside a vertex
    # kernel while the enlarged quotient still fails to stay cyclic; the
    # split must then use a corrected coset element as the new kernel
    # generator, not the chain generator itself.
    spec = PrimaryGroupSpec(2, ((2, 2),))
    diag = build_pci_diagram(spec)
    assert compare_pci_sets(diag.leaf_expansions(), list(oracle_pci_set(spec))).equal
    corrected = [
        v
        for level in diag.levels
        for v in level
        if not v.trivial
        and v.form.kernel_gens
        and v.form.kernel_gens[-1].exps in ((1, 1), (1, 3), (3, 1), (3, 3))
    ]
    assert corrected, "expected at least one split via a corrected witness"
    for v in corrected:
        kernel = subgroup_closure(spec, v.form.kernel_gens)
        assert v.form.primed not in kernel


def test_diagram_values_are_shareable_across_threads():
    # pure values: concurrent builds and expansions agree with serial ones
    from concurrent.futures import ThreadPoolExecutor

    specs = [
        PrimaryGroupSpec(2, ((2, 1), (1, 1))),
        PrimaryGroupSpec(3, ((1, 2),)),
        PrimaryGroupSpec(2, ((2, 2),)),
        PrimaryGroupSpec(5, ((1, 1),)),
    ]
    serial = [pci_set(spec) for spec in specs]
    with ThreadPoolExecutor(max_workers=4) as pool:
        threaded = list(pool.map(pci_set, specs))
    assert serial == threaded


def test_alternate_order_sound():
    for text in ("2:[2,2]", "3:[2,1]", "2:[2,1,1]"):
        spec = parse_group_spec(text).parts[0]
        labels = alternate_generator_labels(spec)
        diag = build_pci_diagram(spec, labels)
        assert compare_pci_sets(
            diag.leaf_expansions(), list(oracle_pci_set(spec))
        ).equal


def test_cyclic_rational_pcis_c2():
    e0, e1 = cyclic_rational_pcis(2, 1)
    assert e0 == AlgebraElement.from_coeffs(
        cyclic_group_spec(2, 1), [Fraction(1, 2), Fraction(1, 2)]
    )
    assert e1 == AlgebraElement.from_coeffs(
        cyclic_group_spec(2, 1), [Fraction(1, 2), Fraction(-1, 2)]
    )


def test_cyclic_rational_pcis_c4_values_and_field_indices():
    e0, e1, e2 = cyclic_rational_pcis(2, 2)
    spec = cyclic_group_spec(2, 2)
    assert e1 == AlgebraElement.from_coeffs(spec, [Fraction(1, 2), 0, Fraction(-1, 2), 0])
    assert e2 == AlgebraElement.from_coeffs(
        spec, [Fraction(1, 4), Fraction(-1, 4), Fraction(1, 4), Fraction(-1, 4)]
    )
    assert kernel_and_field(e1).field_index == 2
    assert kernel_and_field(e2).field_index == 1
    assert kernel_and_field(e0).field_index == 0


def test_cyclic_rational_pcis_c27():
    assert len(cyclic_rational_pcis(3, 3)) == 4


def test_cyclic_closed_form_equals_leaves():
    for p, n in ((2, 3), (3, 2), (5, 1)):
        closed = cyclic_rational_pcis(p, n)
        leaves = pci_set(cyclic_group_spec(p, n))
        assert compare_pci_sets(closed, leaves).equal


def test_splitting_field_pcis_c2():
    spec = cyclic_group_spec(2, 1)
    got = splitting_field_pcis(2, 1)
    expected = [
        CycloAlgebraElement.from_rational_element(
            AlgebraElement.from_coeffs(spec, [Fraction(1, 2), sign * Fraction(1, 2)]), 2
        )
        for sign in (1, -1)
    ]
    assert got == expected


def test_splitting_matches_character_formula():
    # t-th idempotent = (1/m) sum_k zeta^(-tk) x^k
    for p, n in ((2, 2), (3, 1), (5, 1)):
        m = p**n
        spec = cyclic_group_spec(p, n)
        for t, e in enumerate(splitting_field_pcis(p, n)):
            nums = [0] * (m * m)
            for k in range(m):
                nums[k * m + (-t * k) % m] = 1
            assert e == CycloAlgebraElement(spec, m, nums, m)


def test_splitting_sum_to_one():
    for p, n in ((2, 2), (3, 2)):
        spec = cyclic_group_spec(p, n)
        total = CycloAlgebraElement.zero(spec, p**n)
        for e in splitting_field_pcis(p, n):
            total = total + e
        assert total == CycloAlgebraElement.one(spec, p**n)


def test_extension_children_c2_in_c4():
    split4 = splitting_field_pcis(2, 2)
    eta0, eta1 = (lift_into_extension(e) for e in splitting_field_pcis(2, 1))
    gen = GroupElement(cyclic_group_spec(2, 2), (1,))
    kids0 = extension_children(eta0, gen)
    kids1 = extension_children(eta1, gen)
    # children of the lift of (1 + x')/2 are the even-index idempotents
    assert Counter(c.reduced() for c in kids0) == Counter(
        e.reduced() for e in (split4[0], split4[2])
    )
    assert Counter(c.reduced() for c in kids0 + kids1) == Counter(
        e.reduced() for e in split4
    )
    # children refine their parent and are orthogonal across parents
    assert kids0[0] * kids0[1] == CycloAlgebraElement.zero(kids0[0].spec, 4)
    assert kids0[0] * kids1[0] == CycloAlgebraElement.zero(kids0[0].spec, 4)
    total = kids0[0] + kids0[1]
    assert total == eta0


def test_extension_children_trivial_base():
    p = 3
    base = lift_into_extension(splitting_field_pcis(p, 0)[0])
    gen = GroupElement(cyclic_group_spec(p, 1), (1,))
    kids = extension_children(base, gen)
    assert Counter(c.reduced() for c in kids) == Counter(
        e.reduced() for e in splitting_field_pcis(p, 1)
    )


def test_galois_orbit_collapse_c4():
    split = splitting_field_pcis(2, 2)
    collapsed = galois_orbit_collapse(split, 4)
    assert galois_orbits(4) == [[0], [1, 3], [2]]
    assert collapsed == cyclic_rational_pcis(2, 2)
    # orbit {0} is the full-group average
    spec = cyclic_group_spec(2, 2)
    assert collapsed[0] == AlgebraElement.from_coeffs(spec, [Fraction(1, 4)] * 4)


def test_orbit_count_is_chain_length_plus_one():
    for p, n in ((2, 3), (3, 2), (5, 1)):
        assert len(galois_orbits(p**n)) == n + 1


def test_cross_prime_product_c6():
    spec = parse_group_spec("2:[1];3:[1]")
    sets = [pci_set(part) for part in spec.parts]
    product = cross_prime_product(spec, sets)
    assert len(product) == 4
    dims = sorted(kernel_and_field(e).dim for e in product)
    assert dims == [1, 1, 2, 2]
    assert compare_pci_sets(product, list(oracle_pci_set(spec))).equal


def test_cross_prime_product_c12():
    spec = parse_group_spec("2:[2];3:[1]")
    sets = [pci_set(part) for part in spec.parts]
    product = cross_prime_product(spec, sets)
    assert len(product) == 6
    assert compare_pci_sets(product, list(oracle_pci_set(spec))).equal


def test_cross_prime_trivial_factor():
    spec = parse_group_spec("2:[1];3:[1]")
    # a trivial part's only idempotent is 1; composing with it is identity
    c2 = spec.parts[0]
    lifted = [lift_to_product(spec, 0, e) for e in pci_set(c2)]
    for e in lifted:
        from pcikit import is_idempotent

        assert is_idempotent(e)


def test_pci_records_bookkeeping():
    spec = parse_group_spec("2:[2];3:[1]")
    for rec in pci_records(spec):
        info = kernel_and_field(rec.element)
        assert info.quotient_order == rec.quotient_order
        assert len(info.kernel) == rec.kernel_order


def test_emit_dot_shape():
    diag = build_pci_diagram(PrimaryGroupSpec(3, ((1, 2),)))
    dot = emit_dot([diag])
    assert dot.startswith("digraph pci_diagram {")
    assert dot.count("rank=same") == 3
    assert dot.count("->") == 2 + 5
    assert 'label="trivial\\nQ(zeta_1)"' in dot
    assert dot.count("Q(zeta_3)") == 4
