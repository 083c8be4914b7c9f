"""Shared corpus definitions and cached per-group computations."""

from functools import cache

from pcikit import (
    AbelianGroupSpec,
    PrimaryGroupSpec,
    oracle_pci_set,
    parse_group_spec,
    pci_records,
)


def partitions(n, largest=None):
    """All integer partitions of n with parts <= largest, parts descending."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def spec_from_partition(p, partition):
    classes = []
    for r in partition:
        if classes and classes[-1][0] == r:
            classes[-1] = (r, classes[-1][1] + 1)
        else:
            classes.append((r, 1))
    return PrimaryGroupSpec(p, tuple((r, l) for r, l in classes))


@cache
def primary_corpus() -> tuple[PrimaryGroupSpec, ...]:
    """All p-groups with |G| <= 64 (p=2), 81 (p=3), 125 (p=5), plus C_49
    and C_7 x C_7."""
    specs = [PrimaryGroupSpec(2, ())]
    for p, cap in ((2, 64), (3, 81), (5, 125)):
        n = 1
        while p**n <= cap:
            specs.extend(spec_from_partition(p, part) for part in partitions(n))
            n += 1
    specs.append(PrimaryGroupSpec(7, ((2, 1),)))
    specs.append(PrimaryGroupSpec(7, ((1, 2),)))
    return tuple(specs)


@cache
def multi_corpus() -> tuple[AbelianGroupSpec, ...]:
    """C_6, C_12, C_30, C_2 x C_18."""
    return tuple(
        parse_group_spec(text)
        for text in ("2:[1];3:[1]", "2:[2];3:[1]", "2:[1];3:[1];5:[1]", "2:[1,1];3:[2]")
    )


def full_corpus():
    return primary_corpus() + multi_corpus()


@cache
def engine_records(spec):
    return tuple(pci_records(spec))


def engine_set(spec):
    return [rec.element for rec in engine_records(spec)]


@cache
def oracle_set(spec):
    return tuple(oracle_pci_set(spec))
