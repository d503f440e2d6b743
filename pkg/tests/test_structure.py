from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enumerate_cases import basic_families
from polychrom.constructions import construct_bipartite_witness, construct_quasi, construct_simply_ordered
from polychrom.errors import PreconditionError, ScopeError
from polychrom.graph import EdgeColoring, FamilySpec
from polychrom.oracle import is_polychromatic
from polychrom.structure import (
    OrderKind,
    analysis_of_quasi,
    analysis_of_sequence,
    block_shift_normalize,
    detect_order,
    lemma_predicate,
    ordered_coloring,
    standard_quasi,
)


def test_detects_simply_ordered_construction():
    built = construct_simply_ordered(FamilySpec.matchings(0), 8)
    analysis = detect_order(built.coloring)
    assert analysis.kind is OrderKind.SIMPLY_ORDERED
    assert analysis.inherited.blocks[:-1] == built.blocks.blocks[:-1]


def test_detects_ordered_with_split_color():
    analysis = detect_order(ordered_coloring([1, 2, 1, 3, 3]))
    assert analysis.kind is OrderKind.ORDERED
    assert analysis.inherited.sequence()[:4] == [1, 2, 1, 3]


def test_detects_quasi_orders():
    analysis = detect_order(construct_quasi(FamilySpec.two_regular(0), 7).coloring)
    assert analysis.kind is OrderKind.QUASI_SIMPLY_ORDERED
    assert len(analysis.z) == 3 and sorted(analysis.mains) == [1, 2, 3]
    analysis = detect_order(standard_quasi([1, 1, 2, 2], [3, 1, 3, 3]))
    assert analysis.kind is OrderKind.QUASI_ORDERED
    assert len(analysis.z) == 4


def test_detects_unordered():
    # the two-pentagon coloring of K_5 has no vertex with a monochromatic star
    # and no seed
    pentagons = EdgeColoring.from_function(5, lambda u, v: 1 if (v - u) % 5 in (1, 4) else 2)
    assert detect_order(pentagons).kind is OrderKind.UNORDERED


def test_bipartite_witness_is_unordered():
    # both sides see two colors, so nothing can be peeled off
    coloring = construct_bipartite_witness(5, 7).coloring
    assert detect_order(coloring).kind is OrderKind.UNORDERED


def dense(seq: list[int]) -> list[int]:
    # renumber colors by first appearance; the last position carries no edge color
    names: dict[int, int] = {}
    body = [names.setdefault(c, len(names) + 1) for c in seq[:-1]]
    return body + [body[-1]]


sequences = st.lists(st.integers(1, 4), min_size=2, max_size=9).map(dense)


@settings(max_examples=60, deadline=None)
@given(sequences, st.data())
def test_detection_survives_relabeling(seq, data):
    coloring = ordered_coloring(seq)
    perm = data.draw(st.permutations(range(len(seq))))
    a = detect_order(coloring)
    b = detect_order(coloring.relabel(perm))
    assert a.kind is b.kind
    for fam in basic_families(len(seq)):
        assert lemma_predicate(a, fam) == lemma_predicate(b, fam)


@settings(max_examples=60, deadline=None)
@given(sequences)
def test_predicate_matches_oracle_on_random_sequences(seq):
    coloring = ordered_coloring(seq)
    analysis = detect_order(coloring)
    assert analysis_of_sequence(analysis.inherited.sequence()).kind is analysis.kind
    for fam in basic_families(len(seq)):
        assert lemma_predicate(analysis, fam) == is_polychromatic(coloring, fam)


def test_quasi_analysis_without_building():
    for mains, tail in (([1, 2, 3], [4, 4, 4]), ([1, 1, 2, 2], [3, 1, 1]), ([1, 2, 3], [3])):
        built = detect_order(standard_quasi(mains, tail))
        cheap = analysis_of_quasi(mains, tail)
        for fam in basic_families(len(mains) + len(tail)):
            assert lemma_predicate(built, fam) == lemma_predicate(cheap, fam)


def test_predicate_rejects_unordered():
    pentagons = EdgeColoring.from_function(5, lambda u, v: 1 if (v - u) % 5 in (1, 4) else 2)
    with pytest.raises(ScopeError):
        lemma_predicate(detect_order(pentagons), FamilySpec.cycles(2))


def test_normalize_merges_blocks():
    coloring = ordered_coloring([1, 2, 2, 1, 3, 3, 3, 3, 3, 3])
    fam = FamilySpec.matchings(0)
    assert is_polychromatic(coloring, fam)
    out = block_shift_normalize(coloring, fam)
    assert detect_order(out).kind is OrderKind.SIMPLY_ORDERED
    assert out.k == coloring.k and is_polychromatic(out, fam)


def test_normalize_quasi():
    coloring = standard_quasi([1, 2, 3], [1, 2, 1, 1, 1])
    fam = FamilySpec.two_regular(0)
    assert detect_order(coloring).kind is OrderKind.QUASI_ORDERED
    assert is_polychromatic(coloring, fam)
    out = block_shift_normalize(coloring, fam)
    assert detect_order(out).kind is OrderKind.QUASI_SIMPLY_ORDERED
    assert out.k == coloring.k and is_polychromatic(out, fam)


def test_normalize_errors():
    pentagons = EdgeColoring.from_function(5, lambda u, v: 1 if (v - u) % 5 in (1, 4) else 2)
    with pytest.raises(ScopeError):
        block_shift_normalize(pentagons, FamilySpec.cycles(2))
    with pytest.raises(PreconditionError):
        block_shift_normalize(ordered_coloring([1, 1, 2, 2]), FamilySpec.matchings(0))


def test_normalize_is_identity_on_simple_input():
    coloring = construct_simply_ordered(FamilySpec.cycles(2), 9).coloring
    out = block_shift_normalize(coloring, FamilySpec.cycles(2))
    assert detect_order(out).inherited.blocks == detect_order(coloring).inherited.blocks


def test_rainbow_triangle_is_a_bare_seed():
    analysis = detect_order(EdgeColoring(3, (1, 2, 3)))
    assert analysis.kind is OrderKind.QUASI_SIMPLY_ORDERED
    assert len(analysis.z) == 3
