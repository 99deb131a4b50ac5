import itertools

import pytest

from artifact.coalg import (Coalgebra, CoalgebraFormatError, Functional, InvalidParameter, comatrix,
                            direct_sum, dual_product, hit_left, hit_right, is_coalgebra_map,
                            is_cocommutative, is_cocommutative_element, is_coideal,
                            iterated_coproduct, max_stable_coideal, opposite, parse_coalgebra,
                            split_slot, tensor_coalgebra, trace_element, zero_coalgebra)
from artifact.exactnum import ONE, ZERO, Matrix, q, span_basis

E11, E12, E21, E22 = range(4)


def basis_functional(C, i):
    return Functional([ONE if k == i else ZERO for k in range(C.dim)])


def test_comatrix_zero_rejected():
    with pytest.raises(InvalidParameter):
        comatrix(0)


def test_comatrix_one_is_grouplike():
    C = comatrix(1)
    assert C.labels == ["g"]
    assert C.coproduct(C.basis(0)) == {(0, 0): ONE}
    assert C.counit == (ONE,)


def test_comatrix_two_coproduct_of_offdiagonal():
    C = comatrix(2)
    assert C.labels == ["e^1_1", "e^1_2", "e^2_1", "e^2_2"]
    assert C.coproduct(C.basis(E12)) == {(E11, E12): ONE, (E12, E22): ONE}


def test_comatrix_two_counit():
    C = comatrix(2)
    assert C.counit_of(C.basis(E12)) == ZERO
    assert C.counit_of(C.basis(E22)) == ONE


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_comatrix_axioms(n):
    C = comatrix(n)
    assert not C.coassociativity_failures()
    assert not C.counit_failures()


def test_iterated_coproduct_rank_one_is_identity():
    C = comatrix(2)
    c = [q, ZERO, 2 * ONE, ONE]
    assert iterated_coproduct(C, c, 1) == {(0,): q, (2,): 2 * ONE, (3,): ONE}


def test_iterated_coproduct_two_legs():
    C = comatrix(2)
    assert iterated_coproduct(C, C.basis(E11), 2) == {(E11, E11): ONE, (E12, E21): ONE}


def test_iterated_coproduct_three_legs_are_paths():
    C = comatrix(2)
    out = iterated_coproduct(C, C.basis(E11), 3)
    # paths 1 -> l1 -> l2 -> 1, label e^a_b sits at index 2(a-1) + (b-1)
    expected = {}
    for l1, l2 in itertools.product((1, 2), repeat=2):
        key = tuple(2 * (a - 1) + (b - 1) for a, b in ((1, l1), (l1, l2), (l2, 1)))
        expected[key] = ONE
    assert out == expected


def test_iterated_coproduct_resplits():
    C = comatrix(2)
    c = [ONE, q, ZERO, q ** -1]
    for m in (2, 3):
        full = iterated_coproduct(C, c, m + 1)
        for slot in range(m):
            assert split_slot(C, iterated_coproduct(C, c, m), slot) == full


def test_dual_product_unit():
    C = comatrix(2)
    f = Functional([q, 1, -q ** 2, 3])
    eps = C.epsilon()
    assert dual_product(C, f, eps) == f and dual_product(C, eps, f) == f


def test_dual_product_matrix_units():
    C = comatrix(2)
    e11, e12 = basis_functional(C, E11), basis_functional(C, E12)
    assert dual_product(C, e11, e12) == e12
    assert dual_product(C, e12, e11) == Functional([0, 0, 0, 0])


def test_hit_by_counit_is_identity():
    C = comatrix(2)
    c = [q, ONE, ZERO, -q]
    assert hit_left(C, C.epsilon(), c) == c
    assert hit_right(C, c, C.epsilon()) == c


def test_hit_by_diagonal_functional():
    C = comatrix(2)
    gam = (q ** -2, 3 * ONE)
    G = Functional([gam[0], 0, 0, gam[1]])
    for i, j in itertools.product(range(2), repeat=2):
        k = 2 * i + j
        e = C.basis(k)
        assert hit_left(C, G, e) == [gam[j] * x for x in e]
        assert hit_right(C, e, G) == [gam[i] * x for x in e]


def test_bimodule_law():
    C = comatrix(2)
    f = Functional([q, 2, -1, q ** -1])
    g = Functional([1, q, q * q, 0])
    c = [ONE, q, 3 * ONE, -q ** 2]
    assert hit_right(C, hit_left(C, f, c), g) == hit_left(C, f, hit_right(C, c, g))


def test_opposite_of_cocommutative_is_itself():
    C = comatrix(1)
    assert opposite(C) == C


def test_opposite_swaps_legs():
    C = comatrix(2)
    assert opposite(C).coproduct(C.basis(E12)) == {(E12, E11): ONE, (E22, E12): ONE}


def test_opposite_is_involution():
    C = comatrix(3)
    assert opposite(opposite(C)) == C


def test_trace_is_cocommutative():
    for n in (1, 2, 3):
        C = comatrix(n)
        assert is_cocommutative_element(C, trace_element(C))


def test_offdiagonal_not_cocommutative():
    C = comatrix(2)
    assert not is_cocommutative_element(C, C.basis(E12))
    assert not is_cocommutative(C)


def test_grouplike_everything_cocommutative():
    C = comatrix(1)
    assert is_cocommutative_element(C, [q + 1])
    assert is_cocommutative(C)


def test_direct_sum_with_zero():
    C = comatrix(2)
    assert direct_sum(C, zero_coalgebra()) == C


def test_direct_sum_blocks():
    C = comatrix(2)
    D = direct_sum(C, opposite(C))
    assert D.dim == 8
    v = [ZERO] * 4 + [ONE, q, ZERO, 2 * ONE]
    assert all(j >= 4 and k >= 4 for (j, k) in D.coproduct(v))
    w = [ONE, ZERO, ZERO, q] + v[4:]
    assert D.counit_of(w) == C.counit_of(w[:4]) + C.counit_of(w[4:])


def test_tensor_coalgebra():
    C = comatrix(2)
    T = tensor_coalgebra(C, C)
    assert T.dim == 16
    assert not T.coassociativity_failures() and not T.counit_failures()
    G = tensor_coalgebra(comatrix(1), C)
    assert G.dim == 4 and G.delta == C.delta and G.counit == C.counit


def test_max_stable_coideal_grouplike():
    C = comatrix(1)
    assert max_stable_coideal(C, [[C.basis(0)]]) == []


def test_max_stable_coideal_zero_kernel():
    C = comatrix(2)
    assert max_stable_coideal(C, [[]]) == []


def test_max_stable_coideal_unrestricted_is_counit_kernel():
    # ker ε = span(e^1_2, e^2_1, e^1_1 - e^2_2) is itself a coideal
    C = comatrix(2)
    everything = [C.basis(i) for i in range(4)]
    I = max_stable_coideal(C, [everything])
    assert len(I) == 3
    assert is_coideal(C, I)
    assert all(C.counit_of(v) == ZERO for v in I)


def test_max_stable_coideal_with_stabilizer():
    C = comatrix(2)
    everything = [C.basis(i) for i in range(4)]
    swap = Matrix.from_columns([C.basis(E22), C.basis(E21), C.basis(E12), C.basis(E11)])
    I = max_stable_coideal(C, [everything], [swap])
    assert len(I) == 3


def test_max_stable_coideal_brute_force_small():
    # every span of basis vectors and diagonal differences that is a coideal in ker ε
    C = comatrix(2)
    pool = [C.basis(E12), C.basis(E21), [ONE, ZERO, ZERO, -ONE]]
    kernel = [C.basis(E12), C.basis(E21)]
    best = 0
    for r in range(len(pool) + 1):
        for sub in itertools.combinations(pool, r):
            sub = list(sub)
            inside = span_basis(sub + kernel, 4)
            if len(inside) == len(span_basis(kernel, 4)) and is_coideal(C, sub):
                best = max(best, len(span_basis(sub, 4)))
    assert len(max_stable_coideal(C, [kernel])) == best == 2


def test_coalgebra_text_roundtrip():
    C = comatrix(2)
    D = parse_coalgebra(C.render())
    assert D == C and D.labels == C.labels


def test_coalgebra_parse_error_has_line():
    with pytest.raises(CoalgebraFormatError) as info:
        parse_coalgebra("coalgebra dim=1\ndelta 1 1 1 1\ncounit 1 x\n")
    assert "3" in str(info.value)


def test_identity_is_coalgebra_map():
    C = comatrix(2)
    assert is_coalgebra_map(Matrix.identity(4), C, C)
    assert not is_coalgebra_map(Matrix.zeros(4), C, C)
