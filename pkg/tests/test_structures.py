import pytest

from artifact.coalg import comatrix, hit_left, hit_right, opposite
from artifact.exactnum import ONE, ZERO, Matrix, q
from artifact.structures import (AxiomViolation, InvalidParameter, NotInvertible,
                                 OrientedQuantumCoalgebra, QuantumCoalgebra, StructureFormatError,
                                 TwistOQC, automorphism_group_closure_check, check_oqc, check_qc,
                                 check_twist, check_twist_oqc, convolution_inverse, double_coalgebra,
                                 form_power, from_quantum, homfly_parameters, homfly_structure,
                                 is_inverse_pair, is_oqc_morphism, jones_quantum, jones_structure,
                                 minimal_quotient, opposite_variants, parse_structure,
                                 render_structure, standardize, tensor_oqc, trivial_structure,
                                 unit_form)

E11, E12, E21, E22 = range(4)


def mutate(M, i, j, value):
    rows = [list(r) for r in M.data]
    rows[i][j] = value
    return Matrix(rows)


# convolution inverse ---------------------------------------------------------------

def test_unit_form_is_its_own_inverse():
    C = comatrix(2)
    E = unit_form(C)
    assert convolution_inverse(C, E) == E


def test_jones_form_inverse_two_sided(jones):
    assert jones.b_inv is not None
    assert is_inverse_pair(jones.C, jones.b, jones.b_inv)


def test_zero_form_not_invertible():
    C = comatrix(1)
    with pytest.raises(NotInvertible):
        convolution_inverse(C, Matrix([[0]]))


def test_inverse_unique(jones):
    # recomputing gives the same matrix entrywise
    assert convolution_inverse(jones.C, jones.b) == jones.b_inv


def test_form_powers(jones):
    C, B, Bi = jones.C, jones.b, jones.b_inv
    assert form_power(C, B, Bi, 0) == unit_form(C)
    assert form_power(C, B, Bi, 1) == B
    assert form_power(C, B, Bi, -1) == Bi
    P2 = form_power(C, B, Bi, 2)
    assert form_power(C, P2, form_power(C, B, Bi, -2), -1) == form_power(C, B, Bi, -2)


# Jones ------------------------------------------------------------------------------

def test_jones_form_entries(jones):
    assert jones.b[E11, E22] == q
    assert jones.b[E11, E11] == q ** -1 == jones.b[E22, E22]
    assert jones.b[E22, E11] == q
    assert jones.b[E21, E12] == q ** -1 - q ** 3


def test_jones_twist_map(jones):
    assert jones.Td == jones.Tu
    assert jones.Td.column(E12)[E12] == -q ** -2


def test_jones_G_and_conjugation(jones):
    assert jones.G.coords == (q ** -2, ZERO, ZERO, q ** 2)
    C = jones.C
    for i in range(4):
        e = C.basis(i)
        assert (jones.Td @ jones.Tu).column(i) == hit_right(C, hit_left(C, jones.G_inv, e), jones.G)


def test_jones_checks(jones):
    assert check_oqc(jones.base).ok
    assert check_twist(jones).ok
    assert check_qc(jones_quantum()).ok


def test_jones_operator_relations(jones):
    S = jones_quantum().S
    T = jones.Td
    assert T @ T == S ** -2
    assert S @ T == T @ S


def test_perturbed_yang_baxter_entry_fails(jones):
    S = OrientedQuantumCoalgebra(jones.C, mutate(jones.b, E12, E21, q), jones.Td, jones.Tu)
    report = check_oqc(S)
    assert not report["qc.3"].passed
    assert report["qc.3"].witnesses


def test_trivial_structure_passes():
    T = trivial_structure(q)
    assert check_twist_oqc(T).ok
    with pytest.raises(InvalidParameter):
        trivial_structure(0)


def test_quantum_identity_antipode_on_grouplike():
    # with S = id the first axiom forces b = b^-1, so beta = -1
    Q = QuantumCoalgebra(comatrix(1), Matrix([[-1]]), Matrix.identity(1))
    assert check_qc(Q).ok
    assert not check_qc(QuantumCoalgebra(comatrix(1), Matrix([[q]]), Matrix.identity(1))).ok
    assert from_quantum(Q).Tu.is_identity()


# HOMFLY -------------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_homfly_presets_pass(n):
    H = homfly_structure(n)
    assert check_oqc(H.base).ok and check_twist_oqc(H).ok


def test_homfly_clause_d_violation():
    p = homfly_parameters(2)
    rho = dict(p["rho_table"])
    rho[(1, 2, 1, 2)] = q ** 3
    rho[(2, 1, 2, 1)] = q
    with pytest.raises(InvalidParameter, match="clause d"):
        homfly_structure(2, rho_table=rho)


def test_homfly_omega_square_condition():
    homfly_structure(2, omega=[q ** -1, -q])
    with pytest.raises(InvalidParameter, match="omega-square"):
        homfly_structure(2, omega=[q ** -1, q ** 2])


def test_homfly_clause_a_violation():
    p = homfly_parameters(2)
    rho = dict(p["rho_table"])
    rho[(1, 1, 1, 2)] = ONE
    with pytest.raises(InvalidParameter, match="clause a"):
        homfly_structure(2, rho_table=rho)


def test_homfly_two_matches_jones_entries():
    H = homfly_structure(2)
    J = jones_structure()
    assert H.b == J.b and H.Td == J.Td and H.G == J.G


# constructions -----------------------------------------------------------------------

def test_standardize(jones):
    S = standardize(jones.base)
    T = jones.Td
    assert S.Td.is_identity() and S.Tu == T @ T
    assert check_oqc(S).ok
    assert standardize(S) == S


def test_from_quantum(jones):
    S = from_quantum(jones_quantum())
    assert S.Td.is_identity() and S.Tu == jones.Td @ jones.Td
    assert check_oqc(S).ok


def test_double_of_trivial():
    T = trivial_structure(q)
    Q, O, iota = double_coalgebra(T.base)
    assert Q.C.dim == 2 and check_qc(Q).ok and check_oqc(O).ok


def test_double_of_jones(jones):
    Q, O, iota = double_coalgebra(jones.base)
    assert Q.C.dim == 8
    assert check_qc(Q).ok and check_oqc(O).ok
    assert is_oqc_morphism(iota, jones.base, O)
    W = (jones.Td @ jones.Tu).inverse()
    Z = Matrix.zeros(4)
    rows = [list(a) + list(b) for a, b in zip(W.data, Z.data)] + \
           [list(a) + list(b) for a, b in zip(Z.data, W.data)]
    assert Q.S @ Q.S == Matrix(rows)
    assert O.Td @ O.Tu == Q.S ** -2


def test_tensor_with_trivial_scales_form(jones):
    T = tensor_oqc(trivial_structure(q).base, jones.base)
    assert T.b == jones.b.scale(q)
    assert check_oqc(T).ok


def test_tensor_jones_jones(jones):
    T = tensor_oqc(jones.base, jones.base)
    assert T.dim == 16 and check_oqc(T).ok
    assert convolution_inverse(T.C, T.b) == jones.b_inv.kron(jones.b_inv)


def test_opposite_variants(jones):
    v = opposite_variants(jones.base)
    assert all(check_oqc(s).ok for s in v.values())
    assert v["cop"].C == opposite(jones.C)
    back = opposite_variants(v["inv"])["inv"]
    assert back == jones.base


def test_opposite_variant_swaps_maps():
    # a standard structure makes the swap visible
    S = standardize(jones_structure().base)
    op = opposite_variants(S)["op"]
    assert op.Td == S.Tu.inverse() and op.Tu == S.Td.inverse()
    assert check_oqc(op).ok


def test_minimal_quotient_of_jones(jones):
    Q, I, P = minimal_quotient(jones.base)
    assert I == [] and Q == jones.base and P.is_identity()


def test_minimal_quotient_counit_form():
    C = comatrix(2)
    I4 = Matrix.identity(4)
    S = OrientedQuantumCoalgebra(C, unit_form(C), I4, I4)
    assert check_oqc(S).ok
    Q, I, P = minimal_quotient(S)
    assert len(I) == 3 and Q.dim == 1
    assert check_oqc(Q).ok
    again, J, _ = minimal_quotient(Q)
    assert J == []


def test_identity_and_zero_morphisms(jones):
    assert is_oqc_morphism(Matrix.identity(4), jones.base, jones.base)
    assert not is_oqc_morphism(Matrix.zeros(4), jones.base, jones.base)


def test_automorphism_closure(jones):
    assert automorphism_group_closure_check(jones.C, [jones.b, jones.b_inv], [jones.Td]).ok
    assert automorphism_group_closure_check(jones.C, [jones.b], [Matrix.identity(4)]).ok


def test_automorphism_closure_rejects_non_invariant_map(jones):
    bad = Matrix.diagonal([q, ONE, ONE, ONE])
    with pytest.raises(AxiomViolation):
        automorphism_group_closure_check(jones.C, [jones.b], [bad])


def test_constructions_reject_broken_input(jones):
    broken = OrientedQuantumCoalgebra(jones.C, mutate(jones.b, E11, E11, q), jones.Td, jones.Tu)
    with pytest.raises(AxiomViolation):
        standardize(broken)
    with pytest.raises(AxiomViolation):
        double_coalgebra(broken)


# text format -------------------------------------------------------------------------

def test_structure_text_roundtrip(jones):
    S = parse_structure(render_structure(jones))
    assert isinstance(S, TwistOQC)
    assert S.base == jones.base and S.G == jones.G


def test_structure_text_without_G():
    S = parse_structure(render_structure(jones_structure().base))
    assert isinstance(S, OrientedQuantumCoalgebra)


def test_structure_text_error_located():
    text = render_structure(trivial_structure(q)) + "b 1 1 q^\n"
    with pytest.raises(StructureFormatError) as info:
        parse_structure(text)
    assert info.value.line is not None
