"""Oriented quantum coalgebras, quantum coalgebras and twist structures.

A bilinear form on a coalgebra is stored as its matrix ``B[i][j] = b(e_i, e_j)``.
Linear maps are matrices whose column j holds the image of ``e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebras import OrientedQuantumAlgebra, check_oqa
from .coalg import (Coalgebra, Functional, QuotientMap, comatrix, direct_sum, dual_inverse, dual_product,
                    hit_left, hit_right, is_coalgebra_map, max_stable_coideal, opposite, parse_coalgebra_lines,
                    tensor_coalgebra, CoalgebraFormatError)
from .exactnum import (ONE, ZERO, Matrix, MalformedScalar, NoSolutionError, NonUniqueSolutionError,
                       RationalFunction, as_scalar, nullspace, parse_scalar, q, solve_system)


class NotInvertible(ArithmeticError):
    pass


class AxiomViolation(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidParameter(ValueError):
    pass


# reports -------------------------------------------------------------------------

@dataclass
class AxiomResult:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        text = f"{self.name}: {status}"
        if self.witnesses:
            text += "  witness " + "; ".join(str(w) for w in self.witnesses[:8])
        return text


class CheckReport:
    def __init__(self, results: list):
        self.results = results

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed(self) -> list:
        return [r.name for r in self.results if not r.passed]

    def __str__(self):
        return "\n".join(str(r) for r in self.results)

    def extend(self, other: "CheckReport", prefix=""):
        for r in other.results:
            self.results.append(AxiomResult(prefix + r.name, r.passed, r.witnesses))


# forms -----------------------------------------------------------------------------

class BilinearForm:
    def __init__(self, carrier: Coalgebra, matrix: Matrix):
        if matrix.shape != (carrier.dim, carrier.dim):
            raise InvalidParameter("form matrix does not match the carrier")
        self.carrier, self.matrix = carrier, matrix

    def __call__(self, x: Sequence, y: Sequence) -> RationalFunction:
        acc = ZERO
        for i, a in enumerate(x):
            if a:
                row = self.matrix.data[i]
                for j, b in enumerate(y):
                    if b and row[j]:
                        acc = acc + a * b * row[j]
        return acc

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.matrix == other.matrix


def _terms(C: Coalgebra):
    return [[(j, k, v) for (j, k), v in C.delta[i].items()] for i in range(C.dim)]


def convolve_forms(C: Coalgebra, X: Matrix, Y: Matrix, crossed: bool = False) -> Matrix:
    """(c, d) ↦ Σ X(c1, d1) Y(c2, d2), or X(c1, d2) Y(c2, d1) when ``crossed``."""
    terms = _terms(C)
    Xd, Yd = X.data, Y.data
    out = []
    for c in range(C.dim):
        row = []
        for d in range(C.dim):
            acc = ZERO
            for (c1, c2, u) in terms[c]:
                for (d1, d2, w) in terms[d]:
                    x = Xd[c1][d2] if crossed else Xd[c1][d1]
                    if not x:
                        continue
                    y = Yd[c2][d1] if crossed else Yd[c2][d2]
                    if y:
                        acc = acc + u * w * x * y
            row.append(acc)
        out.append(row)
    return Matrix(out, cols=C.dim)


def unit_form(C: Coalgebra) -> Matrix:
    """ε⊗ε, the unit for convolution of forms."""
    return Matrix([[a * b for b in C.counit] for a in C.counit], cols=C.dim)


def convolution_inverse(C: Coalgebra, B: Matrix) -> Matrix:
    """The unique two-sided convolution inverse of a form; raises NotInvertible."""
    n = C.dim
    terms = _terms(C)
    rows, rhs = [], []
    for c in range(n):
        for d in range(n):
            left, right = {}, {}
            for (c1, c2, u) in terms[c]:
                for (d1, d2, w) in terms[d]:
                    b2 = B.data[c2][d2]
                    if b2:
                        key = c1 * n + d1
                        left[key] = left.get(key, ZERO) + u * w * b2
                    b1 = B.data[c1][d1]
                    if b1:
                        key = c2 * n + d2
                        right[key] = right.get(key, ZERO) + u * w * b1
            target = C.counit[c] * C.counit[d]
            rows += [{k: v for k, v in left.items() if v}, {k: v for k, v in right.items() if v}]
            rhs += [target, target]
    try:
        x = solve_system(rows, rhs, n * n)
    except (NoSolutionError, NonUniqueSolutionError):
        raise NotInvertible("bilinear form has no convolution inverse") from None
    return Matrix([[x[i * n + j] for j in range(n)] for i in range(n)], cols=n)


def is_inverse_pair(C: Coalgebra, B: Matrix, Binv: Matrix) -> bool:
    e = unit_form(C)
    return convolve_forms(C, Binv, B) == e and convolve_forms(C, B, Binv) == e


def form_power(C: Coalgebra, B: Matrix, Binv: Matrix, w: int) -> Matrix:
    out = unit_form(C)
    base = B if w >= 0 else Binv
    for _ in range(abs(w)):
        out = convolve_forms(C, out, base)
    return out


def twisted(B: Matrix, left: Matrix | None = None, right: Matrix | None = None) -> Matrix:
    """Matrix of (c, d) ↦ b(L c, R d)."""
    out = B
    if left is not None:
        out = left.transpose() @ out
    if right is not None:
        out = out @ right
    return out


# axiom helpers ------------------------------------------------------------------------

def _labels(C, *idx):
    return "(" + ", ".join(C.labels[i] for i in idx) + ")"


def _matrix_witnesses(C, M: Matrix, target: Matrix, limit=8):
    out = []
    for i in range(C.dim):
        for j in range(C.dim):
            if M.data[i][j] != target.data[i][j]:
                out.append(_labels(C, i, j))
                if len(out) >= limit:
                    return out
    return out


def yang_baxter_witnesses(C: Coalgebra, B: Matrix, limit=8) -> list:
    """Basis triples where b(c1,d1)b(c2,e1)b(d2,e2) ≠ b(c2,d2)b(c1,e2)b(d1,e1)."""
    n = C.dim
    terms = _terms(C)
    Bd = B.data
    # P[c][d]: dict (x, y) -> coefficient, for both sides
    left_pairs, right_pairs = {}, {}
    for c in range(n):
        for d in range(n):
            lp, rp = {}, {}
            for (c1, c2, u) in terms[c]:
                for (d1, d2, w) in terms[d]:
                    b = Bd[c1][d1]
                    if b:
                        lp[(c2, d2)] = lp.get((c2, d2), ZERO) + u * w * b
                    b = Bd[c2][d2]
                    if b:
                        rp[(c1, d1)] = rp.get((c1, d1), ZERO) + u * w * b
            left_pairs[(c, d)] = {k: v for k, v in lp.items() if v}
            right_pairs[(c, d)] = {k: v for k, v in rp.items() if v}
    # R[e]: dict (x, y) -> b(x, e1) b(y, e2) summed, and the swapped version
    left_tail, right_tail = [], []
    for e in range(n):
        lt, rt = {}, {}
        for (e1, e2, u) in terms[e]:
            for x in range(n):
                bx1, bx2 = Bd[x][e1], Bd[x][e2]
                if not bx1 and not bx2:
                    continue
                for y in range(n):
                    if bx1 and Bd[y][e2]:
                        lt[(x, y)] = lt.get((x, y), ZERO) + u * bx1 * Bd[y][e2]
                    if bx2 and Bd[y][e1]:
                        rt[(x, y)] = rt.get((x, y), ZERO) + u * bx2 * Bd[y][e1]
        left_tail.append(lt)
        right_tail.append(rt)
    bad = []
    for c in range(n):
        for d in range(n):
            lp, rp = left_pairs[(c, d)], right_pairs[(c, d)]
            for e in range(n):
                lt, rt = left_tail[e], right_tail[e]
                lhs = ZERO
                for k, v in lp.items():
                    t = lt.get(k)
                    if t:
                        lhs = lhs + v * t
                rhs = ZERO
                for k, v in rp.items():
                    t = rt.get(k)
                    if t:
                        rhs = rhs + v * t
                if lhs != rhs:
                    bad.append(_labels(C, c, d, e))
                    if len(bad) >= limit:
                        return bad
    return bad


def _split_image(C: Coalgebra, T: Matrix, i: int, anti=False) -> dict:
    """(T⊗T)Δ(e_i) - Δ(T e_i), or with Δ^cop(T e_i) when ``anti``."""
    out: dict = {}
    for (j, k), v in C.delta[i].items():
        cj, ck = T.column(j), T.column(k)
        for a, x in enumerate(cj):
            if x:
                for b, y in enumerate(ck):
                    if y:
                        out[(a, b)] = out.get((a, b), ZERO) + v * x * y
    for (a, b), v in C.coproduct(T.column(i)).items():
        key = (b, a) if anti else (a, b)
        out[key] = out.get(key, ZERO) - v
    return {k: v for k, v in out.items() if v}


def automorphism_witnesses(C: Coalgebra, T: Matrix, forms: Sequence[Matrix], anti=False, limit=8) -> list:
    """Failures of 'T is a coalgebra map with respect to the given forms'.

    Checks b(T(c1), d) b'(T(c2), e) = b(T(c)1, d) b'(T(c)2, e) and the mirror
    with T in the second argument, for all pairs of forms; with ``anti`` the
    right-hand sides use the opposite coproduct.
    """
    bad = []
    n = C.dim
    eps = C.epsilon()
    for i in range(n):
        if eps(T.column(i)) != C.counit[i]:
            bad.append(f"counit at {C.labels[i]}")
        X = _split_image(C, T, i, anti)
        if not X:
            continue
        for B1 in forms:
            for B2 in forms:
                for side in (0, 1):
                    for d in range(n):
                        for e in range(n):
                            acc = ZERO
                            for (a, b), v in X.items():
                                x = B1.data[a][d] if side == 0 else B1.data[d][a]
                                y = B2.data[b][e] if side == 0 else B2.data[e][b]
                                if x and y:
                                    acc = acc + v * x * y
                            if acc:
                                bad.append(_labels(C, i, d, e))
                                if len(bad) >= limit:
                                    return bad
    return bad


# structures ---------------------------------------------------------------------------

class OrientedQuantumCoalgebra:
    def __init__(self, C: Coalgebra, b: Matrix, Td: Matrix, Tu: Matrix, b_inv: Matrix | None = None,
                 strict: bool = True):
        self.C, self.b, self.Td, self.Tu, self.strict = C, b, Td, Tu, strict
        if b_inv is None:
            try:
                b_inv = convolution_inverse(C, b)
            except NotInvertible:
                b_inv = None
        self.b_inv = b_inv

    @property
    def dim(self):
        return self.C.dim

    def form(self) -> BilinearForm:
        return BilinearForm(self.C, self.b)

    def is_balanced(self):
        return self.Td == self.Tu

    def is_standard(self):
        return self.Td.is_identity()

    def __eq__(self, other):
        return (isinstance(other, OrientedQuantumCoalgebra) and self.C == other.C and self.b == other.b
                and self.Td == other.Td and self.Tu == other.Tu)


class QuantumCoalgebra:
    def __init__(self, C: Coalgebra, b: Matrix, S: Matrix, b_inv: Matrix | None = None):
        self.C, self.b, self.S = C, b, S
        if b_inv is None:
            try:
                b_inv = convolution_inverse(C, b)
            except NotInvertible:
                b_inv = None
        self.b_inv = b_inv

    def is_strict(self) -> bool:
        return is_coalgebra_map(self.S, self.C, opposite(self.C))


class TwistOQC:
    """A strict oriented quantum coalgebra with a twist functional G."""

    def __init__(self, base: OrientedQuantumCoalgebra, G: Functional, G_inv: Functional | None = None):
        self.base, self.G = base, G
        if G_inv is None:
            G_inv = dual_inverse(base.C, G)
        self.G_inv = G_inv

    def __getattr__(self, name):
        if name in ("C", "b", "b_inv", "Td", "Tu", "strict", "dim"):
            return getattr(self.base, name)
        raise AttributeError(name)

    def G_power(self, d: int) -> Functional:
        C = self.base.C
        out = C.epsilon()
        f = self.G if d >= 0 else self.G_inv
        for _ in range(abs(d)):
            out = dual_product(C, out, f)
        return out


# checkers ----------------------------------------------------------------------------

def _invertible(M: Matrix) -> bool:
    return M.is_square() and M.rank() == M.rows


def check_oqc(S: OrientedQuantumCoalgebra) -> CheckReport:
    C = S.C
    res = []
    coalg_ok = C.is_valid()
    res.append(AxiomResult("coalgebra laws", coalg_ok, [] if coalg_ok else C.coassociativity_failures() + C.counit_failures()))
    if S.b_inv is None:
        res.append(AxiomResult("b invertible", False, ["no convolution inverse"]))
        for name in ("qc.1", "qc.2", "qc.3"):
            res.append(AxiomResult(name, False, ["b not invertible"]))
        return CheckReport(res)
    ok = is_inverse_pair(C, S.b, S.b_inv)
    res.append(AxiomResult("b invertible", ok, [] if ok else ["attached inverse fails"]))
    eps = unit_form(C)
    bTu = twisted(S.b, None, S.Tu)
    binvTd = twisted(S.b_inv, S.Td, None)
    w = _matrix_witnesses(C, convolve_forms(C, bTu, binvTd, crossed=True), eps)
    w += _matrix_witnesses(C, convolve_forms(C, binvTd, bTu, crossed=True), eps)
    res.append(AxiomResult("qc.1", not w, w[:8]))
    w = []
    for T in (S.Td, S.Tu):
        w += _matrix_witnesses(C, twisted(S.b, T, T), S.b)
    res.append(AxiomResult("qc.2", not w, w[:8]))
    w = yang_baxter_witnesses(C, S.b)
    res.append(AxiomResult("qc.3", not w, w))
    comm = S.Td @ S.Tu == S.Tu @ S.Td
    res.append(AxiomResult("Td Tu commute", comm, [] if comm else ["Td Tu != Tu Td"]))
    inv = _invertible(S.Td) and _invertible(S.Tu)
    res.append(AxiomResult("Td Tu invertible", inv, [] if inv else ["singular map"]))
    if S.strict:
        w = [f"Td at {C.labels[i]}" for i in range(C.dim) if not inv] if not inv else []
        for name, T in (("Td", S.Td), ("Tu", S.Tu)):
            if not is_coalgebra_map(T, C, C):
                w.append(f"{name} is not a coalgebra map")
        res.append(AxiomResult("strict: coalgebra automorphisms", not w, w))
    else:
        w = []
        for name, T in (("Td", S.Td), ("Tu", S.Tu)):
            w += [f"{name} {x}" for x in automorphism_witnesses(C, T, [S.b, S.b_inv])]
        res.append(AxiomResult("automorphisms with respect to {b, b^-1}", not w, w[:8]))
    return CheckReport(res)


def check_qc(Q: QuantumCoalgebra) -> CheckReport:
    C = Q.C
    res = []
    if Q.b_inv is None:
        res.append(AxiomResult("b invertible", False, ["no convolution inverse"]))
        return CheckReport(res)
    ok = is_inverse_pair(C, Q.b, Q.b_inv)
    res.append(AxiomResult("b invertible", ok, [] if ok else ["attached inverse fails"]))
    w = _matrix_witnesses(C, twisted(Q.b, Q.S, None), Q.b_inv)
    res.append(AxiomResult("QC.1", not w, w))
    w = _matrix_witnesses(C, twisted(Q.b, Q.S, Q.S), Q.b)
    res.append(AxiomResult("QC.2", not w, w))
    w = yang_baxter_witnesses(C, Q.b)
    res.append(AxiomResult("QC.3", not w, w))
    inv = _invertible(Q.S)
    w = [] if inv else ["S singular"]
    if inv:
        w += automorphism_witnesses(C, Q.S, [Q.b], anti=True)
    res.append(AxiomResult("S coalgebra isomorphism C -> C^cop with respect to b", not w, w[:8]))
    return CheckReport(res)


def check_twist(T: TwistOQC) -> CheckReport:
    S = T.base
    C = S.C
    res = []
    ok = dual_product(C, T.G, T.G_inv) == C.epsilon() and dual_product(C, T.G_inv, T.G) == C.epsilon()
    res.append(AxiomResult("G G^-1 = epsilon", ok, [] if ok else ["G_inv"]))
    w = [name for name, M in (("Td", S.Td), ("Tu", S.Tu)) if T.G.compose(M) != T.G]
    res.append(AxiomResult("G invariant under Td, Tu", not w, w))
    TT = S.Td @ S.Tu
    w = []
    for i in range(C.dim):
        conj = hit_right(C, hit_left(C, T.G_inv, C.basis(i)), T.G)
        if conj != TT.column(i):
            w.append(C.labels[i])
    res.append(AxiomResult("Td Tu = conjugation by G", not w, w[:8]))
    res.append(AxiomResult("strict", S.strict, [] if S.strict else ["base is not strict"]))
    return CheckReport(res)


def check_twist_oqc(T: TwistOQC) -> CheckReport:
    rep = check_oqc(T.base)
    rep.extend(check_twist(T), prefix="twist: ")
    return rep


def require(report: CheckReport, what: str):
    if not report.ok:
        raise AxiomViolation(f"{what} fails: {', '.join(report.failed())}", report)


# builders ------------------------------------------------------------------------

def _comatrix_index(n, i, j):
    return (i - 1) * n + (j - 1)


def diagonal_twist(n: int, omega: Sequence) -> Matrix:
    omega = [as_scalar(w) for w in omega]
    return Matrix.diagonal([omega[i] / omega[j] for i in range(n) for j in range(n)])


def diagonal_G(n: int, gammas: Sequence) -> Functional:
    coords = [ZERO] * (n * n)
    for i in range(n):
        coords[i * n + i] = as_scalar(gammas[i])
    return Functional(coords)


def jones_form() -> Matrix:
    # the off-diagonal entry sits at (e^2_1, e^1_2); see the decisions ledger
    qi = q ** -1
    B = [[ZERO] * 4 for _ in range(4)]
    e11, e12, e21, e22 = 0, 1, 2, 3
    B[e11][e11] = B[e22][e22] = qi
    B[e11][e22] = B[e22][e11] = q
    B[e21][e12] = qi - q ** 3
    return Matrix(B)


JONES_OMEGA = (q ** -1, -q)


def jones_structure() -> TwistOQC:
    C = comatrix(2)
    T = diagonal_twist(2, JONES_OMEGA)
    base = OrientedQuantumCoalgebra(C, jones_form(), T, T, strict=True)
    return TwistOQC(base, diagonal_G(2, [w * w for w in JONES_OMEGA]))


def jones_antipode() -> Matrix:
    """S(e^1_1) = e^2_2, S(e^2_2) = e^1_1, S(e^1_2) = -q² e^1_2, S(e^2_1) = -q⁻² e^2_1."""
    cols = [[0, 0, 0, 1], [0, -q ** 2, 0, 0], [0, 0, -q ** -2, 0], [1, 0, 0, 0]]
    return Matrix.from_columns(cols)


def jones_quantum() -> QuantumCoalgebra:
    return QuantumCoalgebra(comatrix(2), jones_form(), jones_antipode())


def trivial_structure(beta=1) -> TwistOQC:
    beta = as_scalar(beta)
    if beta.is_zero():
        raise InvalidParameter("beta must be nonzero")
    C = comatrix(1)
    I = Matrix.identity(1)
    base = OrientedQuantumCoalgebra(C, Matrix([[beta]]), I, I, Matrix([[beta.inverse()]]), strict=True)
    return TwistOQC(base, Functional([ONE]), Functional([ONE]))


def homfly_parameters(n: int) -> dict:
    """The HOMFLY specialization: bc = q², x = q⁻¹ - q³, ρ^{ii}_{ii} = q⁻¹, ρ^{ij}_{ij} = q.

    The x entry is ρ^{ji}_{ij} for i < j.
    """
    qi = q ** -1
    rho = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                rho[(i, i, i, i)] = qi
            else:
                rho[(i, j, i, j)] = q
                if i < j:
                    rho[(j, i, i, j)] = qi - q ** 3
    omega = [qi * (-q ** 2) ** k for k in range(n)]
    return {"n": n, "bc": q ** 2, "x": qi - q ** 3, "rho_table": rho, "omega": omega}


def validate_homfly(n, bc, x, rho_table: dict, omega: Sequence):
    """Raise InvalidParameter naming the first violated clause."""
    bc, x = as_scalar(bc), as_scalar(x)
    if n < 2:
        raise InvalidParameter("n must be at least 2")
    if bc.is_zero() or x.is_zero():
        raise InvalidParameter("bc and x must be nonzero")
    rho = {k: as_scalar(v) for k, v in rho_table.items() if as_scalar(v)}
    r = lambda i, l, j, m: rho.get((i, l, j, m), ZERO)
    for (i, l, j, m) in rho:
        if not all(1 <= t <= n for t in (i, l, j, m)):
            raise InvalidParameter(f"clause a): index out of range in {(i, l, j, m)}")
        if {i, l} != {j, m}:
            raise InvalidParameter(f"clause a): rho^{i}{l}_{j}{m} must vanish")
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            if r(i, j, i, j).is_zero():
                raise InvalidParameter(f"clause b): rho^{i}{j}_{i}{j} must be nonzero")
    for i in rng:
        d = r(i, i, i, i)
        if d - bc / d != x:
            raise InvalidParameter(f"clause c): rho^{i}{i}_{i}{i} - bc/rho^{i}{i}_{i}{i} must equal x")
        for j in rng:
            if i < j:
                if r(j, i, i, j) != x:
                    raise InvalidParameter(f"clause c): rho^{j}{i}_{i}{j} must equal x")
                if not r(i, j, j, i).is_zero():
                    raise InvalidParameter(f"clause c): rho^{i}{j}_{j}{i} must vanish")
                if r(i, j, i, j) * r(j, i, j, i) != bc:
                    raise InvalidParameter(f"clause d): rho^{i}{j}_{i}{j} rho^{j}{i}_{j}{i} must equal bc")
    for i in rng:
        for j in rng:
            a, b = r(i, i, i, i), r(j, j, j, j)
            if a != b and a * b != -bc:
                raise InvalidParameter(f"clause e): rho^{i}{i}_{i}{i} and rho^{j}{j}_{j}{j}")
    omega = [as_scalar(w) for w in omega]
    if len(omega) != n or any(w.is_zero() for w in omega):
        raise InvalidParameter("omega must be n nonzero scalars")
    for i in range(2, n + 1):
        ratio = bc / (r(1, 1, 1, 1) * r(i, i, i, i))
        for j in range(2, i):
            ratio = ratio * bc / r(j, j, j, j) ** 2
        if omega[i - 1] ** 2 != ratio * omega[0] ** 2:
            raise InvalidParameter(f"omega-square condition fails at i={i}")
    return rho, omega


def homfly_structure(n: int, bc=None, x=None, rho_table=None, omega=None) -> TwistOQC:
    """Balanced strict structure on C_n with b(e^i_j, e^l_m) = ρ^{il}_{jm} and diagonal twist.

    Missing parameters default to the HOMFLY specialization.
    """
    defaults = homfly_parameters(n) if n >= 2 else None
    if defaults is None:
        raise InvalidParameter("n must be at least 2")
    bc = defaults["bc"] if bc is None else bc
    x = defaults["x"] if x is None else x
    rho_table = defaults["rho_table"] if rho_table is None else rho_table
    omega = defaults["omega"] if omega is None else omega
    rho, omega = validate_homfly(n, bc, x, rho_table, omega)
    C = comatrix(n)
    B = [[ZERO] * (n * n) for _ in range(n * n)]
    for (i, l, j, m), v in rho.items():
        B[_comatrix_index(n, i, j)][_comatrix_index(n, l, m)] = v
    T = diagonal_twist(n, omega)
    base = OrientedQuantumCoalgebra(C, Matrix(B), T, T, strict=True)
    return TwistOQC(base, diagonal_G(n, [w * w for w in omega]))


# duality ---------------------------------------------------------------------------------

def dual_coalgebra(A) -> Coalgebra:
    delta = {}
    for (i, j), row in A.mult.items():
        for k, v in row.items():
            delta.setdefault(k, {})[(i, j)] = v
    labels = [lab.replace("E", "e") for lab in A.labels]
    return Coalgebra(A.dim, delta, A.unit, labels, comatrix_n=A.matrix_n)


def dual_oqc(O: OrientedQuantumAlgebra) -> OrientedQuantumCoalgebra:
    require(check_oqa(O), "oriented quantum algebra")
    C = dual_coalgebra(O.A)
    n = O.A.dim
    B = Matrix([[O.rho.get((i, j), ZERO) for j in range(n)] for i in range(n)], cols=n)
    Binv = Matrix([[O.rho_inv.get((i, j), ZERO) for j in range(n)] for i in range(n)], cols=n)
    return OrientedQuantumCoalgebra(C, B, O.td.transpose(), O.tu.transpose(), Binv, strict=True)


# constructions --------------------------------------------------------------------------

def standardize(S: OrientedQuantumCoalgebra) -> OrientedQuantumCoalgebra:
    require(check_oqc(S), "input structure")
    I = Matrix.identity(S.dim)
    return OrientedQuantumCoalgebra(S.C, S.b, I, S.Td @ S.Tu, S.b_inv, strict=S.strict)


def from_quantum(Q: QuantumCoalgebra) -> OrientedQuantumCoalgebra:
    require(check_qc(Q), "quantum coalgebra")
    I = Matrix.identity(Q.C.dim)
    return OrientedQuantumCoalgebra(Q.C, Q.b, I, Q.S ** -2, Q.b_inv, strict=Q.is_strict())


def _blocks(tl, tr, bl, br) -> Matrix:
    rows = [list(a) + list(b) for a, b in zip(tl.data, tr.data)]
    rows += [list(a) + list(b) for a, b in zip(bl.data, br.data)]
    return Matrix(rows)


def double_coalgebra(S: OrientedQuantumCoalgebra):
    """Quantum coalgebra on C ⊕ C^cop, its oriented structure, and the inclusion ι."""
    require(check_oqc(S), "input structure")
    m = S.dim
    big = direct_sum(S.C, opposite(S.C))
    W = (S.Td @ S.Tu).inverse()
    B, Bi = S.b, S.b_inv
    # β(c, d) = b(c, d) = β(c̄, d̄), β(c̄, d) = b⁻¹(c, d), β(c, d̄) = b⁻¹(c, W d)
    beta = _blocks(B, Bi @ W, Bi, B)
    Z, I = Matrix.zeros(m), Matrix.identity(m)
    antipode = _blocks(Z, W, I, Z)
    Q = QuantumCoalgebra(big, beta, antipode)
    oriented = OrientedQuantumCoalgebra(big, beta, _blocks(S.Td, Z, Z, S.Td), _blocks(S.Tu, Z, Z, S.Tu),
                                        Q.b_inv, strict=S.strict)
    iota = Matrix([list(r) for r in I.data] + [list(r) for r in Z.data])
    return Q, oriented, iota


def tensor_oqc(S1: OrientedQuantumCoalgebra, S2: OrientedQuantumCoalgebra) -> OrientedQuantumCoalgebra:
    C = tensor_coalgebra(S1.C, S2.C)
    b_inv = S1.b_inv.kron(S2.b_inv) if S1.b_inv is not None and S2.b_inv is not None else None
    return OrientedQuantumCoalgebra(C, S1.b.kron(S2.b), S1.Td.kron(S2.Td), S1.Tu.kron(S2.Tu), b_inv,
                                    strict=S1.strict and S2.strict)


def opposite_variants(S: OrientedQuantumCoalgebra) -> dict:
    cop = OrientedQuantumCoalgebra(opposite(S.C), S.b, S.Td, S.Tu, S.b_inv, strict=S.strict)
    inv = OrientedQuantumCoalgebra(S.C, S.b_inv, S.Td.inverse(), S.Tu.inverse(), S.b, strict=S.strict)
    # swapping alone breaks (qc.1) once T_d T_u != 1; the swapped maps must also be inverted
    op = OrientedQuantumCoalgebra(S.C, S.b.transpose(), S.Tu.inverse(), S.Td.inverse(), S.b_inv.transpose(),
                                  strict=S.strict)
    return {"cop": cop, "inv": inv, "op": op}


def cop_twist(T: TwistOQC) -> TwistOQC:
    """The twist structure over C^cop with the same b, T's and G."""
    return TwistOQC(opposite_variants(T.base)["cop"], T.G, T.G_inv)


def radicals(S: OrientedQuantumCoalgebra):
    """Left and right radicals {x : b(x, C) = 0} and {x : b(C, x) = 0}."""
    left = nullspace([S.b.column(j) for j in range(S.dim)], S.dim)
    right = nullspace([S.b.row(i) for i in range(S.dim)], S.dim)
    return left, right


def minimal_quotient(S: OrientedQuantumCoalgebra):
    """Returns (quotient structure, the coideal I, the projection matrix)."""
    require(check_oqc(S), "input structure")
    left, right = radicals(S)
    I = max_stable_coideal(S.C, [left, right], [S.Td, S.Tu])
    P = QuotientMap(S.C, I)
    Cr = P.quotient()
    keep = P.kept
    Br = Matrix([[S.b.data[a][c] for c in keep] for a in keep], cols=len(keep))
    Td = P.matrix @ S.Td @ P.section
    Tu = P.matrix @ S.Tu @ P.section
    if not I:
        return OrientedQuantumCoalgebra(Cr, Br, Td, Tu, S.b_inv, strict=S.strict), I, P.matrix
    return OrientedQuantumCoalgebra(Cr, Br, Td, Tu, strict=S.strict), I, P.matrix


def is_oqc_morphism(f: Matrix, S1: OrientedQuantumCoalgebra, S2: OrientedQuantumCoalgebra) -> bool:
    if f.shape != (S2.dim, S1.dim):
        return False
    if not is_coalgebra_map(f, S1.C, S2.C):
        return False
    if f.transpose() @ S2.b @ f != S1.b:
        return False
    return S2.Td @ f == f @ S1.Td and S2.Tu @ f == f @ S1.Tu


def is_qc_morphism(f: Matrix, Q1: QuantumCoalgebra, Q2: QuantumCoalgebra) -> bool:
    return (is_coalgebra_map(f, Q1.C, Q2.C) and f.transpose() @ Q2.b @ f == Q1.b
            and Q2.S @ f == f @ Q1.S)


def automorphism_group_closure_check(C: Coalgebra, forms: Sequence[Matrix], maps: Sequence[Matrix],
                                     window: int = 2) -> CheckReport:
    """Closure of the maps satisfying (qc.2) and the automorphism equations, plus shifted exponents."""
    for k, T in enumerate(maps):
        if not _invertible(T) or any(twisted(B, T, T) != B for B in forms):
            raise AxiomViolation(f"map {k} does not satisfy (qc.2) for the given forms")
    res = []
    generated = []
    for T in maps:
        generated.append(("T", T))
        generated.append(("T^-1", T.inverse()))
    for a, T in enumerate(maps):
        for c, U in enumerate(maps):
            generated.append((f"T{a}^-1 T{c}", T.inverse() @ U))
            generated.append((f"T{a} T{c}", T @ U))
    w = []
    for name, M in generated:
        if any(twisted(B, M, M) != B for B in forms):
            w.append(f"{name}: qc.2")
        bad = automorphism_witnesses(C, M, forms, limit=1)
        if bad:
            w.append(f"{name}: {bad[0]}")
    res.append(AxiomResult("group closure", not w, w[:8]))
    w = []
    rng = range(-window, window + 1)
    for k, T in enumerate(maps):
        powers = {e: T ** e for e in range(-3 * window, 3 * window + 1)}
        for u in rng:
            for v in rng:
                for l in rng:
                    A, Bm = powers[u + l], powers[v + l]
                    Tl = powers[l]
                    for i in range(C.dim):
                        lhs: dict = {}
                        for (j, kk), val in C.delta[i].items():
                            for x, s1 in enumerate(A.column(j)):
                                if s1:
                                    for y, s2 in enumerate(Bm.column(kk)):
                                        if s2:
                                            lhs[(x, y)] = lhs.get((x, y), ZERO) + val * s1 * s2
                        rhs: dict = {}
                        for (j, kk), val in C.coproduct(Tl.column(i)).items():
                            for x, s1 in enumerate(powers[u].column(j)):
                                if s1:
                                    for y, s2 in enumerate(powers[v].column(kk)):
                                        if s2:
                                            rhs[(x, y)] = rhs.get((x, y), ZERO) + val * s1 * s2
                        diff = {key: lhs.get(key, ZERO) - rhs.get(key, ZERO) for key in set(lhs) | set(rhs)}
                        diff = {key: val for key, val in diff.items() if val}
                        if not diff:
                            continue
                        for B1 in forms:
                            for B2 in forms:
                                for side in (0, 1):
                                    for d in range(C.dim):
                                        for e in range(C.dim):
                                            acc = ZERO
                                            for (x, y), val in diff.items():
                                                p = B1.data[x][d] if side == 0 else B1.data[d][x]
                                                r = B2.data[y][e] if side == 0 else B2.data[e][y]
                                                if p and r:
                                                    acc = acc + val * p * r
                                            if acc:
                                                w.append(f"map {k} u={u} v={v} l={l} at {_labels(C, i, d, e)}")
    res.append(AxiomResult("shifted exponent identities", not w, w[:8]))
    return CheckReport(res)


# text format ---------------------------------------------------------------------------

class StructureFormatError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def parse_structure(text: str):
    """Parse a structure file; returns a TwistOQC if G lines are present, else an OQC."""
    try:
        C, rest = parse_coalgebra_lines(list(enumerate(text.splitlines(), 1)))
    except CoalgebraFormatError as exc:
        raise StructureFormatError(str(exc)) from None
    n = C.dim
    mats = {"b": [[ZERO] * n for _ in range(n)], "Td": [[ZERO] * n for _ in range(n)],
            "Tu": [[ZERO] * n for _ in range(n)]}
    seen = set()
    G = [ZERO] * n
    has_G = False
    for lineno, raw in rest:
        parts = raw.split("#", 1)[0].split(None, 3)
        kw = parts[0]
        try:
            if kw in mats:
                if len(parts) != 4:
                    raise StructureFormatError(f"expected '{kw} i j <scalar>'", lineno)
                i, j = int(parts[1]) - 1, int(parts[2]) - 1
                if not (0 <= i < n and 0 <= j < n):
                    raise StructureFormatError("index out of range", lineno)
                mats[kw][i][j] = parse_scalar(parts[3])
                seen.add(kw)
            elif kw == "G":
                parts = raw.split("#", 1)[0].split(None, 2)
                if len(parts) != 3:
                    raise StructureFormatError("expected 'G i <scalar>'", lineno)
                i = int(parts[1]) - 1
                if not 0 <= i < n:
                    raise StructureFormatError("index out of range", lineno)
                G[i] = parse_scalar(parts[2])
                has_G = True
            else:
                raise StructureFormatError(f"unknown directive {kw!r}", lineno)
        except MalformedScalar as exc:
            raise StructureFormatError(str(exc), lineno) from None
        except ValueError as exc:
            if isinstance(exc, StructureFormatError):
                raise
            raise StructureFormatError(str(exc), lineno) from None
    for kw in ("Td", "Tu"):
        if kw not in seen:
            mats[kw] = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    S = OrientedQuantumCoalgebra(C, Matrix(mats["b"], cols=n), Matrix(mats["Td"], cols=n),
                                 Matrix(mats["Tu"], cols=n), strict=True)
    S.strict = is_coalgebra_map(S.Td, C, C) and is_coalgebra_map(S.Tu, C, C) if n else True
    if has_G:
        try:
            return TwistOQC(S, Functional(G))
        except (NoSolutionError, NonUniqueSolutionError):
            raise StructureFormatError("G has no convolution inverse") from None
    return S


def render_structure(S) -> str:
    G = None
    if isinstance(S, TwistOQC):
        G, S = S.G, S.base
    lines = [S.C.render().rstrip("\n")]
    for name, M in (("b", S.b), ("Td", S.Td), ("Tu", S.Tu)):
        for i in range(M.rows):
            for j in range(M.cols):
                if M.data[i][j]:
                    lines.append(f"{name} {i + 1} {j + 1} {M.data[i][j]}")
    if G is not None:
        for i, v in enumerate(G.coords):
            if v:
                lines.append(f"G {i + 1} {v}")
    return "\n".join(lines) + "\n"
