"""Finite-dimensional algebras and the algebra-side structures (A, ρ, s), (A, ρ, t_d, t_u).

Elements of A are dense coordinate lists; elements of A⊗A (and A⊗A⊗A) are
sparse dicts keyed by index pairs (triples).  Linear maps on A are matrices
whose column j holds the image of basis element j.
"""

from __future__ import annotations

from typing import Sequence

from .exactnum import ONE, ZERO, Matrix, NoSolutionError, NonUniqueSolutionError, as_scalar, solve_system


def _add_into(acc: dict, key, value):
    v = acc.get(key)
    v = value if v is None else v + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class Algebra:
    """Associative unital algebra: e_i e_j = Σ_k mult[(i, j)][k] e_k."""

    def __init__(self, dim: int, mult: dict, unit: Sequence, labels=None, matrix_n=None):
        self.dim = dim
        self.mult = {ij: {k: as_scalar(v) for k, v in row.items() if v} for ij, row in mult.items()}
        self.unit = [as_scalar(x) for x in unit]
        self.labels = list(labels) if labels else [f"a{i + 1}" for i in range(dim)]
        self.matrix_n = matrix_n

    def basis(self, i):
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def product(self, x: Sequence, y: Sequence) -> list:
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, v in self.mult.get((i, j), {}).items():
                    out[k] = out[k] + a * b * v
        return out

    def basis_product(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def associativity_failures(self, limit=8):
        bad = []
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.product(self.basis(i), self.basis(j))
                for k in range(self.dim):
                    if self.product(ij, self.basis(k)) != self.product(self.basis(i),
                                                                       self.product(self.basis(j), self.basis(k))):
                        bad.append((self.labels[i], self.labels[j], self.labels[k]))
                        if len(bad) >= limit:
                            return bad
        return bad

    def unit_failures(self):
        return [self.labels[i] for i in range(self.dim)
                if self.product(self.unit, self.basis(i)) != self.basis(i)
                or self.product(self.basis(i), self.unit) != self.basis(i)]


def matrix_algebra(n: int) -> Algebra:
    """M_n with E^i_j at index (i-1)*n + (j-1)."""
    mult = {}
    for i in range(n):
        for j in range(n):
            for m in range(n):
                mult[(i * n + j, j * n + m)] = {i * n + m: ONE}
    unit = [ONE if i == j else ZERO for i in range(n) for j in range(n)]
    labels = [f"E^{i + 1}_{j + 1}" for i in range(n) for j in range(n)]
    return Algebra(n * n, mult, unit, labels, matrix_n=n)


def opposite_algebra(A: Algebra) -> Algebra:
    return Algebra(A.dim, {(j, i): row for (i, j), row in A.mult.items()}, A.unit, A.labels)


def direct_product(A: Algebra, B: Algebra) -> Algebra:
    m = A.dim
    mult = dict(A.mult)
    for (i, j), row in B.mult.items():
        mult[(m + i, m + j)] = {m + k: v for k, v in row.items()}
    labels = list(A.labels) + [f"{x}'" for x in B.labels]
    return Algebra(m + B.dim, mult, list(A.unit) + list(B.unit), labels)


# tensors ---------------------------------------------------------------------

def tensor_mul(algebras: Sequence[Algebra], x: dict, y: dict) -> dict:
    """Product in A_1 ⊗ ... ⊗ A_r of sparse tensors keyed by index tuples."""
    out: dict = {}
    for kx, a in x.items():
        for ky, b in y.items():
            partial = {(): a * b}
            for slot, Alg in enumerate(algebras):
                row = Alg.mult.get((kx[slot], ky[slot]))
                if not row:
                    partial = {}
                    break
                nxt = {}
                for key, v in partial.items():
                    for k, w in row.items():
                        nxt[key + (k,)] = v * w
                partial = nxt
            for key, v in partial.items():
                _add_into(out, key, v)
    return out


def tensor_unit(algebras: Sequence[Algebra]) -> dict:
    out = {(): ONE}
    for Alg in algebras:
        nxt = {}
        for key, v in out.items():
            for k, u in enumerate(Alg.unit):
                if u:
                    nxt[key + (k,)] = v * u
        out = nxt
    return out


def tensor_map(x: dict, maps: Sequence[Matrix | None]) -> dict:
    """Apply f_1 ⊗ ... ⊗ f_r (None = identity) to a tensor."""
    out: dict = {}
    for key, a in x.items():
        partial = {(): a}
        for slot, f in enumerate(maps):
            nxt = {}
            if f is None:
                for k2, v in partial.items():
                    nxt[k2 + (key[slot],)] = v
            else:
                col = f.column(key[slot])
                for k2, v in partial.items():
                    for t, w in enumerate(col):
                        if w:
                            nxt[k2 + (t,)] = v * w
            partial = nxt
        for k2, v in partial.items():
            _add_into(out, k2, v)
    return out


def legs(rho: dict, which: tuple, unit: Sequence) -> dict:
    """ρ_{12}, ρ_{13} or ρ_{23} inside A⊗A⊗A."""
    out: dict = {}
    free = ({0, 1, 2} - set(which)).pop()
    for (i, j), a in rho.items():
        for u, w in enumerate(unit):
            if w:
                key = [0, 0, 0]
                key[which[0]], key[which[1]], key[free] = i, j, u
                _add_into(out, tuple(key), a * w)
    return out


def tensor_inverse(algebras: Sequence[Algebra], x: dict) -> dict:
    """Two-sided inverse of an element of A⊗B; raises if none exists."""
    dims = [A.dim for A in algebras]
    keys = [(i, j) for i in range(dims[0]) for j in range(dims[1])]
    index = {k: t for t, k in enumerate(keys)}
    rows: dict = {}
    # columns: unknown coefficients y_k; equations from x*y and y*x
    for k, t in index.items():
        unit_k = {k: ONE}
        for side in (0, 1):
            prod = tensor_mul(algebras, x, unit_k) if side == 0 else tensor_mul(algebras, unit_k, x)
            for key, v in prod.items():
                rows.setdefault((side, key), {})[t] = v
    one = tensor_unit(algebras)
    eq_rows, rhs = [], []
    for side in (0, 1):
        for key in keys:
            eq_rows.append(rows.get((side, key), {}))
            rhs.append(one.get(key, ZERO))
    try:
        y = solve_system(eq_rows, rhs, len(keys))
    except NoSolutionError:
        raise NotInvertible("element of the tensor algebra is not invertible") from None
    except NonUniqueSolutionError:
        raise NotInvertible("inverse is not unique") from None
    return {keys[t]: v for t, v in enumerate(y) if v}


class NotInvertible(ArithmeticError):
    pass


# structures ----------------------------------------------------------------------

def _is_algebra_map(f: Matrix, A: Algebra, B: Algebra, anti=False) -> bool:
    if f.apply(A.unit) != B.unit:
        return False
    for i in range(A.dim):
        fi = f.column(i)
        for j in range(A.dim):
            fj = f.column(j)
            lhs = f.apply(A.product(A.basis(i), A.basis(j)))
            rhs = B.product(fj, fi) if anti else B.product(fi, fj)
            if lhs != rhs:
                return False
    return True


def _invertible(f: Matrix) -> bool:
    return f.is_square() and f.rank() == f.rows


class QuantumAlgebra:
    def __init__(self, A: Algebra, rho: dict, s: Matrix, rho_inv: dict | None = None):
        self.A, self.rho, self.s = A, {k: as_scalar(v) for k, v in rho.items() if v}, s
        if rho_inv is None:
            try:
                rho_inv = tensor_inverse([A, A], self.rho)
            except NotInvertible:
                rho_inv = None
        self.rho_inv = rho_inv


class OrientedQuantumAlgebra:
    def __init__(self, A: Algebra, rho: dict, td: Matrix, tu: Matrix, rho_inv: dict | None = None):
        self.A, self.rho, self.td, self.tu = A, {k: as_scalar(v) for k, v in rho.items() if v}, td, tu
        if rho_inv is None:
            try:
                rho_inv = tensor_inverse([A, A], self.rho)
            except NotInvertible:
                rho_inv = None
        self.rho_inv = rho_inv


def _label_pair(A, key):
    return "(" + ", ".join(A.labels[k] for k in key) + ")"


def _diff_witnesses(A, x: dict, y: dict, limit=8):
    keys = sorted(set(x) | set(y))
    return [_label_pair(A, k) for k in keys if x.get(k, ZERO) != y.get(k, ZERO)][:limit]


def _yang_baxter(A: Algebra, rho: dict):
    three = [A, A, A]
    r12, r13, r23 = (legs(rho, w, A.unit) for w in ((0, 1), (0, 2), (1, 2)))
    lhs = tensor_mul(three, tensor_mul(three, r12, r13), r23)
    rhs = tensor_mul(three, tensor_mul(three, r23, r13), r12)
    return _diff_witnesses(A, lhs, rhs)


def check_qa(Q: QuantumAlgebra):
    from .structures import AxiomResult, CheckReport
    A = Q.A
    results = []
    inv_ok = Q.rho_inv is not None
    results.append(AxiomResult("rho invertible", inv_ok, [] if inv_ok else ["no inverse in A⊗A"]))
    s_ok = _invertible(Q.s) and _is_algebra_map(Q.s, A, A, anti=True)
    results.append(AxiomResult("s algebra isomorphism A -> A^op", s_ok, [] if s_ok else ["s"]))
    if inv_ok:
        w = _diff_witnesses(A, tensor_map(Q.rho, [Q.s, None]), Q.rho_inv)
        results.append(AxiomResult("QA.1", not w, w))
    else:
        results.append(AxiomResult("QA.1", False, ["rho not invertible"]))
    w = _diff_witnesses(A, tensor_map(Q.rho, [Q.s, Q.s]), Q.rho)
    results.append(AxiomResult("QA.2", not w, w))
    w = _yang_baxter(A, Q.rho)
    results.append(AxiomResult("QA.3", not w, w))
    return CheckReport(results)


def check_oqa(O: OrientedQuantumAlgebra):
    from .structures import AxiomResult, CheckReport
    A = O.A
    results = []
    inv_ok = O.rho_inv is not None
    results.append(AxiomResult("rho invertible", inv_ok, [] if inv_ok else ["no inverse in A⊗A"]))
    for name, t in (("t_d", O.td), ("t_u", O.tu)):
        ok = _invertible(t) and _is_algebra_map(t, A, A)
        results.append(AxiomResult(f"{name} algebra automorphism", ok, [] if ok else [name]))
    comm = O.td @ O.tu == O.tu @ O.td
    results.append(AxiomResult("t_d t_u commute", comm, [] if comm else ["t_d t_u != t_u t_d"]))
    if inv_ok:
        Aop = opposite_algebra(A)
        x = tensor_map(O.rho_inv, [O.td, None])
        y = tensor_map(O.rho, [None, O.tu])
        one = tensor_unit([A, Aop])
        w = _diff_witnesses(A, tensor_mul([A, Aop], x, y), one)
        w += _diff_witnesses(A, tensor_mul([A, Aop], y, x), one)
        results.append(AxiomResult("qa.1", not w, w[:8]))
    else:
        results.append(AxiomResult("qa.1", False, ["rho not invertible"]))
    w = _diff_witnesses(A, tensor_map(O.rho, [O.td, O.td]), O.rho)
    w += _diff_witnesses(A, tensor_map(O.rho, [O.tu, O.tu]), O.rho)
    results.append(AxiomResult("qa.2", not w, w[:8]))
    w = _yang_baxter(A, O.rho)
    results.append(AxiomResult("qa.3", not w, w))
    return CheckReport(results)


# builders --------------------------------------------------------------------------

def matrix_map(n: int, fn) -> Matrix:
    """n²×n² matrix of a linear map on M_n given as a function on Matrix objects."""
    cols = []
    for i in range(n):
        for j in range(n):
            E = Matrix([[ONE if (a, b) == (i, j) else ZERO for b in range(n)] for a in range(n)])
            img = fn(E)
            cols.append([img[a, b] for a in range(n) for b in range(n)])
    return Matrix.from_columns(cols)


def jones_algebra() -> QuantumAlgebra:
    """M_2 with the standard Jones R-matrix and s(x) = M xᵗ M⁻¹."""
    from .exactnum import q
    A = matrix_algebra(2)
    qi = q ** -1
    E11, E12, E21, E22 = 0, 1, 2, 3
    rho = {(E11, E11): qi, (E22, E22): qi, (E11, E22): q, (E22, E11): q, (E21, E12): qi - q ** 3}
    M = Matrix([[0, q], [-qi, 0]])
    Minv = M.inverse()
    s = matrix_map(2, lambda X: M @ X.transpose() @ Minv)
    return QuantumAlgebra(A, rho, s)


def diagonal_twist_map(n: int, omega: Sequence) -> Matrix:
    """t(E^i_j) = (ω_i/ω_j) E^i_j."""
    omega = [as_scalar(w) for w in omega]
    return Matrix.diagonal([omega[i] / omega[j] for i in range(n) for j in range(n)])


def homfly_algebra(n: int, rho_table: dict, omega: Sequence) -> OrientedQuantumAlgebra:
    """Balanced (M_n, ρ, t) from ``{(i, l, j, m): ρ^{il}_{jm}}`` (1-based) and ω."""
    A = matrix_algebra(n)
    rho = {}
    for (i, l, j, m), v in rho_table.items():
        rho[((i - 1) * n + (j - 1), (l - 1) * n + (m - 1))] = as_scalar(v)
    t = diagonal_twist_map(n, omega)
    return OrientedQuantumAlgebra(A, rho, t, t)


def oriented_from_quantum(Q: QuantumAlgebra, standard: bool = True) -> OrientedQuantumAlgebra:
    """(A, ρ, 1, s⁻²) when ``standard`` else (A, ρ, s⁻², 1)."""
    s2 = Q.s ** -2
    I = Matrix.identity(Q.A.dim)
    if standard:
        return OrientedQuantumAlgebra(Q.A, Q.rho, I, s2, Q.rho_inv)
    return OrientedQuantumAlgebra(Q.A, Q.rho, s2, I, Q.rho_inv)


def _block(top_left, top_right, bottom_left, bottom_right) -> Matrix:
    rows = []
    for r1, r2 in zip(top_left.data, top_right.data):
        rows.append(list(r1) + list(r2))
    for r1, r2 in zip(bottom_left.data, bottom_right.data):
        rows.append(list(r1) + list(r2))
    return Matrix(rows)


def double_algebra(O: OrientedQuantumAlgebra):
    """The quantum algebra on A ⊕ A^op, its oriented structure, and the projection π."""
    A = O.A
    m = A.dim
    if O.rho_inv is None:
        raise NotInvertible("rho is not invertible")
    W = (O.td @ O.tu).inverse()
    big = direct_product(A, opposite_algebra(A))
    rho: dict = {}
    for (i, j), v in O.rho.items():
        _add_into(rho, (i, j), v)
        _add_into(rho, (m + i, m + j), v)
    for (i, j), v in O.rho_inv.items():
        _add_into(rho, (m + i, j), v)
        for k, w in enumerate(W.column(j)):
            if w:
                _add_into(rho, (i, m + k), v * w)
    Z = Matrix.zeros(m)
    I = Matrix.identity(m)
    s = _block(Z, I, W, Z)
    td = _block(O.td, Z, Z, O.td)
    tu = _block(O.tu, Z, Z, O.tu)
    proj = Matrix([list(r) + [ZERO] * m for r in I.data])
    return QuantumAlgebra(big, rho, s), OrientedQuantumAlgebra(big, rho, td, tu), proj


def universal_morphism(f: Matrix, s_prime: Matrix) -> Matrix:
    """F(x) = f(x) ⊕ f(s'(x)) as a block column matrix."""
    g = f @ s_prime
    return Matrix([list(r) for r in f.data] + [list(r) for r in g.data])


def is_oqa_morphism(f: Matrix, O1: OrientedQuantumAlgebra, O2: OrientedQuantumAlgebra) -> bool:
    if not _is_algebra_map(f, O1.A, O2.A):
        return False
    if tensor_map(O1.rho, [f, f]) != O2.rho:
        return False
    return O2.td @ f == f @ O1.td and O2.tu @ f == f @ O1.tu


def is_qa_morphism(f: Matrix, Q1: QuantumAlgebra, Q2: QuantumAlgebra) -> bool:
    if not _is_algebra_map(f, Q1.A, Q2.A):
        return False
    return tensor_map(Q1.rho, [f, f]) == Q2.rho and Q2.s @ f == f @ Q1.s
