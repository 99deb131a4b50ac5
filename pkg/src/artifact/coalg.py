"""Finite-dimensional coalgebras given by structure constants.

Elements of a coalgebra are dense coordinate lists over the basis.  Tensors
(coproducts, iterated coproducts) are sparse dicts keyed by index tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactnum import (ONE, ZERO, Matrix, MalformedScalar, RationalFunction, as_scalar,
                       intersect_spaces, nullspace, parse_scalar, span_basis)


class InvalidParameter(ValueError):
    pass


class CoalgebraFormatError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _add_into(acc: dict, key, value):
    v = acc.get(key)
    v = value if v is None else v + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@dataclass(frozen=True)
class Functional:
    """A linear functional on a coalgebra, stored by its values on the basis."""

    coords: tuple

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(as_scalar(x) for x in coords))

    def __call__(self, element: Sequence) -> RationalFunction:
        acc = ZERO
        for a, x in zip(self.coords, element):
            if a and x:
                acc = acc + a * x
        return acc

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        return Functional(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return Functional(a - b for a, b in zip(self.coords, other.coords))

    def scale(self, s):
        s = as_scalar(s)
        return Functional(s * a for a in self.coords)

    def compose(self, T: Matrix) -> "Functional":
        """The functional f∘T."""
        return Functional(self(T.column(j)) for j in range(T.cols))

    def __repr__(self):
        return "Functional([" + ", ".join(str(a) for a in self.coords) + "])"


class Coalgebra:
    """Coalgebra with Δ(e_i) = Σ delta[i][(j, k)] e_j ⊗ e_k and counit ε."""

    def __init__(self, dim: int, delta: dict, counit: Sequence, labels: Sequence[str] | None = None,
                 comatrix_n: int | None = None):
        self.dim = dim
        self.delta = {i: {jk: as_scalar(v) for jk, v in delta.get(i, {}).items() if v} for i in range(dim)}
        self.counit = tuple(as_scalar(x) for x in counit)
        if len(self.counit) != dim:
            raise InvalidParameter("counit has the wrong length")
        self.labels = list(labels) if labels else [f"e{i + 1}" for i in range(dim)]
        # set when the basis is the standard comatrix basis; enables path fast paths
        self.comatrix_n = comatrix_n

    # basics -------------------------------------------------------------
    def basis(self, i: int) -> list:
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element named {label!r}") from None

    def element(self, coeffs: dict) -> list:
        """Element from ``{label or index: scalar}``."""
        v = [ZERO] * self.dim
        for key, a in coeffs.items():
            i = self.index(key) if isinstance(key, str) else key
            v[i] = v[i] + as_scalar(a)
        return v

    def counit_of(self, element: Sequence) -> RationalFunction:
        return Functional(self.counit)(element)

    def epsilon(self) -> Functional:
        return Functional(self.counit)

    def coproduct(self, element: Sequence) -> dict:
        out: dict = {}
        for i, a in enumerate(element):
            if a:
                for jk, v in self.delta[i].items():
                    _add_into(out, jk, a * v)
        return out

    def __eq__(self, other):
        return (isinstance(other, Coalgebra) and self.dim == other.dim
                and self.delta == other.delta and self.counit == other.counit)

    def __repr__(self):
        return f"Coalgebra(dim={self.dim})"

    # laws ---------------------------------------------------------------
    def coassociativity_failures(self, limit: int = 8) -> list:
        bad = []
        for i in range(self.dim):
            left: dict = {}
            right: dict = {}
            for (j, k), v in self.delta[i].items():
                for (a, b), w in self.delta[j].items():
                    _add_into(left, (a, b, k), v * w)
                for (a, b), w in self.delta[k].items():
                    _add_into(right, (j, a, b), v * w)
            if left != right:
                bad.append(self.labels[i])
                if len(bad) >= limit:
                    break
        return bad

    def counit_failures(self, limit: int = 8) -> list:
        bad = []
        for i in range(self.dim):
            left = [ZERO] * self.dim
            right = [ZERO] * self.dim
            for (j, k), v in self.delta[i].items():
                if self.counit[j]:
                    left[k] = left[k] + self.counit[j] * v
                if self.counit[k]:
                    right[j] = right[j] + self.counit[k] * v
            e = self.basis(i)
            if left != e or right != e:
                bad.append(self.labels[i])
                if len(bad) >= limit:
                    break
        return bad

    def is_valid(self) -> bool:
        return not self.coassociativity_failures(1) and not self.counit_failures(1)

    # text format ----------------------------------------------------------
    def render(self) -> str:
        lines = [f"coalgebra dim={self.dim}"]
        for i, lab in enumerate(self.labels):
            lines.append(f"label {i + 1} {lab}")
        for i in range(self.dim):
            for (j, k), v in sorted(self.delta[i].items()):
                lines.append(f"delta {i + 1} {j + 1} {k + 1} {v}")
        for i, v in enumerate(self.counit):
            if v:
                lines.append(f"counit {i + 1} {v}")
        return "\n".join(lines) + "\n"


def _parse_index(tok: str, dim: int, lineno: int) -> int:
    try:
        i = int(tok)
    except ValueError:
        raise CoalgebraFormatError(f"expected an index, got {tok!r}", lineno) from None
    if not 1 <= i <= dim:
        raise CoalgebraFormatError(f"index {i} out of range 1..{dim}", lineno)
    return i - 1


def parse_coalgebra_lines(lines: list, start: int = 0):
    """Parse the coalgebra block; returns (coalgebra, remaining (lineno, text) pairs)."""
    header = None
    delta: dict = {}
    counit: dict = {}
    labels: dict = {}
    rest = []
    for lineno, raw in lines:
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        if header is None:
            m = re.fullmatch(r"coalgebra\s+dim\s*=\s*(\d+)", text)
            if not m:
                raise CoalgebraFormatError("expected header 'coalgebra dim=<n>'", lineno)
            header = int(m.group(1))
            continue
        parts = text.split(None, 4)
        kw = parts[0]
        try:
            if kw == "delta":
                if len(parts) != 5:
                    raise CoalgebraFormatError("expected 'delta i j k <scalar>'", lineno)
                i, j, k = (_parse_index(t, header, lineno) for t in parts[1:4])
                delta.setdefault(i, {})[(j, k)] = parse_scalar(parts[4])
            elif kw == "counit":
                parts = text.split(None, 2)
                if len(parts) != 3:
                    raise CoalgebraFormatError("expected 'counit i <scalar>'", lineno)
                counit[_parse_index(parts[1], header, lineno)] = parse_scalar(parts[2])
            elif kw == "label":
                parts = text.split(None, 2)
                if len(parts) != 3:
                    raise CoalgebraFormatError("expected 'label i <name>'", lineno)
                labels[_parse_index(parts[1], header, lineno)] = parts[2]
            else:
                rest.append((lineno, raw))
        except MalformedScalar as exc:
            raise CoalgebraFormatError(str(exc), lineno) from None
    if header is None:
        raise CoalgebraFormatError("missing 'coalgebra dim=<n>' header")
    names = [labels.get(i, f"e{i + 1}") for i in range(header)]
    C = Coalgebra(header, delta, [counit.get(i, ZERO) for i in range(header)], names)
    return C, rest


def parse_coalgebra(text: str) -> Coalgebra:
    C, rest = parse_coalgebra_lines(list(enumerate(text.splitlines(), 1)))
    if rest:
        lineno, raw = rest[0]
        raise CoalgebraFormatError(f"unknown directive {raw.split()[0]!r}", lineno)
    return C


# builders ------------------------------------------------------------------

def comatrix(n: int) -> Coalgebra:
    """The comatrix coalgebra C_n with basis e^i_j stored at index (i-1)*n + (j-1)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter("comatrix size must be a positive integer")
    delta = {}
    for i in range(n):
        for j in range(n):
            delta[i * n + j] = {(i * n + l, l * n + j): ONE for l in range(n)}
    counit = [ONE if i == j else ZERO for i in range(n) for j in range(n)]
    labels = ["g"] if n == 1 else [f"e^{i + 1}_{j + 1}" for i in range(n) for j in range(n)]
    return Coalgebra(n * n, delta, counit, labels, comatrix_n=n)


def trace_element(C: Coalgebra) -> list:
    """Σ e^i_i for a comatrix coalgebra."""
    if C.comatrix_n is None:
        raise InvalidParameter("the trace element is defined for comatrix coalgebras")
    n = C.comatrix_n
    v = [ZERO] * C.dim
    for i in range(n):
        v[i * n + i] = ONE
    return v


def zero_coalgebra() -> Coalgebra:
    return Coalgebra(0, {}, [], [])


def opposite(C: Coalgebra) -> Coalgebra:
    delta = {i: {(k, j): v for (j, k), v in C.delta[i].items()} for i in range(C.dim)}
    return Coalgebra(C.dim, delta, C.counit, C.labels)


def direct_sum(C: Coalgebra, D: Coalgebra) -> Coalgebra:
    m = C.dim
    delta = {i: dict(C.delta[i]) for i in range(m)}
    for i in range(D.dim):
        delta[m + i] = {(j + m, k + m): v for (j, k), v in D.delta[i].items()}
    labels = [f"{x}" for x in C.labels] + [f"{x}'" for x in D.labels]
    return Coalgebra(m + D.dim, delta, list(C.counit) + list(D.counit), labels)


def tensor_coalgebra(C: Coalgebra, D: Coalgebra) -> Coalgebra:
    """C ⊗ D with basis e_i ⊗ f_j at index i * dim D + j."""
    m = D.dim
    delta = {}
    for i in range(C.dim):
        for j in range(m):
            out = {}
            for (a, b), v in C.delta[i].items():
                for (c, d), w in D.delta[j].items():
                    _add_into(out, (a * m + c, b * m + d), v * w)
            delta[i * m + j] = out
    counit = [C.counit[i] * D.counit[j] for i in range(C.dim) for j in range(m)]
    labels = [f"{a}*{b}" for a in C.labels for b in D.labels]
    return Coalgebra(C.dim * m, delta, counit, labels)


# coproduct calculus ------------------------------------------------------------

def iterated_coproduct(C: Coalgebra, element: Sequence, m: int) -> dict:
    """Δ^{(m-1)} of an element, as a sparse dict over index m-tuples."""
    if m < 1:
        raise InvalidParameter("iterated coproduct needs m >= 1")
    cur = {(i,): a for i, a in enumerate(element) if a}
    for _ in range(m - 1):
        nxt: dict = {}
        for key, a in cur.items():
            for (j, k), v in C.delta[key[-1]].items():
                _add_into(nxt, key[:-1] + (j, k), a * v)
        cur = nxt
    return cur


def split_slot(C: Coalgebra, tensor: dict, slot: int) -> dict:
    """Apply Δ to one tensor slot."""
    out: dict = {}
    for key, a in tensor.items():
        for (j, k), v in C.delta[key[slot]].items():
            _add_into(out, key[:slot] + (j, k) + key[slot + 1:], a * v)
    return out


def dual_product(C: Coalgebra, f: Functional, g: Functional) -> Functional:
    out = []
    for i in range(C.dim):
        acc = ZERO
        for (j, k), v in C.delta[i].items():
            x, y = f[j], g[k]
            if x and y:
                acc = acc + v * x * y
        out.append(acc)
    return Functional(out)


def dual_power(C: Coalgebra, f: Functional, k: int, f_inv: Functional | None = None) -> Functional:
    if k < 0:
        if f_inv is None:
            f_inv = dual_inverse(C, f)
        f, k = f_inv, -k
    out = C.epsilon()
    for _ in range(k):
        out = dual_product(C, out, f)
    return out


def dual_inverse(C: Coalgebra, f: Functional) -> Functional:
    """Convolution inverse of a functional (raises if it does not exist)."""
    from .exactnum import solve_system
    rows, rhs = [], []
    # (g f)(e_i) = ε_i and (f g)(e_i) = ε_i, linear in the unknown g
    for i in range(C.dim):
        left, right = {}, {}
        for (j, k), v in C.delta[i].items():
            if f[k]:
                _add_into(left, j, v * f[k])
            if f[j]:
                _add_into(right, k, v * f[j])
        rows += [left, right]
        rhs += [C.counit[i], C.counit[i]]
    x = solve_system(rows, rhs, C.dim)
    return Functional(x)


def hit_left(C: Coalgebra, f: Functional, element: Sequence) -> list:
    """f ⇀ c = c_(1) f(c_(2))."""
    out = [ZERO] * C.dim
    for (j, k), v in C.coproduct(element).items():
        if f[k]:
            out[j] = out[j] + v * f[k]
    return out


def hit_right(C: Coalgebra, element: Sequence, f: Functional) -> list:
    """c ↼ f = f(c_(1)) c_(2)."""
    out = [ZERO] * C.dim
    for (j, k), v in C.coproduct(element).items():
        if f[j]:
            out[k] = out[k] + v * f[j]
    return out


def is_cocommutative_element(C: Coalgebra, element: Sequence) -> bool:
    d = C.coproduct(element)
    return all(d.get((k, j), ZERO) == v for (j, k), v in d.items())


def is_cocommutative(C: Coalgebra) -> bool:
    return all(is_cocommutative_element(C, C.basis(i)) for i in range(C.dim))


def map_matrix(C: Coalgebra, images: Sequence[Sequence]) -> Matrix:
    """Matrix whose column i is the image of basis element i."""
    return Matrix.from_columns([list(v) for v in images]) if images else Matrix.zeros(0, 0)


def is_coalgebra_map(f: Matrix, C: Coalgebra, D: Coalgebra) -> bool:
    """Check Δ_D∘f = (f⊗f)∘Δ_C and ε_D∘f = ε_C."""
    eps = Functional(D.counit)
    for i in range(C.dim):
        img = f.column(i)
        if eps(img) != C.counit[i]:
            return False
        lhs = D.coproduct(img)
        rhs: dict = {}
        for (j, k), v in C.delta[i].items():
            fj, fk = f.column(j), f.column(k)
            for a, x in enumerate(fj):
                if x:
                    for b, y in enumerate(fk):
                        if y:
                            _add_into(rhs, (a, b), v * x * y)
        if lhs != rhs:
            return False
    return True


# coideals ------------------------------------------------------------------------

def annihilator(W: list, dim: int) -> list:
    """Rows of a matrix whose kernel is span(W)."""
    return nullspace([list(w) for w in W], dim) if W else [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]


def max_stable_coideal(C: Coalgebra, kernels: list, stabilizers: Sequence[Matrix] = ()) -> list:
    """Largest coideal I ⊆ ker ε ∩ ⋂ kernels with T(I) = I for every stabilizer T.

    Subspaces are lists of spanning vectors; the result is an echelon basis.
    """
    dim = C.dim
    W = nullspace([list(C.counit)], dim) if dim else []
    for K in kernels:
        W = intersect_spaces(W, span_basis(K, dim), dim)
    while W:
        P = annihilator(W, dim)  # rows: coordinates of the quotient map C -> C/W
        r = len(P)
        conditions = []
        for w in W:
            cond = []
            dw = C.coproduct(w)
            pw = {}
            for (j, k), v in dw.items():
                for a in range(r):
                    x = P[a][j]
                    if x:
                        for b in range(r):
                            y = P[b][k]
                            if y:
                                _add_into(pw, (a, b), v * x * y)
            cond.extend(pw.get((a, b), ZERO) for a in range(r) for b in range(r))
            for T in stabilizers:
                tw = T.apply(w)
                cond.extend(sum((P[a][j] * tw[j] for j in range(dim) if P[a][j] and tw[j]), ZERO)
                            for a in range(r))
            conditions.append(cond)
        # coefficient vectors a with Σ a_i cond_i = 0
        ncond = len(conditions[0])
        rows = [{i: conditions[i][c] for i in range(len(W)) if conditions[i][c]} for c in range(ncond)]
        kern = nullspace(rows, len(W))
        newW = span_basis(
            [[sum((coef[i] * W[i][x] for i in range(len(W)) if coef[i] and W[i][x]), ZERO) for x in range(dim)]
             for coef in kern], dim)
        if len(newW) == len(W):
            return newW
        W = newW
    return []


def is_coideal(C: Coalgebra, I: list) -> bool:
    if not I:
        return True
    dim = C.dim
    if any(C.counit_of(v) for v in I):
        return False
    P = annihilator(I, dim)
    for w in I:
        dw = C.coproduct(w)
        for a in range(len(P)):
            for b in range(len(P)):
                acc = ZERO
                for (j, k), v in dw.items():
                    if P[a][j] and P[b][k]:
                        acc = acc + v * P[a][j] * P[b][k]
                if acc:
                    return False
    return True


class QuotientMap:
    """The projection C -> C/I, with I in reduced echelon form.

    The quotient basis is the images of the non-pivot standard basis vectors.
    """

    def __init__(self, C: Coalgebra, I: list):
        self.source = C
        I = span_basis(I, C.dim)
        self.pivots = []
        for row in I:
            self.pivots.append(next(j for j, a in enumerate(row) if a))
        self.rows = {p: row for p, row in zip(self.pivots, I)}
        self.kept = [j for j in range(C.dim) if j not in self.rows]
        self.position = {j: t for t, j in enumerate(self.kept)}
        cols = []
        for j in range(C.dim):
            col = [ZERO] * len(self.kept)
            if j in self.position:
                col[self.position[j]] = ONE
            else:
                for k, a in enumerate(self.rows[j]):
                    if a and k != j:
                        col[self.position[k]] = col[self.position[k]] - a
            cols.append(col)
        self.matrix = Matrix.from_columns(cols) if self.kept else Matrix.zeros(0, C.dim)
        sec = []
        for j in self.kept:
            sec.append(C.basis(j))
        self.section = Matrix.from_columns(sec) if sec else Matrix.zeros(C.dim, 0)

    def quotient(self) -> Coalgebra:
        C = self.source
        delta = {}
        for t, j in enumerate(self.kept):
            out: dict = {}
            for (a, b), v in C.delta[j].items():
                pa, pb = self.matrix.column(a), self.matrix.column(b)
                for x, s in enumerate(pa):
                    if s:
                        for y, u in enumerate(pb):
                            if u:
                                _add_into(out, (x, y), v * s * u)
            delta[t] = out
        counit = [C.counit[j] for j in self.kept]
        labels = [C.labels[j] for j in self.kept]
        return Coalgebra(len(self.kept), delta, counit, labels)
