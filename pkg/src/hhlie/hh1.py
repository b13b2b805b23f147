"""Derivations and the first Hochschild cohomology ``HH^1(A) = Der(A) / IDer(A)``.

Two independent models compute the same Lie algebra:

* the *quiver* model (presented algebras only): a derivation vanishing on
  the vertex idempotents is determined by its values on arrows, and each
  arrow ``a`` can only go to the corner ``e_s A e_t`` of its endpoints;
  coordinates are those arrow values;
* the *generic* model: the full Leibniz system on all ``dim^2`` matrix
  entries, with coordinates the flattened matrix.

Every derivation vanishing on the idempotents maps ``e_i A e_j`` into itself,
which is what makes the quiver model (and restriction to corners) work.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import FdAlgebra, corner_algebra, ext1_matrix, truncate_algebra
from .errors import HasLoops, NotADerivation, NotPrimeField
from .lie import LieSC, lower_central_series, series_report, subalgebra_bracket
from .linalg import Matrix, Subspace, kernel, quotient_basis, sparse_kernel, vec_combination
from .quiver import Path


# ---------------------------------------------------------------- derivation matrices

def _sparse_columns(F: Matrix) -> list[dict]:
    cols = [dict() for _ in range(F.ncols)]
    for r, row in enumerate(F.rows):
        for c, a in enumerate(row):
            if a:
                cols[c][r] = a
    return cols


def leibniz_defect(A: FdAlgebra, F: Matrix):
    """First basis pair ``(u, v)`` where ``F`` breaks the Leibniz rule, or ``None``."""
    if F.shape != (A.dim, A.dim):
        return (-1, -1)
    cols = _sparse_columns(F)
    tab = A.table
    for u in range(A.dim):
        for v in range(A.dim):
            acc: dict = {}
            for w, c in tab[u][v]:
                for s, a in cols[w].items():
                    acc[s] = acc.get(s, 0) + c * a
            for s, a in cols[u].items():
                for w, c in tab[s][v]:
                    acc[w] = acc.get(w, 0) - a * c
            for s, a in cols[v].items():
                for w, c in tab[u][s]:
                    acc[w] = acc.get(w, 0) - a * c
            if any(acc.values()):
                return (u, v)
    return None


def is_derivation(A: FdAlgebra, F: Matrix) -> bool:
    return leibniz_defect(A, F) is None


class DerivationMatrix:
    """A Leibniz-verified linear endomorphism of ``A`` (columns are images of basis elements)."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: FdAlgebra, matrix: Matrix, check: bool = True):
        if check:
            bad = leibniz_defect(algebra, matrix)
            if bad is not None:
                raise NotADerivation(f"Leibniz rule fails on basis pair {bad}")
        self.algebra = algebra
        self.matrix = matrix

    @property
    def e_normalized(self) -> bool:
        return not any(any(self.matrix.column(u)) for u in self.algebra.idempotents)

    def __call__(self, x) -> tuple:
        return self.matrix.apply(x)

    def __repr__(self):
        return f"DerivationMatrix(dim={self.algebra.dim}, e_normalized={self.e_normalized})"


def _as_matrix(F) -> Matrix:
    return F.matrix if isinstance(F, DerivationMatrix) else F


def inner_derivation(A: FdAlgebra, c) -> Matrix:
    """Matrix of ``[c, -]``."""
    return A.ad_matrix(c)


def normalize_derivation(A: FdAlgebra, F) -> DerivationMatrix:
    """``F - [c, -]`` with ``c = sum_j F(e_j) e_j``; the result vanishes on every idempotent."""
    M = _as_matrix(F)
    if leibniz_defect(A, M) is not None:
        raise NotADerivation("input is not a derivation")
    c = A.zero()
    for u in A.idempotents:
        c = tuple(a + b for a, b in zip(c, A.mul(M.column(u), A.basis_vector(u))))
    if not any(c):
        return DerivationMatrix(A, M, check=False)
    out = DerivationMatrix(A, M - A.ad_matrix(c), check=False)
    assert out.e_normalized
    return out


def commutator(F: Matrix, G: Matrix) -> Matrix:
    return F @ G - G @ F


# ---------------------------------------------------------------- models

class QuiverModel:
    """Derivations vanishing on ``E``, in arrow-value coordinates (parallel-path method)."""

    method = "quiver"

    def __init__(self, A: FdAlgebra):
        if A.reducer is None:
            raise TypeError("the quiver model needs a presented algebra")
        self.algebra = A
        red = A.reducer
        self.reducer = red
        q = red.presentation.quiver
        self.arrows = [a for a in q.arrows if a.path() in red.index]
        self.arrow_index = [red.index[a.path()] for a in self.arrows]
        self.slots: list[tuple[int, int]] = []  # unknown j -> (arrow position, basis index)
        self.slot_ranges = []
        for pos, a in enumerate(self.arrows):
            start = len(self.slots)
            self.slots.extend((pos, k) for k in A.corner_mask(a.source, a.target))
            self.slot_ranges.append(range(start, len(self.slots)))
        self.n = len(self.slots)
        self._by_name = {a.name: pos for pos, a in enumerate(self.arrows)}
        self._ext_cache: dict = {}
        self.rows = self._constraints()
        self.der = sparse_kernel(A.field, self.rows, self.n)
        self.inner = Subspace(A.field, self.n, [self.coords(A.ad_matrix(A.basis_vector(u)))
                                                for u, p in enumerate(A.labels) if p.source == p.target])

    # -- Leibniz extension of arrow values to paths

    def _extend(self, path) -> dict:
        """``j -> kQ vector`` with ``f(path) = sum_j x_j * vector_j``."""
        out: dict = {}
        names = path.arrows
        labels = self.algebra.labels
        for i, name in enumerate(names):
            pos = self._by_name.get(name)
            if pos is None:
                continue
            prefix, suffix = names[:i], names[i + 1:]
            for j in self.slot_ranges[pos]:
                lab = labels[self.slots[j][1]]
                new = prefix + lab.arrows + suffix
                src = path.source if prefix else lab.source
                tgt = path.target if suffix else lab.target
                p = Path(src, tgt, new)
                vec = out.setdefault(j, {})
                vec[p] = vec.get(p, 0) + 1
        return out

    def _extend_vector(self, v: dict) -> dict:
        out: dict = {}
        for path, c in v.items():
            for j, vec in self._extend(path).items():
                acc = out.setdefault(j, {})
                for p, a in vec.items():
                    acc[p] = acc.get(p, 0) + c * a
        return {j: self.reducer.normal_form(vec) for j, vec in out.items()}

    def _constraints(self) -> list[dict]:
        red = self.reducer
        gens = list(red.presentation.relation_vectors())
        gens += [{p: self.algebra.field.one} for p in red.presentation.quiver.paths_of_length(red.N)]
        rows = []
        for g in gens:
            eqs: dict = {}
            for j, nf in self._extend_vector(g).items():
                for w, c in nf.items():
                    eqs.setdefault(w, {})[j] = c
            rows.extend(eqs.values())
        return rows

    def _path_extension(self, u: int) -> dict:
        got = self._ext_cache.get(u)
        if got is None:
            got = self._extend_vector({self.algebra.labels[u]: self.algebra.field.one})
            self._ext_cache[u] = got
        return got

    # -- coordinates

    def materialize(self, x) -> Matrix:
        A = self.algebra
        z = A.field.zero
        cols = []
        for u, p in enumerate(A.labels):
            col = [z] * A.dim
            if p.length:
                for j, nf in self._path_extension(u).items():
                    if x[j]:
                        for w, c in nf.items():
                            col[w] = col[w] + x[j] * c
            cols.append(col)
        return Matrix.from_columns(A.field, cols, A.dim)

    def coords(self, F) -> tuple:
        """Arrow values of an ``E``-vanishing linear map, as a coordinate vector."""
        M = _as_matrix(F)
        out = []
        for pos, ia in enumerate(self.arrow_index):
            col = M.column(ia)
            rng = self.slot_ranges[pos]
            allowed = {self.slots[j][1] for j in rng}
            if any(a for k, a in enumerate(col) if k not in allowed):
                raise ValueError(f"value on arrow {self.arrows[pos].name} leaves its corner")
            out.extend(col[self.slots[j][1]] for j in rng)
        return tuple(out)

    def normalize(self, F) -> Matrix:
        return normalize_derivation(self.algebra, F).matrix

    def bracket_coords(self, F: Matrix, G: Matrix) -> tuple:
        """Coordinates of ``[F, G]`` using only the arrow columns."""
        out = []
        for pos, ia in enumerate(self.arrow_index):
            gcol = G.column(ia)
            fcol = F.column(ia)
            v = tuple(a - b for a, b in zip(F.apply(gcol), G.apply(fcol)))
            out.extend(v[self.slots[j][1]] for j in self.slot_ranges[pos])
        return tuple(out)

    def filtration(self, m: int) -> Subspace:
        """``D_m``: solutions whose arrow values lie in ``J^m``."""
        A = self.algebra
        if m <= 0:
            return self.der
        Jm = A.radical_power(m)
        ann = kernel(Matrix(A.field, Jm.basis, A.dim)).basis if Jm.basis else \
            [A.basis_vector(u) for u in range(A.dim)]
        extra = []
        for pos in range(len(self.arrows)):
            for phi in ann:
                row = {j: phi[self.slots[j][1]] for j in self.slot_ranges[pos] if phi[self.slots[j][1]]}
                if row:
                    extra.append(row)
        return sparse_kernel(A.field, self.rows + extra, self.n)


class GenericModel:
    """All derivations, in flattened-matrix coordinates (row-major ``F[r][c]``)."""

    method = "generic"

    def __init__(self, A: FdAlgebra):
        self.algebra = A
        n = A.dim
        self.n = n * n
        self.rows = self._leibniz_rows()
        self.der = sparse_kernel(A.field, self.rows, self.n)
        self.inner = Subspace(A.field, self.n, [A.ad_matrix(A.basis_vector(u)).flatten() for u in range(n)])

    def _leibniz_rows(self) -> list[dict]:
        A = self.algebra
        n, tab = A.dim, A.table
        rows = []
        for u in range(n):
            for v in range(n):
                eqs: dict = {}
                # F(b_u b_v)_w = sum_t c_t F[w][t]
                for t, c in tab[u][v]:
                    for w in range(n):
                        r = eqs.setdefault(w, {})
                        r[w * n + t] = r.get(w * n + t, 0) + c
                # (F(b_u) b_v)_w = sum_s F[s][u] (b_s b_v)_w
                for s in range(n):
                    for w, c in tab[s][v]:
                        r = eqs.setdefault(w, {})
                        r[s * n + u] = r.get(s * n + u, 0) - c
                    for w, c in tab[u][s]:
                        r = eqs.setdefault(w, {})
                        r[s * n + v] = r.get(s * n + v, 0) - c
                rows.extend(r for r in eqs.values() if any(r.values()))
        return rows

    def materialize(self, x) -> Matrix:
        n = self.algebra.dim
        return Matrix(self.algebra.field, [x[r * n:(r + 1) * n] for r in range(n)], n)

    def coords(self, F) -> tuple:
        return _as_matrix(F).flatten()

    def normalize(self, F) -> Matrix:
        return _as_matrix(F)

    def bracket_coords(self, F: Matrix, G: Matrix) -> tuple:
        return commutator(F, G).flatten()

    def filtration(self, m: int) -> Subspace:
        """``D_m``: derivations vanishing on ``E`` with ``F(J) <= J^m``."""
        A = self.algebra
        n = A.dim
        extra = [{r * n + u: A.field.one} for u in A.idempotents for r in range(n)]
        if m >= 1:
            Jm = A.radical_power(m)
            ann = kernel(Matrix(A.field, Jm.basis, n)).basis if Jm.basis else \
                [A.basis_vector(u) for u in range(n)]
            for c, p in enumerate(A.labels):
                if p.length == 0:
                    continue
                for phi in ann:
                    row = {r * n + c: a for r, a in enumerate(phi) if a}
                    if row:
                        extra.append(row)
        return sparse_kernel(A.field, self.rows + extra, self.n)


def _model(A: FdAlgebra, method: str | None):
    if method is None:
        method = "quiver" if A.reducer is not None else "generic"
    if method == "quiver":
        return QuiverModel(A)
    if method == "generic":
        return GenericModel(A)
    raise ValueError(f"unknown method {method!r}")


def derivations_E(A: FdAlgebra) -> list[DerivationMatrix]:
    """Basis of the derivations vanishing on the vertex idempotents (Leibniz-verified)."""
    m = QuiverModel(A)
    return [DerivationMatrix(A, m.materialize(x)) for x in m.der.basis]


def inner_derivations_E(A: FdAlgebra) -> Subspace:
    """``[c, -]`` for ``c`` in ``sum_i e_i A e_i``, in the quiver model's arrow coordinates."""
    return QuiverModel(A).inner


# ---------------------------------------------------------------- HH^1 as a Lie algebra

class HH1Algebra:
    """``HH^1(A)`` with representatives, projection and Lie structure constants."""

    def __init__(self, A: FdAlgebra, method: str | None = None):
        self.algebra = A
        self.model = _model(A, method)
        self.method = self.model.method
        self.der = self.model.der
        self.inner = self.model.inner
        self.quotient = quotient_basis(self.der, self.inner)
        self.dim = self.quotient.dim
        self._rep_mats = [self.model.materialize(x) for x in self.quotient.complement]
        self.representatives = [DerivationMatrix(A, M) for M in self._rep_mats]
        gamma = [[self.quotient.project(self.model.bracket_coords(F, G)) for G in self._rep_mats]
                 for F in self._rep_mats]
        self.lie = LieSC(A.field, gamma, label=f"HH1[{self.method}]")

    @property
    def field(self):
        return self.algebra.field

    def project(self, x) -> tuple:
        """HH^1 coordinates of a model coordinate vector lying in ``der``."""
        return self.quotient.project(x)

    def class_of(self, F) -> tuple:
        return self.project(self.model.coords(self.model.normalize(F)))

    def representative(self, coeffs) -> Matrix:
        """Matrix of ``sum c_i rep_i``."""
        M = Matrix.zero(self.field, self.algebra.dim)
        for c, R in zip(coeffs, self._rep_mats):
            if c:
                M = M + R.scale(c)
        return M

    def inner_matrices(self) -> list[Matrix]:
        return [self.model.materialize(x) for x in self.inner.basis]

    def filtration(self, m: int) -> Subspace:
        """Model-coordinate subspace ``D_m``."""
        return self.model.filtration(m)

    def filtration_image(self, m: int) -> Subspace:
        """``HH^1_(m)``: classes of ``D_m``."""
        return Subspace(self.field, self.dim, [self.project(x) for x in self.filtration(m).basis])

    def check_representative_independence(self, seed: int = 0, trials: int = 4) -> bool:
        """Perturb representatives by inner derivations and compare bracket classes."""
        if not self.dim or not self.inner.basis:
            return True
        rng = random.Random(seed)
        F = self.field
        inner = self.inner.basis
        for _ in range(trials):
            i, j = rng.randrange(self.dim), rng.randrange(self.dim)
            shift = [vec_combination([F.random_element(rng, 3) for _ in inner], inner, F, self.model.n)
                     for _ in range(2)]
            a = self.model.materialize(tuple(x + s for x, s in zip(self.quotient.complement[i], shift[0])))
            b = self.model.materialize(tuple(x + s for x, s in zip(self.quotient.complement[j], shift[1])))
            if self.project(self.model.bracket_coords(a, b)) != self.lie.gamma[i][j]:
                return False
        return True

    def __repr__(self):
        return f"HH1Algebra(dim={self.dim}, method={self.method}, field={self.field})"


def hh1(A: FdAlgebra, method: str | None = None) -> HH1Algebra:
    return HH1Algebra(A, method)


def hh1_generic(A: FdAlgebra) -> tuple[int, bool]:
    """Brute-force ``(dim HH^1, solvable)`` from the full Leibniz system."""
    H = HH1Algebra(A, "generic")
    return H.dim, series_report(H.lie).solvable


def d_filtration(A: FdAlgebra, m: int) -> list[DerivationMatrix]:
    """Basis of ``D_m`` (derivations vanishing on ``E`` with ``f(J) <= J^m``)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    model = _model(A, None)
    return [DerivationMatrix(A, model.materialize(x)) for x in model.filtration(m).basis]


def hh1_filtration_image(H: HH1Algebra, m: int) -> Subspace:
    return H.filtration_image(m)


def comparison_map(H: HH1Algebra, G: HH1Algebra) -> Matrix:
    """Matrix sending ``H`` classes to ``G`` classes of the same representatives."""
    cols = [G.class_of(R) for R in H._rep_mats]
    return Matrix.from_columns(H.field, cols, G.dim)


def is_lie_hom(S: Matrix, L: LieSC, M: LieSC) -> bool:
    """``S [x_i, x_j] = [S x_i, S x_j]`` on all basis pairs."""
    cols = S.columns()
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            if S.apply(L.gamma[i][j]) != M.bracket(cols[i], cols[j]):
                return False
    return True


# ---------------------------------------------------------------- truncation to A / J^2

@dataclass
class TruncationResult:
    source: HH1Algebra
    target: HH1Algebra
    phi: Matrix
    kernel: Subspace
    d2_image: Subspace
    kernel_is_d2_image: bool
    kernel_is_ideal: bool
    kernel_is_nilpotent: bool
    is_lie_hom: bool


def has_loops(A: FdAlgebra) -> bool:
    M = ext1_matrix(A)
    return any(M[i][i] for i in range(len(M)))


def truncation_map(A: FdAlgebra, H: HH1Algebra | None = None) -> TruncationResult:
    """The map ``HH^1(A) -> HH^1(A / J^2)`` induced by the quotient, with its kernel."""
    if has_loops(A):
        raise HasLoops("truncation map needs an Ext-quiver without loops")
    H = H or hh1(A)
    B, pi = truncate_algebra(A, 2)
    if B is A:
        T = H
        phi = Matrix.identity(A.field, H.dim)
    else:
        T = hh1(B)
        sigma = Matrix.from_columns(A.field, [A.basis_vector(A.index_of(p)) for p in B.labels], A.dim)
        cols = [T.class_of(pi @ R @ sigma) for R in H._rep_mats]
        phi = Matrix.from_columns(A.field, cols, T.dim)
    ker = kernel(phi) if H.dim else Subspace.zero(A.field, 0)
    d2 = H.filtration_image(2)
    L = H.lie
    ideal = subalgebra_bracket(L, L.full(), ker) <= ker
    lcs = lower_central_series(L, ker)
    return TruncationResult(H, T, phi, ker, d2, ker == d2, ideal, lcs[-1].is_zero(),
                            is_lie_hom(phi, H.lie, T.lie))


# ---------------------------------------------------------------- Schur corner maps

@dataclass
class SchurResult:
    vertices: tuple
    corner: FdAlgebra
    target: HH1Algebra
    matrix: Matrix
    is_lie_hom: bool


def restrict_to_corner(F: Matrix, idx) -> Matrix:
    return Matrix(F.field, [[F[r, c] for c in idx] for r in idx], len(idx))


def schur_map(H: HH1Algebra, vertices) -> SchurResult:
    """``HH^1(A) -> HH^1(eAe)`` by restricting ``E``-vanishing representatives to the corner.

    The corner's ``HH^1`` uses the generic model; for the full vertex set the
    corner is ``A`` itself and the target is ``H``.
    """
    A = H.algebra
    C, idx = corner_algebra(A, vertices)
    if C is A:
        T = H
        cols = [T.class_of(R) for R in H._rep_mats]
    else:
        T = hh1(C, "generic")
        cols = [T.class_of(restrict_to_corner(H.model.normalize(R), idx)) for R in H._rep_mats]
    S = Matrix.from_columns(A.field, cols, T.dim)
    return SchurResult(tuple(sorted(set(vertices))), C, T, S, is_lie_hom(S, H.lie, T.lie))


# ---------------------------------------------------------------- p-power map

def p_power_map(H: HH1Algebra, cls) -> tuple:
    """Class of ``F^p`` for a representative ``F`` of ``cls`` (an index or a coordinate vector)."""
    p = H.field.characteristic
    if not p:
        raise NotPrimeField("the p-power map needs a prime field")
    if isinstance(cls, int):
        cls = tuple(H.field.one if i == cls else H.field.zero for i in range(H.dim))
    F = H.representative(cls)
    return H.class_of(F ** p)


def p_power_is_well_defined(H: HH1Algebra, cls, seed: int = 0) -> bool:
    """Compare ``(F + [c, -])^p`` with ``F^p`` in HH^1 for a random inner shift."""
    p = H.field.characteristic
    if not p:
        raise NotPrimeField("the p-power map needs a prime field")
    if isinstance(cls, int):
        cls = tuple(H.field.one if i == cls else H.field.zero for i in range(H.dim))
    rng = random.Random(seed)
    A = H.algebra
    c = tuple(H.field.random_element(rng) for _ in range(A.dim))
    F = H.representative(cls) + A.ad_matrix(c)
    return H.class_of(F ** p) == p_power_map(H, cls)
