"""Finite-dimensional split basic algebras given by structure constants.

An :class:`FdAlgebra` has a basis of paths (each with source, target and
length), a sparse multiplication table and the vertex idempotents.  Algebras
built from a presentation additionally carry a :class:`PathReducer` that
computes normal forms modulo the relation ideal.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import EmptySubset, InvalidAlgebra
from .fields import Field
from .linalg import (
    Echelon, Matrix, Subspace, kernel, rank, sparse_kernel, unit_vector, zero_vector,
)
from .quiver import BoundQuiverPresentation, Path, trivial_path


class PathReducer:
    """Normal forms in ``kQ / (I + R^N)`` for a fixed presentation.

    Paths of length < N are ordered canonically (shorter first, then by arrow
    names).  The ideal is stored in echelon form with columns in *descending*
    canonical order, so each pivot is the largest path of its row and the
    non-pivot paths are exactly the greedy canonical complement.
    """

    def __init__(self, presentation: BoundQuiverPresentation):
        self.presentation = presentation
        self.field = presentation.field
        self.N = presentation.truncate
        q = presentation.quiver
        paths = []
        for n in range(self.N):
            paths.extend(q.paths_of_length(n))
        paths.sort(key=Path.sort_key)
        self.paths = paths
        P = len(paths)
        self._col = {p: P - 1 - i for i, p in enumerate(paths)}
        self._path_of_col = {P - 1 - i: p for i, p in enumerate(paths)}
        self.ideal = Echelon(self.field, P)
        self._close_ideal(presentation.relation_vectors())
        self.basis = [p for p in paths if self._col[p] not in self.ideal.rows]
        self.index = {p: i for i, p in enumerate(self.basis)}

    # -- path-vector arithmetic in kQ, dropping paths of length >= N

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for p, a in x.items():
            for q, b in y.items():
                r = p.then(q)
                if r is None or r.length >= self.N:
                    continue
                out[r] = out.get(r, self.field.zero) + a * b
        return {p: c for p, c in out.items() if c}

    def _close_ideal(self, generators):
        q = self.presentation.quiver
        one = self.field.one
        mults = [{trivial_path(v): one} for v in range(q.num_vertices)]
        mults += [{a.path(): one} for a in q.arrows]
        queue = list(generators)
        while queue:
            v = queue.pop()
            if not self.ideal.add(self._to_cols(v)):
                continue
            for m in mults:
                for w in (self.mul(m, v), self.mul(v, m)):
                    if w:
                        queue.append(w)

    def _to_cols(self, v: dict) -> dict:
        return {self._col[p]: c for p, c in v.items() if p.length < self.N}

    def in_ideal(self, v: dict) -> bool:
        return not self.ideal.reduce(self._to_cols(v))

    def normal_form(self, v: dict) -> dict:
        """Sparse coordinates ``{basis index: coefficient}`` of a path vector."""
        r = self.ideal.reduce(self._to_cols(v))
        return {self.index[self._path_of_col[c]]: a for c, a in r.items()}

    def path_nf(self, p: Path) -> dict:
        if p.length >= self.N:
            return {}
        return self.normal_form({p: self.field.one})


class FdAlgebra:
    """Associative algebra with a path-labelled basis and sparse structure constants.

    ``table[u][v]`` lists ``(w, c)`` pairs with ``b_u * b_v = sum c * b_w``.
    """

    def __init__(self, field: Field, labels, table, *, reducer: PathReducer | None = None,
                 validate: bool = True):
        self.field = field
        self.labels: tuple[Path, ...] = tuple(labels)
        self.table = tuple(tuple(tuple(entry) for entry in row) for row in table)
        self.reducer = reducer
        self.dim = len(self.labels)
        self.idempotents = tuple(u for u, p in enumerate(self.labels) if p.length == 0)
        self.vertices = tuple(self.labels[u].source for u in self.idempotents)
        self.radical = Subspace(field, self.dim, [self.basis_vector(u) for u, p in enumerate(self.labels)
                                                  if p.length >= 1])
        if validate:
            self._validate()
        self.radical_powers = self._radical_powers()
        self.loewy_length = len(self.radical_powers) - 1

    # -- basic data

    @property
    def presentation(self) -> BoundQuiverPresentation | None:
        return self.reducer.presentation if self.reducer else None

    @property
    def num_simples(self) -> int:
        return len(self.idempotents)

    @cached_property
    def num_edges(self) -> int:
        """Number of arrows of the Ext-quiver."""
        return sum(sum(r) for r in ext1_matrix(self))

    def basis_vector(self, u: int) -> tuple:
        return unit_vector(self.field, self.dim, u)

    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def one(self) -> tuple:
        z, o = self.field.zero, self.field.one
        ids = set(self.idempotents)
        return tuple(o if u in ids else z for u in range(self.dim))

    def source(self, u: int) -> int:
        return self.labels[u].source

    def target(self, u: int) -> int:
        return self.labels[u].target

    def length(self, u: int) -> int:
        return self.labels[u].length

    def index_of(self, label) -> int:
        if isinstance(label, str):
            return next(u for u, p in enumerate(self.labels) if str(p) == label)
        return self.labels.index(label)

    def idempotent(self, vertex: int) -> int:
        return self.idempotents[self.vertices.index(vertex)]

    # -- multiplication

    def mul(self, x, y) -> tuple:
        out = list(self.zero())
        tab = self.table
        for u, a in enumerate(x):
            if not a:
                continue
            row = tab[u]
            for v, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for w, c in row[v]:
                    out[w] = out[w] + ab * c
        return tuple(out)

    def product_basis(self, u: int, v: int) -> tuple:
        out = list(self.zero())
        for w, c in self.table[u][v]:
            out[w] = c
        return tuple(out)

    def left_matrix(self, x) -> Matrix:
        """Matrix of ``y -> x y``."""
        return Matrix.from_columns(self.field, [self.mul(x, self.basis_vector(v)) for v in range(self.dim)],
                                   self.dim)

    def right_matrix(self, x) -> Matrix:
        """Matrix of ``y -> y x``."""
        return Matrix.from_columns(self.field, [self.mul(self.basis_vector(v), x) for v in range(self.dim)],
                                   self.dim)

    def ad_matrix(self, c) -> Matrix:
        """Matrix of the inner derivation ``y -> c y - y c``."""
        cols = [tuple(a - b for a, b in zip(self.mul(c, e), self.mul(e, c)))
                for e in (self.basis_vector(v) for v in range(self.dim))]
        return Matrix.from_columns(self.field, cols, self.dim)

    def corner_mask(self, i: int, j: int) -> list[int]:
        """Basis indices spanning ``e_i A e_j``."""
        return [u for u, p in enumerate(self.labels) if p.source == i and p.target == j]

    def sandwich(self, x, vertices_left, vertices_right) -> tuple:
        """``e x f`` with ``e``, ``f`` the idempotent sums over the given vertex sets."""
        L, R = set(vertices_left), set(vertices_right)
        z = self.field.zero
        return tuple(a if self.labels[u].source in L and self.labels[u].target in R else z
                     for u, a in enumerate(x))

    # -- invariants

    def _validate(self):
        field, n, tab = self.field, self.dim, self.table
        for u in range(n):
            for v in range(n):
                for w, c in tab[u][v]:
                    if not field.contains(c):
                        raise InvalidAlgebra("structure constant outside the field")
                    if self.labels[w].source != self.labels[u].source or \
                            self.labels[w].target != self.labels[v].target:
                        raise InvalidAlgebra(f"product {self.labels[u]}*{self.labels[v]} leaves its corner")
                if tab[u][v] and self.labels[u].target != self.labels[v].source:
                    raise InvalidAlgebra(f"non-composable product {self.labels[u]}*{self.labels[v]} is nonzero")
        for u in range(n):
            for v in range(n):
                uv = tab[u][v]
                for w in range(n):
                    lhs: dict = {}
                    for t, c in uv:
                        for s, d in tab[t][w]:
                            lhs[s] = lhs.get(s, 0) + c * d
                    rhs: dict = {}
                    for t, c in tab[v][w]:
                        for s, d in tab[u][t]:
                            rhs[s] = rhs.get(s, 0) + c * d
                    keys = set(lhs) | set(rhs)
                    if any(lhs.get(k, 0) != rhs.get(k, 0) for k in keys):
                        raise InvalidAlgebra(f"associativity fails on ({u}, {v}, {w})")
        one = self.one()
        for u in range(n):
            e = self.basis_vector(u)
            if self.mul(one, e) != e or self.mul(e, one) != e:
                raise InvalidAlgebra("sum of vertex idempotents is not the identity")
        for i in self.idempotents:
            for j in self.idempotents:
                expected = self.basis_vector(i) if i == j else self.zero()
                if self.product_basis(i, j) != expected:
                    raise InvalidAlgebra("vertex idempotents are not orthogonal idempotents")

    def _radical_powers(self) -> tuple[Subspace, ...]:
        powers = [Subspace.full(self.field, self.dim), self.radical]
        J = self.radical
        while not powers[-1].is_zero():
            if len(powers) > self.dim + 1:
                raise InvalidAlgebra("radical is not nilpotent")
            prev = powers[-1]
            prods = [self.mul(x, y) for x in prev.basis for y in J.basis]
            powers.append(Subspace(self.field, self.dim, prods))
        return tuple(powers)

    def radical_power(self, m: int) -> Subspace:
        if m >= len(self.radical_powers):
            return Subspace.zero(self.field, self.dim)
        return self.radical_powers[m]

    def __repr__(self):
        return f"FdAlgebra(dim={self.dim}, simples={self.num_simples}, loewy={self.loewy_length}, field={self.field})"


# ---------------------------------------------------------------- construction

def build_algebra(p: BoundQuiverPresentation) -> FdAlgebra:
    """The algebra ``kQ / (<relations> + R^N)`` with its canonical basis."""
    red = PathReducer(p)
    n = len(red.basis)
    table = []
    for u in red.basis:
        row = []
        for v in red.basis:
            r = u.then(v)
            row.append(tuple(sorted(red.path_nf(r).items())) if r is not None else ())
        table.append(row)
    return FdAlgebra(p.field, red.basis, table, reducer=red)


# ---------------------------------------------------------------- structure

def ext1_matrix(A: FdAlgebra) -> list[list[int]]:
    """``M[j][i] = dim e_i (J/J^2) e_j``, indexed by position in ``A.vertices``."""
    J, J2 = A.radical_power(1), A.radical_power(2)
    verts = A.vertices
    M = [[0] * len(verts) for _ in verts]
    for a, i in enumerate(verts):
        for b, j in enumerate(verts):
            top = Subspace(A.field, A.dim, [A.sandwich(x, [i], [j]) for x in J.basis])
            if top.is_zero():
                continue
            sq = Subspace(A.field, A.dim, [A.sandwich(x, [i], [j]) for x in J2.basis])
            M[b][a] = top.dim - sq.dim
    return M


@dataclass(frozen=True)
class QuiverClass:
    has_loops: bool
    max_parallel: int
    is_simple_digraph: bool


def quiver_class(A: FdAlgebra) -> QuiverClass:
    M = ext1_matrix(A)
    loops = any(M[i][i] for i in range(len(M)))
    mx = max((x for r in M for x in r), default=0)
    return QuiverClass(loops, mx, not loops and mx <= 1)


def center(A: FdAlgebra) -> Subspace:
    """``Z(A)``: solve ``z b_u = b_u z`` for every basis element."""
    rows = []
    n = A.dim
    for u in range(n):
        eqs: dict[int, dict] = {}
        for t in range(n):
            for w, c in A.table[t][u]:
                eqs.setdefault(w, {})
                eqs[w][t] = eqs[w].get(t, 0) + c
            for w, c in A.table[u][t]:
                eqs.setdefault(w, {})
                eqs[w][t] = eqs[w].get(t, 0) - c
        rows.extend(eqs.values())
    return sparse_kernel(A.field, rows, n)


def truncate_algebra(A: FdAlgebra, m: int) -> tuple[FdAlgebra, Matrix]:
    """``A / J^m`` with the quotient map as a matrix (rows: quotient basis)."""
    if m < 1:
        raise ValueError("truncation degree must be at least 1")
    if m >= A.loewy_length:
        return A, Matrix.identity(A.field, A.dim)
    if A.reducer is None:
        raise TypeError("truncation needs a quiver-presented algebra")
    B = build_algebra(A.presentation.with_truncation(min(m, A.presentation.truncate)))
    cols = []
    for p in A.labels:
        v = list(B.zero())
        for w, c in B.reducer.path_nf(p).items():
            v[w] = c
        cols.append(tuple(v))
    return B, Matrix.from_columns(A.field, cols, B.dim)


def corner_algebra(A: FdAlgebra, vertices) -> tuple[FdAlgebra, list[int]]:
    """``eAe`` for ``e`` the sum of the given vertex idempotents.

    Returns the corner (a raw structure-constant algebra) and the list mapping
    corner basis indices to basis indices of ``A``.
    """
    S = set(vertices)
    if not S:
        raise EmptySubset("corner needs at least one vertex")
    if not S <= set(A.vertices):
        raise ValueError(f"unknown vertices {sorted(S - set(A.vertices))}")
    if S == set(A.vertices):
        return A, list(range(A.dim))
    idx = [u for u, p in enumerate(A.labels) if p.source in S and p.target in S]
    inv = {u: k for k, u in enumerate(idx)}
    table = []
    for u in idx:
        row = []
        for v in idx:
            row.append(tuple((inv[w], c) for w, c in A.table[u][v]))
        table.append(row)
    return FdAlgebra(A.field, [A.labels[u] for u in idx], table), idx


# ---------------------------------------------------------------- symmetric forms

@dataclass(frozen=True)
class SymmetryResult:
    verdict: str  # "yes" | "no" | "inconclusive"
    form: tuple | None = None
    reason: str = ""


GRID_BUDGET = 4096


def _gram(A: FdAlgebra, lam) -> Matrix:
    rows = []
    for u in range(A.dim):
        row = []
        for v in range(A.dim):
            s = A.field.zero
            for w, c in A.table[u][v]:
                s = s + c * lam[w]
            row.append(s)
        rows.append(tuple(row))
    return Matrix._raw(A.field, tuple(rows), A.dim)


def _nondegenerate(A, lam) -> bool:
    return rank(_gram(A, lam)) == A.dim


def is_symmetric(A: FdAlgebra, seed: int = 0, trials: int = 32) -> SymmetryResult:
    """Search for a nondegenerate symmetric associative form ``(x, y) -> lam(x y)``.

    Symmetric forms are the functionals vanishing on ``[A, A]``.  A "no" is
    certified either by a common null vector of all Gram matrices, or by an
    exhaustive sweep of a grid with side ``dim A + 1`` (the determinant has
    degree at most ``dim A`` in each variable, so it cannot vanish on that
    grid unless it is identically zero).
    """
    field, n = A.field, A.dim
    comm = []
    for u in range(n):
        for v in range(u + 1, n):
            x = A.product_basis(u, v)
            y = A.product_basis(v, u)
            d = tuple(a - b for a, b in zip(x, y))
            if any(d):
                comm.append(d)
    forms = kernel(Matrix(field, comm, n)) if comm else Subspace.full(field, n)
    if forms.is_zero():
        return SymmetryResult("no", reason="no nonzero symmetric functional")
    basis = forms.basis
    r = len(basis)

    def combo(coeffs):
        out = list(zero_vector(field, n))
        for c, lam in zip(coeffs, basis):
            if c:
                for k, a in enumerate(lam):
                    if a:
                        out[k] = out[k] + c * a
        return tuple(out)

    for lam in basis:
        if _nondegenerate(A, lam):
            return SymmetryResult("yes", lam, "basis functional")
    rng = random.Random(seed)
    for _ in range(trials):
        lam = combo([field.random_element(rng, bound=2 * n + 2) for _ in range(r)])
        if any(lam) and _nondegenerate(A, lam):
            return SymmetryResult("yes", lam, "random functional")

    grams = [_gram(A, lam) for lam in basis]
    stacked = Matrix._raw(field, tuple(row for g in grams for row in g.rows), n)
    if not kernel(stacked).is_zero():
        return SymmetryResult("no", reason="all Gram matrices share a null vector")
    side = n + 1
    if field.characteristic and field.characteristic < side:
        return SymmetryResult("inconclusive", reason="field too small for grid certification")
    if side ** r > GRID_BUDGET:
        return SymmetryResult("inconclusive", reason="grid certification over budget")
    values = [field(k) for k in range(side)]
    point = [0] * r
    while True:
        lam = combo([values[k] for k in point])
        if any(lam) and _nondegenerate(A, lam):
            return SymmetryResult("yes", lam, "grid functional")
        i = 0
        while i < r and point[i] == side - 1:
            point[i] = 0
            i += 1
        if i == r:
            break
        point[i] += 1
    return SymmetryResult("no", reason=f"determinant vanishes on the {side}^{r} grid")
