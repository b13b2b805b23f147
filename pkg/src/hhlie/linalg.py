"""Dense exact linear algebra over a :class:`~hhlie.fields.Field`.

Vectors are plain tuples of field elements.  Matrices act on column vectors.
Everything here is pure: inputs are never mutated.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import FieldMismatch, NotSquare, SubspaceNotContained
from .fields import QQ, Field


# ---------------------------------------------------------------- vectors

def zero_vector(field: Field, n: int) -> tuple:
    z = field.zero
    return (z,) * n


def unit_vector(field: Field, n: int, i: int) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def vec_add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v) -> tuple:
    return tuple(c * a for a in v)


def vec_is_zero(v) -> bool:
    return not any(v)


def vec_combination(coeffs, vectors, field: Field, n: int) -> tuple:
    """Sum of ``c * v`` over paired coefficients and vectors."""
    out = list(zero_vector(field, n))
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] = out[k] + c * a
    return tuple(out)


def dot(u, v):
    total = 0
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


# ---------------------------------------------------------------- matrices

class Matrix:
    """Immutable dense matrix with entries in a single field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = object.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m.rows = rows
        return m

    @classmethod
    def zero(cls, field, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field, n):
        return cls._raw(field, tuple(unit_vector(field, n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field, columns, nrows: int):
        cols = [tuple(c) for c in columns]
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls._raw(field, rows, len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> Matrix:
        rows = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return Matrix._raw(self.field, rows, self.nrows)

    def _check(self, other):
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"matrices over {self.field} and {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw(self.field, tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw(self.field, tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix._raw(self.field, tuple(vec_scale(c, r) for r in self.rows), self.ncols)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [z] * other.ncols
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in enumerate(orows[k]):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return Matrix._raw(self.field, tuple(out), other.ncols)

    def apply(self, v) -> tuple:
        """Matrix times column vector."""
        z = self.field.zero
        return tuple(z + dot(r, v) for r in self.rows)

    def __pow__(self, k: int) -> Matrix:
        if self.nrows != self.ncols:
            raise NotSquare("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        if self.nrows != self.ncols:
            raise NotSquare("trace of a non-square matrix")
        total = self.field.zero
        for i in range(self.nrows):
            total = total + self.rows[i][i]
        return total

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def flatten(self) -> tuple:
        """Row-major entries."""
        return tuple(a for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix({self.field}, [{body}])"


# ---------------------------------------------------------------- elimination

def _rref_rows(rows: list[list], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to RREF; return pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        prow = [a * inv if a else a for a in rows[r]]
        rows[r] = prow
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return Matrix._raw(m.field, tuple(tuple(r) for r in rows), m.ncols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel(m: Matrix) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return Subspace(m.field, m.ncols, _kernel_from_rref(m.field, rows, pivots, m.ncols))


def _kernel_from_rref(field, rows, pivots, ncols):
    pivset = set(pivots)
    z, o = field.zero, field.one
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [z] * ncols
        v[f] = o
        for r, c in enumerate(pivots):
            a = rows[r][f]
            if a:
                v[c] = -a
        basis.append(tuple(v))
    return basis


def sparse_kernel(field: Field, rows, ncols: int) -> Subspace:
    """Null space of a system given as sparse rows ``{column: coefficient}``.

    Rows are eliminated incrementally, which keeps large but very sparse
    systems (Leibniz constraints) tractable.
    """
    piv: dict[int, dict] = {}
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            prow = piv.get(c)
            if prow is None:
                inv = 1 / row[c]
                piv[c] = {k: v * inv for k, v in row.items()}
                break
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    for c in sorted(piv, reverse=True):
        prow = piv[c]
        for k in [k for k in prow if k != c and k in piv]:
            f = prow[k]
            if not f:
                continue
            for kk, v in piv[k].items():
                nv = prow.get(kk, 0) - f * v
                if nv:
                    prow[kk] = nv
                else:
                    prow.pop(kk, None)
    z, o = field.zero, field.one
    basis = []
    for f in range(ncols):
        if f in piv:
            continue
        v = [z] * ncols
        v[f] = o
        for c, prow in piv.items():
            a = prow.get(f)
            if a:
                v[c] = -a
        basis.append(tuple(v))
    return Subspace(field, ncols, basis)


class Echelon:
    """Incrementally maintained reduced echelon basis over sparse rows.

    Rows are ``{column: coefficient}`` dicts; the pivot of a row is its
    smallest column.  Rows stay fully reduced, so ``reduce`` is one pass.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = {k: a for k, a in v.items() if a}
        for c in [c for c in v if c in self.rows]:
            f = v.get(c)
            if not f:
                continue
            for k, a in self.rows[c].items():
                nv = v.get(k, 0) - f * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        c = min(r)
        inv = 1 / r[c]
        r = {k: a * inv for k, a in r.items()}
        for row in self.rows.values():
            f = row.get(c)
            if f:
                for k, a in r.items():
                    nv = row.get(k, 0) - f * a
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[c] = r
        return True

    def to_subspace(self) -> Subspace:
        z = self.field.zero
        vecs = []
        for row in self.rows.values():
            v = [z] * self.ncols
            for k, a in row.items():
                v[k] = a
            vecs.append(v)
        return Subspace(self.field, self.ncols, vecs)


# ---------------------------------------------------------------- subspaces

class Subspace:
    """Subspace of ``field^ambient`` stored by its RREF basis."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, vectors=()):
        rows = [[field(a) for a in v] for v in vectors]
        for r in rows:
            if len(r) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        pivots = _rref_rows(rows, ambient)
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(rows[i]) for i in range(len(pivots)))
        self.pivots = tuple(pivots)

    @classmethod
    def full(cls, field, n):
        return cls(field, n, [unit_vector(field, n, i) for i in range(n)])

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, v) -> tuple:
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v) -> tuple:
        """Coordinates of ``v`` (assumed to lie in the subspace) in the RREF basis."""
        return tuple(v[c] for c in self.pivots)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains_subspace(self)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.field, self.ambient, self.basis + other.basis)

    def intersect(self, other: Subspace) -> Subspace:
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        # columns u_i and -v_j; kernel vectors give the common elements
        cols = list(self.basis) + [vec_scale(-1, v) for v in other.basis]
        k = kernel(Matrix.from_columns(self.field, cols, self.ambient))
        d = self.dim
        out = [vec_combination(x[:d], self.basis, self.field, self.ambient) for x in k.basis]
        return Subspace(self.field, self.ambient, out)

    def image(self, m: Matrix) -> Subspace:
        return Subspace(self.field, m.nrows, [m.apply(v) for v in self.basis])

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field})"


class Coordinates:
    """Solve for coordinates of vectors in a fixed linearly independent list."""

    def __init__(self, field: Field, ambient: int, vectors):
        self.field = field
        self.ambient = ambient
        self.vectors = tuple(tuple(field(a) for a in v) for v in vectors)
        k = len(self.vectors)
        # [B | I] reduced gives T with T B = RREF(B)
        rows = [list(v) + list(unit_vector(field, k, i)) for i, v in enumerate(self.vectors)]
        pivots = _rref_rows(rows, ambient)
        if len(pivots) != k:
            raise ValueError("vectors are linearly dependent")
        self._rref = [tuple(r[:ambient]) for r in rows]
        self._transform = [tuple(r[ambient:]) for r in rows]
        self._pivots = pivots
        self.span = Subspace(field, ambient, self.vectors)

    def __call__(self, v) -> tuple:
        """Coordinates ``x`` with ``v = sum x_i vectors[i]``; raises if ``v`` is outside the span."""
        if not self.span.contains(v):
            raise SubspaceNotContained("vector not in span")
        y = [v[c] for c in self._pivots]
        k = len(self.vectors)
        return vec_combination(y, self._transform, self.field, k)


class Quotient:
    """A complement ``C`` of ``sub`` inside ``ambient`` with the projection onto it."""

    def __init__(self, ambient: Subspace, sub: Subspace, complement):
        self.ambient = ambient
        self.sub = sub
        self.complement = tuple(complement)
        self._coords = Coordinates(ambient.field, ambient.ambient, list(sub.basis) + list(self.complement))
        self._offset = sub.dim

    @property
    def dim(self) -> int:
        return len(self.complement)

    def project(self, v) -> tuple:
        """Coordinates along the complement; the kernel is ``sub``."""
        return self._coords(v)[self._offset:]

    def lift(self, coords) -> tuple:
        return vec_combination(coords, self.complement, self.ambient.field, self.ambient.ambient)

    def matrix(self) -> Matrix:
        """Projection restricted to ``ambient`` in the ambient's RREF basis."""
        cols = [self.project(v) for v in self.ambient.basis]
        return Matrix.from_columns(self.ambient.field, cols, self.dim)


def quotient_basis(ambient: Subspace, sub: Subspace) -> Quotient:
    """Greedy complement of ``sub`` in ``ambient`` over the ambient's basis order."""
    if not ambient.contains_subspace(sub):
        raise SubspaceNotContained("sub is not contained in ambient")
    field = ambient.field
    acc = Subspace(field, ambient.ambient, sub.basis)
    chosen = []
    for v in ambient.basis:
        if acc.dim == ambient.dim:
            break
        if not acc.contains(v):
            chosen.append(v)
            acc = Subspace(field, ambient.ambient, acc.basis + (v,))
    return Quotient(ambient, sub, chosen)


# ---------------------------------------------------------------- polynomials

def char_poly(m: Matrix) -> list:
    """Monic characteristic polynomial, coefficients lowest degree first.

    Hessenberg reduction followed by the standard three-term recurrence; only
    field divisions by nonzero pivots are used, so it is valid in any
    characteristic.
    """
    if m.nrows != m.ncols:
        raise NotSquare("characteristic polynomial of a non-square matrix")
    n = m.nrows
    field = m.field
    H = [list(r) for r in m.rows]
    for j in range(n - 2):
        i = next((r for r in range(j + 1, n) if H[r][j]), None)
        if i is None:
            continue
        if i != j + 1:
            H[i], H[j + 1] = H[j + 1], H[i]
            for r in range(n):
                H[r][i], H[r][j + 1] = H[r][j + 1], H[r][i]
        inv = 1 / H[j + 1][j]
        for r in range(j + 2, n):
            u = H[r][j] * inv
            if not u:
                continue
            H[r] = [a - u * b for a, b in zip(H[r], H[j + 1])]
            for k in range(n):
                H[k][j + 1] = H[k][j + 1] + u * H[k][r]
    z, o = field.zero, field.one
    polys = [[o]]
    for mm in range(1, n + 1):
        prev = polys[mm - 1]
        # (x - h_mm) p_{m-1}
        cur = [z] * (mm + 1)
        for k, c in enumerate(prev):
            cur[k + 1] = cur[k + 1] + c
            cur[k] = cur[k] - H[mm - 1][mm - 1] * c
        prod = o
        for i in range(mm - 1, 0, -1):
            prod = prod * H[i][i - 1]
            t = H[i - 1][mm - 1] * prod
            if t:
                for k, c in enumerate(polys[i - 1]):
                    cur[k] = cur[k] - t * c
        polys.append(cur)
    return polys[n]


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_eval_matrix(coeffs, m: Matrix) -> Matrix:
    """Horner evaluation of a polynomial at a square matrix."""
    n = m.nrows
    acc = Matrix.zero(m.field, n)
    ident = Matrix.identity(m.field, n)
    for c in reversed(coeffs):
        acc = acc @ m + ident.scale(c)
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def roots_in_field(coeffs, field: Field) -> list:
    """Distinct roots of a polynomial lying in the field, in canonical order."""
    if field.characteristic:
        return [x for x in field.elements() if not poly_eval(coeffs, x)]
    den = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        raise ValueError("zero polynomial has every element as a root")
    roots = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    cands = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    roots.extend(c for c in cands if poly_eval(ints, c) == 0)
    return sorted(roots)


def eigenvalues_in_field(m: Matrix) -> list[tuple]:
    """Eigenvalues lying in the field, each with a basis of its eigenspace."""
    if m.nrows != m.ncols:
        raise NotSquare("eigenvalues of a non-square matrix")
    out = []
    ident = Matrix.identity(m.field, m.nrows)
    for lam in roots_in_field(char_poly(m), m.field):
        out.append((lam, kernel(m - ident.scale(lam)).basis))
    return out


__all__ = [
    "Matrix", "Subspace", "Echelon", "Quotient", "Coordinates", "rref", "rank", "kernel", "sparse_kernel",
    "quotient_basis", "char_poly", "poly_eval", "poly_eval_matrix", "roots_in_field",
    "eigenvalues_in_field", "zero_vector", "unit_vector", "vec_add", "vec_sub", "vec_scale",
    "vec_combination", "vec_is_zero", "dot", "QQ",
]
