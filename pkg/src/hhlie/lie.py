"""Lie algebras given by structure constants, and decision procedures on them.

Series follow the indexing used throughout this package:

* derived series ``L^(1) = [L, L]``, ``L^(n+1) = [L^(n), L^(n)]``; the derived
  length is the least ``n >= 1`` with ``L^(n) = 0`` (so a nonzero abelian
  algebra has derived length 1);
* lower central series ``M^1 = [M, M]``, ``M^(m+1) = [M, M^m]``; the
  nilpotency class is the least ``m >= 1`` with ``M^m = 0``.

Both are one less than some textbook conventions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import InvalidLieAlgebra, UnsupportedCharacteristic, WrongCharacteristic
from .fields import Field
from .linalg import (
    Coordinates, Matrix, Subspace, eigenvalues_in_field, kernel, quotient_basis, unit_vector,
    vec_combination, zero_vector,
)


class LieSC:
    """Lie algebra with basis ``x_0..x_{d-1}`` and ``[x_i, x_j] = sum_k gamma[i][j][k] x_k``."""

    def __init__(self, field: Field, gamma, label: str | None = None, validate: bool = True):
        self.field = field
        self.gamma = tuple(tuple(tuple(field(c) for c in v) for v in row) for row in gamma)
        self.dim = len(self.gamma)
        self.label = label
        for row in self.gamma:
            if len(row) != self.dim or any(len(v) != self.dim for v in row):
                raise InvalidLieAlgebra("structure tensor has the wrong shape")
        # ad_i[k][j] = coefficient of x_k in [x_i, x_j]
        self.ad_basis = [Matrix.from_columns(field, self.gamma[i], self.dim) for i in range(self.dim)]
        if validate:
            self._validate()

    def _validate(self):
        d = self.dim
        g = self.gamma
        for i in range(d):
            if any(g[i][i]):
                raise InvalidLieAlgebra(f"[x{i}, x{i}] != 0")
            for j in range(i + 1, d):
                if any(a + b for a, b in zip(g[i][j], g[j][i])):
                    raise InvalidLieAlgebra(f"antisymmetry fails for ({i}, {j})")
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    s = [a + b + c for a, b, c in zip(self.ad_basis[i].apply(g[j][k]),
                                                      self.ad_basis[j].apply(g[k][i]),
                                                      self.ad_basis[k].apply(g[i][j]))]
                    if any(s):
                        raise InvalidLieAlgebra(f"Jacobi identity fails on ({i}, {j}, {k})")

    @classmethod
    def from_matrices(cls, field: Field, mats, label=None) -> LieSC:
        """Structure constants of a commutator-closed family of independent matrices."""
        mats = list(mats)
        if not mats:
            return cls(field, [], label)
        n = mats[0].nrows
        coords = Coordinates(field, n * n, [m.flatten() for m in mats])
        gamma = [[coords((a @ b - b @ a).flatten()) for b in mats] for a in mats]
        return cls(field, gamma, label)

    def basis_vector(self, i) -> tuple:
        return unit_vector(self.field, self.dim, i)

    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def bracket(self, x, y) -> tuple:
        out = list(self.zero())
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.gamma[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def ad(self, x) -> Matrix:
        return Matrix.from_columns(self.field, [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)],
                                   self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"LieSC{name}(dim={self.dim}, field={self.field})"


# ---------------------------------------------------------------- small models

def abelian(field: Field, n: int) -> LieSC:
    z = zero_vector(field, n)
    return LieSC(field, [[z] * n for _ in range(n)], f"abelian({n})")


def sl2(field: Field) -> LieSC:
    """Basis order (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    z = zero_vector(field, 3)
    e, h, f = (unit_vector(field, 3, i) for i in range(3))
    two = field(2)
    g = [[z, tuple(-two * a for a in e), h],
         [tuple(two * a for a in e), z, tuple(-two * a for a in f)],
         [tuple(-a for a in h), tuple(two * a for a in f), z]]
    return LieSC(field, g, "sl2")


def heisenberg(field: Field) -> LieSC:
    """Basis (x, y, z) with [x, y] = z."""
    z0 = zero_vector(field, 3)
    zz = unit_vector(field, 3, 2)
    g = [[z0, zz, z0], [tuple(-a for a in zz), z0, z0], [z0, z0, z0]]
    return LieSC(field, g, "heisenberg")


def direct_sum(L: LieSC, M: LieSC) -> LieSC:
    d, e = L.dim, M.dim
    z = L.field.zero
    g = []
    for i in range(d + e):
        row = []
        for j in range(d + e):
            if i < d and j < d:
                row.append(L.gamma[i][j] + (z,) * e)
            elif i >= d and j >= d:
                row.append((z,) * d + M.gamma[i - d][j - d])
            else:
                row.append((z,) * (d + e))
        g.append(row)
    return LieSC(L.field, g, f"{L.label}+{M.label}")


def quotient_lie(L: LieSC, ideal: Subspace) -> LieSC:
    """``L / ideal`` on the greedy complement of the ideal."""
    q = quotient_basis(L.full(), ideal)
    comp = q.complement
    g = [[q.project(L.bracket(x, y)) for y in comp] for x in comp]
    return LieSC(L.field, g, f"{L.label}/ideal" if L.label else None)


def subalgebra(L: LieSC, vectors) -> LieSC:
    """Structure constants of the span of ``vectors`` (which must close under bracket)."""
    coords = Coordinates(L.field, L.dim, vectors)
    vs = coords.vectors
    return LieSC(L.field, [[coords(L.bracket(x, y)) for y in vs] for x in vs])


# ---------------------------------------------------------------- series

def subalgebra_bracket(L: LieSC, U: Subspace, V: Subspace) -> Subspace:
    return Subspace(L.field, L.dim, [L.bracket(u, v) for u in U.basis for v in V.basis])


def derived_series(L: LieSC) -> list[Subspace]:
    """``[L^(1), L^(2), ...]`` up to the first zero or repeated term."""
    out = []
    cur = L.full()
    while True:
        nxt = subalgebra_bracket(L, cur, cur)
        out.append(nxt)
        if nxt.is_zero() or nxt == cur:
            return out
        cur = nxt


def lower_central_series(L: LieSC, M: Subspace | None = None) -> list[Subspace]:
    """``[M^1, M^2, ...]`` for the subalgebra ``M`` (default ``L``)."""
    M = L.full() if M is None else M
    out = []
    cur = subalgebra_bracket(L, M, M)
    out.append(cur)
    while not cur.is_zero():
        nxt = subalgebra_bracket(L, M, cur)
        if nxt == cur:
            break
        out.append(nxt)
        cur = nxt
    return out


@dataclass
class SeriesReport:
    derived: list[Subspace]
    lower_central: list[Subspace]
    derived_lower_central: list[Subspace]
    solvable: bool
    derived_length: int | None
    nilpotent: bool
    nilpotent_derived: bool
    nilpotency_class_of_derived: int | None

    @property
    def abelian(self) -> bool:
        return self.derived[0].is_zero()

    def summary(self) -> dict:
        return {
            "derived_dims": [s.dim for s in self.derived],
            "lower_central_dims": [s.dim for s in self.lower_central],
            "derived_lower_central_dims": [s.dim for s in self.derived_lower_central],
            "solvable": self.solvable,
            "derived_length": self.derived_length,
            "abelian": self.abelian,
            "nilpotent": self.nilpotent,
            "nilpotent_derived": self.nilpotent_derived,
            "nilpotency_class_of_derived": self.nilpotency_class_of_derived,
        }


def series_report(L: LieSC) -> SeriesReport:
    der = derived_series(L)
    solvable = der[-1].is_zero()
    lcs = lower_central_series(L)
    dlcs = lower_central_series(L, der[0])
    nil_der = dlcs[-1].is_zero()
    return SeriesReport(
        derived=der,
        lower_central=lcs,
        derived_lower_central=dlcs,
        solvable=solvable,
        derived_length=len(der) if solvable else None,
        nilpotent=lcs[-1].is_zero(),
        nilpotent_derived=nil_der,
        nilpotency_class_of_derived=len(dlcs) if nil_der else None,
    )


# ---------------------------------------------------------------- Killing form, radical, ideals

def killing_form(L: LieSC) -> Matrix:
    ads = L.ad_basis
    rows = [[(ads[i] @ ads[j]).trace() for j in range(L.dim)] for i in range(L.dim)]
    return Matrix(L.field, rows, L.dim)


def radical_char0(L: LieSC) -> Subspace:
    """Solvable radical as the Killing-orthogonal of ``[L, L]`` (characteristic 0 only)."""
    if L.field.characteristic:
        raise UnsupportedCharacteristic("the radical is only computed in characteristic 0")
    K = killing_form(L)
    derived = subalgebra_bracket(L, L.full(), L.full())
    rows = [K.apply(y) for y in derived.basis]
    if not rows:
        return L.full()
    return kernel(Matrix(L.field, rows, L.dim))


def ideal_generated_by(L: LieSC, v) -> Subspace:
    S = Subspace(L.field, L.dim, [v])
    queue = list(S.basis)
    while queue:
        w = queue.pop()
        for i in range(L.dim):
            u = L.ad_basis[i].apply(w)
            if not S.contains(u):
                S = Subspace(L.field, L.dim, S.basis + (u,))
                queue.append(u)
    return S


def _random_vector(L: LieSC, rng: random.Random) -> tuple:
    return tuple(L.field.random_element(rng, bound=5) for _ in range(L.dim))


@dataclass
class SimpleProbe:
    verdict: str  # "no" | "probably_yes"
    witness: Subspace | None = None
    reason: str = ""
    seed: int = 0
    trials: int = 0


def is_simple_probe(L: LieSC, seed: int = 0, trials: int = 64) -> SimpleProbe:
    """One-sided simplicity test: "no" is certified, "probably_yes" is Monte Carlo."""
    if L.dim == 0:
        return SimpleProbe("no", Subspace.zero(L.field, 0), "zero algebra", seed, trials)
    derived = subalgebra_bracket(L, L.full(), L.full())
    if derived.dim != L.dim:
        return SimpleProbe("no", derived, "not perfect", seed, trials)
    probes = [L.basis_vector(i) for i in range(L.dim)]
    probes += [tuple(a + b for a, b in zip(L.basis_vector(i), L.basis_vector(j)))
               for i in range(L.dim) for j in range(i + 1, L.dim)]
    rng = random.Random(seed)
    probes += [_random_vector(L, rng) for _ in range(trials)]
    for v in probes:
        if not any(v):
            continue
        I = ideal_generated_by(L, v)
        if 0 < I.dim < L.dim:
            return SimpleProbe("no", I, "proper nonzero ideal found", seed, trials)
    return SimpleProbe("probably_yes", None, "every probe generates L", seed, trials)


# ---------------------------------------------------------------- recognizers

@dataclass
class Recognition:
    verdict: str  # "yes" | "no" | "inconclusive"
    basis: tuple | None = None
    reason: str = ""
    data: dict = dc_field(default_factory=dict)


def verify_sl2_basis(L: LieSC, e, h, f) -> bool:
    two = L.field(2)
    return (L.bracket(e, f) == tuple(h)
            and L.bracket(h, e) == tuple(two * a for a in e)
            and L.bracket(h, f) == tuple(-two * a for a in f)
            and Subspace(L.field, L.dim, [e, h, f]).dim == 3)


def recognize_sl2(L: LieSC, seed: int = 0, trials: int = 64) -> Recognition:
    """Find an (e, h, f) basis with [e,f] = h, [h,e] = 2e, [h,f] = -2f.

    "no" is certified (dimension, characteristic 2, or not perfect); failure to
    find a split Cartan element within the trial budget is "inconclusive".
    """
    F = L.field
    if L.dim != 3:
        return Recognition("no", reason=f"dimension {L.dim} != 3")
    if F.characteristic == 2:
        return Recognition("no", reason="characteristic 2")
    if subalgebra_bracket(L, L.full(), L.full()).dim != 3:
        return Recognition("no", reason="not perfect")
    rng = random.Random(seed)
    cands = [L.basis_vector(i) for i in range(3)]
    cands += [tuple(a + b for a, b in zip(L.basis_vector(i), L.basis_vector(j)))
              for i in range(3) for j in range(i + 1, 3)]
    cands += [_random_vector(L, rng) for _ in range(trials)]
    two = F(2)
    for h in cands:
        if not any(h):
            continue
        eig = eigenvalues_in_field(L.ad(h))
        vals = {lam: vecs for lam, vecs in eig}
        if len(vals) != 3 or F.zero not in vals:
            continue
        nonzero = [lam for lam in vals if lam]
        if nonzero[0] != -nonzero[1]:
            continue
        mu = two if two in nonzero else nonzero[0]
        scale = two / mu
        hh = tuple(scale * a for a in h)
        e = vals[mu][0]
        f = vals[-mu][0]
        ef = L.bracket(e, f)
        # [e, f] lies in the zero weight space, which is spanned by hh
        k = next(i for i, a in enumerate(hh) if a)
        c = ef[k] / hh[k]
        if not c:
            continue
        f = tuple(a / c for a in f)
        if verify_sl2_basis(L, e, hh, f):
            return Recognition("yes", (e, hh, f), "split Cartan element found")
    return Recognition("inconclusive", reason=f"no split Cartan element among {len(cands)} candidates")


def witt_degree(residue: int, p: int) -> int:
    """Integer degree in ``[-1, p-2]`` for an eigenvalue residue."""
    return residue - p if residue == p - 1 else residue


def verify_witt_basis(L: LieSC, g) -> bool:
    """Check ``[g_i, g_j] = (j - i) g_{i+j}`` (zero outside ``-1..p-2``); ``g[k]`` is ``g_{k-1}``."""
    p = L.field.characteristic
    if len(g) != p or Subspace(L.field, L.dim, g).dim != p:
        return False
    zero = L.zero()
    for i in range(-1, p - 1):
        for j in range(i + 1, p - 1):
            s = i + j
            expected = zero if not -1 <= s <= p - 2 else tuple(L.field(j - i) * a for a in g[s + 1])
            if L.bracket(g[i + 1], g[j + 1]) != expected:
                return False
    return True


def recognize_witt(L: LieSC, seed: int = 0, trials: int = 64) -> Recognition:
    """Find a basis ``g_{-1}..g_{p-2}`` with the Witt multiplication table.

    A toral element ``h`` whose adjoint has all ``p`` residues as eigenvalues
    grades ``L``; after rescaling ``h`` to act by degree, a top-degree vector
    is pushed down with ``g_{t-1} = [g_{-1}, g_t] / (t + 1)`` and the
    remaining scalar on ``g_{-1}`` is solved from ``[g_{-1}, g_0] = g_{-1}``.
    """
    F = L.field
    p = F.characteristic
    if p == 0:
        raise WrongCharacteristic("the Witt algebra recognizer needs a prime field")
    if L.dim != p:
        return Recognition("no", reason=f"dimension {L.dim} != {p}")
    if subalgebra_bracket(L, L.full(), L.full()).dim != p:
        return Recognition("no", reason="not perfect")
    rng = random.Random(seed)
    cands = [L.basis_vector(i) for i in range(p)]
    cands += [_random_vector(L, rng) for _ in range(trials)]
    for h in cands:
        if not any(h):
            continue
        eig = eigenvalues_in_field(L.ad(h))
        if len(eig) != p:
            continue
        spaces = {lam: vecs[0] for lam, vecs in eig}
        for t in range(1, p):
            # ad(h / t) has eigenvalue lam / t on the vector of eigenvalue lam
            graded = {witt_degree(int(lam / F(t)), p): v for lam, v in spaces.items()}
            basis = _witt_from_grading(L, graded)
            if basis is not None and verify_witt_basis(L, basis):
                return Recognition("yes", tuple(basis), "graded basis verified", {"h": h, "scale": t})
    return Recognition("inconclusive", reason=f"no toral grading element among {len(cands)} candidates")


def _witt_from_grading(L: LieSC, graded: dict) -> list | None:
    F = L.field
    p = F.characteristic
    top = graded[p - 2]
    v_minus = graded[-1]
    g = {p - 2: top}
    for t in range(p - 2, -1, -1):
        g[t - 1] = tuple(a / F(t + 1) for a in L.bracket(v_minus, g[t]))
    # with g_{-1} = alpha * v_minus, g_t scales by alpha^(p-2-t); alpha^(p-1) = 1
    w = L.bracket(v_minus, g[0])
    k = next((i for i, a in enumerate(v_minus) if a), None)
    alpha = w[k] / v_minus[k]
    if not alpha or any(a != alpha * b for a, b in zip(w, v_minus)):
        return None
    out = []
    for t in range(-1, p - 1):
        s = alpha ** (p - 2 - t) if t >= 0 else alpha
        base = v_minus if t == -1 else g[t]
        out.append(tuple(s * a for a in base))
    return out
