"""Theorem checks on a single algebra, aggregated into a JSON-serializable report.

A check is *applicable* when its hypotheses hold.  Verdicts:

* ``pass``: hypotheses fail (vacuous) or the conclusion was verified;
* ``warn``: a randomized or three-valued recognizer could not decide;
* ``fail``: an exact computation contradicts the expected conclusion.

Aggregate status is the worst verdict (fail > warn > pass).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import FdAlgebra, center, corner_algebra, ext1_matrix, is_symmetric, quiver_class
from .hh1 import HH1Algebra, hh1, schur_map, truncation_map
from .lie import (
    LieSC, is_simple_probe, killing_form, quotient_lie, radical_char0, recognize_sl2, recognize_witt,
    series_report, subalgebra_bracket,
)
from .linalg import Matrix, Subspace, rank
from .quiver import emit_presentation

GENERIC_LIMIT = 30
_ORDER = {"pass": 0, "warn": 1, "fail": 2}


def nilpotency_class_bound(ll: int) -> int:
    return ll - 2


def derived_length_bound(ll: int) -> int:
    # floor(log2(ll - 1)) + 1
    return (ll - 1).bit_length()


# ---------------------------------------------------------------- records

@dataclass
class CheckRecord:
    id: str
    applicable: bool
    reason: str
    verdict: str = "pass"
    measured: dict = dc_field(default_factory=dict)
    expected: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def require(self, ok: bool, what: str):
        """Record a certified assertion; a false one turns the verdict to fail."""
        if not ok:
            self.verdict = "fail"
            self.notes.append(f"FAILED: {what}")

    def warn(self, what: str):
        if self.verdict == "pass":
            self.verdict = "warn"
        self.notes.append(f"warning: {what}")

    def to_json(self) -> dict:
        return {
            "id": self.id, "applicable": self.applicable, "reason": self.reason, "verdict": self.verdict,
            "measured": self.measured, "expected": self.expected, "notes": list(self.notes),
        }


def _vacuous(cid: str, reason: str) -> CheckRecord:
    return CheckRecord(cid, False, reason)


class Context:
    """Lazily computed data shared by the checks on one algebra."""

    def __init__(self, A: FdAlgebra, seed: int = 0):
        self.A = A
        self.seed = seed
        self._records: dict = {}

    def run(self, check) -> CheckRecord:
        """Run ``check`` once per context."""
        rec = self._records.get(check.__name__)
        if rec is None:
            rec = self._records[check.__name__] = check(self.A, self)
        return rec

    @cached_property
    def H(self) -> HH1Algebra:
        return hh1(self.A)

    @cached_property
    def series(self):
        return series_report(self.H.lie)

    @cached_property
    def ext1(self):
        return ext1_matrix(self.A)

    @cached_property
    def qclass(self):
        return quiver_class(self.A)

    @cached_property
    def symmetric(self):
        return is_symmetric(self.A, seed=self.seed)

    @cached_property
    def probe(self):
        return is_simple_probe(self.H.lie, seed=self.seed)

    @property
    def loewy(self) -> int:
        return self.A.loewy_length

    @property
    def char(self) -> int:
        return self.A.field.characteristic

    @cached_property
    def connected(self) -> bool:
        n = len(self.A.vertices)
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in range(n):
                if w not in seen and (self.ext1[v][w] or self.ext1[w][v]):
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    @cached_property
    def filtration(self) -> dict:
        """``m -> D_m`` in model coordinates for ``1 <= m <= ll``."""
        return {m: self.H.filtration(m) for m in range(1, max(self.loewy, 1) + 1)}


# ---------------------------------------------------------------- checks

def check_simple_digraph_theorem(A: FdAlgebra, ctx: Context | None = None) -> CheckRecord:
    ctx = ctx or Context(A)
    if not ctx.qclass.is_simple_digraph:
        return _vacuous("simple_digraph", "Ext-quiver has loops or parallel arrows")
    s = ctx.series
    ll = ctx.loewy
    rec = CheckRecord("simple_digraph", True, "Ext-quiver is a simple digraph")
    rec.measured = {"loewy_length": ll, **s.summary()}
    rec.require(s.solvable, "HH1 is solvable")
    if ll <= 2:
        rec.expected = {"abelian": True}
        rec.require(s.abelian, "HH1 is abelian when ll <= 2")
    else:
        rec.expected = {"nilpotency_class_of_derived_max": nilpotency_class_bound(ll),
                        "derived_length_max": derived_length_bound(ll)}
        rec.require(s.nilpotent_derived, "derived subalgebra is nilpotent")
        if s.nilpotent_derived:
            rec.require(s.nilpotency_class_of_derived <= nilpotency_class_bound(ll),
                        "nilpotency class of the derived subalgebra is at most ll - 2")
        if s.solvable:
            rec.require(s.derived_length <= derived_length_bound(ll),
                        "derived length is at most floor(log2(ll - 1)) + 1")
    return rec


def check_two_parallel_theorem(A: FdAlgebra, ctx: Context | None = None) -> CheckRecord:
    ctx = ctx or Context(A)
    qc = ctx.qclass
    if qc.has_loops or qc.max_parallel > 2:
        return _vacuous("two_parallel", "Ext-quiver has loops or more than two parallel arrows")
    rec = CheckRecord("two_parallel", True, "no loops, at most two parallel arrows")
    s = ctx.series
    L = ctx.H.lie
    rec.measured = {"hh1_dim": L.dim, "solvable": s.solvable, "characteristic": ctx.char}
    if ctx.char == 2:
        rec.expected = {"solvable": True}
        rec.require(s.solvable, "HH1 is solvable in characteristic 2")
        return rec
    if s.solvable:
        rec.notes.append("HH1 solvable; nothing further to check")
        return rec
    if ctx.char:
        rec.warn("HH1 not solvable in odd characteristic; radical not computed over F_p")
        return rec
    rad = radical_char0(L)
    Q = quotient_lie(L, rad) if rad.dim else L
    kq = killing_form(Q)
    rec.measured.update({"radical_dim": rad.dim, "semisimple_quotient_dim": Q.dim})
    rec.expected = {"semisimple_quotient_dim_mod_3": 0, "killing_nondegenerate": True}
    rec.require(Q.dim % 3 == 0, "semisimple quotient has dimension divisible by 3")
    rec.require(rank(kq) == Q.dim, "Killing form of the semisimple quotient is nondegenerate")
    if Q.dim == 3:
        r = recognize_sl2(Q, seed=ctx.seed)
        rec.measured["sl2"] = r.verdict
        if r.verdict == "no":
            rec.require(False, "semisimple quotient of dimension 3 is sl2")
        elif r.verdict == "inconclusive":
            rec.warn("sl2 recognizer inconclusive")
    elif Q.dim:
        rec.notes.append(f"semisimple, dimension {Q.dim}, factor decomposition unchecked")
    if rad.dim == 0:
        rec.measured["simple_probe"] = ctx.probe.verdict
    return rec


def _corner_condition(A: FdAlgebra, i: int) -> bool:
    """``J(e A e)^2 == e J(A)^2 e`` for ``e = e_i``, compared inside the corner."""
    C, idx = corner_algebra(A, [i])
    lhs = C.radical_power(2)
    sand = [A.sandwich(x, [i], [i]) for x in A.radical_power(2).basis]
    rhs = Subspace(A.field, C.dim, [tuple(v[u] for u in idx) for v in sand])
    return lhs == rhs


def check_loop_theorem(A: FdAlgebra, ctx: Context | None = None) -> CheckRecord:
    ctx = ctx or Context(A)
    M = ctx.ext1
    loops = [v for k, v in enumerate(A.vertices) if M[k][k] == 1 and _corner_condition(A, v)]
    if not loops:
        return _vacuous("loop", "no vertex with a single loop satisfying the corner condition")
    sym = ctx.symmetric
    if sym.verdict == "no":
        return _vacuous("loop", f"algebra is not symmetric ({sym.reason})")
    rec = CheckRecord("loop", True, f"symmetric with a qualifying loop at vertices {loops}")
    if sym.verdict == "inconclusive":
        rec.applicable = False
        rec.reason = "symmetry undecided"
        rec.warn(f"symmetry test inconclusive ({sym.reason})")
        return rec
    L = ctx.H.lie
    probe = ctx.probe
    rec.measured = {"hh1_dim": L.dim, "simple_probe": probe.verdict, "probe_seed": probe.seed,
                    "probe_trials": probe.trials, "characteristic": ctx.char}
    if probe.verdict == "no":
        rec.notes.append("HH1 is not simple; conclusion vacuous")
        return rec
    if ctx.char == 0:
        rec.require(False, "a simple HH1 with a qualifying loop forces positive characteristic")
        return rec
    rec.expected = {"isomorphic_to": "sl2 or Witt"}
    r2 = recognize_sl2(L, seed=ctx.seed)
    rw = recognize_witt(L, seed=ctx.seed)
    rec.measured.update({"sl2": r2.verdict, "witt": rw.verdict})
    rec.require(ctx.char > 2, "characteristic is odd")
    if "yes" in (r2.verdict, rw.verdict):
        return rec
    if r2.verdict == rw.verdict == "no":
        rec.require(False, "HH1 is sl2 or the Witt algebra")
    else:
        rec.warn("recognizers inconclusive")
    return rec


def _bracket_subspace(ctx: Context, U: Subspace, V: Subspace) -> Subspace:
    model = ctx.H.model
    mU = [model.materialize(x) for x in U.basis]
    mV = [model.materialize(x) for x in V.basis]
    return Subspace(ctx.A.field, model.n, [model.bracket_coords(F, G) for F in mU for G in mV])


def check_filtration_props(A: FdAlgebra, ctx: Context | None = None) -> CheckRecord:
    ctx = ctx or Context(A)
    rec = CheckRecord("filtration", True, "bracket filtration applies to every algebra")
    ll = ctx.loewy
    D = ctx.filtration
    rec.measured["d_dims"] = {str(m): D[m].dim for m in sorted(D)}
    rec.require(D[max(ll, 1)].is_zero() or ll == 0, "D_m = 0 for m >= ll")
    bad = []
    for m in range(1, ll):
        for n in range(m, ll):
            k = m + n - 1
            target = D[k] if k in D else Subspace.zero(A.field, ctx.H.model.n)
            if not _bracket_subspace(ctx, D[m], D[n]) <= target:
                bad.append([m, n])
    rec.measured["bracket_violations"] = bad
    rec.require(not bad, "[D_m, D_n] <= D_{m+n-1}")
    if ctx.qclass.has_loops:
        rec.notes.append("truncation and corner parts skipped: Ext-quiver has loops")
        return rec
    H = ctx.H
    t = truncation_map(A, H)
    rec.measured.update({"ker_phi_dim": t.kernel.dim, "hh1_2_dim": t.d2_image.dim,
                         "hh1_target_dim": t.target.dim})
    rec.require(t.kernel_is_d2_image, "ker(Phi) is the image of D_2")
    rec.require(t.kernel_is_ideal, "ker(Phi) is an ideal")
    rec.require(t.kernel_is_nilpotent, "ker(Phi) is nilpotent")
    rec.require(t.is_lie_hom, "Phi is a Lie homomorphism")
    if H.dim:
        D1 = H.filtration_image(1)
        rec.require(D1.dim == H.dim, "D_1 maps onto HH1")
    outside = []
    for v in A.vertices:
        s = schur_map(H, [v])
        image = Subspace(A.field, s.target.dim, s.matrix.columns())
        if not image <= s.target.filtration_image(1):
            outside.append(v)
    rec.measured["der1_schur_violations"] = outside
    rec.require(not outside, "corner images lie in HH1_(1) of the corner")
    return rec


def check_schur_maps(A: FdAlgebra, ctx: Context | None = None) -> CheckRecord:
    ctx = ctx or Context(A)
    H = ctx.H
    rec = CheckRecord("schur", True, "corner maps exist for every vertex set")
    full = schur_map(H, A.vertices)
    rec.require(full.matrix == Matrix.identity(A.field, H.dim), "full corner map is the identity")
    dims, nonhom = {}, []
    for v in A.vertices:
        s = schur_map(H, [v])
        dims[str(v)] = {"corner_dim": s.corner.dim, "corner_hh1": s.target.dim, "rank": rank(s.matrix)
                        if s.target.dim and H.dim else 0}
        if not s.is_lie_hom:
            nonhom.append(v)
    rec.measured = {"corners": dims, "non_homomorphisms": nonhom}
    rec.require(not nonhom, "corner maps are Lie homomorphisms")
    loops = [v for k, v in enumerate(A.vertices) if ctx.ext1[k][k]]
    if loops and ctx.symmetric.verdict == "yes":
        zero = [v for v in loops if dims[str(v)]["rank"] == 0]
        rec.measured["symmetric_loop_vertices"] = loops
        rec.require(not zero, "corner map at a looped vertex of a symmetric algebra is nonzero")
    return rec


def check_dimension_formula(A: FdAlgebra, ctx: Context | None = None) -> CheckRecord:
    ctx = ctx or Context(A)
    if ctx.loewy != 2 or not ctx.qclass.is_simple_digraph or not ctx.connected:
        return _vacuous("dimension_formula", "needs ll = 2, a simple digraph and a connected quiver")
    e, l = A.num_edges, A.num_simples
    d = ctx.H.dim
    rec = CheckRecord("dimension_formula", True, "radical square zero, simple connected digraph")
    rec.measured = {"hh1_dim": d, "edges": e, "simples": l, "abelian": ctx.series.abelian}
    rec.expected = {"hh1_dim": e - l + 1, "hh1_dim_max": (l - 1) ** 2}
    rec.require(d == e - l + 1, "dim HH1 = e - l + 1")
    rec.require(d <= (l - 1) ** 2, "dim HH1 <= (l - 1)^2")
    rec.require(ctx.series.abelian, "HH1 is abelian")
    return rec


def check_oracle(A: FdAlgebra, ctx: Context | None = None) -> CheckRecord:
    ctx = ctx or Context(A)
    if A.dim > GENERIC_LIMIT or ctx.H.method == "generic":
        return _vacuous("oracle", f"dimension above {GENERIC_LIMIT} or no quiver model")
    G = hh1(A, "generic")
    sg = series_report(G.lie)
    rec = CheckRecord("oracle", True, "generic Leibniz solve is affordable")
    rec.measured = {"quiver_dim": ctx.H.dim, "generic_dim": G.dim,
                    "quiver_solvable": ctx.series.solvable, "generic_solvable": sg.solvable,
                    "inner_dim": G.inner.dim, "center_dim": center(A).dim}
    rec.require(G.dim == ctx.H.dim, "quiver and generic HH1 dimensions agree")
    rec.require(sg.solvable == ctx.series.solvable, "solvability flags agree")
    rec.require(G.inner.dim == A.dim - center(A).dim, "dim IDer = dim A - dim Z(A)")
    return rec


def killing_invariant(L: LieSC) -> bool:
    K = killing_form(L)
    d = L.dim
    for i in range(d):
        for j in range(d):
            xy = L.gamma[i][j]
            for k in range(d):
                lhs = sum((xy[t] * K[t, k] for t in range(d) if xy[t]), L.field.zero)
                yz = L.gamma[j][k]
                rhs = sum((yz[t] * K[i, t] for t in range(d) if yz[t]), L.field.zero)
                if lhs != rhs:
                    return False
    return True


def check_lie_structure(A: FdAlgebra, ctx: Context | None = None) -> CheckRecord:
    ctx = ctx or Context(A)
    H = ctx.H
    rec = CheckRecord("lie_structure", True, "HH1 structure constants")
    # LieSC construction already ran the exhaustive antisymmetry and Jacobi checks
    rec.measured = {"hh1_dim": H.dim}
    rec.require(all(R.e_normalized for R in H.representatives), "representatives vanish on idempotents")
    rec.require(H.check_representative_independence(seed=ctx.seed), "brackets independent of representatives")
    rec.require(killing_invariant(H.lie), "Killing form is invariant")
    return rec


CHECKS = [
    check_simple_digraph_theorem, check_two_parallel_theorem, check_loop_theorem, check_filtration_props,
    check_schur_maps, check_dimension_formula, check_oracle, check_lie_structure,
]


# ---------------------------------------------------------------- reports

def algebra_hash(A: FdAlgebra) -> str:
    p = A.presentation
    text = emit_presentation(p.__class__(p.field, p.quiver, p.truncate, p.relations)) if p else repr(A.table)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def algebra_summary(A: FdAlgebra, ctx: Context | None = None) -> dict:
    ctx = ctx or Context(A)
    qc = ctx.qclass
    return {
        "hash": algebra_hash(A),
        "field": str(A.field),
        "dim": A.dim,
        "simples": A.num_simples,
        "edges": A.num_edges,
        "loewy_length": A.loewy_length,
        "ext1": ctx.ext1,
        "quiver_class": {"has_loops": qc.has_loops, "max_parallel": qc.max_parallel,
                         "simple_digraph": qc.is_simple_digraph},
        "center_dim": center(A).dim,
        "hh1_dim": ctx.H.dim,
    }


def lie_summary(ctx: Context) -> dict:
    L = ctx.H.lie
    out = dict(ctx.series.summary())
    out["simple_probe"] = ctx.probe.verdict
    out["sl2"] = recognize_sl2(L, seed=ctx.seed).verdict
    out["witt"] = recognize_witt(L, seed=ctx.seed).verdict if ctx.char else "n/a"
    out["symmetric"] = ctx.symmetric.verdict
    return out


@dataclass
class TheoremReport:
    algebra: dict
    checks: list[CheckRecord]
    seed: int
    analysis: dict = dc_field(default_factory=dict)

    @property
    def status(self) -> str:
        worst = max((_ORDER[c.verdict] for c in self.checks), default=0)
        return next(k for k, v in _ORDER.items() if v == worst)

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "analysis": self.analysis, "checks": [c.to_json() for c in self.checks],
                "seed": self.seed, "status": self.status}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def run_all(A: FdAlgebra, seed: int = 0, checks=None, ctx: Context | None = None) -> TheoremReport:
    ctx = ctx or Context(A, seed)
    records = [ctx.run(chk) for chk in (checks or CHECKS)]
    return TheoremReport(algebra_summary(A, ctx), records, seed, lie_summary(ctx))
