"""Acceptance criteria run on the built-in corpus (used by ``hhlie selftest``)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .corpus import DIGRAPHS, NAKAYAMA, corpus, load
from .errors import InvalidLieAlgebra
from .fields import GF, QQ
from .generators import gen_kronecker, gen_nakayama, gen_rad_square_zero, gen_trunc_poly, gen_witt_lie
from .harness import (
    GENERIC_LIMIT, Context, check_filtration_props, check_oracle, check_schur_maps, derived_length_bound,
    killing_invariant, nilpotency_class_bound, run_all,
)
from .hh1 import hh1_generic
from .lie import (
    is_simple_probe, recognize_sl2, recognize_witt, subalgebra, subalgebra_bracket, verify_sl2_basis,
    verify_witt_basis,
)
from .linalg import Subspace


@dataclass
class Criterion:
    id: int
    title: str
    passed: bool = True
    details: dict = dc_field(default_factory=dict)
    failures: list = dc_field(default_factory=list)

    def expect(self, ok: bool, what: str):
        if not ok:
            self.passed = False
            self.failures.append(what)

    def to_json(self) -> dict:
        return {"id": self.id, "title": self.title, "passed": self.passed, "details": self.details,
                "failures": self.failures}


class Suite:
    """Shared per-algebra contexts so each algebra is analysed once."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._ctx: dict[str, Context] = {}
        self.entries = corpus()

    def ctx(self, text: str) -> Context:
        got = self._ctx.get(text)
        if got is None:
            got = Context(load(text), self.seed)
            self._ctx[text] = got
        return got


def criterion_1(s: Suite) -> Criterion:
    c = Criterion(1, "Kronecker over Q: HH1 = sl2")
    L = s.ctx(gen_kronecker()).H.lie
    r = recognize_sl2(L, seed=s.seed)
    probe = is_simple_probe(L, seed=s.seed)
    c.details = {"hh1_dim": L.dim, "sl2": r.verdict, "simple_probe": probe.verdict}
    c.expect(L.dim == 3, "dim HH1 = 3")
    c.expect(r.verdict == "yes" and verify_sl2_basis(L, *r.basis), "sl2 basis found and verified")
    c.expect(probe.verdict == "probably_yes", "simplicity probe")
    return c


def criterion_2(s: Suite) -> Criterion:
    c = Criterion(2, "Kronecker over F2: HH1 solvable")
    ctx = s.ctx(gen_kronecker(GF(2)))
    c.details = {"hh1_dim": ctx.H.dim, "derived_dims": [x.dim for x in ctx.series.derived]}
    c.expect(ctx.series.solvable, "solvable")
    return c


def criterion_3(s: Suite) -> Criterion:
    c = Criterion(3, "k[x]/(x^p) over F_p: HH1 = Witt algebra")
    for p in (3, 5, 7):
        L = s.ctx(gen_trunc_poly(p, GF(p))).H.lie
        rw = recognize_witt(L, seed=s.seed)
        c.details[str(p)] = {"hh1_dim": L.dim, "witt": rw.verdict}
        c.expect(L.dim == p, f"dim HH1 = {p}")
        c.expect(rw.verdict == "yes" and verify_witt_basis(L, rw.basis), f"Witt table for p = {p}")
        if p == 3:
            r2 = recognize_sl2(L, seed=s.seed)
            c.details["3"]["sl2"] = r2.verdict
            c.expect(r2.verdict == "yes" and verify_sl2_basis(L, *r2.basis), "sl2 for p = 3")
    return c


def criterion_4(s: Suite) -> Criterion:
    c = Criterion(4, "sl2 inside W(5) on f_-1, f_0, f_1")
    W = gen_witt_lie(5)
    g = [W.basis_vector(i) for i in range(3)]
    U = Subspace(W.field, W.dim, g)
    closed = subalgebra_bracket(W, U, U) <= U
    F = W.field
    e = tuple(-a for a in g[2])
    h = tuple(F(2) * a for a in g[1])
    f = g[0]
    r = recognize_sl2(subalgebra(W, g), seed=s.seed)
    c.details = {"closed": closed, "sl2": r.verdict}
    c.expect(closed, "span closes under bracket")
    c.expect(verify_sl2_basis(W, e, h, f), "e = -f_1, h = 2 f_0, f = f_-1 satisfy the sl2 relations")
    c.expect(r.verdict == "yes", "recognize_sl2 on the span")
    return c


def criterion_5(s: Suite) -> Criterion:
    c = Criterion(5, "k[x]/(x^n) over Q: dim HH1 = n - 1, solvable")
    for n in (2, 3, 4, 6):
        ctx = s.ctx(gen_trunc_poly(n))
        gd, gs = hh1_generic(ctx.A)
        c.details[str(n)] = {"hh1_dim": ctx.H.dim, "generic_dim": gd, "solvable": ctx.series.solvable}
        c.expect(ctx.H.dim == n - 1 == gd, f"dim HH1 = {n - 1} for n = {n}")
        c.expect(ctx.series.solvable and gs, f"solvable for n = {n}")
    return c


def criterion_6(s: Suite) -> Criterion:
    c = Criterion(6, "radical square zero: dim HH1 = e - l + 1, abelian")
    for name, edges in DIGRAPHS.items():
        ctx = s.ctx(gen_rad_square_zero(edges))
        A = ctx.A
        expected = A.num_edges - A.num_simples + 1
        gd, _ = hh1_generic(A)
        c.details[name] = {"hh1_dim": ctx.H.dim, "expected": expected, "generic_dim": gd,
                           "abelian": ctx.series.abelian}
        c.expect(ctx.H.dim == expected == gd, f"dimension formula on {name}")
        c.expect(ctx.series.abelian, f"abelian on {name}")
    return c


def criterion_7(s: Suite) -> Criterion:
    c = Criterion(7, "Nakayama family: harness passes with the solvability bounds")
    for e, L in NAKAYAMA:
        for fld in (QQ, GF(5)):
            ctx = s.ctx(gen_nakayama(e, L, fld))
            rep = run_all(ctx.A, s.seed, ctx=ctx)
            sr = ctx.series
            ll = ctx.loewy
            key = f"{e},{L}/{fld}"
            c.details[key] = {"status": rep.status, "derived_length": sr.derived_length,
                              "nilpotency_class_of_derived": sr.nilpotency_class_of_derived, "loewy": ll}
            c.expect(rep.status == "pass", f"harness status on {key}")
            c.expect(sr.solvable, f"solvable on {key}")
            c.expect(sr.derived_length is not None and sr.derived_length <= derived_length_bound(ll),
                     f"derived length bound on {key}")
            c.expect(sr.nilpotency_class_of_derived is not None
                     and sr.nilpotency_class_of_derived <= nilpotency_class_bound(ll), f"class bound on {key}")
            c.expect(all(ctx.ext1[i][i] == 0 for i in range(e)), f"no loops in the Ext-quiver of {key}")
    return c


def criterion_8(s: Suite) -> Criterion:
    c = Criterion(8, "filtration properties on the corpus")
    for name, text in s.entries:
        rec = s.ctx(text).run(check_filtration_props)
        c.details[name] = rec.verdict
        c.expect(rec.verdict == "pass", f"{name}: {'; '.join(rec.notes)}")
    return c


def criterion_9(s: Suite) -> Criterion:
    c = Criterion(9, f"quiver and generic HH1 agree (dim A <= {GENERIC_LIMIT})")
    for name, text in s.entries:
        ctx = s.ctx(text)
        if ctx.A.dim > GENERIC_LIMIT:
            continue
        rec = ctx.run(check_oracle)
        c.details[name] = [rec.measured.get("quiver_dim"), rec.measured.get("generic_dim")]
        c.expect(rec.applicable and rec.verdict == "pass", f"oracle on {name}")
    return c


def criterion_10(s: Suite) -> Criterion:
    c = Criterion(10, "Lie structure constants valid, Killing form invariant")
    for name, text in s.entries:
        L = s.ctx(text).H.lie
        try:
            L._validate()
            ok = True
        except InvalidLieAlgebra:
            ok = False
        c.expect(ok, f"Jacobi/antisymmetry on {name}")
        c.expect(killing_invariant(L), f"Killing invariance on {name}")
    W = gen_witt_lie(5)
    c.expect(killing_invariant(W), "Killing invariance on W(5)")
    c.details = {"algebras": len(s.entries) + 1}
    return c


def criterion_11(s: Suite) -> Criterion:
    c = Criterion(11, "Schur corner maps")
    for name, text in s.entries:
        ctx = s.ctx(text)
        rec = ctx.run(check_schur_maps)
        filt = ctx.run(check_filtration_props)
        c.details[name] = rec.verdict
        c.expect(rec.verdict == "pass", f"{name}: {'; '.join(rec.notes)}")
        if not ctx.qclass.has_loops:
            c.expect(not filt.measured.get("der1_schur_violations"), f"{name}: corner images in HH1_(1)")
    return c


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10, criterion_11]


def selftest(seed: int = 0) -> dict:
    s = Suite(seed)
    results = [crit(s) for crit in CRITERIA]
    reports = []
    for name, text in s.entries:
        ctx = s.ctx(text)
        rep = run_all(ctx.A, seed, ctx=ctx)
        reports.append({"name": name, "hash": rep.algebra["hash"], "status": rep.status,
                        "verdicts": {r.id: r.verdict for r in rep.checks}})
    ok = all(r.passed for r in results) and all(r["status"] != "fail" for r in reports)
    return {"seed": seed, "criteria": [r.to_json() for r in results], "corpus": reports,
            "status": "pass" if ok else "fail"}


def selftest_json(seed: int = 0) -> str:
    return json.dumps(selftest(seed), sort_keys=True, indent=2)


def verdicts(result: dict) -> dict:
    """Seed-independent summary: pass/fail per criterion and status per corpus entry."""
    return {"criteria": {r["id"]: r["passed"] for r in result["criteria"]},
            "corpus": {r["name"]: r["status"] for r in result["corpus"]}}
