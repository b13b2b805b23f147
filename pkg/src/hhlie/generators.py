"""Presentations of the standard example families, and the Witt algebra.

Each ``gen_*`` function returns presentation text in the file format.
"""
from __future__ import annotations

from string import ascii_lowercase

from .algebra import build_algebra
from .errors import BadField, HHLieError
from .fields import GF, QQ, Field, is_prime
from .hh1 import is_derivation
from .lie import LieSC
from .linalg import Matrix
from .quiver import Arrow, BoundQuiverPresentation, Quiver, emit_presentation, parse_presentation


def _arrow_names(n: int) -> list[str]:
    if n <= len(ascii_lowercase):
        return list(ascii_lowercase[:n])
    return [f"a{i}" for i in range(n)]


def _emit(field, nverts, arrows, truncate, header) -> str:
    q = Quiver(nverts, tuple(Arrow(*a) for a in arrows))
    return emit_presentation(BoundQuiverPresentation(field, q, truncate, (), (header,)))


def gen_kronecker(field: Field = QQ) -> str:
    return _emit(field, 2, [("a", 0, 1), ("b", 0, 1)], 2, "kronecker")


def gen_trunc_poly(n: int, field: Field = QQ) -> str:
    """``k[x] / (x^n)`` as a one-loop quiver."""
    if n < 2:
        raise ValueError("trunc-poly needs n >= 2")
    return _emit(field, 1, [("x", 0, 0)], n, f"trunc-poly {n}")


def gen_nakayama(e: int, L: int, field: Field = QQ) -> str:
    """Cyclic quiver ``i -> i+1 mod e`` truncated at path length ``L``."""
    if e < 1 or L < 2:
        raise ValueError("nakayama needs e >= 1 and L >= 2")
    if e == 1:
        return gen_trunc_poly(L, field)
    names = _arrow_names(e)
    return _emit(field, e, [(names[i], i, (i + 1) % e) for i in range(e)], L, f"nakayama {e} {L}")


def gen_rad_square_zero(edges, num_vertices: int | None = None, field: Field = QQ) -> str:
    """One arrow per edge of a simple digraph, ``J^2 = 0``."""
    edges = [tuple(map(int, e)) for e in edges]
    if len(set(edges)) != len(edges):
        raise ValueError("repeated edge")
    if any(s == t for s, t in edges):
        raise ValueError("loops are not allowed")
    if any(v < 0 for e in edges for v in e):
        raise ValueError("negative vertex")
    n = max((v for e in edges for v in e), default=0) + 1
    if num_vertices is not None:
        if num_vertices < n:
            raise ValueError("edge uses a vertex out of range")
        n = num_vertices
    names = _arrow_names(len(edges))
    label = " ".join(f"{s}-{t}" for s, t in edges)
    return _emit(field, n, [(names[k], s, t) for k, (s, t) in enumerate(edges)], 2, f"rad-sq-zero {label}".rstrip())


def parse_edge_list(text: str) -> list[tuple[int, int]]:
    """``"0-1,1-2"`` (commas or spaces) into edge pairs."""
    out = []
    for tok in text.replace(",", " ").split():
        s, sep, t = tok.partition("-")
        if not sep or not s.isdigit() or not t.isdigit():
            raise ValueError(f"bad edge {tok!r}; expected src-dst")
        out.append((int(s), int(t)))
    return out


# ---------------------------------------------------------------- Witt algebra

def witt_derivation_matrices(p: int) -> list[Matrix]:
    """Matrices of ``f_i: x -> x^(i+1)`` on ``1, x, ..., x^(p-1)`` for ``i = -1..p-2``."""
    F = GF(p)
    mats = []
    for i in range(-1, p - 1):
        rows = [[0] * p for _ in range(p)]
        for k in range(p):
            # f_i(x^k) = k x^(k+i)
            if 0 <= k + i < p and k % p:
                rows[k + i][k] = k
        mats.append(Matrix(F, rows, p))
    return mats


def gen_witt_lie(p: int):
    """The Witt algebra ``Der(k[x]/(x^p))`` over ``F_p`` in the basis ``f_{-1}, ..., f_{p-2}``."""
    if not is_prime(p) or p < 3:
        raise BadField(f"Witt algebra needs a prime p >= 3, got {p}")
    mats = witt_derivation_matrices(p)
    A = build_algebra(parse_presentation(gen_trunc_poly(p, GF(p))))
    # basis of A is 1, x, ..., x^(p-1) in this order
    if any(not is_derivation(A, M) for M in mats):
        raise HHLieError("Witt matrices fail the Leibniz rule")
    return LieSC.from_matrices(GF(p), mats, label=f"W({p})")


GENERATORS = {
    "kronecker": gen_kronecker,
    "trunc-poly": gen_trunc_poly,
    "nakayama": gen_nakayama,
    "rad-sq-zero": gen_rad_square_zero,
}
