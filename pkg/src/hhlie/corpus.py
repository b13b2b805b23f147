"""Built-in corpus of presentations, generated in-process."""
from __future__ import annotations

from .algebra import FdAlgebra, build_algebra
from .fields import GF, QQ
from .generators import gen_kronecker, gen_nakayama, gen_rad_square_zero, gen_trunc_poly
from .quiver import parse_presentation

DIGRAPHS = {
    "A2": [(0, 1)],
    "triangle": [(0, 1), (1, 2), (2, 0)],
    "4-cycle": [(0, 1), (1, 2), (2, 3), (3, 0)],
    "3-out-star": [(0, 1), (0, 2), (0, 3)],
}

NAKAYAMA = [(2, 3), (3, 5), (4, 9), (2, 7)]

COMMUTATIVE_SQUARE = """\
# commutative square
field Q
vertices 4
arrow a 0 1
arrow b 0 2
arrow c 1 3
arrow d 2 3
truncate 3
rel 1 a*c -1 b*d
"""

SEMISIMPLE = """\
# two points
field Q
vertices 2
truncate 2
"""


def corpus() -> list[tuple[str, str]]:
    """``(name, presentation text)`` pairs in a fixed order."""
    out = []
    for fld in (QQ, GF(2), GF(3), GF(5)):
        out.append((f"kronecker/{fld}", gen_kronecker(fld)))
    for n in (2, 3, 4, 6):
        out.append((f"trunc-poly {n}/Q", gen_trunc_poly(n)))
    for p in (3, 5, 7):
        out.append((f"trunc-poly {p}/F{p}", gen_trunc_poly(p, GF(p))))
    for e, L in NAKAYAMA:
        for fld in (QQ, GF(5)):
            out.append((f"nakayama {e} {L}/{fld}", gen_nakayama(e, L, fld)))
    for name, edges in DIGRAPHS.items():
        out.append((f"rad-sq-zero {name}/Q", gen_rad_square_zero(edges)))
    out.append(("commutative-square/Q", COMMUTATIVE_SQUARE))
    out.append(("semisimple/Q", SEMISIMPLE))
    return out


def load(text: str) -> FdAlgebra:
    return build_algebra(parse_presentation(text))
