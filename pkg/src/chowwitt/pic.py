"""Canonical classes, quadratic equivalence and relative orientability."""

from __future__ import annotations

from .chern import first_chern
from .errors import DomainError
from .spaces import Grassmann, PicClass, SpaceDesc

__all__ = ["PicClass", "canonical", "quad_equiv", "rel_orientable", "pic_zero"]


def pic_zero(space: SpaceDesc) -> PicClass:
    return PicClass(space, (0,) * space.pic_rank)


def canonical(space: SpaceDesc) -> PicClass:
    """``omega_Gr(k,n) = O(-n)``; on ``P(F)``, ``O_Y(-m) (x) pi^*(det F (x) omega_Gr)``."""
    n = space.base.n
    if isinstance(space, Grassmann):
        return PicClass(space, (-n,))
    m = space.fiber_rank
    det_f = first_chern(space.fiber, Grassmann(space.base)).coords[0]
    return PicClass(space, (-m, det_f - n))


def quad_equiv(a: PicClass, b: PicClass) -> bool:
    """Two line bundles differ by a square iff every coordinate of ``a - b`` is even."""
    if a.space != b.space:
        raise DomainError("Picard classes on different spaces")
    return all((x - y) % 2 == 0 for x, y in zip(a.coords, b.coords))


def rel_orientable(det_e: PicClass, rank_e: int, space: SpaceDesc) -> bool:
    if det_e.space != space:
        raise DomainError("determinant lives on a different space")
    return rank_e == space.dim and quad_equiv(det_e, canonical(space))

