"""Projective bundles ``Y = P(F)`` over a Grassmannian: normal form, pushforward, degree.

Convention: ``P(F)`` parameterizes rank-1 quotients of ``F`` and ``xi = c_1(O_Y(1))``.
With this choice the defining relation is::

    xi^m - c_1(F) xi^(m-1) + c_2(F) xi^(m-2) - ... + (-1)^m c_m(F) = 0

and ``pi_*(xi^(m-1+j)) = s_j(F^dual)``, where ``s = 1/c`` is the Segre class.  Both
signs are pinned by the Hirzebruch-surface check in the test suite:
on ``P(O + O(1))`` over ``P^1`` one gets ``xi^2 = xi * f`` with ``deg(xi * f) = 1``.
"""

from __future__ import annotations

from .bundles import BundleExpr, Dual
from .chern import segre_total
from .errors import DomainError
from .schubert import BoxShape, SchubertClass
from .spaces import GradedClass, Grassmann, ProjBundle, SpaceDesc
from . import schubert


def projective_bundle(k: int, n: int, fiber: BundleExpr) -> ProjBundle:
    return ProjBundle(BoxShape.of_grassmannian(k, n), fiber)


def _require_projbundle(space: SpaceDesc) -> ProjBundle:
    if not isinstance(space, ProjBundle):
        raise DomainError(f"expected a projective bundle, got {space.text()}")
    return space


def reduce(c: GradedClass) -> GradedClass:
    """Bring ``c`` to normal form (all xi-exponents below the fiber rank)."""
    space = _require_projbundle(c.space)
    return GradedClass.from_dict(space, c.as_dict())


def relation_terms(space: ProjBundle) -> dict:
    """The defining polynomial of ``xi`` as raw ``{(lam, j): c}`` terms.

    It is zero in the Chow ring, so it cannot be held as a normalized
    :class:`GradedClass`; tests combine it with :func:`pushforward_terms`.
    """
    m = space.fiber_rank
    out: dict = {}
    for i, ci in enumerate(space.fiber_chern):
        sign = -1 if i % 2 else 1
        for lam, c in ci.terms:
            out[(lam, m - i)] = out.get((lam, m - i), 0) + sign * c
    return out


def base_segre(space: ProjBundle) -> SchubertClass:
    """``s(F^dual)`` on the base, the kernel of the pushforward."""
    base = Grassmann(space.base)
    return segre_total(Dual(space.fiber), base, base.dim).to_schubert()


def pushforward_terms(space: ProjBundle, terms: dict) -> SchubertClass:
    """Apply ``pi_*(sigma_lam xi^j) = sigma_lam s_(j-m+1)(F^dual)`` to raw, unreduced terms."""
    m = space.fiber_rank
    seg = base_segre(space)
    out: dict = {}
    for (lam, j), k in terms.items():
        idx = j - (m - 1)
        if idx < 0:
            continue
        for mu, s in seg.piece(idx).terms:
            for nu, e in schubert.basis_product(space.base, lam, mu):
                out[nu] = out.get(nu, 0) + k * s * e
    return SchubertClass.from_dict(space.base, out)


def pushforward(c: GradedClass) -> SchubertClass:
    space = _require_projbundle(c.space)
    return pushforward_terms(space, reduce(c).as_dict())


def pullback(space: SpaceDesc, x: SchubertClass) -> GradedClass:
    return GradedClass.from_schubert(space, x)


def degree_Y(c: GradedClass) -> int:
    """Degree of a top-codimension class on a Grassmannian or projective bundle."""
    space = c.space
    if c and c.degrees() != {space.dim}:
        raise DomainError(
            f"degree needs a class of codimension {space.dim}, got pieces in {sorted(c.degrees())}"
        )
    if isinstance(space, Grassmann):
        return schubert.degree(c.to_schubert())
    return schubert.degree(pushforward(c))
