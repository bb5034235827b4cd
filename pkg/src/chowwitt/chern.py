"""Chern and Segre classes of bundle expressions via the splitting principle."""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .bundles import (
    BundleExpr,
    DirectSum,
    Dual,
    LineOnFiber,
    LineOnGrass,
    Pullback,
    Sym,
    TautQuotient,
    TautSub,
    TensorLine,
    Trivial,
)
from .errors import DomainError
from .schubert import chern_quotient
from .spaces import GradedClass, Grassmann, PicClass, ProjBundle, SpaceDesc

Poly = dict[tuple[int, ...], int]


def rank(e: BundleExpr, space: SpaceDesc) -> int:
    box = space.base
    if isinstance(e, TautQuotient):
        return box.k
    if isinstance(e, TautSub):
        return box.w
    if isinstance(e, (LineOnGrass, LineOnFiber)):
        return 1
    if isinstance(e, Trivial):
        return e.r
    if isinstance(e, (Dual, Pullback)):
        return rank(e.e, space)
    if isinstance(e, Sym):
        r = rank(e.e, space)
        return comb(e.d + r - 1, r - 1) if r else 0
    if isinstance(e, DirectSum):
        return rank(e.e1, space) + rank(e.e2, space)
    if isinstance(e, TensorLine):
        return rank(e.e, space)
    raise TypeError(f"not a bundle expression: {e!r}")


def _check(e: BundleExpr, space: SpaceDesc) -> None:
    if isinstance(space, Grassmann):
        if isinstance(e, LineOnFiber):
            raise DomainError("OY(a) needs a projective bundle; the space is a bare Grassmannian")
        if isinstance(e, Pullback):
            raise DomainError("pull() is only meaningful over a projective bundle")
    if isinstance(e, TensorLine) and rank(e.line, space) != 1:
        raise DomainError("tw() needs a rank-1 second argument")


# -- polynomial helpers on formal roots ------------------------------------------------


def _poly_mul(a: Poly, b: Poly, max_deg: int) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if da + sum(eb) > max_deg:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _elementary(i: int, r: int) -> Poly:
    out: Poly = {}
    for combo in itertools.combinations(range(r), i):
        exps = [0] * r
        for j in combo:
            exps[j] = 1
        out[tuple(exps)] = 1
    return out


def to_elementary(poly: Poly, r: int) -> dict[tuple[int, ...], int]:
    """Rewrite a symmetric polynomial in ``r`` roots in elementary symmetric polynomials.

    Returns ``{beta: c}`` meaning ``sum c * e_1^beta_1 ... e_r^beta_r``.  Uses
    leading-term elimination in lex order.
    """
    work = {k: v for k, v in poly.items() if v}
    e_cache: dict[tuple[int, ...], Poly] = {}
    es = [_elementary(i, r) for i in range(r + 1)]
    out: dict[tuple[int, ...], int] = {}
    while work:
        alpha = max(work)
        c = work[alpha]
        if any(a < b for a, b in zip(alpha, alpha[1:])):
            raise DomainError("polynomial is not symmetric")
        beta = tuple(alpha[i] - (alpha[i + 1] if i + 1 < r else 0) for i in range(r))
        if beta not in e_cache:
            p: Poly = {(0,) * r: 1}
            for i, b in enumerate(beta, start=1):
                for _ in range(b):
                    p = _poly_mul(p, es[i], sum(alpha))
            e_cache[beta] = p
        for k, v in e_cache[beta].items():
            work[k] = work.get(k, 0) - c * v
            if not work[k]:
                del work[k]
        out[beta] = out.get(beta, 0) + c
    return out


@lru_cache(maxsize=None)
def sym_root_product(d: int, r: int, max_deg: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """``c(Sym^d E)`` for rank-``r`` ``E`` as a polynomial in ``c_1(E), ..., c_r(E)``.

    The Chern roots of ``Sym^d E`` are the sums of ``d`` roots of ``E`` taken with
    repetition; the product of ``(1 + root)`` is truncated at ``max_deg``.
    """
    prod: Poly = {(0,) * r: 1}
    for multiset in itertools.combinations_with_replacement(range(r), d):
        exps_count = [0] * r
        for j in multiset:
            exps_count[j] += 1
        factor: Poly = {(0,) * r: 1}
        for j, cnt in enumerate(exps_count):
            if cnt:
                key = tuple(1 if t == j else 0 for t in range(r))
                factor[key] = cnt
        prod = _poly_mul(prod, factor, max_deg)
    return tuple(sorted(to_elementary(prod, r).items()))


def _evaluate(poly: tuple[tuple[tuple[int, ...], int], ...], cs: list[GradedClass], space: SpaceDesc) -> GradedClass:
    out = GradedClass.zero(space)
    powers: dict[tuple[int, int], GradedClass] = {}

    def power(i: int, b: int) -> GradedClass:
        if (i, b) not in powers:
            powers[(i, b)] = cs[i] ** b
        return powers[(i, b)]

    for beta, c in poly:
        term = GradedClass.one(space)
        for i, b in enumerate(beta, start=1):
            if b:
                term = term * power(i, b)
                if not term:
                    break
        out = out + term.scale(c)
    return out


# -- total classes ---------------------------------------------------------------------


def inverse(c: GradedClass, up_to: int) -> GradedClass:
    """Formal inverse of ``1 + (higher terms)``, truncated at degree ``up_to``."""
    space = c.space
    if c.piece(0) != GradedClass.one(space):
        raise DomainError("only classes with constant term 1 are invertible here")
    u = c - GradedClass.one(space)
    out = GradedClass.one(space)
    term = GradedClass.one(space)
    for _ in range(min(up_to, space.dim)):
        term = (term * u).scale(-1).truncate(up_to)
        if not term:
            break
        out = out + term
    return out.truncate(up_to)


def chern_total(e: BundleExpr, space: SpaceDesc) -> GradedClass:
    _check(e, space)
    if isinstance(e, Trivial):
        return GradedClass.one(space)
    if isinstance(e, TautQuotient):
        return GradedClass.from_schubert(space, chern_quotient(space.base))
    if isinstance(e, TautSub):
        # Euler sequence: c(S) c(Q) = 1
        return inverse(chern_total(TautQuotient(), space), space.dim)
    if isinstance(e, LineOnGrass):
        return GradedClass.one(space) + GradedClass.sigma(space, (1,), e.a)
    if isinstance(e, LineOnFiber):
        return GradedClass.one(space) + GradedClass.xi(space).scale(e.a)
    if isinstance(e, Pullback):
        return chern_total(e.e, space)
    if isinstance(e, Dual):
        c = chern_total(e.e, space)
        return GradedClass(space, tuple((k, -v if (sum(k[0]) + k[1]) % 2 else v) for k, v in c.terms))
    if isinstance(e, DirectSum):
        return chern_total(e.e1, space) * chern_total(e.e2, space)
    if isinstance(e, TensorLine):
        # c(E (x) L) = sum_i c_i(E) (1 + l)^(r - i)
        r = rank(e.e, space)
        c = chern_total(e.e, space)
        one_l = chern_total(e.line, space)
        out = GradedClass.zero(space)
        for i in range(r + 1):
            out = out + c.piece(i) * one_l ** (r - i)
        return out
    if isinstance(e, Sym):
        r = rank(e.e, space)
        if r == 0:
            return GradedClass.one(space)
        c = chern_total(e.e, space)
        cs = [c.piece(i) for i in range(r + 1)]
        return _evaluate(sym_root_product(e.d, r, space.dim), cs, space)
    raise TypeError(f"not a bundle expression: {e!r}")


def chern_class(e: BundleExpr, space: SpaceDesc, i: int) -> GradedClass:
    return chern_total(e, space).piece(i)


def top_chern(e: BundleExpr, space: SpaceDesc) -> GradedClass:
    return chern_class(e, space, rank(e, space))


def first_chern(e: BundleExpr, space: SpaceDesc) -> PicClass:
    """Class of ``det e`` in Picard coordinates."""
    c1 = chern_class(e, space, 1)
    if isinstance(space, ProjBundle):
        return PicClass(space, (c1.coeff((), 1), c1.coeff((1,), 0)))
    return PicClass(space, (c1.coeff((1,), 0),))


def segre_total(e: BundleExpr, space: SpaceDesc, up_to: int) -> GradedClass:
    return inverse(chern_total(e, space), up_to)
