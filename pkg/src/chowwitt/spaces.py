"""Ambient spaces, their graded Chow rings, and Picard coordinates.

Two kinds of space are supported: a Grassmannian ``Gr(k, n)`` of rank-k quotients,
and a projective bundle ``P(F)`` of rank-1 quotients of a bundle ``F`` on one.
A class on ``P(F)`` is stored as a combination of ``sigma_lam * xi^j`` with
``xi = c_1(O_Y(1))`` and ``j < rank F``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

from . import schubert
from .bundles import BundleExpr, render, uses_fiber, uses_pullback
from .errors import DomainError
from .schubert import BoxShape, Partition, SchubertClass

Key = tuple[Partition, int]


@dataclass(frozen=True)
class Grassmann:
    box: BoxShape

    @classmethod
    def of(cls, k: int, n: int) -> "Grassmann":
        return cls(BoxShape.of_grassmannian(k, n))

    @property
    def base(self) -> BoxShape:
        return self.box

    @property
    def dim(self) -> int:
        return self.box.dim

    @property
    def pic_rank(self) -> int:
        return 1

    def text(self) -> str:
        return f"Gr({self.box.k},{self.box.n})"

    def normalize(self, terms: dict[Key, int]) -> dict[Key, int]:
        return terms


@dataclass(frozen=True)
class ProjBundle:
    """``P(F) = Proj Sym F`` over ``Gr(k, n)``; ``F`` is given on the base."""

    base: BoxShape
    fiber: BundleExpr

    def __post_init__(self) -> None:
        if uses_fiber(self.fiber) or uses_pullback(self.fiber):
            raise DomainError("the fiber sheaf must be an expression on the base Grassmannian")
        if self.fiber_rank < 1:
            raise DomainError("the fiber sheaf must have rank >= 1")

    @cached_property
    def fiber_rank(self) -> int:
        from .chern import rank

        return rank(self.fiber, Grassmann(self.base))

    @cached_property
    def fiber_chern(self) -> tuple[SchubertClass, ...]:
        """``(c_0(F), ..., c_m(F))`` on the base."""
        from .chern import chern_total

        c = chern_total(self.fiber, Grassmann(self.base)).to_schubert()
        return tuple(c.piece(i) for i in range(self.fiber_rank + 1))

    @property
    def relative_dim(self) -> int:
        return self.fiber_rank - 1

    @property
    def dim(self) -> int:
        return self.base.dim + self.fiber_rank - 1

    @property
    def pic_rank(self) -> int:
        return 2

    def text(self) -> str:
        return f"P({render(self.fiber)}) over Gr({self.base.k},{self.base.n})"

    def normalize(self, terms: dict[Key, int]) -> dict[Key, int]:
        # xi^m = sum_{i>=1} (-1)^(i+1) c_i(F) xi^(m-i)
        m = self.fiber_rank
        rel = self.fiber_chern
        out: dict[Key, int] = {}
        work = dict(terms)
        while work:
            top = max(j for _, j in work)
            if top < m:
                for key, c in work.items():
                    out[key] = out.get(key, 0) + c
                break
            nxt: dict[Key, int] = {}
            for (lam, j), c in work.items():
                if j < top:
                    nxt[(lam, j)] = nxt.get((lam, j), 0) + c
                    continue
                for i in range(1, m + 1):
                    sign = 1 if i % 2 else -1
                    for mu, k in rel[i].terms:
                        for nu, e in schubert.basis_product(self.base, lam, mu):
                            key = (nu, j - i)
                            nxt[key] = nxt.get(key, 0) + sign * c * k * e
            work = {key: c for key, c in nxt.items() if c}
        return {key: c for key, c in out.items() if c}


SpaceDesc = Union[Grassmann, ProjBundle]


def _key_degree(key: Key) -> int:
    return sum(key[0]) + key[1]


@dataclass(frozen=True)
class GradedClass:
    """An element of the Chow ring of ``space``, in normal form."""

    space: SpaceDesc
    terms: tuple[tuple[Key, int], ...] = ()

    @classmethod
    def from_dict(cls, space: SpaceDesc, terms: Mapping[Key, int]) -> "GradedClass":
        box = space.base
        clean: dict[Key, int] = {}
        for (lam, j), c in terms.items():
            lam = schubert.partition(lam)
            if not box.fits(lam):
                continue
            if j < 0:
                raise DomainError("negative xi exponent")
            if j and isinstance(space, Grassmann):
                raise DomainError("xi is not defined on a bare Grassmannian")
            if c and sum(lam) + j <= space.dim:
                clean[(lam, j)] = clean.get((lam, j), 0) + int(c)
        clean = space.normalize({k: c for k, c in clean.items() if c})
        return cls(space, tuple(sorted((k, c) for k, c in clean.items() if c)))

    @classmethod
    def zero(cls, space: SpaceDesc) -> "GradedClass":
        return cls(space)

    @classmethod
    def one(cls, space: SpaceDesc) -> "GradedClass":
        return cls(space, ((((), 0), 1),))

    @classmethod
    def xi(cls, space: SpaceDesc, power: int = 1) -> "GradedClass":
        return cls.from_dict(space, {((), power): 1})

    @classmethod
    def sigma(cls, space: SpaceDesc, lam: Iterable[int], coeff: int = 1, xi_power: int = 0) -> "GradedClass":
        return cls.from_dict(space, {(schubert.partition(lam), xi_power): coeff})

    @classmethod
    def from_schubert(cls, space: SpaceDesc, c: SchubertClass) -> "GradedClass":
        if c.box != space.base:
            raise DomainError("base class lives on a different Grassmannian")
        return cls.from_dict(space, {(lam, 0): k for lam, k in c.terms})

    def to_schubert(self) -> SchubertClass:
        if any(j for (_, j), _ in self.terms):
            raise DomainError("class involves xi; push it forward first")
        return SchubertClass.from_dict(self.space.base, {lam: c for (lam, _), c in self.terms})

    def as_dict(self) -> dict[Key, int]:
        return dict(self.terms)

    def coeff(self, lam: Iterable[int], xi_power: int = 0) -> int:
        return self.as_dict().get((schubert.partition(lam), xi_power), 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _same_space(self, other: "GradedClass") -> None:
        if self.space != other.space:
            raise DomainError("classes live on different spaces")

    def __add__(self, other: "GradedClass") -> "GradedClass":
        self._same_space(other)
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, 0) + c
        return GradedClass(self.space, tuple(sorted((k, c) for k, c in d.items() if c)))

    def __neg__(self) -> "GradedClass":
        return GradedClass(self.space, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "GradedClass") -> "GradedClass":
        return self + (-other)

    def scale(self, s: int) -> "GradedClass":
        if not s:
            return GradedClass.zero(self.space)
        return GradedClass(self.space, tuple((k, c * s) for k, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        self._same_space(other)
        box = self.space.base
        dim = self.space.dim
        out: dict[Key, int] = {}
        for (lam, i), a in self.terms:
            for (mu, j), b in other.terms:
                if _key_degree((lam, i)) + _key_degree((mu, j)) > dim:
                    continue
                for nu, c in schubert.basis_product(box, lam, mu):
                    key = (nu, i + j)
                    out[key] = out.get(key, 0) + a * b * c
        return GradedClass.from_dict(self.space, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "GradedClass":
        out = GradedClass.one(self.space)
        for _ in range(e):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {_key_degree(k) for k, _ in self.terms}

    def piece(self, deg: int) -> "GradedClass":
        return GradedClass(self.space, tuple(t for t in self.terms if _key_degree(t[0]) == deg))

    def truncate(self, deg: int) -> "GradedClass":
        return GradedClass(self.space, tuple(t for t in self.terms if _key_degree(t[0]) <= deg))

    def to_records(self) -> list[dict]:
        return [{"partition": list(lam), "xi": j, "coeff": str(c)} for (lam, j), c in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (lam, j), c in self.terms:
            factors = []
            if lam:
                factors.append("s(" + ",".join(map(str, lam)) + ")")
            if j:
                factors.append("xi" if j == 1 else f"xi^{j}")
            name = "*".join(factors) or "1"
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class PicClass:
    """Integer coordinates on ``[O_G(1)]`` (Grassmannian) or ``[O_Y(1), pi^*O_G(1)]``."""

    space: SpaceDesc
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.space.pic_rank:
            raise DomainError(f"Picard class needs {self.space.pic_rank} coordinates, got {len(self.coords)}")
        if self.space.base.w == 0:
            # Pic of a point is trivial
            coords = list(self.coords)
            coords[-1] = 0
            object.__setattr__(self, "coords", tuple(coords))

    def __add__(self, other: "PicClass") -> "PicClass":
        if self.space != other.space:
            raise DomainError("Picard classes on different spaces")
        return PicClass(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self + other.scale(-1)

    def scale(self, s: int) -> "PicClass":
        return PicClass(self.space, tuple(s * a for a in self.coords))

    def text(self) -> str:
        if isinstance(self.space, Grassmann):
            return f"O({self.coords[0]})"
        return f"O_Y({self.coords[0]}) ⊗ pi*O({self.coords[1]})"


def space_text(space: SpaceDesc) -> str:
    return space.text()
