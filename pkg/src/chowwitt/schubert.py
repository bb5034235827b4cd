"""Chow ring of the Grassmannian Gr(k, n) of rank-k quotients, in the Schubert basis.

Schubert classes are indexed by partitions fitting a box with ``k`` rows and
``w = n - k`` columns.  ``sigma_(i)`` (one row) is the i-th special class, and the
Chern classes of the universal quotient are the column classes
``c_i(Q) = sigma_(1^i)``.  Products are computed with the Pieri rule applied to a
Jacobi-Trudi expansion of the second factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import DomainError

Partition = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Validate and normalize a partition (drop trailing zeros)."""
    p = [int(x) for x in parts]
    if any(x < 0 for x in p):
        raise DomainError(f"partition has negative part: {p}")
    if any(a < b for a, b in zip(p, p[1:])):
        raise DomainError(f"partition is not weakly decreasing: {p}")
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


@dataclass(frozen=True, order=True)
class BoxShape:
    """A ``k x w`` box: ``k`` rows (rank of Q) and ``w = n - k`` columns."""

    k: int
    w: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.w < 0:
            raise DomainError(f"invalid box {self.k}x{self.w}")

    @classmethod
    def of_grassmannian(cls, k: int, n: int) -> "BoxShape":
        if not 1 <= k <= n:
            raise DomainError(f"Gr({k},{n}) needs 1 <= k <= n")
        return cls(k, n - k)

    @property
    def n(self) -> int:
        return self.k + self.w

    @property
    def dim(self) -> int:
        return self.k * self.w

    @property
    def full(self) -> Partition:
        return (self.w,) * self.k if self.w else ()

    def fits(self, lam: Partition) -> bool:
        return len(lam) <= self.k and (not lam or lam[0] <= self.w)

    def partitions(self) -> Iterator[Partition]:
        """All partitions in the box, in lexicographic order."""
        out = []
        for rows in itertools.combinations_with_replacement(range(self.w, -1, -1), self.k):
            out.append(partition(rows))
        yield from sorted(out)


def _check_fits(lam: Partition, box: BoxShape) -> None:
    if not box.fits(lam):
        raise DomainError(f"partition {lam} does not fit box {box.k}x{box.w}")


@dataclass(frozen=True)
class SchubertClass:
    """An integer combination of Schubert classes on one Grassmannian.

    ``terms`` is kept sorted by partition with no zero coefficients, so equality
    and serialization are canonical.
    """

    box: BoxShape
    terms: tuple[tuple[Partition, int], ...] = ()

    @classmethod
    def from_dict(cls, box: BoxShape, terms: Mapping[Partition, int]) -> "SchubertClass":
        clean = {}
        for lam, c in terms.items():
            lam = partition(lam)
            _check_fits(lam, box)
            if c:
                clean[lam] = clean.get(lam, 0) + int(c)
        return cls(box, tuple(sorted((lam, c) for lam, c in clean.items() if c)))

    @classmethod
    def sigma(cls, box: BoxShape, lam: Iterable[int] = (), coeff: int = 1) -> "SchubertClass":
        return cls.from_dict(box, {partition(lam): coeff})

    @classmethod
    def zero(cls, box: BoxShape) -> "SchubertClass":
        return cls(box)

    @classmethod
    def one(cls, box: BoxShape) -> "SchubertClass":
        return cls(box, (((), 1),))

    def as_dict(self) -> dict[Partition, int]:
        return dict(self.terms)

    def coeff(self, lam: Iterable[int]) -> int:
        return self.as_dict().get(partition(lam), 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _same_box(self, other: "SchubertClass") -> None:
        if self.box != other.box:
            raise DomainError(f"box mismatch: {self.box} vs {other.box}")

    def __add__(self, other: "SchubertClass") -> "SchubertClass":
        self._same_box(other)
        d = self.as_dict()
        for lam, c in other.terms:
            d[lam] = d.get(lam, 0) + c
        return SchubertClass.from_dict(self.box, d)

    def __neg__(self) -> "SchubertClass":
        return SchubertClass(self.box, tuple((lam, -c) for lam, c in self.terms))

    def __sub__(self, other: "SchubertClass") -> "SchubertClass":
        return self + (-other)

    def scale(self, s: int) -> "SchubertClass":
        if not s:
            return SchubertClass.zero(self.box)
        return SchubertClass(self.box, tuple((lam, c * s) for lam, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "SchubertClass":
        out = SchubertClass.one(self.box)
        for _ in range(e):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {sum(lam) for lam, _ in self.terms}

    def piece(self, deg: int) -> "SchubertClass":
        return SchubertClass(self.box, tuple(t for t in self.terms if sum(t[0]) == deg))

    def to_records(self) -> list[dict]:
        """JSON-compatible records ``{partition, coeff}`` with the coefficient as a string."""
        return [{"partition": list(lam), "coeff": str(c)} for lam, c in self.terms]

    @classmethod
    def from_records(cls, box: BoxShape, records: Iterable[Mapping]) -> "SchubertClass":
        d: dict[Partition, int] = {}
        for r in records:
            lam = partition(r["partition"])
            d[lam] = d.get(lam, 0) + int(r["coeff"])
        return cls.from_dict(box, d)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for lam, c in self.terms:
            name = "1" if not lam else "s(" + ",".join(map(str, lam)) + ")"
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def _horizontal_strips(lam: Partition, i: int, box: BoxShape) -> Iterator[Partition]:
    lam_rows = list(lam) + [0] * (box.k - len(lam))
    # mu_j ranges over [lam_j, lam_{j-1}] (lam_0 = w); total added must be i
    def rec(j: int, left: int, acc: list[int]) -> Iterator[Partition]:
        if j == box.k:
            if left == 0:
                yield partition(acc)
            return
        upper = box.w if j == 0 else lam_rows[j - 1]
        for add in range(min(left, upper - lam_rows[j]), -1, -1):
            yield from rec(j + 1, left - add, acc + [lam_rows[j] + add])

    yield from rec(0, i, [])


@lru_cache(maxsize=None)
def _pieri_terms(lam: Partition, i: int, box: BoxShape) -> tuple[Partition, ...]:
    return tuple(sorted(_horizontal_strips(lam, i, box)))


def pieri(lam: Iterable[int], i: int, box: BoxShape) -> SchubertClass:
    """``sigma_lam * sigma_(i)``: add a horizontal strip of ``i`` boxes inside the box."""
    lam = partition(lam)
    _check_fits(lam, box)
    if i < 0:
        raise DomainError("pieri needs i >= 0")
    return SchubertClass(box, tuple((mu, 1) for mu in _pieri_terms(lam, i, box)))


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    for a, b in itertools.combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _jacobi_trudi(mu: Partition) -> tuple[tuple[tuple[int, ...], int], ...]:
    """``s_mu`` as an integer combination of products ``h_{a1} h_{a2} ...``."""
    ell = len(mu)
    out: dict[tuple[int, ...], int] = {}
    for perm in itertools.permutations(range(ell)):
        idx = tuple(sorted((mu[i] - i + perm[i] for i in range(ell)), reverse=True))
        if idx and idx[-1] < 0:
            continue
        idx = tuple(a for a in idx if a)
        out[idx] = out.get(idx, 0) + _perm_sign(perm)
    return tuple((k, v) for k, v in sorted(out.items()) if v)


@lru_cache(maxsize=None)
def basis_product(box: BoxShape, lam: Partition, mu: Partition) -> tuple[tuple[Partition, int], ...]:
    """Structure constants: ``sigma_lam * sigma_mu`` as sorted ``(nu, c)`` pairs."""
    if sum(lam) < sum(mu):
        lam, mu = mu, lam
    if sum(lam) + sum(mu) > box.dim:
        return ()
    out: dict[Partition, int] = {}
    for hs, sign in _jacobi_trudi(mu):
        if hs and hs[0] > box.w:
            continue
        cur = {lam: 1}
        for a in hs:
            nxt: dict[Partition, int] = {}
            for nu, c in cur.items():
                for rho in _pieri_terms(nu, a, box):
                    nxt[rho] = nxt.get(rho, 0) + c
            cur = nxt
            if not cur:
                break
        for nu, c in cur.items():
            out[nu] = out.get(nu, 0) + sign * c
    return tuple(sorted((nu, c) for nu, c in out.items() if c))


def multiply(a: SchubertClass, b: SchubertClass) -> SchubertClass:
    a._same_box(b)
    box = a.box
    out: dict[Partition, int] = {}
    for lam, ca in a.terms:
        for mu, cb in b.terms:
            for nu, c in basis_product(box, lam, mu):
                out[nu] = out.get(nu, 0) + ca * cb * c
    return SchubertClass.from_dict(box, out)


def degree(c: SchubertClass) -> int:
    """Coefficient of the point class; ``c`` must be zero or of top codimension."""
    if not c.terms:
        return 0
    if c.degrees() != {c.box.dim}:
        raise DomainError(
            f"degree needs a class of codimension {c.box.dim}, got pieces in {sorted(c.degrees())}"
        )
    return c.coeff(c.box.full)


def chern_quotient(box: BoxShape) -> SchubertClass:
    """Total Chern class of the universal quotient: sum of column classes ``sigma_(1^i)``."""
    return SchubertClass.from_dict(box, {(1,) * i: 1 for i in range(box.k + 1) if i == 0 or box.w >= 1})
