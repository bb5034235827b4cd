"""Enriched Euler classes: the orientability case split and the three line-count scenarios.

Given a sheaf of rank ``dim Y`` on a supported space ``Y`` the engine computes the
Chow degree ``N`` of its top Chern class and its determinant, then:

* not relatively orientable, with ``Y`` a Grassmannian or a projective bundle of
  relative dimension ``r`` where ``r`` is even or ``r`` and ``n`` are both odd: the
  Chow-Witt class is determined by ``N``; for even ``N`` it is ``(N/2) h``;
* relatively orientable of odd rank: the quadratic degree is ``(N/2) h``;
* anything else is reported as undetermined, with the Chow degree.

When the determinant is unknown every orientability branch is reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from math import comb
from typing import Optional, Union

from . import gw
from .bundles import BundleExpr, DirectSum, Dual, Q, Sym, Trivial, render
from .chern import first_chern, rank, top_chern
from .errors import DomainError
from .gw import DEFAULT_FIELD, FieldSpec, GWElem, TrivializedCWClass
from .pic import canonical, rel_orientable
from .projbundle import degree_Y, projective_bundle
from .spaces import Grassmann, PicClass, ProjBundle, SpaceDesc

NON_ORIENTABLE = "NonOrientableTrivialized"
ORIENTABLE_ODD = "OrientableOddRank"
UNDETERMINED = "Undetermined"


class InsufficientData(DomainError):
    """An opaque sheaf lacks a value the requested branch needs."""


@dataclass(frozen=True)
class ExprSheaf:
    expr: BundleExpr

    def text(self) -> str:
        return render(self.expr)


@dataclass(frozen=True)
class OpaqueSheaf:
    rank: int
    chow_degree: Optional[int] = None
    det: Optional[PicClass] = None

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise DomainError("opaque sheaf needs rank >= 0")

    def text(self) -> str:
        deg = "?" if self.chow_degree is None else str(self.chow_degree)
        det = "?" if self.det is None else self.det.text()
        return f"opaque(rank={self.rank}, deg={deg}, det={det})"


SheafDesc = Union[ExprSheaf, OpaqueSheaf]


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool


@dataclass(frozen=True)
class Branch:
    assumption: str
    orientable: bool
    report: "EulerReport"


@dataclass(frozen=True)
class EulerReport:
    verdict: str
    rank: int
    omega: PicClass
    field: FieldSpec
    chow_degree: Optional[int] = None
    det: Optional[PicClass] = None
    trivialized_class: Optional[TrivializedCWClass] = None
    hyperbolic_presentation: Optional[GWElem] = None
    gw_degree: Optional[GWElem] = None
    reason: Optional[str] = None
    hypotheses: tuple[Hypothesis, ...] = ()
    branches: tuple[Branch, ...] = ()
    notes: tuple[str, ...] = ()
    space_text: str = ""
    sheaf_text: str = ""

    @property
    def gw_value(self) -> Optional[GWElem]:
        return self.gw_degree if self.gw_degree is not None else self.hyperbolic_presentation

    def to_json(self) -> dict:
        g = self.gw_value
        out = {
            "verdict": self.verdict,
            "space": self.space_text,
            "sheaf": self.sheaf_text,
            "field": self.field.name,
            "chow_degree": None if self.chow_degree is None else str(self.chow_degree),
            "gw": None if g is None else g.to_json(),
            "trivialized_class": None
            if self.trivialized_class is None
            else {"chow": str(self.trivialized_class.chow), "witt": self.trivialized_class.witt_part},
            "reason": self.reason,
            "branches": [
                {"assumption": b.assumption, "orientable": b.orientable, "report": b.report.to_json()}
                for b in self.branches
            ],
            "hypotheses": [{"name": h.name, "holds": h.holds} for h in self.hypotheses],
            "audit": {
                "rank": str(self.rank),
                "det": None if self.det is None else _pic_json(self.det),
                "omega": _pic_json(self.omega),
                "twist_mod_squares": None if self.det is None else [c % 2 for c in self.det.coords],
            },
            "notes": list(self.notes),
        }
        return out

    def text(self, indent: str = "", brief: bool = False) -> str:
        lines = []
        if self.space_text and not brief:
            lines.append(f"{indent}space: {self.space_text}")
        if self.sheaf_text and not brief:
            lines.append(f"{indent}sheaf: {self.sheaf_text}")
        lines.append(f"{indent}verdict: {self.verdict}")
        lines.append(f"{indent}chow_degree: {'unknown' if self.chow_degree is None else self.chow_degree}")
        if self.trivialized_class is not None:
            t = self.trivialized_class
            lines.append(f"{indent}trivialized class: chow {t.chow}, witt part {t.witt_part}")
        if self.hyperbolic_presentation is not None:
            lines.append(f"{indent}presentation: {self.hyperbolic_presentation.render()}")
        if self.gw_degree is not None:
            lines.append(f"{indent}quadratic degree: {self.gw_degree.render()}")
        if self.reason:
            lines.append(f"{indent}reason: {self.reason}")
        if brief:
            return "\n".join(lines)
        det = "unknown" if self.det is None else self.det.text()
        lines.append(f"{indent}rank {self.rank}, det {det}, omega {self.omega.text()}")
        for h in self.hypotheses:
            lines.append(f"{indent}  [{'x' if h.holds else ' '}] {h.name}")
        for b in self.branches:
            lines.append(f"{indent}branch: {b.assumption}")
            lines.append(b.report.text(indent + "    ", brief=True))
        for note in self.notes:
            lines.append(f"{indent}note: {note}")
        return "\n".join(lines)


def _pic_json(p: PicClass) -> dict:
    return {"coords": [str(c) for c in p.coords], "text": p.text()}


def hypotheses_for(space: SpaceDesc, sheaf_rank: int) -> tuple[tuple[Hypothesis, ...], tuple[str, ...]]:
    """Structural checklist for the non-orientable trivialization, plus audit notes."""
    n = space.base.n
    r = space.relative_dim if isinstance(space, ProjBundle) else 0
    parity = (r % 2 == 1 and n % 2 == 1) or r % 2 == 0
    hyps = (
        Hypothesis("rank equals dimension", sheaf_rank == space.dim),
        Hypothesis("base is a Grassmannian", True),
        Hypothesis(f"relative dimension r={r} even, or r and n={n} both odd", parity),
    )
    notes = ()
    if r == 0:
        notes = (
            "relative dimension 0: the space is treated as the degenerate bundle P(O) over the "
            "Grassmannian, as in the degree-4 del Pezzo count",
        )
    return hyps, notes


def _decide(orientable: bool, chow: Optional[int], sheaf_rank: int, hyps_ok: bool, field: FieldSpec) -> dict:
    if not orientable and hyps_ok:
        if chow is None:
            raise InsufficientData("the non-orientable branch needs the Chow degree")
        t = gw.cw_from_chow(chow)
        return {
            "verdict": NON_ORIENTABLE,
            "trivialized_class": t,
            "hyperbolic_presentation": gw.cw_as_hyperbolic(t, field),
            "reason": None if chow % 2 == 0 else "odd Chow degree: no hyperbolic presentation",
        }
    if orientable and sheaf_rank % 2 == 1:
        if chow is None:
            raise InsufficientData("the orientable odd-rank branch needs the Chow degree")
        if chow % 2:
            return {
                "verdict": UNDETERMINED,
                "reason": "odd Chow degree contradicts the vanishing Witt part of an odd-rank Euler class",
            }
        return {"verdict": ORIENTABLE_ODD, "gw_degree": gw.hyperbolic(chow // 2, field)}
    if orientable:
        reason = "orientable of even rank: the quadratic degree is not determined by the Chow degree"
    else:
        reason = "not orientable and the relative dimension parity condition fails"
    return {"verdict": UNDETERMINED, "reason": reason}


def euler_class(sheaf: SheafDesc, space: SpaceDesc, field: FieldSpec = DEFAULT_FIELD) -> EulerReport:
    if isinstance(sheaf, ExprSheaf):
        r = rank(sheaf.expr, space)
        if r != space.dim:
            raise DomainError(f"sheaf rank {r} differs from dim {space.dim}")
        chow: Optional[int] = degree_Y(top_chern(sheaf.expr, space))
        det: Optional[PicClass] = first_chern(sheaf.expr, space)
    else:
        r = sheaf.rank
        if r != space.dim:
            raise DomainError(f"sheaf rank {r} differs from dim {space.dim}")
        chow, det = sheaf.chow_degree, sheaf.det
        if det is not None and det.space != space:
            raise DomainError("opaque determinant lives on a different space")

    omega = canonical(space)
    hyps, notes = hypotheses_for(space, r)
    hyps_ok = all(h.holds for h in hyps)
    common = dict(
        rank=r, omega=omega, field=field, chow_degree=chow, hypotheses=hyps,
        space_text=space.text(), sheaf_text=sheaf.text(),
    )

    if det is not None:
        fields = _decide(rel_orientable(det, r, space), chow, r, hyps_ok, field)
        return EulerReport(det=det, notes=notes, **common, **fields)

    branches = []
    for orientable, label in ((False, "det not quadratically equivalent to omega"), (True, "det ~ omega (orientable)")):
        fields = _decide(orientable, chow, r, hyps_ok, field)
        branches.append(Branch(label, orientable, EulerReport(**common, **fields)))
    return EulerReport(
        verdict=UNDETERMINED,
        reason="determinant unknown: the verdict depends on orientability, see branches",
        branches=tuple(branches),
        notes=notes,
        **common,
    )


@dataclass(frozen=True)
class Scenario:
    name: str
    space: SpaceDesc
    sheaf: SheafDesc
    expected: dict
    notes: tuple[str, ...] = dc_field(default=())


def scenario(name: str) -> Scenario:
    if name == "cubic":
        return Scenario(
            "cubic",
            Grassmann.of(2, 4),
            ExprSheaf(Sym(3, Q)),
            {"verdict": UNDETERMINED, "chow_degree": 27},
            ("lines on a cubic surface; the quadratic split of 27 is not decided here",),
        )
    if name == "dp4":
        return Scenario(
            "dp4",
            Grassmann.of(2, 5),
            ExprSheaf(DirectSum(Sym(2, Q), Sym(2, Q))),
            {"verdict": NON_ORIENTABLE, "chow_degree": 16, "gw": "8h"},
            ("precondition (not enforced): the base field has at least 6 elements",),
        )
    if name == "dp2":
        return Scenario(
            "dp2",
            projective_bundle(2, 3, DirectSum(Trivial(1), Sym(2, Dual(Q)))),
            OpaqueSheaf(rank=hilbert_sheaf_rank(2, 2, 2), chow_degree=56),
            {"verdict": UNDETERMINED, "chow_degree": 56, "branches": ["28h", "28h"]},
            ("the rank-5 sheaf is opaque: rank and top Chern degree are supplied, its determinant is unknown",),
        )
    raise DomainError(f"unknown scenario {name!r}; choose from cubic, dp4, dp2")


SCENARIOS = ("cubic", "dp4", "dp2")


def run_scenario(name: str, field: FieldSpec = DEFAULT_FIELD) -> EulerReport:
    sc = scenario(name)
    rep = euler_class(sc.sheaf, sc.space, field)
    return replace(rep, notes=rep.notes + sc.notes)


def hilbert_sheaf_rank(n: int, d: int, m: int) -> int:
    """Rank of the pushed-forward sheaf: ``dim H^0(P^(n-1), O(d m)) = C(n - 1 + d m, n - 1)``."""
    if n < 2 or d < 1 or m < 0:
        raise DomainError("hilbert_sheaf_rank needs n >= 2, d >= 1, m >= 0")
    return comb(n - 1 + d * m, n - 1)
