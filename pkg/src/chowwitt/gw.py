"""The subring of the Grothendieck-Witt ring spanned by <1> and <-1>, per field type.

Elements are ``m<1> + n<-1>``.  Each field kind collapses this lattice differently:

* ``quad-closed``: every unit is a square, so ``<-1> = <1>``.
* ``real`` (real closed) and ``universal``: free on ``(m, n)``.
* ``finite-square`` (odd finite field, -1 a square): ``<-1> = <1>``.
* ``finite-nonsquare`` (odd finite field, -1 not a square): ``2<-1> = 2<1>``.

The hyperbolic form is ``h = <1> + <-1>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import DomainError, InvariantError

QUAD_CLOSED = "quad-closed"
REAL_CLOSED = "real"
FINITE_ODD = "finite"
UNIVERSAL = "universal"


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    minus_one_square: Optional[bool] = None
    # square class of 2 in an odd finite field; None means "either"
    two_square: Optional[bool] = None

    def __post_init__(self) -> None:
        if self.kind not in (QUAD_CLOSED, REAL_CLOSED, FINITE_ODD, UNIVERSAL):
            raise DomainError(f"unknown field kind {self.kind!r}")
        if (self.kind == FINITE_ODD) != (self.minus_one_square is not None):
            raise DomainError("minus_one_square is required for, and only for, finite fields")

    @property
    def name(self) -> str:
        if self.kind == FINITE_ODD:
            return "finite-square" if self.minus_one_square else "finite-nonsquare"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        try:
            return FIELDS[text.strip().lower()]
        except KeyError:
            raise DomainError(f"unknown field {text!r}; choose from {', '.join(FIELDS)}") from None


FIELDS = {
    UNIVERSAL: FieldSpec(UNIVERSAL),
    REAL_CLOSED: FieldSpec(REAL_CLOSED),
    QUAD_CLOSED: FieldSpec(QUAD_CLOSED),
    "finite-square": FieldSpec(FINITE_ODD, minus_one_square=True),
    "finite-nonsquare": FieldSpec(FINITE_ODD, minus_one_square=False),
}
DEFAULT_FIELD = FIELDS[UNIVERSAL]


def _normalize(m: int, n: int, field: FieldSpec) -> tuple[int, int]:
    if field.kind == QUAD_CLOSED or (field.kind == FINITE_ODD and field.minus_one_square):
        return m + n, 0
    if field.kind == FINITE_ODD:
        q, r = divmod(n, 2)
        return m + 2 * q, r
    return m, n


@dataclass(frozen=True)
class GWElem:
    """``m<1> + n<-1>`` in normal form for ``field``; build through :func:`gw`."""

    m: int
    n: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if _normalize(self.m, self.n, self.field) != (self.m, self.n):
            raise InvariantError(f"({self.m}, {self.n}) is not in normal form over {self.field.name}")

    def __add__(self, other: "GWElem") -> "GWElem":
        return gw_add(self, other)

    def __mul__(self, other: Union["GWElem", int]) -> "GWElem":
        if isinstance(other, int):
            return gw(self.m * other, self.n * other, self.field)
        return gw_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self) -> "GWElem":
        return gw(-self.m, -self.n, self.field)

    def __sub__(self, other: "GWElem") -> "GWElem":
        return gw_add(self, -other)

    def render(self) -> str:
        return render(self)

    def to_json(self) -> dict:
        return {"ones": str(self.m), "minus_ones": str(self.n), "rendered": render(self)}


def gw(m: int, n: int = 0, field: FieldSpec = DEFAULT_FIELD) -> GWElem:
    m, n = _normalize(int(m), int(n), field)
    return GWElem(m, n, field)


def one(field: FieldSpec = DEFAULT_FIELD) -> GWElem:
    return gw(1, 0, field)


def minus_one(field: FieldSpec = DEFAULT_FIELD) -> GWElem:
    return gw(0, 1, field)


def hyperbolic_form(field: FieldSpec = DEFAULT_FIELD) -> GWElem:
    return gw(1, 1, field)


def _same_field(a: GWElem, b: GWElem) -> None:
    if a.field != b.field:
        raise DomainError(f"field mismatch: {a.field.name} vs {b.field.name}")


def gw_add(a: GWElem, b: GWElem) -> GWElem:
    _same_field(a, b)
    return gw(a.m + b.m, a.n + b.n, a.field)


def gw_mul(a: GWElem, b: GWElem) -> GWElem:
    # <-1><-1> = <1>
    _same_field(a, b)
    return gw(a.m * b.m + a.n * b.n, a.m * b.n + a.n * b.m, a.field)


def rank_map(a: GWElem) -> int:
    return a.m + a.n


@dataclass(frozen=True)
class WittElem:
    """Class in ``W = GW/(h)``.

    ``value`` is the signature for ``real``/``universal``, the rank mod 2 for
    ``quad-closed``, and ``(rank mod 2, signed discriminant bit)`` for finite fields.
    """

    field: FieldSpec
    value: Union[int, tuple[int, int]]

    def is_zero(self) -> bool:
        return self.value in (0, (0, 0))


def witt_image(a: GWElem) -> WittElem:
    f = a.field
    if f.kind in (REAL_CLOSED, UNIVERSAL):
        return WittElem(f, a.m - a.n)
    if f.kind == QUAD_CLOSED:
        return WittElem(f, (a.m + a.n) % 2)
    if f.minus_one_square:
        return WittElem(f, ((a.m + a.n) % 2, 0))
    # W of such a field is Z/4 generated by <1>, with <-1> = -<1>
    v = (a.m - a.n) % 4
    return WittElem(f, (v % 2, v // 2))


def signature(a: GWElem) -> int:
    if a.field.kind not in (REAL_CLOSED, UNIVERSAL):
        raise DomainError("signature is only defined over real closed or universal fields")
    return a.m - a.n


def hyperbolic(n: int, field: FieldSpec = DEFAULT_FIELD) -> GWElem:
    return gw(n, n, field)


def forgetful(a: GWElem) -> int:
    return rank_map(a)


def square_class_of_two(field: FieldSpec) -> list[GWElem]:
    """Candidates for ``<2>`` inside the modeled subring."""
    if field.kind in (QUAD_CLOSED, REAL_CLOSED):
        return [one(field)]
    if field.kind == FINITE_ODD:
        if field.two_square is None:
            return [one(field), minus_one(field)]
        return [one(field) if field.two_square else minus_one(field)]
    raise DomainError("<2> is not expressible over the universal field kind")


def render(a: GWElem) -> str:
    """``a + b h`` with the <-1> part pulled into ``h`` (``15<1> + 12<-1>`` -> ``3 + 12h``)."""
    f = a.field
    if f.kind in (REAL_CLOSED, UNIVERSAL):
        const, hs = a.m - a.n, a.n
    elif f.kind == QUAD_CLOSED or f.minus_one_square:
        # h = 2
        hs, const = divmod(a.m, 2)
    else:
        # 2h = 4<1>; (m, 1) = (m - 1) + h
        hs, const = a.n, a.m - a.n
        q, const = divmod(const, 4)
        hs += 2 * q
    return _render_pair(const, hs)


def _render_pair(const: int, hs: int) -> str:
    if not hs:
        return str(const)
    hpart = "h" if abs(hs) == 1 else f"{abs(hs)}h"
    if not const:
        return hpart if hs > 0 else f"-{hpart}"
    return f"{const} {'+' if hs > 0 else '-'} {hpart}"


@dataclass(frozen=True)
class TrivializedCWClass:
    """A top Chow-Witt class in a non-orientable twist: a Chow degree and a mod-2 Witt part."""

    chow: int
    witt_part: int

    def __post_init__(self) -> None:
        if self.witt_part not in (0, 1):
            raise InvariantError("witt_part lives in Z/2")
        if self.witt_part != self.chow % 2:
            raise InvariantError(
                f"fiber-product compatibility fails: witt part {self.witt_part} vs chow {self.chow} mod 2"
            )


def cw_from_chow(chow: int) -> TrivializedCWClass:
    return TrivializedCWClass(chow, chow % 2)


def cw_as_hyperbolic(c: TrivializedCWClass, field: FieldSpec = DEFAULT_FIELD) -> Optional[GWElem]:
    """``(N/2) h`` when the Chow degree ``N`` is even, otherwise ``None``."""
    if c.chow % 2:
        return None
    return hyperbolic(c.chow // 2, field)
