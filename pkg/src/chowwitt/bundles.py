"""Abstract syntax for bundle constructions on a Grassmannian or a projective bundle over one.

The canonical text form (``render``) is the one read back by :mod:`chowwitt.parsing`:
``Q``, ``S``, ``O(a)``, ``OY(a)``, ``triv(r)``, ``dual(e)``, ``sym(d,e)``,
``tw(e,l)``, ``pull(e)`` and ``e1 + e2`` for direct sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import DomainError


@dataclass(frozen=True)
class TautQuotient:
    pass


@dataclass(frozen=True)
class TautSub:
    pass


@dataclass(frozen=True)
class LineOnGrass:
    a: int


@dataclass(frozen=True)
class LineOnFiber:
    a: int


@dataclass(frozen=True)
class Trivial:
    r: int

    def __post_init__(self) -> None:
        if self.r < 0:
            raise DomainError("trivial bundle needs rank >= 0")


@dataclass(frozen=True)
class Dual:
    e: "BundleExpr"


@dataclass(frozen=True)
class Sym:
    d: int
    e: "BundleExpr"

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DomainError("Sym degree must be >= 1")


@dataclass(frozen=True)
class DirectSum:
    e1: "BundleExpr"
    e2: "BundleExpr"


@dataclass(frozen=True)
class TensorLine:
    e: "BundleExpr"
    line: "BundleExpr"


@dataclass(frozen=True)
class Pullback:
    e: "BundleExpr"

    def __post_init__(self) -> None:
        if uses_fiber(self.e):
            raise DomainError("pull() wraps base-space expressions only")


BundleExpr = Union[
    TautQuotient, TautSub, LineOnGrass, LineOnFiber, Trivial, Dual, Sym, DirectSum, TensorLine, Pullback
]

Q = TautQuotient()
S = TautSub()


def direct_sum(*parts: BundleExpr) -> BundleExpr:
    """Left-nested direct sum, the canonical shape produced by the parser."""
    if not parts:
        return Trivial(0)
    out = parts[0]
    for p in parts[1:]:
        out = DirectSum(out, p)
    return out


def uses_fiber(e: BundleExpr) -> bool:
    if isinstance(e, LineOnFiber):
        return True
    if isinstance(e, (Dual, Sym, Pullback)):
        return uses_fiber(e.e)
    if isinstance(e, DirectSum):
        return uses_fiber(e.e1) or uses_fiber(e.e2)
    if isinstance(e, TensorLine):
        return uses_fiber(e.e) or uses_fiber(e.line)
    return False


def uses_pullback(e: BundleExpr) -> bool:
    if isinstance(e, Pullback):
        return True
    if isinstance(e, (Dual, Sym)):
        return uses_pullback(e.e)
    if isinstance(e, DirectSum):
        return uses_pullback(e.e1) or uses_pullback(e.e2)
    if isinstance(e, TensorLine):
        return uses_pullback(e.e) or uses_pullback(e.line)
    return False


def is_line_syntax(e: BundleExpr) -> bool:
    """True when ``e`` is a line bundle whatever the ambient space."""
    if isinstance(e, (LineOnGrass, LineOnFiber)):
        return True
    if isinstance(e, Trivial):
        return e.r == 1
    if isinstance(e, (Dual, Sym, Pullback)):
        return is_line_syntax(e.e)
    if isinstance(e, TensorLine):
        return is_line_syntax(e.e) and is_line_syntax(e.line)
    return False


def render(e: BundleExpr) -> str:
    if isinstance(e, TautQuotient):
        return "Q"
    if isinstance(e, TautSub):
        return "S"
    if isinstance(e, LineOnGrass):
        return f"O({e.a})"
    if isinstance(e, LineOnFiber):
        return f"OY({e.a})"
    if isinstance(e, Trivial):
        return f"triv({e.r})"
    if isinstance(e, Dual):
        return f"dual({render(e.e)})"
    if isinstance(e, Sym):
        return f"sym({e.d},{render(e.e)})"
    if isinstance(e, DirectSum):
        # the grammar has no grouping parentheses, so sums are rendered flat
        return f"{render(e.e1)} + {render(e.e2)}"
    if isinstance(e, TensorLine):
        return f"tw({render(e.e)},{render(e.line)})"
    if isinstance(e, Pullback):
        return f"pull({render(e.e)})"
    raise TypeError(f"not a bundle expression: {e!r}")
