"""Arf invariants of links in the tangent circle bundle of RP^2.

H_1 of the bundle is cyclic of order 4, generated by the class ``g`` of the
lift of a line; an oval represents ``2g`` and the linking form is
``l(a g, b g) = -ab/4 (mod 1)``. Arf values live in (1/4)Z / 8Z and are
stored as integers of quarter units modulo 32.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction

from .forms import FormError, QuadraticForm, brown, is_proper_form
from .schemes import (
    Scheme,
    UnsignedSchemeError,
    _require_nonsingular,
    is_even_curve,
    is_odd_curve,
    link_counts,
    mu_simple,
    stats,
)


class ImproperTripleError(ValueError):
    """``(L, gamma, r)`` is not proper, so the Arf invariant is undefined."""


@dataclass(frozen=True)
class H1Class:
    """``a * g`` in H_1 = Z/4."""

    a: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", self.a % 4)

    def __add__(self, other: H1Class | int) -> H1Class:
        b = other.a if isinstance(other, H1Class) else other
        return H1Class(self.a + b)

    def __rmul__(self, k: int) -> H1Class:
        return H1Class(k * self.a)

    def __neg__(self) -> H1Class:
        return H1Class(-self.a)

    def __str__(self) -> str:
        return f"{self.a}g"


def linking(x: H1Class, y: H1Class) -> Fraction:
    """Linking form in [0, 1)."""
    return Fraction(-x.a * y.a, 4) % 1


class Refinement(enum.Enum):
    MINUS_EIGHTH = Fraction(-1, 8)
    THREE_EIGHTHS = Fraction(3, 8)

    @property
    def label(self) -> str:
        return "-1/8" if self is Refinement.MINUS_EIGHTH else "3/8"

    @classmethod
    def from_label(cls, label: str) -> Refinement:
        for r in cls:
            if r.label == label:
                return r
        raise ValueError(f"unknown refinement {label!r}; expected '-1/8' or '3/8'")

    def __call__(self, x: H1Class) -> Fraction:
        return (x.a * x.a * self.value) % 1

    def other(self) -> Refinement:
        return (
            Refinement.THREE_EIGHTHS
            if self is Refinement.MINUS_EIGHTH
            else Refinement.MINUS_EIGHTH
        )


R_MINUS = Refinement.MINUS_EIGHTH
R_THREE = Refinement.THREE_EIGHTHS


@dataclass(frozen=True, order=True)
class ArfValue:
    q32: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "q32", self.q32 % 32)

    @classmethod
    def of(cls, value: Fraction | int) -> ArfValue:
        quarters = Fraction(value) * 4
        if quarters.denominator != 1:
            raise ValueError(f"{value} is not a multiple of 1/4")
        return cls(int(quarters))

    @property
    def value(self) -> Fraction:
        """Representative in [0, 8)."""
        return Fraction(self.q32, 4)

    def __add__(self, other: ArfValue | int | Fraction) -> ArfValue:
        other = other if isinstance(other, ArfValue) else ArfValue.of(other)
        return ArfValue(self.q32 + other.q32)

    def __sub__(self, other: ArfValue | int | Fraction) -> ArfValue:
        other = other if isinstance(other, ArfValue) else ArfValue.of(other)
        return ArfValue(self.q32 - other.q32)

    def __neg__(self) -> ArfValue:
        return ArfValue(-self.q32)

    def congruent(self, value: Fraction | int) -> bool:
        return self == ArfValue.of(value)

    def frac(self) -> Fraction:
        return Fraction(self.q32 % 4, 4)

    def __str__(self) -> str:
        return f"{self.value} (mod 8)"


# ---------------------------------------------------------------------------
# simple curves


def boundary_class(s: Scheme) -> H1Class:
    _require_nonsingular(s)
    return H1Class(2 * s.oval_count)


def gamma_candidates(s: Scheme) -> list[H1Class]:
    """All gamma with ``2 gamma = [C]``."""
    target = boundary_class(s)
    return [H1Class(a) for a in range(4) if H1Class(2 * a) == target]


def oval_linking_numbers(s: Scheme) -> list[int]:
    """``lk(C_i, C - C_i)`` for each oval in preorder.

    Linked ovals with equal planar direction link +1, opposite -1,
    unlinked 0.
    """
    _require_nonsingular(s)
    if not s.is_signed():
        raise UnsignedSchemeError(f"scheme {s} has unsigned ovals")
    lk: list[int] = []

    def visit(node, ancestors: list[tuple[int, int]]) -> None:
        i = len(lk)
        lk.append(0)
        for j, sign in ancestors:
            v = 1 if sign == node.sign else -1
            lk[i] += v
            lk[j] += v
        for child in node.children:
            visit(child, ancestors + [(i, node.sign)])

    for root in s.roots:
        visit(root, [])
    return lk


def _proper_rhs(gamma: H1Class, r: Refinement) -> int:
    oval = H1Class(2)
    rhs = (2 * linking(oval, gamma) - 2 * r(oval)) % 2
    if rhs.denominator != 1:
        raise AssertionError("properness condition is not integral")
    return int(rhs)


# depends on gamma only through its parity
_PROPER_RHS = {(a, r): _proper_rhs(H1Class(a), r) for a in (0, 1) for r in Refinement}


def is_proper_triple(s: Scheme, gamma: H1Class, r: Refinement) -> bool:
    if gamma not in gamma_candidates(s):
        raise ValueError(f"{gamma} is not a half of the class of {s}")
    _require_nonsingular(s)
    if not s.is_signed():
        raise UnsignedSchemeError(f"scheme {s} has unsigned ovals")
    rhs = _PROPER_RHS[gamma.a % 2, r]
    # each linked oval contributes +-1, so lk has the parity of the link count
    return all((c - rhs) % 2 == 0 for c in link_counts(s))


def arf_simple(s: Scheme, gamma: H1Class, r: Refinement) -> ArfValue:
    """Closed-form Arf invariant of a proper odd or even curve."""
    if not is_proper_triple(s, gamma, r):
        raise ImproperTripleError(f"({s}, {gamma}, r={r.label}) is not proper")
    st = stats(s, oriented=True)
    if is_odd_curve(s):
        m = st.pi_diff() - st.p
        if (gamma.a - m) % 4 == 0:
            return ArfValue.of(m)
        return ArfValue.of(m + 2 if r is R_MINUS else m - 2)
    base = Fraction(st.pi_diff() - st.n)
    return ArfValue.of(base + Fraction(1, 2) if r is R_MINUS else base - Fraction(3, 2))


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class SurfaceData:
    """A spanning surface described by its reduced form, mu and gamma."""

    form: QuadraticForm
    mu_quarters: int
    gamma: H1Class
    r: Refinement
    boundary: H1Class | None = None

    def __post_init__(self) -> None:
        if not is_proper_form(self.form):
            raise FormError("surface form is not proper")
        if self.boundary is not None:
            if H1Class(2 * self.gamma.a) != self.boundary:
                raise ValueError(f"2*{self.gamma} is not the boundary class {self.boundary}")
            if Fraction(self.mu_quarters, 4) % 1 != linking(self.boundary, self.gamma):
                raise ValueError("mu is not congruent to l([L], gamma) mod 1")

    @property
    def mu(self) -> Fraction:
        return Fraction(self.mu_quarters, 4)

    @classmethod
    def from_dict(cls, data: dict) -> SurfaceData:
        try:
            form = QuadraticForm.from_dict(data["form"])
            mu = data["mu_quarters"]
            gamma = data["gamma"]
            r = Refinement.from_label(data["r"])
        except KeyError as exc:
            raise FormError(f"surface object is missing key {exc.args[0]!r}") from None
        if not isinstance(mu, int) or isinstance(mu, bool):
            raise FormError("mu_quarters must be an integer")
        if gamma not in (0, 1, 2, 3) or isinstance(gamma, bool):
            raise FormError("gamma must be one of 0, 1, 2, 3")
        boundary = data.get("boundary")
        return cls(form, mu, H1Class(gamma), r, None if boundary is None else H1Class(boundary))

    def to_dict(self) -> dict:
        out = {
            "form": self.form.to_dict(),
            "mu_quarters": self.mu_quarters,
            "gamma": self.gamma.a,
            "r": self.r.label,
        }
        if self.boundary is not None:
            out["boundary"] = self.boundary.a
        return out


def load_surface(text: str) -> SurfaceData:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormError("surface file must contain a JSON object")
    return SurfaceData.from_dict(data)


def arf_from_surface(data: SurfaceData) -> ArfValue:
    return ArfValue(4 * brown(data.form) - data.mu_quarters)


def zero_fiber_q(r: Refinement) -> int:
    """q on the core of a Moebius band added at an index -2 zero: ``-1 - 4 r(2g)``."""
    return _to_z4(-1 - 4 * r(H1Class(2)))


def line_q(r: Refinement) -> int:
    """q on an orientation-reversing curve (lift of a line): ``1/2 - 4 r(g)``."""
    return _to_z4(Fraction(1, 2) - 4 * r(H1Class(1)))


def _to_z4(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError(f"{x} is not an integer")
    return int(x) % 4


def surface_for_simple(s: Scheme, r: Refinement) -> SurfaceData:
    """Spanning surface over B+ (odd curves) or B- (even curves).

    A vector field tangent to the boundary with zeros of index -2 is
    completed by Moebius bands over the zeros; the even case also carries
    the one-sided curve of the outer region.
    """
    st = stats(s, oriented=True)
    mu = mu_simple(s)
    if is_odd_curve(s):
        zeros = (st.n - st.p) // 2
        form = QuadraticForm.diagonal([zero_fiber_q(r)] * zeros)
        gamma = H1Class(st.pi_diff() - st.p)
    elif is_even_curve(s):
        zeros = (st.p - st.n - 1) // 2
        form = QuadraticForm.diagonal([zero_fiber_q(r)] * zeros + [line_q(r)])
        # either of +-g works; the closed form does not depend on the choice
        gamma = H1Class(1)
    else:
        raise ImproperTripleError(f"{s} is neither an odd nor an even curve")
    return SurfaceData(form, mu, gamma, r, boundary=boundary_class(s))


def change_r(v: ArfValue) -> ArfValue:
    """Arf at ``(gamma + 2g, r_{3/8})`` from Arf at ``(gamma, r_{-1/8})``."""
    return v - 2


def empty_link_arf(r: Refinement) -> ArfValue:
    """Arf of the empty link at ``gamma = 2g``."""
    return ArfValue.of(2 if r is R_MINUS else -2)


def x2k_reference(k: int, r: Refinement) -> tuple[H1Class, ArfValue]:
    """Proper gamma and Arf value of 2k lines in general position."""
    if k < 1:
        raise ValueError("k must be positive")
    value = ArfValue.of(Fraction(k * k, 2))
    if r is R_MINUS:
        return H1Class(k), value
    return H1Class(k + 2), value - 2


def x2k_is_proper(k: int, gamma: H1Class, r: Refinement) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    return gamma == x2k_reference(k, r)[0]
