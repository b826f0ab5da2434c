"""Congruence checks for schemes of real plane curves of degree 2k.

Each check returns a :class:`CheckResult` that is explicitly applicable or
not, with the reason or the expanded congruence in ``details``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .arf import R_MINUS, ArfValue, H1Class, arf_simple, gamma_candidates, is_proper_triple
from .schemes import (
    Scheme,
    apply_signs,
    canonicalize,
    is_even_curve,
    is_odd_curve,
    reduce_weak,
    semi_orientations,
    semiorientation_representative,
    stats,
    unsigned_forests,
)

MAX_SEARCH_OVALS = 20

PROHIBITED = "prohibited"
CONSISTENT = "consistent"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class CheckResult:
    name: str
    applicable: bool
    passed: bool | None
    details: str

    def __post_init__(self) -> None:
        if self.applicable != (self.passed is not None):
            raise ValueError("passed must be set exactly when the check applies")

    @classmethod
    def skip(cls, name: str, reason: str) -> CheckResult:
        return cls(name, False, None, reason)

    @classmethod
    def verdict(cls, name: str, ok: bool, details: str) -> CheckResult:
        return cls(name, True, bool(ok), details)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "passed": self.passed,
            "details": self.details,
        }


@dataclass(frozen=True)
class VerdictReport:
    degree: int
    scheme: str
    results: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> str:
        applied = [r for r in self.results if r.applicable]
        if not applied:
            return NOT_APPLICABLE
        if any(not r.passed for r in applied):
            return PROHIBITED
        return CONSISTENT

    def result(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "scheme": self.scheme,
            "results": [r.to_dict() for r in self.results],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def m_curve_count(k: int) -> int:
    """``1 + C(2k - 1, 2)``."""
    return 1 + (2 * k - 1) * (2 * k - 2) // 2


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")


def _fmt(x: Fraction | int) -> str:
    return str(Fraction(x))


def check_m_curve(s: Scheme, k: int) -> CheckResult:
    _check_k(k)
    st = stats(s)
    total = st.components + st.double_points
    want = m_curve_count(k)
    return CheckResult.verdict(
        "m-curve",
        total == want,
        f"components + double points = {st.components} + {st.double_points} = {total}; "
        f"1 + C({2 * k - 1}, 2) = {want}",
    )


def _nonsingular_reason(s: Scheme) -> str | None:
    if s.figure_eight_count:
        return f"scheme has {s.figure_eight_count} figure-eight(s); needs a nonsingular curve"
    return None


def check_gudkov(s: Scheme, k: int) -> CheckResult:
    _check_k(k)
    if reason := _nonsingular_reason(s):
        return CheckResult.skip("gudkov", reason)
    st = stats(s)
    lhs = st.p - st.n
    return CheckResult.verdict(
        "gudkov",
        (lhs - k * k) % 8 == 0,
        f"p - n = {st.p} - {st.n} = {lhs} = {lhs % 8} (mod 8); k^2 = {k * k} = {k * k % 8} (mod 8)",
    )


def check_harnack(s: Scheme, k: int) -> CheckResult:
    _check_k(k)
    if reason := _nonsingular_reason(s):
        return CheckResult.skip("harnack", reason)
    st = stats(s)
    want = 2 * k * k - 3 * k + 2
    return CheckResult.verdict(
        "harnack",
        st.p + st.n == want,
        f"p + n = {st.p} + {st.n} = {st.p + st.n}; 2k^2 - 3k + 2 = {want}",
    )


def check_rokhlin_orientation(s: Scheme, k: int) -> CheckResult:
    _check_k(k)
    if reason := _nonsingular_reason(s):
        return CheckResult.skip("rokhlin-orientation", reason)
    if not s.is_signed():
        return CheckResult.skip("rokhlin-orientation", "scheme has unsigned ovals")
    st = stats(s)
    want = (k - 1) * (k - 2) // 2
    return CheckResult.verdict(
        "rokhlin-orientation",
        st.pi_diff() == want,
        f"Pi+ - Pi- = {st.pi_plus} - {st.pi_minus} = {st.pi_diff()}; (k-1)(k-2)/2 = {want}",
    )


def check_fiedler(s: Scheme, k: int) -> CheckResult:
    _check_k(k)
    if reason := _nonsingular_reason(s):
        return CheckResult.skip("fiedler", reason)
    st = stats(s)
    lhs = st.p - st.n
    if k % 2 == 0:
        if not is_odd_curve(s):
            return CheckResult.skip("fiedler", "k even and the scheme is not an odd curve")
        want = -k * k
    else:
        if not is_even_curve(s):
            return CheckResult.skip("fiedler", "k odd and the scheme is not an even curve")
        want = 1
    return CheckResult.verdict(
        "fiedler",
        (lhs - want) % 16 == 0,
        f"p - n = {lhs} = {lhs % 16} (mod 16); required {want} = {want % 16} (mod 16)",
    )


def check_theorem_simple(s: Scheme, k: int) -> CheckResult:
    """Congruence for nodal M-curves weakly equivalent to a simple curve.

    Empty figure-eights are deleted first. The M-curve count itself is a
    separate check on the unreduced scheme.
    """
    _check_k(k)
    name = "theorem-simple"
    c = reduce_weak(s)
    if not c.is_signed():
        return CheckResult.skip(name, "scheme has unsigned ovals")
    odd, even = is_odd_curve(c), is_even_curve(c)
    if k % 2 == 0 and even:
        return CheckResult.verdict(name, False, "k even but the curve is an even simple curve")
    if k % 2 == 1 and odd:
        return CheckResult.verdict(name, False, "k odd but the curve is an odd simple curve")
    st = stats(c)
    if k % 2 == 0:
        if not odd:
            return CheckResult.skip(name, "k even and the reduced scheme is not an odd curve")
        m = st.pi_diff() - st.p
        half = k * k // 2
        return CheckResult.verdict(
            name,
            (m - half) % 8 == 0 or (m - half + 2) % 8 == 0,
            f"Pi+ - Pi- - p = {m} = {m % 8} (mod 8); "
            f"required k^2/2 = {half % 8} or k^2/2 - 2 = {(half - 2) % 8} (mod 8)",
        )
    if not even:
        return CheckResult.skip(name, "k odd and the reduced scheme is not an even curve")
    m = st.pi_diff() - st.n
    want = (k * k - 1) // 2
    return CheckResult.verdict(
        name,
        (m - want) % 8 == 0,
        f"Pi+ - Pi- - n = {m} = {m % 8} (mod 8); required (k^2-1)/2 = {want % 8} (mod 8)",
    )


def check_theorem_main(v: ArfValue, k: int) -> CheckResult:
    """``Arf(A, kg, r_{-1/8}) = k^2/2 (mod 8)`` for a value computed at that triple."""
    _check_k(k)
    want = ArfValue.of(Fraction(k * k, 2))
    return CheckResult.verdict(
        "theorem-main",
        v == want,
        f"Arf(kg, r=-1/8) = {_fmt(v.value)} (mod 8); required k^2/2 = {_fmt(want.value)} (mod 8)",
    )


def simple_arf_at_kg(s: Scheme, k: int) -> ArfValue | None:
    """``Arf(C, kg, r_{-1/8})`` of the reduced scheme, or None when undefined."""
    c = reduce_weak(s)
    if not c.is_signed():
        return None
    gamma = H1Class(k)
    if gamma not in gamma_candidates(c) or not is_proper_triple(c, gamma, R_MINUS):
        return None
    if not (is_odd_curve(c) or is_even_curve(c)):
        return None
    return arf_simple(c, gamma, R_MINUS)


def _theorem_main_for_scheme(s: Scheme, k: int) -> CheckResult:
    c = reduce_weak(s)
    if not c.is_signed():
        return CheckResult.skip("theorem-main", "scheme has unsigned ovals")
    v = simple_arf_at_kg(s, k)
    if v is None:
        return CheckResult.skip(
            "theorem-main", f"(C, {k % 4}g, r=-1/8) is not a proper simple-curve triple"
        )
    return check_theorem_main(v, k)


def full_verdict(s: Scheme, k: int) -> VerdictReport:
    """Run every check that applies to ``s`` as an M-curve of degree 2k.

    Congruences whose hypothesis includes being an M-curve are reported
    as not applicable when the component count is wrong; the failed count
    already prohibits the scheme.
    """
    _check_k(k)
    m_curve = check_m_curve(s, k)
    results = [m_curve]
    needs_m = ["gudkov", "rokhlin-orientation", "fiedler", "theorem-simple", "theorem-main"]
    checks = [
        ("gudkov", lambda: check_gudkov(s, k)),
        ("harnack", lambda: check_harnack(s, k)),
        ("rokhlin-orientation", lambda: check_rokhlin_orientation(s, k)),
        ("fiedler", lambda: check_fiedler(s, k)),
        ("theorem-simple", lambda: check_theorem_simple(s, k)),
        ("theorem-main", lambda: _theorem_main_for_scheme(s, k)),
    ]
    for name, run in checks:
        if name in needs_m and not m_curve.passed:
            results.append(CheckResult.skip(name, "not an M-curve of this degree"))
        else:
            results.append(run())
    return VerdictReport(2 * k, str(canonicalize(s)), tuple(results))


def enumerate_orientations(s: Scheme, k: int) -> list[tuple[Scheme, VerdictReport]]:
    """Verdict for one representative of each semi-orientation class of ``s``."""
    if s.oval_count > MAX_SEARCH_OVALS:
        raise ValueError(
            f"orientation search is capped at {MAX_SEARCH_OVALS} ovals, scheme has {s.oval_count}"
        )
    if not s.is_unsigned():
        raise ValueError("orientation search expects an unsigned scheme")
    return [(rep, full_verdict(rep, k)) for rep in semi_orientations(s)]


def _sign_table(n: int) -> np.ndarray:
    """All sign vectors of length n with the first entry +1, as rows."""
    codes = np.arange(1 << max(n - 1, 0), dtype=np.int64)
    bits = (codes[:, None] >> np.arange(max(n - 1, 0))) & 1
    rest = 1 - 2 * bits
    return np.hstack([np.ones((len(codes), min(n, 1)), dtype=np.int64), rest])[:, :n]


def m_schemes(k: int) -> Iterator[Scheme]:
    """Signed nonsingular M-schemes of degree 2k obeying Harnack, Gudkov and Rokhlin.

    One representative per semi-orientation class, grouped by underlying
    shape and sorted within each shape.
    """
    _check_k(k)
    for shape in unsigned_forests(2 * k * k - 3 * k + 2):
        yield from m_schemes_for_shape(shape, k)


def m_schemes_for_shape(shape: Scheme, k: int) -> list[Scheme]:
    """Signings of an unsigned nonsingular shape that pass Harnack, Gudkov and Rokhlin.

    The pair count is screened in bulk with numpy before any scheme is built.
    """
    _check_k(k)
    if not shape.is_unsigned() or shape.figure_eight_count:
        raise ValueError("expected an unsigned nonsingular scheme")
    total = shape.oval_count
    st = stats(shape)
    if total != 2 * k * k - 3 * k + 2 or (st.p - st.n - k * k) % 8:
        return []
    want = (k - 1) * (k - 2) // 2
    pairs = []
    # preorder: the ancestors of oval i are the open ovals on the stack
    stack: list[tuple[int, int]] = []
    for i, (_, depth, _) in enumerate(shape.ovals):
        del stack[depth:]
        pairs.extend((j, i) for _, j in stack)
        stack.append((depth, i))
    signs = _sign_table(total)
    if pairs:
        a, b = np.array(pairs).T
        # pi_plus - pi_minus: differing signs count +1, equal signs -1
        diff = -(signs[:, a] * signs[:, b]).sum(axis=1)
    else:
        diff = np.zeros(len(signs), dtype=np.int64)
    seen: dict[str, Scheme] = {}
    for row in signs[diff == want]:
        rep = semiorientation_representative(apply_signs(shape, [int(x) for x in row]))
        seen.setdefault(str(rep), rep)
    return [seen[key] for key in sorted(seen)]
