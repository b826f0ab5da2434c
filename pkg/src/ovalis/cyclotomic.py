"""Exact arithmetic in the cyclotomic ring Z[zeta_8]."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Cyc8:
    """``c0 + c1*z + c2*z**2 + c3*z**3`` where ``z`` is a primitive 8th root of unity.

    Since ``z**4 == -1`` every element has a unique representation with
    four integer coordinates. ``i`` is ``z**2``.
    """

    c0: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0

    @classmethod
    def zeta(cls, power: int = 1) -> Cyc8:
        power %= 8
        coeffs = [0, 0, 0, 0]
        coeffs[power % 4] = 1 if power < 4 else -1
        return cls(*coeffs)

    @classmethod
    def gaussian(cls, re: int, im: int) -> Cyc8:
        return cls(re, 0, im, 0)

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.c0, self.c1, self.c2, self.c3)

    def _coerce(self, other) -> Cyc8:
        if isinstance(other, Cyc8):
            return other
        if isinstance(other, int):
            return Cyc8(other)
        return NotImplemented

    def __add__(self, other) -> Cyc8:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyc8(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyc8:
        return Cyc8(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other) -> Cyc8:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Cyc8:
        return (-self) + other

    def __mul__(self, other) -> Cyc8:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = [0] * 4
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k < 4:
                    out[k] += a * b
                else:
                    out[k - 4] -= a * b
        return Cyc8(*out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Cyc8:
        if exponent < 0:
            raise ValueError("negative powers are not defined in Z[zeta_8]")
        result = Cyc8(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> Cyc8:
        # z -> z**7 = -z**3, z**2 -> -z**2, z**3 -> z**5 = -z
        return Cyc8(self.c0, -self.c3, -self.c2, -self.c1)

    def norm_squared(self) -> Cyc8:
        """``self * conj(self)``, which lies in Z[sqrt 2]."""
        return self * self.conjugate()

    def is_gaussian(self) -> bool:
        return self.c1 == 0 and self.c3 == 0

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = ("", "z", "z^2", "z^3")[power]
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


ZETA = Cyc8.zeta()
I = Cyc8.zeta(2)
# (z - z^3)^2 == 2
SQRT2 = Cyc8(0, 1, 0, -1)
