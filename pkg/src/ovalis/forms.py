"""Z/4-valued quadratic refinements of symmetric GF(2) pairings.

Vectors are handled internally as int bitsets (bit ``i`` is the coefficient
of the ``i``-th basis element); the public functions also accept plain
0/1 sequences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .cyclotomic import SQRT2, ZETA, Cyc8

GAUSS_SUM_MAX_DIM = 24

Gf2Vector = Union[int, Sequence[int]]


class FormError(ValueError):
    """Invalid quadratic form data."""


class ImproperFormError(ValueError):
    """The form does not vanish on the radical of its pairing."""


@dataclass(frozen=True)
class QuadraticForm:
    dim: int
    pairing: tuple[tuple[int, ...], ...]
    q: tuple[int, ...]
    _rows: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pairing = tuple(tuple(int(x) for x in row) for row in self.pairing)
        q = tuple(int(x) for x in self.q)
        n = self.dim
        if n < 0:
            raise FormError(f"dimension must be nonnegative, got {n}")
        if len(pairing) != n or any(len(row) != n for row in pairing):
            raise FormError(f"pairing must be a {n}x{n} matrix")
        if len(q) != n:
            raise FormError(f"expected {n} q-values, got {len(q)}")
        for i in range(n):
            for j in range(n):
                if pairing[i][j] not in (0, 1):
                    raise FormError(f"pairing[{i}][{j}] = {pairing[i][j]} is not in GF(2)")
                if pairing[i][j] != pairing[j][i]:
                    raise FormError(f"pairing is not symmetric at ({i}, {j})")
        for i, v in enumerate(q):
            if not 0 <= v < 4:
                raise FormError(f"q[{i}] = {v} is not in Z/4 (expected 0..3)")
            if v % 2 != pairing[i][i]:
                raise FormError(
                    f"q[{i}] = {v} has the wrong parity for self-pairing {pairing[i][i]}"
                )
        rows = tuple(sum(bit << j for j, bit in enumerate(row)) for row in pairing)
        object.__setattr__(self, "pairing", pairing)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_rows", rows)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> QuadraticForm:
        """Orthogonal sum of rank one forms with the given q-values."""
        n = len(values)
        pairing = [[int(i == j and values[i] % 2) for j in range(n)] for i in range(n)]
        return cls(n, pairing, tuple(v % 4 for v in values))

    @classmethod
    def zero(cls, dim: int = 0) -> QuadraticForm:
        return cls(dim, [[0] * dim for _ in range(dim)], (0,) * dim)

    @classmethod
    def from_dict(cls, data: dict) -> QuadraticForm:
        try:
            return cls(int(data["dim"]), data["pairing"], data["q"])
        except KeyError as exc:
            raise FormError(f"form object is missing key {exc.args[0]!r}") from None
        except TypeError as exc:
            raise FormError(f"malformed form object: {exc}") from None

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "pairing": [list(row) for row in self.pairing],
            "q": list(self.q),
        }

    def negate(self) -> QuadraticForm:
        return QuadraticForm(self.dim, self.pairing, tuple((-v) % 4 for v in self.q))


def load_form(text: str) -> QuadraticForm:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormError("form file must contain a JSON object")
    return QuadraticForm.from_dict(data)


def _as_mask(form: QuadraticForm, v: Gf2Vector) -> int:
    if isinstance(v, int):
        if v < 0 or v >> form.dim:
            raise FormError(f"bitset {v} does not fit in dimension {form.dim}")
        return v
    bits = list(v)
    if len(bits) != form.dim:
        raise FormError(f"vector has length {len(bits)}, form has dimension {form.dim}")
    mask = 0
    for i, b in enumerate(bits):
        if b % 2:
            mask |= 1 << i
    return mask


def pair(form: QuadraticForm, x: Gf2Vector, y: Gf2Vector) -> int:
    """The GF(2) pairing ``x . y``."""
    x, y = _as_mask(form, x), _as_mask(form, y)
    acc = 0
    for i in range(form.dim):
        if x >> i & 1:
            acc ^= (form._rows[i] & y).bit_count() & 1
    return acc


def evaluate(form: QuadraticForm, v: Gf2Vector) -> int:
    """Value in Z/4 of the refinement on ``v``.

    Extends the basis values by ``q(x + y) = q(x) + q(y) + 2 x.y``.
    """
    mask = _as_mask(form, v)
    support = [i for i in range(form.dim) if mask >> i & 1]
    total = sum(form.q[i] for i in support)
    cross = 0
    for a, i in enumerate(support):
        for j in support[a + 1:]:
            cross += form.pairing[i][j]
    return (total + 2 * cross) % 4


def radical(form: QuadraticForm) -> list[tuple[int, ...]]:
    """Basis of the kernel of the pairing, lowest pivot columns first."""
    n = form.dim
    rows = list(form._rows)
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if rows[r] >> col & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(n):
            if r != rank and rows[r] >> col & 1:
                rows[r] ^= rows[rank]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for r, pc in enumerate(pivots):
            if rows[r] >> f & 1:
                vec[pc] = 1
        basis.append(tuple(vec))
    return basis


def is_proper_form(form: QuadraticForm) -> bool:
    # q is additive on the radical, so checking a basis is enough
    return all(evaluate(form, b) == 0 for b in radical(form))


def value_counts(form: QuadraticForm) -> tuple[int, int, int, int]:
    """How many vectors take each value 0, 1, 2, 3."""
    if form.dim > GAUSS_SUM_MAX_DIM:
        raise FormError(
            f"dimension {form.dim} exceeds the Gauss sum cap of {GAUSS_SUM_MAX_DIM}"
        )
    values = np.zeros(1, dtype=np.int8)
    for i in range(form.dim):
        # new vectors are v + e_i with v supported on the first i coordinates
        low = form._rows[i] & ((1 << i) - 1)
        cross = np.bitwise_count(np.arange(1 << i, dtype=np.uint32) & np.uint32(low)) & 1
        shifted = (values + form.q[i] + 2 * cross.astype(np.int8)) % 4
        values = np.concatenate([values, shifted.astype(np.int8)])
    counts = np.bincount(values, minlength=4)
    return tuple(int(c) for c in counts)


def gauss_sum(form: QuadraticForm) -> Cyc8:
    """``sum_v i**q(v)`` as an exact element of Z[i] inside Z[zeta_8]."""
    c0, c1, c2, c3 = value_counts(form)
    return Cyc8.gaussian(c0 - c2, c1 - c3)


def brown(form: QuadraticForm) -> int:
    """Brown invariant in Z/8.

    Matches the Gauss sum against ``sqrt(2)**m * zeta**beta`` for each
    ``beta``, with ``m = dim + dim(radical)``.
    """
    total = gauss_sum(form)
    scale = SQRT2 ** (form.dim + len(radical(form)))
    for beta in range(8):
        if scale * ZETA ** beta == total:
            return beta
    raise ImproperFormError("form does not vanish on its radical; Brown invariant undefined")


def direct_sum(f: QuadraticForm, g: QuadraticForm) -> QuadraticForm:
    n = f.dim + g.dim
    pairing = [[0] * n for _ in range(n)]
    for i in range(f.dim):
        for j in range(f.dim):
            pairing[i][j] = f.pairing[i][j]
    for i in range(g.dim):
        for j in range(g.dim):
            pairing[f.dim + i][f.dim + j] = g.pairing[i][j]
    return QuadraticForm(n, pairing, f.q + g.q)
