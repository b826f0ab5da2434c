import cmath
import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ovalis.cyclotomic import Cyc8
from ovalis.forms import (
    FormError,
    ImproperFormError,
    QuadraticForm,
    brown,
    direct_sum,
    evaluate,
    gauss_sum,
    is_proper_form,
    load_form,
    pair,
    radical,
)

TREFOIL = QuadraticForm(1, [[1]], [1])
HYPERBOLIC = QuadraticForm(2, [[0, 1], [1, 0]], [0, 0])


@st.composite
def forms(draw, max_dim=5):
    n = draw(st.integers(0, max_dim))
    upper = draw(st.lists(st.integers(0, 1), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    pairing = [[0] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i, n):
            pairing[i][j] = pairing[j][i] = next(it)
    lifts = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return QuadraticForm(n, pairing, [pairing[i][i] + 2 * lifts[i] for i in range(n)])


def vectors(n):
    return itertools.product((0, 1), repeat=n)


def brute_gauss_sum(form):
    counts = [0, 0, 0, 0]
    for v in vectors(form.dim):
        counts[evaluate(form, v)] += 1
    return Cyc8(counts[0] - counts[2], 0, counts[1] - counts[3], 0)


def brute_kernel(form):
    return [
        v for v in vectors(form.dim)
        if all(pair(form, v, e) == 0 for e in itertools.product((0, 1), repeat=form.dim))
    ]


def float_brown(form):
    """Phase of the Gauss sum read off in floating point."""
    s = gauss_sum(form)
    z = complex(s.c0, s.c2)
    m = form.dim + len(radical(form))
    assert abs(abs(z) - math.sqrt(2) ** m) < 1e-9
    return round(cmath.phase(z) / (2 * math.pi / 8)) % 8


# --- construction ---------------------------------------------------------


def test_rejects_asymmetric_pairing():
    with pytest.raises(FormError, match="symmetric"):
        QuadraticForm(2, [[0, 1], [0, 0]], [0, 0])


def test_rejects_parity_breach():
    with pytest.raises(FormError, match="parity"):
        QuadraticForm(1, [[1]], [2])


@pytest.mark.parametrize(
    "text",
    [
        '{"dim": 2, "pairing": [[1, 0]], "q": [1, 0]}',
        '{"dim": 1, "pairing": [[1]], "q": [4]}',
        '{"dim": 1, "pairing": [[2]], "q": [0]}',
        '{"dim": 1, "pairing": [[1]]}',
        "[1, 2]",
        "not json",
    ],
)
def test_load_form_errors(text):
    with pytest.raises(FormError):
        load_form(text)


def test_load_form_roundtrip():
    form = load_form('{"dim": 2, "pairing": [[1, 1], [1, 0]], "q": [3, 2]}')
    assert load_form(json.dumps(form.to_dict())) == form


# --- evaluate --------------------------------------------------------------


def test_evaluate_examples():
    assert evaluate(TREFOIL, (1,)) == 1
    assert evaluate(HYPERBOLIC, (0, 0)) == 0
    form = QuadraticForm(2, [[1, 1], [1, 1]], [1, 1])
    assert evaluate(form, (1, 1)) == 0


def test_evaluate_dimension_mismatch():
    with pytest.raises(FormError):
        evaluate(TREFOIL, (1, 0))


@settings(max_examples=300)
@given(forms(), st.data())
def test_refinement_identity(form, data):
    n = form.dim
    x = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    y = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    s = [(a + b) % 2 for a, b in zip(x, y)]
    lhs = (evaluate(form, s) - evaluate(form, x) - evaluate(form, y)) % 4
    assert lhs == 2 * pair(form, x, y) % 4


# --- radical and properness -----------------------------------------------


def test_radical_examples():
    assert radical(TREFOIL) == []
    assert radical(QuadraticForm.zero(1)) == [(1,)]
    assert len(radical(QuadraticForm.zero(2))) == 2


def test_radical_is_deterministic():
    form = QuadraticForm(3, [[1, 1, 0], [1, 1, 0], [0, 0, 0]], [1, 1, 0])
    assert radical(form) == [(1, 1, 0), (0, 0, 1)]


@settings(max_examples=200)
@given(forms())
def test_radical_spans_brute_kernel(form):
    basis = radical(form)
    kernel = brute_kernel(form)
    assert len(kernel) == 2 ** len(basis)
    for b in basis:
        assert tuple(b) in kernel


def test_is_proper_examples():
    assert is_proper_form(TREFOIL)
    assert not is_proper_form(QuadraticForm(1, [[0]], [2]))
    assert is_proper_form(QuadraticForm(1, [[0]], [0]))


# --- Gauss sums and Brown ---------------------------------------------------


def test_gauss_sum_examples():
    assert gauss_sum(QuadraticForm.zero(0)) == Cyc8(1)
    assert gauss_sum(TREFOIL) == Cyc8(1, 0, 1, 0)
    assert gauss_sum(HYPERBOLIC) == Cyc8(2)


@settings(max_examples=200)
@given(forms(max_dim=7))
def test_gauss_sum_matches_brute_force(form):
    assert gauss_sum(form) == brute_gauss_sum(form)


def test_gauss_sum_dimension_cap():
    with pytest.raises(FormError, match="cap"):
        gauss_sum(QuadraticForm.zero(25))


@pytest.mark.parametrize(
    "form, beta",
    [
        (TREFOIL, 1),
        (QuadraticForm.diagonal([1] * 4), 4),
        (QuadraticForm.diagonal([1] * 10), 2),
        (QuadraticForm.zero(0), 0),
        (HYPERBOLIC, 0),
        (QuadraticForm.diagonal([3]), 7),
        (QuadraticForm(2, [[1, 1], [1, 1]], [1, 1]), 1),
    ],
)
def test_brown_values(form, beta):
    assert brown(form) == beta
    assert float_brown(form) == beta


def test_brown_improper_raises():
    with pytest.raises(ImproperFormError):
        brown(QuadraticForm(1, [[0]], [2]))


def test_direct_sum_examples():
    f = TREFOIL
    assert direct_sum(f, QuadraticForm.zero(0)) == f
    ff = direct_sum(f, f)
    assert ff.dim == 2 and brown(ff) == 2
    assert gauss_sum(ff) == Cyc8(0, 0, 2, 0)
    assert direct_sum(QuadraticForm.zero(1), QuadraticForm.zero(1)) == QuadraticForm.zero(2)


@settings(max_examples=300)
@given(forms(max_dim=4), forms(max_dim=4))
def test_brown_additive(f, g):
    if is_proper_form(f) and is_proper_form(g):
        assert brown(direct_sum(f, g)) == (brown(f) + brown(g)) % 8


@settings(max_examples=300)
@given(forms(max_dim=6))
def test_magnitude_law(form):
    s = gauss_sum(form)
    norm = s.norm_squared()
    assert norm.c1 == norm.c2 == norm.c3 == 0
    bound = 2 ** (form.dim + len(radical(form)))
    if is_proper_form(form):
        assert norm.c0 == bound
    else:
        assert norm.c0 < bound


def test_negation_exhaustive_dim_le_3():
    for n in range(4):
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            pairing = [[0] * n for _ in range(n)]
            for (i, j), b in zip(pairs, bits):
                pairing[i][j] = pairing[j][i] = b
            for lifts in itertools.product((0, 1), repeat=n):
                form = QuadraticForm(n, pairing, [pairing[i][i] + 2 * lifts[i] for i in range(n)])
                if is_proper_form(form):
                    assert brown(form.negate()) == (-brown(form)) % 8


@settings(max_examples=100, deadline=None)
@given(forms(max_dim=4))
def test_negation_dim_4(form):
    if is_proper_form(form):
        assert brown(form.negate()) == (-brown(form)) % 8
