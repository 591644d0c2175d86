"""Canonical forms over Z/p^r: shape, span preservation, canonicity."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckealg.modmat import (
    ModMatrix,
    _leading,
    howell_form,
    span_contains,
    span_equal,
)


def mat(p, r, rows):
    width = len(rows[0]) if rows else 0
    return ModMatrix.from_rows(p, r, width, rows)


def brute_span(p, r, rows, width):
    """Every Z-combination of the rows, as a frozen set of tuples."""
    pr = p**r
    points = {tuple([0] * width)}
    frontier = [tuple([0] * width)]
    while frontier:
        base = frontier.pop()
        for row in rows:
            new = tuple((b + x) % pr for b, x in zip(base, row))
            if new not in points:
                points.add(new)
                frontier.append(new)
    return frozenset(points)


def test_known_form_over_z4():
    # <(2,1), (0,2)> over Z/4 has Howell basis ((2,1), (0,2))
    a = mat(2, 2, [(2, 1), (0, 2)])
    h = howell_form(a)
    assert h.rows == ((2, 1), (0, 2))


def test_shadow_row_is_materialized():
    # the single row (2,1) over Z/4 spans (0,2) = 2*(2,1) too
    a = mat(2, 2, [(2, 1)])
    h = howell_form(a)
    assert h.rows == ((2, 1), (0, 2))
    assert span_contains(h, (0, 2))


def test_zero_matrix_collapses():
    a = mat(2, 2, [(0, 0), (0, 0)])
    assert howell_form(a).rows == ()


def test_pivots_strictly_increase():
    a = mat(3, 2, [(3, 4, 1), (6, 1, 0), (0, 3, 3)])
    h = howell_form(a)
    cols = [_leading(row) for row in h.rows]
    assert cols == sorted(set(cols))


def test_idempotent():
    a = mat(2, 3, [(4, 6, 1), (2, 0, 4), (0, 0, 2)])
    h = howell_form(a)
    assert howell_form(h) == h


@pytest.mark.parametrize(
    "p,r,width", [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 3), (2, 3, 1)]
)
def test_span_membership_matches_brute_force(p, r, width):
    rng = random.Random(1000 * p + 10 * r + width)
    pr = p**r
    for _ in range(25):
        rows = [
            tuple(rng.randrange(pr) for _ in range(width))
            for _ in range(rng.randrange(1, 3))
        ]
        a = mat(p, r, rows)
        expected = brute_span(p, r, rows, width)
        h = howell_form(a)
        assert brute_span(p, r, h.rows, width) == expected
        for point in itertools.product(range(pr), repeat=width):
            assert span_contains(a, point) == (point in expected)


def _random_row_ops(rng, rows, p, r):
    """Apply invertible row operations; the span must not change."""
    pr = p**r
    rows = [list(row) for row in rows]
    units = [u for u in range(1, pr) if u % p != 0]
    for _ in range(6):
        op = rng.randrange(3)
        i = rng.randrange(len(rows))
        j = rng.randrange(len(rows))
        if op == 0 and i != j:
            rows[i], rows[j] = rows[j], rows[i]
        elif op == 1 and i != j:
            c = rng.randrange(pr)
            rows[i] = [(a + c * b) % pr for a, b in zip(rows[i], rows[j])]
        else:
            u = rng.choice(units)
            rows[i] = [(u * a) % pr for a in rows[i]]
    return [tuple(row) for row in rows]


def test_canonical_under_row_operations():
    rng = random.Random(7)
    for trial in range(200):
        p = rng.choice((2, 3))
        r = rng.randrange(1, 4)
        width = rng.randrange(1, 4)
        pr = p**r
        rows = [
            tuple(rng.randrange(pr) for _ in range(width))
            for _ in range(rng.randrange(1, 4))
        ]
        a = mat(p, r, rows)
        b = mat(p, r, _random_row_ops(rng, rows, p, r))
        assert howell_form(a) == howell_form(b), (trial, rows)
        assert span_equal(a, b)


small_rows = st.integers(min_value=1, max_value=3).flatmap(
    lambda width: st.lists(
        st.tuples(*[st.integers(min_value=0, max_value=7)] * width),
        min_size=1,
        max_size=3,
    )
)


@settings(max_examples=60, deadline=None)
@given(rows=small_rows, p=st.sampled_from([2, 3]), r=st.integers(1, 3))
def test_howell_span_equals_input_span(rows, p, r):
    width = len(rows[0])
    a = mat(p, r, rows)
    h = howell_form(a)
    assert brute_span(p, r, a.rows, width) == brute_span(p, r, h.rows, width)


@settings(max_examples=60, deadline=None)
@given(rows=small_rows, p=st.sampled_from([2, 3]), r=st.integers(1, 3))
def test_above_pivot_entries_are_reduced(rows, p, r):
    a = mat(p, r, rows)
    h = howell_form(a)
    for k, row in enumerate(h.rows):
        col = _leading(row)
        pivot = row[col]
        for upper in h.rows[:k]:
            assert upper[col] < pivot
