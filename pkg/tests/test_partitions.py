from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from repfn import (
    ChiTable,
    EnumerationCapExceeded,
    InvalidSeed,
    PreconditionError,
    SeedAssignment,
    enumerate_seeds,
    extend_seed,
    solution_count,
    verify_block_parity,
    verify_equality,
    verify_structure,
)


def oracle_seeds(k, n0):
    """Independent exhaustive oracle: check the window identity literally."""
    width = k + n0
    found = []
    for cand in product((0, 1), repeat=width):
        ok = True
        for n in range(n0, width):
            total = 0
            weighted = 0
            for a2 in range(n // k + 1):
                total += 1
                weighted += cand[n - k * a2] + cand[a2]
            if total != weighted:
                ok = False
                break
        if ok:
            found.append("".join(map(str, cand)))
    return found


# -------------------------------------------------------------- seed window

def test_solution_count_examples():
    assert solution_count(2, 1) == 1  # only (1, 0)
    assert solution_count(2, 2) == 2  # (0, 1), (2, 0)
    assert solution_count(3, 9) == 4  # a2 in {0, 1, 2, 3}


@settings(max_examples=100, deadline=None)
@given(k=st.integers(2, 7), n=st.integers(0, 500))
def test_solution_count_closed_form(k, n):
    assert solution_count(k, n) == n // k + 1


def test_seed_validation():
    with pytest.raises(PreconditionError):
        SeedAssignment(2, 1, (0, 1))  # wrong length
    with pytest.raises(PreconditionError):
        SeedAssignment(2, 1, (0, 1, 2))
    with pytest.raises(PreconditionError):
        SeedAssignment.from_string(2, 1, "0a1")


def test_seed_census_k2_n01():
    seeds = enumerate_seeds(2, 1)
    assert [s.bit_string() for s in seeds] == ["011", "100"]
    assert seeds == sorted(seeds, key=lambda s: s.bit_string())
    assert [s.bit_string() for s in seeds] == oracle_seeds(2, 1)
    # the two seeds are bitwise complements of each other
    assert seeds[0].complement() == seeds[1]


@pytest.mark.parametrize("k,n0", list(product((2, 3, 4, 5), (0, 1, 2))))
def test_seed_census_matches_oracle(k, n0):
    assert [s.bit_string() for s in enumerate_seeds(k, n0)] == oracle_seeds(k, n0)


@pytest.mark.parametrize("k,n0", list(product((2, 3, 4, 5), (0, 1, 2))))
def test_seed_census_complement_closed(k, n0):
    strings = {s.bit_string() for s in enumerate_seeds(k, n0)}
    assert {s.translate(str.maketrans("01", "10")) for s in strings} == strings


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        enumerate_seeds(2, 30)
    with pytest.raises(PreconditionError):
        enumerate_seeds(1, 0)


# ---------------------------------------------------------------- extension

def test_extend_matches_hand_table(seed011):
    chi = extend_seed(seed011, 10)
    assert chi.bits.tolist() == [0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1]
    # membership view: A on [0, 10] is {1, 2, 6, 7, 8, 9, 10}
    assert [n for n in range(11) if chi.value(n)] == [1, 2, 6, 7, 8, 9, 10]


def test_extend_commutes_with_complement(seed011):
    comp = extend_seed(seed011.complement(), 10)
    chi = extend_seed(seed011, 10)
    assert (comp.bits == 1 - chi.bits).all()


def test_extend_rejects_invalid_seed():
    bad = SeedAssignment.from_string(2, 1, "010")
    assert not bad.is_valid()
    with pytest.raises(InvalidSeed):
        extend_seed(bad, 100)


def test_extensions_agree_on_common_prefix(seed011):
    short = extend_seed(seed011, 500)
    long = extend_seed(seed011, 5000)
    assert (long.bits[:501] == short.bits).all()


@settings(max_examples=40, deadline=None)
@given(k=st.integers(2, 5), n0=st.integers(0, 3), data=st.data())
def test_extension_satisfies_flip_rule(k, n0, data):
    seeds = enumerate_seeds(k, n0)
    if not seeds:
        return
    seed = seeds[data.draw(st.integers(0, len(seeds) - 1))]
    limit = data.draw(st.integers(k + n0, 600))
    chi = extend_seed(seed, limit)
    for n in range(k + n0, limit + 1):
        assert chi.value(n) + chi.value(n // k) == 1


# ---------------------------------------------------------------- verifiers

def test_verify_structure_passes_on_built_table(chi_small):
    assert verify_structure(chi_small, 2000).ok


def test_verifiers_respect_prefix(chi_small):
    from repfn import QueryBeyondPrefix

    with pytest.raises(QueryBeyondPrefix):
        verify_structure(chi_small, 2001)
    with pytest.raises(QueryBeyondPrefix):
        verify_equality(chi_small, 2001)


def test_verify_structure_detects_flip(seed011):
    chi = extend_seed(seed011, 200)
    bits = chi.bits.copy()
    bits[50] ^= 1
    broken = ChiTable(bits, 2, 1)
    report = verify_structure(broken, 200)
    assert not report.ok
    # the flip breaks the rule at n=50 or at one of its children
    assert report.flip_first_violation in [50] + list(range(100, 102))


def test_verify_structure_all_ones():
    chi = ChiTable(np.ones(101, dtype=int), 2, 1)
    report = verify_structure(chi, 100)
    assert not report.ok
    assert report.flip_first_violation == 3


def test_verify_equality_hand_value(chi_small):
    report = verify_equality(chi_small, 20)
    row = dict((n, (rs, rc)) for n, rs, rc, _, _ in report.rows())
    # at n=4: set pair (2, 1), complement pair (4, 0)
    assert row[4] == (1, 1)
    assert report.passed


def test_verify_equality_zero_violations(chi_small):
    assert verify_equality(chi_small, 2000).passed


def test_verify_equality_below_n0_excluded(seed011):
    report = verify_equality(extend_seed(seed011, 100), 100)
    assert report.lo == 1 and report.hi == 100
    assert report.ns[0] == 1


def test_flipped_bit_breaks_equality_nearby(seed011):
    flip_at = 50
    chi = extend_seed(seed011, 250)
    bits = chi.bits.copy()
    bits[flip_at] ^= 1
    broken = ChiTable(bits, 2, 1)
    report = verify_equality(broken, 250)
    violations = report.violations
    assert violations
    # a violation shows up within a window of size k * flip point
    assert min(violations) <= 2 * (flip_at + 1)


@pytest.mark.parametrize("k,n0", list(product((2, 3), (1, 2))))
def test_equality_scan_all_seeds(k, n0):
    for seed in enumerate_seeds(k, n0):
        assert verify_equality(extend_seed(seed, 3000), 3000).passed


# ------------------------------------------------------------- block parity

def test_block_parity_on_hand_table(seed011):
    chi = extend_seed(seed011, 50)
    report = verify_block_parity(chi, 2)
    assert report.ok
    # read off the table: chi(2)=1; even exponent block 2**2 * 2 + [0, 4) all 1
    assert [chi.value(n) for n in (8, 9, 10, 11)] == [1, 1, 1, 1]
    # odd exponent block 2 * 2 + [0, 2) flipped
    assert [chi.value(n) for n in (4, 5)] == [0, 0]


def test_block_parity_zero_violations(chi_small):
    report = verify_block_parity(chi_small, 4)
    assert report.ok
    assert report.checked > 0
    assert len(report.checked_per_i) == 4
    assert all(c > 0 for c in report.checked_per_i)


def test_block_parity_reports_below_threshold_without_judging(chi_small):
    report = verify_block_parity(chi_small, 1)
    # below the threshold the relation may fail, but that is not a violation
    assert report.below_threshold_checked > 0
    assert report.ok


def test_block_parity_requires_positive_imax(chi_small):
    with pytest.raises(PreconditionError):
        verify_block_parity(chi_small, 0)


def test_block_parity_detects_corruption(seed011):
    chi = extend_seed(seed011, 400)
    bits = chi.bits.copy()
    bits[300] ^= 1
    report = verify_block_parity(ChiTable(bits, 2, 1), 3)
    assert not report.ok
    assert report.violation_count > 0
    assert all(n >= report.threshold for n, _, _ in report.violations)


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_block_constancy_and_alternation(data):
    """chi is constant on each block k**i * n + [0, k**i) and alternates in i."""
    k = data.draw(st.integers(2, 3))
    n0 = data.draw(st.integers(1, 2))
    seeds = enumerate_seeds(k, n0)
    seed = seeds[data.draw(st.integers(0, len(seeds) - 1))]
    chi = extend_seed(seed, 3000)
    threshold = (n0 + k) // k + 1
    n = data.draw(st.integers(threshold, 20))
    for i in (1, 2, 3):
        base = k**i
        if base * n + base - 1 > chi.limit:
            break
        block = {chi.value(base * n + j) for j in range(base)}
        assert len(block) == 1
        assert block.pop() == chi.value(n) ^ (i & 1)
