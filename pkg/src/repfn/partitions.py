"""Construction and verification of self-complementary partition prefixes.

A set A of nonnegative integers satisfies the partition identity for weight
k >= 2 and start n0 when R_{1,k}(A, n) = R_{1,k}(complement, n) for every
n >= n0.  Such sets are rigid: they are determined by a short initial
segment plus a deterministic recursion.  Concretely, the identity holds on
all of [n0, infinity) exactly when

  (a) the window identity holds for every n in [n0, k + n0):
      the number of solutions of a1 + k*a2 = n equals
      sum chi(a1) + sum chi(a2) over those solutions, and

  (b) the flip rule chi(n) = 1 - chi(floor(n / k)) holds for every
      n >= k + n0.

This module enumerates the initial segments satisfying (a), extends them via
(b), and verifies (a), (b), the identity itself, and the power-block parity
relation that (b) induces along chains n -> k*n + j.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice

import numpy as np

from .bounds import bound_array
from .core import COMPLEMENT, SET, ChiTable, ScanReport, WeightPair, rep_values
from .errors import (
    EnumerationCapExceeded,
    InvalidSeed,
    PreconditionError,
    QueryBeyondPrefix,
)

# exhaustive seed search is 2**(k + n0); beyond this it stops being interactive
ENUMERATION_CAP = 24


def _check_params(k: int, n0: int) -> None:
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    if n0 < 0:
        raise PreconditionError(f"n0 must be >= 0, got {n0}")


def solution_count(k: int, n: int) -> int:
    """Number of nonnegative solutions (a1, a2) of a1 + k*a2 = n.

    Computed by direct enumeration over a2; the closed form n // k + 1 is
    used only as a cross-check.
    """
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    _check_params(k, 0)
    count = 0
    for a2 in range(n + 1):
        if n - k * a2 < 0:
            break
        count += 1
    assert count == n // k + 1
    return count


def _window_sums(values, k: int, n: int) -> tuple[int, int]:
    """(solution count, sum of chi(a1) + chi(a2)) over solutions of a1 + k*a2 = n."""
    total = 0
    weighted = 0
    for a2 in range(n // k + 1):
        a1 = n - k * a2
        total += 1
        weighted += int(values[a1]) + int(values[a2])
    return total, weighted


def window_identity_holds(values, k: int, n: int) -> bool:
    """True when the window identity holds at n for the given chi prefix."""
    total, weighted = _window_sums(values, k, n)
    return total == weighted


@dataclass(frozen=True)
class SeedAssignment:
    """chi restricted to [0, k + n0): candidate initial segment."""

    k: int
    n0: int
    values: tuple[int, ...]

    def __post_init__(self):
        _check_params(self.k, self.n0)
        if len(self.values) != self.k + self.n0:
            raise PreconditionError(
                f"seed must have length k + n0 = {self.k + self.n0}, got {len(self.values)}"
            )
        if any(v not in (0, 1) for v in self.values):
            raise PreconditionError("seed values must be 0 or 1")

    @classmethod
    def from_string(cls, k: int, n0: int, s: str) -> "SeedAssignment":
        """Parse a 0/1 string with character index equal to the integer index."""
        if any(c not in "01" for c in s):
            raise PreconditionError(f"seed string must contain only 0 and 1, got {s!r}")
        return cls(k, n0, tuple(int(c) for c in s))

    def bit_string(self) -> str:
        return "".join(map(str, self.values))

    def complement(self) -> "SeedAssignment":
        return SeedAssignment(self.k, self.n0, tuple(1 - v for v in self.values))

    def is_valid(self) -> bool:
        """Window identity at every n in [n0, k + n0)."""
        return all(
            window_identity_holds(self.values, self.k, n)
            for n in range(self.n0, self.k + self.n0)
        )


def enumerate_seeds(k: int, n0: int) -> list[SeedAssignment]:
    """All initial segments on [0, k + n0) satisfying the window identity.

    Depth-first over bit positions in increasing order; the constraint at
    n = p only involves positions <= p, so it is checked the moment position
    p is assigned.  Output is in lexicographic order of the bit string.
    The result is closed under bitwise complement, since flipping every bit
    leaves the two sides of the window identity equal.
    """
    _check_params(k, n0)
    width = k + n0
    if width > ENUMERATION_CAP:
        raise EnumerationCapExceeded(
            f"k + n0 = {width} exceeds the exhaustive-search cap {ENUMERATION_CAP}"
        )
    out: list[SeedAssignment] = []
    bits = [0] * width

    def dfs(p: int) -> None:
        if p == width:
            out.append(SeedAssignment(k, n0, tuple(bits)))
            return
        for v in (0, 1):
            bits[p] = v
            if p >= n0 and not window_identity_holds(bits, k, p):
                continue
            dfs(p + 1)

    dfs(0)
    return out


def _extend_bits(seed: SeedAssignment, limit: int) -> np.ndarray:
    width = seed.k + seed.n0
    bits = np.empty(limit + 1, dtype=np.uint8)
    bits[:width] = seed.values
    # fill in increasing order: floor(n / k) < n is always already defined
    lo = width
    while lo <= limit:
        hi = min(limit, seed.k * lo - 1)
        bits[lo : hi + 1] = 1 - bits[np.arange(lo, hi + 1) // seed.k]
        lo = hi + 1
    return bits


def extend_seed(seed: SeedAssignment, limit: int, require_valid: bool = True) -> ChiTable:
    """Extend a seed to [0, limit] by the flip rule chi(n) = 1 - chi(n // k).

    The extension is total and deterministic; two extensions of the same
    seed agree on any common prefix.  With ``require_valid`` (the default)
    the seed must pass its window identity, so the result satisfies the
    partition identity everywhere it is defined.
    """
    if limit < seed.k + seed.n0 - 1:
        raise PreconditionError(
            f"limit must cover the seed window [0, {seed.k + seed.n0 - 1}], got {limit}"
        )
    if require_valid and not seed.is_valid():
        raise InvalidSeed(f"seed {seed.bit_string()} fails the window identity")
    return ChiTable(_extend_bits(seed, limit), seed.k, seed.n0)


@dataclass(frozen=True)
class StructureReport:
    """Outcome of checking the window identity and the flip rule."""

    checked_up_to: int
    window_violations: tuple[int, ...]
    flip_first_violation: int | None
    flip_violation_count: int

    @property
    def ok(self) -> bool:
        return not self.window_violations and self.flip_first_violation is None


def verify_structure(chi: ChiTable, up_to: int) -> StructureReport:
    """Check condition (a) on the seed window and condition (b) up to ``up_to``."""
    if not 0 <= up_to <= chi.limit:
        raise QueryBeyondPrefix(f"up_to={up_to} outside known prefix [0, {chi.limit}]")
    k, n0 = chi.k, chi.n0
    bits = chi.bits
    window = [
        n
        for n in range(n0, min(k + n0, up_to + 1))
        if not window_identity_holds(bits, k, n)
    ]
    flip_first = None
    flip_count = 0
    if up_to >= k + n0:
        ns = np.arange(k + n0, up_to + 1)
        bad = ns[bits[ns] == bits[ns // k]]
        flip_count = int(bad.size)
        if flip_count:
            flip_first = int(bad[0])
    return StructureReport(
        checked_up_to=up_to,
        window_violations=tuple(window),
        flip_first_violation=flip_first,
        flip_violation_count=flip_count,
    )


def verify_equality(chi: ChiTable, up_to: int, workers: int = 1) -> ScanReport:
    """Compare R_{1,k} on the set and its complement for every n in [n0, up_to]."""
    if not 0 <= up_to <= chi.limit:
        raise QueryBeyondPrefix(f"up_to={up_to} outside known prefix [0, {chi.limit}]")
    if up_to < chi.n0:
        raise PreconditionError(f"up_to={up_to} is below n0={chi.n0}")
    w = WeightPair(1, chi.k)
    vs = rep_values(chi, SET, w, up_to, workers=workers)
    vc = rep_values(chi, COMPLEMENT, w, up_to, workers=workers)
    lo = chi.n0
    ns = np.arange(lo, up_to + 1)
    r_set = vs[lo:]
    r_comp = vc[lo:]
    return ScanReport(
        kind="equality",
        k=chi.k,
        n0=chi.n0,
        lo=lo,
        hi=up_to,
        step=1,
        ns=ns,
        r_set=r_set,
        r_comp=r_comp,
        bound=bound_array(chi.k, chi.n0, lo, up_to),
        ok=r_set == r_comp,
    )


@dataclass(frozen=True)
class BlockParityReport:
    """Outcome of checking chi on the blocks k**i * n + [0, k**i).

    Along any chain the flip rule forces chi to be constant on each block
    and to alternate with the parity of i, for every base n at or above
    ``threshold``.  Triples reaching beyond the prefix are skipped, not
    errors; ``checked`` counts the (i, n, j) triples actually inspected.
    Behaviour below the threshold is tallied separately and not judged.
    """

    i_max: int
    threshold: int
    limit: int
    checked: int
    checked_per_i: tuple[int, ...]
    violation_count: int
    violations: tuple[tuple[int, int, int], ...]
    below_threshold_checked: int
    below_threshold_mismatches: int

    @property
    def ok(self) -> bool:
        return self.violation_count == 0


_MAX_STORED_VIOLATIONS = 100


def verify_block_parity(chi: ChiTable, i_max: int) -> BlockParityReport:
    """Check the block parity relation for every i in [1, i_max].

    For each base n >= threshold and each j with k**i * n + j <= limit:
    chi(k**i * n + j) must equal chi(n) when i is even and 1 - chi(n) when
    i is odd.  The expected violation count on a table built from a valid
    seed is zero.
    """
    if i_max < 1:
        raise PreconditionError(f"i_max must be >= 1, got {i_max}")
    k, limit = chi.k, chi.limit
    threshold = (chi.n0 + k) // k + 1
    bits = chi.bits
    checked = 0
    checked_per_i = []
    violations: list[tuple[int, int, int]] = []
    violation_count = 0
    below_checked = 0
    below_mismatch = 0

    def compare(n: int, i: int, base: int, j_hi: int, judge: bool) -> None:
        nonlocal checked, violation_count, below_checked, below_mismatch
        start = base * n
        block = bits[start : start + j_hi + 1]
        expected = bits[n] ^ (i & 1)
        bad = np.nonzero(block != expected)[0]
        if judge:
            checked += j_hi + 1
            violation_count += int(bad.size)
            for j in islice(bad, max(0, _MAX_STORED_VIOLATIONS - len(violations))):
                violations.append((n, i, int(j)))
        else:
            below_checked += j_hi + 1
            below_mismatch += int(bad.size)

    for i in range(1, i_max + 1):
        base = k**i
        before = checked
        # full blocks: base*n + base - 1 <= limit
        n_full_hi = (limit + 1) // base - 1
        for n in range(0, n_full_hi + 1):
            compare(n, i, base, base - 1, judge=n >= threshold)
        # one partial block may remain
        n_part = n_full_hi + 1
        if base * n_part <= limit:
            compare(n_part, i, base, limit - base * n_part, judge=n_part >= threshold)
        checked_per_i.append(checked - before)

    return BlockParityReport(
        i_max=i_max,
        threshold=threshold,
        limit=limit,
        checked=checked,
        checked_per_i=tuple(checked_per_i),
        violation_count=violation_count,
        violations=tuple(violations),
        below_threshold_checked=below_checked,
        below_threshold_mismatches=below_mismatch,
    )
