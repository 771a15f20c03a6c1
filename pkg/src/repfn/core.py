"""Exact representation-function arithmetic over finite prefixes of the naturals.

A :class:`ChiTable` stores the characteristic function chi of a set A of
nonnegative integers on a finite prefix [0, N].  Queries whose answer could
depend on unknown elements (n > N) are hard errors, never silent zeros.  The
complement is always derived from the same table by flipping bits on the fly;
it is not materialized, so both sides of any identity share one source of
truth.

The weighted count for a weight pair (k1, k2) at target n is the number of
ordered pairs (a1, a2) with k1*a1 + k2*a2 = n and both coordinates on the
requested side.  Counts are exact integers throughout: per-n counting is a
plain Python loop, batched tables use int64 accumulation (counts never
exceed n, so 64 bits is ample).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import PreconditionError, QueryBeyondPrefix

SET = "set"
COMPLEMENT = "complement"
_SIDES = (SET, COMPLEMENT)


def _check_side(side: str) -> None:
    if side not in _SIDES:
        raise PreconditionError(f"side must be one of {_SIDES}, got {side!r}")


class ChiTable:
    """Characteristic function of a set on the prefix [0, limit].

    ``k`` (>= 2) is the weight that pairs with the set in the identity
    R_{1,k}(A, n) = R_{1,k}(complement, n) and in the flip recursion that
    builds such tables; ``n0`` is the index from which the identity is
    expected to hold.  Both ride along as metadata for the verifiers; the
    counting operations only read the bits.
    """

    __slots__ = ("_bits", "k", "n0")

    def __init__(self, bits, k: int, n0: int):
        arr = np.asarray(bits, dtype=np.uint8).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise PreconditionError("bits must be a nonempty one-dimensional sequence")
        if not np.all(arr <= 1):
            raise PreconditionError("bits must contain only 0 and 1")
        if int(k) < 2:
            raise PreconditionError(f"k must be >= 2, got {k}")
        if int(n0) < 0:
            raise PreconditionError(f"n0 must be >= 0, got {n0}")
        arr.setflags(write=False)
        self._bits = arr
        self.k = int(k)
        self.n0 = int(n0)

    @property
    def limit(self) -> int:
        return self._bits.size - 1

    @property
    def bits(self) -> np.ndarray:
        """Read-only uint8 array; index n gives chi(n)."""
        return self._bits

    def value(self, n: int) -> int:
        """chi(n), raising QueryBeyondPrefix outside [0, limit]."""
        if not 0 <= n <= self.limit:
            raise QueryBeyondPrefix(f"n={n} outside known prefix [0, {self.limit}]")
        return int(self._bits[n])

    def side_value(self, n: int, side: str) -> int:
        """Indicator of n on the chosen side (complement = flipped bit)."""
        _check_side(side)
        v = self.value(n)
        return v if side == SET else 1 - v

    def side_bits(self, side: str, up_to: int | None = None) -> np.ndarray:
        """Indicator array of the chosen side on [0, up_to]."""
        _check_side(side)
        hi = self.limit if up_to is None else up_to
        if not 0 <= hi <= self.limit:
            raise QueryBeyondPrefix(f"up_to={hi} outside known prefix [0, {self.limit}]")
        view = self._bits[: hi + 1]
        return view if side == SET else (1 - view).astype(np.uint8)

    def prefix_count(self, side: str, x: int) -> int:
        """Number of elements of the chosen side in [0, x]."""
        return int(self.side_bits(side, x).sum())

    def describe(self) -> str:
        return f"chi(k={self.k},n0={self.n0},limit={self.limit})"

    def __repr__(self) -> str:
        return f"ChiTable({self.describe()})"


@dataclass(frozen=True)
class WeightPair:
    """Coefficients of the weighted equation n = k1*a1 + k2*a2."""

    k1: int
    k2: int

    def __post_init__(self):
        if self.k1 < 1 or self.k2 < 1:
            raise PreconditionError(f"weights must be positive, got ({self.k1}, {self.k2})")

    @property
    def kmax(self) -> int:
        return max(self.k1, self.k2)


def rep_count_weighted(chi: ChiTable, side: str, w: WeightPair, n: int) -> int:
    """Count ordered pairs (a1, a2) with k1*a1 + k2*a2 = n, both on ``side``.

    This is the naive per-n reference counter: one pass over a2 in
    [0, n // k2].  The batched sieve in :func:`rep_table` must agree with it
    everywhere.
    """
    _check_side(side)
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    if n > chi.limit:
        raise QueryBeyondPrefix(f"n={n} outside known prefix [0, {chi.limit}]")
    bits = chi._bits
    target = 1 if side == SET else 0
    count = 0
    for a2 in range(n // w.k2 + 1):
        rem = n - w.k2 * a2
        if rem % w.k1:
            continue
        a1 = rem // w.k1
        if bits[a1] == target and bits[a2] == target:
            count += 1
    return count


@dataclass(frozen=True)
class RepTable:
    """Batched representation counts values[n] for n in [0, M]."""

    weights: WeightPair
    side: str
    source: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        # counts are bounded by the number of admissible a2 (or a1) choices
        ns = np.arange(self.values.size, dtype=np.int64)
        if not np.all(self.values <= ns // self.weights.kmax + 1):
            raise AssertionError("representation counts exceed the combinatorial bound")

    def __getitem__(self, n: int) -> int:
        return int(self.values[n])

    def as_list(self) -> list[int]:
        return [int(v) for v in self.values]


def _sieve_chunk(member: np.ndarray, k1: int, k2: int, up_to: int, a2_chunk: np.ndarray) -> np.ndarray:
    """Strided-add sieve: one slice update per member a2 in the chunk."""
    values = np.zeros(up_to + 1, dtype=np.int64)
    member = member.astype(np.int64)
    for a2 in a2_chunk:
        start = k2 * int(a2)
        cnt = (up_to - start) // k1 + 1
        values[start : start + (cnt - 1) * k1 + 1 : k1] += member[:cnt]
    return values


def rep_values(chi: ChiTable, side: str, w: WeightPair, up_to: int, workers: int = 1) -> np.ndarray:
    """Array of rep_count_weighted(chi, side, w, n) for n in [0, up_to].

    With ``workers > 1`` the a2 range is sharded across processes and the
    partial count arrays are summed; results are identical to the serial
    path.
    """
    _check_side(side)
    if not 0 <= up_to <= chi.limit:
        raise QueryBeyondPrefix(f"up_to={up_to} outside known prefix [0, {chi.limit}]")
    member = chi.side_bits(side, up_to)
    a2s = np.nonzero(member[: up_to // w.k2 + 1])[0]
    if workers <= 1:
        return _sieve_chunk(member, w.k1, w.k2, up_to, a2s)
    from concurrent.futures import ProcessPoolExecutor

    chunks = [c for c in np.array_split(a2s, workers) if c.size]
    if not chunks:
        return np.zeros(up_to + 1, dtype=np.int64)
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = [pool.submit(_sieve_chunk, member, w.k1, w.k2, up_to, c) for c in chunks]
        return np.sum([p.result() for p in parts], axis=0)


def rep_table(chi: ChiTable, side: str, w: WeightPair, up_to: int, workers: int = 1) -> RepTable:
    """Batched form of :func:`rep_count_weighted` over [0, up_to]."""
    values = rep_values(chi, side, w, up_to, workers=workers)
    return RepTable(weights=w, side=side, source=f"{chi.describe()}/{side}", values=values)


R1 = "r1"
R2 = "r2"
R3 = "r3"
_VARIANTS = (R1, R2, R3)


def classic_rep(chi: ChiTable, side: str, variant: str, n: int) -> int:
    """Classic two-term counts at weight (1, 1).

    r1 counts ordered pairs a + a' = n, r2 the pairs with a < a', r3 the
    pairs with a <= a'; both elements must lie on the chosen side.
    """
    _check_side(side)
    if variant not in _VARIANTS:
        raise PreconditionError(f"variant must be one of {_VARIANTS}, got {variant!r}")
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    if n > chi.limit:
        raise QueryBeyondPrefix(f"n={n} outside known prefix [0, {chi.limit}]")
    bits = chi._bits
    target = 1 if side == SET else 0
    r1 = r2 = r3 = 0
    for a in range(n // 2 + 1):
        b = n - a
        if bits[a] == target and bits[b] == target:
            r3 += 1
            if a < b:
                r2 += 1
                r1 += 2
            else:
                r1 += 1
    return {R1: r1, R2: r2, R3: r3}[variant]


def total_identity_check(chi: ChiTable, w: WeightPair, n: int) -> bool:
    """Self-test: the four membership classes partition all solutions.

    For k1 = 1 every a2 in [0, n // k2] yields exactly one ordered pair, so
    counting pairs with (a1, a2) in A x A, comp x comp, A x comp and
    comp x A must give n // k2 + 1 in total.  Each class is recounted
    independently here; a mismatch indicates a corrupted table.
    """
    if w.k1 != 1:
        raise PreconditionError(f"identity requires k1 = 1, got k1 = {w.k1}")
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    if n > chi.limit:
        raise QueryBeyondPrefix(f"n={n} outside known prefix [0, {chi.limit}]")
    a2s = np.arange(n // w.k2 + 1)
    b2 = chi._bits[a2s].astype(np.int64)
    b1 = chi._bits[n - w.k2 * a2s].astype(np.int64)
    both_in = int(np.sum(b1 & b2))
    both_out = int(np.sum((1 - b1) & (1 - b2)))
    in_out = int(np.sum(b1 & (1 - b2)))
    out_in = int(np.sum((1 - b1) & b2))
    return both_in + both_out + in_out + out_in == n // w.k2 + 1


@dataclass
class ScanReport:
    """Per-n record of set/complement counts against a lower bound.

    ``kind`` is "equality" (flag: counts agree) or "bound" (flag: both
    counts reach the guaranteed bound).  ``min_ratio`` is the running
    minimum of r_set / max(1, ln n) over the scan, reported for bound scans
    and never asserted.
    """

    kind: str
    k: int
    n0: int
    lo: int
    hi: int
    step: int
    ns: np.ndarray = field(repr=False)
    r_set: np.ndarray = field(repr=False)
    r_comp: np.ndarray = field(repr=False)
    bound: np.ndarray = field(repr=False)
    ok: np.ndarray = field(repr=False)
    min_ratio: float | None = None

    @property
    def violations(self) -> list[int]:
        return [int(n) for n in self.ns[~self.ok]]

    @property
    def passed(self) -> bool:
        return bool(self.ok.all())

    def rows(self) -> Iterator[tuple[int, int, int, int, int]]:
        for n, rs, rc, b, f in zip(self.ns, self.r_set, self.r_comp, self.bound, self.ok):
            yield int(n), int(rs), int(rc), int(b), int(f)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "n0": self.n0,
            "lo": self.lo,
            "hi": self.hi,
            "step": self.step,
            "passed": self.passed,
            "violations": self.violations,
            "min_ratio": self.min_ratio,
            "columns": ["n", "R_A", "R_comp", "bound", "ok"],
            "rows": [list(r) for r in self.rows()],
        }
