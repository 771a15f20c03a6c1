"""Constructive lower-bound machinery for the partition identity.

For a table built from a valid seed, every large n admits explicit
representations n = a1 + k*a2 with a1, a2 on a common side.  The
construction rests on an exact scale decomposition

    n = k**i * (k**j + 1) * t + r,      t in [T, k*T - 1],
                                        0 <= r < k**i * (k**j + 1),

where T = floor((n0 + k) / k) + 1 and j ranges over the odd integers up to
half the integer logarithm of n / T.  Distinct admissible j yield
representations with pairwise distinct a2, which certifies the guaranteed
lower bound B(n) = floor(floor(log_k(n / T)) / 4) on the representation
count.  All logarithms here are exact integer quantities; floating point is
forbidden in this module's arithmetic because boundary values of n would
misclassify.

The module also hosts an exhaustive depth-first search showing that for
weights k2 > k1 >= 2 (coprime) no 0/1 assignment of a prefix can satisfy
the set/complement count equality: every branch dies at a measurable depth.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from math import gcd

import numpy as np

from .core import COMPLEMENT, SET, ChiTable, ScanReport, WeightPair, rep_count_weighted, rep_values
from .errors import DomainError, NoWitness, PreconditionError, QueryBeyondPrefix

CASE_INTERVAL = "case1"
CASE_SMALL_SHIFT = "case2"


def _check_params(k: int, n0: int) -> None:
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    if n0 < 0:
        raise PreconditionError(f"n0 must be >= 0, got {n0}")


def chain_threshold(k: int, n0: int) -> int:
    """floor((n0 + k) / k) + 1: first base where block parity is guaranteed."""
    _check_params(k, n0)
    return (n0 + k) // k + 1


def flog(k: int, n: int, scale: int) -> int:
    """Largest e with k**e * scale <= n, by exact integer multiplication."""
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    if scale < 1:
        raise DomainError(f"scale must be >= 1, got {scale}")
    if n < scale:
        raise DomainError(f"n={n} is below scale={scale}")
    e = 0
    cur = scale
    while cur * k <= n:
        cur *= k
        e += 1
    return e


def guaranteed_bound(k: int, n0: int, n: int) -> int:
    """B(n): the representation count guaranteed by the witness construction."""
    return flog(k, n, chain_threshold(k, n0)) // 4


def bound_array(k: int, n0: int, lo: int, hi: int, step: int = 1) -> np.ndarray:
    """Vector of guaranteed bounds for n in range(lo, hi + 1, step).

    Entries with n below the chain threshold get bound 0 (nothing is
    guaranteed there).  Power boundaries are exact: the cut points are the
    integers k**e * T themselves, never floating-point logs.
    """
    _check_params(k, n0)
    t0 = chain_threshold(k, n0)
    powers = []
    p = t0
    while p <= hi:
        powers.append(p)
        p *= k
    ns = np.arange(lo, hi + 1, step, dtype=np.int64)
    if not powers:
        return np.zeros(ns.size, dtype=np.int64)
    exponents = np.searchsorted(np.asarray(powers, dtype=np.int64), ns, side="right") - 1
    return np.where(exponents < 0, 0, exponents // 4).astype(np.int64)


def admissible_j_values(k: int, n0: int, n: int) -> list[int]:
    """Odd j with 1 <= j <= floor(flog(k, n, T) / 2); empty when flog < 2."""
    t0 = chain_threshold(k, n0)
    if n < t0:
        return []
    top = flog(k, n, t0) // 2
    return list(range(1, top + 1, 2))


@dataclass(frozen=True)
class Decomposition:
    """Exact writing n = k**i * (k**j + 1) * t + r with t in [t_lo, k*t_lo - 1].

    ``case`` records which regime the remainder falls in: "case1" when
    r <= k**(i+j) + k**i - k - 1 (witness from paired scaled blocks) and
    "case2" otherwise, with s = r - (k**(i+j) + k**i - k - 1) in [1, k]
    (witness from one scaled block plus a small element).
    """

    k: int
    n: int
    j: int
    i: int
    t: int
    r: int
    t_lo: int
    case: str
    s: int | None

    def reassemble(self) -> int:
        return self.k**self.i * (self.k**self.j + 1) * self.t + self.r


def decompose(k: int, n0: int, n: int, j: int) -> Decomposition:
    """Decompose n at odd scale exponent j.

    The inner exponent i is the unique integer with

        k**i * (k**j + 1) * T <= n < k**(i+1) * (k**j + 1) * T,

    and (t, r) is the division of n by k**i * (k**j + 1).  On every call
    i + j equals flog(k, n, T) or flog(k, n, T) - 1; that window property
    is asserted because the whole bound argument hangs on it.
    """
    _check_params(k, n0)
    if j < 1 or j % 2 == 0:
        raise DomainError(f"j must be odd and positive, got {j}")
    t0 = chain_threshold(k, n0)
    if n < t0:
        raise DomainError(f"n={n} is below the chain threshold {t0}")
    level = flog(k, n, t0)
    if j > level // 2:
        raise DomainError(f"j={j} exceeds the admissible ceiling {level // 2} at n={n}")
    base = (k**j + 1) * t0
    if n < base:
        raise DomainError(f"n={n} is below (k**j + 1) * T = {base}")
    i = flog(k, n, base)
    modulus = (k**j + 1) * k**i
    t, r = divmod(n, modulus)
    assert t0 <= t <= k * t0 - 1, (n, j, i, t)
    assert i + j in (level, level - 1), (n, j, i, level)
    threshold = k ** (i + j) + k**i - k - 1
    if r <= threshold:
        return Decomposition(k=k, n=n, j=j, i=i, t=t, r=r, t_lo=t0, case=CASE_INTERVAL, s=None)
    s = r - threshold
    assert 1 <= s <= k, (n, j, r, threshold)
    return Decomposition(k=k, n=n, j=j, i=i, t=t, r=r, t_lo=t0, case=CASE_SMALL_SHIFT, s=s)


@dataclass(frozen=True)
class WitnessRecord:
    """One explicit representation n = a1 + k*a2 with both ends on ``side``."""

    n: int
    decomposition: Decomposition
    a1: int
    a2: int
    side: str


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def extract_witness(
    chi: ChiTable, n: int, j: int, exclude: frozenset = frozenset()
) -> WitnessRecord | None:
    """Produce a representation of n from the decomposition at exponent j.

    case1: a2 is scanned ascending in the block [k**(i+j-1) * t, + k**(i+j-1))
    and the first value with a1 = n - k*a2 inside [k**i * t, + k**i) is
    taken; block parity puts both blocks on one side, so the pair is
    monochromatic.  case2: the small element a is scanned ascending in
    [0, k*T] on the side of the block containing n - k*a; the construction
    needs k*a <= k**i - k - 1, and when no eligible a satisfies that the
    call returns None ("below witness threshold") rather than failing,
    since the guarantee only kicks in for large n.

    ``exclude`` removes specific a2 values from consideration so that a
    caller collecting witnesses across several j can keep them pairwise
    distinct; when exclusions eat every eligible candidate the call returns
    None as well (the representation exists, it is just already taken).  A
    genuine absence of any admissible pair raises NoWitness: that would
    contradict the construction and must fail loudly.
    """
    if n > chi.limit:
        raise QueryBeyondPrefix(f"n={n} outside known prefix [0, {chi.limit}]")
    k = chi.k
    d = decompose(k, chi.n0, n, j)

    if d.case == CASE_INTERVAL:
        p = k ** (d.i + d.j - 1)
        q = k**d.i
        a2_lo, a2_hi = p * d.t, p * d.t + p - 1
        a1_lo, a1_hi = q * d.t, q * d.t + q - 1
        start = max(a2_lo, _ceil_div(n - a1_hi, k))
        for a2 in range(start, a2_hi + 1):
            a1 = n - k * a2
            if a1 < a1_lo:
                break
            assert a1 <= a1_hi  # guaranteed by the choice of start
            if a2 in exclude:
                continue
            b1, b2 = chi.value(a1), chi.value(a2)
            if b1 != b2:
                raise NoWitness(
                    f"blocks disagree at n={n}, j={j}: chi({a1})={b1} vs chi({a2})={b2}"
                )
            return WitnessRecord(
                n=n, decomposition=d, a1=a1, a2=a2, side=SET if b1 else COMPLEMENT
            )
        if exclude:
            return None
        raise NoWitness(f"paired-block scan exhausted at n={n}, j={j}")

    # case2: n - (k**i - k - 1 + s) = k**i * m for the shifted base m
    headroom = k**d.i - k - 1
    if headroom < 0:
        # no small element can fit; also keeps m below the prefix (at i = 0
        # the shifted base sits above n itself)
        return None
    m = (k**d.j + 1) * d.t + k**d.j
    side_bit = chi.value(m) ^ (d.i & 1)
    blk_lo = k**d.i * m
    saw_side_match = False
    for a in range(0, k * d.t_lo + 1):
        if chi.value(a) != side_bit:
            continue
        saw_side_match = True
        if k * a > headroom:
            break
        if a in exclude:
            continue
        a1 = n - k * a
        assert blk_lo <= a1 <= blk_lo + k**d.i - 1, (n, j, a, a1)
        if chi.value(a1) != side_bit:
            raise NoWitness(
                f"block side mismatch at n={n}, j={j}: chi({a1}) != chi({m}) parity"
            )
        return WitnessRecord(
            n=n, decomposition=d, a1=a1, a2=a, side=SET if side_bit else COMPLEMENT
        )
    if not saw_side_match:
        # one of T, k*T lies on each side, so a match always exists in [0, k*T]
        raise NoWitness(f"no element of the required side in [0, {k * d.t_lo}] at n={n}")
    return None  # below threshold, or pool exhausted by exclusions: skip either way


def witness_list(chi: ChiTable, n: int) -> tuple[list[WitnessRecord], list[tuple[int, str]]]:
    """Witnesses for every admissible odd j at n, with pairwise distinct a2.

    case1 witnesses are automatically distinct across j (their a1 blocks
    live at disjoint scales); case2 witnesses share the small-element pool
    [0, k*T], so each used small element is excluded from later j.  Skipped
    j values are reported with a reason instead of a record.
    """
    records: list[WitnessRecord] = []
    skipped: list[tuple[int, str]] = []
    used_small: set[int] = set()
    for j in admissible_j_values(chi.k, chi.n0, n):
        rec = extract_witness(chi, n, j, exclude=frozenset(used_small))
        if rec is None:
            if used_small and extract_witness(chi, n, j) is not None:
                skipped.append((j, "small-element-pool-exhausted"))
            else:
                skipped.append((j, "below-witness-threshold"))
            continue
        if rec.a1 + chi.k * rec.a2 != n:
            raise NoWitness(f"arithmetic breakdown at n={n}, j={j}")
        records.append(rec)
        if rec.decomposition.case == CASE_SMALL_SHIFT:
            used_small.add(rec.a2)
    assert len({r.a2 for r in records}) == len(records), f"duplicate a2 at n={n}"
    return records, skipped


def bound_scan(
    chi: ChiTable, lo: int, hi: int, step: int = 1, workers: int = 1
) -> ScanReport:
    """Record both representation counts against the guaranteed bound.

    For each sampled n the report carries R_{1,k} on the set and on the
    complement, the bound B(n), and the flag that both counts reach B(n).
    ``min_ratio`` tracks min r_set / max(1, ln n) over the scan as an
    empirical growth constant; it is reported, never asserted.
    """
    if lo < 0 or lo > hi:
        raise PreconditionError(f"need 0 <= lo <= hi, got [{lo}, {hi}]")
    if hi > chi.limit:
        raise QueryBeyondPrefix(f"hi={hi} outside known prefix [0, {chi.limit}]")
    if step < 1:
        raise PreconditionError(f"step must be >= 1, got {step}")
    w = WeightPair(1, chi.k)
    vs = rep_values(chi, SET, w, hi, workers=workers)
    vc = rep_values(chi, COMPLEMENT, w, hi, workers=workers)
    ns = np.arange(lo, hi + 1, step, dtype=np.int64)
    r_set = vs[ns]
    r_comp = vc[ns]
    bound = bound_array(chi.k, chi.n0, lo, hi, step)
    ok = (r_set >= bound) & (r_comp >= bound)
    ratios = r_set / np.maximum(1.0, np.log(np.maximum(ns, 1).astype(np.float64)))
    return ScanReport(
        kind="bound",
        k=chi.k,
        n0=chi.n0,
        lo=lo,
        hi=hi,
        step=step,
        ns=ns,
        r_set=r_set,
        r_comp=r_comp,
        bound=bound,
        ok=ok,
        min_ratio=float(ratios.min()) if ns.size else None,
    )


UNSAT = "unsat"
SAT = "sat"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of the exhaustive prefix search for the count equality.

    ``unsat_depth`` is the smallest number of assigned bits at which every
    branch has died; ``certificate`` is the first surviving full-depth
    assignment in search order, already re-validated.
    """

    weights: WeightPair
    n0: int
    depth_cap: int
    status: str
    unsat_depth: int | None
    certificate: tuple[int, ...] | None
    nodes: int
    elapsed: float


class _NodeBudgetExceeded(Exception):
    pass


def validate_certificate(bits, w: WeightPair, n0: int) -> bool:
    """Independent recheck of the equality constraints a certificate claims.

    Tallies both sides over the full pair grid (a plain double loop,
    sharing no code with the search's incremental counter) for every fully
    determined n, i.e. n <= k1 * len(bits) - 1, then cross-checks the per-n
    reference counter on the stored prefix.
    """
    bits = [int(b) for b in bits]
    size = len(bits)
    if size == 0:
        return True
    top = w.k1 * size - 1
    r_set = [0] * (top + 1)
    r_comp = [0] * (top + 1)
    for a1 in range(size):
        for a2 in range(size):
            s = w.k1 * a1 + w.k2 * a2
            if s > top:
                break
            if bits[a1] and bits[a2]:
                r_set[s] += 1
            elif not bits[a1] and not bits[a2]:
                r_comp[s] += 1
    if any(r_set[n] != r_comp[n] for n in range(n0, top + 1)):
        return False
    # cross-route agreement with the reference counter where the prefix allows
    chi = ChiTable(bits, k=2, n0=0)  # k/n0 are construction metadata, unused by counting
    for n in range(n0, size):
        if rep_count_weighted(chi, SET, w, n) != r_set[n]:
            return False
        if rep_count_weighted(chi, COMPLEMENT, w, n) != r_comp[n]:
            return False
    return True


def nonexistence_search(
    w: WeightPair,
    n0: int,
    depth_cap: int,
    check_weights: bool = True,
    node_cap: int = 5_000_000,
) -> SearchOutcome:
    """Exhaustive search for a 0/1 prefix satisfying the count equality.

    Bits are assigned in increasing index order, 0 before 1.  The equality
    constraint at n becomes decidable once chi is fixed on [0, n // k1], so
    assigning bit d settles exactly the constraints n in
    [k1*d, k1*(d+1)) intersected with [n0, infinity); a branch dies on its
    first violated constraint.  If no branch reaches ``depth_cap`` bits the
    result is UNSAT at the measured depth; a surviving branch yields a SAT
    certificate, re-validated by :func:`validate_certificate` before it is
    returned.  Exceeding ``node_cap`` gives status "inconclusive".

    The default weight regime is k2 > k1 >= 2 with gcd(k1, k2) = 1, where
    no infinite set satisfies the equality and finite UNSAT is the expected
    outcome.  Tests may pass ``check_weights=False`` to probe deliberately
    satisfiable instances such as k1 = 1; scheduling still requires
    k1 <= k2.
    """
    if check_weights:
        if not (w.k2 > w.k1 >= 2):
            raise PreconditionError(f"weights must satisfy k2 > k1 >= 2, got ({w.k1}, {w.k2})")
        if gcd(w.k1, w.k2) != 1:
            raise PreconditionError(f"weights must be coprime, got ({w.k1}, {w.k2})")
    elif w.k1 > w.k2:
        raise PreconditionError("constraint scheduling requires k1 <= k2")
    if n0 < 0:
        raise PreconditionError(f"n0 must be >= 0, got {n0}")
    if depth_cap < 1:
        raise PreconditionError(f"depth_cap must be >= 1, got {depth_cap}")

    k1, k2 = w.k1, w.k2
    bits: list[int] = []
    nodes = 0
    deepest = 0

    def equality_holds(n: int) -> bool:
        r_set = r_comp = 0
        for a2 in range(n // k2 + 1):
            rem = n - k2 * a2
            if rem % k1:
                continue
            b1, b2 = bits[rem // k1], bits[a2]
            if b1 and b2:
                r_set += 1
            elif not b1 and not b2:
                r_comp += 1
        return r_set == r_comp

    def dfs() -> bool:
        nonlocal nodes, deepest
        depth = len(bits)
        deepest = max(deepest, depth)
        if depth == depth_cap:
            return True
        for v in (0, 1):
            nodes += 1
            if nodes > node_cap:
                raise _NodeBudgetExceeded
            bits.append(v)
            newly_decided = range(max(n0, k1 * depth), k1 * (depth + 1))
            if all(equality_holds(n) for n in newly_decided) and dfs():
                return True
            bits.pop()
        return False

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, depth_cap + 200))
    start = time.perf_counter()
    try:
        survived = dfs()
    except _NodeBudgetExceeded:
        return SearchOutcome(
            weights=w, n0=n0, depth_cap=depth_cap, status=INCONCLUSIVE,
            unsat_depth=None, certificate=None, nodes=nodes,
            elapsed=time.perf_counter() - start,
        )
    finally:
        sys.setrecursionlimit(old_limit)
    elapsed = time.perf_counter() - start
    if survived:
        cert = tuple(bits)
        if not validate_certificate(cert, w, n0):
            raise AssertionError("search produced a certificate the recheck rejects")
        return SearchOutcome(
            weights=w, n0=n0, depth_cap=depth_cap, status=SAT,
            unsat_depth=None, certificate=cert, nodes=nodes, elapsed=elapsed,
        )
    return SearchOutcome(
        weights=w, n0=n0, depth_cap=depth_cap, status=UNSAT,
        unsat_depth=deepest + 1, certificate=None, nodes=nodes, elapsed=elapsed,
    )
