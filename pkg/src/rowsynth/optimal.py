"""Exact offline solver and combinatorial bounds.

dp_solve fills a table of optimal remaining completion times over states
(i, j, r): symbols done in each strand and the currently emitted symbol.
The recurrence mirrors the four possible slot outcomes (tie, only X, only
Y, forced idle); the idle case refers to the same (i, j) at the next
emission, so for each cell pair the emissions are filled walking backward
cyclically from a symbol that enables progress, which is always computed
first. Alongside the solver live two fully independent cross-checks: a
brute-force minimum over all interleavings, and the binary runs/LCS
machinery that bounds the optimum combinatorially.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BudgetExceededError,
    InvalidStrandError,
    TableIntegrityError,
    UnsupportedAlphabetError,
)
from .model import (
    ADVANCE_X,
    ADVANCE_Y,
    IDLE,
    Action,
    Schedule,
    SimState,
    Strand,
    solo_time,
    validate_strand,
)


def find_first_progress_symbol(x, y, i: int, j: int) -> int:
    """A symbol that lets some strand advance from progress state (i, j).

    Returns x's next symbol when x is incomplete, else y's. Raises when
    both strands are already complete.
    """
    if i < len(x):
        return x[i]
    if j < len(y):
        return y[j]
    raise ValueError("both strands complete; no progress symbol exists")


@dataclass(frozen=True)
class DpTable:
    """Optimal remaining completion times, indexed by (i, j, r), zero-based."""

    q: int
    len_x: int
    len_y: int
    values: tuple[int, ...]

    def value(self, i: int, j: int, r: int) -> int:
        if not (0 <= i <= self.len_x and 0 <= j <= self.len_y and 0 <= r < self.q):
            raise IndexError(f"state ({i}, {j}, {r}) outside table")
        return self.values[(i * (self.len_y + 1) + j) * self.q + r]

    def __getitem__(self, state) -> int:
        return self.value(*state)


def dp_solve(x, y, q: int) -> DpTable:
    """Fill the full table of optimal remaining times for a strand pair.

    Iterates i and j downward; for each (i, j) the emission index runs
    backward cyclically from a progress-enabling symbol, so the idle case's
    dependence on the next emission is always on an entry already computed.
    O(len_x * len_y * q) time and space.
    """
    x = validate_strand(x, q)
    y = validate_strand(y, q)
    lx, ly = len(x), len(y)
    stride_j = q
    stride_i = (ly + 1) * q
    dp = [0] * ((lx + 1) * (ly + 1) * q)
    for i in range(lx, -1, -1):
        base_i = i * stride_i
        xi = x[i] if i < lx else -1
        for j in range(ly, -1, -1):
            if i == lx and j == ly:
                continue  # terminal row: all zeros
            yj = y[j] if j < ly else -1
            base = base_i + j * stride_j
            start_r = xi if xi >= 0 else yj
            for k in range(q):
                r = (start_r - k) % q
                rn = (r + 1) % q
                can_x = xi == r
                can_y = yj == r
                if can_x and can_y:
                    via_x = dp[base + stride_i + rn]
                    via_y = dp[base + stride_j + rn]
                    val = 1 + (via_x if via_x <= via_y else via_y)
                elif can_x:
                    val = 1 + dp[base + stride_i + rn]
                elif can_y:
                    val = 1 + dp[base + stride_j + rn]
                else:
                    val = 1 + dp[base + rn]
                dp[base + r] = val
    return DpTable(q, lx, ly, tuple(dp))


def t_star(x, y, q: int) -> int:
    """Optimal completion time of the pair (the table entry at (0, 0, 0))."""
    return dp_solve(x, y, q).value(0, 0, 0)


@dataclass(frozen=True)
class OptimalResult:
    t_star: int
    schedule: Schedule


def reconstruct(x, y, table: DpTable) -> OptimalResult:
    """Walk an optimal schedule out of a solved table.

    From (0, 0, 0), each step takes an action consistent with the
    minimizing branch (ties between branches resolved toward X) and idles
    exactly when neither next symbol matches. The result always scores the
    table's root value; any disagreement raises TableIntegrityError.
    """
    q = table.q
    x = validate_strand(x, q)
    y = validate_strand(y, q)
    lx, ly = len(x), len(y)
    if table.len_x != lx or table.len_y != ly:
        raise TableIntegrityError(
            f"table was built for lengths ({table.len_x}, {table.len_y}), "
            f"got strands of lengths ({lx}, {ly})"
        )
    target = table.value(0, 0, 0)
    limit = q * (lx + ly) + q  # any advance waits at most q slots
    actions: list[Action] = []
    state = SimState(0, 0, 1, 0)
    while state.i < lx or state.j < ly:
        if len(actions) > limit:
            raise TableIntegrityError("walk exceeded the maximal possible schedule length")
        i, j, r = state.i, state.j, state.r
        rn = (r + 1) % q
        can_x = i < lx and x[i] == r
        can_y = j < ly and y[j] == r
        if can_x and can_y:
            if table.value(i + 1, j, rn) <= table.value(i, j + 1, rn):
                actions.append(ADVANCE_X)
                i += 1
            else:
                actions.append(ADVANCE_Y)
                j += 1
        elif can_x:
            actions.append(ADVANCE_X)
            i += 1
        elif can_y:
            actions.append(ADVANCE_Y)
            j += 1
        else:
            actions.append(IDLE)
        state = SimState(i, j, state.t + 1, rn)
    if len(actions) != target:
        raise TableIntegrityError(
            f"reconstructed schedule takes {len(actions)} slots, table claims {target}"
        )
    return OptimalResult(target, Schedule(tuple(actions)))


def enumerate_interleavings_min(x, y, q: int, budget: int = 10**6) -> int:
    """Brute-force optimum: minimum solo time over every merge of x and y.

    Scheduling both strands equals solo-synthesizing some interleaving (one
    symbol per slot, each belonging to one strand), so the minimum over all
    C(len_x + len_y, len_x) merges is the optimal completion time. Entirely
    independent of dp_solve; refuses instances over the budget.
    """
    x = validate_strand(x, q)
    y = validate_strand(y, q)
    n, m = len(x), len(y)
    count = math.comb(n + m, n)
    if count > budget:
        raise BudgetExceededError(count, budget)
    best: int | None = None
    total = n + m
    for xpos in combinations(range(total), n):
        mask = [False] * total
        for p in xpos:
            mask[p] = True
        merged = []
        xi = yi = 0
        for p in range(total):
            if mask[p]:
                merged.append(x[xi])
                xi += 1
            else:
                merged.append(y[yi])
                yi += 1
        t = solo_time(merged, q, 0)
        if best is None or t < best:
            best = t
    return 0 if best is None else best


def runs_count(z) -> int:
    """Number of adjacent unequal symbol pairs; 0 for length <= 1."""
    z = tuple(z)
    return sum(1 for a, b in zip(z, z[1:]) if a != b)


def _require_binary(z, name: str) -> Strand:
    z = tuple(int(s) for s in z)
    if any(s not in (0, 1) for s in z):
        raise UnsupportedAlphabetError(f"{name} requires a binary strand")
    return z


def binary_runs_time(z) -> int:
    """Closed-form binary solo time from the run count.

    A symbol change costs one slot and a repeat costs two, so a strand of
    length n with rho runs takes 2n - 1 - rho slots when it opens with the
    first emission (symbol 0), plus one slot when it opens with 1. Agrees
    with solo_time(z, 2, 0) on every binary strand.
    """
    z = _require_binary(z, "binary_runs_time")
    if not z:
        raise InvalidStrandError("binary_runs_time requires a nonempty strand")
    return 2 * len(z) - 1 - runs_count(z) + (1 if z[0] == 1 else 0)


def lcs_length(u, v) -> int:
    """Length of the longest common subsequence (quadratic, rolling row)."""
    u = tuple(u)
    v = tuple(v)
    if not u or not v:
        return 0
    prev = [0] * (len(v) + 1)
    for a in u:
        cur = [0]
        append = cur.append
        for k, b in enumerate(v, start=1):
            if a == b:
                append(prev[k - 1] + 1)
            else:
                pk = prev[k]
                ck = cur[k - 1]
                append(pk if pk >= ck else ck)
        prev = cur
    return prev[-1]


def complement(z) -> Strand:
    """Bitwise complement of a binary strand."""
    z = _require_binary(z, "complement")
    return tuple(1 - s for s in z)


def lcs_upper_bound(x, y) -> int:
    """Combinatorial upper bound on the binary optimum: 4L - 2*LCS(x, ~y).

    Matched symbols between x and the complement of y can be interleaved
    into runs costing one slot each (2*LCS slots), while every unmatched
    symbol costs at most two (4(L - LCS) slots).
    """
    x = _require_binary(x, "lcs_upper_bound")
    y = _require_binary(y, "lcs_upper_bound")
    if len(x) != len(y) or not x:
        raise InvalidStrandError("lcs_upper_bound requires equal nonzero lengths")
    return 4 * len(x) - 2 * lcs_length(x, complement(y))
