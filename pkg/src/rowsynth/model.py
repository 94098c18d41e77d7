"""Synthesis model: periodic machine, strands, schedules, greedy simulation.

The machine emits one symbol per time slot, cycling through the alphabet:
slot t (1-based) emits (t - 1) mod q, so slot 1 emits 0. In each slot, at
most one strand of the row may append its next symbol, and only when that
symbol equals the emitted one. A schedule is the per-slot action list
(advance strand 1 / advance strand 2 / idle) and its length is the
completion time: the slot of the final advance.

The greedy simulator never idles when progress is possible; when both
strands can advance it defers to the tie policy. Externally supplied
schedules may idle freely and are merely validated and scored by
apply_schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ConfigError,
    IllegalActionError,
    IncompleteScheduleError,
    InvalidStrandError,
    ScheduleError,
)
from .policies import HistoryDigest, TieContext, TieDecision, TiePolicy
from .rng import DEFAULT_SEED, master_rng

Strand = tuple[int, ...]


def validate_alphabet(q: int) -> int:
    if not isinstance(q, int) or q < 2:
        raise InvalidStrandError(f"alphabet size must be an integer >= 2, got {q!r}")
    return q


def validate_strand(strand, q: int) -> Strand:
    """Normalize to a tuple of ints and check every symbol lies in [0, q)."""
    validate_alphabet(q)
    out = tuple(int(s) for s in strand)
    for k, s in enumerate(out):
        if not 0 <= s < q:
            raise InvalidStrandError(f"symbol {s} at position {k} outside alphabet of size {q}")
    return out


def parse_strand(text: str, q: int) -> Strand:
    """Parse "1,3,2,2" or, for q <= 10, the compact digit form "1322"."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        try:
            symbols = [int(tok) for tok in text.split(",")]
        except ValueError as exc:
            raise InvalidStrandError(f"cannot parse strand {text!r}: {exc}") from None
    else:
        if not text.isdigit():
            raise InvalidStrandError(f"cannot parse strand {text!r}")
        if q > 10:
            raise InvalidStrandError(
                f"digit-string strands are ambiguous for q={q} > 10; use comma-separated form"
            )
        symbols = [int(ch) for ch in text]
    return validate_strand(symbols, q)


def format_strand(strand) -> str:
    return ",".join(str(s) for s in strand)


def periodic_symbol(q: int, t: int) -> int:
    """Symbol emitted at 1-based slot t; slot 1 emits 0."""
    validate_alphabet(q)
    if t < 1:
        raise ValueError(f"slot index must be >= 1, got {t}")
    return (t - 1) % q


def solo_time(z, q: int, start_phase: int = 0) -> int:
    """Slots needed to synthesize a single strand greedily.

    Slots 1, 2, ... emit start_phase, start_phase + 1, ... mod q. Each
    symbol costs ((z_k - z_{k-1} - 1) mod q) + 1 slots after its
    predecessor (the first one counted from the virtual symbol before slot
    1), which is exactly the slot-by-slot greedy behaviour. Empty strands
    take 0 slots.
    """
    z = validate_strand(z, q)
    if not 0 <= start_phase < q:
        raise InvalidStrandError(f"start phase {start_phase} outside alphabet of size {q}")
    t = 0
    cur = (start_phase - 1) % q
    for s in z:
        t += ((s - cur - 1) % q) + 1
        cur = s
    return t


# --- actions and schedules -------------------------------------------------


@dataclass(frozen=True)
class Action:
    """Advance a 1-based strand index, or idle (strand=None)."""

    strand: int | None = None

    @property
    def is_advance(self) -> bool:
        return self.strand is not None

    def token(self) -> str:
        if self.strand is None:
            return "-"
        if self.strand == 1:
            return "X"
        if self.strand == 2:
            return "Y"
        return f"X{self.strand}"


IDLE = Action(None)
ADVANCE_X = Action(1)
ADVANCE_Y = Action(2)


def _parse_token(tok: str) -> Action:
    tok = tok.strip()
    if tok in ("-", "−"):
        return IDLE
    if tok == "X":
        return ADVANCE_X
    if tok == "Y":
        return ADVANCE_Y
    if tok.startswith("X") and tok[1:].isdigit():
        idx = int(tok[1:])
        if idx >= 1:
            return Action(idx)
    raise ScheduleError(f"unknown schedule token {tok!r}")


@dataclass(frozen=True)
class Schedule:
    """An ordered action list; its length is the completion time.

    Trailing idles are forbidden: the schedule ends at the slot of the
    final advance.
    """

    actions: tuple[Action, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        if self.actions and not self.actions[-1].is_advance:
            raise ScheduleError("a schedule must end with an advance, not an idle")

    @property
    def completion_time(self) -> int:
        return len(self.actions)

    def __len__(self) -> int:
        return len(self.actions)

    def __iter__(self):
        return iter(self.actions)

    def advance_count(self, strand: int) -> int:
        return sum(1 for a in self.actions if a.strand == strand)

    def to_string(self) -> str:
        return ",".join(a.token() for a in self.actions)

    @classmethod
    def from_string(cls, text: str) -> "Schedule":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(_parse_token(tok) for tok in text.split(",")))


@dataclass(frozen=True)
class SimState:
    """Progress snapshot: symbols done per strand, current slot and emission."""

    i: int
    j: int
    t: int
    r: int


@dataclass(frozen=True)
class StepRecord:
    """One simulated slot: emission, chosen action, and both strand offsets.

    The offset of a strand is (next symbol - r) mod q, i.e. the number of
    slots until its next symbol comes around; None once the strand is
    complete. An offset of 0 means the strand can advance now.
    """

    t: int
    r: int
    action: Action
    a: int | None
    b: int | None

    @property
    def advanced(self) -> int | None:
        return self.action.strand


@dataclass(frozen=True)
class SimTrace:
    records: tuple[StepRecord, ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


_ACTION_BY_INDEX = {0: IDLE, 1: ADVANCE_X, 2: ADVANCE_Y}


def _default_rng():
    return master_rng(DEFAULT_SEED)


def _run(x: Strand, y: Strand, policy: TiePolicy, q: int, rng,
         actions: list | None, records: list | None) -> int:
    """Shared greedy loop; appends to actions/records when given."""
    lx, ly = len(x), len(y)
    i = j = 0
    t = 0
    r = 0
    ties = 0
    decide = policy.decide
    want_look = policy.lookahead == 1
    uses_rng = policy.uses_rng
    if uses_rng and rng is None:
        rng = _default_rng()
    while i < lx or j < ly:
        t += 1
        if records is not None:
            a = (x[i] - r) % q if i < lx else None
            b = (y[j] - r) % q if j < ly else None
        can_x = i < lx and x[i] == r
        can_y = j < ly and y[j] == r
        if can_x and can_y:
            coin = int(rng.integers(2)) if uses_rng else 0
            ctx = TieContext(
                i, j, r, q,
                x[i + 1] if want_look and i + 1 < lx else None,
                y[j + 1] if want_look and j + 1 < ly else None,
                HistoryDigest(ties, coin),
            )
            ties += 1
            if decide(ctx) is TieDecision.ADVANCE_X:
                adv = 1
                i += 1
            else:
                adv = 2
                j += 1
        elif can_x:
            adv = 1
            i += 1
        elif can_y:
            adv = 2
            j += 1
        else:
            adv = 0
        if actions is not None:
            actions.append(_ACTION_BY_INDEX[adv])
        if records is not None:
            records.append(StepRecord(t, r, _ACTION_BY_INDEX[adv], a, b))
        r += 1
        if r == q:
            r = 0
    return t


def simulate(x, y, policy: TiePolicy, q: int, rng=None) -> tuple[Schedule, SimTrace]:
    """Greedy simulation of a strand pair under a tie policy.

    Each slot, the strand whose next symbol matches the emission advances;
    at a tie the policy decides; otherwise the machine idles. Stops at the
    slot completing the last strand. Returns the schedule plus a per-slot
    trace of emissions, actions and offsets.
    """
    x = validate_strand(x, q)
    y = validate_strand(y, q)
    actions: list[Action] = []
    records: list[StepRecord] = []
    _run(x, y, policy, q, rng, actions, records)
    return Schedule(tuple(actions)), SimTrace(tuple(records))


def completion_time(x, y, policy: TiePolicy, q: int, rng=None) -> int:
    """Completion time of the greedy simulation, without materializing a trace."""
    x = validate_strand(x, q)
    y = validate_strand(y, q)
    return _run(x, y, policy, q, rng, None, None)


def simulate_k(strands, policy: TiePolicy, q: int, rng=None) -> Schedule:
    """Greedy simulation of any number of strands in one row.

    At most one strand advances per slot; when several match, the policy's
    k-strand selection rule picks one. Rows of exactly two strands go
    through the same path as simulate(), so lookahead policies work there.
    """
    strands = [validate_strand(s, q) for s in strands]
    if len(strands) == 2:
        actions: list[Action] = []
        _run(strands[0], strands[1], policy, q, rng, actions, None)
        return Schedule(tuple(actions))
    if len(strands) > 2 and policy.choose is None:
        raise ConfigError(f"policy {policy.name!r} has no selection rule for k > 2 strands")
    if policy.uses_rng and rng is None:
        rng = _default_rng()
    done = [0] * len(strands)
    actions = []
    r = 0
    ties = 0
    while any(done[s] < len(strands[s]) for s in range(len(strands))):
        cands = [s for s in range(len(strands))
                 if done[s] < len(strands[s]) and strands[s][done[s]] == r]
        if len(cands) > 1:
            coin = int(rng.integers(1 << 30)) if policy.uses_rng else 0
            chosen = policy.choose(cands, done, HistoryDigest(ties, coin))
            ties += 1
            done[chosen] += 1
            actions.append(Action(chosen + 1))
        elif cands:
            done[cands[0]] += 1
            actions.append(Action(cands[0] + 1))
        else:
            actions.append(IDLE)
        r += 1
        if r == q:
            r = 0
    return Schedule(tuple(actions))


def apply_schedule(x, y, schedule: Schedule, q: int) -> int:
    """Validate an externally supplied schedule against the model and score it.

    An advance at slot t is legal only if that strand is incomplete and its
    next symbol equals the slot's emission; idles are always legal, even
    when progress was possible. Raises IllegalActionError naming the
    offending slot, or IncompleteScheduleError if the schedule ends with a
    strand unfinished. Returns the completion time (the schedule length).
    """
    x = validate_strand(x, q)
    y = validate_strand(y, q)
    strands = (x, y)
    done = [0, 0]
    for t, action in enumerate(schedule, start=1):
        if not action.is_advance:
            continue
        s = action.strand
        if s not in (1, 2):
            raise IllegalActionError(t, f"schedule references strand {s}; only 1 and 2 exist")
        r = (t - 1) % q
        idx = done[s - 1]
        strand = strands[s - 1]
        if idx >= len(strand):
            raise IllegalActionError(t, f"strand {action.token()} is already complete")
        if strand[idx] != r:
            raise IllegalActionError(
                t, f"strand {action.token()} needs symbol {strand[idx]} but slot emits {r}"
            )
        done[s - 1] += 1
    if done[0] < len(x) or done[1] < len(y):
        raise IncompleteScheduleError(
            f"schedule ends with {len(x) - done[0]} symbols of X and "
            f"{len(y) - done[1]} of Y unsynthesized"
        )
    return schedule.completion_time
