"""Exact rational scalars, score sequences, and tournament containers.

Everything downstream works with `fractions.Fraction` values: arithmetic is
arbitrary precision, always normalized (positive denominator, gcd 1), and no
floating point enters any computation. Score sequences are plain tuples of
Fractions; tournaments store one bit-row per vertex so that score
recomputation is a popcount even at blow-up scale.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

ScoreInput = Union[Fraction, int, str]

SUBSET_DEFICIT = "subset-deficit"
FULL_SUM_MISMATCH = "full-sum-mismatch"

# integer "k", fraction "p/q", or finite decimal "a.b" -- nothing else
_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+|\.\d+)?")


class Infeasible(ValueError):
    """Raised when an operation requires a feasible score sequence.

    Carries the `Witness` certifying the violation.
    """

    def __init__(self, witness: "Witness"):
        super().__init__(f"score sequence is not realizable: {witness.describe()}")
        self.witness = witness


class BlowupTooLarge(RuntimeError):
    """Blow-up would exceed the configured vertex cap."""

    def __init__(self, vertices: int, cap: int):
        super().__init__(
            f"blow-up needs {vertices} vertices but the cap is {cap}; "
            "perturb the sequence first to shrink its denominators, "
            "or raise the cap"
        )
        self.vertices = vertices
        self.cap = cap


class InternalError(RuntimeError):
    """A postcondition that should be unreachable failed; indicates a bug."""


def binom2(k: int) -> int:
    """k choose 2, the edge count of a complete graph on k vertices."""
    if k < 0:
        raise ValueError(f"binom2 needs k >= 0, got {k}")
    return k * (k - 1) // 2


def parse_rational(text: str) -> Fraction:
    """Parse "k", "p/q" (q > 0), or a finite decimal "a.b" exactly.

    Decimals become digits over a power of ten and are then reduced, so
    "1.25" is 5/4 and "0.6" is 3/5. Anything else (exponents, incomplete
    decimals, whitespace padding) is rejected.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_rational(value: Fraction) -> str:
    """Render a Fraction so that parse_rational round-trips it exactly."""
    return str(value)


def as_scores(values: Iterable[ScoreInput]) -> tuple[Fraction, ...]:
    """Coerce an iterable of exact values into a score tuple.

    Accepts Fractions, ints, and rational literals. Floats are rejected:
    accepting them would silently launder binary rounding error into a
    pipeline whose whole point is exactness.
    """
    out = []
    for v in values:
        if isinstance(v, Fraction):
            out.append(v)
        elif isinstance(v, bool):
            raise TypeError(f"not a rational value: {v!r}")
        elif isinstance(v, int):
            out.append(Fraction(v))
        elif isinstance(v, str):
            out.append(parse_rational(v))
        else:
            raise TypeError(f"not an exact rational value: {v!r}")
    return tuple(out)


def validate_scores(seq: Sequence[Fraction]) -> None:
    """Reject negative entries; called at every score-sequence boundary."""
    for i, v in enumerate(seq):
        if v < 0:
            raise ValueError(f"score {i + 1} is negative: {v}")


def integer_scores(seq: Sequence[Fraction]) -> tuple[int, ...]:
    """Return the entries as ints, or raise if any has denominator > 1."""
    for i, v in enumerate(seq):
        if v.denominator != 1:
            raise ValueError(f"score {i + 1} is not an integer: {v}")
    return tuple(v.numerator for v in seq)


def lcm_denominators(seq: Sequence[Fraction]) -> int:
    """Least common multiple of all entry denominators (1 when empty).

    Fractions are stored normalized, so integer entries contribute 1.
    """
    return math.lcm(*(v.denominator for v in seq))


@dataclass(frozen=True)
class Witness:
    """Certificate that a sequence fails the realizability condition.

    `indices` are 1-based positions into the checked sequence, sorted
    ascending. For a subset deficit, the entries at `indices` sum to less
    than C(k, 2) and `deficit` is the positive gap; for a full-sum
    mismatch, `indices` is every position and `deficit` is the (nonzero,
    possibly negative) difference C(n, 2) - sum.
    """

    indices: tuple[int, ...]
    deficit: Fraction
    kind: str

    def __post_init__(self):
        if self.kind not in (SUBSET_DEFICIT, FULL_SUM_MISMATCH):
            raise ValueError(f"unknown witness kind: {self.kind!r}")
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("witness indices must be sorted and distinct")
        if self.kind == SUBSET_DEFICIT and self.deficit <= 0:
            raise ValueError("subset-deficit witness needs a positive deficit")
        if self.kind == FULL_SUM_MISMATCH and self.deficit == 0:
            raise ValueError("full-sum-mismatch witness needs a nonzero deficit")

    def holds_for(self, seq: Sequence[Fraction]) -> bool:
        """Re-derive the violation against `seq`; used by tests and `verify`."""
        if any(not 1 <= i <= len(seq) for i in self.indices):
            return False
        subtotal = sum((seq[i - 1] for i in self.indices), Fraction(0))
        if self.kind == SUBSET_DEFICIT:
            return self.deficit == binom2(len(self.indices)) - subtotal
        return (
            self.indices == tuple(range(1, len(seq) + 1))
            and self.deficit == binom2(len(seq)) - subtotal
        )

    def describe(self) -> str:
        if self.kind == SUBSET_DEFICIT:
            return (
                f"entries {list(self.indices)} fall short of "
                f"C({len(self.indices)},2) by {self.deficit}"
            )
        return f"total misses C({len(self.indices)},2) by {self.deficit}"

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "deficit": format_rational(self.deficit),
            "kind": self.kind,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Witness":
        return cls(
            indices=tuple(int(i) for i in data["indices"]),
            deficit=parse_rational(str(data["deficit"])),
            kind=data["kind"],
        )


class Tournament:
    """An orientation of the complete graph on n labeled vertices.

    Row u is an int bitmask whose bit v is set iff the edge u -> v is
    present. The constructor checks antisymmetry (exactly one direction
    per pair) and an empty diagonal, so an instance is valid by
    construction.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        rows = tuple(rows)
        for u, row in enumerate(rows):
            if row < 0 or row >> n:
                raise ValueError(f"row {u} has bits outside 0..{n - 1}")
            if (row >> u) & 1:
                raise ValueError(f"self-loop at vertex {u}")
        for u in range(n):
            ru = rows[u]
            for v in range(u + 1, n):
                if ((ru >> v) ^ (rows[v] >> u)) & 1 == 0:
                    raise ValueError(
                        f"pair ({u}, {v}) is not oriented exactly once"
                    )
        self.n = n
        self.rows = rows

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def score(self, u: int) -> int:
        return self.rows[u].bit_count()

    def scores(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Directed edges as 1-based pairs, one per unordered pair, in
        lexicographic order of the unordered pair."""
        for u in range(self.n):
            ru = self.rows[u]
            for v in range(u + 1, self.n):
                if (ru >> v) & 1:
                    yield (u + 1, v + 1)
                else:
                    yield (v + 1, u + 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tournament)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Tournament(n={self.n}, scores={list(self.scores())})"

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "Tournament":
        n = int(data["n"])
        rows = [0] * n
        seen = set()
        edges = data["edges"]
        if len(edges) != binom2(n):
            raise ValueError(
                f"expected {binom2(n)} edges for n={n}, got {len(edges)}"
            )
        for e in edges:
            u, v = (int(x) for x in e)
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise ValueError(f"bad edge {e!r}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"pair {key} appears more than once")
            seen.add(key)
            rows[u - 1] |= 1 << (v - 1)
        return cls(n, rows)


class GeneralizedTournament:
    """Complete graph with exact rational edge weights in [0, 1].

    Off-diagonal weights of a pair sum to exactly 1 and the diagonal is
    zero; the constructor validates all three conditions.
    """

    __slots__ = ("n", "weights")

    def __init__(self, n: int, weights: Sequence[Sequence[Fraction]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(weights) != n or any(len(row) != n for row in weights):
            raise ValueError(f"weight matrix must be {n}x{n}")
        weights = tuple(tuple(row) for row in weights)
        one = Fraction(1)
        for i in range(n):
            if weights[i][i] != 0:
                raise ValueError(f"diagonal weight at {i} is not zero")
            for j in range(i + 1, n):
                wij, wji = weights[i][j], weights[j][i]
                if not (0 <= wij <= 1 and 0 <= wji <= 1):
                    raise ValueError(f"weight for pair ({i}, {j}) outside [0, 1]")
                if wij + wji != one:
                    raise ValueError(
                        f"weights for pair ({i}, {j}) sum to {wij + wji}, not 1"
                    )
        self.n = n
        self.weights = weights

    def scores(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self.weights)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GeneralizedTournament)
            and self.n == other.n
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.n, self.weights))

    def __repr__(self):
        return (
            f"GeneralizedTournament(n={self.n}, "
            f"scores={[str(s) for s in self.scores()]})"
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "weights": [[format_rational(w) for w in row] for row in self.weights],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GeneralizedTournament":
        n = int(data["n"])
        weights = [
            [parse_rational(str(w)) for w in row] for row in data["weights"]
        ]
        return cls(n, weights)


def scores_to_json(seq: Sequence[Fraction]) -> dict:
    return {"scores": [format_rational(v) for v in seq]}


def scores_from_json(data: dict) -> tuple[Fraction, ...]:
    return as_scores(str(s) for s in data["scores"])
