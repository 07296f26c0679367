"""Realizability checks for score sequences.

A sequence of non-negative rationals is the score sequence of some
(generalized) tournament iff every subset of entries sums to at least
C(k, 2) and the whole sequence sums to exactly C(n, 2). `check_fast`
decides this in O(n log n) via the sorted-prefix reduction; the literal
all-subsets quantifier lives in `check_exhaustive`, which doubles as the
oracle the fast path is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .core import (
    FULL_SUM_MISMATCH,
    SUBSET_DEFICIT,
    ScoreInput,
    Witness,
    as_scores,
    binom2,
    lcm_denominators,
    validate_scores,
)

EXHAUSTIVE_CAP = 20


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.feasible == (self.witness is not None):
            raise ValueError("verdict must carry a witness exactly when infeasible")

    def to_json(self) -> dict:
        out: dict = {"feasible": self.feasible}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def check_fast(seq: Iterable[ScoreInput]) -> FeasibilityVerdict:
    """Decide realizability via prefix sums of the ascending-sorted copy.

    For fixed subset size k, the k smallest entries minimize the sum, so
    the subset quantifier collapses to n prefix checks plus the full-sum
    equality. On failure the witness is the smallest violating prefix
    (mapped back to original positions), or the full-sum mismatch when
    every prefix is fine.
    """
    scores = as_scores(seq)
    validate_scores(scores)
    n = len(scores)
    order = sorted(range(n), key=scores.__getitem__)  # stable: ties keep input order
    running = Fraction(0)
    for k in range(1, n + 1):
        running += scores[order[k - 1]]
        need = binom2(k)
        if running < need:
            witness = Witness(
                indices=tuple(sorted(i + 1 for i in order[:k])),
                deficit=need - running,
                kind=SUBSET_DEFICIT,
            )
            return FeasibilityVerdict(False, witness)
    total = running if n else Fraction(0)
    if total != binom2(n):
        witness = Witness(
            indices=tuple(range(1, n + 1)),
            deficit=binom2(n) - total,
            kind=FULL_SUM_MISMATCH,
        )
        return FeasibilityVerdict(False, witness)
    return FeasibilityVerdict(True)


def check_exhaustive(
    seq: Iterable[ScoreInput], cap: int = EXHAUSTIVE_CAP
) -> FeasibilityVerdict:
    """Decide realizability by enumerating all 2^n subsets.

    Subsets are visited in lexicographic order of their sorted index
    tuples, so the witness is the lexicographically smallest violating
    subset. Entries are pre-scaled by the common denominator so the inner
    loop is integer-only.
    """
    scores = as_scores(seq)
    validate_scores(scores)
    n = len(scores)
    if n > cap:
        raise ValueError(f"exhaustive check capped at n <= {cap}, got {n}")

    scale = lcm_denominators(scores)
    scaled = [int(v * scale) for v in scores]
    # binom2(k) * scale for each subset size
    need = [binom2(k) * scale for k in range(n + 1)]

    # Walk subsets in lex order: extend with the next index while possible,
    # otherwise drop a maximal tail element and bump the new last index.
    stack: list[int] = []
    total = 0
    i = 0
    while True:
        if i < n:
            stack.append(i)
            total += scaled[i]
            if total < need[len(stack)]:
                witness = Witness(
                    indices=tuple(j + 1 for j in stack),
                    deficit=Fraction(need[len(stack)] - total, scale),
                    kind=SUBSET_DEFICIT,
                )
                return FeasibilityVerdict(False, witness)
            i += 1
        else:
            if not stack:
                break
            last = stack.pop()
            total -= scaled[last]
            i = last + 1
            if i >= n:
                if not stack:
                    break
                last = stack.pop()
                total -= scaled[last]
                i = last + 1

    full = sum(scaled)
    if full != need[n]:
        witness = Witness(
            indices=tuple(range(1, n + 1)),
            deficit=Fraction(need[n] - full, scale),
            kind=FULL_SUM_MISMATCH,
        )
        return FeasibilityVerdict(False, witness)
    return FeasibilityVerdict(True)


def max_deficit_excluding_first(seq: Iterable[ScoreInput]) -> Fraction:
    """Worst shortfall C(k+1, 2) - sum over proper subsets of entries 2..n.

    The caller arranges entry 1 to be a maximum. For each size k the
    k smallest remaining entries minimize the subset sum, so only the
    sorted prefixes of entries 2..n need checking. Feasible sequences
    keep this strictly below entry 1, which is exactly the room the
    perturbation step needs.
    """
    scores = as_scores(seq)
    n = len(scores)
    if n == 0:
        raise ValueError("sequence must be non-empty")
    rest = sorted(scores[1:])
    best = Fraction(0)  # k = 0: the empty subset
    running = Fraction(0)
    for k in range(1, n - 1):
        running += rest[k - 1]
        candidate = binom2(k + 1) - running
        if candidate > best:
            best = candidate
    return best
