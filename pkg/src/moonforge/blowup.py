"""Lift rational score sequences to integer ones, realize, and average back.

Each target entry d_i becomes a cluster of m vertices with integer scores
m*d_i + b_l, where b is a fixed base score sequence on m vertices and m is
a common multiple of the target denominators. Realizing the lifted
sequence and averaging the cross-cluster edge directions yields a
generalized tournament whose row sums equal the targets exactly, with
every weight a multiple of 1/m^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    BlowupTooLarge,
    GeneralizedTournament,
    Infeasible,
    InternalError,
    ScoreInput,
    Tournament,
    as_scores,
    lcm_denominators,
    validate_scores,
)
from .feasibility import check_fast
from .realize import realize_integer

VERTEX_CAP = 5000


@dataclass(frozen=True)
class BlowupPlan:
    """Recipe for one blow-up: cluster (i, l) gets score m*targets[i] + base[l].

    Vertex (i, l) of the lifted sequence sits at index i*m + l, i and l
    0-based; every consumer of the realized tournament relies on this
    layout.
    """

    n: int
    m: int
    base: tuple[int, ...]
    targets: tuple[Fraction, ...]
    lifted: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "base": list(self.base),
            "targets": [str(t) for t in self.targets],
            "lifted": list(self.lifted),
        }


def base_sequence(m: int) -> tuple[int, ...]:
    """Scores (0, 1, ..., m-1) of the transitive tournament on m vertices.

    Any valid base would do; the transitive one makes the worst-case
    within-cluster sums exact and keeps outputs deterministic.
    """
    if m < 1:
        raise ValueError(f"cluster size must be positive, got {m}")
    return tuple(range(m))


def blowup_scores(targets: Iterable[ScoreInput], m: int) -> BlowupPlan:
    """Lift feasible rational targets to an integer sequence on m*n vertices."""
    scores = as_scores(targets)
    validate_scores(scores)
    verdict = check_fast(scores)
    if not verdict.feasible:
        raise Infeasible(verdict.witness)
    lcm = lcm_denominators(scores)
    if m < 1 or m % lcm:
        raise ValueError(
            f"blow-up factor {m} must be a positive multiple of the "
            f"denominator lcm {lcm}"
        )
    base = base_sequence(m)
    lifted = tuple(
        int(m * d) + b for d in scores for b in base
    )
    plan = BlowupPlan(
        n=len(scores), m=m, base=base, targets=scores, lifted=lifted
    )
    if not check_fast(lifted).feasible:
        raise InternalError("lifted sequence of a feasible target is infeasible")
    return plan


def cluster_average(h: Tournament, n: int, m: int) -> GeneralizedTournament:
    """Average cross-cluster edge directions into exact weights.

    Weight (i, j) is the fraction of the m^2 ordered cross pairs pointing
    from cluster i to cluster j, so opposing weights sum to 1 by
    construction and denominators divide m^2.
    """
    if n < 0 or m < 1 or h.n != n * m:
        raise ValueError(
            f"tournament has {h.n} vertices, expected {n} clusters of size {m}"
        )
    cluster_mask = (1 << m) - 1
    masks = [cluster_mask << (j * m) for j in range(n)]
    mm = m * m
    weights = []
    for i in range(n):
        row_bits = h.rows[i * m : (i + 1) * m]
        row = []
        for j in range(n):
            if i == j:
                row.append(Fraction(0))
            else:
                crossing = sum((bits & masks[j]).bit_count() for bits in row_bits)
                row.append(Fraction(crossing, mm))
        weights.append(row)
    return GeneralizedTournament(n, weights)


def realize_rational(
    targets: Iterable[ScoreInput],
    cap: int = VERTEX_CAP,
    greedy: bool = False,
) -> GeneralizedTournament:
    """Blow up, realize, and average: exact rational scores end to end.

    Uses the minimal blow-up factor (the lcm of the target denominators).
    Raises BlowupTooLarge instead of building past `cap` vertices, since
    the lcm of user denominators is unbounded.
    """
    scores = as_scores(targets)
    validate_scores(scores)
    verdict = check_fast(scores)
    if not verdict.feasible:
        raise Infeasible(verdict.witness)
    n = len(scores)
    m = lcm_denominators(scores)
    if m * n > cap:
        raise BlowupTooLarge(m * n, cap)
    plan = blowup_scores(scores, m)
    lifted_tournament = realize_integer(plan.lifted, greedy=greedy)
    averaged = cluster_average(lifted_tournament, n, m)
    if averaged.scores() != scores:
        raise InternalError("cluster averaging lost the target scores")
    return averaged


def check_partition_inequalities(
    targets: Iterable[ScoreInput], m: int, j: Sequence[int]
) -> bool:
    """Evaluate the three sufficient inequalities for a lifted subset.

    A subset of the lifted sequence picks j_i cells from cluster i; with
    j ascending, the subset condition on the lifted scores follows from:

      (1) sum j_i * d_i            >= sum j_i * (n - i)
      (2) worst-case base picks    >= (sum j_i^2 - sum j_i) / 2
      (3) m * sum j_i * (n - i)    >= ((sum j_i)^2 - sum j_i^2) / 2

    where (2) charges each cluster the j_i smallest base scores (exact for
    the transitive base). The caller orders the targets so d_i is paired
    against weight n - i.
    """
    scores = as_scores(targets)
    n = len(scores)
    if m < 1:
        raise ValueError(f"cluster size must be positive, got {m}")
    sizes = list(j)
    if len(sizes) != n or any(not isinstance(x, int) for x in sizes):
        raise ValueError(f"partition must be {n} integers")
    if any(x < 0 or x > m for x in sizes) or sizes != sorted(sizes):
        raise ValueError("partition sizes must satisfy 0 <= j_1 <= ... <= j_n <= m")

    weights = [n - i for i in range(1, n + 1)]
    lhs1 = sum((ji * di for ji, di in zip(sizes, scores)), Fraction(0))
    rhs1 = sum(ji * wi for ji, wi in zip(sizes, weights))

    base = sorted(base_sequence(m))
    prefix = [0]
    for b in base:
        prefix.append(prefix[-1] + b)
    lhs2 = sum(prefix[ji] for ji in sizes)
    sum_j = sum(sizes)
    sum_j2 = sum(ji * ji for ji in sizes)
    rhs2 = (sum_j2 - sum_j) // 2

    lhs3 = m * rhs1
    rhs3 = (sum_j * sum_j - sum_j2) // 2

    return lhs1 >= rhs1 and lhs2 >= rhs2 and lhs3 >= rhs3
