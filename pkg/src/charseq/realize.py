"""Constructive realization of relative sequences on a plane curve.

A sequence (n_i) with n_i >= i and steps in {0, 1} is admissible, and every
admissible sequence is the measured sequence of some point group on an
irreducible plane curve.  The construction walks the proof backwards:
strip plateaus down to a pure staircase (a transverse section), then re-add
one point per plateau, each located through the degree filtration of the
ideal of the current group.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import modlin
from .constructions import fold_seed, split_section
from .errors import DomainError, GeometryError
from .liaison import RelCharSeq, minimal_delta_seq, phi_rel
from .pointlab import (
    SMALL_FIELD_SCAN,
    PlaneCurve,
    PointGroup,
    ProjPoint,
    evaluation_matrix,
    measure_rcs,
    point_group,
    point_pool,
    random_points_on_curve,
    rational_points,
)


def is_admissible(seq: Sequence[int]) -> bool:
    """Whether n_i >= i and n_i <= n_{i+1} <= n_i + 1 throughout."""
    entries = list(seq)
    if any(n < i for i, n in enumerate(entries)):
        return False
    return all(a <= b <= a + 1 for a, b in zip(entries, entries[1:]))


def seq_degree(seq: Sequence[int]) -> int:
    return sum(n - i for i, n in enumerate(seq))


def add_case(rel: RelCharSeq, level: int) -> RelCharSeq:
    """Raise the last entry equal to ``level - 1`` up to ``level``.

    This is the one-point move on the box diagram; the move must keep the
    sequence admissible or the addition is rejected.
    """
    n = list(rel.entries)
    candidates = [i for i, v in enumerate(n) if v == level - 1]
    if not candidates:
        raise DomainError(f"inadmissible addition: no entry has value {level - 1}")
    i = candidates[-1]
    n[i] = level
    if not is_admissible(n):
        raise DomainError(f"inadmissible addition: raising index {i} to {level} breaks the steps")
    return RelCharSeq(tuple(n), rel.ambient)


def _candidate_points(
    X: PlaneCurve, candidates: Iterable[ProjPoint] | None, allow_pool: bool
) -> tuple[ProjPoint, ...]:
    if candidates is not None:
        return tuple(sorted(set(candidates)))
    if X.p <= SMALL_FIELD_SCAN:
        return rational_points(X)
    if not allow_pool:
        raise GeometryError(
            "rational scan infeasible: supply a candidate pool for p > "
            f"{SMALL_FIELD_SCAN} or allow the sampled pool"
        )
    return point_pool(X, 600)


def filtration_points(
    X: PlaneCurve,
    Y: PointGroup,
    t: int,
    candidates: Iterable[ProjPoint] | None = None,
    allow_pool: bool = True,
) -> tuple[ProjPoint, ...]:
    """Rational points of X killed by every form of degree <= t through Y.

    Checking degree t alone suffices: lower-degree forms through Y reappear
    among their degree-t multiples.  When the filtration is cut out by an
    actual form the rational result is exact at any modulus (the form is
    intersected with X through resultants); only the unconstrained stages,
    which are all of X, fall back to ``candidates`` or the sampled pool
    above the full-scan limit.
    """
    if t >= 0 and Y.size == 0:
        return ()
    if candidates is not None or X.p <= SMALL_FIELD_SCAN:
        cands = _candidate_points(X, candidates, allow_pool)
        if t < 0:
            return cands
        kernel = modlin.kernel_basis(evaluation_matrix(Y.points, t, Y.p), Y.p)
        if kernel.shape[0] == 0:
            return cands
        return _filter_by_kernel(cands, kernel, t, X.p)
    if t < 0:
        return _candidate_points(X, None, allow_pool)
    kernel = modlin.kernel_basis(evaluation_matrix(Y.points, t, Y.p), Y.p)
    if kernel.shape[0] == 0:
        return _candidate_points(X, None, allow_pool)
    base = _kernel_section(X, kernel, t)
    if base is None:
        # constraints vanish on all of X (multiples of the curve itself);
        # filtering the pool is then a no-op but keeps the fallback safe
        return _filter_by_kernel(_candidate_points(X, None, allow_pool), kernel, t, X.p)
    return _filter_by_kernel(base, kernel, t, X.p)


def _filter_by_kernel(points, kernel, t: int, p: int) -> tuple[ProjPoint, ...]:
    pts = tuple(sorted(set(points)))
    if not pts:
        return ()
    values = evaluation_matrix(pts, t, p)
    hits = (values @ kernel.T) % p
    return tuple(q for q, row in zip(pts, hits) if not row.any())


def _kernel_section(X: PlaneCurve, kernel, t: int) -> tuple[ProjPoint, ...] | None:
    """Rational points of X on some kernel form, exactly; None when every
    kernel form vanishes on all of X."""
    from .constructions import curve_from_vector
    from .pointlab import section_points

    for row in kernel:
        try:
            g = curve_from_vector(X.p, t, row)
            return section_points(X, g, require_transverse=False).points
        except GeometryError:
            continue  # zero vector, or a form sharing a component with X
    return None


def addable_points(
    X: PlaneCurve,
    Y: PointGroup,
    level: int,
    candidates: Iterable[ProjPoint] | None = None,
    allow_pool: bool = True,
) -> tuple[ProjPoint, ...]:
    """All candidate points whose addition raises an entry up to ``level``.

    These are the points separated from Y exactly in degree ``level - 1``:
    inside the filtration at ``level - 2`` but outside it at ``level - 1``.
    """
    rel = measure_rcs(X, Y)
    try:
        add_case(rel, level)
    except DomainError:
        return ()
    outer = filtration_points(X, Y, level - 2, candidates, allow_pool)
    inner = set(filtration_points(X, Y, level - 1, candidates, allow_pool))
    return tuple(q for q in outer if q not in inner)


def can_add_at_level(
    X: PlaneCurve,
    Y: PointGroup,
    level: int,
    candidates: Iterable[ProjPoint] | None = None,
    allow_pool: bool = True,
) -> ProjPoint | None:
    """Witness point for a case addition at ``level``, or None.

    The witness returned is the minimum in coordinate order, so the result
    does not depend on scan order or thread count.
    """
    options = addable_points(X, Y, level, candidates, allow_pool)
    return min(options) if options else None


def _reduction_levels(target: Sequence[int]) -> tuple[list[int], list[int]]:
    """Strip plateaus from the target; returns (staircase, levels to re-add).

    Each step lowers the first entry that starts a plateau; re-adding boxes
    at the recorded values in reverse order rebuilds the target.
    """
    seq = list(target)
    levels: list[int] = []
    while True:
        j = next((i for i in range(len(seq) - 1) if seq[i + 1] == seq[i]), None)
        if j is None:
            return seq, levels
        levels.append(seq[j])
        seq[j] -= 1


def enumerate_admissible(d: int, max_degree: int) -> Iterator[tuple[int, ...]]:
    """Every admissible sequence of length d with degree at most max_degree."""
    if d < 1:
        raise DomainError("d must be >= 1")

    def extend(prefix: list[int], degree: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == d:
            yield tuple(prefix)
            return
        i = len(prefix)
        for step in (0, 1):
            nxt = prefix[-1] + step
            cost = nxt - i
            if cost < 0 or degree + cost > max_degree:
                continue
            yield from extend(prefix + [nxt], degree + cost)

    for n0 in range(max_degree + 1):
        yield from extend([n0], n0)


def realize(
    X: PlaneCurve,
    target: Sequence[int],
    seed: int = 0,
    candidates: Iterable[ProjPoint] | None = None,
    retries: int = 3,
) -> PointGroup:
    """Construct a point group on X whose measured sequence equals ``target``.

    The target is stripped to its staircase base (realized by a transverse
    section, or the empty group), then rebuilt one point at a time through
    the filtration witnesses.  Retries re-randomize both the base section
    and the witness choices; exhaustion raises GeometryError.
    """
    goal = tuple(int(v) for v in target)
    if len(goal) != X.degree:
        raise DomainError(f"target length {len(goal)} does not match curve degree {X.degree}")
    if not is_admissible(goal):
        raise DomainError(f"inadmissible target {goal}")
    staircase, levels = _reduction_levels(goal)
    base_degree = staircase[0]
    cand = tuple(candidates) if candidates is not None else None
    last_error = "no witness available"
    for attempt in range(max(retries, 1)):
        rng = random.Random(fold_seed(seed, attempt, 40699))
        try:
            if base_degree == 0:
                Y = point_group(X.p, (), X)
            else:
                _, pts = split_section(X, base_degree, rng.randrange(2**30))
                Y = point_group(X.p, pts, X)
            found = _realize_dfs(X, Y, list(reversed(levels)), rng, cand, budget=[600])
        except GeometryError as err:
            last_error = str(err)
            continue
        if found is not None and measure_rcs(X, found).entries == goal:
            return found
        last_error = "no rational witness chain reached the target"
    raise GeometryError(
        f"realization search exhausted for target {goal}: {last_error} "
        "(try a different seed or a larger modulus)"
    )


def _realize_dfs(
    X: PlaneCurve,
    Y: PointGroup,
    levels: list[int],
    rng: random.Random,
    candidates: tuple[ProjPoint, ...] | None,
    budget: list[int],
) -> PointGroup | None:
    # Depth-first over witness choices: a witness that exists over the
    # closure may be irrational, so a greedy chain can die and another
    # branch must be tried.
    if not levels:
        return Y
    if budget[0] <= 0:
        return None
    budget[0] -= 1
    level, rest = levels[0], levels[1:]
    options = list(addable_points(X, Y, level, candidates))
    rng.shuffle(options)
    for q in options:
        result = _realize_dfs(X, Y.union([q]), rest, rng, candidates, budget)
        if result is not None:
            return result
    return None


@dataclass(frozen=True)
class ScanTrial:
    degree: int
    measured: tuple[int, ...]
    dominated: bool
    disagreement_connex: bool

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "measured": list(self.measured),
            "dominated": self.dominated,
            "disagreement_connex": self.disagreement_connex,
        }


@dataclass(frozen=True)
class ScanReport:
    curve_degree: int
    section_degree: int
    trials: tuple[ScanTrial, ...]
    violations: int

    def to_json(self) -> dict:
        return {
            "curve_degree": self.curve_degree,
            "section_degree": self.section_degree,
            "trials": [t.to_json() for t in self.trials],
            "violations": self.violations,
        }


def conjecture_scan(X: PlaneCurve, s: int, trials: int, seed: int = 0) -> ScanReport:
    """Empirical scan of section-domination for random groups of degree s*d.

    For each trial group Y the Hilbert values are compared pointwise with
    the degree-s section's; the scan records domination failures and any
    non-connex disagreement set.  On a plane curve both properties are
    theorems, so the scan doubles as an end-to-end check of the machinery.
    """
    if s < 1 or trials < 0:
        raise DomainError("need s >= 1 and trials >= 0")
    d = X.degree
    section = minimal_delta_seq(d, s * d)  # r = 0: the full section staircase
    top = s + d
    out = []
    violations = 0
    for k in range(trials):
        Y = random_points_on_curve(X, s * d, fold_seed(seed, k, 5077))
        rel = measure_rcs(X, Y)
        diffs = [phi_rel(rel, l) - phi_rel(section, l) for l in range(top + 1)]
        dominated = all(v >= 0 for v in diffs)
        support = [l for l, v in enumerate(diffs) if v != 0]
        connex = not support or support == list(range(support[0], support[-1] + 1))
        if not (dominated and connex):
            violations += 1
        out.append(ScanTrial(s * d, rel.entries, dominated, connex))
    return ScanReport(d, s, tuple(out), violations)
