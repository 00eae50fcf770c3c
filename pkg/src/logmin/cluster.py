"""Seeded k-means over small feature sets, with an exhaustive oracle.

Determinism contract: identical (points, k, seed) produce a bit-identical
Clustering. All random draws come from Python's ``random.Random`` (the
MT19937 Mersenne Twister, stable across platforms and versions), and are
made over a canonically sorted copy of the input, so point order cannot
leak into the result.

Algorithm: k-means++ initialization (D^2 sampling), then Lloyd rounds of
assign-to-nearest / recompute-means until the assignment reaches a fixed
point or 100 rounds elapse. Distance is squared Euclidean; assignment ties
go to the lowest cluster index. A cluster that empties is refilled with
the point currently farthest from its centroid (donors must keep at least
one member), which never increases the objective.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import EmptyInput, NotOrderable, OracleTooLarge, TooManyClusters

MAX_LLOYD_ROUNDS = 100


@dataclass(frozen=True)
class FeaturePoint:
    """One named point; all points in a clustering share vector length."""

    key: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class Clustering:
    """Result of one clustering run.

    assignments maps every input key to a cluster index in [0, k);
    centroids[i] is the mean of cluster i's points; sse is the within-
    cluster sum of squared distances; iterations counts Lloyd rounds.
    """

    assignments: dict[str, int]
    centroids: tuple[tuple[float, ...], ...]
    sse: float
    iterations: int

    @property
    def k(self) -> int:
        return len(self.centroids)

    def members(self, index: int) -> list[str]:
        return sorted(key for key, c in self.assignments.items() if c == index)

    def partition(self) -> frozenset[frozenset[str]]:
        """Label-free view, for comparing partitions across runs or engines."""
        groups: dict[int, set[str]] = {}
        for key, c in self.assignments.items():
            groups.setdefault(c, set()).add(key)
        return frozenset(frozenset(g) for g in groups.values())

    def to_json(self) -> bytes:
        """Canonical byte serialization; equal clusterings serialize identically."""
        payload = {
            "assignments": self.assignments,
            "centroids": [list(c) for c in self.centroids],
            "sse": self.sse,
            "iterations": self.iterations,
        }
        return (json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _sqdist(a: tuple[float, ...], b: tuple[float, ...]) -> float:
    return sum((x - y) ** 2 for x, y in zip(a, b))


def _mean(vectors: Sequence[tuple[float, ...]]) -> tuple[float, ...]:
    dim = len(vectors[0])
    return tuple(sum(v[i] for v in vectors) / len(vectors) for i in range(dim))


def _canonical(points: Sequence[FeaturePoint]) -> list[FeaturePoint]:
    ordered = sorted(points, key=lambda p: (p.values, p.key))
    keys = [p.key for p in ordered]
    if len(set(keys)) != len(keys):
        raise ValueError("point keys must be unique")
    dims = {len(p.values) for p in ordered}
    if len(dims) > 1:
        raise ValueError("all points must share one vector length")
    for p in ordered:
        if not all(math.isfinite(v) for v in p.values):
            raise ValueError(f"point {p.key!r} has a non-finite value")
    return ordered


def _validate(points: Sequence[FeaturePoint], k: int) -> list[FeaturePoint]:
    if not points:
        raise EmptyInput("no points to cluster")
    ordered = _canonical(points)
    distinct = len({p.values for p in ordered})
    if k > distinct:
        raise TooManyClusters(f"k={k} exceeds the {distinct} distinct point value(s)")
    return ordered


def _assign(values: list[tuple[float, ...]], centroids: list[tuple[float, ...]]) -> list[int]:
    assignment = []
    for v in values:
        best, best_d = 0, _sqdist(v, centroids[0])
        for c in range(1, len(centroids)):
            d = _sqdist(v, centroids[c])
            if d < best_d:
                best, best_d = c, d
        assignment.append(best)
    return assignment


def _sse(values: list[tuple[float, ...]], assignment: list[int], centroids: list[tuple[float, ...]]) -> float:
    return sum(_sqdist(v, centroids[c]) for v, c in zip(values, assignment))


def _init_plus_plus(values: list[tuple[float, ...]], k: int, rng: random.Random) -> list[tuple[float, ...]]:
    centers = [values[rng.randrange(len(values))]]
    d2 = [_sqdist(v, centers[0]) for v in values]
    while len(centers) < k:
        total = sum(d2)
        # total > 0 is guaranteed while fewer than `distinct` centers exist
        pick = rng.random() * total
        acc = 0.0
        chosen = max(i for i, w in enumerate(d2) if w > 0)
        for i, w in enumerate(d2):
            acc += w
            if pick < acc:
                chosen = i
                break
        centers.append(values[chosen])
        d2 = [min(old, _sqdist(v, centers[-1])) for old, v in zip(d2, values)]
    return centers


def _update(
    values: list[tuple[float, ...]], assignment: list[int], k: int
) -> tuple[list[tuple[float, ...]], list[int]]:
    """Recompute centroids as member means; refill empty clusters.

    Returns the new centroids plus the (possibly adjusted) assignment.
    """
    assignment = list(assignment)
    members: dict[int, list[int]] = {c: [] for c in range(k)}
    for i, c in enumerate(assignment):
        members[c].append(i)

    centroids: list[tuple[float, ...] | None] = [
        _mean([values[i] for i in idx]) if idx else None for idx in members.values()
    ]
    for empty in range(k):
        if centroids[empty] is not None:
            continue
        # Steal the point farthest from its centroid, from a donor with >= 2 members.
        best, best_d = -1, -1.0
        for i, c in enumerate(assignment):
            if len(members[c]) < 2:
                continue
            d = _sqdist(values[i], centroids[c])
            if d > best_d:
                best, best_d = i, d
        donor = assignment[best]
        members[donor].remove(best)
        members[empty].append(best)
        assignment[best] = empty
        centroids[empty] = values[best]
        centroids[donor] = _mean([values[i] for i in members[donor]])
    return centroids, assignment  # type: ignore[return-value]


def kmeans(
    points: Sequence[FeaturePoint],
    k: int,
    seed: int,
    sse_history: list[float] | None = None,
) -> Clustering:
    """Cluster points into k groups, deterministically for a given seed.

    When `sse_history` is given, the objective value after every Lloyd
    round is appended to it (a non-increasing sequence).
    """
    ordered = _validate(points, k)
    values = [p.values for p in ordered]
    rng = random.Random(seed)

    centroids = _init_plus_plus(values, k, rng)
    prev: list[int] | None = None
    iterations = 0
    while iterations < MAX_LLOYD_ROUNDS:
        assignment = _assign(values, centroids)
        if assignment == prev:
            break
        iterations += 1
        centroids, assignment = _update(values, assignment, k)
        prev = assignment
        if sse_history is not None:
            sse_history.append(_sse(values, assignment, centroids))

    assert prev is not None
    return Clustering(
        assignments={p.key: c for p, c in zip(ordered, prev)},
        centroids=tuple(tuple(c) for c in centroids),
        sse=_sse(values, prev, centroids),
        iterations=iterations,
    )


def _surjective_assignments(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All assignments of n points onto exactly k clusters, one per set
    partition, in restricted-growth (first-appearance) order."""
    assignment = [0] * n

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if used + (n - i) < k:
            return
        if i == n:
            yield tuple(assignment)
            return
        for label in range(min(used + 1, k)):
            assignment[i] = label
            yield from rec(i + 1, used + (1 if label == used else 0))

    yield from rec(0, 0)


def brute_force_optimal(points: Sequence[FeaturePoint], k: int) -> Clustering:
    """Exact minimum-SSE partition by exhaustive enumeration.

    Clusters are numbered in order of first appearance over the canonical
    point order; SSE ties go to the first assignment enumerated. Bounded to
    10 points and k <= 3 to keep the enumeration honest.
    """
    if len(points) > 10 or k > 3:
        raise OracleTooLarge(f"oracle bounded to 10 points / k<=3, got {len(points)} / k={k}")
    ordered = _validate(points, k)
    values = [p.values for p in ordered]

    best_assignment: tuple[int, ...] | None = None
    best_centroids: list[tuple[float, ...]] = []
    best_sse = math.inf
    for assignment in _surjective_assignments(len(values), k):
        groups: dict[int, list[tuple[float, ...]]] = {}
        for v, c in zip(values, assignment):
            groups.setdefault(c, []).append(v)
        centroids = [_mean(groups[c]) for c in range(k)]
        sse = _sse(values, list(assignment), centroids)
        if sse < best_sse:
            best_assignment, best_centroids, best_sse = assignment, centroids, sse

    assert best_assignment is not None
    return Clustering(
        assignments={p.key: c for p, c in zip(ordered, best_assignment)},
        centroids=tuple(tuple(c) for c in best_centroids),
        sse=best_sse,
        iterations=0,
    )


def label_clusters(clustering: Clustering) -> list[str]:
    """Labels "L1" (highest centroid) through "Lk", indexed by cluster.

    Only defined for 1-D centroids; duplicate centroids rank by cluster
    index. Returns a list where entry i is cluster i's label.
    """
    if any(len(c) != 1 for c in clustering.centroids):
        raise NotOrderable("labelling requires 1-D centroids")
    order = sorted(range(clustering.k), key=lambda c: (-clustering.centroids[c][0], c))
    labels = [""] * clustering.k
    for rank, c in enumerate(order, start=1):
        labels[c] = f"L{rank}"
    return labels
