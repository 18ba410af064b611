import itertools
import logging
import multiprocessing
from collections import defaultdict
from typing import Iterable, Sequence

from src.domain.errors import InvalidIndexError, NoQuadruplesError
from src.domain.models import (
    Edge,
    GoodQuadruple,
    GroupSpec,
    ProductVector,
    QuadrupleIndex,
    TripleSystem,
)
from src.services.groups import addition_table

logger = logging.getLogger(__name__)

Adjacency = tuple[frozenset[int], ...]
Found = list[tuple[ProductVector, GoodQuadruple]]

_worker_state: dict = {}


def _adjacency(system: TripleSystem) -> Adjacency:
    right: list[set[int]] = [set() for _ in range(system.order)]
    for a, b in system.edges:
        right[a].add(b)
    return tuple(frozenset(r) for r in right)


def _scan_bucket(
    bucket: Sequence[Edge], adjacency: Adjacency, table: Sequence[Sequence[int]]
) -> Found:
    """
    Test every ordered pair of edges (a, b), (c, d) sharing one product.

    The pair is a good quadruple when a != c and the cross edges (a, d), (c, b) exist.
    """
    found: Found = []
    for a, b in bucket:
        row_a, right_a = table[a], adjacency[a]
        for c, d in bucket:
            if c == a or d not in right_a or b not in adjacency[c]:
                continue
            found.append(
                (ProductVector(table[c][b], row_a[b], row_a[d]), GoodQuadruple(a, b, c, d))
            )
    return found


def _init_worker(adjacency: Adjacency, table: Sequence[Sequence[int]]) -> None:
    _worker_state["adjacency"] = adjacency
    _worker_state["table"] = table


def _scan_bucket_in_worker(bucket: Sequence[Edge]) -> Found:
    return _scan_bucket(bucket, _worker_state["adjacency"], _worker_state["table"])


def _build_index(group: GroupSpec, found: Iterable[tuple[ProductVector, GoodQuadruple]]) -> QuadrupleIndex:
    grouped: dict[ProductVector, list[GoodQuadruple]] = defaultdict(list)
    for x, q in found:
        grouped[x].append(q)
    return QuadrupleIndex(
        group=group, buckets={x: tuple(sorted(grouped[x])) for x in sorted(grouped)}
    )


def enumerate_good_quadruples(system: TripleSystem, workers: int = 1) -> QuadrupleIndex:
    """
    Enumerate all S-good quadruples, grouped by product vector.

    Work is one item per product bucket, Σ deg(p)² pair tests in total. With
    ``workers > 1`` the buckets are scanned by a process pool; results are merged
    in product order, so the index does not depend on the worker count.

    Args:
        system (TripleSystem): The triple system S.
        workers (int): Number of worker processes.

    Returns:
        QuadrupleIndex: Buckets sorted by vector, quadruples sorted by (a, b, c, d).
    """
    table = addition_table(system.group)
    adjacency = _adjacency(system)
    buckets = list(system.product_index.values())
    if workers > 1 and len(buckets) > 1:
        chunksize = max(1, len(buckets) // (4 * workers))
        with multiprocessing.Pool(
            processes=workers, initializer=_init_worker, initargs=(adjacency, table)
        ) as pool:
            results = pool.map(_scan_bucket_in_worker, buckets, chunksize=chunksize)
    else:
        results = [_scan_bucket(bucket, adjacency, table) for bucket in buckets]
    index = _build_index(system.group, itertools.chain.from_iterable(results))
    logger.debug(
        "enumerated %d good quadruples in %d buckets", index.total, len(index)
    )
    return index


def enumerate_good_quadruples_naive(system: TripleSystem) -> QuadrupleIndex:
    """O(n⁴) oracle: test every (a, b, c, d) in A⁴ against the definition."""
    n = system.order
    return _build_index(
        system.group,
        (
            (product_vector(system.group, q), q)
            for q in itertools.starmap(GoodQuadruple, itertools.product(range(n), repeat=4))
            if is_good_quadruple(system, q)
        ),
    )


def is_good_quadruple(system: TripleSystem, q: Sequence[int]) -> bool:
    """
    True iff a != c, a + b = c + d and (a,b), (a,d), (c,b), (c,d) are all edges of S.

    Raises:
        InvalidIndexError: If a coordinate is not a rank of the group.
    """
    n = system.order
    if len(q) != 4 or not all(0 <= v < n for v in q):
        raise InvalidIndexError(f"{tuple(q)} is not a quadruple of ranks below {n}")
    a, b, c, d = q
    table = addition_table(system.group)
    edges = system.edges
    return (
        a != c
        and table[a][b] == table[c][d]
        and (a, b) in edges
        and (a, d) in edges
        and (c, b) in edges
        and (c, d) in edges
    )


def product_vector(group: GroupSpec, q: GoodQuadruple) -> ProductVector:
    table = addition_table(group)
    a, b, c, d = q
    return ProductVector(table[c][b], table[a][b], table[a][d])


def quadruple_edges(q: GoodQuadruple) -> tuple[Edge, Edge, Edge, Edge]:
    a, b, c, d = q
    return (a, b), (a, d), (c, b), (c, d)


def are_disjoint(q: GoodQuadruple, other: GoodQuadruple) -> bool:
    return not ({q.a, q.c} & {other.a, other.c}) and not ({q.b, q.d} & {other.b, other.d})


def q_max(index: QuadrupleIndex) -> tuple[ProductVector, int]:
    """
    The product vector with the largest bucket.

    Ties go to the lexicographically smallest (x1, x2, x3).

    Raises:
        NoQuadruplesError: If the index is empty.
    """
    if not index.buckets:
        raise NoQuadruplesError("the index holds no good quadruples")
    x = min(index.buckets, key=lambda v: (-len(index.buckets[v]), v))
    return x, len(index.buckets[x])


def disjoint_subfamily(quadruples: Iterable[GoodQuadruple]) -> list[GoodQuadruple]:
    """
    Greedy pairwise disjoint subfamily of one bucket.

    Quadruples are scanned in (a, b, c, d) order and kept when disjoint from all kept
    ones. Within a bucket every quadruple conflicts with at most two others, so at
    least a third of the bucket survives.
    """
    used_first: set[int] = set()
    used_second: set[int] = set()
    kept = []
    for q in sorted(set(quadruples)):
        if {q.a, q.c} & used_first or {q.b, q.d} & used_second:
            continue
        kept.append(q)
        used_first.update((q.a, q.c))
        used_second.update((q.b, q.d))
    return kept


def full_system_bucket_size(group: GroupSpec, x: ProductVector) -> int:
    """Closed form of q_S(x) for the full system: n when x1 != x2 and x1 + x3 = 2·x2, else 0."""
    table = addition_table(group)
    if x.x1 != x.x2 and table[x.x1][x.x3] == table[x.x2][x.x2]:
        return group.order
    return 0
