import logging
import math
from collections import defaultdict
from decimal import Decimal
from typing import Collection, Iterable

import numpy as np

from src.domain.errors import InvalidIndexError, InvalidParameterError
from src.domain.models import Edge, GroupSpec, Triple, TripleSystem
from src.services.groups import addition_table

logger = logging.getLogger(__name__)

# Fixed sampling algorithm of random_system; part of the triple file contract.
SAMPLER = "pcg64-choice"


def product_index(group: GroupSpec, edges: Iterable[Edge]) -> dict[int, tuple[Edge, ...]]:
    """Index from product p to the sorted edges (a, b) with a + b = p, keys ascending."""
    table = addition_table(group)
    buckets: dict[int, list[Edge]] = defaultdict(list)
    for a, b in edges:
        buckets[table[a][b]].append((a, b))
    return {p: tuple(sorted(buckets[p])) for p in sorted(buckets)}


def build_system(group: GroupSpec, edges: Iterable[Edge]) -> TripleSystem:
    """
    Create a triple system from edge pairs of element ranks.

    Raises:
        InvalidIndexError: If an edge references a rank outside the group.
    """
    n = group.order
    edge_set = frozenset((int(a), int(b)) for a, b in edges)
    for a, b in edge_set:
        if not (0 <= a < n and 0 <= b < n):
            raise InvalidIndexError(f"edge ({a}, {b}) outside group of order {n}")
    return TripleSystem(
        group=group, edges=edge_set, product_index=product_index(group, edge_set)
    )


def full_system(group: GroupSpec) -> TripleSystem:
    n = group.order
    return build_system(group, ((a, b) for a in range(n) for b in range(n)))


def sample_size(order: int, density: float | Decimal | str) -> int:
    """Exact floor(c * n^2), computed in decimal so 0.4 * 100 is 40 and not 39."""
    return math.floor(Decimal(str(density)) * order * order)


def random_system(
    group: GroupSpec, density: float | Decimal | str, seed: int
) -> TripleSystem:
    """
    Sample exactly floor(c * n^2) distinct edges uniformly.

    The sampler is ``numpy.random.default_rng(seed).choice(n*n, k, replace=False)``
    with code ``x`` decoded as the edge (x // n, x % n).

    Args:
        group (GroupSpec): The ambient group.
        density (float | Decimal | str): The density c in [0, 1].
        seed (int): Seed of the generator.

    Returns:
        TripleSystem: The sampled system.

    Raises:
        InvalidParameterError: If c is outside [0, 1] or the seed is negative.
    """
    try:
        c = Decimal(str(density))
    except ArithmeticError as e:
        raise InvalidParameterError(f"density '{density}' is not a number") from e
    if not c.is_finite() or not 0 <= c <= 1:
        raise InvalidParameterError(f"density {density} outside [0, 1]")
    if seed < 0:
        raise InvalidParameterError(f"seed {seed} is negative")
    n = group.order
    k = sample_size(n, c)
    rng = np.random.default_rng(seed)
    codes = rng.choice(n * n, size=k, replace=False) if k else np.empty(0, dtype=int)
    logger.debug("sampled %d of %d edges with seed %d", k, n * n, seed)
    return build_system(group, ((int(x) // n, int(x) % n) for x in codes))


def restrict(
    system: TripleSystem,
    left: Collection[int],
    right: Collection[int],
    forbidden_products: Collection[int] = (),
) -> TripleSystem:
    """
    Keep exactly the edges (a, b) with a in ``left``, b in ``right`` and a + b not forbidden.

    Args:
        system (TripleSystem): The system to restrict.
        left (Collection[int]): Allowed first coordinates.
        right (Collection[int]): Allowed second coordinates.
        forbidden_products (Collection[int]): Products whose edges are removed.

    Returns:
        TripleSystem: A sub-system of ``system``.
    """
    left, right, forbidden = set(left), set(right), set(forbidden_products)
    kept = [
        (a, b)
        for p, bucket in system.product_index.items()
        if p not in forbidden
        for a, b in bucket
        if a in left and b in right
    ]
    return build_system(system.group, kept)


def density(system: TripleSystem) -> float:
    return len(system) / system.order**2


def triples(system: TripleSystem) -> list[Triple]:
    table = addition_table(system.group)
    return sorted((a, b, table[a][b]) for a, b in system.edges)
