"""
Structural facts about good quadruples, as predicates over an enumerated index.

Each ``*_violations`` function returns the offending records; an empty list means
the fact holds for the given index.
"""

from collections import defaultdict
from typing import NamedTuple

from src.domain.models import GoodQuadruple, GroupSpec, ProductVector, QuadrupleIndex
from src.services.groups import addition_table
from src.services.quadruples import are_disjoint


class FactViolation(NamedTuple):
    fact: str
    vector: ProductVector
    detail: str


def same_first_coordinate_violations(index: QuadrupleIndex) -> list[FactViolation]:
    """Within one bucket, two quadruples with the same a are identical."""
    violations = []
    for x, bucket in index.buckets.items():
        by_first: dict[int, set[GoodQuadruple]] = defaultdict(set)
        for q in bucket:
            by_first[q.a].add(q)
        for a, group in by_first.items():
            if len(group) > 1:
                violations.append(
                    FactViolation("same-first-coordinate", x, f"a={a}: {sorted(group)}")
                )
        if len(bucket) > index.group.order:
            violations.append(
                FactViolation("same-first-coordinate", x, f"q={len(bucket)} exceeds n")
            )
    return violations


def product_equivalence_violations(index: QuadrupleIndex) -> list[FactViolation]:
    """For quadruples with equal a + b: c + b agrees iff a + d agrees."""
    by_product: dict[int, list[ProductVector]] = defaultdict(list)
    for x in index.buckets:
        by_product[x.x2].append(x)
    violations = []
    for vectors in by_product.values():
        for i, x in enumerate(vectors):
            for y in vectors[i + 1 :]:
                if (x.x1 == y.x1) != (x.x3 == y.x3):
                    violations.append(
                        FactViolation("product-equivalence", x, f"against {tuple(y)}")
                    )
    return violations


def bucket_count_within_bound(index: QuadrupleIndex) -> bool:
    n = index.group.order
    return len(index) <= n * (n - 1)


def overlap_case(group: GroupSpec, q: GoodQuadruple, other: GoodQuadruple) -> int | None:
    """
    Classify two distinct quadruples of one bucket.

    Returns:
        int | None: 0 when disjoint; 1, 2 or 3 for the three ways two quadruples can
        share coordinates; None when no case applies. Case 1 is the swap (c, d, a, b)
        and is classified from the coordinates alone.
    """
    if are_disjoint(q, other):
        return 0
    table = addition_table(group)
    a, b, c, d = q
    a2, b2, c2, d2 = other
    if a2 == c and c2 == a and b2 == d and d2 == b:
        return 1
    balanced = table[c][b] == table[a][d]
    if not balanced and a2 == c and c2 != a and b2 == d and d2 != b:
        return 2
    if not balanced and a2 != c and c2 == a and b2 != d and d2 == b:
        return 3
    return None


def overlap_violations(index: QuadrupleIndex) -> list[FactViolation]:
    """
    Pairs of one bucket matching none of the overlap cases, case 1 outside x1 = x3,
    and quadruples overlapping more than two others.
    """
    violations = []
    for x, bucket in index.buckets.items():
        for q in bucket:
            conflicts = 0
            for other in bucket:
                if other == q:
                    continue
                case = overlap_case(index.group, q, other)
                if case is None:
                    violations.append(
                        FactViolation("overlap", x, f"{tuple(q)} vs {tuple(other)}")
                    )
                elif case == 1 and x.x1 != x.x3:
                    violations.append(
                        FactViolation("overlap-case-1", x, f"{tuple(q)} vs {tuple(other)}")
                    )
                if case != 0:
                    conflicts += 1
            if conflicts > 2:
                violations.append(
                    FactViolation("conflict-degree", x, f"{tuple(q)} overlaps {conflicts}")
                )
    return violations
