import re
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from pydantic import ValidationError

from src.domain.errors import (
    InvalidIndexError,
    InvalidOperandError,
    InvalidSpecificationError,
)
from src.domain.models import GroupElement, GroupSpec

TRIVIAL_GROUP_TEXT = "1"

_GROUP_PATTERN = re.compile(r"^z(\d+)(?:x\s*z(\d+))*$", re.IGNORECASE)


def make_group(cyclic_orders: Iterable[int]) -> GroupSpec:
    """
    Build the group Z_{m1} x ... x Z_{mk}.

    Args:
        cyclic_orders (Iterable[int]): The cyclic factor orders, each at least 1.

    Returns:
        GroupSpec: The group; an empty list gives the trivial group.

    Raises:
        InvalidSpecificationError: If some order is not positive.
    """
    orders = tuple(cyclic_orders)
    try:
        return GroupSpec(cyclic_orders=orders)
    except ValidationError as e:
        raise InvalidSpecificationError(
            f"invalid cyclic orders {list(orders)}: every order must be >= 1"
        ) from e


def parse_group(spec: str | Sequence[int]) -> GroupSpec:
    """
    Parse "Z5", "Z2xZ3xZ4" (any case) or a list of cyclic orders.

    Args:
        spec (str | Sequence[int]): Text form or structured form of the group.

    Returns:
        GroupSpec: The parsed group.

    Raises:
        InvalidSpecificationError: If the text is not a group specification.
    """
    if not isinstance(spec, str):
        return make_group(spec)
    text = "".join(spec.split())
    if text == TRIVIAL_GROUP_TEXT:
        return make_group([])
    if not _GROUP_PATTERN.match(text):
        raise InvalidSpecificationError(f"invalid group specification '{spec}'")
    return make_group(int(part) for part in re.findall(r"\d+", text))


def format_group(group: GroupSpec) -> str:
    if not group.cyclic_orders:
        return TRIVIAL_GROUP_TEXT
    return "x".join(f"Z{m}" for m in group.cyclic_orders)


def element(group: GroupSpec, residues: Iterable[int]) -> GroupElement:
    try:
        return GroupElement(group=group, residues=tuple(residues))
    except ValidationError as e:
        raise InvalidOperandError(f"not an element of {format_group(group)}") from e


def zero(group: GroupSpec) -> GroupElement:
    return GroupElement(group=group, residues=(0,) * len(group.cyclic_orders))


def _check_same_group(g: GroupElement, h: GroupElement) -> None:
    if g.group != h.group:
        raise InvalidOperandError(
            f"elements of {format_group(g.group)} and {format_group(h.group)} do not mix"
        )


def add(g: GroupElement, h: GroupElement) -> GroupElement:
    """
    Add two elements componentwise.

    Raises:
        InvalidOperandError: If the elements belong to different groups.
    """
    _check_same_group(g, h)
    residues = tuple(
        (x + y) % m for x, y, m in zip(g.residues, h.residues, g.group.cyclic_orders)
    )
    return GroupElement(group=g.group, residues=residues)


def neg(g: GroupElement) -> GroupElement:
    residues = tuple((-x) % m for x, m in zip(g.residues, g.group.cyclic_orders))
    return GroupElement(group=g.group, residues=residues)


def rank(g: GroupElement) -> int:
    """Row-major mixed-radix index of ``g``; (1, 2) in Z2xZ3 has rank 5."""
    index = 0
    for r, m in zip(g.residues, g.group.cyclic_orders):
        index = index * m + r
    return index


def unrank(group: GroupSpec, index: int) -> GroupElement:
    """
    Inverse of :func:`rank`.

    Raises:
        InvalidIndexError: If ``index`` is outside [0, order).
    """
    if not 0 <= index < group.order:
        raise InvalidIndexError(
            f"index {index} out of range [0, {group.order}) for {format_group(group)}"
        )
    residues = []
    for m in reversed(group.cyclic_orders):
        index, r = divmod(index, m)
        residues.append(r)
    return GroupElement(group=group, residues=tuple(reversed(residues)))


def elements(group: GroupSpec) -> list[GroupElement]:
    return [unrank(group, i) for i in range(group.order)]


@lru_cache(maxsize=32)
def addition_table(group: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """
    Table ``T`` of ranks with ``T[a][b] = rank(unrank(a) + unrank(b))``.

    Every rank-level computation downstream reads sums from this table.
    """
    n = group.order
    if not group.cyclic_orders:
        return ((0,),)
    orders = np.array(group.cyclic_orders)
    residues = np.stack(np.unravel_index(np.arange(n), group.cyclic_orders), axis=1)
    sums = (residues[:, None, :] + residues[None, :, :]) % orders
    table = np.ravel_multi_index(
        tuple(sums[..., i] for i in range(len(orders))), group.cyclic_orders
    )
    return tuple(tuple(row) for row in table.tolist())


@lru_cache(maxsize=32)
def negation_table(group: GroupSpec) -> tuple[int, ...]:
    table = addition_table(group)
    return tuple(row.index(0) for row in table)


def add_ranks(group: GroupSpec, a: int, b: int) -> int:
    return addition_table(group)[a][b]


def neg_rank(group: GroupSpec, a: int) -> int:
    return negation_table(group)[a]


def double_rank(group: GroupSpec, a: int) -> int:
    return addition_table(group)[a][a]


def _factorizations(n: int, smallest: int) -> list[list[int]]:
    result = [[n]] if n >= smallest else []
    f = smallest
    while f * f <= n:
        if n % f == 0:
            result.extend([f, *rest] for rest in _factorizations(n // f, f))
        f += 1
    return result


def all_groups_up_to(max_order: int) -> list[GroupSpec]:
    """
    Every presentation Z_{m1} x ... x Z_{mk} (factors >= 2, non-decreasing) of order <= max_order.

    The trivial group comes first; Z12, Z2xZ6, Z3xZ4 and Z2xZ2xZ3 all appear for order 12.
    """
    groups = [make_group([])]
    for n in range(2, max_order + 1):
        groups.extend(make_group(orders) for orders in _factorizations(n, 2))
    return groups
