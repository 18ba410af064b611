import heapq
import itertools
import logging
from typing import Collection, Iterable, Sequence

from src.conf.config import settings
from src.domain.errors import BudgetExceededError, InvalidIndexError, InvalidParameterError
from src.domain.models import Hypergraph3, Triple, TripleSystem
from src.services.groups import addition_table, make_group

logger = logging.getLogger(__name__)

_UNDECIDED, _CHOSEN, _EXCLUDED = 0, 1, 2


def make_hypergraph(vertex_count: int, edges: Iterable[Iterable[int]]) -> Hypergraph3:
    """
    Normalize ``edges`` to sorted tuples of distinct vertices and merge repeats.

    Raises:
        InvalidParameterError: If an edge is empty or has more than three vertices.
        InvalidIndexError: If a vertex id is outside [0, vertex_count).
    """
    if vertex_count < 0:
        raise InvalidParameterError(f"vertex count {vertex_count} is negative")
    normalized = set()
    for edge in edges:
        vertices = tuple(sorted(set(edge)))
        if not 1 <= len(vertices) <= 3:
            raise InvalidParameterError(f"edge {vertices} must have 1 to 3 vertices")
        for v in vertices:
            if not 0 <= v < vertex_count:
                raise InvalidIndexError(
                    f"vertex {v} out of range [0, {vertex_count})"
                )
        normalized.add(vertices)
    return Hypergraph3(vertex_count=vertex_count, edges=tuple(sorted(normalized)))


def from_triple_system(system: TripleSystem) -> Hypergraph3:
    """Each triple (a, b, a+b) becomes the vertex set {a, b, a+b}; coinciding sets merge."""
    table = addition_table(system.group)
    return make_hypergraph(
        system.order, ((a, b, table[a][b]) for a, b in system.edges)
    )


def spanned_triples(system: TripleSystem, subset: Collection[int]) -> list[Triple]:
    """
    All triples (a, b, a+b) of S with a, b and a+b in ``subset``, from one scan of the edges.

    Triples with repeated elements count like any other triple of S.
    """
    table = addition_table(system.group)
    inside = set(subset)
    return sorted(
        (a, b, table[a][b])
        for a, b in system.edges
        if a in inside and b in inside and table[a][b] in inside
    )


def edges_within(hypergraph: Hypergraph3, subset: Collection[int]) -> int:
    inside = set(subset)
    return sum(1 for edge in hypergraph.edges if inside.issuperset(edge))


def fano_plane() -> Hypergraph3:
    """Points are the non-zero elements of Z2^3, lines the sets {a, b, a+b}."""
    table = addition_table(make_group([2, 2, 2]))
    return make_hypergraph(
        7,
        ((a - 1, b - 1, table[a][b] - 1) for a, b in itertools.combinations(range(1, 8), 2)),
    )


class _SubsetSearch:
    """
    Depth-first search over m-subsets in lexicographic order, choosing vertices in
    increasing order.

    A node is cut when the edges already inside the chosen set plus the r largest
    residual degrees of the undecided vertices cannot reach ``threshold``. The
    residual degree of a vertex counts its edges that avoid every excluded vertex.
    """

    def __init__(self, hypergraph: Hypergraph3, m: int, budget: int):
        self.n = hypergraph.vertex_count
        self.m = m
        self.budget = budget
        self.incident: list[list[tuple[int, ...]]] = [[] for _ in range(self.n)]
        for edge in hypergraph.edges:
            for v in edge:
                self.incident[v].append(edge)
        self.state = [_UNDECIDED] * self.n
        self.chosen: list[int] = []
        self.expanded = 0
        self.best = -1
        self.witness: tuple[int, ...] = ()
        self.target: int | None = None

    @property
    def threshold(self) -> int:
        return self.target if self.target is not None else self.best + 1

    def _residual_bound(self, start: int, inside: int) -> int:
        r = self.m - len(self.chosen)
        degrees = (
            sum(
                1
                for edge in self.incident[v]
                if all(self.state[u] != _EXCLUDED for u in edge)
            )
            for v in range(start, self.n)
        )
        return inside + sum(heapq.nlargest(r, degrees))

    def _gain(self, v: int) -> int:
        return sum(
            1
            for edge in self.incident[v]
            if all(u == v or self.state[u] == _CHOSEN for u in edge)
        )

    def _tick(self) -> None:
        self.expanded += 1
        if self.expanded > self.budget:
            raise BudgetExceededError(
                f"subset search exceeded its budget of {self.budget} expansions",
                best=self.best if self.best >= 0 else None,
                witness=self.witness,
            )

    def extend(self, start: int, inside: int) -> bool:
        """Returns True when a subset reaching ``target`` was found."""
        self._tick()
        r = self.m - len(self.chosen)
        if r == 0:
            if inside > self.best:
                self.best, self.witness = inside, tuple(self.chosen)
            return self.target is not None and inside >= self.target
        last = self.n - r
        touched = []
        try:
            for v in range(start, last + 1):
                # bounds only shrink as more vertices are excluded
                if self._residual_bound(v, inside) < self.threshold:
                    break
                gain = self._gain(v)
                self.state[v] = _CHOSEN
                self.chosen.append(v)
                touched.append(v)
                try:
                    if self.extend(v + 1, inside + gain):
                        return True
                finally:
                    self.chosen.pop()
                    self.state[v] = _EXCLUDED
        finally:
            for v in touched:
                self.state[v] = _UNDECIDED
        return False


def _check_size(hypergraph: Hypergraph3, m: int) -> None:
    if not 0 <= m <= hypergraph.vertex_count:
        raise InvalidParameterError(
            f"m={m} outside [0, {hypergraph.vertex_count}]"
        )
    if m > settings.MAX_SUBSET_SIZE:
        raise BudgetExceededError(
            f"m={m} exceeds the subset size limit {settings.MAX_SUBSET_SIZE}"
        )


def max_edges_spanned(
    hypergraph: Hypergraph3, m: int, budget: int | None = None
) -> tuple[int, tuple[int, ...]]:
    """
    Exact maximum number of edges inside an m-subset of the vertices.

    Args:
        hypergraph (Hypergraph3): The hypergraph to search.
        m (int): Subset size.
        budget (int | None): Maximum number of search nodes; defaults to settings.SPAN_BUDGET.

    Returns:
        tuple[int, tuple[int, ...]]: k_max and the lexicographically least subset attaining it.

    Raises:
        InvalidParameterError: If m is negative or exceeds the vertex count.
        BudgetExceededError: If m is above the size limit or the budget runs out.
    """
    _check_size(hypergraph, m)
    search = _SubsetSearch(hypergraph, m, settings.SPAN_BUDGET if budget is None else budget)
    search.extend(0, 0)
    logger.debug(
        "max_edges_spanned m=%d: k_max=%d after %d expansions",
        m,
        search.best,
        search.expanded,
    )
    return search.best, search.witness


def max_edges_spanned_naive(
    hypergraph: Hypergraph3, m: int
) -> tuple[int, tuple[int, ...]]:
    """Oracle: every m-subset via itertools.combinations; first maximum wins."""
    if not 0 <= m <= hypergraph.vertex_count:
        raise InvalidParameterError(
            f"m={m} outside [0, {hypergraph.vertex_count}]"
        )
    best, witness = -1, ()
    for subset in itertools.combinations(range(hypergraph.vertex_count), m):
        count = edges_within(hypergraph, subset)
        if count > best:
            best, witness = count, subset
    return best, witness


def contains_config(
    hypergraph: Hypergraph3, m: int, k: int, budget: int | None = None
) -> tuple[bool, tuple[int, ...]]:
    """
    Decide whether some m vertices span at least k edges, stopping at the first witness.

    Returns:
        tuple[bool, tuple[int, ...]]: The answer and a witness subset (empty when False).
    """
    _check_size(hypergraph, m)
    search = _SubsetSearch(hypergraph, m, settings.SPAN_BUDGET if budget is None else budget)
    search.target = k
    found = search.extend(0, 0)
    return found, search.witness if found else ()


def subset_from_ranks(order: int, ranks: Sequence[int]) -> frozenset[int]:
    """
    Validate a list of element ranks.

    Raises:
        InvalidIndexError: If a rank is outside [0, order).
    """
    for r in ranks:
        if not 0 <= r < order:
            raise InvalidIndexError(f"rank {r} out of range [0, {order})")
    return frozenset(ranks)
