import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator

Edge = tuple[int, int]
Triple = tuple[int, int, int]


class GroupSpec(BaseModel):
    """Finite abelian group Z_{m1} x ... x Z_{mk}; the empty product is the trivial group."""

    cyclic_orders: tuple[PositiveInt, ...] = ()

    model_config = ConfigDict(frozen=True)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)


class GroupElement(BaseModel):
    group: GroupSpec
    residues: tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_residues(self):
        orders = self.group.cyclic_orders
        if len(self.residues) != len(orders):
            raise ValueError(
                f"expected {len(orders)} residues, got {len(self.residues)}"
            )
        for r, m in zip(self.residues, orders):
            if not 0 <= r < m:
                raise ValueError(f"residue {r} out of range [0, {m})")
        return self


@dataclass(frozen=True)
class TripleSystem:
    """
    Set S of triples (a, b, a+b) kept as bipartite edges (a, b) of element ranks.

    ``product_index`` maps every product p to the sorted edges with a + b = p.
    """

    group: GroupSpec
    edges: frozenset[Edge]
    product_index: Mapping[int, tuple[Edge, ...]] = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.group.order

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, edge: object) -> bool:
        return edge in self.edges


class GoodQuadruple(NamedTuple):
    a: int
    b: int
    c: int
    d: int


class ProductVector(NamedTuple):
    x1: int
    x2: int
    x3: int


@dataclass(frozen=True)
class QuadrupleIndex:
    """Good quadruples grouped by product vector; buckets and their contents are sorted."""

    group: GroupSpec
    buckets: Mapping[ProductVector, tuple[GoodQuadruple, ...]]

    @property
    def total(self) -> int:
        return sum(len(bucket) for bucket in self.buckets.values())

    def __len__(self) -> int:
        return len(self.buckets)

    def q(self, x: ProductVector) -> int:
        return len(self.buckets.get(x, ()))

    def histogram(self) -> list[tuple[ProductVector, int]]:
        return [(x, len(bucket)) for x, bucket in self.buckets.items()]

    def quadruples(self) -> list[GoodQuadruple]:
        return sorted(q for bucket in self.buckets.values() for q in bucket)


@dataclass(frozen=True)
class LayerContext:
    """One descent level: the chosen vector y, its disjoint family and the spanned vertex sets."""

    level: int
    y: ProductVector
    family: tuple[GoodQuadruple, ...]
    edges: tuple[Edge, ...]
    left: frozenset[int]
    right: frozenset[int]

    def by_first(self) -> dict[int, GoodQuadruple]:
        return {q.a: q for q in self.family}

    def by_second(self) -> dict[int, GoodQuadruple]:
        return {q.b: q for q in self.family}


@dataclass(frozen=True)
class Configuration:
    group: GroupSpec
    t: int
    y_vectors: tuple[ProductVector, ...]
    layers: tuple[tuple[GoodQuadruple, ...], ...]
    elements: tuple[int, ...]
    triples: tuple[Triple, ...]
    contexts: tuple[LayerContext, ...] = field(default=(), repr=False, compare=False)

    @property
    def nu(self) -> int:
        return len(self.elements)

    @property
    def spanned(self) -> int:
        return len(self.triples)


class NotFoundReason(enum.Enum):
    NO_QUADRUPLES = "no-quadruples"
    BUCKET_TOO_SMALL = "bucket-too-small"
    RESTRICTED_TOO_SPARSE = "restricted-too-sparse"
    BASE_QUADRUPLE_MISSING = "base-quadruple-missing"
    VERIFICATION_FAILED = "verification-failed"


@dataclass(frozen=True)
class NotFound:
    reason: NotFoundReason
    level: int
    detail: str = ""


@dataclass(frozen=True)
class Hypergraph3:
    """Hyperedges are sorted tuples of distinct vertices, of size 1 to 3, without repeats."""

    vertex_count: int
    edges: tuple[tuple[int, ...], ...]
