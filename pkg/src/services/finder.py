"""
Layered search for dense configurations inside a triple system, and its verifier.

The search descends through ``t - 1`` levels. Each level picks the product vector with
the largest bucket, keeps a pairwise disjoint part of that bucket and restricts the
system to the vertices it spans, dropping every edge whose product is a component of
a vector chosen so far. The last level supplies one base quadruple, and the layers are
rebuilt outwards by attaching, for every quadruple, the family members that share its
first or second coordinates.
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import NamedTuple, Sequence

from src.domain.errors import DataValidationError, InvalidParameterError
from src.domain.models import (
    Configuration,
    GoodQuadruple,
    LayerContext,
    NotFound,
    NotFoundReason,
    ProductVector,
    TripleSystem,
)
from src.schemas import SearchParams, VerificationReport
from src.services.groups import addition_table
from src.services.hypergraphs import spanned_triples
from src.services.quadruples import (
    are_disjoint,
    disjoint_subfamily,
    enumerate_good_quadruples,
    is_good_quadruple,
    product_vector,
    q_max,
)
from src.services.triples import restrict

logger = logging.getLogger(__name__)


class LayerStatistics(NamedTuple):
    size: int
    first_coordinates: int
    elements: int


def element_disjoint(x: Sequence[int], y: Sequence[int]) -> bool:
    return not set(x) & set(y)


def required_spanned(nu: int, t: int) -> int:
    """Smallest integer at least (4(nu - 3t) / 3) * (1 - 4^-t), in exact arithmetic."""
    return math.ceil(Fraction(4 * (nu - 3 * t), 3) * (1 - Fraction(1, 4**t)))


def nu_bounds(t: int) -> tuple[int, int]:
    return 2 ** (t + 1), 4**t + 3 * t


def layer_bounds(i: int) -> tuple[int, int]:
    return 2 ** (i + 1), 4**i


def quadruple_elements(quadruples: Sequence[GoodQuadruple]) -> set[int]:
    return set(itertools.chain.from_iterable(quadruples))


def layer_statistics(cfg: Configuration) -> list[LayerStatistics]:
    """Per layer: number of quadruples, distinct a/c coordinates, distinct elements."""
    return [
        LayerStatistics(
            size=len(layer),
            first_coordinates=len({v for q in layer for v in (q.a, q.c)}),
            elements=len(quadruple_elements(layer)),
        )
        for layer in cfg.layers
    ]


def _assemble(
    s0: TripleSystem,
    t: int,
    y_vectors: Sequence[ProductVector],
    layers: Sequence[Sequence[GoodQuadruple]],
    contexts: Sequence[LayerContext] = (),
) -> Configuration:
    chosen = quadruple_elements([q for layer in layers for q in layer])
    chosen.update(itertools.chain.from_iterable(y_vectors))
    spanned = [
        (a, b, p)
        for p in sorted(chosen)
        for a, b in s0.product_index.get(p, ())
        if a in chosen and b in chosen
    ]
    return Configuration(
        group=s0.group,
        t=t,
        y_vectors=tuple(y_vectors),
        layers=tuple(tuple(layer) for layer in layers),
        elements=tuple(sorted(chosen)),
        triples=tuple(sorted(spanned)),
        contexts=tuple(contexts),
    )


def quadruple_configuration(system: TripleSystem, q: Sequence[int]) -> Configuration:
    """
    The configuration of one good quadruple: its elements and the triples of S they span.

    Raises:
        InvalidParameterError: If ``q`` is not S-good.
    """
    if not is_good_quadruple(system, q):
        raise InvalidParameterError(f"{tuple(q)} is not a good quadruple of S")
    quadruple = GoodQuadruple(*q)
    return _assemble(
        system, 1, [product_vector(system.group, quadruple)], [(quadruple,)]
    )


def _not_found(reason: NotFoundReason, level: int, detail: str) -> NotFound:
    logger.warning("no configuration: %s at level %d (%s)", reason.value, level, detail)
    return NotFound(reason=reason, level=level, detail=detail)


def _descend(
    system: TripleSystem, params: SearchParams
) -> tuple[TripleSystem, list[LayerContext]] | NotFound:
    contexts: list[LayerContext] = []
    forbidden: set[int] = set()
    for level in range(params.t - 1):
        index = enumerate_good_quadruples(system, params.workers)
        if not index.buckets:
            return _not_found(
                NotFoundReason.NO_QUADRUPLES, level, f"{len(system)} edges, no good quadruple"
            )
        y, q = q_max(index)
        if q < params.min_bucket:
            return _not_found(
                NotFoundReason.BUCKET_TOO_SMALL, level, f"q={q} < min_bucket={params.min_bucket}"
            )
        family = tuple(disjoint_subfamily(index.buckets[y]))
        edges = tuple((quadruple.a, quadruple.b) for quadruple in family)
        context = LayerContext(
            level=level,
            y=y,
            family=family,
            edges=edges,
            left=frozenset(a for a, _ in edges),
            right=frozenset(b for _, b in edges),
        )
        contexts.append(context)
        forbidden.update(y)
        system = restrict(system, context.left, context.right, forbidden)
        logger.info(
            "level %d: y=%s q=%d family=%d restricted=%d",
            level,
            tuple(y),
            q,
            len(family),
            len(system),
        )
        if len(system) < params.min_edges:
            return _not_found(
                NotFoundReason.RESTRICTED_TOO_SPARSE,
                level + 1,
                f"{len(system)} edges < min_edges={params.min_edges}",
            )
    return system, contexts


def _expand(base: GoodQuadruple, contexts: Sequence[LayerContext]) -> list[tuple[GoodQuadruple, ...]]:
    layers = [(base,)]
    for context in reversed(contexts):
        by_first, by_second = context.by_first(), context.by_second()
        attached = set()
        for q in layers[-1]:
            attached.update(
                (by_first[q.a], by_first[q.c], by_second[q.b], by_second[q.d])
            )
        layers.append(tuple(sorted(attached)))
    return layers


def find_configuration(s0: TripleSystem, params: SearchParams) -> Configuration | NotFound:
    """
    Run the layered construction on ``s0``.

    Args:
        s0 (TripleSystem): The ambient system S_0.
        params (SearchParams): Depth and abort thresholds.

    Returns:
        Configuration | NotFound: A configuration that passed :func:`verify_configuration`,
        or the reason and level at which the construction stopped.
    """
    descended = _descend(s0, params)
    if isinstance(descended, NotFound):
        return descended
    system, contexts = descended

    base_level = params.t - 1
    index = enumerate_good_quadruples(system, params.workers)
    if not index.buckets:
        reason = (
            NotFoundReason.NO_QUADRUPLES
            if base_level == 0
            else NotFoundReason.BASE_QUADRUPLE_MISSING
        )
        return _not_found(reason, base_level, f"{len(system)} edges, no good quadruple")
    y_last, _ = q_max(index)
    base = index.buckets[y_last][0]
    logger.info("level %d: base quadruple %s with y=%s", base_level, tuple(base), tuple(y_last))

    y_vectors = [context.y for context in contexts] + [y_last]
    cfg = _assemble(s0, params.t, y_vectors, _expand(base, contexts), contexts)
    report = verify_configuration(s0, cfg)
    if not report.passed:
        return _not_found(
            NotFoundReason.VERIFICATION_FAILED, base_level, "; ".join(report.reasons)
        )
    logger.info("found configuration: %s", report.summary())
    return cfg


def gadget_quadruples(cfg: Configuration) -> tuple[GoodQuadruple, ...]:
    """
    The base quadruple (a, b, c, d) and the second-layer quadruples attached to it by
    a, b, c and d, in that order.

    Raises:
        InvalidParameterError: If ``cfg`` has fewer than two layers.
    """
    if cfg.t < 2 or len(cfg.layers) < 2:
        raise InvalidParameterError("a gadget needs at least two layers")
    base = cfg.layers[0][0]
    second = cfg.layers[1]

    def attached(predicate) -> GoodQuadruple:
        return next(q for q in second if predicate(q))

    return (
        base,
        attached(lambda q: q.a == base.a),
        attached(lambda q: q.b == base.b),
        attached(lambda q: q.a == base.c),
        attached(lambda q: q.b == base.d),
    )


def _check_ranks(cfg: Configuration, order: int) -> None:
    values = itertools.chain(
        itertools.chain.from_iterable(cfg.y_vectors),
        (v for layer in cfg.layers for q in layer for v in q),
        cfg.elements,
        itertools.chain.from_iterable(cfg.triples),
    )
    for v in values:
        if not 0 <= v < order:
            raise DataValidationError(f"element {v} outside group of order {order}")


def verify_configuration(s0: TripleSystem, cfg: Configuration) -> VerificationReport:
    """
    Check ``cfg`` against ``s0`` from scratch.

    The element set is recomputed from the layers and the y vectors, and the spanned
    triples are recounted by scanning every edge of ``s0``.

    Raises:
        DataValidationError: If the groups differ or some value is not a rank of the group.
    """
    if cfg.group != s0.group:
        raise DataValidationError("configuration and triple system use different groups")
    _check_ranks(cfg, s0.order)
    t = cfg.t
    table = addition_table(s0.group)
    reasons = []

    if len(cfg.y_vectors) != t or len(cfg.layers) != t:
        reasons.append(
            f"expected {t} y vectors and layers, got {len(cfg.y_vectors)} and {len(cfg.layers)}"
        )

    chosen = quadruple_elements([q for layer in cfg.layers for q in layer])
    chosen.update(itertools.chain.from_iterable(cfg.y_vectors))
    nu = len(chosen)
    spanned = len(spanned_triples(s0, chosen))
    required = required_spanned(nu, t)
    if spanned < required:
        reasons.append(f"spanned={spanned} < required={required}")

    low, high = nu_bounds(t)
    nu_bounds_ok = low <= nu <= high
    if not nu_bounds_ok:
        reasons.append(f"nu={nu} outside [{low}, {high}]")

    layer_bounds_ok = True
    layers_disjoint = True
    for i, layer in enumerate(cfg.layers, start=1):
        if i < 2:
            continue
        low, high = layer_bounds(i)
        count = len(quadruple_elements(layer))
        if not low <= count <= high:
            layer_bounds_ok = False
            reasons.append(f"layer {i} has {count} elements, outside [{low}, {high}]")
        if not all(are_disjoint(q, r) for q, r in itertools.combinations(layer, 2)):
            layers_disjoint = False
            reasons.append(f"layer {i} quadruples are not pairwise disjoint")

    y_disjoint = all(
        element_disjoint(x, y) for x, y in itertools.combinations(cfg.y_vectors, 2)
    )
    if not y_disjoint:
        reasons.append("y vectors are not pairwise element-disjoint")

    quadruples_ok = True
    for i, layer in enumerate(cfg.layers, start=1):
        y = cfg.y_vectors[t - i] if t - i < len(cfg.y_vectors) else None
        for q in layer:
            if not is_good_quadruple(s0, q) or product_vector(s0.group, GoodQuadruple(*q)) != y:
                quadruples_ok = False
                reasons.append(f"layer {i} quadruple {tuple(q)} is not good for its vector")

    triples_ok = True
    for a, b, p in cfg.triples:
        if (a, b) not in s0 or table[a][b] != p:
            triples_ok = False
            reasons.append(f"triple ({a}, {b}, {p}) is not a triple of S0")
        elif not {a, b, p} <= chosen:
            triples_ok = False
            reasons.append(f"triple ({a}, {b}, {p}) leaves the element set")

    elements_ok = set(cfg.elements) == chosen and len(cfg.elements) == len(chosen)
    if not elements_ok:
        reasons.append("listed elements differ from the recomputed element set")

    passed = (
        spanned >= required
        and nu_bounds_ok
        and layer_bounds_ok
        and layers_disjoint
        and y_disjoint
        and quadruples_ok
        and triples_ok
        and elements_ok
        and len(cfg.y_vectors) == t
        and len(cfg.layers) == t
    )
    return VerificationReport(
        nu=nu,
        spanned=spanned,
        required=required,
        nu_bounds_ok=nu_bounds_ok,
        layer_bounds_ok=layer_bounds_ok,
        layers_disjoint=layers_disjoint,
        y_disjoint=y_disjoint,
        quadruples_ok=quadruples_ok,
        triples_ok=triples_ok,
        elements_ok=elements_ok,
        passed=passed,
        reasons=reasons,
    )
