import pytest

from src.domain.errors import InvalidIndexError, InvalidParameterError
from src.services.groups import addition_table, make_group
from src.services.triples import (
    build_system,
    density,
    full_system,
    product_index,
    random_system,
    restrict,
    sample_size,
    triples,
)


@pytest.fixture
def z5():
    return make_group([5])


@pytest.fixture
def full_z5(z5):
    return full_system(z5)


def test_full_system_z3():
    # Call method
    system = full_system(make_group([3]))

    # Assertions
    assert len(system) == 9
    assert sorted(system.product_index) == [0, 1, 2]
    assert all(len(bucket) == 3 for bucket in system.product_index.values())


def test_full_system_trivial_group():
    system = full_system(make_group([]))
    assert system.edges == frozenset({(0, 0)})


def test_full_system_density(full_z5):
    assert len(full_z5) == 25
    assert density(full_z5) == 1.0


def test_product_index_is_consistent(full_z5):
    # Setup
    table = addition_table(full_z5.group)

    # Assertions
    assert sum(len(bucket) for bucket in full_z5.product_index.values()) == len(full_z5)
    for p, bucket in full_z5.product_index.items():
        assert all(table[a][b] == p for a, b in bucket)
    assert product_index(full_z5.group, full_z5.edges) == full_z5.product_index


def test_build_system_rejects_out_of_range_edges(z5):
    with pytest.raises(InvalidIndexError):
        build_system(z5, [(0, 5)])
    with pytest.raises(InvalidIndexError):
        build_system(z5, [(-1, 0)])


@pytest.mark.parametrize(
    "orders, c, expected",
    [([10], "0.5", 50), ([2, 5], "0.4", 40), ([10], "0", 0), ([10], "1", 100), ([7], 0.3, 14)],
)
def test_random_system_size(orders, c, expected):
    # Call method
    system = random_system(make_group(orders), c, seed=3)

    # Assertions
    assert len(system) == expected == sample_size(make_group(orders).order, c)


def test_random_system_is_deterministic():
    # Setup
    z10 = make_group([10])

    # Call method
    first = random_system(z10, 0.5, seed=7)
    second = random_system(z10, 0.5, seed=7)
    other = random_system(z10, 0.5, seed=8)

    # Assertions
    assert first == second
    assert first.product_index == second.product_index
    assert first != other


@pytest.mark.parametrize("c", [-0.1, 1.5, "abc", "nan"])
def test_random_system_rejects_bad_density(z5, c):
    with pytest.raises(InvalidParameterError):
        random_system(z5, c, seed=0)


def test_random_system_rejects_negative_seed(z5):
    with pytest.raises(InvalidParameterError) as excinfo:
        random_system(z5, 0.5, seed=-1)
    assert "seed -1" in excinfo.value.detail


def test_restrict_identity(full_z5):
    everything = range(5)
    assert restrict(full_z5, everything, everything) == full_z5


def test_restrict_forbidden_product(full_z5):
    # Call method
    result = restrict(full_z5, range(5), range(5), {0})

    # Assertions
    assert len(result) == 20
    assert 0 not in result.product_index


def test_restrict_empty_side(full_z5):
    assert len(restrict(full_z5, set(), range(5))) == 0


def test_restrict_keeps_exactly_matching_edges(full_z5):
    # Setup
    left, right, forbidden = {0, 1}, {2, 3, 4}, {4}

    # Call method
    result = restrict(full_z5, left, right, forbidden)

    # Assertions
    assert result.edges == {
        (a, b) for a in left for b in right if (a + b) % 5 not in forbidden
    }
    assert restrict(result, left, right, forbidden) == result


def test_triples_are_sorted_with_products():
    # Setup
    system = build_system(make_group([5]), [(3, 4), (1, 2)])

    # Call method
    result = triples(system)

    # Assertions
    assert result == [(1, 2, 3), (3, 4, 2)]
