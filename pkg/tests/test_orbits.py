"""Generator sets, orbit partitions, and the two reference computations."""

import pytest

from glgeom.gfq import field_make, mat_identity
from glgeom.orbits import (GOLDEN_ORBITS, GeneratorSet,
                           bisection_stabiliser_generators, gl_generators,
                           group_order_by_basis_orbit, orbit_partition,
                           pm_orbits_on_k_spaces,
                           stabiliser_orbits_on_bisections,
                           subspace_stabiliser_generators)
from glgeom.subspace import (coordinate_bisection, coordinate_subspace,
                             grassmannian, intersection_dim, bisections)

F2 = field_make(2)
F3 = field_make(3)


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


# ---------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------

def test_gl1_generators():
    gens = gl_generators(1, F2)
    assert gens.generators == [mat_identity(F2, 1)]
    assert group_order_by_basis_orbit(gl_generators(1, F3), 1, F3) == 2


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_gl_generators_generate(n, q):
    field = field_make(q)
    gens = gl_generators(n, field)
    assert group_order_by_basis_orbit(gens, n, field) == gl_order(n, q)
    # transitive on points
    points = list(grassmannian(n, field, 1))
    report = orbit_partition(gens, points)
    assert report.num_orbits == 1
    # orbit BFS from e_1 reaches every nonzero vector
    from glgeom.gfq import vec_mat
    from itertools import product
    start = tuple(1 if i == 0 else 0 for i in range(n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens.generators:
                w = vec_mat(v, g)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    assert len(seen) == q**n - 1


def test_bisection_stabiliser_orders():
    assert group_order_by_basis_orbit(
        bisection_stabiliser_generators(coordinate_bisection(F2, 1)), 2, F2) == 2
    assert group_order_by_basis_orbit(
        bisection_stabiliser_generators(coordinate_bisection(F3, 2)), 4, F3) \
        == 2 * gl_order(2, 3)**2  # 4608


@pytest.mark.slow
def test_bisection_stabiliser_order_k3_q2():
    got = group_order_by_basis_orbit(
        bisection_stabiliser_generators(coordinate_bisection(F2, 3)), 6, F2)
    assert got == 2 * gl_order(3, 2)**2  # 56448


def test_stabiliser_fixes_bisection():
    b0 = coordinate_bisection(F3, 2)
    for g in bisection_stabiliser_generators(b0).generators:
        assert b0.apply(g) == b0
    # conjugated generators for a non-coordinate bisection
    other = next(b for b in bisections(2, F2) if b != coordinate_bisection(F2, 2))
    for g in bisection_stabiliser_generators(other).generators:
        assert other.apply(g) == other


def test_subspace_stabiliser_fixes_subspace():
    u = coordinate_subspace(F3, 4, [0, 1])
    from glgeom.subspace import apply_mat
    for g in subspace_stabiliser_generators(2, 4, F3).generators:
        assert apply_mat(u, g) == u


# ---------------------------------------------------------------------
# orbit partition
# ---------------------------------------------------------------------

def test_orbit_partition_transitive_example():
    points = list(grassmannian(2, F2, 1))
    report = orbit_partition(gl_generators(2, F2), points)
    assert report.orbit_lengths == (3,)
    assert report.total == 3


def test_orbit_partition_deterministic_under_generator_order():
    gens = gl_generators(3, F2)
    seeds = list(grassmannian(3, F2, 1))
    rev = GeneratorSet(list(reversed(gens.generators)), "reversed")
    a = orbit_partition(gens, seeds)
    b = orbit_partition(rev, seeds)
    assert a.orbit_lengths == b.orbit_lengths
    assert a.representatives == b.representatives


def test_order2_stabiliser_on_projective_line():
    """k=1, q=2: the stabiliser of one bisection of PG(1,2) has order 2 and
    a single orbit of length 2 on the other two bisections (the swap maps
    them to each other)."""
    b0 = coordinate_bisection(F2, 1)
    gens = bisection_stabiliser_generators(b0)
    assert group_order_by_basis_orbit(gens, 2, F2) == 2
    others = [b for b in bisections(1, F2) if b != b0]
    assert len(others) == 2
    report = orbit_partition(gens, others, action="bisections")
    assert report.orbit_lengths == (2,)


# ---------------------------------------------------------------------
# stabiliser orbits on k-subspaces
# ---------------------------------------------------------------------

@pytest.mark.parametrize("n,m,k,q,orbits", [
    (3, 1, 2, 2, 2),       # j in {0, 1}
    (4, 2, 2, 2, 3),       # j in {0, 1, 2}
    (2, 1, 1, 3, 2),       # W = U or disjoint
])
def test_pm_orbit_counts(n, m, k, q, orbits):
    field = field_make(q)
    report = pm_orbits_on_k_spaces(n, m, k, field)
    assert report.num_orbits == orbits
    # orbits are exactly the intersection-dimension classes
    u = coordinate_subspace(field, n, range(m))
    j_of = {}
    gens = subspace_stabiliser_generators(m, n, field)
    for w in grassmannian(n, field, k):
        j_of.setdefault(intersection_dim(u, w), set()).add(w)
    partition = orbit_partition(gens, list(grassmannian(n, field, k)))
    assert partition.num_orbits == len(j_of)
    assert sorted(partition.orbit_lengths) == sorted(len(c) for c in j_of.values())


# ---------------------------------------------------------------------
# the reference computations
# ---------------------------------------------------------------------

def test_golden_orbits_q3_k2():
    report = stabiliser_orbits_on_bisections(2, F3)
    assert report.num_orbits == 15
    assert report.total == 5264
    assert dict(report.multiset()) == GOLDEN_ORBITS[(3, 2)]
    assert sum(report.orbit_lengths) == 5264
    order = 2 * gl_order(2, 3)**2
    for length in report.orbit_lengths:
        assert order % length == 0  # Lagrange
    # representatives really are bisections and lie in distinct orbits
    assert len(report.representatives) == 15


def test_golden_sum_plus_one_is_line_count():
    assert sum(l * m for l, m in GOLDEN_ORBITS[(3, 2)].items()) + 1 == 5265
    assert sum(l * m for l, m in GOLDEN_ORBITS[(2, 3)].items()) + 1 == 357120


@pytest.mark.slow
def test_golden_orbits_q2_k3():
    report = stabiliser_orbits_on_bisections(3, F2)
    assert dict(report.multiset()) == GOLDEN_ORBITS[(2, 3)]
    assert report.total == 357119
    order = 2 * gl_order(3, 2)**2
    for length in report.orbit_lengths:
        assert order % length == 0
