import numpy as np
from behave import then
from salem_lp.geometry import (
    difference_set,
    direction_count,
    distance_bound_report,
    distance_set,
    iterated_sumset,
    orthogonal_group,
    sidon_sum_check,
    simplex_census,
    spherical_energy,
    sumset,
    sumset_bound_check,
    sumset_good_report,
)
from salem_lp.lattice import PointSet
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum import fourier_transform


def point_indices(context, text):
    a = context.ambient
    return sorted(int(a.encode([int(c) for c in p.split(",")])) for p in text.split(";"))


@then('the sumset of the set with itself is {points}')
def step_impl(context, points):
    result = sumset(context.pointSet, context.pointSet)
    assert list(result.sumset.indices()) == point_indices(context, points)

@then('the {k:d}-fold sum of the point {x:d} is {y:d}')
def step_impl(context, k, x, y):
    E = PointSet.from_indices(context.ambient, [x])
    assert list(iterated_sumset(E, k).indices()) == [y]

@then('the sumset of the set with itself has {n:d} points')
def step_impl(context, n):
    assert sumset(context.E, context.E).sumset.cardinality == n

@then('the difference set has {n:d} points')
def step_impl(context, n):
    assert difference_set(context.E).cardinality == n

@then('the set determines {n:d} directions')
def step_impl(context, n):
    assert direction_count(context.E) == n

@then('the difference set is covered by the directions')
def step_impl(context):
    assert sumset_good_report(context.E).pigeonhole_holds

@then('the fibers of the sumset sum to the square of the set size')
def step_impl(context):
    fibers = sumset(context.E, context.E).fibers
    assert int(np.sum(fibers)) == context.E.cardinality ** 2

@then('the Hölder sumset chain holds for exponents {exponents}')
def step_impl(context, exponents):
    exponents = [float(p) for p in exponents.split(",")]
    bound = sumset_bound_check([context.E] * len(exponents), exponents)
    assert bound.holds
    assert bound.slack >= -1e-12

@then('the Hölder sumset chain refuses exponents {exponents}')
def step_impl(context, exponents):
    exponents = [float(p) for p in exponents.split(",")]
    isException = False
    try:
        sumset_bound_check([context.E] * len(exponents), exponents)
    except SalemValidationException:
        isException = True
    assert isException

@then('the Sidon sum inequalities hold at {p:g}')
def step_impl(context, p):
    check = sidon_sum_check(context.E, p)
    assert check.holds
    assert check.lower <= check.upper

@then('the Sidon sum check is refused')
def step_impl(context):
    isException = False
    try:
        sidon_sum_check(context.E, 2)
    except SalemValidationException:
        isException = True
    assert isException

@then('the distance set is {distances}')
def step_impl(context, distances):
    E = context.pointSet if hasattr(context, "pointSet") else context.E
    assert list(distance_set(E)) == [int(t) for t in distances.split(";")]

@then('every spherical energy vanishes')
def step_impl(context):
    assert np.max(np.abs(spherical_energy(context.E).energy)) < 1e-12

@then('the Mattila integral is {value:g}')
def step_impl(context, value):
    assert abs(spherical_energy(context.E).mattila - value) < 1e-9

@then('the distance report counts {n:d} distances against the bound {bound:g}')
def step_impl(context, n, bound):
    report = distance_bound_report(context.E)
    assert report.distance_count == n
    assert abs(report.mattila_bound - bound) < 1e-9

@then('the sphere sum at radius {t:d} is {value:g}')
def step_impl(context, t, value):
    assert abs(spherical_energy(context.E).sphere_sum(t) - value) < 1e-9

@then('the spherical energy at radius {t:d} is {value:g}')
def step_impl(context, t, value):
    assert abs(spherical_energy(context.E).energy[t] - value) < 1e-9

@then('the spherical energies sum to the spectral energy off the origin')
def step_impl(context):
    energy = spherical_energy(context.E)
    expected = float(np.sum(fourier_transform(context.E).off_origin() ** 2))
    assert abs(energy.total - expected) < 1e-9
    assert int(np.sum(energy.sphere_sizes)) == context.ambient.size

@then('the spherical average lemma holds')
def step_impl(context):
    assert spherical_energy(context.E).lemma_holds

@then('the distance report is refused')
def step_impl(context):
    isException = False
    try:
        distance_bound_report(context.E)
    except SalemValidationException:
        isException = True
    assert isException

@then('the orthogonal group in dimension {d:d} has {order:d} elements')
def step_impl(context, d, order):
    group = orthogonal_group(context.field, d)
    assert len(group) == order
    f = context.field
    for g in group:
        gram = np.zeros((d, d), dtype=np.int64)
        for j in range(d):
            gram = f.add(gram, f.mul(g[j][:, None], g[j][None, :]))
        assert np.array_equal(gram, np.eye(d, dtype=np.int64))

@then('the census of {k:d}-simplices has {n:d} signatures')
def step_impl(context, k, n):
    census = simplex_census(context.E, k)
    assert census.signature_count == n
    assert census.signature_count <= census.upper_bound

@then('the census of {k:d}-simplices with the orbit oracle is consistent')
def step_impl(context, k):
    census = simplex_census(context.E, k, oracle=True)
    assert census.orbit_count is not None
    assert census.consistent
