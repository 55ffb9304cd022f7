import os
import tempfile

import numpy as np
from behave import when, then
from salem_lp.builders.recipe_builder import build_recipe
from salem_lp.constructions import (
    annihilator_modulus,
    annihilator_of_plane,
    curve_report,
    diagonal_modulus,
    direct_sum,
    is_sidon,
    level_set_uniformity,
    max_deviation,
    random_set,
    subspace_complement_modulus,
)
from salem_lp.field.gf import parse_field_spec
from salem_lp.lattice import ambient_make
from salem_lp.models.exception import SalemIllegalStateException, SalemValidationException
from salem_lp.spectrum import fourier_transform
from salem_lp.state.salem_session import SalemSession


def session_for(context):
    if not hasattr(context, "session"):
        context.session = SalemSession(log_level="ERROR")
    return context.session


@then('the set has {n:d} points')
def step_impl(context, n):
    assert context.E.cardinality == n
    assert context.E.check_cardinality() == n

@then('the set contains the origin')
def step_impl(context):
    assert 0 in context.E

@then('the set equals the direct sum of {left} in dimension {k:d} and {right} in dimension {l:d}')
def step_impl(context, left, k, right, l):
    session = session_for(context)
    field = context.ambient.field
    E = build_recipe(session, left).build(ambient_make(field, k))
    F = build_recipe(session, right).build(ambient_make(field, l))
    assert direct_sum(E, F) == context.E

@then('the transform factors over the two summands')
def step_impl(context):
    recipe = context.recipe
    k = recipe.params["k"]
    field = context.ambient.field
    E = recipe.params["left"].build(ambient_make(field, k))
    F = recipe.params["right"].build(ambient_make(field, context.ambient.d - k))
    expected = np.outer(fourier_transform(F).values, fourier_transform(E).values).ravel()
    assert np.max(np.abs(context.transform.values - expected)) < 1e-9
    assert context.E.cardinality == E.cardinality * F.cardinality

@then('the transform modulus at {x} is about {value:g}')
def step_impl(context, x, value):
    point = context.ambient.point(tuple(int(c) for c in x.split(",")))
    assert abs(abs(context.transform.at(point)) - value) < 1e-5

@then('the spectrum matches the complement closed form for k {k:d}')
def step_impl(context, k):
    assert max_deviation(context.transform, subspace_complement_modulus(context.ambient, k)) < 1e-9

@then('the spectrum matches the diagonal closed form for n {n:d}')
def step_impl(context, n):
    assert max_deviation(context.transform, diagonal_modulus(context.ambient, n)) < 1e-9

@then('the spectrum is supported on {n:d} non-zero frequencies')
def step_impl(context, n):
    assert int(np.count_nonzero(context.transform.off_origin() > 1e-9)) == n

@when('the annihilator construction is searched')
def step_impl(context):
    context.construction = annihilator_of_plane(context.ambient)

@then('the line lies on a sphere of non-zero radius')
def step_impl(context):
    construction = context.construction
    norms = context.ambient.norm_table[construction.plane.indices()]
    assert construction.radius != 0
    assert np.all(norms == construction.radius)
    assert construction.plane.cardinality == context.ambient.q

@then('the annihilator has {n:d} points')
def step_impl(context, n):
    assert context.construction.annihilator.cardinality == n

@then('the annihilator spectrum matches its closed form')
def step_impl(context):
    table = fourier_transform(context.construction.annihilator)
    assert max_deviation(table, annihilator_modulus(context.construction)) < 1e-9

@when('the annihilator construction is searched with a cache')
def step_impl(context):
    context.cacheDir = tempfile.mkdtemp()
    context.cachePath = os.path.join(context.cacheDir, "lines.json")
    context.first = annihilator_of_plane(context.ambient, context.cachePath)

@when('the annihilator construction is searched with the same cache')
def step_impl(context):
    assert os.path.exists(context.cachePath)
    context.second = annihilator_of_plane(context.ambient, context.cachePath)

@then('both searches found the same line')
def step_impl(context):
    assert context.first.plane == context.second.plane
    assert context.first.annihilator == context.second.annihilator

@then('random sets with alpha {alpha:g} and seed {seed:d} are identical on repeat')
def step_impl(context, alpha, seed):
    a = random_set(context.ambient, alpha, seed)
    b = random_set(context.ambient, alpha, seed)
    assert list(a.indices()) == list(b.indices())
    assert a.cardinality == int(context.ambient.q ** alpha)

@then('random sets with alpha {alpha:g} and seeds {s1:d} and {s2:d} differ')
def step_impl(context, alpha, s1, s2):
    assert random_set(context.ambient, alpha, s1) != random_set(context.ambient, alpha, s2)

@then('the set equals {recipe} over the same ambient')
def step_impl(context, recipe):
    other = build_recipe(session_for(context), recipe).build(context.ambient)
    assert other == context.E

@then('the curve {polys} has degrees {degrees} and span {span:d} and flags {flags}')
def step_impl(context, polys, degrees, span, flags):
    report = curve_report(context.ambient, polys.split(","))
    assert report.degrees == [int(n) for n in degrees.split(",")]
    assert report.span_dimension == span
    assert report.weil_flags == [int(n) for n in flags.split(",")]

@then('the set is Sidon')
def step_impl(context):
    result = is_sidon(context.E)
    assert result.is_sidon
    assert result.witness is None

@then('the set is not Sidon')
def step_impl(context):
    result = is_sidon(context.E)
    assert not result
    u, v, w, z = result.witness
    a = context.ambient
    assert int(a.add(u, v)) == int(a.add(w, z))
    assert sorted((u, v)) != sorted((w, z))
    assert all(x in context.E for x in (u, v, w, z))

@then('the normalized level set sup is at most {bound:g}')
def step_impl(context, bound):
    report = level_set_uniformity(context.E)
    assert len(report.sizes) == context.ambient.q - 1
    assert report.max_normalized_sup <= bound

@when('the set {recipe} is built over {field} in dimension {d:d}')
def step_impl(context, recipe, field, d):
    context.buildError = None
    try:
        ambient = ambient_make(parse_field_spec(field), d)
        build_recipe(session_for(context), recipe).build(ambient)
    except (SalemValidationException, SalemIllegalStateException) as e:
        context.buildError = e

@then('the construction is refused')
def step_impl(context):
    assert context.buildError is not None
