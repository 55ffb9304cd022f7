import math

import numpy as np
from behave import given, when, then
from salem_lp.builders.recipe_builder import build_recipe
from salem_lp.constructions import random_set
from salem_lp.field.gf import parse_field_spec
from salem_lp.lattice import ambient_make
from salem_lp.models.exception import SalemValidationException
from salem_lp.spectrum import (
    concavity_lower_bound,
    fourier_transform,
    interpolated_exponent,
    lp_norm,
    parse_exponent_list,
    plancherel_residual,
    salem_exponent,
    spectral_bounds,
    spectral_profile,
)
from salem_lp.state.salem_session import SalemSession


def session_for(context):
    if not hasattr(context, "session"):
        context.session = SalemSession(log_level="ERROR")
    return context.session


@given('the set {recipe} over {field} in dimension {d:d}')
def step_impl(context, recipe, field, d):
    session = session_for(context)
    context.ambient = ambient_make(parse_field_spec(field), d)
    context.recipe = build_recipe(session, recipe)
    context.E = context.recipe.build(context.ambient)

@when('the spectrum is computed')
def step_impl(context):
    context.transform = fourier_transform(context.E)

@then('the L^{p} norm equals {value:g}')
def step_impl(context, p, value):
    assert abs(lp_norm(context.transform, p) - value) < 1e-9

@then('the Salem exponent at {p} is about {value:g}')
def step_impl(context, p, value):
    assert abs(salem_exponent(context.E, p, context.transform) - value) < 1e-4

@then('the Salem exponent at {p} is infinite')
def step_impl(context, p):
    assert math.isinf(salem_exponent(context.E, p, context.transform))

@then('the Salem exponent at {p} is undefined')
def step_impl(context, p):
    isException = False
    try:
        salem_exponent(context.E, p, context.transform)
    except SalemValidationException:
        isException = True
    assert isException

@then('the transform at the origin equals the density')
def step_impl(context):
    assert abs(context.transform.origin - context.E.cardinality / context.ambient.size) < 1e-12

@then('the fast, axis and naive transforms agree')
def step_impl(context):
    fast = fourier_transform(context.E, mode="fast").values
    for mode in ("axis", "naive"):
        other = fourier_transform(context.E, mode=mode).values
        assert np.max(np.abs(fast - other)) < 1e-9, mode

@then('the Plancherel residual is negligible')
def step_impl(context):
    assert plancherel_residual(context.E) < 1e-9

@then('the transform twisted by {c:d} has the same moduli on the dilated frequencies')
def step_impl(context, c):
    a = context.ambient
    plain = fourier_transform(context.E).modulus
    twisted = fourier_transform(context.E, twist=c).modulus
    dilated = a.scale(c, a.all_indices())
    assert np.max(np.abs(twisted - plain[dilated])) < 1e-9

@when('the spectral profile over {p_list} is computed')
def step_impl(context, p_list):
    context.p_list = parse_exponent_list(p_list)
    context.profile = spectral_profile(context.E, context.p_list)

@then('the profile norms increase with p')
def step_impl(context):
    norms = [record.lp_norm for record in context.profile.records]
    assert all(a <= b * (1 + 1e-12) for a, b in zip(norms, norms[1:]))

@then('every norm is at most the trivial bound')
def step_impl(context):
    for record in context.profile.records:
        assert record.lp_norm <= spectral_bounds(context.E, record.p).trivial * (1 + 1e-12)

@then('the concavity bound for s_inf {s:g} at p {p:g} is {value:g}')
def step_impl(context, s, p, value):
    assert abs(concavity_lower_bound(s, p) - value) < 1e-12

@then('the interpolated exponent between {p0:g},{s0:g} and {p1:g},{s1:g} at {p:g} is {value:g}')
def step_impl(context, p0, s0, p1, s1, p, value):
    assert abs(interpolated_exponent(p0, s0, p1, s1, p) - value) < 1e-9

@then('the fast and naive transforms agree on {n:d} random sets over {field} in dimension {d:d}')
def step_impl(context, n, field, d):
    ambient = ambient_make(parse_field_spec(field), d)
    for i in range(n):
        alpha = 0.5 + (d - 0.5) * i / (n - 1)
        X = random_set(ambient, alpha, 100 + i)
        fast = fourier_transform(X, mode="fast").values
        naive = fourier_transform(X, mode="naive").values
        assert np.max(np.abs(fast - naive)) < 1e-9, (field, d, i)

@then('every exponent is at least the interpolation of any two around it')
def step_impl(context):
    records = [r for r in context.profile.records if r.s_emp is not None and math.isfinite(r.s_emp)]
    for i, low in enumerate(records):
        for j in range(i + 2, len(records)):
            high = records[j]
            for mid in records[i + 1:j]:
                bound = interpolated_exponent(low.p, low.s_emp, high.p, high.s_emp, mid.p)
                assert mid.s_emp >= bound - 1e-9, (low.p, mid.p, high.p)
