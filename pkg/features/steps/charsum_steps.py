from behave import given, then
from salem_lp.charsums import (
    CurveMap,
    char_sum,
    char_sum_grid,
    charsum_lp,
    kloosterman_offset_check,
    kloosterman_pointwise_check,
    make_grid,
    parseval_check,
    spectrum_link_check,
    weil_pointwise_check,
)
from salem_lp.field.gf import parse_field_spec
from salem_lp.lattice import ambient_make
from salem_lp.models.exception import SalemValidationException


def frequency(context, z):
    return context.curveMap.ambient.point(tuple(int(c) for c in z.split(",")))


@given('the Kloosterman map over {field}')
def step_impl(context, field):
    context.curveMap = CurveMap.kloosterman(ambient_make(parse_field_spec(field), 2))

@given('the Weil map over {field}')
def step_impl(context, field):
    context.curveMap = CurveMap.weil(parse_field_spec(field))

@given('the polynomial map {polys} over {field}')
def step_impl(context, polys, field):
    components = polys.split(",")
    ambient = ambient_make(parse_field_spec(field), len(components))
    context.curveMap = CurveMap.polynomial(ambient, components)

@then('the character sum at {z} is about {value:g}')
def step_impl(context, z, value):
    assert abs(char_sum(context.curveMap, frequency(context, z)) - value) < 1e-6

@then('the character sum at {z} has modulus about {value:g}')
def step_impl(context, z, value):
    assert abs(abs(char_sum(context.curveMap, frequency(context, z))) - value) < 1e-6

@then('the Kloosterman pointwise check holds')
def step_impl(context):
    check = kloosterman_pointwise_check(context.field)
    assert check.holds
    assert check.checked == (context.field.q - 1) ** 2

@then('the Kloosterman offset check holds')
def step_impl(context):
    assert kloosterman_offset_check(context.field).holds

@then('the L^4 moment of the Kloosterman sums is within {c:d} sqrt(q)')
def step_impl(context, c):
    summary = charsum_lp(make_grid("kloosterman", context.field), 4, float(c))
    assert summary.holds

@then('the L^4 moment of the Weil sums is within {c:d} sqrt(q)')
def step_impl(context, c):
    summary = charsum_lp(make_grid("weil", context.field), 4, float(c))
    assert summary.holds

@then('the character sums match the transform of the image')
def step_impl(context):
    link = spectrum_link_check(context.curveMap)
    assert link.holds, link.residual

@then('the Parseval identity holds for the map')
def step_impl(context):
    assert parseval_check(context.curveMap).holds

@then('the Weil pointwise check holds with flagged degrees {flagged}')
def step_impl(context, flagged):
    check = weil_pointwise_check(context.curveMap, char_sum_grid(context.curveMap))
    expected = [] if flagged == "none" else [int(n) for n in flagged.split(",")]
    assert check.holds
    assert check.flagged_degrees == expected

@then('the spectrum identity is skipped')
def step_impl(context):
    link = spectrum_link_check(context.curveMap)
    assert link.residual is None
    assert not link.holds

@then('a general character sum grid without components is refused')
def step_impl(context):
    isException = False
    try:
        make_grid("general", context.field)
    except SalemValidationException:
        isException = True
    assert isException

def histogram(text):
    return {int(g): int(n) for g, n in (item.split(":") for item in text.split(","))}

@then('the Kloosterman fibers off the curve are {expected}')
def step_impl(context, expected):
    check = kloosterman_pointwise_check(context.field)
    assert check.fiber_histogram == histogram(expected), check.fiber_histogram

@then('the Kloosterman fibers on the curve are {expected}')
def step_impl(context, expected):
    check = kloosterman_pointwise_check(context.field)
    assert check.curve_fiber_histogram == histogram(expected), check.curve_fiber_histogram

@then('no Kloosterman fiber count is exceptional')
def step_impl(context):
    check = kloosterman_pointwise_check(context.field)
    assert check.fiber_exceptions == 0
    assert check.holds
