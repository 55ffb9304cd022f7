import numpy as np
from behave import given, when, then
from salem_lp.field.gf import parse_field_spec
from salem_lp.models.exception import SalemBudgetException, SalemValidationException

@given('the field {spec}')
def step_impl(context, spec):
    context.field = parse_field_spec(spec)

@then('the inverse of {a:d} is {b:d}')
def step_impl(context, a, b):
    assert int(context.field.inv(a)) == b

@then('every non-zero element has an inverse')
def step_impl(context):
    f = context.field
    ar = np.arange(1, f.q, dtype=np.int64)
    assert np.all(f.mul(ar, f.inv(ar)) == 1)

@then('the field modulus is {coeffs}')
def step_impl(context, coeffs):
    assert context.field.modulus == tuple(int(c) for c in coeffs.split(","))

@then('the square of the generator t has index {idx:d}')
def step_impl(context, idx):
    t = context.field.element([0, 1])
    assert (t * t).idx == idx

@then('the trace of element {a:d} is {trace:d}')
def step_impl(context, a, trace):
    assert context.field.element(a).trace() == trace

@then('the character of element {a:d} is {value:g}')
def step_impl(context, a, value):
    assert abs(context.field.element(a).chi() - value) < 1e-12

@then('the additive characters sum to zero')
def step_impl(context):
    f = context.field
    assert abs(np.sum(f.chi(np.arange(f.q)))) < 1e-9

@then('the square roots of {a:d} are {roots}')
def step_impl(context, a, roots):
    expected = () if roots == "none" else tuple(int(r) for r in roots.split(","))
    assert context.field.sqrt_opt(a) == expected
    assert context.field.is_square(a) == bool(expected)

@when('the field spec {spec} is parsed')
def step_impl(context, spec):
    context.fieldError = None
    try:
        parse_field_spec(spec)
    except (SalemValidationException, SalemBudgetException) as e:
        context.fieldError = e

@then('the field spec is rejected')
def step_impl(context):
    assert isinstance(context.fieldError, SalemValidationException)

@then('the field spec exceeds the budget')
def step_impl(context):
    assert isinstance(context.fieldError, SalemBudgetException)

@then('the character is additive on every pair of elements')
def step_impl(context):
    f = context.field
    a, b = np.meshgrid(np.arange(f.q), np.arange(f.q), indexing="ij")
    assert np.max(np.abs(f.chi(f.add(a, b)) - f.chi(a) * f.chi(b))) < 1e-9

@then('the trace is invariant under Frobenius')
def step_impl(context):
    f = context.field
    ar = np.arange(f.q, dtype=np.int64)
    assert np.array_equal(f.trace(f.pow(ar, f.p)), f.trace(ar))
    assert np.all(f.trace(ar) < f.p)

@then('the primitive element generates the non-zero elements')
def step_impl(context):
    f = context.field
    g = f.primitive_element()
    assert f.order(g) == f.q - 1
    powers = {int(f.pow(np.int64(g), k)) for k in range(f.q - 1)}
    assert powers == set(range(1, f.q))
