import math

from behave import given, when, then
from salem_lp.builders.recipe_builder import build_recipe, parse_recipe
from salem_lp.constructions.polynomials import parse_polynomial
from salem_lp.field.gf import parse_field_spec
from salem_lp.lattice import ambient_make
from salem_lp.spectrum import as_exponent
from salem_lp.state.salem_session import SalemSession


def session_for(context):
    if not hasattr(context, "session"):
        context.session = SalemSession(log_level="ERROR")
    return context.session


@when('the recipe {grammar} is parsed')
def step_impl(context, grammar):
    context.recipeName, context.recipeParams = parse_recipe(grammar)

@then('the recipe name is {name}')
def step_impl(context, name):
    assert context.recipeName == name

@then('the parameter {key} holds {n:d} components')
def step_impl(context, key, n):
    assert len(context.recipeParams[key]) == n

@then('the parameter {key} holds {value}')
def step_impl(context, key, value):
    assert context.recipeParams[key] == value

@given('the recipe {grammar}')
def step_impl(context, grammar):
    context.recipe = build_recipe(session_for(context), grammar)

@then('the recipe grammar is {grammar}')
def step_impl(context, grammar):
    assert context.recipe.grammar() == grammar

@when('the recipe {grammar} is built')
def step_impl(context, grammar):
    isException = "False"
    try:
        build_recipe(session_for(context), grammar)
    except Exception as e:
        isException = "True"
    context.isException = isException

@then('the recipe is refused')
def step_impl(context):
    assert context.isException == "True"

@then('the predicted exponent over {field} in dimension {d:d} at {p} is {s:g}')
def step_impl(context, field, d, p, s):
    ambient = ambient_make(parse_field_spec(field), d)
    assert context.recipe.admissible(ambient) is None
    assert abs(context.recipe.predicted(ambient, as_exponent(p)) - s) < 1e-9

@then('there is no prediction over {field} in dimension {d:d} at {p}')
def step_impl(context, field, d, p):
    ambient = ambient_make(parse_field_spec(field), d)
    assert context.recipe.predicted(ambient, as_exponent(p)) is None

@then('the product prediction over {field} in dimension {d:d} at {p:g} lies between the summand predictions')
def step_impl(context, field, d, p):
    recipe = context.recipe
    f = parse_field_spec(field)
    k = recipe.params["k"]
    s = recipe.params["left"].predicted(ambient_make(f, k), p)
    t = recipe.params["right"].predicted(ambient_make(f, d - k), p)
    combined = recipe.predicted(ambient_make(f, d), p)
    assert combined is not None and math.isfinite(combined)
    assert min(s, t) - 1e-9 <= combined <= max(s, t) + 1e-9

@when('the recipe is registered as {name}')
def step_impl(context, name):
    session_for(context).register_recipe(name, context.recipe)

@then('the recipe {name} resolves to the registered recipe')
def step_impl(context, name):
    assert build_recipe(session_for(context), name) is context.recipe

@then('the recipe {grammar} is refused')
def step_impl(context, grammar):
    isException = False
    try:
        build_recipe(session_for(context), grammar)
    except Exception:
        isException = True
    assert isException

@then('the recipe {grammar} builds {n:d} points over {field} in dimension {d:d}')
def step_impl(context, grammar, n, field, d):
    recipe = build_recipe(session_for(context), grammar)
    assert recipe.build(ambient_make(parse_field_spec(field), d)).cardinality == n

@then('the polynomial {poly} over {field} has coefficients {coeffs}')
def step_impl(context, poly, field, coeffs):
    assert parse_polynomial(poly, parse_field_spec(field)) == [int(c) for c in coeffs.split(",")]
