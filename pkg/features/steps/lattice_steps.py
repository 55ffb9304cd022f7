import os
import tempfile

import numpy as np
from behave import given, when, then
from salem_lp.field.gf import parse_field_spec
from salem_lp.lattice import PointSet, ambient_make, dot, norm_sq, read_set_file, write_set_file
from salem_lp.models.exception import SalemBudgetException, SalemIllegalStateException


def coords(text):
    return tuple(int(c) for c in text.split(","))


@given('the ambient space over {field} of dimension {d:d}')
def step_impl(context, field, d):
    context.ambient = ambient_make(parse_field_spec(field), d)

@then('the dot product of {x} and {y} is {value:d}')
def step_impl(context, x, y, value):
    a = context.ambient
    assert dot(a.point(coords(x)), a.point(coords(y))).idx == value

@then('the point {x} has index {idx:d}')
def step_impl(context, x, idx):
    assert context.ambient.point(coords(x)).idx == idx

@then('the squared norm of {x} is {value:d}')
def step_impl(context, x, value):
    a = context.ambient
    m = a.point(coords(x))
    assert norm_sq(m).idx == value
    assert int(a.norm_table[m.idx]) == value

@then('the sum of {x} and {y} is {z}')
def step_impl(context, x, y, z):
    a = context.ambient
    assert (a.point(coords(x)) + a.point(coords(y))).coords == coords(z)

@then('the difference of {x} and {y} is {z}')
def step_impl(context, x, y, z):
    a = context.ambient
    assert (a.point(coords(x)) - a.point(coords(y))).coords == coords(z)

@then('scaling {x} by {c:d} gives {z}')
def step_impl(context, x, c, z):
    assert context.ambient.point(coords(x)).scale(c).coords == coords(z)

@given('the set of points {points}')
def step_impl(context, points):
    context.pointSet = PointSet.from_points(context.ambient, [coords(p) for p in points.split(";")], name="given")

@then('the point set has {n:d} elements')
def step_impl(context, n):
    assert context.pointSet.cardinality == n
    assert len(context.pointSet) == n

@then('the complement has {n:d} elements')
def step_impl(context, n):
    assert context.pointSet.complement().cardinality == n

@then('the translate by {v} contains {x}')
def step_impl(context, v, x):
    a = context.ambient
    assert a.point(coords(x)) in context.pointSet.translate(a.point(coords(v)))

@then('the full set has {n:d} elements')
def step_impl(context, n):
    assert PointSet.full(context.ambient).cardinality == n

@when('the point set is frozen')
def step_impl(context):
    context.pointSet.freeze()

@then('inserting {x} is refused')
def step_impl(context, x):
    refused = False
    try:
        context.pointSet.insert(context.ambient.point(coords(x)))
    except SalemIllegalStateException:
        refused = True
    assert refused

@when('the ambient space over {field} of dimension {d:d} is requested')
def step_impl(context, field, d):
    context.ambientError = None
    try:
        ambient_make(parse_field_spec(field), d)
    except SalemBudgetException as e:
        context.ambientError = e

@then('the ambient request exceeds the budget')
def step_impl(context):
    assert isinstance(context.ambientError, SalemBudgetException)

@when('the point set is written to a set file and read back')
def step_impl(context):
    context.pointSet.metadata["source"] = "scenario"
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "set.json")
        write_set_file(context.pointSet, path)
        context.readBack = read_set_file(path)

@then('the set read back equals the set written')
def step_impl(context):
    assert context.readBack == context.pointSet
    assert context.readBack.metadata.get("source") == "scenario"

@then('every index decodes to coordinates that encode back to it')
def step_impl(context):
    a = context.ambient
    idx = a.all_indices()
    decoded = a.decode(idx)
    assert decoded.shape == (a.size, a.d)
    assert np.array_equal(a.encode(decoded), idx)
    assert len({tuple(row) for row in decoded.tolist()}) == a.size

@then('every point is recovered from its field elements')
def step_impl(context):
    a = context.ambient
    for i in range(a.size):
        point = a.point(i)
        assert a.point(tuple(e.idx for e in point.elements())).idx == i
