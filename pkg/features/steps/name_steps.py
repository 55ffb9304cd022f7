from behave import when, then
from salem_lp.yaml.config import is_valid_name
from salem_lp.yaml.validators import raise_for_name_error

@when('use the parameter name, {name}')
def step_impl(context, name):
    isException = "False"
    try:
        raise_for_name_error(name)
    except Exception as e:
        isException = "True"
    context.isException = isException

@then('the parameter name should be {validity}')
def step_impl(context, validity):
    expected = "True" if validity == "invalid" else "False"
    assert context.isException == expected

@when('use the experiment name, {name}')
def step_impl(context, name):
    context.nameValid = is_valid_name(name)

@then('the experiment name should be {validity}')
def step_impl(context, validity):
    assert context.nameValid == (validity == "valid")
