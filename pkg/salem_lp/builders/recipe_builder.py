import re

import yaml

from salem_lp.common.salem_logger import builder_logger
from salem_lp.constructions.recipe import SetRecipe
from salem_lp.factory.recipe_factory import RecipeFactory
from salem_lp.models.exception import SalemValidationException
from salem_lp.state.salem_session import SalemSession
from salem_lp.yaml.validators import DuplicateNameError, InvalidNameError, validate_names

recipe_regex = r'^\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$'
nested_recipe_regex = r'^(?!k\s*\()[A-Za-z_][A-Za-z0-9_]*\s*\('

OPENERS = {"(": ")", "[": "]"}


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Splits on sep outside of brackets and parentheses."""
    parts, depth, current = [], [], []
    for ch in text:
        if ch in OPENERS:
            depth.append(OPENERS[ch])
        elif depth and ch == depth[-1]:
            depth.pop()
        elif ch in ")]":
            raise SalemValidationException(f"Unbalanced '{ch}' in {text!r}")
        if ch == sep and not depth:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth:
        raise SalemValidationException(f"Unclosed bracket in {text!r}")
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def _parse_value(text: str):
    if re.match(nested_recipe_regex, text):
        # nested recipe, built by the factory
        return text
    if text.startswith("[") and text.endswith("]"):
        return [_parse_value(item) for item in split_top_level(text[1:-1])]
    if "(" in text:
        return text
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError:
        raise SalemValidationException(f"Malformed parameter value: {text!r}")


def parse_recipe(grammar: str) -> tuple[str, dict]:
    """'name(param=value, ...)' -> (name, params)."""
    match = re.match(recipe_regex, grammar, re.DOTALL)
    if not match:
        raise SalemValidationException(f"Malformed recipe: {grammar!r}")
    name, body = match.group(1), match.group(2) or ""
    params: dict = {}
    names: set = set()
    for part in split_top_level(body):
        if "=" not in part:
            raise SalemValidationException(f"Recipe parameter must be key=value, got {part!r}")
        key, value = (s.strip() for s in part.split("=", 1))
        try:
            validate_names(names, key)
        except (DuplicateNameError, InvalidNameError) as e:
            builder_logger.error(f"Bad recipe parameter in {grammar!r}: {e}")
            raise
        params[key] = _parse_value(value)
    return name, params


def build_recipe(session: SalemSession, grammar: str) -> SetRecipe:
    name, params = parse_recipe(grammar)
    if name in session.recipes:
        if params:
            raise SalemValidationException(f"Registered recipe '{name}' takes no parameters")
        return session.recipes[name]
    params = {key: build_recipe(session, value) if isinstance(value, str) and re.match(nested_recipe_regex, value) else value
              for key, value in params.items()}
    builder_logger.debug(f"Building recipe {name} with {params}")
    return RecipeFactory.create(session, name, params)
