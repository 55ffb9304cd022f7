import re

name_regex = r'^[a-zA-Z][a-zA-Z0-9_]*$'


class DuplicateNameError(Exception):
    pass


class InvalidNameError(Exception):
    pass


def raise_for_name_error(string):
    if not re.match(name_regex, string):
        raise InvalidNameError(f"Name '{string}' must start with a letter and contain only letters, digits and underscores.")


def validate_names(name_set: set, name: str):
    raise_for_name_error(name)
    if name in name_set:
        raise DuplicateNameError(f"The name '{name}' is already in the set.")
    name_set.add(name)
