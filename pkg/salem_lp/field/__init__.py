from salem_lp.field.gf import (
    FieldParams,
    FieldElement,
    field_make,
    parse_field_spec,
    is_prime,
    is_irreducible,
    canonical_modulus,
    prime_power,
)

__all__ = [
    'FieldParams',
    'FieldElement',
    'field_make',
    'parse_field_spec',
    'is_prime',
    'is_irreducible',
    'canonical_modulus',
    'prime_power',
]
