"""JSON representation of exact values.

Rationals are strings "p/q" in lowest terms ("p" when q = 1), polynomials
are coefficient arrays and cyclotomic numbers carry their field.
"""
import json
from fractions import Fraction

from django.core.serializers.json import DjangoJSONEncoder

from .cyclotomic import CycloNumber
from .polynomials import DensePoly, LaurentPoly


def rational_to_str(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def rational_from_str(text):
    """Parse "p/q" or "p" (ints are accepted as well)."""
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f'not a rational number: {text!r}') from exc


def cyclo_to_json(value):
    return {'N': value.N, 'coefficients': [rational_to_str(c) for c in value.coeffs]}


def cyclo_from_json(data):
    return CycloNumber(int(data['N']), [rational_from_str(c) for c in data['coefficients']])


def scalar_to_json(value):
    if isinstance(value, CycloNumber):
        if value.is_rational():
            return rational_to_str(value.to_rational())
        return cyclo_to_json(value)
    return rational_to_str(value)


def poly_to_json(poly):
    if isinstance(poly, LaurentPoly):
        return {
            'min_degree': poly.min_degree,
            'coefficients': [scalar_to_json(c) for c in poly.coeffs],
        }
    return [scalar_to_json(c) for c in poly.coeffs]


def poly_from_json(data):
    if isinstance(data, dict):
        return LaurentPoly(int(data['min_degree']), [rational_from_str(c) for c in data['coefficients']])
    return DensePoly(rational_from_str(c) for c in data)


class ZetaFormsJSONEncoder(DjangoJSONEncoder):
    """DjangoJSONEncoder that also knows the exact types of this project."""

    def default(self, o):
        if isinstance(o, Fraction):
            return rational_to_str(o)
        if isinstance(o, CycloNumber):
            return scalar_to_json(o)
        if isinstance(o, (DensePoly, LaurentPoly)):
            return poly_to_json(o)
        if hasattr(o, 'to_json'):
            return o.to_json()
        return super().default(o)


def dumps(data, indent=None):
    """Deterministic JSON text: sorted keys, UTF-8 characters kept."""
    return json.dumps(data, cls=ZetaFormsJSONEncoder, sort_keys=True, indent=indent, ensure_ascii=False)
