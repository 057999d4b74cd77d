"""
Access to the FLOOR_LAB settings dictionary with built-in defaults.
"""

from fractions import Fraction

from django.conf import settings

DEFAULTS = {
    'SPACING_RANGE_CONSTANT': Fraction(1),
    'SPACING_WINDOW_CONSTANT': Fraction(4),
    'SPACING_COUNT_CONSTANT': Fraction(2),
    'GK_BLOCK_CONSTANT': Fraction(2),
    'CERTIFIED_DIGITS': 15,
    'DECIMAL_DIGITS': 12,
    'CF_EPS': Fraction(1, 10 ** 9),
    'SWEEP_MAX_REFINEMENTS': 6,
    'DEFAULT_THREADS': 1,
    'PADE_CACHE_TIMEOUT': None,
}


def lab_setting(name):
    """Return settings.FLOOR_LAB[name], falling back to DEFAULTS."""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown FLOOR_LAB setting: {name}")
    overrides = getattr(settings, 'FLOOR_LAB', {}) or {}
    return overrides.get(name, DEFAULTS[name])
