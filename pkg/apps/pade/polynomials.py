"""
Polynomial pairs P, Q of degree l - 1 with P(x)(1-x)^r - Q(x) = O(x^(2l-1)).

Pairs are the nullspace of the coefficient system, solved exactly with sympy
and normalised to a primitive integer pair whose P has a positive leading
coefficient. Every pair is verified before it is returned.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import sympy
from django.core.cache import cache

from apps.common.conf import lab_setting
from apps.common.exceptions import PreconditionError, VerificationError

logger = logging.getLogger(__name__)

X, Y, B = sympy.symbols('x y b')


@dataclass(frozen=True)
class PolyPair:
    """Coefficient lists are ascending: P[j] multiplies x^j."""

    r: int
    l: int
    P: Tuple[int, ...]
    Q: Tuple[int, ...]

    @property
    def v_P(self) -> int:
        return self.P[-1]

    @property
    def v_Q(self) -> int:
        return self.Q[-1]

    def as_dict(self):
        return {
            'r': self.r,
            'l': self.l,
            'P': list(self.P),
            'Q': list(self.Q),
            'remainder': remainder_coefficients(self),
            'remainder_order': remainder_order(self),
            'bound_constant': bound_constant(self),
        }


def _poly(coefficients: Sequence[int]) -> sympy.Poly:
    """Ascending coefficients as a polynomial in x."""
    return sympy.Poly(list(reversed(coefficients)), X)


def _ascending(poly: sympy.Poly, size: int) -> List[int]:
    symbol = poly.gens[0]
    return [int(poly.coeff_monomial(symbol ** k)) for k in range(size)]


def pade_system(r: int, l: int) -> sympy.Matrix:
    """
    Rows are the coefficients of x^0 .. x^(2l-2) of P(x)(1-x)^r - Q(x).

    Columns are p_0 .. p_(l-1) followed by q_0 .. q_(l-1).
    """
    series = sympy.Poly((1 - X) ** r, X)

    def entry(k, column):
        if column < l:
            return series.coeff_monomial(X ** (k - column)) if k >= column else 0
        return -1 if column - l == k else 0

    return sympy.Matrix(2 * l - 1, 2 * l, entry)


def _nullspace_vector(matrix: sympy.Matrix, column_order: Sequence[int]) -> List[sympy.Rational]:
    """The one nullspace vector of matrix, with columns visited in column_order."""
    basis = matrix.extract(list(range(matrix.rows)), list(column_order)).nullspace()
    if len(basis) != 1:
        raise VerificationError(f"Expected a one-dimensional solution space, found dimension {len(basis)}")
    solution = [sympy.Integer(0)] * matrix.cols
    for position, column in enumerate(column_order):
        solution[column] = sympy.Rational(basis[0][position])
    return solution


def _primitive(values: Sequence[sympy.Rational]) -> List[int]:
    scale = sympy.ilcm(*[v.q for v in values])
    integers = [int(v * scale) for v in values]
    divisor = sympy.igcd(*integers) or 1
    return [v // divisor for v in integers]


def construct_pade(r: int, l: int, column_order: Optional[Sequence[int]] = None) -> PolyPair:
    """
    Solve for the pair (P, Q) of degree l - 1 and return it verified.

    column_order permutes the unknowns before the nullspace is taken; the
    normalised result does not depend on it.
    """
    if r < 2 or not 1 <= l <= r:
        raise PreconditionError(f"Expected r >= 2 and 1 <= l <= r, got r={r}, l={l}", r=r, l=l)
    order = list(column_order) if column_order is not None else list(range(2 * l))
    if sorted(order) != list(range(2 * l)):
        raise PreconditionError(f"column_order must be a permutation of 0..{2 * l - 1}")

    solution = _primitive(_nullspace_vector(pade_system(r, l), order))
    if solution[l - 1] < 0:
        solution = [-v for v in solution]
    pair = PolyPair(r=r, l=l, P=tuple(solution[:l]), Q=tuple(solution[l:]))
    verify_pair(pair)
    logger.debug(f"Constructed pair for r={r}, l={l}: P={pair.P}, Q={pair.Q}")
    return pair


def get_pade(r: int, l: int) -> PolyPair:
    """construct_pade behind the Django cache."""
    key = f"pade:{r}:{l}"
    pair = cache.get(key)
    if pair is None:
        pair = construct_pade(r, l)
        cache.set(key, pair, timeout=lab_setting('PADE_CACHE_TIMEOUT'))
    return pair


def remainder_coefficients(pp: PolyPair) -> List[int]:
    """Coefficients of P(x)(1-x)^r - Q(x), ascending."""
    remainder = _poly(pp.P) * sympy.Poly((1 - X) ** pp.r, X) - _poly(pp.Q)
    return _ascending(remainder, pp.l + pp.r)


def remainder_order(pp: PolyPair) -> int:
    """Index of the first nonzero remainder coefficient."""
    for index, value in enumerate(remainder_coefficients(pp)):
        if value != 0:
            return index
    raise VerificationError(f"Remainder vanishes identically for r={pp.r}, l={pp.l}")


def verify_pair(pp: PolyPair):
    """Raise VerificationError unless every structural property of the pair holds."""
    if len(pp.P) != pp.l or len(pp.Q) != pp.l:
        raise VerificationError(f"P and Q must have {pp.l} coefficients", P=pp.P, Q=pp.Q)
    if any(value == 0 for value in pp.P + pp.Q):
        raise VerificationError('P and Q must have only nonzero coefficients', P=pp.P, Q=pp.Q)
    if pp.P[0] != pp.Q[0]:
        raise VerificationError('P(0) must equal Q(0)', P=pp.P, Q=pp.Q)
    order = remainder_order(pp)
    if order < 2 * pp.l - 1:
        raise VerificationError(
            f"Remainder order {order} is below {2 * pp.l - 1}", r=pp.r, l=pp.l
        )


@lru_cache(maxsize=None)
def homogeneous_forms(pp: PolyPair) -> Tuple[sympy.Poly, sympy.Poly]:
    """P0(x, y) = y^(l-1) P(x/y) and Q0(x, y) = y^(l-1) Q(x/y)."""
    degree = pp.l - 1

    def form(coefficients):
        return sympy.Poly(sum(c * X ** j * Y ** (degree - j) for j, c in enumerate(coefficients)), X, Y)

    return form(pp.P), form(pp.Q)


def homogenize_eval(pp: PolyPair, a: int, d: int) -> Tuple[int, int]:
    """(P0, Q0) = (d^(l-1) P(a/d), d^(l-1) Q(a/d)) as exact integers."""
    if d < 1:
        raise PreconditionError(f"d must be positive, got {d}", d=d)
    P0, Q0 = homogeneous_forms(pp)
    return int(P0(a, d)), int(Q0(a, d))


def homogeneous_remainder(pp: PolyPair, a: int, d: int) -> int:
    """P0(a, d)(d - a)^r - Q0(a, d) d^r."""
    P0, Q0 = homogenize_eval(pp, a, d)
    return P0 * (d - a) ** pp.r - Q0 * d ** pp.r


def bound_constant(pp: PolyPair) -> int:
    """K with |homogeneous_remainder| <= K |a|^(2l-1) d^(r-l) whenever |a| <= d/2."""
    return sum(abs(value) for value in remainder_coefficients(pp)) * 2 ** (pp.r - pp.l)


def b_polynomial(pp: PolyPair, a: int, d: int, n1: int, n2: int) -> List[int]:
    """
    Coefficients in b of P0(a+b, d) Q0(b, d+a) n2 - P0(b, d+a) Q0(a+b, d) n1.

    The polynomial has degree 2l - 2 with leading coefficient
    v_P v_Q (n2 - n1).
    """
    P0, Q0 = (form.as_expr() for form in homogeneous_forms(pp))

    def at(form, first, second):
        return form.subs({X: first, Y: second}, simultaneous=True)

    expression = (
        at(P0, a + B, d) * at(Q0, B, d + a) * n2
        - at(P0, B, d + a) * at(Q0, a + B, d) * n1
    )
    return _ascending(sympy.Poly(sympy.expand(expression), B), 2 * pp.l - 1)
