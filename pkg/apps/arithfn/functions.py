"""
Arithmetic functions supported on r-th powers and their constant C_f.

A PowerSupportedFunction is f(n) = h(d) when n = d^r and f(n) = 0 otherwise,
with h drawn from exactly evaluable families: a rational constant c, or a
monomial d -> d^a with integer a >= 0. Both satisfy |h(d)| <= C * d^alpha with
the envelope (C, alpha) exposed on the instance.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from apps.common.exceptions import DivergentParametersError, PreconditionError
from apps.exact.arithmetic import as_perfect_rth_power, format_rational, parse_rational

logger = logging.getLogger(__name__)

CONSTANT = 'constant'
MONOMIAL = 'monomial'
H_KINDS = (CONSTANT, MONOMIAL)


@dataclass(frozen=True)
class PowerSupportedFunction:
    """f supported on r-th powers with h a constant or an integer-power monomial."""

    r: int
    h_kind: str = CONSTANT
    coefficient: Fraction = Fraction(1)
    exponent: int = 0

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise PreconditionError(f"r must be an integer >= 1, got {self.r!r}", r=self.r)
        if self.h_kind not in H_KINDS:
            raise PreconditionError(f"Unknown h kind: {self.h_kind!r}", h_kind=self.h_kind)
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise PreconditionError(f"Monomial exponent must be an integer >= 0, got {self.exponent!r}")
        if self.h_kind == CONSTANT and self.exponent != 0:
            raise PreconditionError('A constant h cannot carry an exponent')
        if self.h_kind == MONOMIAL and self.coefficient != 1:
            raise PreconditionError('A monomial h has coefficient 1')
        object.__setattr__(self, 'coefficient', Fraction(self.coefficient))

    @classmethod
    def constant(cls, r: int, c=1) -> 'PowerSupportedFunction':
        return cls(r=r, h_kind=CONSTANT, coefficient=parse_rational(c))

    @classmethod
    def monomial(cls, r: int, a: int) -> 'PowerSupportedFunction':
        return cls(r=r, h_kind=MONOMIAL, exponent=a)

    @property
    def alpha(self) -> Fraction:
        """Growth exponent of h."""
        return Fraction(self.exponent)

    @property
    def growth_constant(self) -> Fraction:
        """C with |h(d)| <= C * d^alpha for every d >= 1."""
        if self.h_kind == CONSTANT:
            return abs(self.coefficient)
        return Fraction(1)

    @property
    def nonnegative(self) -> bool:
        return self.coefficient >= 0

    @property
    def label(self) -> str:
        """The h mini-language spelling of this function's h."""
        if self.h_kind == MONOMIAL:
            return f"pow:{self.exponent}"
        if self.coefficient == 1:
            return 'one'
        return f"const:{format_rational(self.coefficient)}"

    def eval_h(self, d: int) -> Fraction:
        """Exact value of h(d) for d >= 1."""
        return self.coefficient * d ** self.exponent

    def __str__(self):
        return f"f(r={self.r}, h={self.label})"


def parse_h(text: str, r: int) -> PowerSupportedFunction:
    """
    Build a function from the h mini-language.

    ``one`` is h = 1, ``const:<p>/<q>`` a rational constant and ``pow:<a>``
    the monomial d^a.
    """
    spec = (text or '').strip()
    if spec == 'one':
        return PowerSupportedFunction.constant(r, 1)
    kind, _, argument = spec.partition(':')
    if kind == 'const' and argument:
        return PowerSupportedFunction.constant(r, parse_rational(argument))
    if kind == 'pow' and argument:
        try:
            exponent = int(argument)
        except ValueError:
            raise PreconditionError(f"pow: needs an integer exponent, got {argument!r}")
        return PowerSupportedFunction.monomial(r, exponent)
    raise PreconditionError(f"Cannot parse h specification {text!r}; use one, const:p/q or pow:a")


def eval_f(F: PowerSupportedFunction, n: int) -> Fraction:
    """f(n): h(d) when n = d^r, zero otherwise."""
    if n < 1:
        raise PreconditionError(f"f is defined for n >= 1, got {n}", n=n)
    d = as_perfect_rth_power(n, F.r)
    if d is None:
        return Fraction(0)
    return F.eval_h(d)


@dataclass(frozen=True)
class CfEnclosure:
    """Certified interval lo <= C_f <= hi."""

    lo: Fraction
    hi: Fraction
    truncation: int = 0
    exact: bool = False
    eps: Optional[Fraction] = field(default=None, compare=False)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def scaled(self, factor) -> 'CfEnclosure':
        """The enclosure of factor * C_f for a nonnegative factor."""
        factor = Fraction(factor)
        return CfEnclosure(self.lo * factor, self.hi * factor, self.truncation, self.exact, self.eps)

    def __iter__(self) -> Iterator[Fraction]:
        yield self.lo
        yield self.hi


def check_convergent(F: PowerSupportedFunction):
    """Raise DivergentParametersError unless alpha < 2r - 1."""
    if F.alpha >= 2 * F.r - 1:
        raise DivergentParametersError(
            f"C_f diverges for {F}: alpha={format_rational(F.alpha)} >= 2r - 1 = {2 * F.r - 1}",
            r=F.r, alpha=F.alpha,
        )


def tail_majorant(F: PowerSupportedFunction, N: int) -> Fraction:
    """C * (N^(alpha-2r+1)/(2r-1-alpha) + N^(alpha-2r)), a bound on |sum over d > N|."""
    check_convergent(F)
    alpha = F.alpha
    r = F.r
    return F.growth_constant * (
        Fraction(N) ** int(alpha - 2 * r + 1) / (2 * r - 1 - alpha) + Fraction(N) ** int(alpha - 2 * r)
    )


def tail_bounds(F: PowerSupportedFunction, N: int):
    """
    Two-sided bound for the tail sum over d > N of h(d) / (d^r (d^r + 1)).

    With s = 2r - a, each term is d^-s / (1 + d^-r), which lies between
    d^-s - d^(-s-r) and d^-s; the sums of those are compared with integrals.
    """
    r = F.r
    s = 2 * r - F.exponent
    upper = Fraction(N) ** (1 - s) / (s - 1)
    lower = Fraction(N + 1) ** (1 - s) / (s - 1) - Fraction(N) ** (1 - s - r) / (s + r - 1)
    lower = max(lower, Fraction(0))
    c = F.coefficient
    if c >= 0:
        return c * lower, c * upper
    return c * upper, c * lower


def _choose_truncation(F: PowerSupportedFunction, budget: Fraction) -> int:
    def width(N):
        lo, hi = tail_bounds(F, N)
        return hi - lo

    high = 1
    while width(high) > budget:
        high *= 2
    low = max(1, high // 2)
    while low < high:
        middle = (low + high) // 2
        if width(middle) <= budget:
            high = middle
        else:
            low = middle + 1
    return high


def compute_Cf(F: PowerSupportedFunction, eps) -> CfEnclosure:
    """
    Certified enclosure of C_f = sum over n of f(n) / (n(n+1)) with width <= eps.

    For r = 1 with constant h the series telescopes to h exactly. Otherwise
    the sum up to N is accumulated with per-term floor/ceiling at a decimal
    scale and the tail is enclosed by tail_bounds; N and the scale are chosen
    so that each part uses at most half of eps.
    """
    eps = parse_rational(eps)
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}", eps=eps)
    check_convergent(F)

    if F.r == 1 and F.exponent == 0:
        value = F.coefficient
        return CfEnclosure(value, value, truncation=0, exact=True, eps=eps)

    budget = eps / 2
    N = _choose_truncation(F, budget)
    scale = 1
    while Fraction(N, scale) > budget:
        scale *= 10

    p, q = F.coefficient.numerator, F.coefficient.denominator
    r, a = F.r, F.exponent
    low_total = 0
    high_total = 0
    for d in range(1, N + 1):
        power = d ** r
        numerator = p * d ** a * scale
        denominator = q * power * (power + 1)
        low_total += numerator // denominator
        high_total -= (-numerator) // denominator

    tail_lo, tail_hi = tail_bounds(F, N)
    enclosure = CfEnclosure(
        Fraction(low_total, scale) + tail_lo,
        Fraction(high_total, scale) + tail_hi,
        truncation=N,
        eps=eps,
    )
    logger.debug(
        f"C_f for {F}: truncated at N={N}, scale=10^{len(str(scale)) - 1}, "
        f"width={float(enclosure.width):.3e} (eps={float(eps):.3e})"
    )
    return enclosure
