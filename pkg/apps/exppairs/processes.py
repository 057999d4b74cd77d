"""
Exponent pairs generated from (1/2, 1/2) by the A and B processes.

A(k, l) = (k / (2k + 2), (k + l + 1) / (2k + 2)) and B(k, l) = (l - 1/2, k + 1/2).
Words are read right to left: "BA2" means apply A twice, then B. All
arithmetic is exact.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from apps.common.conf import lab_setting
from apps.common.exceptions import PreconditionError, RangeViolationError, WordParseError
from apps.exact.arithmetic import HALF, format_rational, parse_rational, rational_power_upper

logger = logging.getLogger(__name__)

WORD_TOKEN = re.compile(r'([AB])(?:\^?(\d+))?')


@dataclass(frozen=True)
class ExponentPair:
    k: Fraction
    ell: Fraction
    word: Tuple[str, ...] = ()

    @property
    def word_string(self) -> str:
        return compress_word(self.word)

    @property
    def ratio(self) -> Optional[Fraction]:
        """ell / k, undefined when k = 0."""
        if self.k == 0:
            return None
        return self.ell / self.k

    def as_dict(self):
        return {
            'word': self.word_string,
            'k': format_rational(self.k),
            'ell': format_rational(self.ell),
            'ratio': format_rational(self.ratio) if self.ratio is not None else None,
        }

    def __str__(self):
        ratio = format_rational(self.ratio) if self.ratio is not None else 'undefined'
        return f"k={format_rational(self.k)} ell={format_rational(self.ell)} ratio={ratio}"


TRIVIAL_PAIR = ExponentPair(HALF, HALF)


def process_A(p: ExponentPair) -> ExponentPair:
    denominator = 2 * p.k + 2
    return ExponentPair(p.k / denominator, (p.k + p.ell + 1) / denominator, ('A',) + p.word)


def process_B(p: ExponentPair) -> ExponentPair:
    return ExponentPair(p.ell - HALF, p.k + HALF, ('B',) + p.word)


PROCESSES = {'A': process_A, 'B': process_B}


def parse_word(word: str) -> Tuple[str, ...]:
    """Expand shorthand such as "BA2" or "BA^2" into ('B', 'A', 'A')."""
    text = (word or '').strip()
    letters = []
    position = 0
    while position < len(text):
        match = WORD_TOKEN.match(text, position)
        if match is None:
            raise WordParseError(f"Unexpected character {text[position]!r} in word {word!r}", word=word)
        letter, repeat = match.groups()
        letters.extend(letter * (int(repeat) if repeat else 1))
        position = match.end()
    return tuple(letters)


def compress_word(letters: Tuple[str, ...]) -> str:
    """Inverse of parse_word using digit exponents for runs."""
    parts = []
    index = 0
    while index < len(letters):
        run = 1
        while index + run < len(letters) and letters[index + run] == letters[index]:
            run += 1
        parts.append(letters[index] + (str(run) if run > 1 else ''))
        index += run
    return ''.join(parts)


def eval_word(word) -> ExponentPair:
    """Apply the word's processes to (1/2, 1/2), rightmost first."""
    letters = parse_word(word) if isinstance(word, str) else tuple(word)
    pair = TRIVIAL_PAIR
    for letter in reversed(letters):
        if letter not in PROCESSES:
            raise WordParseError(f"Unknown process {letter!r}", word=word)
        pair = PROCESSES[letter](pair)
    return pair


@dataclass(frozen=True)
class SearchResult:
    r: int
    pair: Optional[ExponentPair]
    distance: Optional[Fraction]
    max_len: int
    explored: int

    @property
    def success(self) -> bool:
        return self.distance == 0

    def as_dict(self):
        payload = {
            'r': self.r,
            'max_len': self.max_len,
            'explored': self.explored,
            'distance': format_rational(self.distance) if self.distance is not None else None,
        }
        if self.pair is not None:
            payload.update(self.pair.as_dict())
        return payload


def _preferred(candidate: ExponentPair, incumbent: ExponentPair) -> bool:
    return (len(candidate.word), candidate.word) < (len(incumbent.word), incumbent.word)


def _prune_dominated(level: List[ExponentPair]) -> List[ExponentPair]:
    kept = []
    for pair in level:
        dominated = any(
            other.k <= pair.k and other.ell <= pair.ell and (other.k, other.ell) != (pair.k, pair.ell)
            for other in level
        )
        if not dominated:
            kept.append(pair)
    return kept


def search_ratio(r: int, max_len: int, eps=0, prune_dominated: bool = False) -> SearchResult:
    """
    Breadth-first search over words of length <= max_len for ell/k closest to r.

    Pairs reached twice keep their shortest, then lexicographically least,
    word. The search stops at the first length where the distance is <= eps.
    Ties in distance prefer the shorter, then lexicographically least, word.
    """
    if r < 1:
        raise PreconditionError(f"r must be at least 1, got {r}", r=r)
    if max_len < 0:
        raise PreconditionError(f"max_len must be nonnegative, got {max_len}", max_len=max_len)
    eps = parse_rational(eps)

    seen: Dict[Tuple[Fraction, Fraction], ExponentPair] = {(TRIVIAL_PAIR.k, TRIVIAL_PAIR.ell): TRIVIAL_PAIR}
    level = [TRIVIAL_PAIR]
    best = None
    best_distance = None
    explored = 0

    def consider(pair):
        nonlocal best, best_distance
        if pair.k == 0:
            return
        distance = abs(pair.ell / pair.k - r)
        if best is None or distance < best_distance or (distance == best_distance and _preferred(pair, best)):
            best, best_distance = pair, distance

    consider(TRIVIAL_PAIR)
    length = 0
    while length < max_len and not (best_distance is not None and best_distance <= eps):
        length += 1
        candidates: Dict[Tuple[Fraction, Fraction], ExponentPair] = {}
        for parent in level:
            for process in (process_A, process_B):
                child = process(parent)
                key = (child.k, child.ell)
                if key in seen:
                    continue
                if key not in candidates or _preferred(child, candidates[key]):
                    candidates[key] = child
        level = sorted(candidates.values(), key=lambda pair: pair.word)
        if prune_dominated:
            level = _prune_dominated(level)
        for pair in level:
            seen[(pair.k, pair.ell)] = pair
            consider(pair)
        explored += len(level)
        logger.debug(f"search_ratio r={r}: length {length}, {len(level)} new pairs")
        if not level:
            break

    return SearchResult(r=r, pair=best, distance=best_distance, max_len=max_len, explored=explored)


def gk_bound(p: ExponentPair, y, N: int, r: int) -> Fraction:
    """Upper rounding of y^(k/(k+1)) N^((ell-rk)/(k+1)) + N^(r+1)/y."""
    y = parse_rational(y)
    if y <= 0 or N < 1:
        raise PreconditionError(f"Expected y > 0 and N >= 1, got y={y}, N={N}", y=y, N=N)
    digits = lab_setting('CERTIFIED_DIGITS')
    first = rational_power_upper(y, p.k / (p.k + 1), digits)
    first *= rational_power_upper(Fraction(N), (p.ell - r * p.k) / (p.k + 1), digits)
    return first + Fraction(N ** (r + 1)) / y


@dataclass(frozen=True)
class TheoremParameters:
    r: int
    alpha: Fraction
    eta: int
    l_choice: int
    A_exponent: Fraction
    error_exponent: Fraction


def theorem_parameters(r: int, alpha) -> TheoremParameters:
    """eta is the parity of r, l = (r + eta)/2 and A = x^(l/(r+l))."""
    if r < 1:
        raise PreconditionError(f"r must be at least 1, got {r}", r=r)
    alpha = parse_rational(alpha)
    eta = r % 2
    l_choice = (r + eta) // 2
    return TheoremParameters(
        r=r,
        alpha=alpha,
        eta=eta,
        l_choice=l_choice,
        A_exponent=Fraction(l_choice, r + l_choice),
        error_exponent=2 * (1 + alpha) / (3 * r + eta),
    )


@dataclass(frozen=True)
class TheoremExponents:
    params: TheoremParameters
    thm1: Fraction
    trivial: Fraction
    thm2: Optional[Fraction] = None
    thm2_terms: Optional[Tuple[Fraction, Fraction]] = None
    conj: Optional[Fraction] = None
    pair: Optional[ExponentPair] = None
    skipped: Optional[str] = None

    @property
    def log_factor(self) -> bool:
        return self.params.alpha == 0

    def as_dict(self):
        def render(value):
            return format_rational(value) if value is not None else None

        return {
            'r': self.params.r,
            'alpha': render(self.params.alpha),
            'eta': self.params.eta,
            'l_choice': self.params.l_choice,
            'A_exponent': render(self.params.A_exponent),
            'thm1': render(self.thm1),
            'thm2': render(self.thm2),
            'thm2_terms': [render(t) for t in self.thm2_terms] if self.thm2_terms else None,
            'conj': render(self.conj),
            'trivial': render(self.trivial),
            'log_factor': self.log_factor,
            'pair': self.pair.as_dict() if self.pair else None,
            'skipped': self.skipped,
        }


def theorem_exponents(r: int, alpha, p: Optional[ExponentPair] = None, search_len: int = 8) -> TheoremExponents:
    """
    Error exponents of the general estimate, the exponent-pair estimate and
    the conjectured one.

    Without an explicit pair, one with ell = r k is searched for among words
    of length <= search_len. The exponent-pair and conjectured values are
    skipped, with a reason, when r = 1 or alpha > 1/(2r - 1).
    """
    params = theorem_parameters(r, alpha)
    alpha = params.alpha
    eta = params.eta
    if alpha < 0 or alpha >= Fraction(r + 2 - eta, 2 * r - 2 + 2 * eta):
        raise RangeViolationError('0 <= alpha < (r+2-eta)/(2r-2+2eta)', r=r, alpha=alpha)

    thm1 = params.error_exponent
    trivial = (1 + alpha) / (r + 1)
    if r == 1:
        return TheoremExponents(params, thm1, trivial, skipped='r = 1 has no exponent-pair estimate')
    if alpha > Fraction(1, 2 * r - 1):
        return TheoremExponents(params, thm1, trivial, skipped='alpha > 1/(2r-1)')

    conj = (1 + alpha) / (2 * r)
    if p is None:
        result = search_ratio(r, search_len)
        if not result.success:
            return TheoremExponents(
                params, thm1, trivial, conj=conj,
                skipped=f"no pair with ell = {r}k among words of length <= {search_len}",
            )
        p = result.pair
    elif p.ell != r * p.k:
        raise RangeViolationError('ell = r k', k=p.k, ell=p.ell, r=r)

    terms = (alpha / (r + 1) + p.k / (p.k + 1), (1 + alpha) / (2 * r))
    return TheoremExponents(
        params, thm1, trivial, thm2=max(terms), thm2_terms=terms, conj=conj, pair=p,
    )
