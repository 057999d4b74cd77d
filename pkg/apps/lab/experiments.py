"""
The nine lab experiments behind the management commands.

Each experiment validates its options with a serializer from
apps.lab.serializers, computes its rows exactly, and returns an
ExperimentResult holding the CSV header and rows, a JSON-friendly summary and
the human-readable summary lines.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

from rest_framework import serializers

from apps.arithfn.functions import compute_Cf, tail_majorant
from apps.common.conf import lab_setting
from apps.common.exceptions import FitError, InvariantViolation
from apps.exact.arithmetic import decimal_string, format_rational, integer_rth_root
from apps.exppairs.processes import eval_word, gk_bound, search_ratio, theorem_exponents
from apps.floorsum.sums import (
    E_flat,
    E_sharp,
    E_total,
    brute_Sf,
    conjecture_psi_sum,
    decompose,
    fast_Sf,
    gk_block_sums,
    main_term,
    sharp_sum,
)
from apps.pade.polynomials import get_pade
from apps.spacing.sets import (
    admissible,
    admissible_grid,
    calibrate,
    dyadic_grid,
    spacing_bound_report,
    vanishing_violations,
)

from .csvio import SWEEP_HEADER, read_sweep_csv, sweep_table
from .serializers import (
    CfConfigSerializer,
    DecomposeConfigSerializer,
    ExpPairConfigSerializer,
    FitConfigSerializer,
    PadeConfigSerializer,
    PsiConfigSerializer,
    SpacingConfigSerializer,
    SumConfigSerializer,
    SweepConfigSerializer,
)
from .sweeps import fit_exponent, fit_points, geometric_grid, ordered_map, sweep

logger = logging.getLogger(__name__)

DEFAULT_CALIBRATION_GRID = [10 ** 5, 10 ** 6, 10 ** 7]


@dataclass
class ExperimentResult:
    kind: str
    parameters: Dict[str, Any]
    header: List[str]
    rows: List[list]
    summary: Dict[str, Any] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)


def _violation(message, **details):
    logger.error(message)
    return InvariantViolation(message, **details)


def run_sum(cfg):
    F, x, method = cfg['F'], cfg['x'], cfg['method']
    values = {}
    if method in ('fast', 'both'):
        values['fast'] = fast_Sf(F, x)
    if method in ('brute', 'both'):
        values['brute'] = brute_Sf(F, x)
    if len(set(values.values())) > 1:
        raise _violation(
            f"fast_Sf and brute_Sf disagree for {F} at x={x}: "
            f"{format_rational(values['fast'])} != {format_rational(values['brute'])}",
            x=x,
        )
    value = next(iter(values.values()))
    return (
        ['x', 'r', 'h', 's_f'],
        [[x, F.r, F.label, value]],
        {'s_f': format_rational(value), 'method': method},
        [f"S_f({x}) = {format_rational(value)} for {F}"],
    )


def run_decompose(cfg):
    F, x, A, B = cfg['F'], cfg['x'], cfg['A'], cfg['B']
    dec = decompose(F, x, A, B, verify=cfg['verify'])
    e_sharp = (E_sharp(F, x, A, 0), E_sharp(F, x, A, 1))
    e_flat = (E_flat(F, x, A, B, 0), E_flat(F, x, A, B, 1))
    unclamped = sharp_sum(F, x, A)
    main = main_term(F, x, A)
    if unclamped != main + e_sharp[1] - e_sharp[0]:
        raise _violation(f"Main-term reconstruction fails for {F}, x={x}, A={format_rational(A)}", x=x, A=A)
    total_error = E_total(F, x, A, B)

    summary = dec.as_dict()
    summary.update({
        'main_term': format_rational(main),
        'E_sharp': [format_rational(v) for v in e_sharp],
        'E_flat': [format_rational(v) for v in e_flat],
        'E_total': format_rational(total_error),
    })
    lines = [
        f"dagger={format_rational(dec.dagger)} flat={format_rational(dec.flat)} "
        f"sharp={format_rational(dec.sharp)} boundary={format_rational(dec.boundary_correction)}",
        f"total={format_rational(dec.total)} E_total={format_rational(total_error)}",
    ]
    return (
        ['x', 'A', 'B', 'dagger', 'flat', 'sharp', 'boundary_correction', 'total', 'E_total'],
        [[x, A, B, dec.dagger, dec.flat, dec.sharp, dec.boundary_correction, dec.total, total_error]],
        summary,
        lines,
    )


def run_cf(cfg):
    F = cfg['F']
    eps = cfg.get('eps') or lab_setting('CF_EPS')
    enclosure = compute_Cf(F, eps)
    majorant = tail_majorant(F, enclosure.truncation) if enclosure.truncation else Fraction(0)
    digits = lab_setting('DECIMAL_DIGITS')
    return (
        ['r', 'h', 'eps', 'cf_lo', 'cf_hi', 'truncation', 'tail_majorant'],
        [[F.r, F.label, eps, enclosure.lo, enclosure.hi, enclosure.truncation, majorant]],
        {
            'cf_lo': format_rational(enclosure.lo),
            'cf_hi': format_rational(enclosure.hi),
            'exact': enclosure.exact,
            'truncation': enclosure.truncation,
        },
        [
            f"C_f in [{decimal_string(enclosure.lo, digits)}, {decimal_string(enclosure.hi, digits)}] "
            f"for {F} (N={enclosure.truncation})"
        ],
    )


def run_pade(cfg):
    r = cfg['r']
    ls = [cfg['l']] if cfg.get('l') is not None else list(range(1, r + 1))
    rows, pairs, lines = [], [], []
    for l in ls:
        pair = get_pade(r, l)
        details = pair.as_dict()
        pairs.append(details)
        rows.append([r, l, list(pair.P), list(pair.Q), details['remainder_order'], details['bound_constant']])
        lines.append(
            f"r={r} l={l}: P={list(pair.P)} Q={list(pair.Q)} "
            f"order={details['remainder_order']} K={details['bound_constant']}"
        )
    return ['r', 'l', 'P', 'Q', 'remainder_order', 'bound_constant'], rows, {'pairs': pairs}, lines


def _check_report(report, l):
    count_constant = lab_setting('SPACING_COUNT_CONSTANT')
    if report.count > count_constant * report.bound_value:
        raise _violation(f"|T({report.D})| = {report.count} exceeds the count bound at x={report.x}", D=report.D)
    if l >= 2:
        if report.max_cluster > 2 * l:
            raise _violation(f"Window of T({report.D}) holds {report.max_cluster} > {2 * l} elements", D=report.D)
        violations = vanishing_violations(report.x, report.r, l, report.D, report.window, report.elements)
        if violations:
            first = violations[0]
            raise _violation(
                f"Modified difference {first.value} != 0 at d={first.d}, a={first.a}, x={report.x}",
                D=report.D,
            )


def run_spacing(cfg):
    r, l = cfg['r'], cfg['l']
    if cfg['calibrate']:
        grid = cfg.get('grid') or DEFAULT_CALIBRATION_GRID
        calibration = calibrate(grid, r, l)
        details = calibration.as_dict()
        return (
            ['r', 'l', 'window_constant', 'count_constant', 'max_cluster', 'reports', 'pairs_examined', 'saturated'],
            [[
                r, l, calibration.window_constant, calibration.count_constant, calibration.max_cluster,
                calibration.reports, calibration.pairs_examined, calibration.saturated,
            ]],
            details,
            [
                f"window constant {details['window_constant']}, count constant "
                f"{decimal_string(calibration.count_constant, 6)}, densest window {calibration.max_cluster} "
                f"over {calibration.reports} reports, {calibration.pairs_examined} close pairs examined"
            ],
        )

    x = cfg['x']
    if cfg.get('dmin') is not None:
        grid = dyadic_grid(cfg['dmin'], cfg.get('dmax') or integer_rth_root(x, r))
    else:
        grid = admissible_grid(x, r, l)
    rows = []
    for D in grid:
        report = spacing_bound_report(x, r, l, D, cfg.get('window_constant'))
        if cfg['check'] and admissible(x, r, l, D):
            _check_report(report, l)
        rows.append([D, report.count, report.bound_value, report.max_cluster, report.L_used])
    return (
        ['D', 'count', 'bound_value', 'max_cluster', 'L_used'],
        rows,
        {'x': x, 'r': r, 'l': l, 'reports': len(rows)},
        [f"{len(rows)} dyadic blocks for x={x}, r={r}, l={l}"],
    )


def run_exppair(cfg):
    if cfg['theorem']:
        pair = eval_word(cfg['word']) if cfg.get('word') else None
        result = theorem_exponents(cfg['r'], cfg.get('alpha') or 0, pair)
        details = result.as_dict()
        header = ['r', 'alpha', 'thm1', 'thm2', 'conj', 'trivial', 'log_factor', 'skipped']
        row = [details[name] for name in header]
        line = ' '.join(f"{name}={details[name]}" for name in header if details[name] is not None)
        return header, [row], details, [line]

    if cfg.get('search_r') is not None:
        result = search_ratio(cfg['search_r'], cfg['max_len'], cfg.get('eps') or 0, cfg['prune_dominated'])
        details = result.as_dict()
        pair = result.pair
        line = (
            f"best word {pair.word_string or '(empty)'}: {pair} distance={details['distance']} "
            f"explored={result.explored}"
            if pair else f"no pair with k > 0 found (explored={result.explored})"
        )
        return (
            ['r', 'word', 'k', 'ell', 'distance', 'explored'],
            [[result.r, pair.word_string if pair else None, pair.k if pair else None,
              pair.ell if pair else None, result.distance, result.explored]],
            details,
            [line],
        )

    pair = eval_word(cfg['word'])
    return ['word', 'k', 'ell', 'ratio'], [[pair.word_string, pair.k, pair.ell, pair.ratio]], pair.as_dict(), [str(pair)]


def _fit_summary(fit):
    return fit.as_dict(), str(fit)


def run_sweep(cfg):
    F = cfg['F']
    grid = geometric_grid(cfg['x_min'], cfg['x_max'], cfg['points'])
    rows = sweep(F, grid, cfg.get('eps'), cfg.get('threads'))
    summary = {'rows': len(rows)}
    lines = [f"{len(rows)} rows for {F}"]
    try:
        fit = fit_exponent(rows)
        summary['fit'], line = _fit_summary(fit)
        lines.append(line)
    except FitError as e:
        lines.append(f"no fit: {e.message}")
    return SWEEP_HEADER, sweep_table(rows), summary, lines


def run_fit(cfg):
    with open(cfg['input'], newline='') as stream:
        rows = read_sweep_csv(stream)
    fit = fit_exponent(rows)
    details, line = _fit_summary(fit)
    header = ['slope', 'intercept', 'r_squared', 'n_points', 'dropped', 'exact']
    return header, [[details[name] for name in header]], details, [line]


def _psi_task(task):
    r, x, delta = task
    return conjecture_psi_sum(r, x, delta)


def _deltas(cfg):
    return [cfg['delta']] if cfg.get('delta') is not None else [0, 1]


def run_psi(cfg):
    r = cfg['r']
    deltas = _deltas(cfg)
    digits = lab_setting('DECIMAL_DIGITS')

    if cfg['blocks']:
        x = cfg.get('x') or cfg['x_max']
        pair = eval_word(cfg['word'])
        constant = lab_setting('GK_BLOCK_CONSTANT')
        rows = []
        worst = Fraction(0)
        for delta in deltas:
            for block in gk_block_sums(r, x, delta):
                bound = gk_bound(pair, x, block.end, r)
                ratio = abs(block.value) / bound
                worst = max(worst, ratio)
                if cfg['check'] and ratio > constant:
                    raise _violation(
                        f"Block ({block.start}, {block.end}] sum exceeds {format_rational(constant)} x bound",
                        delta=delta,
                    )
                rows.append([delta, block.start, block.end, block.value, bound, decimal_string(ratio, digits)])
        return (
            ['delta', 'N', 'N_end', 'block_sum', 'gk_bound', 'ratio'],
            rows,
            {'x': x, 'pair': pair.as_dict(), 'max_ratio': decimal_string(worst, digits)},
            [f"{len(rows)} blocks at x={x} with pair {pair}; largest ratio {decimal_string(worst, digits)}"],
        )

    grid = geometric_grid(cfg['x_min'], cfg['x_max'], cfg['points'])
    tasks = [(r, x, delta) for x in grid for delta in deltas]
    values = ordered_map(_psi_task, tasks, cfg.get('threads') or lab_setting('DEFAULT_THREADS'))
    rows = [[x, delta, value] for (_, x, delta), value in zip(tasks, values)]

    summary = {'rows': len(rows), 'prediction': format_rational(Fraction(r, (r + 1) * (2 * r - 1)))}
    lines = []
    for delta in deltas:
        points = [(x, value) for (_, x, d), value in zip(tasks, values) if d == delta]
        try:
            fit = fit_points([x for x, _ in points], [v for _, v in points])
            summary[f"fit_delta_{delta}"] = fit.as_dict()
            lines.append(f"delta={delta}: {fit}")
        except FitError as e:
            lines.append(f"delta={delta}: no fit ({e.message})")
    return ['x', 'delta', 'value'], rows, summary, lines


EXPERIMENTS: Dict[str, Tuple[type, Callable]] = {
    'sum': (SumConfigSerializer, run_sum),
    'decompose': (DecomposeConfigSerializer, run_decompose),
    'cf': (CfConfigSerializer, run_cf),
    'pade': (PadeConfigSerializer, run_pade),
    'spacing': (SpacingConfigSerializer, run_spacing),
    'exppair': (ExpPairConfigSerializer, run_exppair),
    'sweep': (SweepConfigSerializer, run_sweep),
    'fit': (FitConfigSerializer, run_fit),
    'psi': (PsiConfigSerializer, run_psi),
}


def run_experiment(kind: str, options: Dict[str, Any]) -> ExperimentResult:
    """
    Validate options for the named experiment and run it.

    Raises ValidationError for bad options and LabError subclasses for
    failed preconditions or invariants.
    """
    if kind not in EXPERIMENTS:
        raise serializers.ValidationError({'kind': f"Unknown experiment: {kind}"})
    serializer_class, runner = EXPERIMENTS[kind]
    serializer = serializer_class(data={key: value for key, value in options.items() if value is not None})
    serializer.is_valid(raise_exception=True)
    logger.info(f"Running {kind} experiment")
    header, rows, summary, lines = runner(serializer.validated_data)
    return ExperimentResult(kind, dict(serializer.data), header, rows, summary, lines)
