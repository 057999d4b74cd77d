"""
CSV reading and writing with exact p/q rationals.
"""

import csv
from fractions import Fraction
from typing import IO, Iterable, List, Sequence

from apps.common.conf import lab_setting
from apps.common.exceptions import PreconditionError
from apps.exact.arithmetic import decimal_string, format_rational, parse_rational

from .sweeps import SweepRow

SWEEP_HEADER = ['x', 's_f', 'cf_x_lo', 'cf_x_hi', 'abs_err_lo', 'abs_err_hi', 'abs_err_mid']


def render_cell(value) -> str:
    """Exact spelling of a cell: p/q for rationals, str otherwise."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return ' '.join(render_cell(item) for item in value)
    return str(value)


def write_rows(stream: IO[str], header: Sequence[str], rows: Iterable[Sequence]):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([render_cell(value) for value in row])


def sweep_table(rows: Iterable[SweepRow]) -> List[list]:
    """Sweep rows as CSV cells, the midpoint also rendered as a decimal."""
    digits = lab_setting('DECIMAL_DIGITS')
    return [
        [
            row.x, row.s_f, row.cf_x_lo, row.cf_x_hi, row.abs_err_lo, row.abs_err_hi,
            decimal_string(row.abs_err_mid, digits),
        ]
        for row in rows
    ]


def write_sweep_csv(stream: IO[str], rows: Iterable[SweepRow]):
    write_rows(stream, SWEEP_HEADER, sweep_table(rows))


def read_sweep_csv(stream: IO[str]) -> List[SweepRow]:
    """Parse a sweep CSV; the decimal midpoint column is ignored."""
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        raise PreconditionError('Empty CSV file')
    required = SWEEP_HEADER[:6]
    missing = [name for name in required if name not in header]
    if missing:
        raise PreconditionError(f"CSV header is missing columns: {', '.join(missing)}", header=header)
    index = {name: header.index(name) for name in required}
    rows = []
    for line_number, record in enumerate(reader, start=2):
        if not record:
            continue
        try:
            values = {name: parse_rational(record[i]) for name, i in index.items()}
        except (IndexError, PreconditionError):
            raise PreconditionError(f"Malformed CSV row on line {line_number}", line=line_number)
        if values['x'].denominator != 1:
            raise PreconditionError(f"x must be an integer on line {line_number}", line=line_number)
        rows.append(SweepRow(
            x=int(values['x']),
            s_f=values['s_f'],
            cf_x_lo=values['cf_x_lo'],
            cf_x_hi=values['cf_x_hi'],
            abs_err_lo=values['abs_err_lo'],
            abs_err_hi=values['abs_err_hi'],
        ))
    return rows
