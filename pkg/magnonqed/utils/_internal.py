"""
Some functions used internally to parse the strings given on the command
line or in a configuration file.
"""

import math

from ..exceptions import InvalidParameter


def parse_float(value, name):
    """Parse a float, raising ``InvalidParameter`` on failure"""
    try:
        return float(value)
    except (TypeError, ValueError):
        raise InvalidParameter(name, value, 'must be a number')


def parse_pi_fraction(value, name):
    """Parse an angle given as a fraction of pi (``0.25`` or ``1/4``) and
    return it in radians."""
    text = str(value).strip().lower().replace('pi', '').strip('*') or '1'
    if '/' in text:
        numerator, _, denominator = text.partition('/')
        fraction = parse_float(numerator or 1, name) \
            / parse_float(denominator, name)
    else:
        fraction = parse_float(text, name)
    return fraction * math.pi


def parse_float_list(value, name):
    """Parse ``'0,1e-6,1e-5'`` into a list of floats"""
    items = [item for item in str(value).split(',') if item.strip()]
    if not items:
        raise InvalidParameter(name, value, 'must contain at least one value')
    return [parse_float(item, name) for item in items]


def parse_range(value, name):
    """Parse a ``lo:hi:steps`` string into a ``(lo, hi, steps)`` tuple"""
    parts = str(value).split(':')
    if len(parts) != 3:
        raise InvalidParameter(name, value, "expected 'lo:hi:steps'")
    low, high = parse_float(parts[0], name), parse_float(parts[1], name)
    try:
        steps = int(parts[2])
    except ValueError:
        raise InvalidParameter(name, value, 'steps must be an integer')
    if not low < high or steps < 2:
        raise InvalidParameter(name, value, 'needs lo < hi and steps >= 2')
    return low, high, steps


def parse_truncation(value, name='trunc'):
    """Parse ``'5'`` or ``'5,7'`` into ``(n_a_max, n_m_max)``"""
    parts = [part for part in str(value).replace(':', ',').split(',')
             if part.strip()]
    try:
        levels = [int(part) for part in parts]
    except ValueError:
        raise InvalidParameter(name, value, 'must be one or two integers')
    if len(levels) == 1:
        levels = levels * 2
    if len(levels) != 2:
        raise InvalidParameter(name, value, 'must be one or two integers')
    return tuple(levels)


def parse_switching(value, name='switching'):
    """Parse ``'sudden'`` or ``'ramp:<duration>'``.

    Returns:
        tuple: ``(mode, duration)``; duration is None for sudden switching
    """
    text = str(value).strip().lower()
    if text == 'sudden':
        return 'sudden', None
    mode, _, duration = text.partition(':')
    if mode not in ('ramp', 'linear_ramp') or not duration:
        raise InvalidParameter(name, value, "expected 'sudden' or 'ramp:<dur>'")
    duration = parse_float(duration, name)
    if duration <= 0:
        raise InvalidParameter(name, value, 'ramp duration must be > 0')
    return 'linear_ramp', duration


def parse_config_file(path):
    """Read a flat ``key = value`` configuration file.

    Blank lines and lines starting with ``#`` are ignored; inline comments
    are stripped.

    Returns:
        dict: raw string values indexed by the key as written
    """
    data = dict()
    with open(path, mode='r', encoding='utf-8') as config_file:
        for number, line in enumerate(config_file, start=1):
            line = line.split('#', 1)[0].strip()
            if not line: continue
            if '=' not in line:
                raise InvalidParameter(
                    'config line {}'.format(number), line,
                    "expected 'key = value'"
                )
            key, _, value = line.partition('=')
            data[key.strip()] = value.strip()
    return data
