"""
Miscellaneous functions and classes
"""

import json
import re
import textwrap
from collections import namedtuple
from os.path import dirname, join, pardir

FLOAT_FORMAT = '{:.11e}'


def load_data(filepath):
    """Load static file located in the package directory"""
    filepath = join(dirname(__file__), pardir, filepath)
    with open(filepath, mode='r') as data_file:
        data = json.load(data_file)
    return data


def dict_to_namedtuple(name, data):
    """Converts a dictionary into a namedtuple"""
    return namedtuple(name, data.keys())(**data)


def to_snake_case(name):
    """Converts a string into snake_case format"""
    name = name.strip().replace('-', '_')
    temp = re.sub('(.)([A-Z][a-z]+)', r'\1_\2', name)
    return re.sub('([a-z0-9])([A-Z])', r'\1_\2', temp).lower()


def format_value(value):
    """Format a cell of an output table. Floats are written in scientific
    notation with 12 significant digits so that two runs with the same
    configuration produce byte-identical files.

    Args:
        value (object): value of the cell
    Returns:
        str:
    """
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) or hasattr(value, 'dtype'):
        value = float(value)
        if value != value:
            return 'nan'
        return FLOAT_FORMAT.format(value)
    return str(value)


def dict_to_tsv(data, width=70):
    """Render the fields of a diagnostic as aligned ``key   value`` lines.
    Long values are wrapped under the value column.

    Args:
        data (dict): fields to render
        width (int, optional): wrapping width of the values
    Returns:
        str:
    """
    column = max(len(str(key)) for key in data) + 3
    lines = []
    for key, value in data.items():
        text = format_value(value) if isinstance(value, float) else str(value)
        chunks = textwrap.wrap(text, width=width) or ['']
        lines.append('{:{}}{}'.format(str(key), column, chunks[0]))
        lines.extend(' ' * column + chunk for chunk in chunks[1:])
    return '\n'.join(lines)
