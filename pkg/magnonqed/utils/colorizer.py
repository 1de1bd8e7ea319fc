"""
Used to color the messages printed by the command line.
"""

import sys


class COLOR:
    """Settings for color in terminal"""
    OKGREEN = '\033[92m'
    WARNING = '\033[93m'
    FAIL = '\033[91m'
    ENDC = '\033[0m'


def _paint(code, string, stream=None):
    stream = stream or sys.stderr
    if not getattr(stream, 'isatty', lambda: False)():
        return str(string)
    return '{}{}{}'.format(code, string, COLOR.ENDC)


def green(string, stream=None):
    """Convert a string into a string with green font"""
    return _paint(COLOR.OKGREEN, string, stream)


def yellow(string, stream=None):
    """Convert a string into a string with yellow font"""
    return _paint(COLOR.WARNING, string, stream)


def red(string, stream=None):
    """Convert a string into a string with red font"""
    return _paint(COLOR.FAIL, string, stream)
