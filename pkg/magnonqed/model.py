"""
Models used in ``magnonqed-py`` to store results.
"""

import csv
import io
import json
import logging

from .utils.jsonparser import ResultEncoder
from .utils.misc import format_value

logger = logging.getLogger(__name__)


class ResultModel:
    """Transform a dictionary into an object where the keys of the
    dictionary are attributes of the instance"""
    def __init__(self, data=None):
        if data is None: data = dict()
        self.add_data(data)

    def add_data(self, data):
        """Add all (key, value) of data in the object

        Args:
            data (dict): data to transfer to the object
        Returns:
            None:
        """
        self.__dict__.update(data)
        return None

    def __getitem__(self, key):
        return getattr(self, key)

    def keys(self):
        """Returns a set of available attribute."""
        return {key for key in self.__dict__ if not key.startswith('_')}

    def json(self, **kwargs):
        """Serialize the object into a JSON string"""
        return json.dumps(self, cls=ResultEncoder, **kwargs)


class Table(list):
    """List of rows (dictionaries sharing the same keys) ready to be written
    as comma-separated values. The object is compatible with ``pandas``.

    Example:

        >>> import pandas as pd
        >>> df_scan = pd.DataFrame(scan)

    Args:
        rows (iterable[dict], optional): initial rows
        metadata (dict, optional): written as ``#`` header lines
    """
    def __init__(self, rows=None, metadata=None):
        super().__init__(rows or [])
        self.metadata = dict(metadata or {})

    @property
    def columns(self):
        """Column names, in the order of the first row"""
        return list(self[0].keys()) if self else []

    def column(self, name):
        """Values of one column"""
        return [row[name] for row in self]

    def write(self, stream):
        """Write the metadata header and the rows into a text stream"""
        for key, value in self.metadata.items():
            stream.write('# {}: {}\n'.format(key, format_value(value)))
        writer = csv.writer(stream, lineterminator='\n')
        columns = self.columns
        if columns:
            writer.writerow(columns)
        for row in self:
            writer.writerow([format_value(row[column]) for column in columns])
        return None

    def to_csv(self, path=None):
        """Export the table. If ``path`` is None, returns the text.

        Args:
            path (str, optional): output file
        Returns:
            str or None:
        """
        if path is None:
            buffer = io.StringIO()
            self.write(buffer)
            return buffer.getvalue()
        with open(path, mode='w', encoding='utf-8', newline='') as out:
            self.write(out)
        logger.info('%s rows written to %s', len(self), path)
        return None

    def __repr__(self):
        return '<{}.length={}>'.format(type(self).__name__, len(self))
