"""
Hooks used to serialize the results of the library into JSON.
"""

import json

import numpy as np


class ResultEncoder(json.JSONEncoder):
    """Encoder to serialize an object which inherits from ResultModel and the
    numpy values it stores"""
    def default(self, obj):
        if 'magnonqed' in str(type(obj)) and hasattr(obj, 'keys'):
            return dict(
                (key, getattr(obj, key)) for key in obj.keys()
                if not callable(getattr(obj, key))
            )
        if isinstance(obj, np.ndarray):
            if np.iscomplexobj(obj):
                return {'real': obj.real.tolist(), 'imag': obj.imag.tolist()}
            return obj.tolist()
        if isinstance(obj, (complex, np.complexfloating)):
            return {'real': float(obj.real), 'imag': float(obj.imag)}
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        return json.JSONEncoder.default(self, obj)
