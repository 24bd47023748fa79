import dataclasses
import json
import math
from pathlib import Path
from typing import Union

import numpy as np


class ExtendedJsonEncoder(json.JSONEncoder):
    """
    Extended JSON encoder
    Supports numpy scalars and arrays, complex numbers, Dataclasses, Path and asdict() objects
    """

    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return [self.default(v) if isinstance(v, (complex, np.complexfloating)) else v for v in obj.tolist()]
        if isinstance(obj, (complex, np.complexfloating)):
            return {"re": float(obj.real), "im": float(obj.imag)}
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, Path):
            return str(obj)
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return dataclasses.asdict(obj)
        if hasattr(obj, "asdict") and callable(getattr(obj, "asdict", None)):
            return obj.asdict()
        if isinstance(obj, (set, frozenset, tuple)):
            return list(obj)
        try:
            return obj.__dict__
        except AttributeError:
            raise RuntimeError("cannot serialize type '{}' to Json".format(type(obj)))


def _finite(value):
    # json has no inf/nan; map them to null
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_finite(v) for v in value]
    return value


def dumps_meta(meta) -> str:
    """
    Canonical JSON text for a metadata mapping: sorted keys, no NaN literals
    """
    plain = json.loads(json.dumps(meta, cls=ExtendedJsonEncoder))
    return json.dumps(_finite(plain), sort_keys=True, indent=2, allow_nan=False) + "\n"


def dump_meta(meta, path: Union[str, Path]) -> Path:
    """
    Write the metadata sidecar next to an output file
    :param meta: mapping or Container
    :param path: output file; the sidecar is '<path>.meta.json'
    :return: sidecar path
    """
    target = Path(str(path) + ".meta.json")
    with open(target, "w", encoding="utf-8") as f:
        f.write(dumps_meta(meta))
    return target
