import math
from typing import Optional

import numpy as np

from memkern.curve import CoherenceCurve
from memkern.exceptions import DataError


def first_crossing(times: np.ndarray, values: np.ndarray, level: float) -> Optional[float]:
    """
    First time a falling series reaches level, linearly interpolated; None if it never does
    """
    below = np.nonzero(values <= level)[0]
    if below.size == 0:
        return None
    i = int(below[0])
    if i == 0:
        return float(times[0])
    v0, v1 = values[i - 1], values[i]
    return float(times[i - 1] + (times[i] - times[i - 1]) * (v0 - level) / (v0 - v1))


def extract_tau_dec(curve: CoherenceCurve) -> Optional[float]:
    """
    First time |C(t)| <= e^-1 |C(t0)|, refined by linear interpolation on |C|

    :return: the crossing time, or None if the window holds no crossing
    """
    if len(curve) < 3:
        raise DataError("extract_tau_dec(): curve needs at least 3 samples")
    if abs(curve.samples[0]) == 0:
        raise DataError("extract_tau_dec(): |C(t0)| is zero")
    return first_crossing(curve.times, curve.normalized(), math.exp(-1.0))
