from __future__ import annotations

import numpy as np


def wrap_phase(phase):
    """
    Map phases into (-pi, pi].
    """
    wrapped = np.angle(np.exp(1j * np.asarray(phase, dtype=float)))
    return np.where(wrapped <= -np.pi, wrapped + 2.0 * np.pi, wrapped)
