"""Gaussian π/2 drive calibration."""
import math
from typing import Optional

import numpy as np
from scipy.special import erf


def default_sigma(duration: float) -> float:
    return duration / 4.0


def calibrate_pi2_amplitude(duration: float, sigma: Optional[float] = None, area: float = math.pi / 2) -> float:
    """Peak Ω0 (rad/ns) of a Gaussian truncated to [0, T] whose area is ``area``.

    Ω0 = area / (σ·√(2π)·erf(T / (2σ√2))), with σ = T/4 unless given.
    """
    if not duration > 0:
        raise ValueError(f"pulse duration must be > 0, got {duration}")
    sigma = default_sigma(duration) if sigma is None else sigma
    return area / (sigma * math.sqrt(2 * math.pi) * erf(duration / (2 * sigma * math.sqrt(2))))


def gaussian_envelope(t, start: float, duration: float, amplitude: float, sigma: Optional[float] = None):
    """Ω(t) of a pulse placed at ``start``; zero outside [start, start + duration)."""
    sigma = default_sigma(duration) if sigma is None else sigma
    t = np.asarray(t, dtype=float)
    centre = start + duration / 2
    value = amplitude * np.exp(-((t - centre) ** 2) / (2 * sigma ** 2))
    inside = (t >= start) & (t < start + duration)
    out = np.where(inside, value, 0.0)
    return float(out) if out.ndim == 0 else out
