"""Small shared numerics: guarded Pearson correlation."""

from __future__ import annotations

import numpy as np

VAR_EPS = 1e-12


def pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    """Pearson correlation; None when fewer than 2 points or a variance is ~0."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size < 2:
        return None
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float((dx * dx).mean())
    vy = float((dy * dy).mean())
    if vx <= VAR_EPS or vy <= VAR_EPS:
        return None
    return float((dx * dy).mean() / np.sqrt(vx * vy))
