"""Rectangular parameter grids with one scalar per cell."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class ScalarMap:
    """values[i, j] belongs to (xs[i], ys[j]); NaN marks undefined cells."""

    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray
    xname: str = "x"
    yname: str = "y"
    vname: str = "value"

    def __post_init__(self):
        assert self.values.shape == (len(self.xs), len(self.ys))

    def cells(self):
        """Iterate (x, y, value) in deterministic row-major order."""
        for i, x in enumerate(self.xs):
            for j, y in enumerate(self.ys):
                yield float(x), float(y), self.values[i, j]
