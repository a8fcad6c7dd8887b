"""Basis indexing, configurations and initial states for the two-particle walk.

The two-particle Hilbert space is spanned by |x1 s1 x2 s2> with positions on
an odd-sized periodic chain centered at the origin and spins s = 0 (up),
1 (down).  Amplitudes are stored as a complex array of shape (L, 2, L, 2)
whose flattened order matches the flat index returned by `encode`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

# parameter-code lookup tables: four digits (c b g i)
THETA_MINUS = math.pi / 4
CODE_THETA_LEFT = {0: -math.pi / 16, 1: 9 * math.pi / 16}
CODE_THETA_RIGHT = {0: -math.pi / 3, 1: math.pi / 16, 2: 3 * math.pi / 8}
CODE_PHI = {0: 0.0, 1: math.pi / 3, 2: math.pi / 2, 3: 3 * math.pi / 4, 4: math.pi}
BELL_LABELS = ("phi+", "phi-", "psi+", "psi-", "product")


def reduce_angle(a: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    return a - TWO_PI * math.ceil((a - math.pi) / TWO_PI)


@dataclass
class WalkConfig:
    """Full parameter set of one walk: lattice, angles, interaction, steps."""

    L: int
    theta_minus: float
    theta_left: float
    theta_right: float
    phi: float
    steps: int
    boundary: str = "periodic"

    def __post_init__(self):
        if self.L < 3 or self.L % 2 == 0:
            raise ValueError(f"L must be odd and >= 3, got {self.L}")
        if self.steps < 0:
            raise ValueError(f"steps must be >= 0, got {self.steps}")
        if self.boundary != "periodic":
            raise ValueError("only periodic boundaries are supported")
        self.theta_minus = reduce_angle(self.theta_minus)
        self.theta_left = reduce_angle(self.theta_left)
        self.theta_right = reduce_angle(self.theta_right)
        self.phi = reduce_angle(self.phi)

    @property
    def homogeneous(self) -> bool:
        return self.theta_left == self.theta_right

    def positions(self) -> np.ndarray:
        """Site coordinates -(L-1)/2 ... (L-1)/2."""
        h = (self.L - 1) // 2
        return np.arange(-h, h + 1)


@dataclass
class StateVector:
    """Two-particle state; amp has shape (L, 2, L, 2), axes (x1, s1, x2, s2)."""

    amp: np.ndarray
    time: int = 0

    @property
    def L(self) -> int:
        return self.amp.shape[0]

    def flat(self) -> np.ndarray:
        return self.amp.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def copy(self) -> "StateVector":
        return StateVector(self.amp.copy(), self.time)


@dataclass
class ParamCode:
    """Four-digit experiment code (c b g i)."""

    c: int
    b: int
    g: int
    i: int

    def __post_init__(self):
        if self.c not in (0, 1):
            raise ValueError(f"code digit c must be 0 or 1, got {self.c}")
        if not 0 <= self.b <= 4:
            raise ValueError(f"code digit b must be in 0..4, got {self.b}")
        if not 0 <= self.g <= 4:
            raise ValueError(f"code digit g must be in 0..4, got {self.g}")
        if self.i not in (0, 1, 2):
            raise ValueError(f"code digit i must be 0, 1 or 2, got {self.i}")

    @classmethod
    def parse(cls, text: str) -> "ParamCode":
        if len(text) != 4 or not text.isdigit():
            raise ValueError(f"malformed parameter code {text!r}: need 4 digits")
        return cls(*(int(ch) for ch in text))

    def __str__(self) -> str:
        return f"{self.c}{self.b}{self.g}{self.i}"


def encode(x1: int, s1: int, x2: int, s2: int, L: int) -> int:
    """Flat index of |x1 s1 x2 s2>; particle-1 position is the slowest axis."""
    h = (L - 1) // 2
    for x in (x1, x2):
        if not -h <= x <= h:
            raise ValueError(f"position {x} out of range for L={L}")
    for s in (s1, s2):
        if s not in (0, 1):
            raise ValueError(f"spin must be 0 or 1, got {s}")
    return ((((x1 + h) * 2 + s1) * L) + (x2 + h)) * 2 + s2


def decode(flat: int, L: int):
    """Inverse of `encode`: flat index -> (x1, s1, x2, s2)."""
    if not 0 <= flat < (2 * L) ** 2:
        raise ValueError(f"flat index {flat} out of range for L={L}")
    h = (L - 1) // 2
    flat, s2 = divmod(flat, 2)
    flat, p2 = divmod(flat, L)
    p1, s1 = divmod(flat, 2)
    return p1 - h, s1, p2 - h, s2


def zero_state(L: int) -> np.ndarray:
    return np.zeros((L, 2, L, 2), dtype=complex)


def make_initial(b: int, L: int) -> StateVector:
    """Initial state by label b: 0..3 the Bell states at the origin, 4 = |0000>."""
    if L < 3:
        raise ValueError("L must be >= 3")
    if b not in (0, 1, 2, 3, 4):
        raise ValueError(f"invalid initial-state label {b}")
    h = (L - 1) // 2
    amp = zero_state(L)
    r = 1.0 / math.sqrt(2.0)
    if b == 0:      # (|0000> + |0101>)/sqrt2
        amp[h, 0, h, 0] = r
        amp[h, 1, h, 1] = r
    elif b == 1:    # (|0000> - |0101>)/sqrt2
        amp[h, 0, h, 0] = r
        amp[h, 1, h, 1] = -r
    elif b == 2:    # (|0001> + |0100>)/sqrt2
        amp[h, 0, h, 1] = r
        amp[h, 1, h, 0] = r
    elif b == 3:    # (|0001> - |0100>)/sqrt2
        amp[h, 0, h, 1] = r
        amp[h, 1, h, 0] = -r
    else:           # |0000>
        amp[h, 0, h, 0] = 1.0
    return StateVector(amp, 0)


def config_from_code(code: ParamCode | str, L: int, steps: int):
    """Expand a (c b g i) code into a WalkConfig plus initial-state label."""
    if isinstance(code, str):
        code = ParamCode.parse(code)
    cfg = WalkConfig(
        L=L,
        theta_minus=THETA_MINUS,
        theta_left=CODE_THETA_LEFT[code.c],
        theta_right=CODE_THETA_RIGHT[code.i],
        phi=CODE_PHI[code.g],
        steps=steps,
    )
    return cfg, code.b


def swap_particles(amp: np.ndarray) -> np.ndarray:
    """Amplitudes of the state with (x1,s1) and (x2,s2) exchanged."""
    return amp.transpose(2, 3, 0, 1).copy()
