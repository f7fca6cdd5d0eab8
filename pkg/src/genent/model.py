"""Parameters of the periodic anisotropic XY chain in a transverse field,

    H = -g sum_j [(1+gamma) sx_j sx_{j+1} + (1-gamma) sy_j sy_{j+1}] + sum_j sz_j,

and the antiperiodic momentum grid of its even-parity sector.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError

G_CRITICAL = 0.5


@dataclass(frozen=True)
class ChainParams:
    n_sites: int
    g: float
    gamma: float

    def __post_init__(self):
        if int(self.n_sites) != self.n_sites or self.n_sites < 4 or self.n_sites % 2:
            raise ContractError(f"n_sites must be an even integer >= 4, got {self.n_sites}")
        if not self.g >= 0:
            raise ContractError(f"g must be >= 0, got {self.g}")
        if not 0 <= self.gamma <= 1:
            raise ContractError(f"gamma must lie in [0, 1], got {self.gamma}")
        object.__setattr__(self, "n_sites", int(self.n_sites))
        object.__setattr__(self, "g", float(self.g))
        object.__setattr__(self, "gamma", float(self.gamma))


@dataclass(frozen=True)
class MomentumGrid:
    """k = ±(2m-1)π/N, m = 1..N/2, sorted ascending."""

    n_sites: int
    momenta: np.ndarray

    @property
    def positive(self) -> np.ndarray:
        return self.momenta[self.momenta > 0]

    def __len__(self) -> int:
        return len(self.momenta)


def momentum_grid(n_sites: int) -> MomentumGrid:
    if n_sites < 2 or n_sites % 2:
        raise ContractError(f"antiperiodic grid needs an even number of sites, got {n_sites}")
    m = np.arange(1, n_sites // 2 + 1)
    kp = (2 * m - 1) * np.pi / n_sites
    return MomentumGrid(n_sites, np.sort(np.concatenate([-kp, kp])))
