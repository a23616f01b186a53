"""EWL quantization of binary strategic-form games.

A quantum game is a binary classical game plus one strategy-space
restriction per player. Players pick SU(2) unitaries, the shared state
is J^dag (U_1 x .. x U_n) J |0..0>, and payoffs are expectations of the
diagonal observables carrying the classical payoff tensor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .games import ClassicalGame
from .linalg import MAX_QUBITS, SU2Params, entangler, su2, tensor

CLOSED_FORM_TOL = 1e-12


class StrategySpace(Enum):
    """Restriction of one player's unitary strategies.

    All four spaces contain the one-parameter family U(theta, 0, 0),
    which is what embeds the classical mixed strategies. Membership is
    an exact zero test on the canonical (mod 2*pi) angles, so there is
    no tolerance ambiguity.
    """

    FULL_SU2 = "full"
    TWO_PARAM_ALPHA = "alpha"  # beta frozen at 0
    TWO_PARAM_BETA = "beta"  # alpha frozen at 0
    ONE_PARAM = "one"  # alpha = beta = 0

    @property
    def alpha_frozen(self) -> bool:
        return self in (StrategySpace.TWO_PARAM_BETA, StrategySpace.ONE_PARAM)

    @property
    def beta_frozen(self) -> bool:
        return self in (StrategySpace.TWO_PARAM_ALPHA, StrategySpace.ONE_PARAM)

    def contains(self, p: SU2Params) -> bool:
        if self.alpha_frozen and p.alpha != 0.0:
            return False
        if self.beta_frozen and p.beta != 0.0:
            return False
        return True


_SPACE_NAMES = {
    "full": StrategySpace.FULL_SU2,
    "su2": StrategySpace.FULL_SU2,
    "alpha": StrategySpace.TWO_PARAM_ALPHA,
    "two-param-alpha": StrategySpace.TWO_PARAM_ALPHA,
    "beta": StrategySpace.TWO_PARAM_BETA,
    "two-param-beta": StrategySpace.TWO_PARAM_BETA,
    "one": StrategySpace.ONE_PARAM,
    "one-param": StrategySpace.ONE_PARAM,
}


def parse_space(name: str) -> StrategySpace:
    try:
        return _SPACE_NAMES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown strategy space {name!r}; use one of {sorted(_SPACE_NAMES)}")


def payoff_diagonal(g: ClassicalGame, player: int) -> np.ndarray:
    """Diagonal of player's payoff observable, in ket order.

    Entry at index j1..jn (binary) is the classical payoff at that
    strategy-index profile, so the row-major flattening of the payoff
    tensor is exactly the diagonal.
    """
    if any(m != 2 for m in g.shape):
        raise ValueError("payoff observables need a binary game (two strategies each)")
    return g.payoffs[..., player].reshape(-1).copy()


def payoff_operator(g: ClassicalGame, player: int) -> np.ndarray:
    """Player's payoff observable sum_j a^i_j |j><j| as a dense matrix."""
    return np.diag(payoff_diagonal(g, player)).astype(complex)


@dataclass(frozen=True, eq=False)
class EwlGame:
    """Binary classical game with per-player strategy-space restrictions.

    The diagonal payoff observables are derived once at construction;
    the object is immutable afterwards and safe to share.
    """

    base: ClassicalGame
    spaces: tuple[StrategySpace, ...] = None

    def __post_init__(self):
        n = self.base.n_players
        if any(m != 2 for m in self.base.shape):
            raise ValueError("EWL quantization needs a binary game")
        if n > MAX_QUBITS:
            raise ValueError(f"at most {MAX_QUBITS} players supported")
        spaces = self.spaces
        if spaces is None:
            spaces = (StrategySpace.FULL_SU2,) * n
        spaces = tuple(spaces)
        if len(spaces) != n:
            raise ValueError("need one strategy space per player")
        diags = np.stack([payoff_diagonal(self.base, i) for i in range(n)])
        diags.setflags(write=False)
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "payoff_diagonals", diags)

    @property
    def n_players(self) -> int:
        return self.base.n_players


def final_state(params: Sequence[SU2Params]) -> np.ndarray:
    """Shared state J^dag (U_1 x .. x U_n) J |0..0> for the given strategies."""
    n = len(params)
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"player count must be in [1, {MAX_QUBITS}], got {n}")
    J = entangler(n)
    U = tensor([su2(p) for p in params])
    return J.conj().T @ (U @ J[:, 0])


def unrestricted_payoffs(game: EwlGame, params: Sequence[SU2Params]) -> np.ndarray:
    """Payoff vector ignoring the declared strategy spaces."""
    if len(params) != game.n_players:
        raise ValueError("need one strategy per player")
    probs = np.abs(final_state(params)) ** 2
    return game.payoff_diagonals @ probs


def ewl_payoffs(game: EwlGame, params: Sequence[SU2Params]) -> np.ndarray:
    """Payoff vector <Psi|M_i|Psi>; every strategy must lie in its
    player's declared space."""
    for i, p in enumerate(params):
        if not game.spaces[i].contains(p):
            raise ValueError(
                f"player {i + 1} strategy {p.as_tuple()} outside declared "
                f"space {game.spaces[i].name}"
            )
    return unrestricted_payoffs(game, params)


def two_param_payoff_closed_form(p1, p2, rstp) -> tuple[float, float]:
    """Both players' payoffs in the column-swapped prisoner's dilemma
    quantum game, for two-parameter strategies (theta, alpha).

    `rstp` is the payoff quadruple (R, S, T, P); observables are
    diag(S, R, P, T) and diag(T, R, P, S). Agrees with the full matrix
    simulation to 1e-12.
    """
    t1, a1 = _theta_alpha(p1)
    t2, a2 = _theta_alpha(p2)
    R, S, T, P = (float(v) for v in rstp)
    c1, s1 = math.cos(t1 / 2), math.sin(t1 / 2)
    c2, s2 = math.cos(t2 / 2), math.sin(t2 / 2)
    x00 = (math.cos(a1 + a2) * c1 * c2) ** 2
    x01 = (math.cos(a1) * c1 * s2 + math.sin(a2) * s1 * c2) ** 2
    x10 = (math.sin(a1) * c1 * s2 + math.cos(a2) * s1 * c2) ** 2
    x11 = (math.sin(a1 + a2) * c1 * c2 - s1 * s2) ** 2
    u1 = S * x00 + R * x01 + P * x10 + T * x11
    u2 = T * x00 + R * x01 + P * x10 + S * x11
    return (u1, u2)


def _theta_alpha(p) -> tuple[float, float]:
    if isinstance(p, SU2Params):
        return (p.theta, p.alpha)
    t, a = p
    return (float(t), float(a))
