"""Discretized pure-equilibrium search over restricted strategy spaces.

The search is evidence at grid resolution: a profile qualifies when no
single player can improve by more than eps using another grid point.
The analytic best reply and the deviation witness for the column-swapped
prisoner's dilemma are the exact counterparts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .ewl import EwlGame, StrategySpace
from .linalg import TWO_PI, SU2Params, entangler, su2

_PROFILE_AXES = "ijkl"
_STATE_AXES = "abcd"
_SUM_AXES = "efgh"


@dataclass(frozen=True)
class ParamGrid:
    """Per-player (theta, alpha, beta) step counts.

    Axes are inclusive linspaces over [0, pi] resp. [0, 2pi]; phase
    values are reduced mod 2pi and deduplicated, so the 2pi endpoint
    collapses onto 0. Angles frozen by a player's space always get the
    single value 0 regardless of the requested count. theta needs at
    least 2 steps so both endpoints 0 and pi are on the grid.
    """

    steps: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        steps = tuple((int(t), int(a), int(b)) for t, a, b in self.steps)
        for t, a, b in steps:
            if t < 2:
                raise ValueError("theta axis needs at least 2 steps")
            if a < 1 or b < 1:
                raise ValueError("phase axes need at least 1 step")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def uniform(cls, players: int, theta: int = 17, alpha: int = 33, beta: int = 1):
        return cls(((theta, alpha, beta),) * players)

    def refined(self, factor: int = 2) -> "ParamGrid":
        """Grid with every multi-point axis subdivided `factor` times."""
        return ParamGrid(
            tuple(
                tuple((s - 1) * factor + 1 if s > 1 else 1 for s in axes)
                for axes in self.steps
            )
        )

    def strategies(self, player: int, space: StrategySpace) -> tuple[SU2Params, ...]:
        t_steps, a_steps, b_steps = self.steps[player]
        thetas = np.linspace(0.0, math.pi, t_steps)
        alphas = _phase_axis(1 if space.alpha_frozen else a_steps)
        betas = _phase_axis(1 if space.beta_frozen else b_steps)
        return tuple(
            SU2Params(t, a, b) for t, a, b in product(thetas, alphas, betas)
        )


def _phase_axis(steps: int) -> tuple[float, ...]:
    if steps == 1:
        return (0.0,)
    vals = [v % TWO_PI for v in np.linspace(0.0, TWO_PI, steps)]
    return tuple(dict.fromkeys(vals))


@dataclass(frozen=True)
class EpsEquilibrium:
    """Grid profile where no grid deviation improves any player by more
    than eps. `eps` records the largest improvement actually available."""

    profile: tuple[SU2Params, ...]
    eps: float
    payoffs: tuple[float, ...]


def grid_payoff_tables(game: EwlGame, strategy_lists) -> list[np.ndarray]:
    """One payoff array of shape (m_1, .., m_n) per player, covering
    every grid profile. Vectorized over profiles, chunked on the first
    player's axis to bound memory."""
    n = game.n_players
    dims = [len(s) for s in strategy_lists]
    if any(d == 0 for d in dims):
        raise ValueError("empty strategy grid")
    us = [np.stack([su2(p) for p in pts]) for pts in strategy_lists]
    J = entangler(n)
    jdag_right = J.conj()  # (J^dag)^T, for right-multiplying row batches
    psi0 = J[:, 0].reshape((2,) * n)
    subs = (
        ",".join(_PROFILE_AXES[i] + _STATE_AXES[i] + _SUM_AXES[i] for i in range(n))
        + ","
        + _SUM_AXES[:n]
        + "->"
        + _PROFILE_AXES[:n]
        + _STATE_AXES[:n]
    )
    out = [np.empty(dims) for _ in range(n)]
    rest = int(np.prod(dims[1:], dtype=np.int64)) if n > 1 else 1
    chunk = max(1, (1 << 21) // max(1, rest * 2**n))
    for lo in range(0, dims[0], chunk):
        hi = min(dims[0], lo + chunk)
        amps = np.einsum(subs, us[0][lo:hi], *us[1:], psi0, optimize=True)
        amps = amps.reshape(hi - lo, *dims[1:], 2**n) @ jdag_right
        probs = np.abs(amps) ** 2
        for i in range(n):
            out[i][lo:hi] = probs @ game.payoff_diagonals[i]
    return out


def grid_pure_ne(
    game: EwlGame, grid: ParamGrid, eps: float = 1e-9
) -> list[EpsEquilibrium]:
    """All grid profiles that survive unilateral grid deviations up to eps.

    Results come in row-major profile order. Deviations outside the grid
    are not considered; the grid is evidence, not proof.
    """
    n = game.n_players
    if len(grid.steps) != n:
        raise ValueError("grid does not match the game's player count")
    strategy_lists = [grid.strategies(i, game.spaces[i]) for i in range(n)]
    tables = grid_payoff_tables(game, strategy_lists)
    bests = [t.max(axis=i, keepdims=True) for i, t in enumerate(tables)]
    mask = np.ones([len(s) for s in strategy_lists], dtype=bool)
    for i in range(n):
        mask &= tables[i] >= bests[i] - eps
    found = []
    for idx in np.argwhere(mask):
        t = tuple(int(v) for v in idx)
        improvement = max(
            float(bests[i][tuple(0 if k == i else t[k] for k in range(n))] - tables[i][t])
            for i in range(n)
        )
        found.append(
            EpsEquilibrium(
                profile=tuple(strategy_lists[i][t[i]] for i in range(n)),
                eps=improvement,
                payoffs=tuple(float(tables[i][t]) for i in range(n)),
            )
        )
    return found


def best_reply_two_param(opponent) -> SU2Params:
    """Player 1's best two-parameter reply to a two-parameter opponent.

    Reply (theta', alpha') = (theta, 3pi/2 - alpha) for alpha in
    [0, 3pi/2], else (theta, 7pi/2 - alpha); it earns exactly the
    temptation payoff in the column-swapped prisoner's dilemma.
    """
    theta, alpha = _angles(opponent)
    if alpha <= 1.5 * math.pi:
        reply_alpha = 1.5 * math.pi - alpha
    else:
        reply_alpha = 3.5 * math.pi - alpha
    return SU2Params(theta, reply_alpha, 0.0)


def witness_deviation(p1) -> SU2Params:
    """Player 2's deviation (0, 2pi - alpha_1) against a fixed player-1
    two-parameter strategy; it earns player 2 strictly more than the
    sucker payoff, so player 1 falls short of the temptation payoff."""
    _, alpha = _angles(p1)
    return SU2Params(0.0, (TWO_PI - alpha) % TWO_PI, 0.0)


def _angles(p) -> tuple[float, float]:
    if isinstance(p, SU2Params):
        return (p.theta, p.alpha)
    t, a = p
    return (float(t), float(a) % TWO_PI)
