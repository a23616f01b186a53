"""Shared test utilities: random game/mapping generators and slow,
independent oracles kept deliberately separate from the library code."""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from qgame import ClassicalGame, GameMapping

GAMES_DIR_NAME = "games"


def random_game(rng, shape, players=None, low=0, high=10) -> ClassicalGame:
    shape = tuple(shape)
    n = players if players is not None else len(shape)
    payoffs = rng.integers(low, high, size=shape + (n,)).astype(float)
    labels = tuple(tuple(f"s{i+1}{k}" for k in range(m)) for i, m in enumerate(shape))
    return ClassicalGame(labels, payoffs)


def random_mapping(rng, shape) -> GameMapping:
    """Random mapping applicable to a game of the given shape; the image
    shape must stay consistent, so eta only permutes equal-size players."""
    n = len(shape)
    while True:
        eta = tuple(int(v) for v in rng.permutation(n))
        if all(shape[eta.index(k)] == shape[k] for k in range(n)):
            break
    phi = tuple(tuple(int(v) for v in rng.permutation(shape[i])) for i in range(n))
    return GameMapping(eta, phi)


def brute_force_pure_nash(g: ClassicalGame, tol=1e-12):
    """Independent O(prod |S_i| * sum |S_i|) deviation scan."""
    out = []
    for s in product(*(range(m) for m in g.shape)):
        ok = True
        for i in range(g.n_players):
            for alt in range(g.shape[i]):
                t = list(s)
                t[i] = alt
                if g.payoffs[tuple(t)][i] > g.payoffs[s][i] + tol:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(s)
    return out


def is_mixed_equilibrium_2x2(g: ClassicalGame, p: float, q: float, tol=1e-9) -> bool:
    """Direct best-reply verification of a 2x2 mixed profile."""
    A = g.payoffs[..., 0]
    B = g.payoffs[..., 1]
    u1_rows = [q * A[i, 0] + (1 - q) * A[i, 1] for i in range(2)]
    u2_cols = [p * B[0, j] + (1 - p) * B[1, j] for j in range(2)]
    u1 = p * u1_rows[0] + (1 - p) * u1_rows[1]
    u2 = q * u2_cols[0] + (1 - q) * u2_cols[1]
    return u1 >= max(u1_rows) - tol and u2 >= max(u2_cols) - tol


def classical_mixed_payoffs(g: ClassicalGame, probs) -> np.ndarray:
    """Expected payoffs when player i plays its first strategy with
    probability probs[i] (binary games), by direct summation."""
    n = g.n_players
    out = np.zeros(n)
    for s in product(*(range(m) for m in g.shape)):
        w = math.prod(probs[i] if s[i] == 0 else 1.0 - probs[i] for i in range(n))
        out += w * g.payoffs[s]
    return out
