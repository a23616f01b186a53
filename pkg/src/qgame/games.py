"""Finite strategic-form games, Nash equilibria, and strong isomorphisms.

A game holds per-player strategy labels and a total payoff tensor of
shape (|S_1|, .., |S_n|, n). Strategy profiles are plain tuples of
0-based strategy indices; labels only matter for I/O.

Payoffs are doubles. Equality of payoffs uses absolute tolerance 1e-12
(the worked examples are small integers); fitted affine checks use 1e-9
because fitting amplifies rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

PAYOFF_TOL = 1e-12
AFFINE_TOL = 1e-9

StrategyProfile = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ClassicalGame:
    """n-player strategic-form game with a total payoff tensor."""

    labels: tuple[tuple[str, ...], ...]
    payoffs: np.ndarray  # shape (*dims, n), read-only after construction

    def __init__(self, labels, payoffs):
        labels = tuple(tuple(str(l) for l in ls) for ls in labels)
        n = len(labels)
        if n < 1:
            raise ValueError("need at least one player")
        for i, ls in enumerate(labels):
            if len(ls) < 2:
                raise ValueError(f"player {i + 1} needs at least two strategies")
            if len(set(ls)) != len(ls):
                raise ValueError(f"player {i + 1} has duplicate strategy labels")
        arr = np.array(payoffs, dtype=float)
        dims = tuple(len(ls) for ls in labels)
        if arr.shape != dims + (n,):
            raise ValueError(f"payoff tensor must have shape {dims + (n,)}, got {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("payoffs must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "payoffs", arr)

    @property
    def n_players(self) -> int:
        return len(self.labels)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.payoffs.shape[:-1]

    def payoff(self, profile: Sequence[int]) -> np.ndarray:
        """Payoff vector at a strategy-index profile."""
        return self.payoffs[tuple(profile)]

    def profiles(self) -> Iterable[StrategyProfile]:
        """All strategy profiles in row-major order."""
        return product(*(range(m) for m in self.shape))

    def label_profile(self, profile: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.labels[i][j] for i, j in enumerate(profile))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassicalGame):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.payoffs, other.payoffs)

    def __repr__(self) -> str:
        return f"ClassicalGame(players={self.n_players}, shape={self.shape})"


def bimatrix(rows, cols, cells, row_labels=None, col_labels=None) -> ClassicalGame:
    """2-player game from a nested list cells[i][j] = (u1, u2).

    `rows`/`cols` are the strategy labels; keyword aliases are accepted
    for call-site clarity.
    """
    rows = row_labels or rows
    cols = col_labels or cols
    arr = np.array(cells, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("cells must be a rows x cols table of payoff pairs")
    return ClassicalGame((tuple(rows), tuple(cols)), arr)


def pd_game(T=5.0, R=3.0, P=1.0, S=0.0) -> ClassicalGame:
    """Prisoner's dilemma [[ (R,R), (S,T) ], [ (T,S), (P,P) ]]; enforces T > R > P > S."""
    if not T > R > P > S:
        raise ValueError(f"prisoner's dilemma needs T > R > P > S, got {(T, R, P, S)}")
    return bimatrix(("t", "b"), ("l", "r"), [[(R, R), (S, T)], [(T, S), (P, P)]])


@dataclass(frozen=True)
class GameMapping:
    """Player permutation eta plus per-player strategy bijections phi.

    eta[i] is the image player of player i (0-based). phi[i][k] is the
    image strategy index of player i's strategy k, living in the image
    player's strategy set.
    """

    eta: tuple[int, ...]
    phi: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        eta = tuple(int(k) for k in self.eta)
        phi = tuple(tuple(int(k) for k in p) for p in self.phi)
        n = len(eta)
        if sorted(eta) != list(range(n)):
            raise ValueError(f"eta is not a permutation: {eta}")
        if len(phi) != n:
            raise ValueError("need one strategy bijection per player")
        for i, p in enumerate(phi):
            if sorted(p) != list(range(len(p))):
                raise ValueError(f"phi[{i}] is not a bijection: {p}")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "phi", phi)

    @property
    def n_players(self) -> int:
        return len(self.eta)

    def inverse(self) -> "GameMapping":
        n = self.n_players
        eta_inv = [0] * n
        for i, k in enumerate(self.eta):
            eta_inv[k] = i
        psi = []
        for k in range(n):
            i = eta_inv[k]
            p = self.phi[i]
            p_inv = [0] * len(p)
            for a, b in enumerate(p):
                p_inv[b] = a
            psi.append(tuple(p_inv))
        return GameMapping(tuple(eta_inv), tuple(psi))

    @staticmethod
    def identity(shape: Sequence[int]) -> "GameMapping":
        return GameMapping(
            tuple(range(len(shape))), tuple(tuple(range(m)) for m in shape)
        )


def compose(first: GameMapping, second: GameMapping) -> GameMapping:
    """Mapping applying `first` then `second` (g -> g2 -> g3)."""
    if first.n_players != second.n_players:
        raise ValueError("player counts differ")
    eta = tuple(second.eta[first.eta[i]] for i in range(first.n_players))
    phi = tuple(
        tuple(second.phi[first.eta[i]][k] for k in first.phi[i])
        for i in range(first.n_players)
    )
    return GameMapping(eta, phi)


def apply_mapping(f: GameMapping, profile: Sequence[int]) -> StrategyProfile:
    """Image profile s' with s'_{eta(i)} = phi_i(s_i)."""
    s = tuple(int(k) for k in profile)
    if len(s) != f.n_players:
        raise ValueError("profile length does not match mapping")
    out = [0] * f.n_players
    for i, si in enumerate(s):
        if not 0 <= si < len(f.phi[i]):
            raise ValueError(f"strategy index {si} out of range for player {i + 1}")
        out[f.eta[i]] = f.phi[i][si]
    return tuple(out)


def _shapes_compatible(f: GameMapping, g: ClassicalGame, g2: ClassicalGame) -> bool:
    if f.n_players != g.n_players or f.n_players != g2.n_players:
        return False
    for i in range(f.n_players):
        if len(f.phi[i]) != g.shape[i] or g2.shape[f.eta[i]] != g.shape[i]:
            return False
    return True


def is_strong_isomorphism(
    f: GameMapping, g: ClassicalGame, g2: ClassicalGame, tol: float = PAYOFF_TOL
) -> bool:
    """True iff u_i(s) = u'_{eta(i)}(f(s)) for every player and profile."""
    if not _shapes_compatible(f, g, g2):
        return False
    for s in g.profiles():
        t = apply_mapping(f, s)
        for i in range(g.n_players):
            if abs(g.payoffs[s][i] - g2.payoffs[t][f.eta[i]]) > tol:
                return False
    return True


def find_strong_isomorphisms(g: ClassicalGame, g2: ClassicalGame) -> list[GameMapping]:
    """Exhaustively enumerate all strong isomorphisms g -> g2.

    Candidates are generated in lexicographic order (eta outer, then the
    per-player bijections), so the result order is deterministic. An
    empty list means the games are not isomorphic.
    """
    if g.n_players != g2.n_players:
        return []
    n = g.n_players
    found = []
    for eta in permutations(range(n)):
        if any(g2.shape[eta[i]] != g.shape[i] for i in range(n)):
            continue
        for phis in product(*(permutations(range(g.shape[i])) for i in range(n))):
            f = GameMapping(eta, phis)
            if is_strong_isomorphism(f, g, g2):
                found.append(f)
    return found


def image_game(f: GameMapping, g: ClassicalGame) -> ClassicalGame:
    """Push a game forward through a mapping, making f an isomorphism.

    Labels travel with the strategies they name.
    """
    if not all(len(f.phi[i]) == g.shape[i] for i in range(g.n_players)):
        raise ValueError("mapping does not match game shape")
    n = g.n_players
    dims = [0] * n
    for i in range(n):
        dims[f.eta[i]] = g.shape[i]
    labels = [None] * n
    for i in range(n):
        lab = [None] * g.shape[i]
        for k in range(g.shape[i]):
            lab[f.phi[i][k]] = g.labels[i][k]
        labels[f.eta[i]] = tuple(lab)
    out = np.zeros(tuple(dims) + (n,))
    for s in g.profiles():
        t = apply_mapping(f, s)
        for i in range(n):
            out[t][f.eta[i]] = g.payoffs[s][i]
    return ClassicalGame(tuple(labels), out)


def strategic_equivalence(
    g: ClassicalGame, g2: ClassicalGame, tol: float = AFFINE_TOL
) -> list[tuple[float, float]] | None:
    """Per-player (alpha_i > 0, beta_i) with v_i = alpha_i u_i + beta_i, or None.

    Both games must have the same shape and the same label lists. When a
    player's payoff is constant in the first game any alpha fits; the
    convention is alpha = 1, beta = v - u.
    """
    if g.labels != g2.labels:
        raise ValueError("strategic equivalence needs identical strategy sets")
    n = g.n_players
    fits = []
    for i in range(n):
        u = g.payoffs[..., i].reshape(-1)
        v = g2.payoffs[..., i].reshape(-1)
        spread = np.argsort(u)
        lo, hi = spread[0], spread[-1]
        if abs(u[hi] - u[lo]) <= tol:
            alpha, beta = 1.0, float(v[0] - u[0])
        else:
            alpha = float((v[hi] - v[lo]) / (u[hi] - u[lo]))
            beta = float(v[lo] - alpha * u[lo])
        if alpha <= 0:
            return None
        if np.abs(v - (alpha * u + beta)).max() > tol:
            return None
        fits.append((alpha, beta))
    return fits


def pure_nash_equilibria(g: ClassicalGame, tol: float = PAYOFF_TOL) -> list[StrategyProfile]:
    """All profiles where no unilateral deviation strictly improves a player.

    Ties count as equilibria (weak inequality). Row-major profile order.
    """
    mask = np.ones(g.shape, dtype=bool)
    for i in range(g.n_players):
        u = g.payoffs[..., i]
        best = u.max(axis=i, keepdims=True)
        mask &= u >= best - tol
    return [tuple(int(v) for v in idx) for idx in np.argwhere(mask)]


@dataclass(frozen=True)
class MixedProfile2x2:
    """Mixed profile of a 2x2 bimatrix game.

    p and q are the probabilities of each player's first strategy.
    `continuum` marks extreme points of a degenerate equilibrium
    component rather than isolated equilibria.
    """

    p: float
    q: float
    continuum: bool = False


def mixed_nash_2x2(g: ClassicalGame, tol: float = PAYOFF_TOL) -> list[MixedProfile2x2]:
    """All Nash equilibria of a 2x2 bimatrix game by support enumeration.

    Pure equilibria are reported as degenerate mixed profiles, in
    profile order, followed by degenerate-component extreme points and
    the interior equilibrium when the indifference equations admit one.
    """
    if g.shape != (2, 2):
        raise ValueError("mixed_nash_2x2 needs a 2x2 bimatrix game")
    A = g.payoffs[..., 0]
    B = g.payoffs[..., 1]
    out: list[MixedProfile2x2] = []
    seen = set()

    def emit(p, q, continuum=False):
        key = (round(p, 9), round(q, 9))
        if key not in seen:
            seen.add(key)
            out.append(MixedProfile2x2(float(p), float(q), continuum))

    # pure supports
    for i, j in product(range(2), range(2)):
        if A[i, j] >= A[1 - i, j] - tol and B[i, j] >= B[i, 1 - j] - tol:
            emit(1.0 - i, 1.0 - j)

    # player 1 pure, player 2 mixed with full support (degenerate games
    # only); the interval is already expressed as q, the weight on
    # player 2's first strategy
    for i in range(2):
        if abs(B[i, 0] - B[i, 1]) <= tol:
            lo, hi = _best_reply_interval(A[i], A[1 - i], tol)
            if lo is not None and hi - lo > tol:
                emit(1.0 - i, lo, continuum=True)
                emit(1.0 - i, hi, continuum=True)

    # player 2 pure, player 1 mixed with full support
    for j in range(2):
        if abs(A[0, j] - A[1, j]) <= tol:
            lo, hi = _best_reply_interval(B[:, j], B[:, 1 - j], tol)
            if lo is not None and hi - lo > tol:
                emit(lo, 1.0 - j, continuum=True)
                emit(hi, 1.0 - j, continuum=True)

    # full supports: both players indifferent
    den_q = A[0, 0] - A[1, 0] - A[0, 1] + A[1, 1]
    den_p = B[0, 0] - B[0, 1] - B[1, 0] + B[1, 1]
    if abs(den_q) > tol and abs(den_p) > tol:
        q = (A[1, 1] - A[0, 1]) / den_q
        p = (B[1, 1] - B[1, 0]) / den_p
        if -tol <= p <= 1 + tol and -tol <= q <= 1 + tol:
            emit(min(max(p, 0.0), 1.0), min(max(q, 0.0), 1.0))
    return out


def _best_reply_interval(u_own, u_other, tol):
    """Opponent mix weights w (on their first strategy) keeping `own`
    weakly best: solve w*u_own[0]+(1-w)*u_own[1] >= w*u_other[0]+(1-w)*u_other[1]."""
    a = (u_own[0] - u_other[0]) - (u_own[1] - u_other[1])
    b = u_own[1] - u_other[1]
    # condition a*w + b >= 0 on [0, 1]
    if abs(a) <= tol:
        return (0.0, 1.0) if b >= -tol else (None, None)
    root = -b / a
    if a > 0:
        lo, hi = max(0.0, root), 1.0
    else:
        lo, hi = 0.0, min(1.0, root)
    if lo > hi + tol:
        return (None, None)
    return (min(lo, 1.0), max(hi, 0.0))


def equilibrium_transport_check(
    f: GameMapping, g: ClassicalGame, g2: ClassicalGame
) -> bool:
    """True iff f maps the pure-equilibrium set of g bijectively onto g2's.

    f must already be a verified strong isomorphism.
    """
    if not is_strong_isomorphism(f, g, g2):
        raise ValueError("mapping is not a strong isomorphism of the given games")
    image = {apply_mapping(f, s) for s in pure_nash_equilibria(g)}
    return image == set(pure_nash_equilibria(g2))
