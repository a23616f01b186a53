"""Dense complex linear algebra for few-qubit strategy spaces.

States and operators are plain numpy arrays of dimension 2**n with
n <= 4. Qubit 1 is the leftmost tensor factor (most significant bit),
so the basis ket |j1 j2 .. jn> sits at flat index sum_i j_i * 2**(n-i).

Everything here is a pure function of its inputs and safe to share
across threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
MAX_QUBITS = 4

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class SU2Params:
    """Angles (theta, alpha, beta) of one player's SU(2) strategy.

    theta must lie in [0, pi]; values outside are rejected. alpha and
    beta are reduced mod 2*pi on construction, so canonically equal
    strategies compare equal.
    """

    theta: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self) -> None:
        theta = float(self.theta)
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "alpha", float(self.alpha) % TWO_PI)
        object.__setattr__(self, "beta", float(self.beta) % TWO_PI)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.theta, self.alpha, self.beta)


def su2(p: SU2Params) -> np.ndarray:
    """Unitary [[e^(ia) cos(t/2), i e^(ib) sin(t/2)],
                [i e^(-ib) sin(t/2), e^(-ia) cos(t/2)]], det = 1."""
    c = math.cos(p.theta / 2.0)
    s = math.sin(p.theta / 2.0)
    ea = cmath.exp(1j * p.alpha)
    eb = cmath.exp(1j * p.beta)
    return np.array(
        [[ea * c, 1j * eb * s], [1j * eb.conjugate() * s, ea.conjugate() * c]]
    )


def tensor(ms: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of the given matrices, left factor first."""
    if len(ms) == 0:
        raise ValueError("tensor() needs at least one factor")
    return reduce(np.kron, ms)


def entangler(n: int) -> np.ndarray:
    """Entangling gate (1^(xn) + i X^(xn)) / sqrt(2) on n qubits."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"player count must be in [1, {MAX_QUBITS}], got {n}")
    xs = tensor([PAULI_X] * n)
    return (np.eye(2**n, dtype=complex) + 1j * xs) / math.sqrt(2.0)


def permutation_operator(perm: Sequence[int], n: int | None = None) -> np.ndarray:
    """Permutation matrix S that moves qubit i to position perm[i] (0-based).

    Conjugation reorders tensor factors: S (U_1 x .. x U_n) S^T puts
    U_{perm^-1(k)} at position k. Composition follows function
    composition: S_{p o q} = S_p S_q.
    """
    perm = tuple(int(k) for k in perm)
    if n is None:
        n = len(perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of {n} positions: {perm}")
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for x in range(dim):
        bits = [(x >> (n - 1 - i)) & 1 for i in range(n)]
        y = 0
        for i in range(n):
            y |= bits[i] << (n - 1 - perm[i])
        out[y, x] = 1.0
    return out


def expectation(state: np.ndarray, obs: np.ndarray) -> float:
    """<state|obs|state> for a Hermitian observable; the O(1e-12)
    imaginary residue is discarded."""
    state = np.asarray(state, dtype=complex)
    obs = np.asarray(obs, dtype=complex)
    if obs.shape != (state.size, state.size):
        raise ValueError("observable / state dimension mismatch")
    if not np.allclose(obs, obs.conj().T, atol=1e-12):
        raise ValueError("observable must be Hermitian")
    value = np.vdot(state, obs @ state)
    return float(value.real)


def basis_state(n: int, bits: Sequence[int]) -> np.ndarray:
    """Computational basis ket |b1 b2 .. bn>."""
    out = np.zeros(2**n, dtype=complex)
    out[basis_index(bits)] = 1.0
    return out


def basis_index(bits: Sequence[int]) -> int:
    """Flat index of the ket |b1 b2 .. bn> (qubit 1 is the MSB)."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | (int(b) & 1)
    return idx


def is_unitary(m: np.ndarray, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max() <= tol)


def is_state(v: np.ndarray, tol: float = 1e-12) -> bool:
    v = np.asarray(v)
    return abs(float(np.sum(np.abs(v) ** 2)) - 1.0) <= tol
