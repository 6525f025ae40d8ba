"""Complex plane rotations and their action on dense matrices.

A plane rotation with parameters (a, b), |a|^2 + |b|^2 = 1, embedded at the
row/column pair (i, k) of the identity, is the unitary matrix

    G[i, i] = conj(a)    G[i, k] = -conj(b)
    G[k, i] = b          G[k, k] = a

All higher-level transformations in this package (weight introduction,
pole-preserving elimination, pole adding and swapping) are products of these.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRotationError

#: |a|^2 + |b|^2 must equal 1 within this tolerance.
UNITARITY_TOL = 1e-14


@dataclass(frozen=True)
class PlaneRotation:
    a: complex
    b: complex
    i: int
    k: int

    def __post_init__(self):
        if self.i == self.k:
            raise ValueError("rotation indices must differ")
        if self.i > self.k:
            raise ValueError("rotation indices must satisfy i < k")
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1.0) > 1e2 * UNITARITY_TOL:
            raise ValueError(f"rotation parameters are not unitary: |a|^2+|b|^2 = {norm!r}")

    @property
    def is_identity(self) -> bool:
        return self.b == 0 and self.a == 1

    def inverse(self) -> "PlaneRotation":
        """Rotation whose embedded matrix is the conjugate transpose."""
        return PlaneRotation(np.conj(self.a), -self.b, self.i, self.k)

    def embed(self, m: int) -> np.ndarray:
        """Dense m-by-m unitary matrix carrying this rotation."""
        G = np.eye(m, dtype=complex)
        G[self.i, self.i] = np.conj(self.a)
        G[self.i, self.k] = -np.conj(self.b)
        G[self.k, self.i] = self.b
        G[self.k, self.k] = self.a
        return G


def identity_rotation(i: int, k: int) -> PlaneRotation:
    return PlaneRotation(1.0, 0.0, i, k)


def rotation_zeroing(x: complex, y: complex, i: int, k: int) -> PlaneRotation:
    """Rotation mapping the column (x, y) onto (r, 0) with r real nonnegative.

    The free unimodular phase is spent on making the surviving entry real
    and nonnegative, so rotated quantities are comparable across methods
    when the data are real.
    """
    r = np.hypot(abs(x), abs(y))
    if r == 0.0:
        raise DegenerateRotationError("cannot build a zeroing rotation from (0, 0)")
    return PlaneRotation(x / r, -y / r, i, k)


def _check_indices(rot: PlaneRotation, n: int) -> None:
    if not (0 <= rot.i < n and 0 <= rot.k < n):
        raise IndexError(f"rotation indices ({rot.i}, {rot.k}) out of range for dimension {n}")


def apply_left(rot: PlaneRotation, M: np.ndarray) -> np.ndarray:
    """M <- G M, touching only rows i and k. Mutates and returns M."""
    _check_indices(rot, M.shape[0])
    ri = np.conj(rot.a) * M[rot.i, :] - np.conj(rot.b) * M[rot.k, :]
    rk = rot.b * M[rot.i, :] + rot.a * M[rot.k, :]
    M[rot.i, :] = ri
    M[rot.k, :] = rk
    return M


def apply_right(rot: PlaneRotation, M: np.ndarray) -> np.ndarray:
    """M <- M G, touching only columns i and k. Mutates and returns M."""
    _check_indices(rot, M.shape[1])
    ci = np.conj(rot.a) * M[:, rot.i] + rot.b * M[:, rot.k]
    ck = -np.conj(rot.b) * M[:, rot.i] + rot.a * M[:, rot.k]
    M[:, rot.i] = ci
    M[:, rot.k] = ck
    return M


def null_direction_rotation(z0: complex, z1: complex, i: int, k: int) -> PlaneRotation | None:
    """Rotation whose first column is the unit null vector of the row (z0, z1).

    Applying the rotation on the right of a matrix whose row is (z0, z1)
    annihilates that row's first entry.  Returns None when (z0, z1) = (0, 0),
    in which case any rotation works and the caller decides.  The free phase
    is fixed by making the first component real nonnegative.
    """
    v0, v1 = -z1, z0
    n = np.hypot(abs(v0), abs(v1))
    if n == 0.0:
        return None
    v0, v1 = v0 / n, v1 / n
    # fix the free phase: first component real nonnegative
    ref = v0 if v0 != 0 else v1
    phase = np.conj(ref) / abs(ref)
    v0, v1 = v0 * phase, v1 * phase
    # first column of the embedded matrix is (conj(a), b)
    return PlaneRotation(np.conj(v0), v1, i, k)
