"""Updating solver for the Hessenberg-pencil inverse eigenvalue problem.

Given the block bidiagonal matrix J, the weight vector w and a pole list
psi_1..psi_{m-1}, construct unitary Q and an unreduced upper Hessenberg
pencil (H, K) with

    J Q K = Q H,    Q e_1 = w / ||w||_2,    H[k+1, k] / K[k+1, k] = psi_k.

Blocks of J are introduced one at a time.  Each step embeds the solved
subproblems block-diagonally, corrects the first column of Q with a single
plane rotation, restores the Hessenberg shape with pole-preserving
eliminations, and finally installs the new block's poles by adding each one
at the bottom position and swapping it upward.

All index arguments are 0-based; pole index k refers to the subdiagonal
position (k+1, k).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DeflationError, NumericalError
from .pencil import (
    DEFLATION_RTOL,
    HessenbergPencil,
    assert_unreduced,
    pencil_scale,
    pole_pair,
)
from .rotations import (
    PlaneRotation,
    apply_left,
    apply_right,
    identity_rotation,
    null_direction_rotation,
    rotation_zeroing,
)
from .sobolev import DiscreteSobolevSpec, check_spectrum_disjoint


@dataclass
class IEPSolution:
    """Pencil, basis matrix and weight norm solving the inverse problem."""

    pencil: HessenbergPencil
    Q: np.ndarray
    wnorm: float

    @property
    def H(self) -> np.ndarray:
        return self.pencil.H

    @property
    def K(self) -> np.ndarray:
        return self.pencil.K

    @property
    def m(self) -> int:
        return self.pencil.m

    def poles(self) -> list[complex]:
        return self.pencil.poles()


def single_block_solution(node: complex, alphas, weight: complex) -> IEPSolution:
    """Exact solution of the inverse problem restricted to one block.

    `alphas` lists (alpha_1, ..., alpha_s); the block has size s + 1.  With Q
    the anti-diagonal permutation, K = I and H the doubly-reversed block
    (which coincides with the transpose for s <= 1), the relation J Q = Q H
    holds identically and the permutation puts the weight into the first
    column of Q.  A diagonal phase absorbs a complex weight amplitude.
    """
    s = len(alphas)
    n = s + 1
    H = np.zeros((n, n), dtype=complex)
    K = np.eye(n, dtype=complex)
    z = complex(node)
    for i in range(n):
        H[i, i] = z
    for i in range(s):
        # doubly reversed block: subdiagonal runs alpha_1 .. alpha_s downwards
        H[i + 1, i] = complex(alphas[i])
    w = complex(weight)
    if w == 0.0:
        raise NumericalError("block weight amplitude must be nonzero")
    phase = w / abs(w)
    Q = np.zeros((n, n), dtype=complex)
    for i in range(n):
        Q[n - 1 - i, i] = 1.0
    Q[:, 0] *= phase
    H[:, 0] *= phase
    H[0, :] *= np.conj(phase)
    return IEPSolution(HessenbergPencil(H, K), Q, abs(w))


def embed(hat: IEPSolution, blk: IEPSolution) -> IEPSolution:
    """Block-diagonal embedding of two partial solutions.

    The embedded triple satisfies the recurrence for the combined J but not
    yet the weight condition; `weight_rotation` repairs the first column.
    """
    mh, mb = hat.m, blk.m
    m = mh + mb
    H = np.zeros((m, m), dtype=complex)
    K = np.zeros((m, m), dtype=complex)
    Q = np.zeros((m, m), dtype=complex)
    H[:mh, :mh] = hat.H
    H[mh:, mh:] = blk.H
    K[:mh, :mh] = hat.K
    K[mh:, mh:] = blk.K
    Q[:mh, :mh] = hat.Q
    Q[mh:, mh:] = blk.Q
    wnorm = float(np.hypot(hat.wnorm, blk.wnorm))
    return IEPSolution(HessenbergPencil(H, K), Q, wnorm)


def weight_rotation(hat_norm: float, w_sigma: complex, m: int, s_sigma: int) -> PlaneRotation:
    """Rotation P whose conjugate transpose, applied on the right of the
    embedded basis matrix, makes its first column the normalized combined
    weight vector.

    Acts on rows 0 and m - s_sigma - 1 (the first row of the appended block).
    The embedded block carries the weight phase, so only magnitudes enter.
    """
    total = np.hypot(hat_norm, abs(w_sigma))
    if total == 0.0:
        raise NumericalError("total weight vanishes")
    a = hat_norm / total
    b = -abs(w_sigma) / total
    return PlaneRotation(a, b, 0, m - s_sigma - 1)


def _deflation_tol(H: np.ndarray, K: np.ndarray) -> float:
    return DEFLATION_RTOL * pencil_scale(H, K)


def pole_preserving_rotations(A: np.ndarray, B: np.ndarray) -> tuple[PlaneRotation, PlaneRotation]:
    """Left/right rotation pair zeroing the (1, 0) entries of the 2x2 kernels
    A and B while preserving the ratio A[0, 0] / B[0, 0].

    Requires A[0, 1] = B[0, 1] = 0 (guaranteed by the elimination schedule).
    The right rotation is built from the null direction of beta*A - delta*B;
    the left rotation triangularizes the then-colinear first columns.
    """
    delta, beta = A[0, 0], B[0, 0]
    scale = max(np.linalg.norm(A), np.linalg.norm(B))
    if max(abs(delta), abs(beta)) <= DEFLATION_RTOL * scale:
        raise DeflationError("elimination pivot has vanished in both matrices")
    top = abs(beta * A[0, 1] - delta * B[0, 1])
    if top > 1e-10 * max(abs(beta), abs(delta)) * scale:
        raise NumericalError("elimination kernel violates the zero-corner precondition")
    M10 = beta * A[1, 0] - delta * B[1, 0]
    M11 = beta * A[1, 1] - delta * B[1, 1]
    right = null_direction_rotation(M10, M11, 0, 1)
    if right is None:
        right = identity_rotation(0, 1)
    a_bar, b = np.conj(right.a), right.b
    ua = a_bar * A[:, 0] + b * A[:, 1]
    ub = a_bar * B[:, 0] + b * B[:, 1]
    u = ua if np.linalg.norm(ua) >= np.linalg.norm(ub) else ub
    if np.linalg.norm(u) <= DEFLATION_RTOL * scale:
        raise DeflationError("elimination would deflate the pencil")
    left = rotation_zeroing(u[0], u[1], 0, 1)
    return left, right


def op1_eliminate(
    H: np.ndarray, K: np.ndarray, r: int, c: int, Q: np.ndarray | None = None
) -> tuple[PlaneRotation, PlaneRotation]:
    """Zero H[r, c] and K[r, c] keeping the pole ratio at column c intact.

    The pivot sits at (c+1, c).  Applies a left rotation on rows (c+1, r) and
    a right rotation on columns (c, r); Q picks up the conjugate-transposed
    left rotation on its columns.  Entries that were exactly zero on the
    pivot stay exactly zero (infinite poles survive bit-for-bit).
    """
    p = c + 1
    if not (0 <= c < r < H.shape[0]) or r == p:
        raise IndexError(f"invalid elimination target ({r}, {c})")
    tol = _deflation_tol(H, K)
    if abs(H[r, c]) <= tol and abs(K[r, c]) <= tol:
        return identity_rotation(p, r), identity_rotation(c, r)
    A = np.array([[H[p, c], H[p, r]], [H[r, c], H[r, r]]], dtype=complex)
    B = np.array([[K[p, c], K[p, r]], [K[r, c], K[r, r]]], dtype=complex)
    h_pivot_zero = H[p, c] == 0.0
    k_pivot_zero = K[p, c] == 0.0
    left2, right2 = pole_preserving_rotations(A, B)
    left = PlaneRotation(left2.a, left2.b, p, r)
    right = PlaneRotation(right2.a, right2.b, c, r)
    apply_left(left, H)
    apply_left(left, K)
    apply_right(right, H)
    apply_right(right, K)
    if Q is not None:
        apply_right(left.inverse(), Q)
    H[r, c] = 0.0
    K[r, c] = 0.0
    if h_pivot_zero:
        H[p, c] = 0.0
    if k_pivot_zero:
        K[p, c] = 0.0
    return left, right


def restore_hessenberg(
    H: np.ndarray, K: np.ndarray, Q: np.ndarray | None, s_sigma: int
) -> list[tuple[int, int]]:
    """Eliminate everything below the first subdiagonal after a weight rotation.

    Column sweep: for the first m - s_sigma - 2 columns the fill sits in the
    rows of the appended block (each elimination cascades one row further
    down); the remaining columns clean the trailing corner.  Returns the list
    of positions actually eliminated, in order.
    """
    m = H.shape[0]
    S = s_sigma + 1
    mhat = m - S
    tol = _deflation_tol(H, K)
    targets: list[tuple[int, int]] = []
    for c in range(0, max(mhat - 1, 0)):
        for r in range(mhat, m):
            if r <= c + 1:
                continue
            if abs(H[r, c]) <= tol and abs(K[r, c]) <= tol:
                continue
            op1_eliminate(H, K, r, c, Q)
            targets.append((r, c))
    for c in range(max(mhat - 1, 0), m - 2):
        for r in range(c + 2, m):
            if abs(H[r, c]) <= tol and abs(K[r, c]) <= tol:
                continue
            op1_eliminate(H, K, r, c, Q)
            targets.append((r, c))
    residue = 0.0
    for c in range(m - 2):
        residue = max(residue, float(np.max(np.abs(H[c + 2 :, c]))), float(np.max(np.abs(K[c + 2 :, c]))))
    if residue > 1e-10 * pencil_scale(H, K):
        raise NumericalError(f"Hessenberg restoration left residue {residue:.3e}")
    for c in range(m - 2):
        H[c + 2 :, c] = 0.0
        K[c + 2 :, c] = 0.0
    return targets


def expected_elimination_count(m: int, s_sigma: int) -> int:
    """Eliminations needed to restore a weight-rotated embedded pencil when
    every pole involved is finite (generic fill).

    The first m - s_sigma - 2 columns each clear the s_sigma + 1 appended
    rows; the trailing corner needs s_sigma + (s_sigma - 1) + ... + 1 more.
    A one-dimensional leading part is special: the weight rotation then mixes
    two adjacent rows and produces no fill below the subdiagonal.  Infinite
    poles reduce the count further (a vanished K subdiagonal stops the fill
    cascade early), so this is an upper bound realized in the generic case.
    """
    S = s_sigma + 1
    mhat = m - S
    if mhat <= 1:
        return 0
    return (mhat - 1) * S + s_sigma * S // 2


def op2_add_pole(H: np.ndarray, K: np.ndarray, psi) -> PlaneRotation:
    """Set the pole at the last subdiagonal position (m-1, m-2) to psi.

    A single right rotation on the last two columns; Q is untouched.  Handles
    psi at infinity through the homogeneous pair (mu, nu) = (1, 0).
    """
    m = H.shape[0]
    h1, h2 = H[m - 1, m - 2], H[m - 1, m - 1]
    k1, k2 = K[m - 1, m - 2], K[m - 1, m - 1]
    mu, nu = pole_pair(psi)
    z0 = nu * h1 - mu * k1
    z1 = nu * h2 - mu * k2
    rot = null_direction_rotation(z0, z1, m - 2, m - 1)
    if rot is None:
        # pinned ratio: acceptable only if it already equals psi
        if abs(z0) == 0.0 and abs(z1) == 0.0:
            return identity_rotation(m - 2, m - 1)
        raise DeflationError("cannot place the requested pole: degenerate trailing block")
    apply_right(rot, H)
    apply_right(rot, K)
    if nu == 0.0:
        K[m - 1, m - 2] = 0.0
    if mu == 0.0:
        H[m - 1, m - 2] = 0.0
    tol = _deflation_tol(H, K)
    if abs(H[m - 1, m - 2]) <= tol and abs(K[m - 1, m - 2]) <= tol:
        raise DeflationError("pole placement deflated the trailing position")
    return rot


def op3_swap_adjacent(
    H: np.ndarray, K: np.ndarray, c: int, Q: np.ndarray | None = None
) -> tuple[PlaneRotation, PlaneRotation]:
    """Exchange the poles at indices c and c+1; all other ratios are fixed.

    Works on the 2x2 upper triangular kernels at rows (c+1, c+2), columns
    (c, c+1): the right rotation comes from the null direction of
    nu*A - mu*B, the left rotation re-triangularizes.
    """
    m = H.shape[0]
    if not 0 <= c <= m - 3:
        raise IndexError(f"swap index {c} out of range")
    tau, kap = H[c + 1, c], K[c + 1, c]
    mu, nu = H[c + 2, c + 1], K[c + 2, c + 1]
    A = np.array([[tau, H[c + 1, c + 1]], [0.0, mu]], dtype=complex)
    B = np.array([[kap, K[c + 1, c + 1]], [0.0, nu]], dtype=complex)
    z0 = nu * A[0, 0] - mu * B[0, 0]
    z1 = nu * A[0, 1] - mu * B[0, 1]
    right = null_direction_rotation(z0, z1, c, c + 1)
    if right is None:
        return identity_rotation(c + 1, c + 2), identity_rotation(c, c + 1)
    a_bar, b = np.conj(right.a), right.b
    ua = a_bar * A[:, 0] + b * A[:, 1]
    ub = a_bar * B[:, 0] + b * B[:, 1]
    u = ua if np.linalg.norm(ua) >= np.linalg.norm(ub) else ub
    if np.linalg.norm(u) == 0.0:
        raise DeflationError("pole swap degenerated")
    left = rotation_zeroing(u[0], u[1], c + 1, c + 2)
    apply_right(right, H)
    apply_right(right, K)
    apply_left(left, H)
    apply_left(left, K)
    if Q is not None:
        apply_right(left.inverse(), Q)
    H[c + 2, c] = 0.0
    K[c + 2, c] = 0.0
    # poles travel with their homogeneous pairs: keep exact zeros exact
    if nu == 0.0:
        K[c + 1, c] = 0.0
    if kap == 0.0:
        K[c + 2, c + 1] = 0.0
    if mu == 0.0:
        H[c + 1, c] = 0.0
    if tau == 0.0:
        H[c + 2, c + 1] = 0.0
    return left, right


def _install_trailing_poles(sol: IEPSolution, new_poles, first_index: int) -> None:
    """Add poles (deepest target first) at the bottom and swap each upward."""
    H, K, Q = sol.H, sol.K, sol.Q
    m = H.shape[0]
    for j, psi in enumerate(new_poles):
        op2_add_pole(H, K, psi)
        target = first_index + j
        for c in range(m - 3, target - 1, -1):
            op3_swap_adjacent(H, K, c, Q)


def add_block(current: IEPSolution | None, node, alphas, weight, new_poles) -> IEPSolution:
    """Grow the solution by one block of J and install its pole positions.

    `new_poles` supplies s + 1 poles (s for the very first block), ordered by
    target position: the first entry lands deepest and is swapped s times.
    """
    blk = single_block_solution(node, alphas, weight)
    if current is None:
        if len(new_poles) != len(alphas):
            raise ValueError("the first block introduces exactly s poles")
        _install_trailing_poles(blk, new_poles, 0)
        return blk
    s_sigma = len(alphas)
    if len(new_poles) != s_sigma + 1:
        raise ValueError("an appended block introduces exactly s + 1 poles")
    sol = embed(current, blk)
    m = sol.m
    rot = weight_rotation(current.wnorm, weight, m, s_sigma)
    apply_left(rot, sol.H)
    apply_left(rot, sol.K)
    apply_right(rot.inverse(), sol.Q)
    restore_hessenberg(sol.H, sol.K, sol.Q, s_sigma)
    _install_trailing_poles(sol, new_poles, m - s_sigma - 2)
    return sol


def solve_updating(spec: DiscreteSobolevSpec, poles) -> IEPSolution:
    """Solve the inverse eigenvalue problem block by block.

    `poles` lists psi_1 .. psi_{m-1} (0-based positions 0 .. m-2); the block
    for node j consumes the next s_j + 1 of them (s_1 for the first block).
    """
    m = spec.m
    poles = list(poles)
    if len(poles) != m - 1:
        raise ValueError(f"need m - 1 = {m - 1} poles, got {len(poles)}")
    check_spectrum_disjoint(poles, spec.nodes)
    sol: IEPSolution | None = None
    pos = 0
    for j in range(spec.sigma):
        s = spec.orders[j]
        if sol is None:
            new_poles = poles[0:s]
            sol = add_block(None, spec.nodes[j], spec.alphas[j], spec.weights[j], new_poles)
            pos = s + 1
        else:
            new_poles = poles[pos - 1 : pos + s]
            sol = add_block(sol, spec.nodes[j], spec.alphas[j], spec.weights[j], new_poles)
            pos += s + 1
    assert sol is not None
    if sol.m > 1:
        assert_unreduced(sol.H, sol.K)
    return sol
