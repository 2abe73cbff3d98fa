"""Cylinder operators for the strange-correlator lattice model.

The classical model lives on a triangular lattice of fusion labels with
nearest-neighbour admissibility set by fusion with the projection label
(hard-hexagon exclusion for Fibonacci-type categories).  Faces carry
quantum-dimension measures and every triangle carries a normalized
recoupling coefficient; one row of triangles forms the half transfer
matrix, and two staggered rows the full one.  The wrapping MPO symmetry
is the fuse/split double layer of F moves summed over the dressed label
chain; see docs/conventions.md for all index conventions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .category import CategoryError, FusionCategory

CHUNK = 512  # row-chunk size for the vectorized operator builders


class CylinderError(CategoryError):
    pass


class FluxNotRealizableError(CylinderError):
    pass


def _sqrt_dims(cat):
    return cat.sqrt_dims()


@dataclass
class RingBasis:
    """Admissible label strings on a periodic chain, with optional defect.

    For trivial flux the states are cyclic strings x with
    N[x_i][tau][x_{i+1}] = 1.  For flux f != 0 the states carry a seam
    label mu between sites L-1 and 0: N[x_{L-1}][tau][mu] = 1 and
    N[mu][f][x_0] = 1, so the stored rows have L+1 columns.
    """

    cat: FusionCategory
    L: int
    flux: int
    tau: int
    states: np.ndarray          # (dim, L) or (dim, L+1) int8
    index: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    def state_tuple(self, i: int) -> tuple:
        return tuple(int(v) for v in self.states[i])


def build_ring_basis(cat: FusionCategory, L: int, flux=0, tau: int = 1,
                     _allow_small: bool = False) -> RingBasis:
    """Enumerate the flux-sector basis in lexicographic order."""
    if not _allow_small:
        if L < 4 or L % 2:
            raise CylinderError(f"need even L >= 4, got {L}")
    flux = cat.label_index(flux)
    tau = cat.label_index(tau)
    N = cat.N
    n = cat.num_labels
    out = []

    def rec(prefix):
        if len(prefix) == L:
            if flux == 0:
                if N[prefix[-1], tau, prefix[0]]:
                    out.append(tuple(prefix))
            else:
                for mu in range(n):
                    if N[prefix[-1], tau, mu] and N[mu, flux, prefix[0]]:
                        out.append(tuple(prefix) + (mu,))
            return
        for x in range(n):
            if not prefix or N[prefix[-1], tau, x]:
                rec(prefix + [x])

    rec([])
    out.sort()
    if not out:
        raise FluxNotRealizableError(
            f"no admissible states at L={L}, flux={cat.labels[flux]}")
    states = np.array(out, dtype=np.int8)
    return RingBasis(cat=cat, L=L, flux=flux, tau=tau, states=states,
                     index={s: i for i, s in enumerate(out)})


@dataclass
class RingOperator:
    """Dense operator between two ring bases."""

    domain: RingBasis
    codomain: RingBasis
    matrix: np.ndarray

    def __matmul__(self, other):
        if isinstance(other, RingOperator):
            if other.codomain.index is not self.domain.index and \
               other.codomain.states.shape != self.domain.states.shape:
                raise CylinderError("operator shapes do not compose")
            return RingOperator(other.domain, self.codomain,
                                self.matrix @ other.matrix)
        return self.matrix @ other

    @property
    def shape(self):
        return self.matrix.shape


def _triangle_table(cat: FusionCategory, tau: int) -> np.ndarray:
    """V[a, b, c] = F[a, tau, b, tau, c, c] / d_c: the normalized triangle
    weight for faces (a, b) sharing a bond with apex face c."""
    n = cat.num_labels
    V = np.zeros((n, n, n), dtype=np.complex128)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                val = cat.f(a, tau, b, tau, c, c)
                if val:
                    V[a, b, c] = val / cat.dims[c]
    return V


def hard_hexagon_fugacity(cat: FusionCategory, tau: int = 1) -> complex:
    """Per-particle weight encoded by the triangle/face weights.

    A particle is a unit-label face in the tau sea; it changes the six
    surrounding triangle weights and its own face measure, giving
    (d_1/d_tau) * ratio^6 which evaluates to d_tau^5.
    """
    tau = cat.label_index(tau)
    V = _triangle_table(cat, tau)
    sea = V[tau, tau, tau]
    if abs(sea) < 1e-14:
        raise CylinderError("tau-sea triangle weight vanishes")
    corner = V[0, tau, tau] / sea          # particle on a base corner (x4)
    apex = V[tau, tau, 0] / sea            # particle on the apex (x2)
    dr = cat.dims[0] / cat.dims[tau]
    return complex(dr * corner ** 4 * apex ** 2)


def _half_row_matrix(basis: RingBasis, direction: int) -> np.ndarray:
    """One staggered row of triangles (trivial flux only).

    direction=+1: the new row sits above bonds (i, i+1);
    direction=-1: above bonds (i-1, i).  The two compose to the two-row
    transfer matrix that commutes with one-site translation.
    """
    cat, L, tau = basis.cat, basis.L, basis.tau
    V = _triangle_table(cat, tau)
    sq = _sqrt_dims(cat)
    st = basis.states.astype(np.int64)
    dim = basis.dim
    out = np.zeros((dim, dim), dtype=np.complex128)
    for lo in range(0, dim, CHUNK):
        hi = min(lo + CHUNK, dim)
        blk = np.ones((hi - lo, dim), dtype=np.complex128)
        for k in range(L):
            kp = (k + 1) % L
            if direction > 0:
                up = V[st[None, :, k], st[None, :, kp], st[lo:hi, None, k]]
                dn = V[st[lo:hi, None, k], st[lo:hi, None, kp], st[None, :, kp]]
            else:
                up = V[st[None, :, k], st[None, :, kp], st[lo:hi, None, kp]]
                dn = V[st[lo:hi, None, k], st[lo:hi, None, kp], st[None, :, k]]
            blk *= up * dn
            blk *= sq[st[None, :, k]] * sq[st[lo:hi, None, k]]
        out[lo:hi] = blk
    return out


def build_transfer_matrix(cat: FusionCategory, basis: RingBasis,
                          two_row: bool = True) -> RingOperator:
    """Transfer matrix of the lattice model on the given flux sector.

    Trivial flux: product of two staggered triangle rows (a full unit cell
    in the transfer direction), real spectrum in the low-lying part.
    Nontrivial flux: the seam machinery threads the defect line through
    each row; see _seam_row_matrix.
    """
    if basis.cat is not cat:
        raise CylinderError("basis was built on a different category")
    if basis.flux == 0:
        up = _half_row_matrix(basis, +1)
        if not two_row:
            return RingOperator(basis, basis, up)
        dn = _half_row_matrix(basis, -1)
        return RingOperator(basis, basis, dn @ up)
    row = _seam_row_matrix(basis)
    if not two_row:
        return RingOperator(basis, basis, row)
    rot = _seam_translation_matrix(basis)
    rot_inv = np.linalg.inv(rot)
    return RingOperator(basis, basis, rot_inv @ row @ rot @ row)


def build_translation(basis: RingBasis) -> RingOperator:
    """Two-site cyclic shift (one checkerboard unit cell)."""
    if basis.flux == 0:
        st = basis.states
        dim = basis.dim
        M = np.zeros((dim, dim))
        for i in range(dim):
            s = basis.state_tuple(i)
            ns = tuple(s[(k - 2) % basis.L] for k in range(basis.L))
            M[basis.index[ns], i] = 1.0
        return RingOperator(basis, basis, M)
    t1 = _seam_translation_matrix(basis)
    return RingOperator(basis, basis, t1 @ t1)


def translation_one(basis: RingBasis) -> RingOperator:
    """One-site shift; on a defect sector this transports the seam."""
    if basis.flux == 0:
        dim = basis.dim
        M = np.zeros((dim, dim))
        for i in range(dim):
            s = basis.state_tuple(i)
            ns = tuple(s[(k - 1) % basis.L] for k in range(basis.L))
            M[basis.index[ns], i] = 1.0
        return RingOperator(basis, basis, M)
    return RingOperator(basis, basis, _seam_translation_matrix(basis))


def build_mpo_symmetry(cat: FusionCategory, a, basis: RingBasis) -> RingOperator:
    """Wrapping MPO O_a on the given flux sector.

    Trivial flux: O_a = (fuse/split double layer for label a), with the
    unit-label component subtracted off for nontrivial a so that the
    operators satisfy O_a O_b = sum_c N_ab^c O_c exactly.
    """
    a = cat.label_index(a)
    if basis.flux == 0:
        if a == 0:
            return RingOperator(basis, basis, np.eye(basis.dim, dtype=complex))
        full = _fuse_split_matrix(cat, a, basis)
        # the double layer carries every channel of a x a; for Fibonacci-type
        # labels (a x a = 0 + a) the unit channel is the identity operator
        channels = [c for c in range(cat.num_labels) if cat.N[a, a, c]]
        if channels == [0]:
            return RingOperator(basis, basis, full)
        if set(channels) == {0, a}:
            return RingOperator(basis, basis, full - np.eye(basis.dim))
        raise CylinderError(
            f"MPO extraction not implemented for channels {channels}")
    return _seam_mpo(cat, a, basis)


def _fuse_split_matrix(cat: FusionCategory, a: int, basis: RingBasis) -> np.ndarray:
    """Double-layer MPO: sum over the dressed chain m of
    prod_i F[a, x_i, tau, m_{i+1}, m_i, x_{i+1}] F[a, x'_i, tau, m_{i+1}, m_i, x'_{i+1}]."""
    tau = basis.tau
    n = cat.num_labels
    L = basis.L
    Fd = cat.dense_f()
    st = basis.states.astype(np.int64)
    dim = basis.dim
    # Mt2[x, xp, y, yp, m, mp]
    Mt2 = np.zeros((n, n, n, n, n, n), dtype=np.complex128)
    for x in range(n):
        for xp in range(n):
            for y in range(n):
                for yp in range(n):
                    for m in range(n):
                        for mp in range(n):
                            v1 = Fd[a, x, tau, mp, m, y]
                            if not v1:
                                continue
                            v2 = Fd[a, xp, tau, mp, m, yp]
                            if v2:
                                Mt2[x, xp, y, yp, m, mp] = v1 * v2
    out = np.zeros((dim, dim), dtype=np.complex128)
    for lo in range(0, dim, CHUNK):
        hi = min(lo + CHUNK, dim)
        prod = None
        for k in range(L):
            kp = (k + 1) % L
            blk = Mt2[st[None, :, k], st[lo:hi, None, k],
                      st[None, :, kp], st[lo:hi, None, kp]]
            prod = blk if prod is None else prod @ blk
        out[lo:hi, :] = np.einsum("abmm->ab", prod)
    return out


# ---------------------------------------------------------------------------
# defect (seam) machinery
# ---------------------------------------------------------------------------

_SEAM_CACHE: dict = {}


def _seam_tensors(cat: FusionCategory, flux: int, tau: int):
    """Seam row block S and crossing C for the defect sector; contract-pinned.

    Filled in from the conventions table; see docs/conventions.md.
    """
    raise NotImplementedError  # replaced below once pinned


def _seam_row_matrix(basis: RingBasis) -> np.ndarray:
    raise NotImplementedError


def _seam_translation_matrix(basis: RingBasis) -> np.ndarray:
    raise NotImplementedError


def _seam_mpo(cat, a, basis):
    raise NotImplementedError
