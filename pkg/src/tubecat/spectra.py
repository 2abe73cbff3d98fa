"""Non-Hermitian eigensolving and conformal-data extraction."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .category import CategoryError
from .cylinder import RingOperator

DENSE_LIMIT = 6000


class SpectraError(CategoryError):
    pass


@dataclass
class EigenPair:
    value: complex
    vector: np.ndarray
    residual: float


@dataclass
class SpectrumRecord:
    delta: float                # anchored scaling dimension
    gap: float                  # dimension above the reference ground state
    spin: float                 # conformal spin mod L/2
    sector: str
    weight_max: float
    weights: dict
    value: complex
    flagged: bool = False


@dataclass
class CalibrationResult:
    velocity: float
    free_energy: float
    c_eff: float
    fit_residual: float
    refined: bool


def eigendecompose(op, n_states: int | None = None) -> list[EigenPair]:
    """Largest-|lambda| eigenpairs of a (generally non-Hermitian) operator."""
    mat = op.matrix if isinstance(op, RingOperator) else np.asarray(op)
    dim = mat.shape[0]
    if mat.shape[0] != mat.shape[1]:
        raise SpectraError("operator is not square")
    n = dim if n_states is None else min(n_states, dim)
    if dim <= DENSE_LIMIT:
        vals, vecs = scipy.linalg.eig(mat)
    else:
        k = min(n, dim - 2)
        vals, vecs = scipy.sparse.linalg.eigs(mat, k=k, which="LM")
    order = np.argsort(-np.abs(vals))[:n]
    out = []
    norm = np.linalg.norm(mat, ord=np.inf)
    for i in order:
        v = vecs[:, i]
        res = float(np.linalg.norm(mat @ v - vals[i] * v)
                    / max(np.linalg.norm(v) * max(norm, 1.0), 1e-300))
        out.append(EigenPair(value=complex(vals[i]), vector=v, residual=res))
    bad = max(p.residual for p in out)
    if bad > 1e-8:
        raise SpectraError(f"eigensolver residual {bad:.2e}")
    return out


def calibrate(lambda0: dict, velocity: float = 1.0,
              refined_velocity: float | None = None) -> CalibrationResult:
    """Fit log lambda0(L) = -f L + pi v c_eff / (6 L).

    With velocity fixed to 1 the fitted coefficient is v_true * c_eff; in
    refined mode the measured descendant velocity divides it out.
    """
    if len(lambda0) < 3:
        raise SpectraError("need at least three sizes to calibrate")
    Ls = np.array(sorted(lambda0), dtype=float)
    y = np.array([math.log(abs(lambda0[int(L)])) for L in Ls])
    A = np.stack([-Ls, 1.0 / Ls], axis=1)
    coef, res, *_ = np.linalg.lstsq(A, y, rcond=None)
    f, kappa = coef
    fit_residual = float(np.abs(A @ coef - y).max())
    v = refined_velocity if refined_velocity else velocity
    c_eff = 6.0 * kappa / (math.pi * v)
    return CalibrationResult(velocity=v, free_energy=float(f), c_eff=float(c_eff),
                             fit_residual=fit_residual,
                             refined=refined_velocity is not None)


def measure_velocity(eigs: list[EigenPair], translation: RingOperator,
                     L: int, cells: int | None = None) -> float:
    """Descendant calibration: the first spin-(+-1) level above the ground
    state sits one unit of scaling dimension higher; its measured gap is
    the lattice velocity (in the units of the supplied transfer matrix)."""
    cells = cells or (L // 2)
    eigs = _simultaneous_diagonalize(eigs, translation)
    lam0 = abs(eigs[0].value)
    for p in eigs[1:]:
        s = translation_phase(p.vector, translation, cells)
        if abs(abs(s) - 1.0) < 0.25:
            gap = (L / (2 * math.pi)) * math.log(lam0 / abs(p.value))
            return float(gap)
    raise SpectraError("no descendant candidate found for velocity calibration")


def translation_phase(vector: np.ndarray, translation: RingOperator,
                      cells: int) -> float:
    """Momentum of an eigenvector in units of cells: phase*cells/(2 pi)."""
    tv = translation.matrix @ vector
    i = int(np.argmax(np.abs(vector)))
    if abs(vector[i]) < 1e-300:
        return 0.0
    ratio = tv[i] / vector[i]
    phase = math.atan2(ratio.imag, ratio.real)
    s = phase * cells / (2 * math.pi)
    return float(s)


def _simultaneous_diagonalize(eigs, translation, tol=1e-9):
    """Resolve degenerate eigenvalue clusters against the translation."""
    out = list(eigs)
    i = 0
    while i < len(out):
        j = i + 1
        cluster = [i]
        while j < len(out) and abs(abs(out[j].value) - abs(out[i].value)) \
                <= tol * max(abs(out[i].value), 1e-300) \
                and abs(out[j].value - out[i].value) <= 1e-6 * max(abs(out[i].value), 1e-300):
            cluster.append(j)
            j += 1
        if len(cluster) > 1:
            V = np.stack([out[k].vector for k in cluster], axis=1)
            P = np.linalg.pinv(V)
            tmat = P @ (translation.matrix @ V)
            w, U = np.linalg.eig(tmat)
            newV = V @ U
            for idx, k in enumerate(cluster):
                vec = newV[:, idx]
                out[k] = EigenPair(value=out[k].value,
                                   vector=vec / np.linalg.norm(vec),
                                   residual=out[k].residual)
        i = j
    return out


def project_sectors(eigs: list[EigenPair], projectors: dict) -> list[dict]:
    """Squared-overlap fractions of each eigenvector on each projector."""
    out = []
    for p in eigs:
        weights = {}
        for name, proj in projectors.items():
            w = np.linalg.norm(proj.matrix @ p.vector) ** 2
            weights[name] = float(w)
        total = sum(weights.values())
        if total <= 0:
            raise SpectraError("eigenvector annihilated by all projectors")
        weights = {k: v / total for k, v in weights.items()}
        out.append(weights)
    return out


def extract_spectrum(eigs: list[EigenPair], translation: RingOperator,
                     L: int, velocity: float, delta0: float = -0.4,
                     ref_log_lambda0: float | None = None,
                     projectors: dict | None = None,
                     rows_per_step: float = 1.0) -> list[SpectrumRecord]:
    """Scaling dimensions, conformal spins and sector weights.

    delta_i = delta0 + (L / (2 pi v)) * (log lambda_ref - log |lambda_i|),
    with lambda_ref the global ground state (trivial-flux leading value).
    """
    eigs = _simultaneous_diagonalize(eigs, translation)
    ref = ref_log_lambda0 if ref_log_lambda0 is not None \
        else math.log(abs(eigs[0].value))
    cells = L // 2
    weights_list = project_sectors(eigs, projectors) if projectors else None
    records = []
    for k, p in enumerate(eigs):
        gap = (L / (2 * math.pi * velocity)) * (ref - math.log(abs(p.value))) \
            / rows_per_step
        s = translation_phase(p.vector, translation, cells)
        s = ((s + cells / 2) % cells) - cells / 2
        if weights_list:
            w = weights_list[k]
            sector = max(w, key=w.get)
            wmax = w[sector]
            flagged = wmax < 0.99
        else:
            w, sector, wmax, flagged = {}, "", 1.0, False
        records.append(SpectrumRecord(delta=delta0 + gap, gap=gap, spin=s,
                                      sector=sector, weight_max=wmax,
                                      weights=w, value=p.value,
                                      flagged=flagged))
    records.sort(key=lambda r: (round(r.delta, 9), round(r.spin, 6), r.sector))
    return records
