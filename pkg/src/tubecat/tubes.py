"""Ocneanu tube algebra: basis, structure constants, central idempotents.

Tube operators are realized concretely on small fusion-path rings ("probe
lengths"): a wrapping strand of label b is pair-created next to the flux
line, wound once around the ring by braided crossings, and reattached to
the flux line through the internal channel d.  The algebra of these
operators is extracted by least squares and must agree across probe
lengths; the primitive central idempotents follow from the spectral
decomposition of a generic central element.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .category import CategoryError, ConsistencyReport, FusionCategory
from .braiding import BraidSolution

DEFAULT_SEED = 0x5EED


class TubeAlgebraError(CategoryError):
    pass


class RepresentationNotFaithfulError(TubeAlgebraError):
    pass


class SemisimplicityError(TubeAlgebraError):
    pass


class Tube(NamedTuple):
    """Tube basis label (a, b, c, d): c = in-flux, a = out-flux, b = the
    wrapping strand, d = the internal channel on the flux line."""
    a: int
    b: int
    c: int
    d: int


def enumerate_tubes(cat: FusionCategory) -> list[Tube]:
    """All admissible tubes, lexicographic: N[b][a][d] = 1 and N[d][b][c] = 1."""
    n = cat.num_labels
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if cat.N[b, a, d] and cat.N[d, b, c]:
                        out.append(Tube(a, b, c, d))
    return out


# ---------------------------------------------------------------------------
# decorated fusion-path spaces and moves
# ---------------------------------------------------------------------------

class PathSpace:
    """States of a cyclic fusion path absorbing the given object sequence.

    A state assigns the running value v_i reached after absorbing
    objects[i]; admissibility is N[v_{i-1}, objects[i], v_i] = 1 cyclically.
    """

    def __init__(self, cat: FusionCategory, objects):
        self.cat = cat
        self.objects = tuple(objects)
        n = cat.num_labels
        N = cat.N
        m = len(self.objects)
        states = []

        def rec(p):
            if len(p) == m:
                if N[p[-1], self.objects[0], p[0]]:
                    states.append(tuple(p))
                return
            for v in range(n):
                if not p or N[p[-1], self.objects[len(p)], v]:
                    rec(p + [v])

        rec([])
        states.sort()
        self.states = states
        self.index = {s: i for i, s in enumerate(states)}
        self.dim = len(states)


def swap_move(sp: PathSpace, i: int, braid: BraidSolution, inverse=False):
    """Move objects[i] rightward past objects[i+1] with a braided crossing."""
    cat = sp.cat
    n = cat.num_labels
    m = len(sp.objects)
    j = (i + 1) % m
    new_objects = list(sp.objects)
    new_objects[i], new_objects[j] = new_objects[j], new_objects[i]
    tgt = PathSpace(cat, new_objects)
    M = np.zeros((tgt.dim, sp.dim), dtype=np.complex128)
    mover, crossed = sp.objects[i], sp.objects[j]
    for s in sp.states:
        v = s[(i - 1) % m]
        vt = s[i]
        wt = s[j]
        for w in range(n):
            tot = 0j
            for g in range(n):
                f1 = cat.f(v, mover, crossed, wt, vt, g)
                if not f1:
                    continue
                r = braid.r(crossed, mover, g) if not inverse \
                    else 1.0 / braid.r(mover, crossed, g)
                f2 = cat.f(mover, crossed, v, wt, g, w)
                tot += f1 * r * f2
            if tot:
                ns = list(s)
                ns[i] = w
                ns = tuple(ns)
                if ns in tgt.index:
                    M[tgt.index[ns], sp.index[s]] += tot
    return tgt, M


def create_pair(sp: PathSpace, pos: int, b: int):
    """Insert (b, b) absorptions after slot pos, split off the vacuum."""
    cat = sp.cat
    n = cat.num_labels
    new_objects = sp.objects[:pos + 1] + (b, b) + sp.objects[pos + 1:]
    tgt = PathSpace(cat, new_objects)
    M = np.zeros((tgt.dim, sp.dim), dtype=np.complex128)
    for s in sp.states:
        v = s[pos]
        for rho in range(n):
            amp = cat.f(v, b, b, v, rho, 0)
            if amp:
                ns = s[:pos + 1] + (rho, v) + s[pos + 1:]
                if ns in tgt.index:
                    M[tgt.index[ns], sp.index[s]] += amp
    return tgt, M


def fuse_move(sp: PathSpace, i: int, channel: int):
    """Fuse the consecutive absorptions at slots i, i+1 into one channel."""
    cat = sp.cat
    m = len(sp.objects)
    assert i + 1 < m
    o1, o2 = sp.objects[i], sp.objects[i + 1]
    if not cat.N[o1, o2, channel]:
        raise TubeAlgebraError(f"channel {channel} not in {o1} x {o2}")
    new_objects = sp.objects[:i] + (channel,) + sp.objects[i + 2:]
    tgt = PathSpace(cat, new_objects)
    M = np.zeros((tgt.dim, sp.dim), dtype=np.complex128)
    for s in sp.states:
        v_prev = s[(i - 1) % m]
        u = s[i]
        w = s[i + 1]
        amp = cat.f(o2, o1, v_prev, w, channel, u)
        if amp:
            ns = s[:i] + (w,) + s[i + 2:]
            if ns in tgt.index:
                M[tgt.index[ns], sp.index[s]] += amp
    return tgt, M


def _rotate_values(sp: PathSpace, k: int = 1) -> np.ndarray:
    """Cyclic value shift undoing the anchor drift of a full winding."""
    m = len(sp.objects)
    R = np.zeros((sp.dim, sp.dim))
    for s in sp.states:
        ns = tuple(s[(i - k) % m] for i in range(m))
        if ns in sp.index:
            R[sp.index[ns], sp.index[s]] = 1.0
    return R


def _cycle_slots(sp: PathSpace, k: int):
    """Re-anchor the cyclic path: slot i of the new space is slot i+k of the
    old one (objects and values move together; pure relabeling)."""
    m = len(sp.objects)
    new_objects = tuple(sp.objects[(i + k) % m] for i in range(m))
    tgt = PathSpace(sp.cat, new_objects)
    R = np.zeros((tgt.dim, sp.dim))
    for s in sp.states:
        ns = tuple(s[(i + k) % m] for i in range(m))
        if ns in tgt.index:
            R[tgt.index[ns], sp.index[s]] = 1.0
    return tgt, R


def flux_space(cat: FusionCategory, L: int, flux: int, tau: int = 1) -> PathSpace:
    """Fusion-path ring of L tau-strands with one flux strand."""
    return PathSpace(cat, [tau] * L + [flux])


def build_tube_matrix(cat: FusionCategory, t: Tube, L: int,
                      braid: BraidSolution, tau: int = 1,
                      inverse=False) -> tuple:
    """Concrete tube operator as a matrix flux_space(c) -> flux_space(a).

    The strand b is pair-created just after the flux line, wound once
    around through the L tau strands, and the triple (b, flux, b) is fused
    through the internal channel d down to the out-flux a.
    """
    a, b, c, d = t
    src = flux_space(cat, L, c, tau)
    spc, M = create_pair(src, L, b)      # objects: tau^L, c, b, b
    total = M
    pos = L + 2
    for _ in range(L):
        m = len(spc.objects)
        spc, S = swap_move(spc, pos % m, braid, inverse)
        total = S @ total
        pos = (pos + 1) % m
    # re-anchor so the wound b sits at slot L with (b, c, b) contiguous
    m = len(spc.objects)
    bslot = pos
    spc, R = _cycle_slots(spc, (bslot - L) % m)
    total = R @ total
    if spc.objects[L:L + 3] != (b, c, b):
        raise TubeAlgebraError(f"winding bookkeeping failed: {spc.objects}")
    # fuse (wound-b, c) -> d, then (d, b) -> a
    spc, F1 = fuse_move(spc, L, d)
    total = F1 @ total
    spc, F2 = fuse_move(spc, L, a)
    total = F2 @ total
    tgt = flux_space(cat, L, a, tau)
    if spc.objects != tgt.objects:
        raise TubeAlgebraError(f"final objects off: {spc.objects}")
    return tgt, src, total


# ---------------------------------------------------------------------------
# algebra extraction
# ---------------------------------------------------------------------------

@dataclass
class TubeAlgebra:
    """Structure constants M[s][t][u] with A_s A_t = sum_u M[s,t,u] A_u."""

    cat: FusionCategory
    basis: list
    table: np.ndarray
    unit: np.ndarray                    # coefficients of the two-sided unit
    probe_lengths: tuple
    residual: float
    cross_length_dev: float
    reps: dict = field(repr=False, default_factory=dict)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("s,t,stu->u", x, y, self.table)


def _stacked_rep(cat, tubes, L, braid, tau, inverse, normalizers=None):
    """Block matrix per tube over the direct sum of all flux sectors."""
    n = cat.num_labels
    spaces = [flux_space(cat, L, fx, tau) for fx in range(n)]
    offs = np.cumsum([0] + [s.dim for s in spaces])
    total = offs[-1]
    mats = []
    for t in tubes:
        M = np.zeros((total, total), dtype=np.complex128)
        tgt, src, block = build_tube_matrix(cat, t, L, braid, tau, inverse)
        scale = 1.0 if normalizers is None else normalizers[t]
        M[offs[t.a]:offs[t.a + 1], offs[t.c]:offs[t.c + 1]] = block * scale
        mats.append(M)
    return mats


def tube_structure_constants(cat: FusionCategory, braid: BraidSolution,
                             probe_lengths=(2, 3), tau: int = 1,
                             inverse=False, tol: float = 1e-8,
                             normalizers=None) -> TubeAlgebra:
    """Derive the multiplication table from faithful probe representations."""
    if not probe_lengths:
        raise TubeAlgebraError("need at least one probe length")
    tubes = enumerate_tubes(cat)
    nt = len(tubes)
    tables = []
    units = []
    reps = {}
    for L in probe_lengths:
        mats = _stacked_rep(cat, tubes, L, braid, tau, inverse, normalizers)
        reps[L] = mats
        G = np.stack([m.ravel() for m in mats], axis=1)
        Gpinv = np.linalg.pinv(G, rcond=1e-12)
        table = np.zeros((nt, nt, nt), dtype=np.complex128)
        worst = 0.0
        for i in range(nt):
            for j in range(nt):
                prod = (mats[i] @ mats[j]).ravel()
                coef = Gpinv @ prod
                resid = np.linalg.norm(G @ coef - prod)
                scale = max(np.linalg.norm(prod), 1e-30)
                worst = max(worst, resid / scale if scale > 1e-20 else resid)
                table[i, j] = coef
        unit = Gpinv @ np.eye(mats[0].shape[0]).ravel()
        worst = max(worst, float(np.linalg.norm(G @ unit - np.eye(mats[0].shape[0]).ravel()))
                    / math.sqrt(mats[0].shape[0]))
        tables.append(table)
        units.append(unit)
        if worst > tol:
            raise RepresentationNotFaithfulError(
                f"tube products leave the span at L={L} (residual {worst:.2e})")
    dev = 0.0
    for t2 in tables[1:]:
        dev = max(dev, float(np.abs(t2 - tables[0]).max()))
    if dev > 1e-6:
        raise RepresentationNotFaithfulError(
            f"structure constants disagree across probe lengths ({dev:.2e})")
    alg = TubeAlgebra(cat=cat, basis=tubes, table=tables[0], unit=units[0],
                      probe_lengths=tuple(probe_lengths), residual=worst,
                      cross_length_dev=dev, reps=reps)
    assoc = associativity_residual(alg)
    if assoc > 1e-8:
        raise TubeAlgebraError(f"associativity residual {assoc:.2e}")
    return alg


def associativity_residual(alg: TubeAlgebra) -> float:
    lhs = np.einsum("stx,xuv->stuv", alg.table, alg.table)
    rhs = np.einsum("tux,sxv->stuv", alg.table, alg.table)
    return float(np.abs(lhs - rhs).max())


def unit_residual(alg: TubeAlgebra) -> float:
    worst = 0.0
    nt = len(alg.basis)
    for i in range(nt):
        e = np.zeros(nt)
        e[i] = 1.0
        left = alg.multiply(alg.unit, e)
        right = alg.multiply(e, alg.unit)
        worst = max(worst, float(np.abs(left - e).max()),
                    float(np.abs(right - e).max()))
    return worst


@dataclass
class Idempotent:
    """Primitive central idempotent with sector metadata."""

    coefficients: np.ndarray
    flux: tuple                 # boundary labels it is supported on
    dimension: int              # block dimension in the regular representation
    sector: str = ""
    spin: float | None = None
    warning: str = ""


def central_idempotents(alg: TubeAlgebra, tol: float = 1e-8,
                        seed: int = DEFAULT_SEED) -> list[Idempotent]:
    """Constructive primitive central idempotents.

    Center from the nullspace of all commutators, spectral projectors of a
    fixed-seed generic central element, block dimensions from the rank of
    the regular action.
    """
    nt = len(alg.basis)
    T = alg.table
    # commutator map rows: x -> x A_t - A_t x for every t
    rows = []
    for t in range(nt):
        Lt = T[:, t, :]            # (x A_t)_u = sum_s x_s T[s,t,u]
        Rt = T[t, :, :]            # (A_t x)_u = sum_s x_s T[t,s,u]
        rows.append((Lt - Rt).T)
    A = np.vstack(rows)
    _, sv, vt = np.linalg.svd(A)
    ncenter = int(np.sum(sv < 1e-10 * max(sv[0], 1.0)))
    if ncenter == 0:
        raise SemisimplicityError("trivial center")
    center = vt[-ncenter:].conj()

    rng = np.random.default_rng(seed)
    for attempt in range(8):
        coeffs = rng.normal(size=ncenter) + 1j * rng.normal(size=ncenter)
        z = coeffs @ center
        # regular action of z restricted to the center
        zc = np.stack([alg.multiply(z, c) for c in center], axis=0)
        # zc rows are z*c_j expressed over tubes; express over center basis
        sol, res, *_ = np.linalg.lstsq(center.T, zc.T, rcond=None)
        rho = sol.T                       # (ncenter, ncenter): z . c_j = sum rho[j,k] c_k
        w, V = np.linalg.eig(rho.T)
        gaps = np.abs(w[:, None] - w[None, :]) + np.eye(len(w))
        if gaps.min() > 1e-6:
            break
    else:
        raise SemisimplicityError("no generic central element found")

    idems = []
    for k in range(ncenter):
        vec = V[:, k] @ center            # candidate eigenvector in tube coords
        sq = alg.multiply(vec, vec)
        # normalize: vec*vec = kappa*vec
        num = np.vdot(vec, sq)
        den = np.vdot(vec, vec)
        kappa = num / den
        if abs(kappa) < 1e-12:
            raise SemisimplicityError("nilpotent central eigenvector")
        e = vec / kappa
        resid = np.abs(alg.multiply(e, e) - e).max()
        if resid > tol:
            raise SemisimplicityError(f"idempotent normalization failed ({resid:.2e})")
        reg = np.einsum("s,stu->tu", e, alg.table).T
        dim2 = np.linalg.matrix_rank(reg, tol=1e-8)
        dim = int(round(math.sqrt(dim2)))
        flux = tuple(sorted({alg.basis[i].a for i in range(nt) if abs(e[i]) > 1e-8}))
        idems.append(Idempotent(coefficients=e, flux=flux, dimension=dim))
    idems.sort(key=lambda p: (p.flux, p.dimension,
                              tuple(np.round(np.abs(p.coefficients), 6))))
    return idems


def idempotent_checks(alg: TubeAlgebra, idems: list[Idempotent]) -> ConsistencyReport:
    """Orthogonality, centrality and resolution of the identity."""
    worst = 0.0
    nt = len(alg.basis)
    for i, p in enumerate(idems):
        for j, q in enumerate(idems):
            prod = alg.multiply(p.coefficients, q.coefficients)
            want = p.coefficients if i == j else np.zeros(nt)
            worst = max(worst, float(np.abs(prod - want).max()))
        for t in range(nt):
            e = np.zeros(nt)
            e[t] = 1.0
            comm = alg.multiply(p.coefficients, e) - alg.multiply(e, p.coefficients)
            worst = max(worst, float(np.abs(comm).max()))
    total = sum(p.coefficients for p in idems)
    worst = max(worst, float(np.abs(total - alg.unit).max()))
    return ConsistencyReport("tube-idempotents", worst, len(idems), 1e-8)


def conjugate_transpose_witness(alg: TubeAlgebra, L: int | None = None) -> float:
    """Smallest relative least-squares distance of any dagger'd tube matrix
    from the span of the tube matrices; > 0 witnesses the non-C* property."""
    L = L or alg.probe_lengths[-1]
    mats = alg.reps[L]
    G = np.stack([m.ravel() for m in mats], axis=1)
    worst_min = np.inf
    for m in mats:
        target = m.conj().T.ravel()
        coef, *_ = np.linalg.lstsq(G, target, rcond=None)
        resid = np.linalg.norm(G @ coef - target) / max(np.linalg.norm(target), 1e-30)
        worst_min = min(worst_min, resid)
    # report the largest deviation among tubes instead of the smallest
    worst_max = 0.0
    for m in mats:
        target = m.conj().T.ravel()
        coef, *_ = np.linalg.lstsq(G, target, rcond=None)
        resid = np.linalg.norm(G @ coef - target) / max(np.linalg.norm(target), 1e-30)
        worst_max = max(worst_max, resid)
    return worst_max


def classify_sectors(idems: list[Idempotent], spins: dict,
                     cat: FusionCategory, alg: TubeAlgebra = None) -> list[Idempotent]:
    """Attach doubled-theory sector names and spins.

    Sectors (p, qbar) are matched by flux support and block dimension; the
    conjugate flux-f pairs are distinguished by the Dehn-rotation phase:
    the coefficient on the once-twisted tube (b != 0, d = 0) relative to
    the untwisted one (b = 0) equals exp(-2 pi i h) for sector spin h.
    """
    n = cat.num_labels
    names = {}
    for p in range(n):
        for q in range(n):
            names[(p, q)] = f"{cat.labels[p]}-{cat.labels[q]}bar"
    out = []
    used = set()
    for idem in idems:
        cands = []
        for (p, q) in names:
            support = tuple(sorted({c for c in range(n) if cat.N[p, q, c]}))
            if support == idem.flux and (p, q) not in used:
                cands.append((p, q))
        assigned = None
        warning = ""
        if len(cands) == 1:
            assigned = cands[0]
        elif len(cands) > 1 and alg is not None:
            assigned = _match_by_dehn_phase(idem, cands, spins, alg)
            if assigned is None:
                warning = "unresolved-sector"
        elif len(cands) > 1:
            warning = "unresolved-sector"
        if assigned is not None:
            used.add(assigned)
            idem.sector = names[assigned]
            idem.spin = spins.get(assigned)
        else:
            idem.sector = "?"
            idem.warning = warning or "unresolved-sector"
        out.append(idem)
    return out


def _match_by_dehn_phase(idem, cands, spins, alg):
    coeffs = idem.coefficients
    untwisted = None
    twisted = None
    for i, t in enumerate(alg.basis):
        if abs(coeffs[i]) < 1e-10 or t.a != t.c:
            continue
        if t.b == 0:
            untwisted = coeffs[i]
        elif t.d == 0:
            twisted = coeffs[i]
    if untwisted is None or twisted is None or abs(untwisted) < 1e-12:
        return None
    h_measured = -np.angle(twisted / untwisted) / (2 * math.pi)
    best, bestd = None, 1e9
    for cand in cands:
        h = spins.get(cand)
        if h is None:
            continue
        dd = abs((h_measured - h + 0.5) % 1.0 - 0.5)
        if dd < bestd:
            bestd, best = dd, cand
    return best if bestd < 1e-6 else None


def serialize_idempotents(idems: list[Idempotent], alg: TubeAlgebra) -> list:
    out = []
    for p in idems:
        out.append({
            "sector": p.sector,
            "flux": list(p.flux),
            "dim": p.dimension,
            "spin": p.spin,
            "coeffs": [{"tube": list(alg.basis[i]),
                        "re": float(f"{p.coefficients[i].real:.17g}"),
                        "im": float(f"{p.coefficients[i].imag:.17g}")}
                       for i in range(len(alg.basis))
                       if abs(p.coefficients[i]) > 1e-12],
        })
    return out
