"""Hexagon equations, topological twists and the modular S-matrix.

The hexagon system couples braid coefficients R[a][b][c] (one scalar per
admissible fusion a x b -> c) to the F table.  For multiplicity-free
categories it is a small polynomial system; it is solved by damped
Gauss-Newton iteration from a lattice of phase seeds, all distinct
solutions are kept, and every returned solution is re-verified against the
equations afterwards.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .category import CategoryError, ConsistencyReport, FusionCategory

TWO_PI = 2.0 * math.pi


class BraidingError(CategoryError):
    """Base class for braiding failures."""


class NotBraidedError(BraidingError):
    """The hexagon system has no solution at the requested tolerance."""


class HexagonSolverError(BraidingError):
    """Newton iteration failed to converge from every seed."""


class InconsistentBraidingError(BraidingError):
    """Derived twists are not phases, so the R data cannot be a braiding."""


class NotModularError(BraidingError):
    """The S-matrix is singular."""


@dataclass
class BraidSolution:
    """One solution of both hexagon identities."""

    values: dict            # (a, b, c) -> complex, admissible triples only
    residual: float
    tag: str = ""

    def r(self, a: int, b: int, c: int) -> complex:
        if a == 0 or b == 0:
            return 1.0 + 0.0j
        return self.values[(a, b, c)]


@dataclass
class TwistData:
    theta: np.ndarray       # per-label twist phases
    h: np.ndarray           # spins in (-1/2, 1/2], theta = exp(2 pi i h)


@dataclass
class SMatrix:
    matrix: np.ndarray
    cond: float


def _nontrivial_triples(cat: FusionCategory) -> list:
    n = cat.num_labels
    return [(a, b, c) for a in range(1, n) for b in range(1, n)
            for c in range(n) if cat.N[a, b, c]]


def _hexagon_instances(cat: FusionCategory) -> list:
    """Index data of every admissible hexagon identity (both chiralities).

    Each instance is a tuple (a, b, c, d, e, g, f_list) entering
        R^{ca}_e [F^{acb}_d]_{eg} R^{cb}_g
            = sum_f [F^{cab}_d]_{ef} R^{cf}_d [F^{abc}_d]_{fg}.
    """
    n = cat.num_labels
    N = cat.N
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    for e in range(n):
                        if not (N[a, c, e] and N[e, b, d]):
                            continue
                        for g in range(n):
                            if not (N[c, b, g] and N[a, g, d]):
                                continue
                            fs = [f for f in range(n)
                                  if N[a, b, f] and N[c, f, d]]
                            out.append((a, b, c, d, e, g, fs))
    return out


class _HexagonSystem:
    """Vectorized residual of both hexagon identities over the R unknowns."""

    def __init__(self, cat: FusionCategory):
        self.cat = cat
        self.triples = _nontrivial_triples(cat)
        self.index = {t: i for i, t in enumerate(self.triples)}
        self.n_unknowns = len(self.triples)
        inst = _hexagon_instances(cat)

        def r_idx(a, b, c):
            # -1 encodes a frozen unit value R = 1
            return self.index.get((a, b, c), -1) if (a != 0 and b != 0) else -1

        rows = []
        for (a, b, c, d, e, g, fs) in inst:
            f1 = cat.f(a, c, b, d, e, g)
            terms = [(cat.f(c, a, b, d, e, f) * cat.f(a, b, c, d, f, g),
                      r_idx(c, f, d)) for f in fs]
            rows.append((r_idx(c, a, e), r_idx(c, b, g), f1, terms))
        self.rows = rows

    def residual(self, x: np.ndarray) -> np.ndarray:
        """Stacked residuals of the R-hexagon and the R^{-1}-hexagon."""
        xr = np.concatenate([x, [1.0 + 0.0j]])   # index -1 = frozen unit
        xi = np.concatenate([1.0 / x, [1.0 + 0.0j]])
        out = np.empty(2 * len(self.rows), dtype=np.complex128)
        for i, (ie, ig, f1, terms) in enumerate(self.rows):
            s = sum(coef * xr[j] for coef, j in terms)
            out[i] = xr[ie] * f1 * xr[ig] - s
            s = sum(coef * xi[j] for coef, j in terms)
            out[len(self.rows) + i] = xi[ie] * f1 * xi[ig] - s
        return out

    def newton(self, x0: np.ndarray, max_iter: int = 60, tol: float = 1e-12):
        x = x0.astype(np.complex128)
        r = self.residual(x)
        cost = np.linalg.norm(r)
        for _ in range(max_iter):
            if cost < tol:
                return x, True
            jac = np.empty((len(r), self.n_unknowns), dtype=np.complex128)
            h = 1e-7
            for j in range(self.n_unknowns):
                xp = x.copy()
                xp[j] += h
                jac[:, j] = (self.residual(xp) - r) / h
            step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
            lam = 1.0
            for _ in range(30):
                xn = x + lam * step
                if np.any(np.abs(xn) < 1e-12):
                    lam *= 0.5
                    continue
                rn = self.residual(xn)
                cn = np.linalg.norm(rn)
                if cn < cost:
                    x, r, cost = xn, rn, cn
                    break
                lam *= 0.5
            else:
                return x, cost < tol
        return x, cost < tol


def solve_hexagon(cat: FusionCategory, tol: float = 1e-10,
                  seeds_per_unknown: int = 20, max_seeds: int = 4000,
                  rng_seed: int = 0x5EED) -> list[BraidSolution]:
    """All solutions of both hexagon identities on top of cat's F table.

    Seeding is a full phase lattice with seeds_per_unknown points per
    unknown when that stays below max_seeds, otherwise max_seeds random
    phase vectors from a fixed-seed generator.  Solutions closer than 1e-6
    are merged; each survivor is re-verified independently of the solver.
    """
    sys_ = _HexagonSystem(cat)
    nu = sys_.n_unknowns
    if nu == 0:
        return [BraidSolution(values={}, residual=0.0, tag="trivial")]

    phases = np.exp(2j * np.pi * np.arange(seeds_per_unknown) / seeds_per_unknown)
    if seeds_per_unknown ** nu <= max_seeds:
        grids = np.meshgrid(*([phases] * nu), indexing="ij")
        seeds = np.stack([g.ravel() for g in grids], axis=-1)
    else:
        rng = np.random.default_rng(rng_seed)
        seeds = np.exp(2j * np.pi * rng.random((max_seeds, nu)))

    found = []
    any_converged = False
    for seed in seeds:
        x, ok = sys_.newton(seed)
        if not ok:
            continue
        any_converged = True
        if np.linalg.norm(sys_.residual(x), ord=np.inf) > tol:
            continue
        for prev in found:
            if np.max(np.abs(prev - x)) < 1e-6:
                break
        else:
            found.append(x)
    if not found:
        if any_converged:
            raise NotBraidedError(
                "hexagon equations admit no solution at the requested tolerance")
        raise HexagonSolverError("Newton iteration diverged from every seed")

    found.sort(key=lambda x: tuple(np.round(x, 8).view(float)))
    sols = []
    for i, x in enumerate(found):
        vals = {t: complex(x[j]) for j, t in enumerate(sys_.triples)}
        sol = BraidSolution(values=vals, residual=0.0, tag=f"branch-{i}")
        rep = hexagon_residual(cat, sol)
        sol.residual = rep.max_residual
        if not rep.passed and rep.max_residual > tol:
            raise HexagonSolverError(f"re-verification failed: {rep}")
        sols.append(sol)
    return sols


def hexagon_residual(cat: FusionCategory, sol: BraidSolution,
                     tol: float = 1e-10) -> ConsistencyReport:
    """Direct evaluation of both hexagon identities for a given R set."""
    inst = _hexagon_instances(cat)
    max_res = 0.0
    for (a, b, c, d, e, g, fs) in inst:
        f1 = cat.f(a, c, b, d, e, g)
        lhs = sol.r(c, a, e) * f1 * sol.r(c, b, g)
        rhs = sum(cat.f(c, a, b, d, e, f) * sol.r(c, f, d)
                  * cat.f(a, b, c, d, f, g) for f in fs)
        max_res = max(max_res, abs(lhs - rhs))
        lhs = f1 / (sol.r(a, c, e) * sol.r(b, c, g))
        rhs = sum(cat.f(c, a, b, d, e, f) * cat.f(a, b, c, d, f, g)
                  / sol.r(f, c, d) for f in fs)
        max_res = max(max_res, abs(lhs - rhs))
    return ConsistencyReport("hexagon", max_res, 2 * len(inst), tol)


def topological_twists(cat: FusionCategory, sol: BraidSolution) -> TwistData:
    """theta_a = sum_c (d_c / d_a) R[a][a][c], h_a its phase over 2 pi."""
    n = cat.num_labels
    theta = np.ones(n, dtype=np.complex128)
    for a in range(1, n):
        theta[a] = sum(cat.dims[c] / cat.dims[a] * sol.r(a, a, c)
                       for c in range(n) if cat.N[a, a, c])
    if np.any(np.abs(np.abs(theta) - 1.0) > 1e-6):
        raise InconsistentBraidingError(
            f"twists are not phases: |theta| = {np.abs(theta)}")
    h = np.angle(theta) / TWO_PI
    h = np.where(h <= -0.5 + 1e-15, h + 1.0, h)
    return TwistData(theta=theta, h=h)


def reduce_spin(x: float) -> float:
    """Reduce mod 1 into the window (-1/2, 1/2]."""
    y = x - math.floor(x + 0.5)
    if y <= -0.5:
        y += 1.0
    return y


def doubled_spins(t: TwistData) -> dict:
    """Spin table of the doubled theory: (a, b) -> h_a - h_b mod 1."""
    n = len(t.h)
    return {(a, b): reduce_spin(float(t.h[a] - t.h[b]))
            for a in range(n) for b in range(n)}


def modular_s_matrix(cat: FusionCategory, sol: BraidSolution,
                     cond_limit: float = 1e10) -> SMatrix:
    """Unnormalized S with S_ab = sum_c N_ab^c (theta_c / theta_a theta_b) d_c."""
    t = topological_twists(cat, sol)
    n = cat.num_labels
    S = np.zeros((n, n), dtype=np.complex128)
    for a in range(n):
        for b in range(n):
            S[a, b] = sum(t.theta[c] / (t.theta[a] * t.theta[b]) * cat.dims[c]
                          for c in range(n) if cat.N[a, b, c])
    cond = float(np.linalg.cond(S))
    if not np.isfinite(cond) or cond > cond_limit:
        raise NotModularError(f"S-matrix is numerically singular (cond={cond:.2e})")
    return SMatrix(matrix=S, cond=cond)


def ribbon_residual(cat: FusionCategory, sol: BraidSolution) -> float:
    """max |theta_c - theta_a theta_b R^{ab}_c R^{ba}_c| over admissible triples."""
    t = topological_twists(cat, sol)
    n = cat.num_labels
    worst = 0.0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if cat.N[a, b, c]:
                    val = t.theta[a] * t.theta[b] * sol.r(a, b, c) * sol.r(b, a, c)
                    worst = max(worst, abs(val - t.theta[c]))
    return worst


def branch_with_twist(cat: FusionCategory, sols: list[BraidSolution],
                      label: int, h_target: float, tol: float = 1e-6) -> BraidSolution:
    """Pick the solution whose twist of `label` has spin h_target."""
    for sol in sols:
        t = topological_twists(cat, sol)
        if abs(reduce_spin(t.h[label] - h_target)) < tol:
            return sol
    raise BraidingError(f"no hexagon solution with h[{label}] = {h_target}")


def serialize_r(sol: BraidSolution) -> dict:
    """JSON-ready form, same style as the F table."""
    return {"R": [{"idx": list(k), "re": float(f"{v.real:.17g}"),
                   "im": float(f"{v.imag:.17g}")}
                  for k, v in sorted(sol.values.items())],
            "tag": sol.tag, "residual": sol.residual}


def parse_r(data: dict) -> BraidSolution:
    vals = {tuple(ent["idx"]): complex(ent["re"], ent["im"]) for ent in data["R"]}
    return BraidSolution(values=vals, residual=data.get("residual", float("nan")),
                         tag=data.get("tag", ""))
