"""Fusion category data for su(2)_k at arbitrary deformation roots.

A category is described by its label set, fusion multiplicities N[a][b][c]
in {0, 1}, a sparse table of recoupling (F / quantum 6j) coefficients and
the quantum dimensions.  Besides the unitary solutions (root index p = 1)
all Galois-conjugated solutions p > 1, gcd(p, k+2) = 1 are supported; those
have indefinite quantum dimensions and complex F entries but satisfy the
same pentagon and involution identities.

Index convention used throughout the package: F[a][b][c][d][e][f] is the
coefficient relating the two bracketings of a x b x c -> d, where e is the
intermediate charge of (a, b) and f the intermediate charge of (b, c).  An
entry is admissible only if all four vertices (a,b,e), (e,c,d), (b,c,f),
(a,f,d) are allowed fusions.  See docs/conventions.md.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

TOL_DEFAULT = 1e-10

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0
GOLDEN_CONJ = (1.0 - math.sqrt(5.0)) / 2.0


class CategoryError(ValueError):
    """Invalid category parameters or malformed category data."""


class DegenerateCategoryError(CategoryError):
    """A structure constant that must be invertible vanished."""


@dataclass(frozen=True)
class QParams:
    """Deformation data: level k and root index p, for q = exp(2*pi*i*p/(k+2)).

    p runs over 1 .. (k+2)/2 with gcd(p, k+2) = 1; p = 1 is the unitary
    theory, larger p are its Galois conjugates.  k = 0 is allowed and gives
    the trivial one-label category.
    """

    k: int
    p: int = 1

    def __post_init__(self):
        if self.k < 0:
            raise CategoryError(f"level must be >= 0, got k={self.k}")
        if not 1 <= self.p <= (self.k + 2) / 2:
            raise CategoryError(f"root index p={self.p} outside 1..(k+2)/2 for k={self.k}")
        if math.gcd(self.p, self.k + 2) != 1:
            raise CategoryError(f"p={self.p} shares a factor with k+2={self.k + 2}")

    @property
    def angle(self) -> float:
        """pi * p / (k+2), the argument entering the q-integers."""
        return math.pi * self.p / (self.k + 2)

    @staticmethod
    def allowed_roots(k: int) -> list[int]:
        return [p for p in range(1, (k + 2) // 2 + 1) if math.gcd(p, k + 2) == 1]


@dataclass
class ConsistencyReport:
    """Outcome of a numerical identity check over a category or solution."""

    check: str
    max_residual: float
    num_checked: int
    tol: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (f"{self.check}: {status} (max residual {self.max_residual:.3e} "
                f"over {self.num_checked} identities, tol {self.tol:.1e})")


class FusionCategory:
    """Immutable container for one fusion category's numerical data.

    Attributes
    ----------
    labels : tuple of str
        Display names; index 0 is always the monoidal unit.
    N : ndarray, shape (n, n, n), int8
        Fusion multiplicities, multiplicity-free.
    F : dict mapping (a,b,c,d,e,f) -> complex
        Sparse recoupling table; absent keys are zero.
    dims : ndarray, complex
        Quantum dimensions (may be negative / complex for conjugated roots).
    provenance : dict
        How the data was built (k/p or a builtin tag).
    """

    def __init__(self, labels, N, F, dims, provenance):
        self.labels = tuple(labels)
        self.N = np.asarray(N, dtype=np.int8)
        self.N.setflags(write=False)
        self.F = dict(F)
        self.dims = np.asarray(dims, dtype=np.complex128)
        self.dims.setflags(write=False)
        self.provenance = dict(provenance)
        self._validate()
        self._dense_F = None
        self._sqrt_dims = None

    # -- basic structure ---------------------------------------------------

    @property
    def num_labels(self) -> int:
        return len(self.labels)

    def label_index(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= int(name) < self.num_labels:
                raise CategoryError(f"label index {name} out of range")
            return int(name)
        try:
            return self.labels.index(str(name))
        except ValueError:
            raise CategoryError(f"unknown label {name!r}; have {self.labels}") from None

    def f(self, a, b, c, d, e, f) -> complex:
        return self.F.get((a, b, c, d, e, f), 0.0 + 0.0j)

    def dense_f(self) -> np.ndarray:
        """Dense (n,n,n,n,n,n) view of the F table (cached, read-only)."""
        if self._dense_F is None:
            n = self.num_labels
            arr = np.zeros((n,) * 6, dtype=np.complex128)
            for idx, val in self.F.items():
                arr[idx] = val
            arr.setflags(write=False)
            self._dense_F = arr
        return self._dense_F

    def sqrt_dims(self) -> np.ndarray:
        """Principal square roots of the quantum dimensions (fixed branch)."""
        if self._sqrt_dims is None:
            s = np.sqrt(self.dims.astype(np.complex128))
            s.setflags(write=False)
            self._sqrt_dims = s
        return self._sqrt_dims

    def admissible(self, a: int, b: int, c: int) -> bool:
        return bool(self.N[a, b, c])

    def _validate(self):
        n = self.num_labels
        if self.N.shape != (n, n, n):
            raise CategoryError("fusion tensor shape does not match label count")
        if np.any((self.N != 0) & (self.N != 1)):
            raise CategoryError("fusion multiplicities must lie in {0, 1}")
        eye = np.eye(n, dtype=np.int8)
        if not (np.array_equal(self.N[0], eye) and np.array_equal(self.N[:, 0, :], eye)):
            raise CategoryError("label 0 does not act as the monoidal unit")
        for a in range(n):
            if self.N[a, a, 0] != 1:
                raise CategoryError(
                    f"label {self.labels[a]!r} is not self-dual; only self-dual "
                    "categories are supported")

    def __repr__(self):
        return f"FusionCategory(labels={self.labels}, provenance={self.provenance})"


# ---------------------------------------------------------------------------
# q-deformed 6j evaluation (twice-spin integer arithmetic internally)
# ---------------------------------------------------------------------------

def _qnumbers(k: int, p: int, up_to: int) -> np.ndarray:
    theta = math.pi * p / (k + 2)
    sin1 = math.sin(theta)
    return np.array([math.sin(theta * n) / sin1 for n in range(up_to + 1)])


def _qfactorials(qn: np.ndarray) -> np.ndarray:
    out = np.ones_like(qn)
    for n in range(1, len(qn)):
        out[n] = out[n - 1] * qn[n]
    return out


class _Su2kTables:
    """Helper holding q-integer data for one (k, p) while the table is built.

    All square roots are taken coherently: r_m = signs[m] * principal
    sqrt([m]) for each q-integer, and every triangle coefficient is the
    corresponding monomial in the r_m.  This keeps the table inside a single
    gauge for any root index p, where independent per-value branches would
    silently mix gauges of the conjugated solutions.
    """

    def __init__(self, params: QParams, signs=None):
        self.k = params.k
        self.p = params.p
        # q-integers [0 .. k+1]; [k+2] vanishes and never enters a denominator.
        self.qn = _qnumbers(self.k, self.p, self.k + 1)
        self.qf = _qfactorials(self.qn)
        self.r = np.sqrt(self.qn.astype(np.complex128))
        if signs is not None:
            self.r = self.r * np.asarray(signs)

    def triangle_ok(self, a: int, b: int, c: int) -> bool:
        # twice-spin admissibility with the level-k truncation
        return ((a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b
                and a + b + c <= 2 * self.k)

    def _delta_exponents(self, a: int, b: int, c: int) -> np.ndarray:
        """Exponent vector of the triangle coefficient over r_1 .. r_{k+1}."""
        exp = np.zeros(self.k + 2, dtype=np.int64)
        for top in ((-a + b + c) // 2, (a - b + c) // 2, (a + b - c) // 2):
            exp[1:top + 1] += 1
        exp[1:(a + b + c) // 2 + 2] -= 1
        return exp

    def delta(self, a: int, b: int, c: int) -> complex:
        exp = self._delta_exponents(a, b, c)
        val = 1.0 + 0.0j
        for m in range(1, self.k + 2):
            if exp[m]:
                val *= self.r[m] ** int(exp[m])
        return val

    def six_j(self, a: int, b: int, e: int, c: int, d: int, f: int) -> complex:
        """Symmetrized quantum 6j symbol {a b e; c d f} in twice-spins."""
        t1 = (a + b + e) // 2
        t2 = (e + c + d) // 2
        t3 = (b + c + f) // 2
        t4 = (a + f + d) // 2
        q1 = (a + b + c + d) // 2
        q2 = (a + c + e + f) // 2
        q3 = (b + d + e + f) // 2
        total = 0.0
        for z in range(max(t1, t2, t3, t4), min(q1, q2, q3) + 1):
            if z + 1 > self.k + 1:
                # truncated theory: [z+1]! contains the vanishing q-integer
                continue
            num = self.qf[z + 1]
            den = (self.qf[z - t1] * self.qf[z - t2] * self.qf[z - t3]
                   * self.qf[z - t4] * self.qf[q1 - z] * self.qf[q2 - z]
                   * self.qf[q3 - z])
            total += (-1) ** z * num / den
        pref = (self.delta(a, b, e) * self.delta(e, c, d)
                * self.delta(b, c, f) * self.delta(a, f, d))
        return pref * total

    def f_entry(self, a, b, c, d, e, f) -> complex:
        """Recoupling coefficient [F^{abc}_d]_{ef} in twice-spins."""
        phase = (-1) ** ((a + b + c + d) // 2)
        val = phase * self.r[e + 1] * self.r[f + 1] * self.six_j(a, b, e, c, d, f)
        if 0 in (a, b, c):
            # unit-label moves evaluate to exactly 1 in this gauge; snap the
            # ~1e-16 float noise so downstream identities are exact
            if abs(val - 1.0) > 1e-9:
                raise CategoryError(
                    f"unit F-move came out {val} at {(a, b, c, d, e, f)}; "
                    "inconsistent square-root branch assignment")
            return 1.0 + 0.0j
        return val


def build_su2k_category(params: QParams) -> FusionCategory:
    """Construct su(2)_k fusion data at deformation root index p.

    Labels are j = 0, 1/2, ..., k/2.  Fusion follows the level-truncated
    angular-momentum rule; F entries are quantum 6j symbols evaluated at
    q = exp(2*pi*i*p/(k+2)).  The table is not trusted as produced: callers
    should confirm it with verify_pentagon / verify_involution, which is
    done in the test suite for every shipped (k, p).
    """
    k, n = params.k, params.k + 1
    tab = _Su2kTables(params)
    labels = []
    for t in range(n):  # t = twice the spin
        labels.append(str(t // 2) if t % 2 == 0 else f"{t}/2")

    N = np.zeros((n, n, n), dtype=np.int8)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if tab.triangle_ok(a, b, c):
                    N[a, b, c] = 1

    F: dict[tuple, complex] = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    for e in range(n):
                        if not (N[a, b, e] and N[e, c, d]):
                            continue
                        for f in range(n):
                            if not (N[b, c, f] and N[a, f, d]):
                                continue
                            F[(a, b, c, d, e, f)] = tab.f_entry(a, b, c, d, e, f)

    # dims from the table itself (1/F^{aaa}_{a00}); for half-integer labels
    # this can differ from the bare q-integer by the Frobenius-Schur sign,
    # which is a fusion-ring character, so the dimension homomorphism holds
    dims = np.array([1.0 / F[(t, t, t, t, 0, 0)] for t in range(n)],
                    dtype=np.complex128)
    return FusionCategory(labels, N, F, dims,
                          {"kind": "su2k", "k": k, "p": params.p})


# ---------------------------------------------------------------------------
# Fibonacci / Yang-Lee with closed-form entries
# ---------------------------------------------------------------------------

def build_fibonacci(variant: str = "unitary") -> FusionCategory:
    """Two-label category 1, tau with tau x tau = 1 + tau.

    variant="unitary" uses the golden ratio phi, variant="galois" its
    conjugate (1 - sqrt(5))/2, i.e. the Yang-Lee theory.  The nontrivial
    F block is [[1, sqrt(phi)], [sqrt(phi), -1]] / phi with the principal
    branch of sqrt(phi); every unit-label entry is exactly 1.
    """
    if variant not in ("unitary", "galois"):
        raise CategoryError(f"variant must be 'unitary' or 'galois', got {variant!r}")
    phi = GOLDEN if variant == "unitary" else GOLDEN_CONJ
    rt = complex(np.sqrt(complex(phi)))

    N = np.zeros((2, 2, 2), dtype=np.int8)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = N[1, 1, 1] = 1

    F: dict[tuple, complex] = {}
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    for e in range(2):
                        if not (N[a, b, e] and N[e, c, d]):
                            continue
                        for f in range(2):
                            if not (N[b, c, f] and N[a, f, d]):
                                continue
                            F[(a, b, c, d, e, f)] = 1.0 + 0.0j
    block = {(0, 0): 1.0 / phi, (0, 1): rt / phi, (1, 0): rt / phi, (1, 1): -1.0 / phi}
    for (e, f), val in block.items():
        F[(1, 1, 1, 1, e, f)] = complex(val)

    dims = np.array([1.0, phi], dtype=np.complex128)
    return FusionCategory(("1", "tau"), N, F, dims,
                          {"kind": "fibonacci", "variant": variant})


def build_trivial() -> FusionCategory:
    """The one-label category (su(2)_0)."""
    return build_su2k_category(QParams(k=0, p=1))


def integer_subcategory(cat: FusionCategory) -> FusionCategory:
    """Restrict an su(2)_k category to its integer-spin labels.

    For k = 3 the result is the Fibonacci (p=1) or Yang-Lee (p=2) category;
    in that case the closed-form table from build_fibonacci is returned so
    the restricted category is bit-identical to the directly built one
    (fixed gauge choice, see docs/conventions.md).
    """
    if cat.provenance.get("kind") != "su2k":
        raise CategoryError("integer restriction is defined for su2k categories")
    k = cat.provenance["k"]
    keep = [t for t in range(k + 1) if t % 2 == 0]
    idx = {old: new for new, old in enumerate(keep)}

    if k == 3:
        variant = "unitary" if cat.provenance["p"] == 1 else "galois"
        fib = build_fibonacci(variant)
        # safety: the restricted numerical table must agree with the closed
        # form up to the documented off-diagonal sign gauge
        for (a, b, c, d, e, f), val in fib.F.items():
            raw = cat.f(keep[a], keep[b], keep[c], keep[d], keep[e], keep[f])
            sign = -1.0 if e != f and 0 not in (a, b, c) else 1.0
            if abs(raw * sign - val) > 1e-9:
                raise CategoryError("restricted su(2)_3 table does not match the "
                                    "Fibonacci gauge")
        prov = dict(fib.provenance)
        prov["restricted_from"] = {"k": k, "p": cat.provenance["p"]}
        return FusionCategory(fib.labels, fib.N, fib.F, fib.dims, prov)

    labels = [cat.labels[t] for t in keep]
    N = cat.N[np.ix_(keep, keep, keep)]
    F = {}
    for (a, b, c, d, e, f), val in cat.F.items():
        if all(x in idx for x in (a, b, c, d, e, f)):
            F[(idx[a], idx[b], idx[c], idx[d], idx[e], idx[f])] = val
    dims = cat.dims[keep]
    prov = dict(cat.provenance)
    prov["restricted"] = "integer"
    return FusionCategory(labels, N, F, dims, prov)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def fusion_product(cat: FusionCategory, a, b) -> set:
    """Set of labels c with N[a][b][c] = 1."""
    ia, ib = cat.label_index(a), cat.label_index(b)
    return {int(c) for c in np.nonzero(cat.N[ia, ib])[0]}


def quantum_dimension(cat: FusionCategory, a) -> complex:
    """d_a = 1 / F^{aaa}_{a,0,0}; equals 1 for the unit label."""
    ia = cat.label_index(a)
    if ia == 0:
        return 1.0 + 0.0j
    val = cat.f(ia, ia, ia, ia, 0, 0)
    if abs(val) < 1e-14:
        raise DegenerateCategoryError(
            f"F^(aaa)_(a,0,0) vanishes for label {cat.labels[ia]!r}")
    return 1.0 / val


def _join(keys_a, vals_a, jk_a, keys_b, vals_b, jk_b):
    """All pairs (row of a, row of b) with equal join keys, sparse-merge style.

    Returns index arrays (ia, ib) into the two key tables.
    """
    order_a = np.argsort(jk_a, kind="stable")
    order_b = np.argsort(jk_b, kind="stable")
    ja, jb = jk_a[order_a], jk_b[order_b]
    out_a, out_b = [], []
    uniq = np.intersect1d(ja, jb)
    lo_a = np.searchsorted(ja, uniq, side="left")
    hi_a = np.searchsorted(ja, uniq, side="right")
    lo_b = np.searchsorted(jb, uniq, side="left")
    hi_b = np.searchsorted(jb, uniq, side="right")
    for la, ha, lb, hb in zip(lo_a, hi_a, lo_b, hi_b):
        ia = order_a[la:ha]
        ib = order_b[lb:hb]
        out_a.append(np.repeat(ia, len(ib)))
        out_b.append(np.tile(ib, len(ia)))
    if not out_a:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(out_a), np.concatenate(out_b)


def verify_pentagon(cat: FusionCategory, tol: float = TOL_DEFAULT) -> ConsistencyReport:
    """Check the pentagon identity over every admissible index assignment.

    Convention (fixed package-wide):
        F[f,c,d,e,g,l] * F[a,b,l,e,f,k] =
            sum_h F[a,b,c,g,f,h] * F[a,h,d,e,g,k] * F[b,c,d,k,h,l]

    Both sides are assembled sparsely from the stored entries, so the cost
    scales with the number of admissible identities rather than with the
    ninth power of the label count.
    """
    if tol <= 0:
        raise CategoryError("tolerance must be positive")
    n = cat.num_labels
    keys = np.array(sorted(cat.F.keys()), dtype=np.int64)
    vals = np.array([cat.F[tuple(kk)] for kk in keys], dtype=np.complex128)

    def enc(*cols):
        out = np.zeros(len(cols[0]), dtype=np.int64)
        for c in cols:
            out = out * n + c
        return out

    # left side: F1[f,c,d,e,g,l] * F2[a,b,l,e,f,k], joined on (l, e, f)
    i1, i2 = _join(keys, vals, enc(keys[:, 5], keys[:, 3], keys[:, 0]),
                   keys, vals, enc(keys[:, 2], keys[:, 3], keys[:, 4]))
    k1, k2 = keys[i1], keys[i2]
    lhs_idx = enc(k2[:, 0], k2[:, 1], k1[:, 1], k1[:, 2], k1[:, 3],
                  k1[:, 0], k1[:, 4], k2[:, 5], k1[:, 5])
    lhs_val = vals[i1] * vals[i2]

    # right side: sum_h FA[a,b,c,g,f,h] * FB[a,h,d,e,g,k] * FC[b,c,d,k,h,l]
    ia, ib = _join(keys, vals, enc(keys[:, 0], keys[:, 5], keys[:, 3]),
                   keys, vals, enc(keys[:, 0], keys[:, 1], keys[:, 4]))
    ka, kb = keys[ia], keys[ib]
    ab_val = vals[ia] * vals[ib]
    ab_join = enc(ka[:, 1], ka[:, 2], kb[:, 2], kb[:, 5], ka[:, 5])
    iab, ic = _join(None, None, ab_join,
                    keys, vals, enc(keys[:, 0], keys[:, 1], keys[:, 2],
                                    keys[:, 3], keys[:, 4]))
    ka, kb, kc = ka[iab], kb[iab], keys[ic]
    rhs_idx = enc(ka[:, 0], ka[:, 1], ka[:, 2], kb[:, 2], kb[:, 3],
                  ka[:, 4], ka[:, 3], kb[:, 5], kc[:, 5])
    rhs_val = ab_val[iab] * vals[ic]

    # accumulate the h sum and compare the two sparse tensors
    all_idx = np.concatenate([lhs_idx, rhs_idx])
    uniq, inv = np.unique(all_idx, return_inverse=True)
    diff = np.zeros(len(uniq), dtype=np.complex128)
    np.add.at(diff, inv[:len(lhs_idx)], lhs_val)
    np.add.at(diff, inv[len(lhs_idx):], -rhs_val)
    max_res = float(np.abs(diff).max()) if len(uniq) else 0.0
    return ConsistencyReport("pentagon", max_res, int(len(uniq)), tol)


def verify_involution(cat: FusionCategory, tol: float = TOL_DEFAULT) -> ConsistencyReport:
    """Check that applying each F move twice gives back the identity.

    The block [F^{abc}_d] maps the right-tree basis (channels f of b x c)
    onto the left-tree basis (channels e of a x b); applying the move again
    uses the block [F^{cba}_d], whose index supports are exactly swapped.
    When a = c, which covers every nontrivial Fibonacci / Yang-Lee block,
    the two blocks coincide and this is literally the matrix squaring to
    the identity.  Supports are ordered ascending on both sides.
    """
    if tol <= 0:
        raise CategoryError("tolerance must be positive")
    Fd = cat.dense_f()
    N = cat.N.astype(bool)
    n = cat.num_labels
    max_res = 0.0
    count = 0
    support_violation = 0.0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    e_ok = [e for e in range(n) if N[a, b, e] and N[e, c, d]]
                    f_ok = [f for f in range(n) if N[b, c, f] and N[a, f, d]]
                    if not e_ok:
                        continue
                    B = Fd[a, b, c, d]
                    off = np.ones((n, n), dtype=bool)
                    off[np.ix_(e_ok, f_ok)] = False
                    if off.any():
                        support_violation = max(support_violation,
                                                float(np.abs(B[off]).max()))
                    sub = B[np.ix_(e_ok, f_ok)]
                    back = Fd[c, b, a, d][np.ix_(f_ok, e_ok)]
                    sq = sub @ back
                    max_res = max(max_res,
                                  float(np.abs(sq - np.eye(len(e_ok))).max()))
                    count += 1
    return ConsistencyReport("involution", max(max_res, support_violation), count, tol,
                             details={"support_violation": support_violation})


def dimension_homomorphism_residual(cat: FusionCategory) -> float:
    """max |d_a d_b - sum_c N_ab^c d_c|; zero for consistent data."""
    d = cat.dims
    lhs = np.multiply.outer(d, d)
    rhs = np.einsum("abc,c->ab", cat.N.astype(float), d)
    return float(np.abs(lhs - rhs).max())


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _fmt(x: float) -> float:
    # 17 significant digits: lossless decimal representation of a double
    return float(f"{x:.17g}")


def category_to_dict(cat: FusionCategory) -> dict:
    fusion = [[a, b, c] for (a, b, c) in zip(*np.nonzero(cat.N))]
    f_entries = [{"idx": list(idx), "re": _fmt(v.real), "im": _fmt(v.imag)}
                 for idx, v in sorted(cat.F.items())]
    return {
        "labels": list(cat.labels),
        "fusion": [[int(x) for x in t] for t in fusion],
        "F": f_entries,
        "provenance": dict(cat.provenance),
    }


def category_from_dict(data: dict) -> FusionCategory:
    labels = data["labels"]
    n = len(labels)
    N = np.zeros((n, n, n), dtype=np.int8)
    for a, b, c in data["fusion"]:
        N[a, b, c] = 1
    F = {tuple(ent["idx"]): complex(ent["re"], ent["im"]) for ent in data["F"]}
    cat = FusionCategory(labels, N, F, np.ones(n), data.get("provenance", {}))
    dims = np.array([quantum_dimension(cat, a) for a in range(n)])
    return FusionCategory(labels, N, F, dims, data.get("provenance", {}))


def category_to_json(cat: FusionCategory) -> str:
    return json.dumps(category_to_dict(cat), indent=1)


def category_from_json(text: str) -> FusionCategory:
    return category_from_dict(json.loads(text))
