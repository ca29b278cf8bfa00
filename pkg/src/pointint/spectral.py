"""Negative spectrum, zero-energy counting and ac-band certification of extensions.

For an extension with parameter ``Theta`` (operator part ``B`` on a subspace
with orthonormal basis ``Q``) the negative eigenvalues ``z = -t`` are the
zeros of the eigenvalue branches of

    F(t) = B - Q^* M(-t) Q,     t > 0.

``M`` is strictly increasing on the negative axis, so every ordered branch of
``F`` is continuous and strictly increasing in ``t``; each sign change is
located by bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .config import (
    Diagonal,
    ExtensionParameter,
    Hermitian,
    PointConfiguration,
    Relation,
    interaction_matrices,
)
from .exceptions import DomainError, InvariantError, PreconditionError
from .weyl import gamma_field_eval, tilde_weyl_zero, weyl_boundary, weyl_imag_boundary, weyl_negative, weyl_zero

__all__ = [
    "EigenRecord",
    "ACPoint",
    "ACCertification",
    "SpectrumReport",
    "negative_eigenvalues",
    "branch_eigenvalues",
    "count_negative",
    "is_nonnegative",
    "eigenfunction_eval",
    "ac_certification",
    "spectrum",
]

DEFAULT_TOL_ROOT = 1e-12
ZERO_RTOL = 1e-10
MERGE_RTOL = 1e-9
BISECT_RTOL = 1e-14
# Smallest |z| the solver resolves.
T_FLOOR = 1e-300
_MAX_DOUBLINGS = 2000


@dataclass(frozen=True, eq=False)
class EigenRecord:
    """Negative eigenvalue ``z`` with an orthonormal basis of ``ker(Theta - M(z))`` (columns)."""

    z: float
    multiplicity: int
    coefficient_vectors: np.ndarray
    residual: float


@dataclass(frozen=True)
class ACPoint:
    x: float
    min_eig_imM: float
    invertible_B_minus_M: bool
    min_eig_imMB: float
    rank_imMB: int


@dataclass(frozen=True)
class ACCertification:
    points: tuple[ACPoint, ...]
    m: int

    @property
    def certified(self) -> bool:
        return all(
            p.min_eig_imM > 0 and p.invertible_B_minus_M and p.min_eig_imMB > 0 and p.rank_imMB == self.m
            for p in self.points
        )


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    eigenvalues: list[EigenRecord]
    kappa_minus: int | None
    ac: ACCertification | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.eigenvalues)


def _realify(a):
    return a.real if np.all(a.imag == 0) else a


def _pencil(cfg, theta):
    if not isinstance(theta, ExtensionParameter):
        raise PreconditionError(f"expected an ExtensionParameter, got {type(theta).__name__}")
    Q, B = theta.compress(cfg.m)
    return _realify(Q), _realify(B)


def _F(cfg, Q, B, t):
    M = weyl_negative(cfg, t)
    F = B - Q.conj().T @ M @ Q
    return 0.5 * (F + F.conj().T)


def branch_eigenvalues(cfg: PointConfiguration, theta: ExtensionParameter, t) -> np.ndarray:
    """Ordered eigenvalues of ``F(t) = Theta_eff - M(-t)`` compressed, for each ``t`` in ``t``."""
    Q, B = _pencil(cfg, theta)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    return np.array([np.linalg.eigvalsh(_F(cfg, Q, B, s)) for s in ts])


def _zero_energy_eigs(cfg, Q, B):
    A = B - Q.conj().T @ weyl_zero(cfg) @ Q
    A = 0.5 * (A + A.conj().T)
    w, v = np.linalg.eigh(A)
    norm = float(np.max(np.abs(w))) if w.size else 0.0
    return w, v, ZERO_RTOL * norm


def _fix_phase(v):
    # Largest-modulus component made real positive; deterministic output.
    for j in range(v.shape[1]):
        col = v[:, j]
        k = int(np.argmax(np.abs(col) - 1e-12 * np.arange(len(col))))
        ph = col[k] / abs(col[k])
        v[:, j] = col / ph
    return _realify(v)


def negative_eigenvalues(
    cfg: PointConfiguration,
    theta: ExtensionParameter,
    tol_root: float = DEFAULT_TOL_ROOT,
) -> list[EigenRecord]:
    """Negative eigenvalues of the extension, sorted ascending, with multiplicities.

    In 3D the branches carrying a root are the ones negative at zero energy
    (same threshold as :func:`count_negative`); in 2D, the ones negative at
    ``t = T_FLOOR``.  Each root is bracketed on a decade grid and refined by
    bisection to relative width ``BISECT_RTOL``.  Roots closer than
    ``MERGE_RTOL * t`` are merged into one eigenvalue.
    """
    if not tol_root > 0:
        raise PreconditionError("tol_root must be positive")
    Q, B = _pencil(cfg, theta)
    k = Q.shape[1]
    if k == 0:
        return []

    t_hi = 1.0
    for _ in range(_MAX_DOUBLINGS):
        if np.linalg.eigvalsh(_F(cfg, Q, B, t_hi))[0] > 0:
            break
        t_hi *= 2.0
    else:
        raise InvariantError("no upper bracket: F(t) never became positive")

    if cfg.dimension == 3:
        w0, _, thr = _zero_energy_eigs(cfg, Q, B)
        n_bound = int(np.sum(w0 < -thr))
    else:
        n_bound = int(np.sum(np.linalg.eigvalsh(_F(cfg, Q, B, T_FLOOR)) < 0))
    if n_bound == 0:
        return []

    lo10, hi10 = math.log10(T_FLOOR), math.log10(t_hi)
    grid = np.logspace(lo10, hi10, int(hi10 - lo10) + 2)
    grid[0], grid[-1] = T_FLOOR, t_hi
    lam = np.array([np.linalg.eigvalsh(_F(cfg, Q, B, s)) for s in grid])

    roots = []
    for b in range(n_bound):
        pos = np.nonzero(lam[:, b] > 0)[0]
        hi = int(pos[0])
        lo = hi - 1
        if lo < 0:
            # 3D branch at threshold: its zero-energy value is below -thr yet
            # positive at T_FLOOR; no resolvable root.
            raise InvariantError(f"branch {b} has no sign change above T_FLOOR")

        def g(s, b=b):
            return np.linalg.eigvalsh(_F(cfg, Q, B, s))[b]

        a_, b_ = grid[lo], grid[hi]
        if lam[lo, b] == 0.0:
            roots.append((a_, b))
            continue
        t_star = bisect(g, a_, b_, xtol=1e-300, rtol=BISECT_RTOL, maxiter=200)
        roots.append((t_star, b))

    # Merge equal roots; roots are in decreasing t order (branch 0 is lowest).
    roots.sort(key=lambda r: (-r[0], r[1]))
    groups: list[list[tuple[float, int]]] = []
    for t_star, b in roots:
        if groups and abs(groups[-1][0][0] - t_star) <= MERGE_RTOL * t_star:
            groups[-1].append((t_star, b))
        else:
            groups.append([(t_star, b)])

    out = []
    for grp in groups:
        t_star = float(np.mean([t for t, _ in grp]))
        idx = [b for _, b in grp]
        F = _F(cfg, Q, B, t_star)
        w, v = np.linalg.eigh(F)
        vecs = _fix_phase(Q @ v[:, idx])
        norm = max(float(np.max(np.abs(w))), 1.0)
        residual = float(np.max(np.abs(w[idx]))) / norm
        out.append(EigenRecord(z=-t_star, multiplicity=len(idx), coefficient_vectors=vecs, residual=residual))
    if sum(r.multiplicity for r in out) > cfg.m:
        raise InvariantError("more negative eigenvalues than interaction centers")
    return out


def _operator_matrix(cfg, theta):
    if isinstance(theta, Relation):
        raise PreconditionError("counting is defined for the Diagonal and Hermitian variants only")
    if not isinstance(theta, (Diagonal, Hermitian)):
        raise PreconditionError(f"unsupported parameter {type(theta).__name__}")
    return _realify(theta.full_matrix(cfg.m))


def _require_3d(cfg, what):
    if cfg.dimension != 3:
        raise DomainError(f"{what} unsupported for dimension {cfg.dimension}")


def count_negative(cfg: PointConfiguration, theta: ExtensionParameter) -> int:
    """Number of negative eigenvalues of ``Theta - M(0)`` (3D), counting multiplicity.

    Eigenvalues within ``1e-10 * ||Theta - M(0)||`` of zero count as zero.
    """
    _require_3d(cfg, "count_negative")
    B = _operator_matrix(cfg, theta)
    w, _, thr = _zero_energy_eigs(cfg, np.eye(cfg.m), B)
    return int(np.sum(w < -thr))


def is_nonnegative(cfg: PointConfiguration, theta: ExtensionParameter, audit: bool = False) -> bool:
    """Whether the extension is a non-negative operator (3D).

    With ``audit=True`` the verdict is recomputed in the shifted triplet, where
    the condition reads ``Theta~ - M~(0) >= 0`` with
    ``Theta~ = Theta - E0 / (4 pi)``; disagreement raises :class:`InvariantError`.
    """
    verdict = count_negative(cfg, theta) == 0
    if audit:
        B = _operator_matrix(cfg, theta)
        E0 = interaction_matrices(cfg).E0
        A = B - E0 / (4.0 * math.pi) - tilde_weyl_zero(cfg)
        w = np.linalg.eigvalsh(0.5 * (A + A.conj().T))
        alt = bool(w[0] >= -ZERO_RTOL * float(np.max(np.abs(w))))
        if alt != verdict:
            raise InvariantError("non-negativity verdicts of the two triplets disagree")
    return verdict


def eigenfunction_eval(cfg: PointConfiguration, record: EigenRecord, grid) -> list[np.ndarray]:
    """Eigenfunction values ``gamma(z) a`` on ``grid`` for each coefficient vector ``a``."""
    pts = np.atleast_2d(np.asarray(grid, dtype=float))
    return [
        np.asarray(gamma_field_eval(cfg, complex(record.z), record.coefficient_vectors[:, j], pts))
        for j in range(record.coefficient_vectors.shape[1])
    ]


def ac_certification(cfg: PointConfiguration, theta: ExtensionParameter, x_grid) -> ACCertification:
    """Check the ac-spectrum mechanism on a grid of positive energies.

    At each ``x``: ``Im M(x+i0) > 0``, ``B - M(x+i0)`` invertible, and
    ``Im M_B = (B - M)^{-1} Im M (B - M^*)^{-1}`` positive definite of full rank.
    """
    B = _operator_matrix(cfg, theta)
    xs = np.asarray(x_grid, dtype=float).ravel()
    if np.any(xs <= 0):
        raise DomainError("ac_certification: grid must be strictly positive")
    pts = []
    for x in xs:
        imM = weyl_imag_boundary(cfg, float(x))
        min_imM = float(np.linalg.eigvalsh(imM)[0])
        D = B - weyl_boundary(cfg, float(x)).matrix
        sv = np.linalg.svd(D, compute_uv=False)
        invertible = bool(sv[-1] > 1e-10 * sv[0])
        if invertible:
            A = np.linalg.inv(D)
            imMB = A @ imM @ A.conj().T
            imMB = 0.5 * (imMB + imMB.conj().T)
            min_imMB = float(np.linalg.eigvalsh(imMB)[0])
            rank = int(np.linalg.matrix_rank(imMB, hermitian=True))
        else:
            min_imMB, rank = float("nan"), 0
        pts.append(ACPoint(float(x), min_imM, invertible, min_imMB, rank))
    return ACCertification(points=tuple(pts), m=cfg.m)


def spectrum(
    cfg: PointConfiguration,
    theta: ExtensionParameter,
    tol_root: float = DEFAULT_TOL_ROOT,
    x_grid=None,
) -> SpectrumReport:
    """Full report: negative eigenvalues, ``kappa_minus`` (3D operator variants), ac certification."""
    eigs = negative_eigenvalues(cfg, theta, tol_root)
    notes = []
    kappa = None
    if cfg.dimension == 3 and not isinstance(theta, Relation):
        kappa = count_negative(cfg, theta)
        if kappa != sum(e.multiplicity for e in eigs):
            raise InvariantError(f"root count disagrees with kappa_minus = {kappa}")
    elif cfg.dimension == 2:
        notes.append("kappa_minus has no zero-energy formula in dimension 2; count is the root count")
    ac = None
    if x_grid is not None and not isinstance(theta, Relation):
        ac = ac_certification(cfg, theta, x_grid)
    return SpectrumReport(eigenvalues=eigs, kappa_minus=kappa, ac=ac, notes=notes)
