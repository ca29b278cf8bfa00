"""Radial positive definite functions: catalog, Gram matrices, strict-PD certification.

A radial function ``f`` belongs to the class ``Phi_n`` when ``f(|x|)`` is
positive definite on R^n.  Every member is a non-negative mixture of the
kernels :func:`~pointint.specfun.omega_kernel`, and every non-constant member
(``n >= 2``) has strictly positive definite Gram matrices on distinct points.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .exceptions import PreconditionError
from .linalg import as_hermitian, eigen_hermitian
from .specfun import omega_kernel

__all__ = [
    "Membership",
    "RadialFunction",
    "DiscreteMeasure",
    "PointSet",
    "PDCheck",
    "Witness",
    "CATALOG",
    "catalog_function",
    "catalog_membership",
    "exp_decay",
    "one_minus_exp_over_t",
    "omega",
    "truncated_power",
    "re_exp",
    "constant",
    "gram_matrix",
    "strict_pd_check",
    "schoenberg_synthesize",
    "pd_violation_search",
]


class Membership(str, enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    UNKNOWN = "unknown"


def _always_member(n: int) -> Membership:
    return Membership.MEMBER


@dataclass(frozen=True)
class RadialFunction:
    """A function ``f: [0, inf) -> R`` together with its ``Phi_n`` membership metadata.

    ``evaluator`` must accept numpy arrays.  ``membership(n)`` reports whether
    ``f`` is in ``Phi_n``; completely monotone functions are members in every
    dimension.
    """

    id: str
    evaluator: Callable[[np.ndarray], np.ndarray]
    membership: Callable[[int], Membership] = _always_member
    completely_monotone: bool = False
    non_constant: bool = True
    parameters: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        f0 = float(np.asarray(self.evaluator(np.zeros(1)))[0])
        if not math.isfinite(f0):
            raise PreconditionError(f"{self.id}: value at 0 is not finite")
        if self.completely_monotone:
            object.__setattr__(self, "membership", _always_member)

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        out = np.asarray(self.evaluator(np.atleast_1d(arr)), dtype=float).reshape(arr.shape)
        return out.item() if out.ndim == 0 else out

    def strictly_pd_expected(self, n: int) -> bool:
        """True when strict positive definiteness on R^n follows from the class theory."""
        if not self.non_constant or self.membership(n) is not Membership.MEMBER:
            return False
        return n >= 2 or self.completely_monotone


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite non-negative measure on ``[0, inf)`` given by atoms ``(s_i, w_i)``."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(s), float(w)) for s, w in self.atoms)
        for s, w in atoms:
            if not (math.isfinite(s) and math.isfinite(w)):
                raise PreconditionError("measure atoms must be finite")
            if s < 0:
                raise PreconditionError(f"atom location {s} is negative")
            if w < 0:
                raise PreconditionError(f"atom weight {w} is negative")
        object.__setattr__(self, "atoms", atoms)

    @property
    def total_mass(self) -> float:
        return math.fsum(w for _, w in self.atoms)


@dataclass(frozen=True)
class PointSet:
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or len(pts) == 0:
            raise PreconditionError("point set must be a non-empty (m, n) array")
        if not np.all(np.isfinite(pts)):
            raise PreconditionError("point coordinates must be finite")
        if len(pts) > 1 and pdist(pts).min() <= 0.0:
            raise PreconditionError("point set contains duplicate points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def ambient_dimension(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return len(self.points)

    def distances(self) -> np.ndarray:
        if len(self.points) == 1:
            return np.zeros((1, 1))
        return squareform(pdist(self.points))


@dataclass(frozen=True)
class PDCheck:
    is_strictly_pd: bool
    min_eigenvalue: float


@dataclass(frozen=True)
class Witness:
    """Point set and coefficient vector with negative quadratic form."""

    points: PointSet
    coefficients: np.ndarray
    quadratic_form: float
    trial: int


# -- catalog -----------------------------------------------------------------


def exp_decay() -> RadialFunction:
    return RadialFunction("exp_decay", lambda t: np.exp(-t), completely_monotone=True)


def _one_minus_exp_over_t(t):
    t = np.asarray(t, dtype=float)
    safe = np.where(t > 0, t, 1.0)
    return np.where(t > 0, -np.expm1(-safe) / safe, 1.0)


def one_minus_exp_over_t() -> RadialFunction:
    return RadialFunction("one_minus_exp_over_t", _one_minus_exp_over_t, completely_monotone=True)


def omega(k: int, scale: float = 1.0) -> RadialFunction:
    """``t -> omega_kernel(k, scale * t)``; a member of ``Phi_n`` exactly for ``n <= k``."""
    k = int(k)
    if k < 1:
        raise PreconditionError("omega_k requires k >= 1")

    def membership(n):
        return Membership.MEMBER if n <= k else Membership.NON_MEMBER

    return RadialFunction(
        "omega_k",
        lambda t: omega_kernel(k, scale * np.asarray(t)),
        membership,
        non_constant=scale > 0,
        parameters={"k": k, "scale": float(scale)},
    )


def truncated_power(delta: float) -> RadialFunction:
    """``(1 - t)_+^delta``; in ``Phi_n`` iff ``delta >= (n + 1)/2``."""
    delta = float(delta)
    if delta <= 0:
        raise PreconditionError("truncated_power requires delta > 0")

    def membership(n):
        return Membership.MEMBER if delta >= 0.5 * (n + 1) else Membership.NON_MEMBER

    return RadialFunction(
        "truncated_power",
        lambda t: np.maximum(1.0 - np.asarray(t), 0.0) ** delta,
        membership,
        parameters={"delta": delta},
    )


def re_exp(z: complex) -> RadialFunction:
    """``Re exp(-z t)``; in ``Phi_n`` iff ``|arg z| <= pi / (2 n)``."""
    z = complex(z)
    if z.real <= 0:
        raise PreconditionError("re_exp requires Re z > 0 (bounded at infinity)")
    angle = abs(cmath.phase(z))

    def membership(n):
        # Boundary case |arg z| == pi/(2n) is a member; allow one ulp of slack.
        return Membership.MEMBER if angle <= math.pi / (2 * n) * (1 + 1e-15) else Membership.NON_MEMBER

    return RadialFunction(
        "re_exp",
        lambda t: np.exp(-z.real * np.asarray(t)) * np.cos(z.imag * np.asarray(t)),
        membership,
        parameters={"z": z},
    )


def constant(value: float = 1.0) -> RadialFunction:
    value = float(value)
    if value < 0:
        raise PreconditionError("a negative constant is not positive definite")
    return RadialFunction(
        "constant",
        lambda t: np.full(np.shape(t), value),
        completely_monotone=True,
        non_constant=False,
        parameters={"value": value},
    )


CATALOG: dict[str, Callable[..., RadialFunction]] = {
    "exp_decay": exp_decay,
    "one_minus_exp_over_t": one_minus_exp_over_t,
    "omega_k": omega,
    "truncated_power": truncated_power,
    "re_exp": re_exp,
    "constant": constant,
}


def catalog_function(id: str, **params) -> RadialFunction:
    try:
        factory = CATALOG[id]
    except KeyError:
        raise LookupError(f"unknown catalog function {id!r}; known: {sorted(CATALOG)}") from None
    return factory(**params)


def catalog_membership(id: str, params: Mapping[str, object] | None, n: int) -> Membership:
    """Stated ``Phi_n`` membership of a catalog entry.

    >>> catalog_membership("truncated_power", {"delta": 2}, 3).value
    'member'
    >>> catalog_membership("omega_k", {"k": 2}, 3).value
    'non-member'
    """
    return catalog_function(id, **dict(params or {})).membership(n)


# -- Gram matrices -----------------------------------------------------------


def _as_point_set(X) -> PointSet:
    return X if isinstance(X, PointSet) else PointSet(np.asarray(X, dtype=float))


def gram_matrix(f: Callable, X) -> np.ndarray:
    """Gram matrix ``G[k, j] = f(|x_k - x_j|)``, exactly symmetric with diagonal ``f(0)``."""
    X = _as_point_set(X)
    m = len(X)
    G = np.empty((m, m))
    f0 = float(np.asarray(f(np.zeros(1))).ravel()[0])
    np.fill_diagonal(G, f0)
    if m > 1:
        iu = np.triu_indices(m, 1)
        vals = np.asarray(f(pdist(X.points)), dtype=float)
        G[iu] = vals
        G[(iu[1], iu[0])] = vals
    return G


def strict_pd_check(G, tol: float | None = None) -> PDCheck:
    """Certify strict positive definiteness of a real symmetric matrix.

    ``tol`` defaults to ``1e-9 * ||G||_2``; the verdict is
    ``min_eigenvalue > tol``.
    """
    H = as_hermitian(G, name="Gram matrix")
    w = np.linalg.eigvalsh(H)
    if tol is None:
        tol = 1e-9 * float(np.max(np.abs(w)))
    lam = float(w[0])
    return PDCheck(is_strictly_pd=lam > tol, min_eigenvalue=lam)


def schoenberg_synthesize(n: int, mu: DiscreteMeasure) -> RadialFunction:
    """Mixture ``f(t) = sum_i w_i * omega_kernel(n, s_i * t)`` of a discrete measure."""
    n = int(n)
    if n < 1:
        raise PreconditionError("dimension must be >= 1")
    if not isinstance(mu, DiscreteMeasure):
        mu = DiscreteMeasure(tuple(mu))
    atoms = mu.atoms

    def evaluator(t):
        t = np.asarray(t, dtype=float)
        total = np.zeros_like(t)
        for s, w in atoms:
            total = total + w * omega_kernel(n, s * t)
        return total

    def membership(k):
        return Membership.MEMBER if k <= n else Membership.UNKNOWN

    return RadialFunction(
        "schoenberg",
        evaluator,
        membership,
        non_constant=any(s > 0 and w > 0 for s, w in atoms),
        parameters={"n": n, "atoms": atoms},
    )


def pd_violation_search(
    f: Callable,
    n: int,
    trials: int,
    seed: int,
    *,
    max_points: int = 8,
    box: float = 5.0,
    min_separation: float = 1e-3,
    threshold: float = -1e-9,
) -> Witness | None:
    """Random search for a point set on which ``f(|.|)`` fails to be positive definite.

    Each trial draws ``m`` in ``[2, max_points]`` points uniformly from
    ``[-box, box]^n``; trials with a pair closer than ``min_separation`` are
    skipped.  The first trial whose Gram matrix has an eigenvalue below
    ``threshold`` is returned.  ``None`` is not a membership proof.
    """
    rng = np.random.default_rng(seed)
    for trial in range(int(trials)):
        m = int(rng.integers(2, max_points + 1))
        pts = rng.uniform(-box, box, size=(m, n))
        if pdist(pts).min() < min_separation:
            continue
        X = PointSet(pts)
        w, v = eigen_hermitian(gram_matrix(f, X))
        if w[0] < threshold:
            xi = v[:, 0]
            q = float(xi @ gram_matrix(f, X) @ xi)
            return Witness(points=X, coefficients=xi, quadratic_form=q, trial=trial)
    return None
