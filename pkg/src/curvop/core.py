"""Algebraic curvature tensors on Euclidean n-space.

An algebraic curvature tensor is a 4-index array R[i,j,k,l] with the
symmetries of a Riemannian curvature tensor at a point:

* antisymmetry in the first pair:  R[i,j,k,l] = -R[j,i,k,l]
* antisymmetry in the last pair:   R[i,j,k,l] = -R[i,j,l,k]
* pair symmetry:                   R[i,j,k,l] =  R[k,l,i,j]
* first Bianchi identity:          R[i,j,k,l] + R[i,k,l,j] + R[i,l,j,k] = 0

Sign convention. Components are taken in an orthonormal frame with
R[i,j,k,l] = <R(e_i, e_j) e_k, e_l>, signed so that the round sphere of
curvature kappa has

    constant_curvature(n, kappa).components[i, j, i, j] == kappa   (i != j)

and positive-definite curvature operators.  The Ricci tensor is the
contraction Ric[i,j] = sum_k R[k,i,k,j], which gives Ric = (n-1) kappa g
on that sphere, and scalar curvature s = trace(Ric) = n (n-1) kappa.

Everything downstream (operator assembly, eigenvalue bounds, model
spaces) is pinned to this convention.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "TAU_SYM",
    "TAU_TRACE",
    "CurvopError",
    "InvalidTensorError",
    "TraceError",
    "SchemaError",
    "AdmissibilityError",
    "SymmetryReport",
    "CurvatureTensor",
    "Sym2Tensor",
    "TracelessSym2",
    "validate_symmetries",
    "ricci",
    "scalar",
    "traceless_ricci",
    "kulkarni_nomizu",
    "random_curvature",
    "random_traceless",
    "tensor_to_json",
    "tensor_from_json",
]

#: Absolute tolerance for the four symmetry residuals.
TAU_SYM = 1e-9

#: Relative tolerance for trace-free checks: |tr E| <= TAU_TRACE * (||E||_F + 1).
TAU_TRACE = 1e-12


class CurvopError(Exception):
    """Base class for errors raised by this package."""


class InvalidTensorError(CurvopError):
    """A curvature tensor failed its symmetry validation."""

    def __init__(self, report: "SymmetryReport"):
        self.report = report
        super().__init__(
            "curvature tensor violates its defining symmetries: "
            f"antisymmetry {report.antisymmetry:.3e}, "
            f"pair symmetry {report.pair_symmetry:.3e}, "
            f"first Bianchi {report.first_bianchi:.3e} "
            f"(tolerance {report.tol:.1e})"
        )


class TraceError(CurvopError):
    """A tensor that must be trace-free is not."""


class SchemaError(CurvopError):
    """Malformed or inconsistent serialized input."""


class AdmissibilityError(CurvopError):
    """A weight class is not admissible for the given spectrum length."""


@dataclass(frozen=True)
class SymmetryReport:
    """Maximum-entry residuals of the four curvature symmetries.

    ``antisymmetry`` is the worse of the first-pair and last-pair
    residuals.  A tensor is accepted when every residual is at most
    ``tol``.
    """

    antisymmetry: float
    pair_symmetry: float
    first_bianchi: float
    tol: float = TAU_SYM

    @property
    def max_violation(self) -> float:
        return max(self.antisymmetry, self.pair_symmetry, self.first_bianchi)

    @property
    def valid(self) -> bool:
        return self.max_violation <= self.tol

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else "invalid"

    def to_json(self) -> dict:
        return {
            "antisymmetry": self.antisymmetry,
            "pair_symmetry": self.pair_symmetry,
            "first_bianchi": self.first_bianchi,
            "tol": self.tol,
            "verdict": self.verdict,
        }


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """Dense curvature tensor with components R[i,j,k,l] in an orthonormal frame.

    Components are stored as a read-only float64 array of shape
    (n, n, n, n).  Construction checks shape only; call
    :func:`validate_symmetries` (or :meth:`require_valid`) to test the
    symmetries themselves.
    """

    n: int
    components: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"dimension n must be an integer >= 2, got {self.n!r}")
        arr = np.array(self.components, dtype=float)
        if arr.shape != (self.n,) * 4:
            raise ValueError(
                f"component array has shape {arr.shape}, expected {(self.n,) * 4}"
            )
        arr += 0.0  # canonicalize -0.0 so fingerprints are serialization-stable
        arr.setflags(write=False)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "components", arr)

    @cached_property
    def symmetry_report(self) -> SymmetryReport:
        return validate_symmetries(self)

    def require_valid(self) -> "CurvatureTensor":
        """Return self, raising :class:`InvalidTensorError` if the symmetries fail."""
        if not self.symmetry_report.valid:
            raise InvalidTensorError(self.symmetry_report)
        return self

    @cached_property
    def fingerprint(self) -> str:
        """Stable 16-hex-digit digest of (n, components) for report provenance."""
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(self.components.tobytes())
        return h.hexdigest()[:16]

    def norm_inf(self) -> float:
        """Largest absolute component, used to scale inequality tolerances."""
        return float(np.max(np.abs(self.components)))

    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("cannot add curvature tensors of different dimension")
        return CurvatureTensor(self.n, self.components + other.components)

    def __mul__(self, a: float) -> "CurvatureTensor":
        if not isinstance(a, (int, float, np.floating, np.integer)):
            return NotImplemented
        return CurvatureTensor(self.n, float(a) * self.components)

    __rmul__ = __mul__

    def __neg__(self) -> "CurvatureTensor":
        return CurvatureTensor(self.n, -self.components)


@dataclass(frozen=True, eq=False)
class Sym2Tensor:
    """Symmetric 2-tensor stored canonically: components[i,j] == components[j,i] exactly.

    Input must already be symmetric to within 1e-8 relative; the stored
    array is the exact symmetrization (A + A.T)/2.
    """

    n: int
    components: np.ndarray

    def __post_init__(self):
        arr = np.array(self.components, dtype=float)
        if arr.shape != (self.n, self.n):
            raise ValueError(
                f"component array has shape {arr.shape}, expected {(self.n, self.n)}"
            )
        skew = float(np.max(np.abs(arr - arr.T))) if self.n else 0.0
        scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
        if skew > 1e-8 * scale:
            raise ValueError(f"input is not symmetric: max |A - A.T| = {skew:.3e}")
        arr = (arr + arr.T) / 2.0
        arr.setflags(write=False)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "components", arr)

    def trace(self) -> float:
        return float(np.trace(self.components))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.components))

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in ascending order."""
        return np.linalg.eigvalsh(self.components)


@dataclass(frozen=True, eq=False)
class TracelessSym2(Sym2Tensor):
    """Symmetric 2-tensor constrained to be trace-free.

    Raises :class:`TraceError` when |trace| > TAU_TRACE * (||.||_F + 1).
    """

    def __post_init__(self):
        super().__post_init__()
        tr = abs(self.trace())
        if tr > TAU_TRACE * (self.frobenius() + 1.0):
            raise TraceError(
                f"tensor is not trace-free: |trace| = {tr:.3e} exceeds "
                f"{TAU_TRACE:.1e} * (||.||_F + 1)"
            )


def validate_symmetries(T: CurvatureTensor, tol: float = TAU_SYM) -> SymmetryReport:
    """Measure the residuals of the four defining symmetries of ``T``.

    Returns a :class:`SymmetryReport`; ``report.valid`` is True when all
    residuals are within ``tol`` (absolute, default ``TAU_SYM``).
    """
    R = T.components
    anti_first = np.max(np.abs(R + np.transpose(R, (1, 0, 2, 3))))
    anti_last = np.max(np.abs(R + np.transpose(R, (0, 1, 3, 2))))
    pair = np.max(np.abs(R - np.transpose(R, (2, 3, 0, 1))))
    # Cyclic sum over the last three slots: R[i,j,k,l] + R[i,k,l,j] + R[i,l,j,k].
    bianchi = np.max(
        np.abs(R + np.transpose(R, (0, 2, 3, 1)) + np.transpose(R, (0, 3, 1, 2)))
    )
    return SymmetryReport(
        antisymmetry=float(max(anti_first, anti_last)),
        pair_symmetry=float(pair),
        first_bianchi=float(bianchi),
        tol=tol,
    )


def ricci(T: CurvatureTensor) -> Sym2Tensor:
    """Ricci tensor Ric[i,j] = sum_k R[k,i,k,j] of a valid curvature tensor."""
    T.require_valid()
    ric = np.einsum("kikj->ij", T.components)
    return Sym2Tensor(T.n, ric)


def scalar(T: CurvatureTensor) -> float:
    """Scalar curvature, the trace of the Ricci tensor."""
    return ricci(T).trace()


def traceless_ricci(T: CurvatureTensor) -> TracelessSym2:
    """Trace-free part of the Ricci tensor: Ric - (s/n) g."""
    ric = ricci(T)
    E = ric.components - (ric.trace() / T.n) * np.eye(T.n)
    # One more exact projection step kills the O(eps * s) rounding residue
    # so the TracelessSym2 invariant holds even for large-scale tensors.
    E = E - (np.trace(E) / T.n) * np.eye(T.n)
    return TracelessSym2(T.n, E)


def kulkarni_nomizu(h: np.ndarray | Sym2Tensor, k: np.ndarray | Sym2Tensor) -> CurvatureTensor:
    """Kulkarni-Nomizu product of two symmetric 2-tensors.

    (h ^ k)[i,j,k,l] = h[i,k] k[j,l] + h[j,l] k[i,k] - h[i,l] k[j,k] - h[j,k] k[i,l]

    The result satisfies all four curvature symmetries whenever h and k
    are symmetric.  With g the identity, (kappa/2) (g ^ g) is the
    constant-curvature tensor.
    """
    H = h.components if isinstance(h, Sym2Tensor) else np.asarray(h, dtype=float)
    K = k.components if isinstance(k, Sym2Tensor) else np.asarray(k, dtype=float)
    if H.ndim != 2 or H.shape != K.shape or H.shape[0] != H.shape[1]:
        raise ValueError("kulkarni_nomizu needs two square matrices of equal shape")
    n = H.shape[0]
    out = (
        np.einsum("ik,jl->ijkl", H, K)
        + np.einsum("jl,ik->ijkl", H, K)
        - np.einsum("il,jk->ijkl", H, K)
        - np.einsum("jk,il->ijkl", H, K)
    )
    return CurvatureTensor(n, out)


def random_curvature(seed: int, n: int, terms: int = 3) -> CurvatureTensor:
    """Seeded random curvature tensor: an alternating sum of KN squares.

    Draws ``terms`` symmetric matrices h_a with iid standard normal
    entries (upper triangle mirrored) from ``np.random.default_rng(seed)``
    and returns  sum_a eps_a (h_a ^ h_a)  with eps alternating +1, -1,
    +1, ...  Each summand satisfies the curvature symmetries exactly, so
    the sum does; the output is bitwise reproducible for a fixed seed.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    rng = np.random.default_rng(seed)
    total = np.zeros((n, n, n, n))
    for a in range(terms):
        raw = rng.normal(size=(n, n))
        h = np.triu(raw) + np.triu(raw, 1).T
        sign = 1.0 if a % 2 == 0 else -1.0
        total += sign * kulkarni_nomizu(h, h).components
    return CurvatureTensor(n, total)


def random_traceless(
    n: int, rng: np.random.Generator | int, unit: bool = False
) -> TracelessSym2:
    """Random trace-free symmetric 2-tensor with normal entries.

    ``rng`` may be a Generator or an integer seed.  With ``unit=True``
    the result is scaled to Frobenius norm 1.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    raw = rng.normal(size=(n, n))
    sym = (raw + raw.T) / 2.0
    E = sym - (np.trace(sym) / n) * np.eye(n)
    if unit:
        nrm = np.linalg.norm(E)
        if nrm == 0.0:
            raise ValueError("degenerate zero draw cannot be normalized")
        E = E / nrm
    return TracelessSym2(n, E)


# ---------------------------------------------------------------------------
# JSON tensor interchange
#
# Schema: {"n": int, "entries": [{"i": int, "j": int, "k": int, "l": int,
# "v": float}, ...]} with 0-based indices.  Only a generating set of
# components needs to be listed; the loader completes the orbit of each
# entry under the three linear symmetries and rejects inconsistent
# duplicates.  (The first Bianchi identity is not implied by the schema;
# validate after loading.)
# ---------------------------------------------------------------------------


def _orbit(i: int, j: int, k: int, l: int, v: float):
    yield i, j, k, l, v
    yield j, i, k, l, -v
    yield i, j, l, k, -v
    yield j, i, l, k, v
    yield k, l, i, j, v
    yield l, k, i, j, -v
    yield k, l, j, i, -v
    yield l, k, j, i, v


def tensor_to_json(T: CurvatureTensor) -> dict:
    """Serialize to the entry-list schema, listing one representative per orbit.

    Representatives are the nonzero components with i < j, k < l and
    (i, j) <= (k, l) lexicographically, in row-major order.
    """
    R = T.components
    entries = []
    for i in range(T.n):
        for j in range(i + 1, T.n):
            for k in range(T.n):
                for l in range(k + 1, T.n):
                    if (k, l) < (i, j):
                        continue
                    v = R[i, j, k, l]
                    if v != 0.0:
                        entries.append(
                            {"i": i, "j": j, "k": k, "l": l, "v": float(v)}
                        )
    return {"n": T.n, "entries": entries}


def tensor_from_json(obj: dict) -> CurvatureTensor:
    """Build a tensor from the entry-list schema, completing by symmetry.

    Raises :class:`SchemaError` on missing keys, out-of-range indices,
    or entries whose symmetry orbits assign conflicting values
    (disagreement beyond 1e-12 relative).
    """
    if not isinstance(obj, dict):
        raise SchemaError("tensor document must be a JSON object")
    try:
        n = obj["n"]
        entries = obj["entries"]
    except KeyError as missing:
        raise SchemaError(f"tensor document is missing key {missing}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise SchemaError(f'"n" must be an integer >= 2, got {n!r}')
    if not isinstance(entries, list):
        raise SchemaError('"entries" must be a list')

    R = np.zeros((n, n, n, n))
    seen = np.zeros((n, n, n, n), dtype=bool)
    for pos, e in enumerate(entries):
        if not isinstance(e, dict):
            raise SchemaError(f"entry {pos} is not an object")
        try:
            idx = tuple(e[key] for key in ("i", "j", "k", "l"))
            v = e["v"]
        except KeyError as missing:
            raise SchemaError(f"entry {pos} is missing key {missing}") from None
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in idx):
            raise SchemaError(f"entry {pos} has non-integer indices {idx!r}")
        if not all(0 <= x < n for x in idx):
            raise SchemaError(
                f"entry {pos} has index out of range for n={n}: {idx!r}"
            )
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"entry {pos} has non-numeric value {v!r}")
        v = float(v)
        for a, b, c, d, w in _orbit(*idx, v):
            if seen[a, b, c, d]:
                if abs(R[a, b, c, d] - w) > 1e-12 * (1.0 + abs(w)):
                    raise SchemaError(
                        f"entry {pos} conflicts with an earlier entry at "
                        f"component ({a},{b},{c},{d}): "
                        f"{R[a, b, c, d]!r} vs {w!r}"
                    )
            else:
                seen[a, b, c, d] = True
                R[a, b, c, d] = w
    return CurvatureTensor(n, R)
