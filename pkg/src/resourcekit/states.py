"""Dense complex-matrix quantum state algebra.

Validated density matrices and pure states on a fixed tensor-product
structure, spectral calculus (fractional matrix powers), composition
(tensor product, partial trace) and seeded random generation.

All types are immutable after construction and every operation is a pure
function, so values can be shared freely between concurrent tasks.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from math import prod
from typing import NamedTuple

import numpy as np

from .errors import (
    BadIndex,
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    TraceDeviation,
)

HERM_TOL = 1e-10
PSD_TOL = 1e-10        # eigenvalues below -PSD_TOL reject the matrix outright
CLAMP_NOISE = 1e-13    # eigenvalues in (-CLAMP_NOISE, 0) are eigensolver noise
TRACE_TOL = 1e-8
RENORM_GUARD = 1e-9    # largest trace shift the clamp step may introduce


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace complex matrix.

    ``dims`` lists the subsystem dimensions; their product is the side
    length of ``data``.  Construct untrusted matrices through
    :func:`validate`; the dataclass itself performs no checks.
    """

    dims: tuple[int, ...]
    data: np.ndarray

    @property
    def d(self) -> int:
        return self.data.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.data @ self.data)))

    def diag(self) -> np.ndarray:
        return np.real(np.diag(self.data)).copy()


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector with canonical global phase on a tensor-product space."""

    dims: tuple[int, ...]
    amps: np.ndarray

    @property
    def d(self) -> int:
        return self.amps.shape[0]

    def projector(self) -> DensityMatrix:
        return _trusted(np.outer(self.amps, self.amps.conj()), self.dims)


class Spectrum(NamedTuple):
    """Eigenvalues in descending order with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _check_dims(dims, side) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in dims)
    except TypeError:
        raise DimensionMismatch(f"dims must be a sequence of ints, got {dims!r}")
    if not dims or any(x <= 0 for x in dims):
        raise DimensionMismatch(f"dims must be positive, got {dims}")
    if prod(dims) != side:
        raise DimensionMismatch(f"prod{dims} = {prod(dims)} != matrix side {side}")
    return dims


def _trusted(data: np.ndarray, dims) -> DensityMatrix:
    """Wrap a matrix that is valid by construction (no spectral re-check)."""
    data = np.ascontiguousarray(data, dtype=complex)
    tr = np.real(np.trace(data))
    if abs(tr - 1.0) > 1e-12:
        data = data / tr
    return DensityMatrix(tuple(int(x) for x in dims), _freeze(data))


def validate(matrix, dims) -> DensityMatrix:
    """Check Hermiticity, positivity and unit trace; return a DensityMatrix.

    Eigenvalues in [-1e-10, 0) are clamped to zero (they are treated as
    numerical noise) and the trace renormalized, provided the clamp shifts
    the trace by at most 1e-9; anything more negative raises ``NotPSD``.
    Matrices that need no repair are stored byte-identical, so that
    serialization round-trips exactly.
    """
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    dims = _check_dims(dims, arr.shape[0])

    herm_dev = float(np.abs(arr - arr.conj().T).max())
    if herm_dev > HERM_TOL:
        raise NotHermitian(f"max |m - m^dag| = {herm_dev:.3e} > {HERM_TOL}")

    herm = (arr + arr.conj().T) / 2
    vals = np.linalg.eigvalsh(herm)
    if vals[0] < -PSD_TOL:
        raise NotPSD(f"eigenvalue {vals[0]:.3e} < -{PSD_TOL}")

    tr = float(np.real(np.trace(arr)))
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceDeviation(f"|trace - 1| = {abs(tr - 1.0):.3e} > {TRACE_TOL}")

    if vals[0] < -CLAMP_NOISE:
        shift = float(-vals[vals < 0].sum())
        if shift > RENORM_GUARD:
            raise NotPSD(f"accumulated negative mass {shift:.3e} > {RENORM_GUARD}")
        w, v = np.linalg.eigh(herm)
        w = np.clip(w, 0.0, None)
        repaired = (v * w) @ v.conj().T
        repaired /= np.real(np.trace(repaired))
        return DensityMatrix(dims, _freeze(repaired))

    data = arr if abs(tr - 1.0) <= 1e-12 else arr / tr
    return DensityMatrix(dims, _freeze(np.ascontiguousarray(data)))


def pure_state(amps, dims=None) -> PureState:
    """Normalize an amplitude vector and canonicalize its global phase."""
    a = np.asarray(amps, dtype=complex).ravel()
    norm = float(np.linalg.norm(a))
    if norm < 1e-12:
        raise DimensionMismatch("amplitude vector has (near-)zero norm")
    a = a / norm
    if dims is None:
        dims = (a.shape[0],)
    dims = _check_dims(dims, a.shape[0])
    nz = np.flatnonzero(np.abs(a) > 1e-12)
    lead = a[nz[0]]
    a = a * (abs(lead) / lead)
    return PureState(dims, _freeze(np.ascontiguousarray(a)))


def basis_pure(dims, index: int) -> PureState:
    d = prod(dims)
    a = np.zeros(d, dtype=complex)
    a[index] = 1.0
    return pure_state(a, dims)


def spectral(rho: DensityMatrix) -> Spectrum:
    """Eigendecomposition sorted descending; columns are eigenvectors."""
    w, v = np.linalg.eigh((rho.data + rho.data.conj().T) / 2)
    order = np.argsort(w)[::-1]
    return Spectrum(_freeze(w[order].copy()), _freeze(v[:, order].copy()))


def frac_power(rho: DensityMatrix, t: float) -> np.ndarray:
    """Spectral power rho^t for 0 < t <= 1, with the convention 0^t = 0."""
    if not 0.0 < t <= 1.0:
        raise ValueError(f"power must lie in (0, 1], got {t}")
    return _frac_power_raw(rho.data, t)


# Eigenvalues below this fraction of the largest one are eigensolver noise
# on an exact zero; x**t amplifies such noise to noise**t (e.g. 1e-16 ->
# 1e-8 at t = 1/2), so they are flushed to an exact zero before powering.
# The factor uses the largest supported dimension rather than the actual
# one so that states with identical spectra flush identically regardless
# of the space they live in.
_FLUSH = 64 * np.finfo(float).eps


def _frac_power_raw(data: np.ndarray, t: float) -> np.ndarray:
    w, v = np.linalg.eigh((data + data.conj().T) / 2)
    w = np.clip(w, 0.0, None)
    w[w < _FLUSH * w.max()] = 0.0
    w = w ** t
    return (v * w) @ v.conj().T


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product; subsystem lists concatenate."""
    return _trusted(np.kron(a.data, b.data), a.dims + b.dims)


def tensor_pure(a: PureState, b: PureState) -> PureState:
    return pure_state(np.kron(a.amps, b.amps), a.dims + b.dims)


def _ptrace_raw(data: np.ndarray, dims, keep) -> np.ndarray:
    n = len(dims)
    letters = string.ascii_lowercase
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = [row[i] for i in keep] + [col[i] for i in keep]
    sub = "".join(row) + "".join(col) + "->" + "".join(out)
    dk = prod(dims[i] for i in keep)
    return np.einsum(sub, data.reshape(tuple(dims) * 2)).reshape(dk, dk)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the given subsystem indices (original order kept)."""
    n = len(rho.dims)
    keep = sorted(set(int(i) for i in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise BadIndex(f"keep={keep} invalid for {n} subsystems")
    red = _ptrace_raw(rho.data, rho.dims, keep)
    return _trusted(red, tuple(rho.dims[i] for i in keep))


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    vals = np.linalg.eigvalsh(a.data - b.data)
    return float(np.abs(vals).sum() / 2)


# ---------------------------------------------------------------------------
# Seeded random generation.  All randomness flows through numpy's PCG64
# generator so that identical seeds give bit-identical results.
# ---------------------------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_pure(dims, seed) -> PureState:
    """Haar-distributed pure state (normalized complex Gaussian vector)."""
    rng = _rng(seed)
    d = prod(dims)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return pure_state(z, dims)


def random_mixed(dims, rank, seed) -> DensityMatrix:
    """Ginibre-induced mixed state G G^dag / Tr(G G^dag) of the given rank."""
    d = prod(dims)
    if not 1 <= rank <= d:
        raise DimensionMismatch(f"rank {rank} out of range for dimension {d}")
    rng = _rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return validate(m / np.real(np.trace(m)), dims)


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with phase fix."""
    rng = _rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    return q * ph


# ---------------------------------------------------------------------------
# JSON interchange: {"dims": [...], "matrix": [[[re, im], ...], ...]}
# row-major; files whose matrix fails validate() are refused.
# ---------------------------------------------------------------------------

def state_to_json(rho: DensityMatrix) -> str:
    matrix = [[[float(z.real), float(z.imag)] for z in row] for row in rho.data]
    return json.dumps({"dims": list(rho.dims), "matrix": matrix})


def state_from_json(text: str) -> DensityMatrix:
    doc = json.loads(text)
    raw = doc["matrix"]
    arr = np.array([[complex(re, im) for re, im in row] for row in raw])
    return validate(arr, doc["dims"])


def save_state(rho: DensityMatrix, path) -> None:
    with open(path, "w") as fh:
        fh.write(state_to_json(rho))


def load_state(path) -> DensityMatrix:
    with open(path) as fh:
        return state_from_json(fh.read())
