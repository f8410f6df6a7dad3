"""Bipartite state types, Schmidt decomposition, JSON file I/O and fixtures.

The file schema is shared by states and witnesses::

    {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}

``matrix`` is row-major with dA*dB rows of dA*dB ``[re, im]`` pairs.
Witness files carry an extra ``"kind": "witness"`` and are validated for
Hermiticity only; states must additionally have unit trace and be
positive semidefinite within tolerance.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import TOLS
from .errors import DimensionMismatch, InvariantViolation
from .linalg import as_matrix, hermiticity_defect, svd
from .witnesses import Witness


@dataclass
class DensityMatrix:
    """Bipartite mixed state: Hermitian, unit trace, PSD within tolerance."""

    dims: tuple[int, int]
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.dims = (int(self.dims[0]), int(self.dims[1]))
        da, db = self.dims
        if da < 1 or db < 1:
            raise InvariantViolation(f"dims: subsystem dimensions must be positive, got {self.dims}")
        mat = as_matrix(self.mat)
        d = da * db
        if mat.shape != (d, d):
            raise DimensionMismatch(
                f"dims: matrix is {mat.shape}, dims {self.dims} require {(d, d)}"
            )
        defect = hermiticity_defect(mat)
        if defect > TOLS.hermiticity:
            raise InvariantViolation(
                f"hermiticity: max |rho - rho^dag| = {defect:.3e} exceeds {TOLS.hermiticity:.1e}"
            )
        tr = np.trace(mat)
        if abs(tr - 1.0) > TOLS.trace:
            raise InvariantViolation(
                f"trace: Tr(rho) = {tr.real:.12g} differs from 1 by {abs(tr - 1.0):.3e}"
            )
        lo = float(np.linalg.eigvalsh((mat + mat.conj().T) / 2)[0])
        if lo < -TOLS.psd:
            raise InvariantViolation(
                f"positivity: minimum eigenvalue {lo:.3e} is below -{TOLS.psd:.1e}"
            )
        mat = mat.copy()
        mat.setflags(write=False)  # safe to share across concurrent readers
        self.mat = mat


@dataclass
class PureState:
    """Bipartite pure state vector of length dA*dB, unit norm."""

    dims: tuple[int, int]
    vec: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.dims = (int(self.dims[0]), int(self.dims[1]))
        vec = np.asarray(self.vec, dtype=np.complex128).reshape(-1)
        d = self.dims[0] * self.dims[1]
        if vec.shape != (d,):
            raise DimensionMismatch(
                f"dims: vector has length {vec.shape[0]}, dims {self.dims} require {d}"
            )
        if not np.all(np.isfinite(vec)):
            raise InvariantViolation("finiteness: state vector contains NaN or Inf")
        nrm = float(np.linalg.norm(vec))
        if abs(nrm - 1.0) > TOLS.unit_norm:
            raise InvariantViolation(
                f"norm: ||psi|| = {nrm:.12g} differs from 1 by {abs(nrm - 1.0):.3e}"
            )
        vec = vec.copy()
        vec.setflags(write=False)
        self.vec = vec

    def projector(self) -> DensityMatrix:
        return DensityMatrix(dims=self.dims, mat=np.outer(self.vec, self.vec.conj()))


@dataclass
class SchmidtVector:
    """Schmidt coefficients (squared singular values), descending, summing to 1."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).reshape(-1)
        if c.size == 0:
            raise InvariantViolation("shape: empty coefficient vector")
        if c.min() < -1e-15:
            raise InvariantViolation(f"positivity: negative coefficient {c.min():.3e}")
        if np.any(np.diff(c) > 1e-12):
            raise InvariantViolation("order: coefficients must be descending")
        s = float(c.sum())
        if abs(s - 1.0) > TOLS.unit_norm:
            raise InvariantViolation(
                f"normalization: coefficients sum to {s:.12g}, off by {abs(s - 1.0):.3e}"
            )
        self.coeffs = np.maximum(c, 0.0)

    @property
    def largest(self) -> float:
        return float(self.coeffs[0])


def schmidt(psi: PureState) -> tuple[SchmidtVector, np.ndarray, np.ndarray]:
    """Schmidt decomposition of a bipartite pure state.

    Returns ``(lam, basis_a, basis_b)`` with the coefficients descending and
    unitary local bases whose columns satisfy
    ``psi = sum_k sqrt(lam_k) basis_a[:, k] (x) basis_b[:, k]``.
    Basis vectors inside a degenerate coefficient block are
    algorithm-dependent; only the coefficients and the reconstruction are
    promised.
    """
    da, db = psi.dims
    coeff = psi.vec.reshape(da, db)
    u, s, v = svd(coeff)
    # psi_ij = sum_k U_ik s_k conj(V_jk)  =>  B side carries conj(V).
    lam = s * s
    lam = lam / lam.sum()
    return SchmidtVector(coeffs=lam), u, v.conj()


# ---------------------------------------------------------------------------
# File I/O
# ---------------------------------------------------------------------------


def matrix_payload(dims: tuple[int, int], mat: np.ndarray, kind: str | None = None) -> dict:
    """The shared JSON payload for a matrix, as a plain dict."""
    payload: dict = {"dims": [int(dims[0]), int(dims[1])]}
    if kind is not None:
        payload["kind"] = kind
    mat = np.asarray(mat, dtype=np.complex128)
    payload["matrix"] = [[[float(z.real), float(z.imag)] for z in row] for row in mat]
    return payload


def write_matrix_payload(path, dims: tuple[int, int], mat: np.ndarray, kind: str | None = None) -> None:
    Path(path).write_text(json.dumps(matrix_payload(dims, mat, kind)) + "\n")


def read_matrix_payload(path) -> tuple[tuple[int, int], np.ndarray, str | None]:
    """Parse the shared schema; returns (dims, matrix, kind)."""
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvariantViolation(f"parse: cannot read {path}: {exc}") from exc
    if not isinstance(payload, dict) or "dims" not in payload or "matrix" not in payload:
        raise InvariantViolation("parse: payload must be an object with 'dims' and 'matrix'")
    dims = payload["dims"]
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(x, int) and x > 0 for x in dims)
    ):
        raise InvariantViolation(f"dims: expected two positive integers, got {dims!r}")
    d = dims[0] * dims[1]
    rows = payload["matrix"]
    if not isinstance(rows, list) or len(rows) != d:
        raise InvariantViolation(f"shape: expected {d} matrix rows, got {len(rows) if isinstance(rows, list) else type(rows)}")
    mat = np.empty((d, d), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise InvariantViolation(f"shape: row {i} must hold {d} [re, im] pairs")
        for j, pair in enumerate(row):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)
            ):
                raise InvariantViolation(f"shape: entry ({i},{j}) must be a numeric [re, im] pair")
            mat[i, j] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(mat)):
        raise InvariantViolation("finiteness: matrix contains NaN or Inf entries")
    return (dims[0], dims[1]), mat, payload.get("kind")


def save_state(rho: DensityMatrix, path) -> None:
    write_matrix_payload(path, rho.dims, rho.mat)


def load_state(path) -> DensityMatrix:
    """Load and validate a density matrix; load(save(rho)) is bit-exact."""
    dims, mat, kind = read_matrix_payload(path)
    if kind == "witness":
        raise InvariantViolation("kind: file holds a witness, not a state")
    return DensityMatrix(dims=dims, mat=mat)


def load_witness(path) -> Witness:
    dims, mat, kind = read_matrix_payload(path)
    if kind != "witness":
        raise InvariantViolation(
            f"kind: expected a witness file (kind='witness'), got {kind!r}"
        )
    return Witness(dims=dims, mat=mat)


def save_witness(w: Witness, path) -> None:
    write_matrix_payload(path, w.dims, w.mat, kind="witness")


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

# 3x3 PPT entangled state, exact entries n/15.
_PPT_STATE_NUM = [
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 2, 0, 0, 0, -1, -1, 0, 0],
    [0, 0, 2, -1, 0, 0, 0, -1, 0],
    [0, 0, -1, 2, 0, 0, 0, -1, 0],
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, -1, 0, 0, 0, 2, -1, 0, 0],
    [0, -1, 0, 0, 0, -1, 2, 0, 0],
    [0, 0, -1, -1, 0, 0, 0, 2, 0],
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
]
_PPT_STATE_DEN = 15

# Witness from four mutually unbiased bases that detects the state above,
# exact entries n/3.
_MUB_WITNESS_NUM = [
    [4, 0, 0, 0, -1, 0, 0, 0, -1],
    [0, 1, 0, 0, 0, 2, 2, 0, 0],
    [0, 0, 1, 2, 0, 0, 0, 2, 0],
    [0, 0, 2, 1, 0, 0, 0, 2, 0],
    [-1, 0, 0, 0, 4, 0, 0, 0, -1],
    [0, 2, 0, 0, 0, 1, 2, 0, 0],
    [0, 2, 0, 0, 0, 2, 1, 0, 0],
    [0, 0, 2, 2, 0, 0, 0, 1, 0],
    [-1, 0, 0, 0, -1, 0, 0, 0, 4],
]
_MUB_WITNESS_DEN = 3

FIXTURE_NAMES = ("paper_ppt_state", "paper_mub_witness", "bell(d)", "singlet")


def bell_state(d: int) -> PureState:
    """Maximally entangled state (1/sqrt(d)) sum_i |ii> on d x d."""
    if d < 2:
        raise InvariantViolation(f"dimension: d must be >= 2, got {d}")
    vec = np.zeros(d * d, dtype=np.complex128)
    vec[np.arange(d) * d + np.arange(d)] = 1 / np.sqrt(d)
    return PureState(dims=(d, d), vec=vec)


def singlet_state() -> PureState:
    vec = np.zeros(4, dtype=np.complex128)
    vec[1] = 1 / np.sqrt(2)
    vec[2] = -1 / np.sqrt(2)
    return PureState(dims=(2, 2), vec=vec)


def fixture(name: str) -> DensityMatrix | Witness:
    """Built-in reference objects addressed by name.

    ``paper_ppt_state`` and ``paper_mub_witness`` carry exact rational
    entries; ``bell(d)`` and ``singlet`` are the standard maximally
    entangled projectors.
    """
    if name == "paper_ppt_state":
        mat = np.array(_PPT_STATE_NUM, dtype=np.complex128) / _PPT_STATE_DEN
        return DensityMatrix(dims=(3, 3), mat=mat)
    if name == "paper_mub_witness":
        mat = np.array(_MUB_WITNESS_NUM, dtype=np.complex128) / _MUB_WITNESS_DEN
        return Witness(dims=(3, 3), mat=mat)
    if name == "singlet":
        return singlet_state().projector()
    m = re.fullmatch(r"bell\((\d+)\)", name)
    if m:
        return bell_state(int(m.group(1))).projector()
    raise InvariantViolation(
        f"name: unknown fixture {name!r}; valid names: {', '.join(FIXTURE_NAMES)}"
    )
