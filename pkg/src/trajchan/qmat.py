"""Dense complex linear algebra kernel for 1-3 qubit states.

Conventions used throughout the package:

* Subsystem order in every Kronecker product is trajectory (T), information
  (I), auxiliary (H), with T the most significant factor.  One global
  convention; nothing else reorders qubits.
* States are plain ``numpy`` arrays: pure states are 1-d complex vectors,
  density matrices are square complex arrays.
* Entropies are base 2 and reported in bits (equivalently qubits per use).
"""

from __future__ import annotations

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_TOL = 1e-10

ID2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

#: Single-qubit Pauli operators in the fixed (I, X, Y, Z) order.
PAULIS = np.stack([ID2, PAULI_X, PAULI_Y, PAULI_Z])

GATES = {
    "I": ID2,
    "X": PAULI_X,
    "Y": PAULI_Y,
    "Z": PAULI_Z,
    "H": HADAMARD,
}

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = (KET0 + KET1) / np.sqrt(2)
MINUS = (KET0 - KET1) / np.sqrt(2)
#: Right/left circular states, |R> = (|0> - i|1>)/sqrt(2), |L> = (|0> + i|1>)/sqrt(2).
KET_R = (KET0 - 1j * KET1) / np.sqrt(2)
KET_L = (KET0 + 1j * KET1) / np.sqrt(2)

#: Two-qubit maximally entangled probe (|00> + |11>)/sqrt(2).
BELL_PHI_PLUS = (np.kron(KET0, KET0) + np.kron(KET1, KET1)) / np.sqrt(2)


class NumericFault(RuntimeError):
    """An internal numeric consistency check failed.

    Raised when a quantity that is guaranteed valid by construction (e.g. the
    positivity of a layout output state) violates its tolerance; this signals
    a bug or broken input data rather than a plain usage error.
    """


def named_gate(name: str | np.ndarray) -> np.ndarray:
    """Resolve one of the named gates {I, X, Y, Z, H} or pass a matrix through."""
    if isinstance(name, str):
        try:
            return GATES[name.upper()]
        except KeyError:
            raise ValueError(f"unknown gate name {name!r}; expected one of {sorted(GATES)}")
    gate = np.asarray(name, dtype=complex)
    if gate.shape != (2, 2):
        raise ValueError(f"explicit gate must be 2x2, got shape {gate.shape}")
    return gate


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor as the most significant subsystem."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def dm(psi: np.ndarray) -> np.ndarray:
    """Projector |psi><psi| of a pure state vector."""
    v = np.asarray(psi, dtype=complex).ravel()
    return np.outer(v, v.conj())


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    m = np.asarray(m)
    return bool(np.abs(m - m.conj().T).max() <= tol)


def validate_density_matrix(
    rho: np.ndarray,
    herm_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    eig_tol: float = EIGENVALUE_TOL,
) -> np.ndarray:
    """Check the density-matrix invariants, returning the array on success.

    Hermiticity is measured as the max absolute entry deviation from the
    conjugate transpose, the trace must be 1 and all eigenvalues must sit
    above ``-eig_tol``.  Violations raise ``ValueError``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm_dev = np.abs(rho - rho.conj().T).max()
    if herm_dev > herm_tol:
        raise ValueError(f"not Hermitian: max deviation {herm_dev:.3e} > {herm_tol:.1e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} deviates from 1 beyond {trace_tol:.1e}")
    wmin = float(np.linalg.eigvalsh(rho).min())
    if wmin < -eig_tol:
        raise ValueError(f"negative eigenvalue {wmin:.3e} beyond -{eig_tol:.1e}")
    return rho


def is_density_matrix(rho: np.ndarray, **tols: float) -> bool:
    try:
        validate_density_matrix(rho, **tols)
    except ValueError:
        return False
    return True


def partial_trace(rho: np.ndarray, keep, dims) -> np.ndarray:
    """Reduced state on the ``keep`` subsystems of a composite ``rho``.

    ``dims`` lists the subsystem dimensions in tensor order; ``keep`` is a
    non-empty collection of subsystem indices.  Kept subsystems stay in their
    original relative order and the trace is preserved.
    """
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (total, total):
        raise ValueError(f"state dimension {rho.shape} does not match dims {dims}")
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    n = len(dims)
    drop = [i for i in range(n) if i not in keep]
    perm = keep + drop
    t = rho.reshape(dims + dims).transpose(perm + [p + n for p in perm])
    d_keep = int(np.prod([dims[i] for i in keep]))
    t = t.reshape(d_keep, total // d_keep, d_keep, total // d_keep)
    return np.einsum("abcb->ac", t)


def purity(rho: np.ndarray) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy -Tr[rho log2 rho] in bits.

    Eigenvalues in (-1e-10, 1e-10] are treated as exact zeros; a negative
    eigenvalue beyond -1e-10 or a non-Hermitian input is rejected so that
    floating-point noise can never produce a NaN from the logarithm.
    """
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho):
        raise ValueError("entropy requires a Hermitian matrix")
    w = np.linalg.eigvalsh(rho)
    if w.min() < -EIGENVALUE_TOL:
        raise ValueError(f"negative eigenvalue {w.min():.3e} beyond -{EIGENVALUE_TOL:.1e}")
    w = w[w > EIGENVALUE_TOL]
    ent = float(-(w * np.log2(w)).sum())
    if -1e-12 < ent < 0.0:
        return 0.0
    return ent


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def root_fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Square-root fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho))."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    sr = _psd_sqrt(rho)
    w = np.linalg.eigvalsh(sr @ sigma @ sr)
    return float(np.sqrt(np.clip(w, 0.0, None)).sum())


def state_fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.

    Both inputs must be Hermitian positive semidefinite; the square root is
    taken through the Hermitian eigendecomposition.
    """
    return float(np.clip(root_fidelity(rho, sigma) ** 2, 0.0, 1.0))


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state: normalized vector of complex standard normals."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix with phase fixing."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))
