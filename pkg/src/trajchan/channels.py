"""Single-qubit CPTP channels in Kraus form.

Provides the four named noise families used throughout (XY, bit-flip,
phase-flip, BB84), generic Pauli mixtures, series/classical composition and
Haar/QR-based random channel generation.  A channel is a small dataclass
wrapping a stack of Kraus operators; all maps act as
``rho -> sum_i K_i rho K_i^dag``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import qmat

CPTP_TOL = 1e-10
#: Looser completeness tolerance used for QR-generated random channels.
CPTP_TOL_RANDOM = 1e-9

_PAULI_LABELS = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class PauliMixture:
    """Probabilities (w_I, w_X, w_Y, w_Z) of applying each Pauli operation."""

    weights: tuple[float, float, float, float]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) != 4:
            raise ValueError("a Pauli mixture needs exactly four weights (I, X, Y, Z)")
        if any(x < 0.0 or x > 1.0 for x in w):
            raise ValueError(f"weights must lie in [0, 1], got {w}")
        if abs(sum(w) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1 within 1e-12, got sum {sum(w)!r}")
        object.__setattr__(self, "weights", w)


@dataclass(eq=False)
class KrausChannel:
    """A qubit CPTP map given by Kraus operators ``ops`` of shape (k, 2, 2).

    Constructors emit at most 4 operators (only nonzero-weight terms are
    stored); ``compose_series`` and ``classical_mixture`` may carry up to 16.
    Completeness sum_i K_i^dag K_i = I is checked on construction.
    """

    ops: np.ndarray
    label: str = ""
    cptp_tol: float = field(default=CPTP_TOL, repr=False)

    def __post_init__(self):
        ops = np.asarray(self.ops, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None]
        if ops.ndim != 3 or ops.shape[1:] != (2, 2):
            raise ValueError(f"Kraus operators must have shape (k, 2, 2), got {ops.shape}")
        if not 1 <= ops.shape[0] <= 16:
            raise ValueError(f"expected between 1 and 16 Kraus operators, got {ops.shape[0]}")
        self.ops = ops
        if not is_cptp(ops, self.cptp_tol):
            dev = _completeness_deviation(ops)
            raise ValueError(
                f"Kraus set is not trace preserving: |sum K^dag K - I|_max = {dev:.3e}"
            )

    @property
    def n_ops(self) -> int:
        return self.ops.shape[0]

    dim_in = 2
    dim_out = 2


def _completeness_deviation(ops: np.ndarray) -> float:
    s = np.einsum("kba,kbc->ac", ops.conj(), ops)
    return float(np.abs(s - np.eye(2)).max())


def is_cptp(ch: KrausChannel | np.ndarray, tol: float = CPTP_TOL) -> bool:
    """True iff the Kraus completeness sum deviates from identity by at most ``tol``."""
    ops = ch.ops if isinstance(ch, KrausChannel) else np.asarray(ch, dtype=complex)
    return _completeness_deviation(ops) <= tol


def pauli_mixture_channel(mix: PauliMixture, label: str = "") -> KrausChannel:
    """Channel applying Pauli sigma with probability w_sigma; Kraus ops sqrt(w) sigma.

    Only operators with nonzero weight are stored, so e.g. the weights
    (1, 0, 0, 0) give the identity channel with a single Kraus operator.
    """
    ops = [np.sqrt(w) * qmat.PAULIS[i] for i, w in enumerate(mix.weights) if w > 0.0]
    if not label:
        label = "pauli(" + ",".join(f"{w:g}" for w in mix.weights) + ")"
    return KrausChannel(np.stack(ops), label=label)


def _check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return p


def identity_channel() -> KrausChannel:
    return pauli_mixture_channel(PauliMixture((1.0, 0.0, 0.0, 0.0)), label="identity")


def xy_channel(p: float) -> KrausChannel:
    """X with probability 1-p, Y with probability p."""
    p = _check_probability(p)
    return pauli_mixture_channel(PauliMixture((0.0, 1.0 - p, p, 0.0)), label=f"xy({p:g})")


def bit_flip(p: float) -> KrausChannel:
    """Identity with probability 1-p, X with probability p."""
    p = _check_probability(p)
    return pauli_mixture_channel(PauliMixture((1.0 - p, p, 0.0, 0.0)), label=f"bit_flip({p:g})")


def phase_flip(p: float) -> KrausChannel:
    """Identity with probability 1-p, Z with probability p."""
    p = _check_probability(p)
    return pauli_mixture_channel(PauliMixture((1.0 - p, 0.0, 0.0, p)), label=f"phase_flip({p:g})")


def bb84(p: float) -> KrausChannel:
    """Independent X and Z flips, each with probability p.

    Weights (I, X, Y, Z) = ((1-p)^2, (1-p)p, p^2, (1-p)p); completely
    depolarizing at p = 1/2.
    """
    p = _check_probability(p)
    w = ((1.0 - p) ** 2, (1.0 - p) * p, p ** 2, (1.0 - p) * p)
    return pauli_mixture_channel(PauliMixture(w), label=f"bb84({p:g})")


def apply(ch: KrausChannel, rho: np.ndarray, target: int = 0, dims=None) -> np.ndarray:
    """Apply ``ch`` to subsystem ``target`` of ``rho`` with subsystem sizes ``dims``.

    With ``dims=None`` the state is taken to be a bare qubit.  Trace and
    Hermiticity are preserved by construction.
    """
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if rho.shape != (d, d):
        raise ValueError(f"state must be square, got {rho.shape}")
    if dims is None:
        dims = [2] * int(round(np.log2(d)))
    dims = [int(x) for x in dims]
    if int(np.prod(dims)) != d:
        raise ValueError(f"dims {dims} do not match state dimension {d}")
    if not 0 <= target < len(dims):
        raise ValueError(f"target {target} out of range for {len(dims)} subsystems")
    if dims[target] != 2:
        raise ValueError(f"target subsystem has dimension {dims[target]}, channel needs 2")
    before = int(np.prod(dims[:target])) if target > 0 else 1
    after = int(np.prod(dims[target + 1:])) if target + 1 < len(dims) else 1
    out = np.zeros_like(rho)
    for k in ch.ops:
        lifted = np.kron(np.eye(before), np.kron(k, np.eye(after)))
        out += lifted @ rho @ lifted.conj().T
    return out


def compose_series(first: KrausChannel, second: KrausChannel) -> KrausChannel:
    """Series composition (first then second): Kraus set {B_j A_i} for all i, j."""
    ops = np.stack([b @ a for a in first.ops for b in second.ops])
    return KrausChannel(ops, label=f"{second.label}*{first.label}")


def classical_mixture(q: float, a: KrausChannel, b: KrausChannel) -> KrausChannel:
    """Channel ``a`` with probability q, channel ``b`` with probability 1-q."""
    q = _check_probability(q)
    ops = []
    if q > 0.0:
        ops.extend(np.sqrt(q) * k for k in a.ops)
    if q < 1.0:
        ops.extend(np.sqrt(1.0 - q) * k for k in b.ops)
    return KrausChannel(np.stack(ops), label=f"mix({q:g};{a.label},{b.label})")


def random_channel(rng: np.random.Generator) -> KrausChannel:
    """Random CPTP qubit channel from a Haar-random 2 -> 8 isometry.

    Draws an 8x2 complex Ginibre matrix C = (A + iB)/sqrt(2) with A, B real
    standard normal, takes the economy-size QR decomposition C = QR, fixes the
    phases with R' = diag(diag(R)/|diag(R)|) so V = QR' is a random isometry,
    and slices V row-blocks into the four Kraus operators
    K_e[r, c] = V[2e + r, c].
    """
    a = rng.standard_normal((8, 2))
    b = rng.standard_normal((8, 2))
    c = (a + 1j * b) / np.sqrt(2)
    q, r = np.linalg.qr(c, mode="reduced")
    d = np.diag(r)
    v = q * (d / np.abs(d))
    ops = v.reshape(4, 2, 2)
    return KrausChannel(ops, label="random", cptp_tol=CPTP_TOL_RANDOM)


def sample_pauli_ops(mix: PauliMixture, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` Pauli unitaries i.i.d. from the mixture; shape (n, 2, 2)."""
    if n < 1:
        raise ValueError("need at least one operation")
    idx = rng.choice(4, size=n, p=np.asarray(mix.weights))
    return qmat.PAULIS[idx]


def mixture_of(family: str, p: float) -> PauliMixture:
    """Pauli mixture of a named channel family at noise strength ``p``."""
    family = family.lower()
    p = _check_probability(p)
    if family == "xy":
        return PauliMixture((0.0, 1.0 - p, p, 0.0))
    if family in ("bf", "bit_flip"):
        return PauliMixture((1.0 - p, p, 0.0, 0.0))
    if family in ("pf", "phase_flip"):
        return PauliMixture((1.0 - p, 0.0, 0.0, p))
    if family == "bb84":
        return PauliMixture(((1.0 - p) ** 2, (1.0 - p) * p, p ** 2, (1.0 - p) * p))
    if family == "identity":
        return PauliMixture((1.0, 0.0, 0.0, 0.0))
    raise ValueError(f"unknown channel family {family!r}")


def named_channel(name: str, p: float = 0.0) -> KrausChannel:
    """Build a channel from a family name: identity, xy, bit_flip, phase_flip or bb84."""
    name = name.lower()
    if name == "identity":
        return identity_channel()
    builders = {"xy": xy_channel, "bit_flip": bit_flip, "bf": bit_flip,
                "phase_flip": phase_flip, "pf": phase_flip, "bb84": bb84}
    if name not in builders:
        raise ValueError(f"unknown channel family {name!r}")
    return builders[name](p)


# -- JSON interchange -------------------------------------------------------
#
# A channel serializes to {"label": str, "kraus": [op, ...]} where each op is
# its row-major list of [re, im] entry pairs (4 pairs for a 2x2 operator).

def channel_to_dict(ch: KrausChannel) -> dict:
    kraus = [[[float(z.real), float(z.imag)] for z in op.ravel()] for op in ch.ops]
    return {"label": ch.label, "kraus": kraus}


def channel_from_dict(data: dict) -> KrausChannel:
    ops = []
    for entries in data["kraus"]:
        flat = np.array([complex(re, im) for re, im in entries])
        n = int(round(np.sqrt(flat.size)))
        if n * n != flat.size or n != 2:
            raise ValueError(f"expected a row-major 2x2 operator, got {flat.size} entries")
        ops.append(flat.reshape(n, n))
    return KrausChannel(np.stack(ops), label=str(data.get("label", "")),
                        cptp_tol=CPTP_TOL_RANDOM)


def channel_to_json(ch: KrausChannel) -> str:
    return json.dumps(channel_to_dict(ch))


def channel_from_json(text: str) -> KrausChannel:
    return channel_from_dict(json.loads(text))
