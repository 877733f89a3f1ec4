"""State constructors, unitary representations, and incoherent channels.

Randomness is counter-based (numpy Philox) with explicit seeds threaded
through every sampling call; nothing touches global RNG state. Derived
per-sample streams make experiment output independent of batching.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import assert_density_matrix, matrix_from_json, partial_trace

Seed = "int | np.random.SeedSequence | np.random.Generator"


def as_generator(seed) -> np.random.Generator:
    """Philox generator from an integer seed or SeedSequence; passes Generators through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def derived_stream(seed: int, index: int) -> np.random.Generator:
    """Independent stream for one sample, stable under any sharding of a run."""
    return as_generator(np.random.SeedSequence(seed, spawn_key=(index,)))


# ---------------------------------------------------------------------------
# unitary representations and channels
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """Finite unitary group representation as an explicit element list."""

    dim: int
    elements: tuple

    def validate(self, utol: float = 1e-10, ctol: float = 1e-9) -> None:
        eye = np.eye(self.dim)
        for u in self.elements:
            if u.shape != (self.dim, self.dim):
                raise ValueError("element shape does not match rep dimension")
            if not np.allclose(u @ u.conj().T, eye, atol=utol):
                raise ValueError("element is not unitary within tolerance")
        if not any(np.allclose(u, eye, atol=utol) for u in self.elements):
            raise ValueError("representation does not contain the identity")
        for a in self.elements:
            for b in self.elements:
                prod = a @ b
                if not any(np.allclose(prod, c, atol=ctol) for c in self.elements):
                    raise ValueError("representation is not closed under products")


def rep_swap(d: int) -> UnitaryRep:
    """Two-element group {I, F} on C^d (x) C^d, F the tensor-factor swap."""
    if d < 2:
        raise ValueError("swap rep needs d >= 2")
    n = d * d
    f = np.zeros((n, n), dtype=complex)
    cols = np.arange(n)
    f[(cols % d) * d + cols // d, cols] = 1.0
    rep = UnitaryRep(dim=n, elements=(np.eye(n, dtype=complex), f))
    rep.validate()
    return rep


def rep_cyclic(d: int, n: int) -> UnitaryRep:
    """Z_n acting on C^d by diagonal phases diag(exp(2 pi i k j / n))."""
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    j = np.arange(d)
    els = tuple(np.diag(np.exp(2j * np.pi * k * j / n)) for k in range(n))
    rep = UnitaryRep(dim=d, elements=els)
    rep.validate()
    return rep


def group_average(h: np.ndarray, rep: UnitaryRep) -> np.ndarray:
    """Twirl (1/|G|) sum_g U_g h U_g^dag."""
    us = np.stack(rep.elements)
    return np.einsum("gij,jk,glk->il", us, np.asarray(h, dtype=complex), us.conj()) / len(rep.elements)


def dephase(rho: np.ndarray) -> np.ndarray:
    """Keep only the diagonal in the computational basis."""
    rho = np.asarray(rho, dtype=complex)
    return np.diag(np.diag(rho).real).astype(complex)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """CPTP map given by Kraus operators, sum_i K_i^dag K_i = I."""

    operators: tuple

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def validate(self, tol: float = 1e-10) -> None:
        acc = sum(k.conj().T @ k for k in self.operators)
        if not np.allclose(acc, np.eye(self.dim), atol=tol):
            raise ValueError("Kraus operators do not satisfy completeness")

    def is_incoherent(self, tol: float = 1e-12) -> bool:
        """True when every operator has at most one nonzero entry per column."""
        return all(
            int((np.abs(k[:, j]) > tol).sum()) <= 1
            for k in self.operators for j in range(k.shape[1])
        )

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return sum(k @ rho @ k.conj().T for k in self.operators)

    def outcomes(self, rho: np.ndarray) -> list:
        """Selective measurement outcomes [(p_i, rho_i)], skipping p_i < 1e-12."""
        out = []
        for k in self.operators:
            m = k @ rho @ k.conj().T
            p = float(m.trace().real)
            if p > 1e-12:
                out.append((p, m / p))
        return out


def random_incoherent_kraus(d: int, k: int, seed) -> KrausChannel:
    """Random incoherent channel: permutation patterns with complex weights,
    columns rescaled so the operators are complete."""
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    rng = as_generator(seed)
    perms = [rng.permutation(d) for _ in range(k)]
    w = rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d))
    w /= np.sqrt((np.abs(w) ** 2).sum(axis=0, keepdims=True))
    ops = []
    for i in range(k):
        ki = np.zeros((d, d), dtype=complex)
        ki[perms[i], np.arange(d)] = w[i]
        ops.append(ki)
    ch = KrausChannel(operators=tuple(ops))
    ch.validate()
    return ch


def group_mixture_kraus(rep: UnitaryRep, probs) -> KrausChannel:
    """Covariant channel mixing group elements with the given probabilities."""
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (len(rep.elements),) or probs.min() < 0 or abs(probs.sum() - 1) > 1e-12:
        raise ValueError("probs must be a distribution over the rep elements")
    ops = tuple(np.sqrt(p) * u for p, u in zip(probs, rep.elements) if p > 0)
    ch = KrausChannel(operators=ops)
    ch.validate()
    return ch


# ---------------------------------------------------------------------------
# named state families
# ---------------------------------------------------------------------------

def maximally_coherent(d: int) -> np.ndarray:
    """Uniform-superposition state, all entries 1/d."""
    if d < 1:
        raise ValueError("need d >= 1")
    return np.full((d, d), 1.0 / d, dtype=complex)


def werner(d: int, alpha: float) -> np.ndarray:
    """Werner family alpha (I - F) / (d(d-1)) + (1 - alpha) I / d^2 on C^d (x) C^d."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    f = rep_swap(d).elements[1]
    n = d * d
    rho = alpha * (np.eye(n) - f) / (d * (d - 1)) + (1.0 - alpha) * np.eye(n) / n
    return assert_density_matrix(rho)


def gisin(lam: float, theta: float) -> np.ndarray:
    """Two-qubit mix of sin(t)|01> - cos(t)|10> with (|00><00| + |11><11|)/2."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    psi = np.zeros(4, dtype=complex)
    psi[1] = np.sin(theta)
    psi[2] = -np.cos(theta)
    sigma0 = np.zeros((4, 4), dtype=complex)
    sigma0[0, 0] = sigma0[3, 3] = 0.5
    rho = lam * np.outer(psi, psi.conj()) + (1.0 - lam) * sigma0
    return assert_density_matrix(rho)


@dataclass(frozen=True)
class XStateSpec:
    """Generalized X state: diagonal entries plus anti-diagonal couplings.

    anti[k] couples positions (k, d-1-k) for k < d // 2; for odd d the central
    diagonal entry is uncoupled. Each 2x2 block must be PSD and the diagonal
    must sum to 1.
    """

    diag: tuple
    anti: tuple

    @property
    def dim(self) -> int:
        return len(self.diag)

    def validate(self, tol: float = 1e-10) -> None:
        d = self.dim
        if len(self.anti) != d // 2:
            raise ValueError(f"expected {d // 2} couplings for dim {d}")
        p = np.asarray(self.diag, dtype=float)
        if p.min() < -tol or abs(p.sum() - 1.0) > 1e-9:
            raise ValueError("diagonal is not a probability vector")
        for k, c in enumerate(self.anti):
            if p[k] * p[d - 1 - k] + tol < abs(c) ** 2:
                raise ValueError(f"block {k} is not PSD")


def generalized_x(spec: XStateSpec) -> np.ndarray:
    """Assemble the density matrix for an X-state spec."""
    spec.validate()
    d = spec.dim
    rho = np.diag(np.asarray(spec.diag, dtype=complex))
    for k, c in enumerate(spec.anti):
        rho[k, d - 1 - k] = c
        rho[d - 1 - k, k] = np.conj(c)
    return assert_density_matrix(rho)


def random_x_spec(d: int, seed) -> XStateSpec:
    """Random X-state spec with strictly PSD blocks."""
    rng = as_generator(seed)
    p = rng.exponential(size=d)
    p /= p.sum()
    anti = []
    for k in range(d // 2):
        mag = np.sqrt(p[k] * p[d - 1 - k]) * rng.uniform(0.0, 0.999)
        anti.append(mag * np.exp(2j * np.pi * rng.uniform()))
    return XStateSpec(diag=tuple(p), anti=tuple(anti))


# ---------------------------------------------------------------------------
# Haar sampling
# ---------------------------------------------------------------------------

def haar_random_unitary(d: int, seed) -> np.ndarray:
    """Haar unitary via QR of a complex Ginibre matrix with R-phase correction."""
    rng = as_generator(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    ph = np.diag(r)
    return q * (ph / np.abs(ph))


def haar_random_pure(d: int, seed) -> np.ndarray:
    """Haar-random pure state on C^d."""
    psi = haar_random_unitary(d, seed)[:, 0]
    return np.outer(psi, psi.conj())


def haar_random_mixed(d: int, d_env: int, seed) -> np.ndarray:
    """Induced random mixed state: trace an environment of dimension d_env
    out of a Haar pure state on d * d_env."""
    rho_full = haar_random_pure(d * d_env, seed)
    return partial_trace(rho_full, (d, d_env), keep=1)


# ---------------------------------------------------------------------------
# CLI state-spec strings
# ---------------------------------------------------------------------------

def parse_state_spec(text: str) -> np.ndarray:
    """Build a state from a spec string.

    Supported forms:
      werner:d=3,alpha=0.5
      gisin:lambda=0.8,theta=0.7854
      haar-mixed:d=4,denv=4,seed=42
      haar-pure:d=3,seed=7
      max-coherent:d=4
      file:/path/to/matrix.json
    """
    family, _, rest = text.partition(":")
    family = family.strip().lower()
    if family == "file":
        import json

        with open(rest, "r", encoding="utf-8") as fh:
            return assert_density_matrix(matrix_from_json(json.load(fh)))
    kv = {}
    if rest:
        for item in rest.split(","):
            key, _, val = item.partition("=")
            if not _:
                raise ValueError(f"malformed state parameter {item!r}")
            kv[key.strip().lower()] = val.strip()
    try:
        if family == "werner":
            return werner(int(kv["d"]), float(kv["alpha"]))
        if family == "gisin":
            return gisin(float(kv["lambda"]), float(kv["theta"]))
        if family == "haar-mixed":
            return haar_random_mixed(int(kv["d"]), int(kv["denv"]), int(kv["seed"]))
        if family == "haar-pure":
            return haar_random_pure(int(kv["d"]), int(kv["seed"]))
        if family == "max-coherent":
            return maximally_coherent(int(kv["d"]))
    except KeyError as exc:
        raise ValueError(f"state spec {text!r} is missing parameter {exc}") from exc
    raise ValueError(f"unknown state family {family!r}")
