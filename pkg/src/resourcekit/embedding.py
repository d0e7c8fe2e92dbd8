"""Coherence-to-correlation embedding.

A d-level system is joined by d ancilla qubits; a permutation unitary flips
ancilla qubit i exactly on basis level i, so each level acquires its own
flag.  The embedding converts basis-support structure into tensor-product
structure: a pure state occupying r levels embeds into a state whose finest
factorization has one entangled block of r+1 subsystems plus d-r untouched
ancillas.  Consequences checked here:

* rank/depth correspondence for pure states (separability depth d-r+1 and
  entanglement depth r+1 for r >= 2; fully product for r = 1);
* affinity preservation of the embedding (unitary + pure ancilla);
* transport of coherence witnesses to correlation witnesses, which turns
  every order-k coherence bound into bounds on the correlation indicators
  of the embedded state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DimensionMismatch, DTooLarge, FeasibilityCheckFailed, KOutOfRange
from .feasible import (
    WitnessComponent,
    _coarsens,
    build_family,
    coherent_rank_pure,
    enumerate_partitions,
    factorize_pure,
)
from .indicators import _variant_value, max_affinity, multilevel_coherence
from .states import DensityMatrix, PureState, _trusted, pure_state

MIN_D, MAX_D = 2, 4


@dataclass(frozen=True, eq=False)
class EmbeddingMap:
    """Flag-ancilla embedding for a d-level system (d ancilla qubits)."""

    d: int
    unitary: np.ndarray
    dims: tuple[int, ...]

    @property
    def total_dim(self) -> int:
        return self.d * 2 ** self.d


def build_embedding(d: int) -> EmbeddingMap:
    """Dense flag unitary: on level i, flip ancilla qubit i.

    Each block is a bit flip, so the unitary is a real 0/1 permutation
    matrix and its own inverse.
    """
    if not MIN_D <= d <= MAX_D:
        raise DTooLarge(f"embedding supports {MIN_D} <= d <= {MAX_D}, got {d}")
    anc = 2 ** d
    u = np.zeros((d * anc, d * anc))
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    for i in range(d):
        block = np.array([[1.0]])
        for j in range(d):
            block = np.kron(block, sx if j == i else np.eye(2))
        u[i * anc:(i + 1) * anc, i * anc:(i + 1) * anc] = block
    u.setflags(write=False)
    return EmbeddingMap(d, u, (d,) + (2,) * d)


def _flag_index(emb: EmbeddingMap, level: int) -> int:
    """Ancilla basis index with qubit `level` set (big-endian qubit order)."""
    return 1 << (emb.d - 1 - level)


def embed_pure(emb: EmbeddingMap, psi: PureState) -> PureState:
    """|i> -> |i> (x) |0..010..0> with the 1 on ancilla qubit i."""
    if psi.d != emb.d:
        raise DimensionMismatch(f"state dimension {psi.d} != embedding dimension {emb.d}")
    anc = 2 ** emb.d
    out = np.zeros(emb.d * anc, dtype=complex)
    for i, c in enumerate(psi.amps):
        out[i * anc + _flag_index(emb, i)] = c
    return pure_state(out, emb.dims)


def embed_state(emb: EmbeddingMap, rho: DensityMatrix) -> DensityMatrix:
    """Conjugate rho (x) |0><0|^d by the flag unitary; trace preserved."""
    if rho.d != emb.d:
        raise DimensionMismatch(f"state dimension {rho.d} != embedding dimension {emb.d}")
    anc = 2 ** emb.d
    padded = np.zeros((emb.d * anc, emb.d * anc), dtype=complex)
    padded[::anc, ::anc] = rho.data  # ancillas in |0..0> occupy stride-anc slots
    out = emb.unitary @ padded @ emb.unitary.T
    return _trusted(out, emb.dims)


def map_witness(emb: EmbeddingMap, sigma: DensityMatrix) -> DensityMatrix:
    """Embed a witness state; affinity with any embedded state is preserved
    (unitary invariance plus multiplicativity with the pure ancilla)."""
    return embed_state(emb, sigma)


def _embedded_partition(emb: EmbeddingMap, support) -> tuple[tuple[int, ...], ...]:
    """Structural factorization of an embedded support-restricted pure state:
    the source plus the flagged ancillas form one part, the rest stay free."""
    support = set(support)
    big = tuple(sorted({0} | {1 + i for i in support}))
    parts = [big] + [(1 + j,) for j in range(emb.d) if j not in support]
    return tuple(sorted(parts))


def map_components(emb: EmbeddingMap, components):
    """Embed mixture components, attaching their structural partitions."""
    out = []
    for comp in components:
        support = comp.structure
        if support is None:
            mags = np.abs(comp.state.amps)
            support = tuple(np.flatnonzero(mags > 1e-14 * mags.max()).tolist())
        out.append(WitnessComponent(comp.weight, embed_pure(emb, comp.state),
                                    _embedded_partition(emb, support)))
    return out


def depth_correspondence_pure(emb: EmbeddingMap, psi: PureState, tol: float = 1e-9) -> dict:
    """Rank of the source state and both depths of its embedding.

    Asserts the correspondence: rank r >= 2 gives separability depth
    d - r + 1 and entanglement depth r + 1; rank 1 gives a fully product
    embedding (depths d + 1 and 1).
    """
    rank = coherent_rank_pure(psi, tol)
    fac = factorize_pure(embed_pure(emb, psi))
    sep, ent = fac.separability_depth, fac.entanglement_depth
    if rank == 1:
        expected = (emb.d + 1, 1)
    else:
        expected = (emb.d - rank + 1, rank + 1)
    if (sep, ent) != expected:
        raise ArithmeticError(
            f"depth correspondence violated: rank {rank} gave depths {(sep, ent)}, "
            f"expected {expected}")
    return {"rank": rank, "sep_depth": sep, "ent_depth": ent}


# ---------------------------------------------------------------------------
# Witness-transported inequality checks.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransportRow:
    lhs_label: str
    rhs_label: str
    lhs: float
    rhs: float
    slack: float
    witness_feasible: bool


def _check_mapped_feasibility(mapped, sep_k: int, prod_k: int) -> None:
    """Re-derive each mapped component's factorization and verify it against
    the structural partition; failures raise rather than being dropped.

    The recomputed factorization may be finer than the structural one (a
    support amplitude can be numerically zero); it must never be coarser.
    """
    for comp in mapped:
        fac = factorize_pure(comp.state)
        if not _coarsens(comp.structure, fac.parts):
            raise FeasibilityCheckFailed(
                f"mapped component factorizes as {fac.parts}, which does not "
                f"refine the structural partition {comp.structure}")
        if fac.separability_depth < sep_k or fac.entanglement_depth > prod_k:
            raise FeasibilityCheckFailed(
                f"mapped component depths {(fac.separability_depth, fac.entanglement_depth)} "
                f"violate the target families (>= {sep_k} parts, parts <= {prod_k})")


def theorem3_check(rho: DensityMatrix, k: int, alpha: float, *, seed,
                   restarts: int = 2, max_iter: int = 200, tol: float = 1e-10,
                   coh_opts=None) -> list[TransportRow]:
    """Transport an order-k coherence witness through the embedding and
    certify the four induced correlation bounds on the embedded state.

    The coherence run uses one family slot per support subset so mapped
    components occupy distinct structural partitions.  Each correlation
    optimization is seeded with the mapped witness; since the injected
    point is feasible and reproduces the coherence affinity exactly, every
    resulting bound must come out at or below the coherence bound.
    """
    d = rho.d
    if not MIN_D <= d <= 3:
        raise DTooLarge(f"transport check supports 2 <= d <= 3, got {d}")
    if not 2 <= k <= d:
        raise KOutOfRange(f"need 2 <= k <= {d}, got {k}")
    emb = build_embedding(d)
    coh_opts = dict(coh_opts or {})
    coh_opts.setdefault("restarts", restarts)
    coh_opts.setdefault("max_iter", max_iter)
    coh_opts.setdefault("tol", tol)
    coh = multilevel_coherence(rho, k, alpha, "plain", seed=seed,
                               m=comb(d, k - 1), **coh_opts)
    mapped = map_components(emb, coh.components)
    sep_k = d - k + 2
    prod_k = k
    _check_mapped_feasibility(mapped, sep_k, prod_k)
    rho2 = embed_state(emb, rho)

    sep_family = build_family("separable", emb.dims, sep_k,
                              m=_slots_for(emb.dims, "separable", sep_k))
    prod_family = build_family("producible", emb.dims, prod_k,
                               m=_slots_for(emb.dims, "producible", prod_k))
    sep_res = max_affinity(rho2, sep_family, alpha, seed=seed, restarts=restarts,
                           max_iter=max_iter, tol=tol, init_witnesses=[mapped])
    prod_res = max_affinity(rho2, prod_family, alpha, seed=seed, restarts=restarts,
                            max_iter=max_iter, tol=tol, init_witnesses=[mapped])

    coh_plain = 1.0 - coh.best_affinity
    coh_avg = _variant_value(coh.best_affinity, alpha, "avg")
    rows = []
    for variant, coh_val in (("plain", coh_plain), ("avg", coh_avg)):
        suffix = "" if variant == "plain" else "_avg"
        rows.append(_row(f"nonseparability{suffix}[k={sep_k}]",
                         f"coherence{suffix}[k={k}]",
                         _variant_value(sep_res.affinity, alpha, variant), coh_val))
        rows.append(_row(f"entanglement{suffix}[k={k + 1}]",
                         f"coherence{suffix}[k={k}]",
                         _variant_value(prod_res.affinity, alpha, variant), coh_val))
    return rows


def _slots_for(dims, kind, k) -> int:
    n = len(dims)
    if kind == "separable":
        return len(enumerate_partitions(n, exactly_k_parts=k).partitions)
    return len(enumerate_partitions(n, max_part_size=min(k, n)).partitions)


def _row(lhs_label, rhs_label, lhs, rhs) -> TransportRow:
    return TransportRow(lhs_label, rhs_label, float(lhs), float(rhs),
                        float(rhs) - float(lhs), True)


def transport_report_json(rows) -> str:
    return json.dumps({"rows": [{"lhs_label": r.lhs_label, "rhs_label": r.rhs_label,
                                 "lhs": r.lhs, "rhs": r.rhs, "slack": r.slack,
                                 "witness_feasible": r.witness_feasible}
                                for r in rows]})
