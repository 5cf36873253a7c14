"""Classical-capacity bounds for the mixed-unitary channels in this package.

The lower bound is the best single-basis classical capacity; the upper bound
comes from grouping the sorted Kraus weights into d blocks of d (the grouped
weight vector majorizes every output spectrum, so its entropy lower-bounds
the minimal output entropy).  Both are in nats.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .channels import (
    EigenvalueVector,
    GeneralizedPauliChannel,
    WeylChannel,
    classical_map_t,
    require_cp,
)
from .numerics import _entropy, as_distribution

COINCIDENCE_TOL = 1e-9


def _h(vec: np.ndarray) -> float:
    # entropy of an unnormalized-but-nearly-valid block vector
    return _entropy(np.clip(vec, 0.0, None))


def _xlogx(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, None)
    out = np.zeros_like(x)
    mask = x > 0.0
    out[mask] = x[mask] * np.log(x[mask])
    return out


def holevo_lower_bound(e: EigenvalueVector) -> Tuple[float, int]:
    """Best single-basis capacity and the 1-based basis index attaining it.

    Per basis the value is
    [1+(d-1)L]/d * ln[1+(d-1)L] + (d-1)(1-L)/d * ln(1-L),
    the capacity of the symmetric classical channel induced on that basis.
    """
    require_cp(e)
    d = e.dimension
    lam = e.values
    terms = _xlogx(1.0 + (d - 1.0) * lam) / d + (d - 1.0) / d * _xlogx(1.0 - lam)
    alpha = int(np.argmax(terms)) + 1
    return float(terms[alpha - 1]), alpha


def holevo_lower_via_classical(e: EigenvalueVector) -> float:
    """Same bound through the induced transition matrices: ln d - min row entropy."""
    require_cp(e)
    d = e.dimension
    row_entropies = [
        _h(classical_map_t(e, alpha)[0]) for alpha in range(1, d + 2)
    ]
    return float(np.log(d) - min(row_entropies))


def zeta_vector(multiset, block_size: int) -> np.ndarray:
    """Sort a D^2-element weight multiset and sum consecutive blocks of D."""
    arr = as_distribution(multiset)
    if arr.size != block_size**2:
        raise ValueError(
            f"need {block_size**2} weights for block size {block_size}, got {arr.size}"
        )
    return np.sort(arr)[::-1].reshape(block_size, block_size).sum(axis=1)


def holevo_upper_bound_weyl(w: WeylChannel) -> float:
    """Upper bound straight from the channel's weight multiset."""
    dim = w.dimension
    return float(np.log(dim) - _h(zeta_vector(w.probabilities, dim)))


@dataclass(frozen=True)
class ZetaComponents:
    """Closed-form block sums of the sorted Kraus weights.

    The weight multiset holds the identity weight once and d-1 copies of each
    basis weight share.  After sorting, block k of d entries is one of:

    - plain_blocks[k-1]: copies only, identity weight not yet reached;
    - shifted_blocks[k-1]: copies only, identity weight consumed earlier
      (the copy pattern is shifted by one slot);
    - straddle_blocks[k-1]: the block that contains the identity weight;
    - merged_blocks[k-1]: identity weight plus every copy of family k
      (the straddle block at the extremes; length d+1).

    `region` is the 1-based index of the block holding the identity weight,
    and `zeta` the assembled non-increasing distribution of length d.
    Arrays from the eigenvalue form and the probability form agree entrywise.
    """

    dimension: int
    region: int
    zeta: np.ndarray
    plain_blocks: np.ndarray
    shifted_blocks: np.ndarray
    straddle_blocks: np.ndarray
    merged_blocks: np.ndarray
    permutation: np.ndarray

    def zeta_for_region(self, region: int) -> np.ndarray:
        """Assemble the block vector as if the identity weight sat in `region`.

        Used to check continuity: at a boundary the assemblies for the two
        adjacent regions coincide.
        """
        return _assemble_zeta(
            self.dimension, region, self.plain_blocks, self.shifted_blocks,
            self.straddle_blocks,
        )


def _assemble_zeta(d, region, plain, shifted, straddle):
    if not 1 <= region <= d:
        raise ValueError(f"region {region} out of range 1..{d}")
    z = np.empty(d)
    z[: region - 1] = plain[: region - 1]
    z[region - 1] = straddle[region - 1]
    z[region:] = shifted[region:]
    return z


def _components_from_blocks(d, region, plain, shifted, straddle, merged, perm):
    return ZetaComponents(
        dimension=d,
        region=region,
        zeta=_assemble_zeta(d, region, plain, shifted, straddle),
        plain_blocks=plain,
        shifted_blocks=shifted,
        straddle_blocks=straddle,
        merged_blocks=merged,
        permutation=perm,
    )


def holevo_upper_bound(e: EigenvalueVector) -> Tuple[float, ZetaComponents]:
    """Closed-form upper bound from the eigenvalue view.

    With eigenvalues sorted non-increasingly and S their sum, the identity
    weight sits in block r = 1 + #{m in 2..d : L_m > S} (ties resolve to the
    lower region; the assemblies agree there).  Block values, 1-based k:

    plain_k    = [1 + (d-k) L_k + k L_{k+1} - S] / d
    shifted_k  = [1 + (d+1-k) L_k + (k-1) L_{k+1} - S] / d
    straddle_k = [1 + (d-k) L_k + (k-1) L_{k+1}] / d
    merged_k   = [1 + (d-1) L_k] / d
    """
    require_cp(e)
    d = e.dimension
    perm = np.argsort(-e.values, kind="stable")
    lam = e.values[perm]
    total = lam.sum()
    k = np.arange(1, d + 1, dtype=float)
    head, tail = lam[:d], lam[1:]
    plain = (1.0 + (d - k) * head + k * tail - total) / d
    shifted = (1.0 + (d + 1 - k) * head + (k - 1) * tail - total) / d
    straddle = (1.0 + (d - k) * head + (k - 1) * tail) / d
    merged = (1.0 + (d - 1.0) * lam) / d
    region = 1 + int(np.count_nonzero(lam[1:d] > total))
    comps = _components_from_blocks(d, region, plain, shifted, straddle, merged, perm)
    return float(np.log(d) - _h(comps.zeta)), comps


def zeta_components_p_form(c: GeneralizedPauliChannel) -> ZetaComponents:
    """The same block sums computed from the probability view.

    With basis weights sorted so p_1 >= ... >= p_{d+1} and p_0 the identity
    weight, block values are (1-based k):

    plain_k    = [(d-k) p_k + k p_{k+1}] / (d-1)
    shifted_k  = [(d+1-k) p_k + (k-1) p_{k+1}] / (d-1)
    straddle_k = [(d-k) p_k + (k-1) p_{k+1}] / (d-1) + p_0
    merged_k   = p_0 + p_k

    and the identity weight sits in block
    r = 1 + #{m in 2..d : p_m/(d-1) > p_0}.
    """
    d = c.dimension
    p0 = c.probabilities[0]
    rest = c.probabilities[1:]
    perm = np.argsort(-rest, kind="stable")
    ps = rest[perm]
    k = np.arange(1, d + 1, dtype=float)
    head, tail = ps[:d], ps[1:]
    plain = ((d - k) * head + k * tail) / (d - 1.0)
    shifted = ((d + 1 - k) * head + (k - 1) * tail) / (d - 1.0)
    straddle = ((d - k) * head + (k - 1) * tail) / (d - 1.0) + p0
    merged = p0 + ps
    region = 1 + int(np.count_nonzero(ps[1:d] / (d - 1.0) > p0))
    return _components_from_blocks(d, region, plain, shifted, straddle, merged, perm)


@dataclass(frozen=True)
class CapacityBounds:
    """Lower/upper Holevo-capacity bounds and, when they meet, the capacity."""

    dimension: int
    chi_low: float
    chi_up: float
    coincide: bool
    exact_capacity: Optional[float]
    maximizing_alpha: int


def pauli_classical_capacity(e: EigenvalueVector) -> float:
    """Qubit closed form: driven by the largest-magnitude eigenvalue."""
    if e.dimension != 2:
        raise ValueError(f"qubit closed form needs d=2, got d={e.dimension}")
    require_cp(e)
    star = float(np.max(np.abs(e.values)))
    return float(_xlogx(np.array([1.0 + star]))[0] / 2
                 + _xlogx(np.array([1.0 - star]))[0] / 2)


def classical_capacity_exact(e: EigenvalueVector) -> Optional[float]:
    """The capacity when it is known: coinciding bounds, else None.

    The bounds meet for every qubit channel and for the one-parameter
    families with all eigenvalues equal except one; weak additivity of the
    lower bound then pins the regularized value.
    """
    require_cp(e)
    if e.dimension == 2:
        return pauli_classical_capacity(e)
    low, _ = holevo_lower_bound(e)
    up, _ = holevo_upper_bound(e)
    if abs(up - low) <= COINCIDENCE_TOL:
        return low
    return None


def capacity_bounds(e: EigenvalueVector) -> CapacityBounds:
    low, alpha = holevo_lower_bound(e)
    up, _ = holevo_upper_bound(e)
    coincide = abs(up - low) <= COINCIDENCE_TOL
    exact = classical_capacity_exact(e)
    return CapacityBounds(
        dimension=e.dimension,
        chi_low=low,
        chi_up=up,
        coincide=coincide,
        exact_capacity=exact,
        maximizing_alpha=alpha,
    )


def channel_fidelity_extremes(e: EigenvalueVector) -> Tuple[float, float]:
    """Extreme input-output fidelities of a qubit channel: (1 + L)/2 at the
    smallest and largest eigenvalue."""
    if e.dimension != 2:
        raise ValueError(f"fidelity extremes need d=2, got d={e.dimension}")
    require_cp(e)
    return (
        float((1.0 + e.values.min()) / 2.0),
        float((1.0 + e.values.max()) / 2.0),
    )


def capacity_from_fidelity(f: float) -> float:
    """Qubit capacity expressed through an extreme fidelity value."""
    if not -1e-12 <= f <= 1.0 + 1e-12:
        raise ValueError(f"fidelity {f} outside [0, 1]")
    f = min(max(f, 0.0), 1.0)
    vals = _xlogx(np.array([f, 1.0 - f]))
    return float(np.log(2.0) + vals[0] + vals[1])
