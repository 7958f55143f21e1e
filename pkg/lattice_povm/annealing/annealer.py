"""
Fixed-N ground-state search for the Fock-state energy

    E(k) = sum_j eps_j k_j + U/2 sum_j k_j (k_j - 1),   sum_j k_j = N.

Sites are 0-based in this module; the 1-based labels only enter eps.
"""
import heapq
import math
import time
from typing import List, Optional, Tuple

import numpy as np

from ..core import as_occupations, composition_batches, fock_energy, site_energies
from ..core.energies import Occupations
from ..exceptions import InputError
from ..logging import get_logger
from ..metrics import get_metrics
from ..models import AnnealResult, AnnealSchedule, FockConfig, LatticeSpec

logger = get_logger(__name__)

DEFAULT_ENUMERATION_CAP = 5_000_000
_ENERGY_RTOL = 1e-9


def rng_for_run(seed: int, run_index: int) -> np.random.Generator:
    """Independent PCG64 stream for run `run_index` of a seeded job."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(run_index,)))


def propose_move(k: Occupations, rng: np.random.Generator) -> Tuple[int, int]:
    """
    Pick a single-atom transfer.

    The source is uniform over occupied sites, the target uniform over the
    other M-1 sites, so the move never empties a site below zero.

    Returns:
        (source, target) as 0-based site indices
    """
    occ = as_occupations(k)
    occupied = np.flatnonzero(occ > 0)
    if occupied.size == 0:
        raise InputError("cannot move an atom out of an empty lattice (N=0)", field="k")
    if occ.size < 2:
        raise InputError("a move needs at least two sites", field="k")
    src = int(occupied[rng.integers(occupied.size)])
    dst = int(rng.integers(occ.size - 1))
    if dst >= src:
        dst += 1
    return src, dst


def energy_delta(k: Occupations, eps: np.ndarray, U: float, src: int, dst: int) -> float:
    """E(after) - E(before) for moving one atom src -> dst: eps_dst - eps_src + U(k_dst - k_src + 1)."""
    occ = as_occupations(k)
    if src == dst:
        raise InputError("source and target must differ", field="dst")
    if occ[src] < 1:
        raise InputError(f"site {src} is empty; nothing to move", field="src")
    return float(eps[dst] - eps[src] + U * (occ[dst] - occ[src] + 1))


def apply_move(k: Occupations, src: int, dst: int) -> np.ndarray:
    occ = as_occupations(k).copy()
    occ[src] -= 1
    occ[dst] += 1
    return occ


def initial_configuration(eps: np.ndarray, N: int) -> np.ndarray:
    """floor(N/M) everywhere, the remainder on the lowest-eps sites (ties to lower index)."""
    M = len(eps)
    occ = np.full(M, N // M, dtype=np.int64)
    order = np.argsort(eps, kind="stable")
    occ[order[: N % M]] += 1
    return occ


class _OccupiedSites:
    """Occupied-site list with O(1) insert/remove for uniform source picks."""

    def __init__(self, occ: List[int]):
        self.sites = [i for i, k in enumerate(occ) if k > 0]
        self.position = [-1] * len(occ)
        for index, site in enumerate(self.sites):
            self.position[site] = index

    def add(self, site: int) -> None:
        self.position[site] = len(self.sites)
        self.sites.append(site)

    def remove(self, site: int) -> None:
        index = self.position[site]
        last = self.sites.pop()
        if last != site:
            self.sites[index] = last
            self.position[last] = index
        self.position[site] = -1


def _anneal_once(
    eps: np.ndarray,
    U: float,
    start: np.ndarray,
    sched: AnnealSchedule,
    T0: float,
    rng: np.random.Generator,
) -> Tuple[np.ndarray, int, int]:
    """One Metropolis run; returns (best occupations, accepted, proposed)."""
    M = len(eps)
    eps_list = eps.tolist()
    occ = start.tolist()
    occupied = _OccupiedSites(occ)
    energy = fock_energy(start, eps, U)
    best_energy = energy
    best = list(occ)
    accepted = 0
    moves_per_stage = sched.sweeps_per_stage * M
    temperature = T0

    for _ in range(sched.stages):
        draws = rng.random((moves_per_stage, 3)).tolist()
        for u_src, u_dst, u_accept in draws:
            sites = occupied.sites
            src = sites[int(u_src * len(sites))]
            dst = int(u_dst * (M - 1))
            if dst >= src:
                dst += 1
            delta = eps_list[dst] - eps_list[src] + U * (occ[dst] - occ[src] + 1)
            # T underflows to 0 on long schedules: the greedy limit rejects every uphill move
            if delta > 0 and (temperature <= 0.0 or u_accept >= math.exp(-delta / temperature)):
                continue
            occ[src] -= 1
            if occ[src] == 0:
                occupied.remove(src)
            if occ[dst] == 0:
                occupied.add(dst)
            occ[dst] += 1
            energy += delta
            accepted += 1
            if energy < best_energy - 1e-12 * max(1.0, abs(best_energy)):
                best_energy = energy
                best = list(occ)
        temperature *= sched.cooling

    return np.asarray(best, dtype=np.int64), accepted, sched.stages * moves_per_stage


def _result(
    occ: np.ndarray,
    eps: np.ndarray,
    U: float,
    method: str,
    accepted: int = 0,
    proposed: int = 0,
    seed: Optional[int] = None,
) -> AnnealResult:
    return AnnealResult(
        config=FockConfig.of(occ.tolist()),
        energy=fock_energy(occ, eps, U),
        accepted_moves=accepted,
        proposed_moves=proposed,
        method=method,
        seed=seed,
    )


def anneal(spec: LatticeSpec, N: int, sched: AnnealSchedule) -> AnnealResult:
    """
    Metropolis simulated annealing with geometric cooling.

    Each restart starts from the most balanced configuration and draws from
    its own stream derived from (seed, restart index). The best configuration
    ever visited across all restarts is returned, with its energy recomputed
    from scratch.
    """
    if N < 0:
        raise InputError("N must be non-negative", field="N")
    eps = site_energies(spec)
    start = initial_configuration(eps, N)
    if spec.M == 1 or N == 0:
        return _result(start, eps, spec.U, "anneal", seed=sched.seed)

    T0 = sched.initial_temperature(spec, N)
    started = time.perf_counter()
    best: Optional[np.ndarray] = None
    best_energy = math.inf
    accepted_total = 0
    proposed_total = 0

    for run in range(sched.restarts):
        occ, accepted, proposed = _anneal_once(eps, spec.U, start, sched, T0, rng_for_run(sched.seed, run))
        accepted_total += accepted
        proposed_total += proposed
        energy = fock_energy(occ, eps, spec.U)
        if best is None or energy < best_energy - _ENERGY_RTOL * max(1.0, abs(best_energy)):
            best, best_energy = occ, energy
        logger.debug("anneal restart finished", run=run, energy=energy, accepted=accepted)

    result = _result(best, eps, spec.U, "anneal", accepted_total, proposed_total, sched.seed)
    duration = time.perf_counter() - started
    get_metrics().record_anneal("anneal", accepted_total, proposed_total, duration)
    logger.info(
        "anneal finished",
        M=spec.M,
        N=N,
        V2=spec.V2,
        energy=result.energy,
        acceptance=round(result.acceptance_rate, 4),
        restarts=sched.restarts,
        duration=duration,
    )
    return result


def enumerate_ground_state(spec: LatticeSpec, N: int, cap: int = DEFAULT_ENUMERATION_CAP) -> AnnealResult:
    """
    Exhaustive minimum over all C(N+M-1, N) Fock states.

    Ties go to the lexicographically smallest occupation vector.

    Raises:
        RefusalError: if the basis is larger than cap
    """
    eps = site_energies(spec)
    best: Optional[np.ndarray] = None
    best_energy = math.inf
    for batch in composition_batches(N, spec.M, cap):
        energies = batch @ eps + 0.5 * spec.U * np.einsum('ij,ij->i', batch, batch - 1)
        low = energies.min()
        tol = _ENERGY_RTOL * max(1.0, abs(low))
        if low < best_energy - tol:
            # first index within tolerance of the minimum is the lexicographic tie-break
            best = batch[int(np.flatnonzero(energies <= low + tol)[0])]
            best_energy = float(low)
    return _result(best, eps, spec.U, "enumeration")


def insert_ground_state(spec: LatticeSpec, N: int) -> AnnealResult:
    """
    One-by-one insertion: each atom goes to the site with the lowest marginal
    cost eps_j + U*k_j. Exact for this separable convex objective when U >= 0.
    """
    eps = site_energies(spec)
    occ = np.zeros(spec.M, dtype=np.int64)
    heap = [(float(e), j) for j, e in enumerate(eps)]
    heapq.heapify(heap)
    started = time.perf_counter()
    for _ in range(N):
        cost, j = heapq.heappop(heap)
        occ[j] += 1
        heapq.heappush(heap, (float(eps[j] + spec.U * occ[j]), j))
    get_metrics().record_anneal("insertion", 0, 0, time.perf_counter() - started)
    return _result(occ, eps, spec.U, "insertion")


def ground_state(spec: LatticeSpec, N: int, sched: AnnealSchedule, method: str = "anneal") -> AnnealResult:
    """Dispatch to the configured preparation method."""
    if method == "anneal":
        return anneal(spec, N, sched)
    if method == "insertion":
        return insert_ground_state(spec, N)
    if method == "enumeration":
        return enumerate_ground_state(spec, N)
    raise InputError(f"unknown ground-state method: {method}", field="method")
