"""
Enumeration of the fixed-N Fock basis (compositions of N into M parts).
"""
import math
from typing import Iterator, Tuple

import numpy as np

from ..exceptions import RefusalError


def composition_count(N: int, M: int) -> int:
    """Dimension C(N+M-1, N) of the N-atom, M-site Hilbert space."""
    return math.comb(N + M - 1, N)


def iter_compositions(N: int, M: int) -> Iterator[Tuple[int, ...]]:
    """All occupation vectors with sum N, in ascending lexicographic order."""
    if M == 1:
        yield (N,)
        return
    for first in range(N + 1):
        for rest in iter_compositions(N - first, M - 1):
            yield (first,) + rest


def composition_batches(N: int, M: int, cap: int, batch_size: int = 65536) -> Iterator[np.ndarray]:
    """
    Lexicographically ordered compositions as (batch, M) int arrays.

    Raises:
        RefusalError: if C(N+M-1, N) exceeds cap
    """
    required = composition_count(N, M)
    if required > cap:
        raise RefusalError(
            f"{required} Fock states for N={N}, M={M} exceed the enumeration cap {cap}; "
            f"raise the cap to at least {required}",
            required=required,
            cap=cap,
        )
    batch = []
    for occ in iter_compositions(N, M):
        batch.append(occ)
        if len(batch) == batch_size:
            yield np.array(batch, dtype=np.int64)
            batch = []
    if batch:
        yield np.array(batch, dtype=np.int64)
