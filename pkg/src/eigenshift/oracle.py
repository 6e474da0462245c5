"""Independent ground truth for Jordan structure via exact rank sequences.

The Weyr characteristic (nullity increments of powers of M - lam I) is
the conjugate partition of the block sizes at lam.  Nothing here
depends on the closed-form classifiers; this module is what they are
verified against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingEigenvalueError
from .linalg import Matrix, Vector, stack_vectors_as_rows
from .scalars import ComplexRational
from .shifting import charpoly_ratio_check
from .synthesis import SegreCharacteristic, _as_scalar

# Re-exported: spectrum verification shares its implementation with the
# shift module's polynomial identity test.
spectrum_multiset_check = charpoly_ratio_check


@dataclass(frozen=True)
class WeyrProfile:
    lam: ComplexRational
    null_dims: tuple  # dim ker (M - lam I)^j for j = 1.. until stable

    @property
    def increments(self) -> tuple:
        prev = 0
        out = []
        for d in self.null_dims:
            out.append(d - prev)
            prev = d
        return tuple(out)

    @property
    def algebraic_multiplicity(self) -> int:
        return self.null_dims[-1] if self.null_dims else 0

    def block_sizes(self) -> tuple:
        """Jordan block sizes at lam: conjugate partition of the increments."""
        inc = self.increments
        if not inc:
            return ()
        # one block per kernel vector at level 1; block t has size
        # equal to the number of levels still holding >= t new vectors
        return tuple(
            sum(1 for w in inc if w >= t) for t in range(1, inc[0] + 1)
        )


def weyr_profile(M: Matrix, lam) -> WeyrProfile:
    """Exact nullity sequence of (M - lam I)^j, stopping when stable."""
    lam = _as_scalar(lam)
    n = M.rows
    N = M - Matrix.identity(n).scale(lam)
    null_dims = []
    power = N
    prev = 0
    while True:
        d = n - power.exact_rank()
        if d == prev:
            break
        null_dims.append(d)
        prev = d
        if d == n:
            break
        power = power @ N
    prof = WeyrProfile(lam, tuple(null_dims))
    inc = prof.increments
    assert all(
        inc[i] >= inc[i + 1] for i in range(len(inc) - 1)
    ), "Weyr increments must be non-increasing"
    return prof


def oracle_segre(M: Matrix, eigenvalues) -> SegreCharacteristic:
    """Full Segre characteristic from a covering eigenvalue list."""
    n = M.rows
    seen = []
    for lam in eigenvalues:
        lam = _as_scalar(lam)
        if lam not in seen:
            seen.append(lam)
    blocks = []
    total = 0
    for lam in seen:
        prof = weyr_profile(M, lam)
        for size in prof.block_sizes():
            blocks.append((lam, size))
            total += size
    if total != n:
        raise MissingEigenvalueError(
            f"supplied eigenvalues cover {total} of {n} dimensions"
        )
    return SegreCharacteristic(blocks).canonical()


def jordan_cycles(M: Matrix, lam):
    """Exact cycles of generalized eigenvectors of M at lam.

    Returns a list of cycles, each listed eigenvector-first:
    (M - lam I) c[0] = 0 and (M - lam I) c[i] = c[i-1].  The union of
    all cycles is a basis of the generalized eigenspace.  Standard
    construction: walk the kernel filtration top-down, completing each
    level with fresh chain tops.
    """
    lam = _as_scalar(lam)
    n = M.rows
    N = M - Matrix.identity(n).scale(lam)
    kernels = []  # basis of ker N^j for j = 1..s
    power = N
    prev_dim = 0
    while True:
        basis = power.null_space_basis()
        if len(basis) == prev_dim:
            break
        kernels.append(basis)
        prev_dim = len(basis)
        if prev_dim == n:
            break
        power = power @ N

    def rank_of(vectors):
        if not vectors:
            return 0
        return stack_vectors_as_rows(vectors).exact_rank()

    cycles = []
    carry = []  # images at the current level of taller chains' tops
    for j in range(len(kernels), 0, -1):
        lower = kernels[j - 2] if j >= 2 else []
        context = list(lower) + carry
        base_rank = rank_of(context)
        w_j = len(kernels[j - 1]) - len(lower)
        w_next = len(kernels[j]) - len(kernels[j - 1]) if j < len(kernels) else 0
        needed = w_j - w_next
        picked = []
        for cand in kernels[j - 1]:
            if len(picked) == needed:
                break
            trial = context + picked + [cand]
            if rank_of(trial) > base_rank + len(picked):
                picked.append(cand)
        assert len(picked) == needed, "kernel filtration walk failed"
        for top in picked:
            cycle = [top]
            for _ in range(j - 1):
                cycle.append(N @ cycle[-1])
            cycle.reverse()
            cycles.append(cycle)
        carry = [N @ v for v in carry] + [N @ v for v in picked]
    cycles.sort(key=len, reverse=True)
    return cycles


def verify_cycles(M: Matrix, lam, cycles) -> bool:
    """Chain recurrences hold and the stacked cycles have full rank."""
    lam = _as_scalar(lam)
    N = M - Matrix.identity(M.rows).scale(lam)
    flat = []
    for cycle in cycles:
        prev = Vector.zero(M.rows)
        for v in cycle:
            if N @ v != prev:
                return False
            prev = v
        flat.extend(cycle)
    if not flat:
        return False
    return stack_vectors_as_rows(flat).exact_rank() == len(flat)
