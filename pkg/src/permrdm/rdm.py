"""Closed-form block reduced density matrices of permutation-invariant
spin-1/2 eigenstates.

Conventions: a system state class is (L, N, r) with L sites, N up spins and
r antisymmetrized (singlet) pairs, i.e. the two-row Young shape {L-r, r}.
Subsystem basis indices are 1-based; the binary digits of P-1, most
significant first, give the occupations of sites 1..n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .rational import RationalMatrix, binomial


@dataclass(frozen=True)
class SystemSpec:
    """Whole-system state class (L, N, r) plus optional couplings."""

    L: int
    N: int
    r: int
    J: Fraction = Fraction(1)
    h: Fraction = Fraction(0)


@dataclass(frozen=True)
class RdmQuery:
    """A system together with the subsystem size n to keep."""

    system: SystemSpec
    n: int


@dataclass(frozen=True)
class SubBlockIndex:
    """Sub-block address: block polarization k, raising/lowering pairs Z."""

    k: int
    Z: int


@dataclass(frozen=True)
class ThermoParams:
    """Large-system limit parameters: filling p = N/L, symmetry mu = r/L."""

    p: Fraction
    mu: Fraction
    n: int


def validate(spec: SystemSpec) -> SystemSpec:
    """Check the (L, N, r) invariants, naming the violated bound on failure."""
    if spec.L < 1:
        raise ValueError(f"L={spec.L} out of range: need L >= 1")
    if not 0 <= spec.N <= spec.L:
        raise ValueError(f"N={spec.N} out of range: need 0 <= N <= L={spec.L}")
    rmax = min(spec.N, spec.L - spec.N)
    if not 0 <= spec.r <= rmax:
        raise ValueError(
            f"r={spec.r} out of range: tableau filling requires "
            f"0 <= r <= min(N, L-N) = {rmax}"
        )
    return spec


def validate_query(q: RdmQuery) -> RdmQuery:
    validate(q.system)
    if not 1 <= q.n <= q.system.L:
        raise ValueError(f"n={q.n} out of range: need 1 <= n <= L={q.system.L}")
    return q


def young_dimension(L: int, r: int) -> int:
    """Dimension of the two-row Young shape {L-r, r}: C(L,r) - C(L,r-1).

    Equals the degeneracy of the (L, N, r) energy level.
    """
    if r < 0 or 2 * r > L:
        raise ValueError(f"r={r} out of range: need 0 <= r <= L/2 = {L}/2")
    return binomial(L, r) - binomial(L, r - 1)


def energy(spec: SystemSpec) -> Fraction:
    """Energy of the (L, N, r) level: (J*r*(L-r+1)/L + h*(L-2N)) / 2."""
    validate(spec)
    coupling = spec.J * Fraction(spec.r * (spec.L - spec.r + 1), spec.L)
    field = spec.h * (spec.L - 2 * spec.N)
    return Fraction(1, 2) * (coupling + field)


def subblock_index(P: int, Q: int, n: int) -> Optional[SubBlockIndex]:
    """Classify matrix position (P, Q), 1-based, as a (k, Z) sub-block.

    Returns None when the row and column polarizations differ (such entries
    vanish identically).
    """
    dim = 1 << n
    if not (1 <= P <= dim and 1 <= Q <= dim):
        raise ValueError(f"indices ({P}, {Q}) out of range 1..{dim}")
    a, b = P - 1, Q - 1
    if a.bit_count() != b.bit_count():
        return None
    return SubBlockIndex(a.bit_count(), (a & ~b).bit_count())


def _check_subblock(n: int, idx: SubBlockIndex) -> None:
    if not 0 <= idx.k <= n:
        raise ValueError(f"k={idx.k} out of range: need 0 <= k <= n={n}")
    zmax = min(idx.k, n - idx.k)
    if not 0 <= idx.Z <= zmax:
        raise ValueError(f"Z={idx.Z} out of range: need 0 <= Z <= min(k, n-k) = {zmax}")


def subblock_value(q: RdmQuery, idx: SubBlockIndex) -> Fraction:
    """The common value of every entry in sub-block (k, Z) of the size-n RDM."""
    validate_query(q)
    _check_subblock(q.n, idx)
    L, N, r = q.system.L, q.system.N, q.system.r
    n, k, Z = q.n, idx.k, idx.Z
    lead = Fraction(binomial(L - n, N - k), binomial(L, N))
    if lead == 0:
        return Fraction(0)
    alt = sum((-1) ** m * binomial(N - r, Z - m) * binomial(L - N - r, Z - m)
              * binomial(r, m) for m in range(Z + 1))
    return lead * Fraction(alt, binomial(N, Z) * binomial(L - N, Z))


def subblock_values(q: RdmQuery) -> dict:
    """All (k, Z) -> value entries of the size-n RDM, as a dict."""
    validate_query(q)
    return {
        (k, Z): subblock_value(q, SubBlockIndex(k, Z))
        for k in range(q.n + 1)
        for Z in range(min(k, q.n - k) + 1)
    }


def block_dim(n: int, k: int) -> int:
    """Dimension C(n, k) of the polarization-k block."""
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range: need 0 <= k <= n={n}")
    return binomial(n, k)


def subblock_count(n: int, k: int, Z: int) -> int:
    """Number of positions in sub-block (k, Z): C(2Z,Z) C(n,2Z) C(n-2Z,k-Z)."""
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range: need 0 <= k <= n={n}")
    zmax = min(k, n - k)
    if not 0 <= Z <= zmax:
        raise ValueError(f"Z={Z} out of range: need 0 <= Z <= min(k, n-k) = {zmax}")
    return binomial(2 * Z, Z) * binomial(n, 2 * Z) * binomial(n - 2 * Z, k - Z)


def patterns_by_popcount(n: int) -> list:
    """Bit patterns 0..2^n-1 grouped by popcount, ascending within a group."""
    groups = [[] for _ in range(n + 1)]
    for a in range(1 << n):
        groups[a.bit_count()].append(a)
    return groups


@dataclass(frozen=True)
class RdmMatrix:
    """Dense 2^n x 2^n exact-rational RDM in the natural basis."""

    n: int
    matrix: RationalMatrix

    @property
    def dim(self) -> int:
        return 1 << self.n

    def entry(self, P: int, Q: int) -> Fraction:
        """Entry at 1-based position (P, Q)."""
        if not (1 <= P <= self.dim and 1 <= Q <= self.dim):
            raise ValueError(f"indices ({P}, {Q}) out of range 1..{self.dim}")
        return self.matrix.at(P - 1, Q - 1)

    def trace(self) -> Fraction:
        return self.matrix.trace()


@dataclass(frozen=True)
class BlockView:
    """A fixed-polarization block with its pattern index map."""

    k: int
    patterns: tuple
    matrix: RationalMatrix

    def pair_distance(self, i: int, j: int) -> int:
        """Z of local entry (i, j): raising/lowering pairs between patterns."""
        a, b = self.patterns[i], self.patterns[j]
        return (a & ~b).bit_count()


def assemble_rdm(q: RdmQuery, cap: int = 10) -> RdmMatrix:
    """Build the full 2^n x 2^n RDM from the (k, Z) sub-block values.

    The O(n^2) distinct values are computed once and shared across entries,
    so assembly cost is dominated by the 4^n stores.
    """
    validate_query(q)
    if q.n > cap:
        raise ValueError(f"n={q.n} exceeds the in-memory assembly cap {cap}")
    vals = subblock_values(q)
    dim = 1 << q.n
    zero = Fraction(0)
    flat = [zero] * (dim * dim)
    for k, pats in enumerate(patterns_by_popcount(q.n)):
        for a in pats:
            base = a * dim
            for b in pats:
                flat[base + b] = vals[(k, (a & ~b).bit_count())]
    return RdmMatrix(q.n, RationalMatrix(dim, dim, tuple(flat)))


def iter_nonzero_entries(q: RdmQuery, cap: int = 14) -> Iterator:
    """Yield (P, Q, value) for nonzero entries, sorted by (P, Q), 1-based.

    Streams from the value table without materializing the matrix.
    """
    validate_query(q)
    if q.n > cap:
        raise ValueError(f"n={q.n} exceeds the streaming cap {cap}")
    vals = subblock_values(q)
    groups = patterns_by_popcount(q.n)
    for a in range(1 << q.n):
        k = a.bit_count()
        for b in groups[k]:
            v = vals[(k, (a & ~b).bit_count())]
            if v != 0:
                yield a + 1, b + 1, v


def block_view(m: RdmMatrix, k: int) -> BlockView:
    """Extract the polarization-k block of an assembled RDM."""
    pats = patterns_by_popcount(m.n)[k]
    entries = tuple(m.matrix.at(a, b) for a in pats for b in pats)
    return BlockView(k, tuple(pats), RationalMatrix(len(pats), len(pats), entries))


def site_permutation_table(n: int, perm: Sequence[int]) -> list:
    """Index map sending pattern a to the pattern with site j's bit at perm[j].

    Sites are 0-based slots; slot j occupies bit position n-1-j.
    """
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm!r} is not a permutation of 0..{n - 1}")
    table = [0] * (1 << n)
    for a in range(1 << n):
        out = 0
        for j in range(n):
            if (a >> (n - 1 - j)) & 1:
                out |= 1 << (n - 1 - perm[j])
        table[a] = out
    return table


def permute_sites(m: RdmMatrix, perm: Sequence[int]) -> RdmMatrix:
    """Conjugate an RDM by a permutation of its subsystem sites."""
    t = site_permutation_table(m.n, perm)
    dim = m.dim
    flat = [Fraction(0)] * (dim * dim)
    old = m.matrix.entries
    for a in range(dim):
        ta = t[a] * dim
        arow = a * dim
        for b in range(dim):
            flat[ta + t[b]] = old[arow + b]
    return RdmMatrix(m.n, RationalMatrix(dim, dim, tuple(flat)))


def validate_thermo(tp: ThermoParams) -> ThermoParams:
    if not 0 < tp.p < 1:
        raise ValueError(f"p={tp.p} out of range: need 0 < p < 1")
    cap = min(tp.p, 1 - tp.p)
    if not 0 <= tp.mu <= cap:
        raise ValueError(f"mu={tp.mu} out of range: need 0 <= mu <= min(p, 1-p) = {cap}")
    if tp.n < 1:
        raise ValueError(f"n={tp.n} out of range: need n >= 1")
    return tp


def decay_ratio(p: Fraction, mu: Fraction) -> Fraction:
    """Off-diagonal decay ratio (p-mu)(1-p-mu) / (p(1-p)) of the limit RDM."""
    p, mu = Fraction(p), Fraction(mu)
    validate_thermo(ThermoParams(p, mu, 1))
    return (p - mu) * (1 - p - mu) / (p * (1 - p))


def thermo_value(tp: ThermoParams, idx: SubBlockIndex) -> Fraction:
    """Large-system-limit sub-block value p^(n-k) (1-p)^k eta^Z."""
    validate_thermo(tp)
    _check_subblock(tp.n, idx)
    eta = decay_ratio(tp.p, tp.mu)
    return tp.p ** (tp.n - idx.k) * (1 - tp.p) ** idx.k * eta ** idx.Z


def thermo_values(tp: ThermoParams) -> dict:
    """All (k, Z) -> limit value entries for subsystem size n."""
    validate_thermo(tp)
    return {
        (k, Z): thermo_value(tp, SubBlockIndex(k, Z))
        for k in range(tp.n + 1)
        for Z in range(min(k, tp.n - k) + 1)
    }
