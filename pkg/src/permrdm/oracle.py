"""Brute-force ground truth at small sizes: explicit eigenstate construction,
exact subset-averaged partial traces, and whole-system density-matrix checks.

Everything is exact: amplitudes are integers over a shared sqrt(nsq)
normalizer, so projector entries are rationals and matrix accumulation stays
in integer arithmetic until the final division.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Sequence

import numpy as np

from .rational import RationalMatrix, binomial, rational_rank
from .rdm import (RdmMatrix, RdmQuery, SystemSpec, site_permutation_table,
                  validate, validate_query, young_dimension)


@dataclass
class PureState:
    """Sparse pure state: pattern -> integer coefficient over sqrt(nsq)."""

    L: int
    coeffs: dict
    nsq: int

    def norm_ok(self) -> bool:
        """Unit norm as an integer identity: sum of squared coefficients == nsq."""
        return sum(c * c for c in self.coeffs.values()) == self.nsq


SINGLET_PROJECTOR = RationalMatrix.from_rows([
    [0, 0, 0, 0],
    [0, Fraction(1, 2), Fraction(-1, 2), 0],
    [0, Fraction(-1, 2), Fraction(1, 2), 0],
    [0, 0, 0, 0],
])


def dicke_state(F: int, M: int) -> PureState:
    """Equal-weight superposition of all C(F, M) patterns with M up spins."""
    if not 0 <= M <= F:
        raise ValueError(f"M={M} out of range: need 0 <= M <= F={F}")
    coeffs = {}
    for ups in combinations(range(F), M):
        pat = 0
        for s in ups:
            pat |= 1 << (F - 1 - s)
        coeffs[pat] = 1
    return PureState(F, coeffs, comb(F, M))


def young_state(spec: SystemSpec, max_L: int = 16) -> PureState:
    """Filled two-row tableau state: r singlets on sites (1,2)..(2r-1,2r)
    tensored with a Dicke state of N-r up spins on the remaining sites."""
    validate(spec)
    if spec.L > max_L:
        raise ValueError(f"L={spec.L} exceeds the state-construction cap {max_L}")
    L, N, r = spec.L, spec.N, spec.r
    sym = dicke_state(L - 2 * r, N - r)
    coeffs = {}
    for orient in range(1 << r):
        sign = -1 if orient.bit_count() % 2 else 1
        head = 0
        for t in range(r):
            up_site = 2 * t + 2 if (orient >> t) & 1 else 2 * t + 1
            head |= 1 << (L - up_site)
        for pat, c in sym.coeffs.items():
            coeffs[head | pat] = sign * c
    return PureState(L, coeffs, (1 << r) * sym.nsq)


def _state_arrays(state: PureState, dtype) -> tuple:
    pats = np.fromiter(state.coeffs.keys(), dtype=np.int64, count=len(state.coeffs))
    if dtype is object:
        coefs = np.array([int(c) for c in state.coeffs.values()], dtype=object)
    else:
        coefs = np.fromiter(state.coeffs.values(), dtype=dtype, count=len(state.coeffs))
    return pats, coefs


def _accumulate_subsets(pats, coefs, L, n, subsets, dtype):
    """Sum of single-subset partial traces of |psi><psi|, kept sites ascending.

    Returns the integer matrix; the caller owns the nsq * C(L, n) denominator.
    """
    dim = 1 << n
    acc = np.zeros((dim, dim), dtype=dtype)
    for sites in subsets:
        mask = 0
        for s in sites:
            mask |= 1 << (L - 1 - s)
        env = pats & ~np.int64(mask) if L < 63 else pats & ~mask
        sub = np.zeros_like(pats)
        for j, s in enumerate(sites):
            sub |= ((pats >> (L - 1 - s)) & 1) << (n - 1 - j)
        order = np.argsort(env, kind="stable")
        env_s, sub_s, c_s = env[order], sub[order], coefs[order]
        cuts = np.flatnonzero(np.diff(env_s)) + 1
        starts = np.concatenate(([0], cuts))
        ends = np.concatenate((cuts, [len(env_s)]))
        for b0, b1 in zip(starts, ends):
            a = sub_s[b0:b1]
            c = c_s[b0:b1]
            acc[a[:, None], a[None, :]] += c[:, None] * c[None, :]
    return acc


def _trace_chunk(args):
    pats_list, coefs_list, L, n, subsets = args
    pats = np.array(pats_list, dtype=np.int64)
    coefs = np.array(coefs_list, dtype=np.int64)
    return _accumulate_subsets(pats, coefs, L, n, subsets, np.int64)


def _symmetrize(acc, n):
    """Sum of conjugations by every subsystem site permutation."""
    sym = np.zeros_like(acc)
    for perm in permutations(range(n)):
        t = np.array(site_permutation_table(n, perm), dtype=np.int64)
        sym += acc[t[:, None], t[None, :]]
    return sym


def default_workers() -> int:
    """Worker count bound from the PERMRDM_THREADS environment variable."""
    try:
        return max(1, int(os.environ.get("PERMRDM_THREADS", "1")))
    except ValueError:
        return 1


def brute_force_rdm(q: RdmQuery, max_L: int = 12, max_n: int = 6,
                    workers: int = 1) -> RdmMatrix:
    """Subset-averaged, permutation-symmetrized partial trace of the
    constructed eigenstate; exact in every entry."""
    validate_query(q)
    L, n = q.system.L, q.n
    if L > max_L:
        raise ValueError(f"L={L} exceeds the brute-force cap {max_L}")
    if n > max_n:
        raise ValueError(f"n={n} exceeds the brute-force cap {max_n}")
    state = young_state(q.system, max_L=max_L)
    subsets = list(combinations(range(L), n))
    # int64 is exact while the worst-case accumulated magnitude fits
    bound = len(subsets) * len(state.coeffs) ** 2 * factorial(n)
    dtype = np.int64 if bound < (1 << 62) else object
    pats, coefs = _state_arrays(state, dtype)
    if workers > 1 and dtype is np.int64 and len(subsets) > 1:
        chunk = (len(subsets) + workers - 1) // workers
        parts = [subsets[i:i + chunk] for i in range(0, len(subsets), chunk)]
        args = [(pats.tolist(), coefs.tolist(), L, n, part) for part in parts]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            acc = sum(pool.map(_trace_chunk, args))
    else:
        acc = _accumulate_subsets(pats, coefs, L, n, subsets, dtype)
    sym = _symmetrize(acc, n)
    denom = state.nsq * comb(L, n) * factorial(n)
    dim = 1 << n
    flat = tuple(Fraction(int(v), denom) for v in sym.ravel())
    return RdmMatrix(n, RationalMatrix(dim, dim, flat))


def full_density_matrix(spec: SystemSpec, max_L: int = 8) -> tuple:
    """Whole-system mixed state as (integer matrix A, denominator D): the
    average of |P psi><P psi| over all L! site permutations equals A / D."""
    validate(spec)
    L = spec.L
    if L > max_L:
        raise ValueError(f"L={L} exceeds the full-state cap {max_L}")
    state = young_state(spec, max_L=max_L)
    pats, coefs = _state_arrays(state, np.int64)
    dim = 1 << L
    acc = np.zeros((dim, dim), dtype=np.int64)
    outer = coefs[:, None] * coefs[None, :]
    for perm in permutations(range(L)):
        pp = np.zeros_like(pats)
        for j in range(L):
            pp |= ((pats >> (L - 1 - j)) & 1) << (L - 1 - perm[j])
        acc[pp[:, None], pp[None, :]] += outer
    return acc, state.nsq * factorial(L)


def partial_trace_sites(A: np.ndarray, L: int, sites: Sequence[int]):
    """Integer partial trace of a 2^L x 2^L matrix onto `sites` (0-based,
    kept in ascending order); the denominator is unchanged."""
    sites = sorted(sites)
    n = len(sites)
    env_sites = [s for s in range(L) if s not in sites]
    amap = [0] * (1 << n)
    for a in range(1 << n):
        for j, s in enumerate(sites):
            if (a >> (n - 1 - j)) & 1:
                amap[a] |= 1 << (L - 1 - s)
    emap = [0] * (1 << (L - n))
    for e in range(1 << (L - n)):
        for j, s in enumerate(env_sites):
            if (e >> (L - n - 1 - j)) & 1:
                emap[e] |= 1 << (L - 1 - s)
    out = np.zeros((1 << n, 1 << n), dtype=A.dtype)
    for a in range(1 << n):
        for b in range(1 << n):
            tot = 0
            for em in emap:
                tot += A[amap[a] | em, amap[b] | em]
            out[a, b] = tot
    return out


def density_matrix_checks(spec: SystemSpec, max_L: int = 6) -> list:
    """Exact property checks on the whole-system density matrix: unit trace,
    projector scaling, permutation commutation, and rank = level degeneracy."""
    validate(spec)
    L = spec.L
    if L > max_L:
        raise ValueError(f"L={L} exceeds the full-state check cap {max_L}")
    A, D = full_density_matrix(spec, max_L=max_L)
    deg = young_dimension(L, spec.r)
    dim = 1 << L
    checks = []

    tr = int(A.trace())
    checks.append({
        "name": "unit_trace",
        "pass": tr == D,
        "detail": f"trace = {tr}/{D}",
    })

    big = A.astype(object)
    prod = big @ big
    ok = bool(np.all(deg * prod == D * big))
    checks.append({
        "name": "projector_scaling",
        "pass": ok,
        "detail": f"deg * rho^2 == rho with deg = {deg}",
    })

    bad_pairs = []
    for i in range(L):
        for j in range(i + 1, L):
            perm = list(range(L))
            perm[i], perm[j] = perm[j], perm[i]
            t = np.array(site_permutation_table(L, perm), dtype=np.int64)
            if not np.array_equal(A[t[:, None], t[None, :]], A):
                bad_pairs.append((i + 1, j + 1))
    checks.append({
        "name": "permutation_commutes",
        "pass": not bad_pairs,
        "detail": ("all site pairs" if not bad_pairs
                   else f"violated at pairs {bad_pairs}"),
    })

    rm = RationalMatrix(dim, dim, tuple(Fraction(int(v)) for v in A.ravel()))
    rank = rational_rank(rm)
    checks.append({
        "name": "rank_equals_degeneracy",
        "pass": rank == deg,
        "detail": f"rank = {rank}, degeneracy = {deg}",
    })
    return checks


def _rdm_symmetric_class(F: int, M: int, nn: int):
    """Size-nn RDM of the (F, M) Dicke state as an object array of Fractions:
    entries depend only on the shared polarization of row and column."""
    dim = 1 << nn
    den = binomial(F, M)
    out = np.zeros((dim, dim), dtype=object)
    byk = [Fraction(binomial(F - nn, M - w), den) for w in range(nn + 1)]
    for a in range(dim):
        ka = a.bit_count()
        for b in range(dim):
            if b.bit_count() == ka:
                out[a, b] = byk[ka]
    return out


_SINGLET_OBJ = np.array(
    [[Fraction(v) for v in SINGLET_PROJECTOR.row(i)] for i in range(4)],
    dtype=object,
)
_HALF_OBJ = np.array([[Fraction(1, 2), Fraction(0)],
                      [Fraction(0), Fraction(1, 2)]], dtype=object)


def decomposition_check(spec: SystemSpec, n: int, max_L: int = 10,
                        max_n: int = 4) -> dict:
    """Check the product decomposition of the RDM: partition the kept sites
    between the symmetric and antisymmetric tableau parts, weight each
    partition combinatorially, symmetrize, and compare to the brute-force
    result entry by entry."""
    validate_query(RdmQuery(spec, n))
    L, N, r = spec.L, spec.N, spec.r
    if L > max_L or n > max_n:
        raise ValueError(f"(L={L}, n={n}) exceeds the decomposition caps "
                         f"({max_L}, {max_n})")
    F, M = L - 2 * r, N - r
    dim = 1 << n
    total = np.zeros((dim, dim), dtype=object)
    for Z in range(min(2 * r, n) + 1):
        wsym = binomial(F, n - Z)
        if wsym == 0:
            continue
        base = _rdm_symmetric_class(F, M, n - Z)
        for i in range(Z // 2 + 1):
            w = binomial(r, i) * 2 ** (Z - 2 * i) * binomial(r - i, Z - 2 * i)
            if w == 0:
                continue
            mat = base
            for _ in range(i):
                mat = np.kron(mat, _SINGLET_OBJ)
            for _ in range(Z - 2 * i):
                mat = np.kron(mat, _HALF_OBJ)
            total = total + (wsym * w) * mat
    sym = np.zeros((dim, dim), dtype=object)
    for perm in permutations(range(n)):
        t = np.array(site_permutation_table(n, perm), dtype=np.int64)
        sym = sym + total[t[:, None], t[None, :]]
    scale = Fraction(1, factorial(n) * comb(L, n))
    lhs = brute_force_rdm(RdmQuery(spec, n))
    first_bad = None
    for a in range(dim):
        for b in range(dim):
            want = scale * sym[a, b]
            got = lhs.matrix.at(a, b)
            if got != want:
                first_bad = (a + 1, b + 1, got, want)
                break
        if first_bad:
            break
    name = f"decomposition L={L} N={N} r={r} n={n}"
    if first_bad:
        P, Q, got, want = first_bad
        detail = f"first mismatch at ({P}, {Q}): trace side {got}, product side {want}"
    else:
        detail = "sides agree entrywise"
    return {"name": name, "pass": first_bad is None, "detail": detail}
