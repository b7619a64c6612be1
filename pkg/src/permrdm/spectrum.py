"""Closed-form RDM spectrum: integer expansion coefficients over the sub-block
values, eigenvalues with multiplicities, entropy and purity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log
from typing import Sequence

from .rational import binomial
from .rdm import RdmQuery, SubBlockIndex, subblock_value, validate_query


@dataclass(frozen=True)
class SpectrumEntry:
    """One distinct eigenvalue: block k, representation label s, value, multiplicity."""

    k: int
    s: int
    value: Fraction
    multiplicity: int


@dataclass(frozen=True)
class CoeffTable:
    """Integer coefficient rows s -> (c_0 .. c_zmax) for one block."""

    n: int
    k: int
    coefficients: dict


def _check_labels(n: int, k: int, s: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range: need 0 <= k <= n={n}")
    smax = min(k, n - k)
    if not 0 <= s <= smax:
        raise ValueError(f"s={s} out of range: need 0 <= s <= min(k, n-k) = {smax}")
    return smax


def spectral_coeff(n: int, k: int, s: int, Z: int) -> int:
    """Integer weight of the Z-th sub-block value in eigenvalue (k, s).

    With m = k - s: (-1)^Z sum_i (-1)^i C(m,i) C(n-2k+m,i) C(k-m,Z-i).
    Within the valid label range n-2k+m = n-k-s is nonnegative.
    """
    zmax = _check_labels(n, k, s)
    if not 0 <= Z <= zmax:
        raise ValueError(f"Z={Z} out of range: need 0 <= Z <= min(k, n-k) = {zmax}")
    m = k - s
    total = sum((-1) ** i * binomial(m, i) * binomial(n - 2 * k + m, i)
                * binomial(k - m, Z - i) for i in range(m + 1))
    return (-1) ** Z * total


def penultimate_coeff(n: int, k: int, Z: int) -> int:
    """Closed form of the s = k-1 coefficient row; cross-check oracle.

    (-1)^Z [ C(k-1,Z) - C(n-2k+1,1) C(k-1,Z-1) ], valid for k <= (n+1)/2.
    """
    if k < 1:
        raise ValueError(f"k={k} out of range: need k >= 1")
    if n - 2 * k + 1 < 0:
        raise ValueError(f"k={k} out of range: need k <= (n+1)/2 with n={n}")
    if not 0 <= Z <= k:
        raise ValueError(f"Z={Z} out of range: need 0 <= Z <= k={k}")
    return (-1) ** Z * (binomial(k - 1, Z)
                        - binomial(n - 2 * k + 1, 1) * binomial(k - 1, Z - 1))


def coeff_table(n: int, k: int) -> CoeffTable:
    """All coefficient rows of block k, keyed by the representation label."""
    smax = _check_labels(n, k, 0)
    rows = {
        s: tuple(spectral_coeff(n, k, s, Z) for Z in range(smax + 1))
        for s in range(smax + 1)
    }
    return CoeffTable(n, k, rows)


def multiplicity(n: int, s: int) -> int:
    """Degeneracy C(n,s) - C(n,s-1) of the label-s eigenvalues."""
    if s < 0 or 2 * s > n:
        raise ValueError(f"s={s} out of range: need 0 <= s <= n/2 = {n}/2")
    return binomial(n, s) - binomial(n, s - 1)


def eigenvalue_from_values(values: Sequence[Fraction], n: int, k: int, s: int) -> Fraction:
    """Eigenvalue (k, s) as the coefficient-weighted sum of sub-block values."""
    zmax = _check_labels(n, k, s)
    if len(values) != zmax + 1:
        raise ValueError(f"expected {zmax + 1} sub-block values, got {len(values)}")
    return sum((spectral_coeff(n, k, s, Z) * Fraction(values[Z])
                for Z in range(zmax + 1)), Fraction(0))


def eigenvalue(q: RdmQuery, k: int, s: int) -> Fraction:
    """Eigenvalue (k, s) of the RDM described by q."""
    validate_query(q)
    zmax = _check_labels(q.n, k, s)
    values = [subblock_value(q, SubBlockIndex(k, Z)) for Z in range(zmax + 1)]
    return eigenvalue_from_values(values, q.n, k, s)


def full_spectrum(q: RdmQuery) -> list:
    """All (k, s) spectrum entries, sorted by (k, s)."""
    validate_query(q)
    entries = []
    for k in range(q.n + 1):
        zmax = min(k, q.n - k)
        values = [subblock_value(q, SubBlockIndex(k, Z)) for Z in range(zmax + 1)]
        for s in range(zmax + 1):
            entries.append(SpectrumEntry(
                k, s,
                eigenvalue_from_values(values, q.n, k, s),
                multiplicity(q.n, s),
            ))
    return entries


def entropy(entries: Sequence[SpectrumEntry]) -> float:
    """Entanglement entropy -sum m*v*ln(v) in nats, double precision."""
    total = 0.0
    for e in entries:
        if e.value < 0:
            raise ValueError(f"negative eigenvalue {e.value} at (k={e.k}, s={e.s})")
        if e.value > 0:
            v = float(e.value)
            total -= e.multiplicity * v * log(v)
    return total


def purity(entries: Sequence[SpectrumEntry]) -> Fraction:
    """Exact purity sum m*v^2 of the spectrum."""
    return sum((e.multiplicity * e.value * e.value for e in entries), Fraction(0))
