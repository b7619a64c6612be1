"""Verification suites over parameter grids: closed form against brute force,
coefficient identities, and whole-system density-matrix properties."""

from __future__ import annotations

from .oracle import brute_force_rdm, density_matrix_checks
from .rational import binomial
from .rdm import RdmQuery, SystemSpec, assemble_rdm
from .spectrum import spectral_coeff

ORACLE_MAX_L = 12
ORACLE_MAX_N = 6
FULL_STATE_MAX_L = 6
COEFF_MAX_N = 12


def coefficient_checks(max_n: int = COEFF_MAX_N) -> list:
    """Exact integer identities of the eigenvalue expansion coefficients."""
    leading = row_sum = traceless = moments = closing = True
    bad = {}
    rows = 0
    for n in range(1, max_n + 1):
        for k in range(n + 1):
            zmax = min(k, n - k)
            for s in range(zmax + 1):
                rows += 1
                coeffs = [spectral_coeff(n, k, s, Z) for Z in range(zmax + 1)]
                if coeffs[0] != 1:
                    leading = False
                    bad.setdefault("leading", (n, k, s))
                if s == 0 and sum(coeffs) != binomial(n, k):
                    row_sum = False
                    bad.setdefault("row_sum", (n, k, s))
                if s > 0 and sum(coeffs) != 0:
                    traceless = False
                    bad.setdefault("traceless", (n, k, s))
                for p in range(s):
                    if sum(c * binomial(Z, p) for Z, c in enumerate(coeffs)) != 0:
                        moments = False
                        bad.setdefault("moments", (n, k, s, p))
                close = sum(c * binomial(Z, k) for Z, c in enumerate(coeffs))
                want = (-1) ** s * binomial(n - k - s, k - s)
                if close != want or (k <= n - k and coeffs[k] != want):
                    closing = False
                    bad.setdefault("closing", (n, k, s))
    grid = f"n <= {max_n}: {rows} coefficient rows"

    def report(name, ok):
        detail = grid if ok else f"first violation at {bad[name]}"
        return {"name": f"coeff_{name}", "pass": ok, "detail": detail}

    return [
        report("leading", leading),
        report("row_sum", row_sum),
        report("traceless", traceless),
        report("moments", moments),
        report("closing", closing),
    ]


def oracle_equivalence_checks(max_L: int = 8, max_n: int = 4,
                              workers: int = 1) -> list:
    """Closed-form assembly against the brute-force partial trace, entrywise,
    over every valid (N, r) at each (L, n)."""
    checks = []
    for L in range(1, max_L + 1):
        for n in range(1, min(L, max_n) + 1):
            count = 0
            bad = None
            for N in range(L + 1):
                for r in range(min(N, L - N) + 1):
                    q = RdmQuery(SystemSpec(L, N, r), n)
                    closed = assemble_rdm(q)
                    brute = brute_force_rdm(q, workers=workers)
                    count += 1
                    if closed.matrix.entries != brute.matrix.entries:
                        bad = (N, r)
                        break
                if bad:
                    break
            detail = (f"{count} (N, r) instances agree" if bad is None
                      else f"mismatch at N={bad[0]}, r={bad[1]}")
            checks.append({
                "name": f"closed_vs_brute L={L} n={n}",
                "pass": bad is None,
                "detail": detail,
            })
    return checks


def full_state_checks(max_L: int = FULL_STATE_MAX_L) -> list:
    """Whole-system density-matrix property suite for every (L, N, r)."""
    checks = []
    for L in range(1, max_L + 1):
        for N in range(L + 1):
            for r in range(min(N, L - N) + 1):
                sub = density_matrix_checks(SystemSpec(L, N, r), max_L=max_L)
                failed = [c["name"] for c in sub if not c["pass"]]
                checks.append({
                    "name": f"full_state L={L} N={N} r={r}",
                    "pass": not failed,
                    "detail": ("4 properties hold" if not failed
                               else "failed: " + ", ".join(failed)),
                })
    return checks


def run_verification(max_L: int = 8, max_n: int = 4, workers: int = 1) -> tuple:
    """Run every suite, shrinking the requested grid to the hard caps.

    Returns (checks, all_pass); the first check records the grid actually run.
    """
    oracle_L = min(max_L, ORACLE_MAX_L)
    oracle_n = min(max_n, ORACLE_MAX_N)
    state_L = min(max_L, FULL_STATE_MAX_L)
    checks = [{
        "name": "grid",
        "pass": True,
        "detail": (f"oracle: L <= {oracle_L}, n <= {oracle_n}; "
                   f"full state: L <= {state_L}; coefficients: n <= {COEFF_MAX_N} "
                   f"(requested L <= {max_L}, n <= {max_n})"),
    }]
    checks += coefficient_checks()
    checks += oracle_equivalence_checks(oracle_L, oracle_n, workers=workers)
    checks += full_state_checks(state_L)
    return checks, all(c["pass"] for c in checks)
