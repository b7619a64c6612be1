"""Machine-readable output documents: JSON builders and CSV line streams.

Rationals cross the boundary as "num/den" strings; the entropy is the single
float field and is labeled with its unit.
"""

from __future__ import annotations

import json
from typing import Iterator

from .rational import rational_str
from .rdm import (RdmQuery, ThermoParams, iter_nonzero_entries, subblock_count,
                  subblock_values, thermo_values, validate_query, validate_thermo)
from .spectrum import entropy, full_spectrum, purity


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def elements_document(q: RdmQuery) -> dict:
    validate_query(q)
    vals = subblock_values(q)
    return {
        "L": q.system.L,
        "N": q.system.N,
        "r": q.system.r,
        "n": q.n,
        "elements": [
            {"k": k, "Z": Z, "value": rational_str(v),
             "count": subblock_count(q.n, k, Z)}
            for (k, Z), v in sorted(vals.items())
        ],
    }


def elements_csv(q: RdmQuery) -> Iterator[str]:
    doc = elements_document(q)
    yield "k,Z,value,count"
    for e in doc["elements"]:
        yield f"{e['k']},{e['Z']},{e['value']},{e['count']}"


def matrix_csv(q: RdmQuery, cap: int = 14) -> Iterator[str]:
    yield "P,Q,value"
    for P, Q, v in iter_nonzero_entries(q, cap=cap):
        yield f"{P},{Q},{rational_str(v)}"


def matrix_document(q: RdmQuery, cap: int = 14) -> dict:
    return {
        "L": q.system.L,
        "N": q.system.N,
        "r": q.system.r,
        "n": q.n,
        "entries": [
            {"P": P, "Q": Q, "value": rational_str(v)}
            for P, Q, v in iter_nonzero_entries(q, cap=cap)
        ],
    }


def spectrum_document(q: RdmQuery) -> dict:
    validate_query(q)
    entries = full_spectrum(q)
    return {
        "L": q.system.L,
        "N": q.system.N,
        "r": q.system.r,
        "n": q.n,
        "entries": [
            {"k": e.k, "s": e.s, "value": rational_str(e.value),
             "multiplicity": e.multiplicity}
            for e in entries
        ],
        "entropy_nats": entropy(entries),
        "purity": rational_str(purity(entries)),
    }


def spectrum_csv(q: RdmQuery) -> Iterator[str]:
    doc = spectrum_document(q)
    yield "k,s,value,multiplicity"
    for e in doc["entries"]:
        yield f"{e['k']},{e['s']},{e['value']},{e['multiplicity']}"


def thermo_document(tp: ThermoParams) -> dict:
    validate_thermo(tp)
    from .rdm import decay_ratio
    return {
        "p": rational_str(tp.p),
        "mu": rational_str(tp.mu),
        "n": tp.n,
        "eta": rational_str(decay_ratio(tp.p, tp.mu)),
        "elements": [
            {"k": k, "Z": Z, "value": rational_str(v)}
            for (k, Z), v in sorted(thermo_values(tp).items())
        ],
    }


def thermo_csv(tp: ThermoParams) -> Iterator[str]:
    doc = thermo_document(tp)
    yield "k,Z,value"
    for e in doc["elements"]:
        yield f"{e['k']},{e['Z']},{e['value']}"


def checks_document(checks: list) -> dict:
    return {"checks": [
        {"name": c["name"], "pass": bool(c["pass"]), "detail": c["detail"]}
        for c in checks
    ]}
