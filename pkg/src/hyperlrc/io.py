"""Flat-file formats: generator matrices as CSV, plans and reports as JSON."""
from __future__ import annotations

import csv
import json
import re
from pathlib import Path

import numpy as np

from .errors import ConfigError, FieldError
from .finite_field import FieldCtx, conway_field, ff_make

SCHEMA = 1


# ---------------------------------------------------------------------------
# fields

def parse_field(spec: str) -> FieldCtx:
    """'9', '3^2', 'F_9', 'GF(9)' or 'p=3,m=2[,modulus=2,2,1]'.

    Without an explicit modulus the Conway polynomial is used when tabulated.
    """
    s = spec.strip().replace(" ", "")
    try:
        if "=" in s:
            kv = dict(re.findall(r"(p|m|modulus)=([0-9,]+?)(?=,(?:p|m|modulus)=|$)", s))
            p = int(kv["p"])
            m = int(kv.get("m", 1))
            if "modulus" in kv:
                return ff_make(p, m, [int(c) for c in kv["modulus"].split(",")])
            return conway_field(p, m)
        s = re.sub(r"^(F_|GF\(|F)", "", s).rstrip(")")
        if "^" in s:
            p, m = (int(v) for v in s.split("^"))
            return conway_field(p, m)
        q = int(s)
    except (KeyError, ValueError) as e:
        raise FieldError(f"cannot parse field {spec!r}") from e
    for p in range(3, q + 1, 2):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                raise FieldError(f"field order {q} is not a prime power")
            return conway_field(p, m)
    raise FieldError(f"field {spec!r}: order must be a power of an odd prime")


def field_header(F: FieldCtx) -> str:
    return f"# field p={F.p} m={F.m} modulus={','.join(map(str, F.modulus))}"


def field_from_header(line: str) -> FieldCtx:
    m = re.match(r"#\s*field\s+p=(\d+)\s+m=(\d+)\s+modulus=([\d,]+)", line.strip())
    if not m:
        raise ConfigError(f"missing or malformed field header: {line.strip()!r}")
    return ff_make(int(m.group(1)), int(m.group(2)), [int(c) for c in m.group(3).split(",")])


def field_json(F: FieldCtx) -> dict:
    return {"p": F.p, "m": F.m, "modulus": list(F.modulus)}


def field_from_json(obj: dict) -> FieldCtx:
    return ff_make(obj["p"], obj["m"], obj["modulus"])


# ---------------------------------------------------------------------------
# matrices

def write_matrix_csv(path, F: FieldCtx, G) -> None:
    G = np.asarray(G, dtype=np.int64)
    with open(path, "w", newline="") as fh:
        fh.write(field_header(F) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        for row in G:
            w.writerow([str(int(v)) if F.m == 1 else F.to_str(int(v)) for v in row])


def read_matrix_csv(path) -> tuple[FieldCtx, np.ndarray]:
    with open(path, newline="") as fh:
        header = fh.readline()
        F = field_from_header(header)
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    try:
        G = np.array([[F.parse(v.strip()) for v in r] for r in rows], dtype=np.int64)
    except (ValueError, KeyError) as e:
        raise ConfigError(f"{path}: bad matrix entry ({e})") from e
    if len(rows) and len({len(r) for r in rows}) != 1:
        raise ConfigError(f"{path}: ragged rows")
    return F, G.reshape(len(rows), -1) if len(rows) else np.zeros((0, 0), dtype=np.int64)


# ---------------------------------------------------------------------------
# code records

def code_record(code, curve=None) -> dict:
    F = code.field
    rec = {
        "schema": SCHEMA,
        "field": field_json(F),
        "n": code.n,
        "k": code.k,
        "r": code.r,
        "d_lower": code.d_lower,
        "groups": [list(map(int, g.cols)) for g in code.groups],
        "tail": [bool(g.tail) for g in code.groups],
        "local_matrices": [np.asarray(g.M).tolist() for g in code.groups],
        "places": [pl.to_json() for pl in code.places],
        "plan": code.plan,
    }
    if curve is not None:
        rec["curve"] = {"f": list(curve.f)}
    return rec


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n")


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON ({e})") from e


def groups_from_record(rec: dict, n: int) -> tuple[int, list, list | None, list]:
    """(r, groups, local matrices or None, tail flags) from a plan or groups file."""
    if "groups" not in rec:
        raise ConfigError("groups file has no 'groups' entry")
    groups = [list(map(int, g)) for g in rec["groups"]]
    r = int(rec.get("r", max(len(g) for g in groups) - 1))
    for g in groups:
        if any(c < 0 or c >= n for c in g):
            raise ConfigError(f"group {g} indexes outside 0..{n - 1}")
    mats = rec.get("local_matrices")
    mats = [np.asarray(M, dtype=np.int64) for M in mats] if mats else None
    tail = rec.get("tail", [False] * len(groups))
    return r, groups, mats, tail
