"""Certificates: self-contained JSON records of a constructed structure,
its pairing, and the checks they passed, rebuildable and re-checkable
without any state from the producing run."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .construct import CaseTrace
from .errors import CertificateError, SchemaError, VersionMismatch
from .flows import Path
from .graphs import build, full_view
from .pairing import OmegaPathSet, formula_value, pairing_capacity
from .perms import parse_family, parse_permutation, permutation_text, rank
from .tripod import TripodStructure, standard_target
from .verification import check_omega_path_set, check_tripod

SCHEMA_VERSION = 1

_TOP_KEYS = frozenset({
    "schema_version", "n", "family", "omega_ranks", "omega_perms",
    "case", "bundles", "omega_paths", "pi3", "solver", "checks",
})
_CASE_KEYS = frozenset({
    "case_id", "roles", "copies", "auxiliary", "fallback", "seed",
})


@dataclass(frozen=True)
class Certificate:
    n: int
    family: str
    omega_ranks: tuple[int, int, int]
    omega_perms: tuple[str, str, str]
    case: dict
    bundles: dict
    omega_paths: list
    pi3: dict | None
    solver: dict
    checks: list
    schema_version: int = SCHEMA_VERSION


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def make_certificate(g, structure: TripodStructure, trace: CaseTrace,
                     omega_set: OmegaPathSet, pi3: dict | None = None,
                     solver: dict | None = None) -> Certificate:
    view = full_view(g)
    target = standard_target(g.n)
    rows = []
    tri_verdict = check_tripod(view, structure, target, exact=True)
    rows.append({"name": "structure-valid", "pass": tri_verdict.ok})
    counts = structure.counts()
    rows.append({"name": "bundle-counts-standard",
                 "pass": counts == target.as_tuple()})
    om_verdict = check_omega_path_set(view, structure.omega, omega_set.paths)
    rows.append({"name": "omega-paths-valid", "pass": om_verdict.ok})
    rows.append({"name": "omega-path-count-maximal",
                 "pass": len(omega_set) == pairing_capacity(*counts)})
    meta = dict(solver or {})
    meta.setdefault("seed", trace.seed)
    meta.setdefault("ranking", "lehmer-lex")
    return Certificate(
        n=g.n,
        family=g.family.value,
        omega_ranks=tuple(structure.omega),
        omega_perms=tuple(g.vertex_text(v) for v in structure.omega),
        case={
            "case_id": trace.case_id,
            "roles": _jsonable(trace.roles),
            "copies": _jsonable(trace.copies),
            "auxiliary": _jsonable(trace.auxiliary),
            "fallback": trace.fallback,
            "seed": trace.seed,
        },
        bundles={
            "ab": [list(p.vertices) for p in structure.bundle_ab],
            "ac": [list(p.vertices) for p in structure.bundle_ac],
            "bc": [list(p.vertices) for p in structure.bundle_bc],
        },
        omega_paths=[list(p.vertices) for p in omega_set.paths],
        pi3=_jsonable(pi3) if pi3 is not None else None,
        solver=_jsonable(meta),
        checks=rows,
    )


def emit(cert: Certificate) -> str:
    payload = {
        "schema_version": cert.schema_version,
        "n": cert.n,
        "family": cert.family,
        "omega_ranks": list(cert.omega_ranks),
        "omega_perms": list(cert.omega_perms),
        "case": _jsonable(cert.case),
        "bundles": _jsonable(cert.bundles),
        "omega_paths": _jsonable(cert.omega_paths),
        "pi3": cert.pi3,
        "solver": cert.solver,
        "checks": cert.checks,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def save(cert: Certificate, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(emit(cert))


def _need(payload: dict, key: str):
    if key not in payload:
        raise SchemaError(f"certificate missing key {key!r}")
    return payload[key]


def load_text(text: str) -> Certificate:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SchemaError("certificate must be a JSON object")
    unknown = set(payload) - _TOP_KEYS
    if unknown:
        raise SchemaError(f"unknown certificate keys: {sorted(unknown)}")
    version = _need(payload, "schema_version")
    if version != SCHEMA_VERSION:
        raise VersionMismatch(
            f"certificate schema {version}, reader supports {SCHEMA_VERSION}")
    case = _need(payload, "case")
    if not isinstance(case, dict):
        raise SchemaError("case must be an object")
    unknown = set(case) - _CASE_KEYS
    if unknown:
        raise SchemaError(f"unknown case keys: {sorted(unknown)}")
    missing = _CASE_KEYS - set(case)
    if missing:
        raise SchemaError(f"case missing keys: {sorted(missing)}")
    omega_ranks = _need(payload, "omega_ranks")
    omega_perms = _need(payload, "omega_perms")
    if len(omega_ranks) != 3 or len(omega_perms) != 3:
        raise SchemaError("omega entries must list exactly three terminals")
    bundles = _need(payload, "bundles")
    if set(bundles) != {"ab", "ac", "bc"}:
        raise SchemaError("bundles must carry exactly ab, ac, bc")
    return Certificate(
        n=_need(payload, "n"),
        family=_need(payload, "family"),
        omega_ranks=tuple(omega_ranks),
        omega_perms=tuple(omega_perms),
        case=case,
        bundles=bundles,
        omega_paths=_need(payload, "omega_paths"),
        pi3=_need(payload, "pi3"),
        solver=_need(payload, "solver"),
        checks=_need(payload, "checks"),
    )


def load(path: str) -> Certificate:
    with open(path) as fh:
        return load_text(fh.read())


def _structure_from(cert: Certificate) -> TripodStructure:
    return TripodStructure(
        tuple(cert.omega_ranks),
        tuple(Path(tuple(vs)) for vs in cert.bundles["ab"]),
        tuple(Path(tuple(vs)) for vs in cert.bundles["ac"]),
        tuple(Path(tuple(vs)) for vs in cert.bundles["bc"]),
    )


def verify_certificate(cert: Certificate) -> tuple[str, list]:
    """Re-check a certificate from scratch.

    Returns (status, rows): status "ok" when everything holds, "invalid"
    when recorded paths fail structural checks, "mismatch" when the
    structure is sound but a recorded claim does not reproduce.
    """
    rows: list[tuple[str, bool, str]] = []
    invalid = False
    mismatch = False

    def add(name, ok, detail="", hard=False):
        nonlocal invalid, mismatch
        rows.append((name, bool(ok), detail))
        if not ok:
            if hard:
                invalid = True
            else:
                mismatch = True

    try:
        family = parse_family(cert.family)
        g = build(cert.n, family)
    except Exception as exc:
        return "invalid", [("graph-rebuild", False, str(exc))]
    view = full_view(g)
    target = standard_target(g.n)

    perms_ok = True
    for v, text in zip(cert.omega_ranks, cert.omega_perms):
        try:
            sigma = parse_permutation(text, g.n)
        except Exception:
            perms_ok = False
            break
        if rank(sigma) != v or permutation_text(g.perm(v)) != text:
            perms_ok = False
            break
    add("omega-ranks-match-perms", perms_ok, hard=True)

    try:
        structure = _structure_from(cert)
    except Exception as exc:
        return "invalid", rows + [("bundle-shapes", False, str(exc))]
    verdict = check_tripod(view, structure, target, exact=True)
    add("structure-valid", verdict.ok,
        "; ".join(verdict.violations[:3]), hard=True)
    add("bundle-counts-standard",
        structure.counts() == target.as_tuple(),
        f"counts {structure.counts()} vs {target.as_tuple()}")

    omega_paths = tuple(Path(tuple(vs)) for vs in cert.omega_paths)
    om_verdict = check_omega_path_set(view, structure.omega, omega_paths)
    add("omega-paths-valid", om_verdict.ok,
        "; ".join(om_verdict.violations[:3]), hard=True)
    add("omega-path-count-maximal",
        len(omega_paths) == pairing_capacity(*structure.counts()),
        f"{len(omega_paths)} paths")

    if cert.pi3 is not None:
        add("pi3-formula", cert.pi3.get("formula") == formula_value(g.n),
            f"recorded {cert.pi3.get('formula')}")
        lower, upper = cert.pi3.get("lower"), cert.pi3.get("upper")
        if lower is not None and upper is not None:
            add("pi3-bounds-ordered", lower <= upper, f"{lower} > {upper}")

    recorded = all(row.get("pass") for row in cert.checks)
    add("recorded-checks-clean", recorded)

    if invalid:
        return "invalid", rows
    if mismatch:
        return "mismatch", rows
    return "ok", rows
