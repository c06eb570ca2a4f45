"""JSON encodings for multiplicities, decompositions, signed graphs and verdicts."""

from __future__ import annotations

import json
from pathlib import Path

from .ann import AnnDecomposition
from .arrangement import MultiBraid, new_multiplicity
from .errors import BraidFreeError, FormatError
from .freeness import (
    AnnEliminable,
    BalancedCriterion2Pass,
    Construction,
    FreenessVerdict,
    NoDecision,
    NoDecomposition,
    RankAtMostTwo,
    ReductionChain,
    Status,
    StructureWitness,
    WitnessSubset,
)
from .signed_graph import EliminationCertificate, Obstruction, SignedGraph


def _int(value, field, minimum=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"expected an integer, got {value!r}", field)
    if minimum is not None and value < minimum:
        raise FormatError(f"expected an integer >= {minimum}, got {value}", field)
    return value


def _list(value, field):
    if not isinstance(value, list):
        raise FormatError(f"expected a list, got {type(value).__name__}", field)
    return value


def _object(doc, keys, optional=()):
    if not isinstance(doc, dict):
        raise FormatError(f"expected an object, got {type(doc).__name__}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise FormatError(f"missing key(s) {missing}")
    extra = sorted(set(doc) - set(keys) - set(optional))
    if extra:
        raise FormatError(f"unexpected key(s) {extra}")
    return doc


def _pair(item, field, n, width):
    _list(item, field)
    if len(item) != width:
        raise FormatError(f"expected {width} entries, got {len(item)}", field)
    i = _int(item[0], f"{field}[0]", 0)
    j = _int(item[1], f"{field}[1]", 0)
    if not i < j:
        raise FormatError(f"pairs must satisfy i < j, got ({i}, {j})", field)
    if j >= n:
        raise FormatError(f"vertex {j} out of range 0..{n - 1}", field)
    return i, j


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True)


# --------------------------------------------------------------------------
# multiplicities


def multiplicity_to_json(m: MultiBraid) -> dict:
    return {"vertices": m.vertex_count, "edges": [list(e) for e in m.edges()]}


def multiplicity_from_json(doc) -> MultiBraid:
    _object(doc, ("vertices", "edges"))
    n = _int(doc["vertices"], "vertices", 2)
    entries = []
    for k, item in enumerate(_list(doc["edges"], "edges")):
        field = f"edges[{k}]"
        i, j = _pair(item, field, n, 3)
        entries.append((i, j, _int(item[2], f"{field}[2]")))
    try:
        return new_multiplicity(n, entries)
    except FormatError:
        raise
    except BraidFreeError as exc:
        raise FormatError(str(exc), "edges") from exc


# --------------------------------------------------------------------------
# decompositions


def decomposition_to_json(d: AnnDecomposition) -> dict:
    return {"n": list(d.n), "eps": [[i, j, e] for i, j, e in d.eps_items()]}


def decomposition_from_json(doc) -> AnnDecomposition:
    _object(doc, ("n", "eps"))
    n = [_int(v, f"n[{k}]", 0) for k, v in enumerate(_list(doc["n"], "n"))]
    seen = {}
    for k, item in enumerate(_list(doc["eps"], "eps")):
        field = f"eps[{k}]"
        i, j = _pair(item, field, len(n), 3)
        e = _int(item[2], f"{field}[2]")
        if e not in (-1, 0, 1):
            raise FormatError(f"eps must be -1, 0 or 1, got {e}", field)
        if (i, j) in seen:
            raise FormatError(f"pair ({i}, {j}) repeated", field)
        seen[i, j] = e
    if len(seen) != len(n) * (len(n) - 1) // 2:
        raise FormatError("eps must list every pair exactly once", "eps")
    return AnnDecomposition.from_items(n, [(i, j, e) for (i, j), e in seen.items()])


# --------------------------------------------------------------------------
# signed graphs


def signed_graph_to_json(G: SignedGraph) -> dict:
    return {
        "vertices": G.vertex_count,
        "plus": [list(e) for e in sorted(G.plus_edges)],
        "minus": [list(e) for e in sorted(G.minus_edges)],
    }


def signed_graph_from_json(doc) -> SignedGraph:
    _object(doc, ("vertices", "plus", "minus"))
    n = _int(doc["vertices"], "vertices", 1)
    sides = {}
    for key in ("plus", "minus"):
        sides[key] = [_pair(item, f"{key}[{k}]", n, 2) for k, item in enumerate(_list(doc[key], key))]
    try:
        return SignedGraph.from_edges(n, sides["plus"], sides["minus"])
    except BraidFreeError as exc:
        raise FormatError(str(exc)) from exc


# --------------------------------------------------------------------------
# certificates and verdicts


def obstruction_to_json(ob: Obstruction) -> dict:
    return {"kind": ob.kind, "vertices": list(ob.vertices), "sign": ob.sign}


def elimination_to_json(cert: EliminationCertificate) -> dict:
    if cert.eliminable:
        return {"eliminable": True, "ordering": list(cert.ordering)}
    return {"eliminable": False, "obstruction": obstruction_to_json(cert.obstruction)}


def certificate_to_json(cert) -> dict:
    if isinstance(cert, RankAtMostTwo):
        return {"kind": "RankAtMostTwo", "vertices": list(cert.vertices)}
    if isinstance(cert, BalancedCriterion2Pass):
        return {"kind": "BalancedCriterion2Pass", "vertices": list(cert.vertices), "strengthened": cert.strengthened}
    if isinstance(cert, AnnEliminable):
        return {
            "kind": "AnnEliminable",
            "vertices": list(cert.vertices),
            "decomposition": decomposition_to_json(cert.decomposition),
            "ordering": list(cert.ordering),
        }
    if isinstance(cert, WitnessSubset):
        return {
            "kind": "WitnessSubset",
            "subset": list(cert.subset),
            "deviation": cert.deviation,
            "q": cert.odd_triangles,
            "bound": cert.bound,
        }
    if isinstance(cert, StructureWitness):
        return {
            "kind": "Obstruction",
            "vertices": list(cert.vertices),
            "decomposition": decomposition_to_json(cert.decomposition),
            "obstruction": obstruction_to_json(cert.obstruction),
        }
    if isinstance(cert, NoDecomposition):
        return {"kind": "NoDecomposition", "vertices": list(cert.vertices), "reason": cert.reason}
    if isinstance(cert, ReductionChain):
        return {
            "kind": "ReductionChain",
            "eliminated": list(cert.eliminated),
            "core": list(cert.core),
            "inner": verdict_to_json(cert.inner),
        }
    if isinstance(cert, NoDecision):
        return {"kind": "NoDecision", "core": list(cert.core), "reason": cert.reason}
    raise TypeError(f"unknown certificate {cert!r}")


def verdict_to_json(v: FreenessVerdict) -> dict:
    return {"status": v.status.value, "certificate": certificate_to_json(v.certificate)}


def obstruction_from_json(doc) -> Obstruction:
    return Obstruction(doc["kind"], tuple(doc["vertices"]), doc["sign"])


def certificate_from_json(doc):
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "RankAtMostTwo":
        return RankAtMostTwo(tuple(doc["vertices"]))
    if kind == "BalancedCriterion2Pass":
        return BalancedCriterion2Pass(tuple(doc["vertices"]), doc["strengthened"])
    if kind == "AnnEliminable":
        return AnnEliminable(
            tuple(doc["vertices"]), decomposition_from_json(doc["decomposition"]), tuple(doc["ordering"])
        )
    if kind == "WitnessSubset":
        return WitnessSubset(tuple(doc["subset"]), doc["deviation"], doc["q"], doc["bound"])
    if kind == "Obstruction":
        return StructureWitness(
            tuple(doc["vertices"]),
            decomposition_from_json(doc["decomposition"]),
            obstruction_from_json(doc["obstruction"]),
        )
    if kind == "NoDecomposition":
        return NoDecomposition(tuple(doc["vertices"]), doc["reason"])
    if kind == "ReductionChain":
        return ReductionChain(tuple(doc["eliminated"]), tuple(doc["core"]), verdict_from_json(doc["inner"]))
    if kind == "NoDecision":
        return NoDecision(tuple(doc["core"]), doc["reason"])
    raise FormatError(f"unknown certificate kind {kind!r}", "certificate.kind")


def verdict_from_json(doc) -> FreenessVerdict:
    _object(doc, ("status", "certificate"))
    try:
        status = Status(doc["status"])
    except ValueError:
        raise FormatError(f"unknown status {doc['status']!r}", "status") from None
    return FreenessVerdict(status, certificate_from_json(doc["certificate"]))


def construction_to_json(c: Construction | None) -> dict:
    if c is None:
        return {"constructible": False}
    return {"constructible": True, "ordering": list(c.ordering), "k": c.k}


# --------------------------------------------------------------------------
# human-readable rendering


def render_certificate(cert, indent: str = "") -> str:
    if isinstance(cert, RankAtMostTwo):
        return f"{indent}at most three vertices {_set(cert.vertices)}: rank two, free"
    if isinstance(cert, AnnEliminable):
        d = cert.decomposition
        order = " < ".join(str(cert.vertices[i]) for i in cert.ordering)
        return (
            f"{indent}balanced on {_set(cert.vertices)}; ANN offsets n={list(d.n)}; "
            f"epsilon graph eliminable with ordering {order}"
        )
    if isinstance(cert, WitnessSubset):
        k = len(cert.subset) - 1
        rhs = f"q*{k}" if cert.bound == cert.odd_triangles * k else f"q*{k}-2p({k}-p)"
        return f"{indent}U={_set(cert.subset)}: DV={cert.deviation} > {rhs}={cert.bound} (q={cert.odd_triangles})"
    if isinstance(cert, ReductionChain):
        steps = ", ".join(str(v) for v in cert.eliminated)
        return (
            f"{indent}removed free vertices {steps}; core {_set(cert.core)}\n"
            + render_certificate(cert.inner.certificate, indent + "  ")
        )
    if isinstance(cert, NoDecision):
        return f"{indent}core {_set(cert.core)}: {cert.reason}"
    if isinstance(cert, StructureWitness):
        ob = cert.obstruction
        return f"{indent}epsilon graph contains {ob.kind} on {list(ob.vertices)}"
    if isinstance(cert, NoDecomposition):
        return f"{indent}no ANN decomposition: {cert.reason}"
    return f"{indent}{cert!r}"


def _set(vs) -> str:
    return "{" + ",".join(str(v) for v in vs) + "}"
