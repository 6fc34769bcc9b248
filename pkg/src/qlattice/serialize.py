"""JSON and text encodings for the toolkit's values.

Complex entries are encoded as [re, im] pairs of doubles; Python's float
repr is shortest-round-trip, so serialize -> parse is bit-exact.
"""

from __future__ import annotations

import json

import numpy as np

from .hilbert import DensityMatrix, Ket
from .lattice import Bottom, Face, JoinNode, StateSet, Top, VPolytope, face, top, vpolytope
from .qsets import PureQset, pure_qset
from .qspace import OccState, QVector, occ_state


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
    flat = np.array([complex(re, im) for re, im in data])
    return flat.reshape(rows, cols)


def ket_to_json(k: Ket) -> dict:
    return {"dim": k.dim, "amps": [[float(z.real), float(z.imag)] for z in k.amps]}


def ket_from_json(obj: dict) -> Ket:
    amps = np.array([complex(re, im) for re, im in obj["amps"]])
    if len(amps) != int(obj["dim"]):
        raise ValueError("amplitude count does not match dim")
    return Ket(amps)


def state_set_to_json(s: StateSet) -> dict:
    if isinstance(s, Bottom):
        return {"variant": "bottom", "dim": s.dim}
    if isinstance(s, Top):
        return {"variant": "top", "dim": s.dim}
    if isinstance(s, VPolytope):
        return {"variant": "vpolytope", "dim": s.dim,
                "generators": [matrix_to_json(g.mat) for g in s.generators]}
    if isinstance(s, Face):
        return {"variant": "face", "dim": s.dim, "projector": matrix_to_json(s.projector)}
    if isinstance(s, JoinNode):
        return {"variant": "join", "dim": s.dim,
                "children": [state_set_to_json(s.left), state_set_to_json(s.right)]}
    raise ValueError(f"{type(s).__name__} has no serialized form")


def state_set_from_json(obj: dict) -> StateSet:
    variant = obj["variant"]
    if variant == "bottom":
        return Bottom(dim=obj.get("dim"))
    if variant == "top":
        return top(int(obj["dim"]))
    if variant == "vpolytope":
        return vpolytope([matrix_from_json(g) for g in obj["generators"]])
    if variant == "face":
        return face(matrix_from_json(obj["projector"]))
    if variant == "join":
        left, right = (state_set_from_json(c) for c in obj["children"])
        return JoinNode(dim=int(obj["dim"]), left=left, right=right)
    raise ValueError(f"unknown variant {variant!r}")


def occ_state_to_text(f: OccState) -> str:
    return f"{f.stats}:" + ",".join(str(m) for m in f.modes)


def occ_state_from_text(text: str) -> OccState:
    try:
        stats, _, body = text.partition(":")
        modes = [int(tok) for tok in body.split(",") if tok.strip()]
        return occ_state(modes, stats)
    except ValueError as exc:
        raise ValueError(f"bad occupation-state literal {text!r}: {exc}") from exc


def qvector_to_json(c: QVector) -> dict:
    terms = sorted(c.terms.items(), key=lambda kv: kv[0].modes)
    return {"stats": c.stats,
            "terms": [{"modes": list(f.modes), "re": amp.real, "im": amp.imag}
                      for f, amp in terms]}


def qvector_from_json(obj: dict) -> QVector:
    stats = obj["stats"]
    terms = {}
    for t in obj["terms"]:
        f = occ_state(t["modes"], stats)
        terms[f] = terms.get(f, 0) + complex(t["re"], t["im"]) / f.sign
    return QVector(stats=stats, terms=terms)


def qset_to_text(x: PureQset) -> str:
    return ",".join(f"{k}:{c}" for k, c in x.counts)


def qset_from_text(text: str) -> PureQset:
    counts: dict[str, int] = {}
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        kind, _, num = tok.rpartition(":")
        if not kind:
            raise ValueError(f"bad qset token {tok!r}")
        counts[kind] = counts.get(kind, 0) + int(num)
    return pure_qset(counts)


def qset_to_json(x: PureQset) -> dict:
    return {"counts": x.as_dict()}


def qset_from_json(obj: dict) -> PureQset:
    return pure_qset({str(k): int(v) for k, v in obj["counts"].items()})


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
