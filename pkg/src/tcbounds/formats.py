"""JSON file formats for families, actions, metric spaces, complexes, spaces and reports.

Point identifiers are JSON strings or integers; product points are written as
two-element lists and read back as tuples. Sets are written in ground-set
order. Rational distances are strings ``"p/q"`` (or ``"p"``).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .bounds import EquivariantFlags, FactBase, GroupDescriptor, SpaceDescriptor, Structure
from .complexes import SimplicialComplex
from .covers import IndexedFamily, PermutationAction, Witness
from .errors import InputError
from .nerve import FiniteMetricSpace


def _freeze(value: Any) -> Any:
    """JSON lists -> tuples, recursively, so identifiers and tags are hashable."""
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, dict):
        raise InputError("objects are not allowed as point identifiers or tags")
    return value


def _thaw(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


def _require(data: Any, key: str, what: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{what} file is missing the {key!r} field")
    return data[key]


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# -- families and actions ------------------------------------------------------


def family_from_json(data: dict) -> IndexedFamily:
    points = [_freeze(p) for p in _require(data, "points", "family")]
    sets = _require(data, "sets", "family")
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise InputError("family 'sets' must be a list of lists of point ids")
    tags = data.get("tags")
    if tags is not None:
        tags = [_freeze(t) for t in tags]
    fam = IndexedFamily.from_ids(points, [[_freeze(p) for p in s] for s in sets], tags)
    raw = data.get("witnesses")
    if raw is None:
        return fam
    if not isinstance(raw, list) or len(raw) != len(fam.sets):
        raise InputError("'witnesses' must list one entry (or null) per set")
    witnesses = []
    for k, entry in enumerate(raw):
        if entry is None:
            witnesses.append(None)
            continue
        pieces = []
        for w in entry:
            piece = frozenset(fam.index_of(_freeze(p)) for p in _require(w, "piece", "witness"))
            origin = _require(w, "origin", "witness")
            if not isinstance(origin, int):
                raise InputError(f"witness origin for set {k} must be an integer")
            pieces.append(Witness(piece, origin))
        witnesses.append(tuple(pieces))
    return IndexedFamily(fam.points, fam.sets, fam.tags, tuple(witnesses))


def family_to_json(fam: IndexedFamily) -> dict:
    out: dict[str, Any] = {
        "points": [_thaw(p) for p in fam.points],
        "sets": [[_thaw(p) for p in fam.ids(k)] for k in range(len(fam.sets))],
    }
    if fam.tags is not None:
        out["tags"] = [_thaw(t) for t in fam.tags]
    if fam.witnesses is not None:
        out["witnesses"] = [
            None if pieces is None else [
                {"piece": [_thaw(fam.points[i]) for i in sorted(w.piece)], "origin": w.origin}
                for w in pieces
            ]
            for pieces in fam.witnesses
        ]
    return out


def action_from_json(data: dict) -> PermutationAction:
    points = [_freeze(p) for p in _require(data, "points", "action")]
    gens = _require(data, "generators", "action")
    return PermutationAction.from_ids(points, [[_freeze(p) for p in g] for g in gens])


def action_to_json(action: PermutationAction) -> dict:
    return {
        "points": [_thaw(p) for p in action.points],
        "generators": [[_thaw(action.points[i]) for i in g] for g in action.generators],
    }


# -- metric spaces --------------------------------------------------------------


def _number(value: Any):
    if isinstance(value, bool):
        raise InputError(f"invalid distance {value!r}")
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            pass
    raise InputError(f"invalid distance {value!r}: use a \"p/q\" string or a number")


def metric_from_json(data: dict) -> FiniteMetricSpace:
    points = [_freeze(p) for p in _require(data, "points", "metric")]
    rows = _require(data, "dist", "metric")
    return FiniteMetricSpace(tuple(points), tuple(tuple(_number(v) for v in row) for row in rows))


def metric_to_json(space: FiniteMetricSpace) -> dict:
    def fmt(v):
        return v if isinstance(v, float) else str(Fraction(v))

    return {"points": [_thaw(p) for p in space.points], "dist": [[fmt(v) for v in row] for row in space.dist]}


# -- complexes ------------------------------------------------------------------


def complex_from_json(data: dict) -> SimplicialComplex:
    n = _require(data, "vertices", "complex")
    facets = _require(data, "facets", "complex")
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise InputError("complex 'facets' must be a list of index lists")
    return SimplicialComplex(n, tuple(tuple(f) for f in facets))


def complex_to_json(K: SimplicialComplex) -> dict:
    return {"vertices": K.vertex_count, "facets": [list(f) for f in K.facets]}


# -- spaces ---------------------------------------------------------------------


def group_from_json(data: dict) -> GroupDescriptor:
    return GroupDescriptor(_require(data, "name", "group"), data.get("class", "custom"), data.get("cd"))


def group_to_json(g: GroupDescriptor) -> dict:
    out = {"name": g.name, "class": g.kind}
    if g.cd is not None:
        out["cd"] = g.cd
    return out


def space_from_json(data: dict | str, base_dir: str | Path = ".") -> SpaceDescriptor:
    """Read a space descriptor; string values for spaces or complexes are paths relative to ``base_dir``."""
    base_dir = Path(base_dir)
    if isinstance(data, str):
        path = base_dir / data
        return space_from_json(load_json(path), path.parent)
    if not isinstance(data, dict):
        raise InputError("space descriptor must be a JSON object")
    cx = data.get("complex")
    if isinstance(cx, str):
        cx = complex_from_json(load_json(base_dir / cx))
    elif cx is not None:
        cx = complex_from_json(cx)
    st = data.get("structure")
    if st is not None:
        group = st.get("group")
        st = Structure(
            _require(st, "kind", "structure"),
            space_from_json(_require(st, "base", "structure"), base_dir),
            space_from_json(_require(st, "fiber", "structure"), base_dir),
            group_from_json(group) if group is not None else None,
        )
    flags = data.get("equivariantFlags")
    if flags is not None:
        flags = EquivariantFlags(
            bool(flags.get("freeAction", False)),
            bool(flags.get("properAction", False)),
            bool(flags.get("simplyConnectedTotal", False)),
        )
    aspherical = data.get("aspherical", False)
    if not isinstance(aspherical, bool):
        raise InputError("'aspherical' must be true or false")
    return SpaceDescriptor(
        _require(data, "name", "space"),
        group_from_json(_require(data, "group", "space")),
        aspherical,
        data.get("dim"),
        cx,
        st,
        flags,
    )


def space_to_json(desc: SpaceDescriptor) -> dict:
    """Inline form of a descriptor (complexes and sub-spaces embedded, not referenced)."""
    out: dict[str, Any] = {"name": desc.name}
    if desc.dim is not None:
        out["dim"] = desc.dim
    out["group"] = group_to_json(desc.group)
    out["aspherical"] = desc.aspherical
    if desc.complex is not None:
        out["complex"] = complex_to_json(desc.complex)
    if desc.structure is not None:
        st = desc.structure
        out["structure"] = {"kind": st.kind, "base": space_to_json(st.base), "fiber": space_to_json(st.fiber)}
        if st.group is not None:
            out["structure"]["group"] = group_to_json(st.group)
    if desc.equivariant_flags is not None:
        f = desc.equivariant_flags
        out["equivariantFlags"] = {
            "freeAction": f.free_action,
            "simplyConnectedTotal": f.simply_connected_total,
            "properAction": f.proper_action,
        }
    return out


# -- reports --------------------------------------------------------------------


def report_to_json(report: FactBase) -> dict:
    return report.to_json()


def report_from_json(data: dict) -> FactBase:
    return FactBase.from_json(data)
