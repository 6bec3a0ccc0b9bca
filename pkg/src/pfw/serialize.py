"""JSON documents for frames, spaces, Frith frames, congruences,
quasi-uniformities and morphisms.

Documents may arrive wrapped ({"kind", "name", "payload"}) or bare (the kind
is sniffed from the payload shape); serialization always emits the wrapped
canonical form, and parse-serialize round-trips are stable on it.  Elements
are referenced by name, never by internal index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .caps import Caps, DEFAULT_CAPS
from .congruence import Congruence
from .entourage import CIdeal, QuasiUniformity
from .errors import PfwError, SchemaError
from .frith import FrithFrame, FrithHom
from .lattice import FiniteFrame, FrameHom, Poset, Sublattice, frame_from_poset, frame_from_table
from .pervin import PervinMap, PervinSpace


@dataclass(frozen=True)
class Instance:
    kind: str
    name: str
    value: object


def _expect(doc, key, path, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(path, f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{path}.{key}", f"expected {kind.__name__}")
    return value


def _name_list(value, path):
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(path, "expected a list of names")
    return value


def parse_frame(doc, path="frame", caps: Caps = DEFAULT_CAPS) -> FiniteFrame:
    kind = _expect(doc, "kind", path, str)
    if kind == "poset":
        names = _name_list(_expect(doc, "points", path), f"{path}.points")
        le = _expect(doc, "le", path, list)
        pairs = []
        for i, pair in enumerate(le):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, str) for v in pair)
            ):
                raise SchemaError(f"{path}.le[{i}]", "expected a [name, name] pair")
            if pair[0] not in names or pair[1] not in names:
                raise SchemaError(f"{path}.le[{i}]", f"unknown point in {pair}")
            pairs.append((pair[0], pair[1]))
        try:
            poset = Poset.from_pairs(names, pairs)
            element_names = doc.get("elements")
            if element_names is not None:
                element_names = _name_list(element_names, f"{path}.elements")
            return frame_from_poset(poset, caps, names=element_names)
        except PfwError as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(path, str(exc)) from exc
    if kind == "table":
        names = _name_list(_expect(doc, "elements", path), f"{path}.elements")
        meet = _expect(doc, "meet", path, list)
        join = _expect(doc, "join", path, list)
        try:
            frame, _ = frame_from_table(names, meet, join, caps)
            return frame
        except SchemaError:
            raise
        except PfwError as exc:
            raise SchemaError(path, str(exc)) from exc
    raise SchemaError(f"{path}.kind", f"unknown frame kind {kind!r}")


def serialize_frame(frame: FiniteFrame) -> dict:
    le = [
        [frame.jir.names[i], frame.jir.names[j]]
        for i in range(frame.jir.n)
        for j in range(frame.jir.n)
        if frame.jir.le(i, j)
    ]
    return {
        "kind": "poset",
        "points": list(frame.jir.names),
        "le": le,
        "elements": list(frame.names),
    }


def parse_pervin(doc, path="pervin") -> PervinSpace:
    universe = _name_list(_expect(doc, "universe", path), f"{path}.universe")
    lattice = _expect(doc, "lattice", path, list)
    index = {p: i for i, p in enumerate(universe)}
    masks = []
    for i, member in enumerate(lattice):
        member = _name_list(member, f"{path}.lattice[{i}]")
        mask = 0
        for p in member:
            if p not in index:
                raise SchemaError(f"{path}.lattice[{i}]", f"unknown point {p!r}")
            mask |= 1 << index[p]
        masks.append(mask)
    try:
        return PervinSpace(universe, masks)
    except PfwError as exc:
        raise SchemaError(path, str(exc)) from exc


def serialize_pervin(x: PervinSpace) -> dict:
    return {
        "universe": list(x.points),
        "lattice": [x.set_names(m) for m in x.sets],
    }


def parse_frith(doc, path="frith", caps: Caps = DEFAULT_CAPS) -> FrithFrame:
    frame = parse_frame(_expect(doc, "frame", path), f"{path}.frame", caps)
    member_names = _name_list(_expect(doc, "s", path), f"{path}.s")
    try:
        members = {frame.name_index(nm) for nm in member_names}
    except KeyError as exc:
        raise SchemaError(f"{path}.s", f"unknown element {exc}") from exc
    try:
        return FrithFrame(frame, Sublattice(frame, members))
    except PfwError as exc:
        raise SchemaError(path, str(exc)) from exc


def serialize_frith(f: FrithFrame) -> dict:
    return {
        "frame": serialize_frame(f.frame),
        "s": [f.frame.names[s] for s in f.s.sorted_members()],
    }


def parse_congruence(doc, path="congruence", caps: Caps = DEFAULT_CAPS) -> Congruence:
    frame = parse_frame(_expect(doc, "frame", path), f"{path}.frame", caps)
    blocks_doc = _expect(doc, "blocks", path, list)
    blocks = []
    for i, block in enumerate(blocks_doc):
        block = _name_list(block, f"{path}.blocks[{i}]")
        try:
            blocks.append([frame.name_index(nm) for nm in block])
        except KeyError as exc:
            raise SchemaError(f"{path}.blocks[{i}]", f"unknown element {exc}") from exc
    try:
        theta = Congruence.from_classes(frame, blocks)
        if not theta.is_congruence():
            raise SchemaError(path, "blocks are not meet/join compatible")
        return theta
    except SchemaError:
        raise
    except PfwError as exc:
        raise SchemaError(path, str(exc)) from exc


def serialize_congruence(theta: Congruence) -> dict:
    return {
        "frame": serialize_frame(theta.frame),
        "blocks": [[theta.frame.names[a] for a in block] for block in theta.blocks()],
    }


def parse_quni(doc, path="quni", caps: Caps = DEFAULT_CAPS) -> QuasiUniformity:
    frame = parse_frame(_expect(doc, "frame", path), f"{path}.frame", caps)
    basis_doc = _expect(doc, "basis", path, list)
    entourages = []
    for i, pairs_doc in enumerate(basis_doc):
        if not isinstance(pairs_doc, list):
            raise SchemaError(f"{path}.basis[{i}]", "expected a pair list")
        rows = [0] * frame.n
        for k, pair in enumerate(pairs_doc):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(f"{path}.basis[{i}][{k}]", "expected a [name, name] pair")
            try:
                a, b = frame.name_index(pair[0]), frame.name_index(pair[1])
            except KeyError as exc:
                raise SchemaError(f"{path}.basis[{i}][{k}]", f"unknown element {exc}") from exc
            rows[a] |= 1 << b
        ideal = CIdeal(frame, frame, rows)
        if not ideal.is_cideal():
            raise SchemaError(f"{path}.basis[{i}]", "pair set is not saturated")
        entourages.append(ideal)
    try:
        return QuasiUniformity(frame, entourages)
    except PfwError as exc:
        raise SchemaError(path, str(exc)) from exc


def serialize_quni(q: QuasiUniformity) -> dict:
    frame = q.frame
    return {
        "frame": serialize_frame(frame),
        "basis": [
            sorted([frame.names[i], frame.names[j]] for i, j in e.pairs())
            for e in q.basis
        ],
    }


def _parse_name_map(doc, path, dom_names, cod_names):
    raw = _expect(doc, "map", path, dict)
    out = {}
    for key, value in raw.items():
        if key not in dom_names:
            raise SchemaError(f"{path}.map", f"unknown domain element {key!r}")
        if not isinstance(value, str) or value not in cod_names:
            raise SchemaError(f"{path}.map", f"unknown codomain element {value!r}")
        out[key] = value
    missing = set(dom_names) - set(out)
    if missing:
        raise SchemaError(f"{path}.map", f"missing entries for {sorted(missing)}")
    return out


def parse_morphism(doc, path="morphism", caps: Caps = DEFAULT_CAPS):
    kind = _expect(doc, "kind", path, str)
    if kind == "frame-hom":
        dom = parse_frame(_expect(doc, "dom", path), f"{path}.dom", caps)
        cod = parse_frame(_expect(doc, "cod", path), f"{path}.cod", caps)
        table = _parse_name_map(doc, path, dom.names, cod.names)
        return FrameHom(dom, cod, (cod.name_index(table[nm]) for nm in dom.names))
    if kind == "pervin-map":
        dom = parse_pervin(_expect(doc, "dom", path), f"{path}.dom")
        cod = parse_pervin(_expect(doc, "cod", path), f"{path}.cod")
        table = _parse_name_map(doc, path, dom.points, cod.points)
        f = PervinMap(dom, cod, (cod.point_index(table[p]) for p in dom.points))
        if not f.is_morphism():
            raise SchemaError(path, "preimages escape the domain lattice")
        return f
    if kind == "frith-hom":
        dom = parse_frith(_expect(doc, "dom", path), f"{path}.dom", caps)
        cod = parse_frith(_expect(doc, "cod", path), f"{path}.cod", caps)
        table = _parse_name_map(doc, path, dom.frame.names, cod.frame.names)
        hom = FrameHom(
            dom.frame, cod.frame, (cod.frame.name_index(table[nm]) for nm in dom.frame.names)
        )
        try:
            return FrithHom(dom, cod, hom)
        except PfwError as exc:
            raise SchemaError(path, str(exc)) from exc
    raise SchemaError(f"{path}.kind", f"unknown morphism kind {kind!r}")


def serialize_morphism(value) -> dict:
    if isinstance(value, FrameHom):
        return {
            "kind": "frame-hom",
            "dom": serialize_frame(value.dom),
            "cod": serialize_frame(value.cod),
            "map": {
                value.dom.names[a]: value.cod.names[value.mapping[a]]
                for a in range(value.dom.n)
            },
        }
    if isinstance(value, PervinMap):
        return {
            "kind": "pervin-map",
            "dom": serialize_pervin(value.dom),
            "cod": serialize_pervin(value.cod),
            "map": {
                value.dom.points[i]: value.cod.points[value.mapping[i]]
                for i in range(value.dom.n)
            },
        }
    if isinstance(value, FrithHom):
        return {
            "kind": "frith-hom",
            "dom": serialize_frith(value.dom),
            "cod": serialize_frith(value.cod),
            "map": {
                value.dom.frame.names[a]: value.cod.frame.names[value.hom.mapping[a]]
                for a in range(value.dom.frame.n)
            },
        }
    raise SchemaError("morphism", f"cannot serialize {type(value).__name__}")


_PARSERS = {
    "frame": parse_frame,
    "pervin": lambda doc, path, caps=DEFAULT_CAPS: parse_pervin(doc, path),
    "frith": parse_frith,
    "congruence": parse_congruence,
    "quni": parse_quni,
    "morphism": parse_morphism,
}


def _sniff(doc, path):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected a JSON object")
    kind = doc.get("kind")
    if kind in ("poset", "table"):
        return "frame"
    if kind in ("frame-hom", "pervin-map", "frith-hom"):
        return "morphism"
    if "universe" in doc:
        return "pervin"
    if "frame" in doc and "s" in doc:
        return "frith"
    if "frame" in doc and "blocks" in doc:
        return "congruence"
    if "frame" in doc and "basis" in doc:
        return "quni"
    raise SchemaError(path, "cannot determine the document kind")


def parse_instance(doc, caps: Caps = DEFAULT_CAPS) -> Instance:
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected a JSON object")
    if set(doc) >= {"kind", "payload"} and doc.get("kind") in _PARSERS:
        kind = doc["kind"]
        name = doc.get("name", "anonymous")
        if not isinstance(name, str):
            raise SchemaError("name", "expected a string")
        return Instance(kind, name, _PARSERS[kind](doc["payload"], "payload", caps))
    kind = _sniff(doc, "$")
    name = doc.get("name") if isinstance(doc.get("name"), str) else "anonymous"
    return Instance(kind, name, _PARSERS[kind](doc, "$", caps))


def serialize_instance(instance: Instance) -> dict:
    value = instance.value
    if isinstance(value, FiniteFrame):
        payload = serialize_frame(value)
    elif isinstance(value, PervinSpace):
        payload = serialize_pervin(value)
    elif isinstance(value, FrithFrame):
        payload = serialize_frith(value)
    elif isinstance(value, Congruence):
        payload = serialize_congruence(value)
    elif isinstance(value, QuasiUniformity):
        payload = serialize_quni(value)
    else:
        payload = serialize_morphism(value)
    return {"kind": instance.kind, "name": instance.name, "payload": payload}
