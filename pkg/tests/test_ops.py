"""Wire-format smoke coverage: every construct operation accepts a minimal
valid request and returns JSON-able output."""

import json

import pytest

from pfw.caps import DEFAULT_CAPS
from pfw.service.ops import OPS, run_op


C3 = {"kind": "poset", "points": ["p", "q"], "le": [["p", "q"]]}
D4 = {"kind": "poset", "points": ["a", "b"], "le": []}
SIERP = {"universe": ["x", "y"], "lattice": [[], ["x"], ["x", "y"]]}
FRITH_C3 = {"frame": C3, "s": ["{}", "{p}", "{p,q}"]}
FRITH_TWO = {
    "frame": {"kind": "poset", "points": ["u"], "le": []},
    "s": ["{}", "{u}"],
}
COLLAPSE = {
    "kind": "frith-hom",
    "dom": FRITH_C3,
    "cod": FRITH_TWO,
    "map": {"{}": "{}", "{p}": "{u}", "{p,q}": "{u}"},
}
D4_QUNI_ARGS = {"frame": D4, "elements": ["{a}"]}

ARGS = {
    "canonical-frame": {"frame": C3},
    "pseudocomplement": {"frame": C3, "element": "{p}"},
    "complement": {"frame": D4, "element": "{a}"},
    "sublattice-generated": {"frame": D4, "elements": ["{a}"]},
    "subframe-generated": {"frame": D4, "elements": ["{a}"]},
    "frame-report": {"frame": D4, "s": ["{}", "{a}", "{a,b}"]},
    "hom-report": {
        "morphism": {
            "kind": "frame-hom",
            "dom": C3,
            "cod": C3,
            "map": {"{}": "{}", "{p}": "{p}", "{p,q}": "{p,q}"},
        }
    },
    "congruence-generated": {"frame": C3, "pairs": [["{}", "{p}"]]},
    "closed-congruence": {"frame": C3, "element": "{p}"},
    "open-congruence": {"frame": C3, "element": "{p}"},
    "quotient": {
        "congruence": {"frame": C3, "blocks": [["{}", "{p}"], ["{p,q}"]]}
    },
    "congruence-frame": {"frame": C3},
    "relative-congruence-frame": {"frame": C3, "s": ["{}", "{p,q}"]},
    "extend-hom": {
        "morphism": {
            "kind": "frame-hom",
            "dom": C3,
            "cod": {"kind": "poset", "points": ["u"], "le": []},
            "map": {"{}": "{}", "{p}": "{u}", "{p,q}": "{u}"},
        },
        "s": ["{}", "{p,q}"],
    },
    "is-frith-congruence": {
        "frith": FRITH_C3,
        "blocks": [["{}", "{p}"], ["{p,q}"]],
    },
    "omega-topology": {"pervin": SIERP},
    "psym": {"pervin": SIERP},
    "skula": {"pervin": SIERP},
    "subspace": {"pervin": SIERP, "subset": ["y"]},
    "theta": {"pervin": SIERP, "subset": ["x"]},
    "td-report": {"pervin": SIERP},
    "frith-report": {"frith": FRITH_C3},
    "product": {"left": FRITH_TWO, "right": FRITH_TWO},
    "coproduct": {"left": FRITH_C3, "right": FRITH_TWO},
    "equalizer": {"h1": COLLAPSE, "h2": COLLAPSE},
    "coequalizer": {"h1": COLLAPSE, "h2": COLLAPSE},
    "fsym": {"frith": FRITH_C3},
    "boolean-core": {"frith": FRITH_C3},
    "idl": {"frame": C3},
    "proximity": {"frith": FRITH_C3},
    "pervin-entourage": {"frame": D4, "element": "{a}"},
    "compose-entourages": {
        "frame": D4,
        "e1": [["{}", "{a,b}"], ["{a}", "{a}"], ["{a,b}", "{}"]],
        "e2": [["{}", "{a,b}"], ["{a}", "{a}"], ["{a,b}", "{}"]],
    },
    "entourage-report": {
        "frame": D4,
        "pairs": [
            ["{}", "{}"], ["{}", "{a}"], ["{}", "{b}"], ["{}", "{a,b}"],
            ["{a}", "{}"], ["{b}", "{}"], ["{a,b}", "{}"],
            ["{a}", "{a}"],
        ],
    },
    "quni-from-sublattice": D4_QUNI_ARGS,
    "recover-sublattice": None,   # built below from quni-from-sublattice
    "uniform-reflection": None,
    "frith-quni": {"frith": FRITH_TWO},
    "frith-coreflection": None,
    "points": {"frame": D4},
    "pt": {"frith": FRITH_C3},
    "omega": {"pervin": SIERP},
    "adjunction-report": {"pervin": SIERP, "frith": FRITH_C3},
    "alpha-report": {"frith": FRITH_C3},
    "ideal-lattice": {"frame": C3},
    "completion-map": {"frith": FRITH_C3},
    "cauchy-report": {
        "frith": FRITH_C3,
        "cod": {"kind": "poset", "points": ["u"], "le": []},
        "map": {"{}": "{}", "{p}": "{u}", "{p,q}": "{u}"},
    },
    "enumerate-cauchy": {
        "frith": FRITH_C3,
        "cod": {"kind": "poset", "points": ["u"], "le": []},
    },
    "factor-cauchy": {
        "frith": FRITH_C3,
        "cod": {"kind": "poset", "points": ["u"], "le": []},
        "map": {"{}": "{}", "{p}": "{u}", "{p,q}": "{u}"},
    },
    "completeness-report": {"frith": FRITH_TWO},
}


def _quni_payload():
    return run_op("quni-from-sublattice", D4_QUNI_ARGS, DEFAULT_CAPS)["payload"]


def args_for(op):
    if op in ("recover-sublattice", "uniform-reflection", "frith-coreflection"):
        return {"quni": _quni_payload()}
    return ARGS[op]


def test_every_op_is_covered():
    assert set(ARGS) == set(OPS)


@pytest.mark.parametrize("op", sorted(OPS))
def test_op_runs_and_serializes(op):
    result = run_op(op, args_for(op), DEFAULT_CAPS)
    json.dumps(result)  # must be wire-serializable
    assert result is not None
