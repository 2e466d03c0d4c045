"""Reference designations and the named choice paths (case labels A1alpha1 ...)."""
from __future__ import annotations

from .bell import DesignationMatrix
from .synthesis import ChoicePath, StageChoice

BASE_DESIGNATION = DesignationMatrix.parse([
    "1001000110",
    "0010111110",
    "0100011010",
    "0001101001",
])

# BASE_DESIGNATION with its second row added to the first.
ROWSUM_DESIGNATION = DesignationMatrix.parse([
    "1011111000",
    "0010111110",
    "0100011010",
    "0001101001",
])

_STAGE1 = StageChoice.of(1, {
    "a1": 1, "a2": 0, "b1": 0, "b2": 1,
    "c1": 0, "c2": 0, "d1": 0, "d2": 0, "e1": 0, "e2": 0, "f1": 0, "f2": 0,
})

# case A: pivot on pair 2 in the second column group
_STAGE2_A = StageChoice.of(2, {"c3": 1, "c4": 0, "d3": 0, "d4": 0, "e3": 0, "e4": 0, "f3": 0, "f4": 0})
# case C: pivot on pair 5
_STAGE2_C = StageChoice.of(5, {"c3": 0, "c4": 0, "d3": 0, "d4": 0, "e3": 0, "e4": 0, "f3": 1, "f4": 0})

_STAGE3_A = {
    "alpha1": {"e5": 0, "e6": 1, "f5": 0, "f6": 0},
    "alpha2": {"e5": 0, "e6": 1, "f5": 1, "f6": 1},
    "beta1": {"e5": 1, "e6": 1, "f5": 0, "f6": 0},
    "beta2": {"e5": 1, "e6": 1, "f5": 0, "f6": 1},
    "gamma1": {"e5": 0, "e6": 0, "f5": 0, "f6": 1},
    "gamma2": {"e5": 0, "e6": 0, "f5": 1, "f6": 1},
}

NAMED_PATHS: dict[str, ChoicePath] = {
    f"A1{greek}": ChoicePath(stages=(_STAGE1, _STAGE2_A, StageChoice.of(None, a)))
    for greek, a in _STAGE3_A.items()
}
NAMED_PATHS["C1beta1"] = ChoicePath(stages=(_STAGE1, _STAGE2_C, StageChoice.of(3, {"e5": 0, "e6": 0, "f5": 0, "f6": 0})))

SHORT_NAMES = {
    "A1α1": "A1alpha1", "A1α2": "A1alpha2", "A1β1": "A1beta1", "A1β2": "A1beta2",
    "A1γ1": "A1gamma1", "A1γ2": "A1gamma2", "C1β1": "C1beta1",
}


def named_path(name: str) -> ChoicePath:
    return NAMED_PATHS[SHORT_NAMES.get(name, name)]
