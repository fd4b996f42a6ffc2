"""Named example configurations used by the CLI, the service, and the tests."""

from __future__ import annotations

from typing import Dict

_CONST_ALPHA_51 = [[[[1.0, 0.0]], [[5.0, 1.0]]], [[[0.0, 0.0]], [[1.0, 0.0]]]]
_CONST_BETA_55 = [[[[1.0, 0.0]], [[0.0, 5.5]]], [[[0.0, 0.0]], [[1.0, 0.0]]]]
# gamma_t = [[-1 + i t, -1], [1, 0]]
_GAMMA_T = [[[[-1.0, 0.0], [0.0, 1.0]], [[-1.0, 0.0]]],
            [[[1.0, 0.0]], [[0.0, 0.0]]]]

PRESETS: Dict[str, Dict] = {
    "simple": {
        "kind": "rep",
        "config": {"a": [6.0, 2.0], "b": [0.0, 4.5], "c": [2.0, 1.0]},
    },
    "bumping-t1.2": {
        "kind": "rep",
        "config": {"a": [5.0, 1.0], "b": [0.0, 5.5], "c": [-1.0, 1.2]},
    },
    "sliding-t0.8": {
        "kind": "rep",
        "config": {"a": [5.0, 1.0], "b": [0.0, 5.5], "c": [-1.0, 0.8]},
    },
    "bumping-path": {
        "kind": "path",
        "config": {
            "t_range": [2.0, 1.2],
            "samples": 64,
            "entries": {"alpha": _CONST_ALPHA_51, "beta": _CONST_BETA_55,
                        "gamma": _GAMMA_T},
        },
    },
    "sliding-path": {
        "kind": "path",
        "config": {
            "t_range": [1.2, 0.8],
            "samples": 64,
            "entries": {"alpha": _CONST_ALPHA_51, "beta": _CONST_BETA_55,
                        "gamma": _GAMMA_T},
        },
    },
    "tunnel-path": {
        "kind": "path",
        "config": {
            "t_range": [2.0, 0.8],
            "samples": 128,
            "entries": {"alpha": _CONST_ALPHA_51, "beta": _CONST_BETA_55,
                        "gamma": _GAMMA_T},
        },
    },
}


def preset_names():
    return list(PRESETS)


def preset_config(name: str) -> Dict:
    return PRESETS[name]["config"]
