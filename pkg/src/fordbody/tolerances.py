"""Runtime-adjustable tolerances (the CLI's --eps-geom lands here)."""

from dataclasses import dataclass


@dataclass
class Tolerances:
    eps_det: float = 1e-12
    eps_geom: float = 1e-9
    eps_tangent: float = 1e-7
    eps_edge: float = 1e-6
    eps_area: float = 1e-4
    eps_mono: float = 1e-9
    eps_angle: float = 1e-9


ACTIVE = Tolerances()


def set_eps_geom(value: float) -> None:
    if value <= 0:
        raise ValueError("tolerance must be positive")
    ACTIVE.eps_geom = value


def eps_geom() -> float:
    return ACTIVE.eps_geom
