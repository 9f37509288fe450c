"""Pluggable navigation: scene state snapshot plus a straight-line stub.

Any navigation algorithm can drive the engine by producing a new root
position per character per frame; the straight-line walker stands in for
external planners.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .playback import sample_pose


@dataclass(frozen=True)
class NavigationState:
    """Positions and velocities of every live character at one time step."""

    character_ids: tuple[str, ...]
    positions: np.ndarray   # (n, 3)
    velocities: np.ndarray  # (n, 3)


def straight_line_navigation(position: np.ndarray, goal: np.ndarray, speed: float,
                             dt: float) -> np.ndarray:
    """Move toward the goal at most speed*dt; lands exactly on the goal."""
    if speed < 0:
        raise ValueError(f"speed must be >= 0, got {speed}")
    position = np.asarray(position, dtype=float)
    goal = np.asarray(goal, dtype=float)
    offset = goal - position
    distance = float(np.linalg.norm(offset))
    step = speed * dt
    if distance <= step or distance == 0.0:
        return goal.copy()
    return position + offset * (step / distance)


def make_straight_line_nav(goal, speed: float):
    """Per-character nav callback walking straight to a fixed goal."""
    goal = np.asarray(goal, dtype=float)

    def nav(state, dt: float) -> np.ndarray:
        return straight_line_navigation(state.root, goal, speed, dt)

    nav.__name__ = "straight_line_nav"
    return nav


def source_root_nav(gait, spawn):
    """Navigation that replays the source gait's own root track from spawn.

    With this callback, playback reproduces the source gait translated to the
    spawn point (used to verify the playback path).
    """
    spawn = np.asarray(spawn, dtype=float)
    base = gait.frames[0, 0].copy()

    def nav(state, dt: float) -> np.ndarray:
        cursor = (state.cursor + dt * gait.fps) % gait.n_frames
        return spawn + sample_pose(gait, cursor)[0] - base

    nav.__name__ = "source_root_nav"
    return nav
