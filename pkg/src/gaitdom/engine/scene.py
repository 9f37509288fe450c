"""Scene configuration, stepping, and trace export."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from ..errors import GaitValidationError
from ..mapping import Label5
from .library import GaitLibrary, any_gait, max_speed_predicate, select_gait
from .navigation import NavigationState, make_straight_line_nav
from .playback import CharacterState, spawn_character, step_character


@dataclass(frozen=True)
class CharacterSpec:
    character_id: str
    level: Label5
    spawn: tuple[float, float, float]
    goal: tuple[float, float, float]
    speed: float
    speed_cap: float | None = None  # optional selection constraint, m/s


@dataclass(frozen=True)
class SceneConfig:
    characters: tuple[CharacterSpec, ...]
    dt: float
    seed: int


def load_scene_config(path) -> SceneConfig:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        characters = []
        for i, c in enumerate(doc["characters"]):
            characters.append(CharacterSpec(
                character_id=str(c.get("id", f"c{i}")),
                level=Label5(c["level"]),
                spawn=tuple(float(v) for v in c["spawn"]),
                goal=tuple(float(v) for v in c["goal"]),
                speed=float(c["speed"]),
                speed_cap=float(c["speed_cap"]) if "speed_cap" in c else None))
        return SceneConfig(characters=tuple(characters),
                           dt=float(doc.get("dt", 1.0 / 60.0)),
                           seed=int(doc.get("seed", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise GaitValidationError(f"bad scene config: {exc}", "scene") from exc


class Scene:
    """A set of characters walking straight lines to their goals."""

    def __init__(self, config: SceneConfig, library: GaitLibrary):
        self.config = config
        rng = np.random.default_rng(config.seed)
        self.states: list[CharacterState] = []
        self.navs = []
        for spec in config.characters:
            predicate = (max_speed_predicate(spec.speed_cap)
                         if spec.speed_cap is not None else any_gait)
            gait = select_gait(library, spec.level, predicate, rng)
            self.states.append(spawn_character(spec.character_id, gait, spec.spawn))
            self.navs.append(make_straight_line_nav(spec.goal, spec.speed))
        self.frame = 0

    def navigation_state(self) -> NavigationState:
        n = len(self.states)
        positions = np.stack([s.root for s in self.states]) if n else np.zeros((0, 3))
        return NavigationState(
            character_ids=tuple(s.character_id for s in self.states),
            positions=positions,
            velocities=np.zeros((n, 3)))

    def step(self) -> list[np.ndarray]:
        """Advance every character one frame; returns their joint positions."""
        poses = []
        for i, state in enumerate(self.states):
            new_state, world = step_character(state, self.navs[i], self.config.dt)
            self.states[i] = new_state
            poses.append(world)
        self.frame += 1
        return poses

    def run(self, frames: int, trace_writer=None) -> None:
        for _ in range(frames):
            self.step()
            if trace_writer is not None:
                for state in self.states:
                    trace_writer.writerow([self.frame, state.character_id,
                                           repr(float(state.root[0])),
                                           repr(float(state.root[1])),
                                           repr(float(state.root[2])),
                                           repr(float(state.cursor))])


TRACE_HEADER = ("frame", "character_id", "x", "y", "z", "cursor")


def run_scene_to_csv(config: SceneConfig, library: GaitLibrary, frames: int, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_HEADER)
        Scene(config, library).run(frames, trace_writer=writer)
