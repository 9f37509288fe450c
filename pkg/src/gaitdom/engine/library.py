"""Labeled gait library and constrained random selection."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NoMatchingGaitError
from ..mapping import Label5
from ..mocap.skeleton import Gait


def any_gait(_: Gait) -> bool:
    """Constraint predicate that accepts every gait."""
    return True


def max_speed_predicate(v_max: float):
    """Accept gaits whose mean root speed does not exceed v_max (m/s)."""

    def within_speed_cap(gait: Gait) -> bool:
        root = gait.joint_track(0)
        if gait.n_frames < 2:
            return True
        speeds = np.linalg.norm(np.diff(root, axis=0), axis=1) * gait.fps
        return float(speeds.mean()) <= v_max

    within_speed_cap.__name__ = f"within_speed_cap({v_max})"
    return within_speed_cap


@dataclass(frozen=True)
class GaitLibrary:
    """Gaits indexed by their five-level dominance label. Immutable and shareable."""

    by_label: dict

    @classmethod
    def from_pairs(cls, pairs) -> "GaitLibrary":
        index: dict = {level: [] for level in Label5}
        seen: set = set()
        for gait, label in pairs:
            if gait.id in seen:
                raise ValueError(f"gait {gait.id!r} listed more than once")
            seen.add(gait.id)
            index[Label5(label)].append(gait)
        return cls(by_label={k: tuple(v) for k, v in index.items()})

    def __len__(self) -> int:
        return sum(len(v) for v in self.by_label.values())

    def all_gaits(self) -> list[Gait]:
        return [g for level in Label5 for g in self.by_label[level]]


def select_gait(library: GaitLibrary, d_des: Label5, predicate, rng: np.random.Generator) -> Gait:
    """Uniform random choice among gaits with the desired label that pass the
    predicate; raises NoMatchingGaitError when none qualifies."""
    candidates = [g for g in library.by_label.get(d_des, ()) if predicate(g)]
    if not candidates:
        raise NoMatchingGaitError(d_des.value, getattr(predicate, "__name__", repr(predicate)))
    return candidates[int(rng.integers(len(candidates)))]
