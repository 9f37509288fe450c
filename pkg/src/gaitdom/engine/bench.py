"""Frame-update benchmark over a fixed deterministic workload."""
from __future__ import annotations

import time
from dataclasses import dataclass

from ..mapping import Label5
from .library import GaitLibrary
from .scene import CharacterSpec, Scene, SceneConfig

CHARACTER_COUNTS = (1, 2, 5, 10, 20, 50, 100)


@dataclass(frozen=True)
class BenchRow:
    n_characters: int
    frames: int
    mean_update_ms: float


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]

    def mean_ms(self, n_characters: int) -> float:
        for row in self.rows:
            if row.n_characters == n_characters:
                return row.mean_update_ms
        raise KeyError(n_characters)


def _bench_scene(library: GaitLibrary, n: int, seed: int) -> SceneConfig:
    levels = [lv for lv in Label5 if library.by_label[lv]]
    characters = tuple(
        CharacterSpec(character_id=f"c{i}",
                      level=levels[i % len(levels)],
                      spawn=(float(i % 10), 0.0, float(i // 10)),
                      goal=(float(i % 10), 0.0, 1000.0),
                      speed=1.4)
        for i in range(n))
    return SceneConfig(characters=characters, dt=1.0 / 60.0, seed=seed)


def benchmark_update(library: GaitLibrary, frames: int = 1000,
                     character_counts=CHARACTER_COUNTS, seed: int = 7) -> BenchReport:
    """Mean wall-clock milliseconds per frame for each character count."""
    if frames < 1:
        raise ValueError(f"frames must be >= 1, got {frames}")
    rows = []
    for n in character_counts:
        scene = Scene(_bench_scene(library, n, seed), library)
        scene.step()  # warm caches outside the timed region
        start = time.perf_counter()
        for _ in range(frames):
            scene.step()
        elapsed = time.perf_counter() - start
        rows.append(BenchRow(n_characters=n, frames=frames,
                             mean_update_ms=elapsed / frames * 1000.0))
    return BenchReport(rows=tuple(rows))
