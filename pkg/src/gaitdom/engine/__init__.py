from .library import GaitLibrary, any_gait, max_speed_predicate, select_gait
from .playback import CharacterState, sample_pose, spawn_character, step_character
from .navigation import (NavigationState, make_straight_line_nav, source_root_nav,
                         straight_line_navigation)
from .scene import (CharacterSpec, Scene, SceneConfig, TRACE_HEADER,
                    load_scene_config, run_scene_to_csv)
from .bench import CHARACTER_COUNTS, BenchReport, BenchRow, benchmark_update

__all__ = [
    "GaitLibrary", "any_gait", "max_speed_predicate", "select_gait",
    "CharacterState", "sample_pose", "spawn_character", "step_character",
    "NavigationState", "make_straight_line_nav", "source_root_nav",
    "straight_line_navigation",
    "CharacterSpec", "Scene", "SceneConfig", "TRACE_HEADER",
    "load_scene_config", "run_scene_to_csv",
    "CHARACTER_COUNTS", "BenchReport", "BenchRow", "benchmark_update",
]
