"""Canonical gait interchange format (JSON).

One document per gait: {"id": str, "fps": number, "source": str,
"frames": [[ [x, y, z] x16 ] ...]} with joints in canonical JointId order.
This is the contract shared by the CLI, the HTTP service, and the UI.
"""
from __future__ import annotations

import json
import math
import os

import numpy as np

from ..errors import GaitValidationError
from .skeleton import Gait, N_JOINTS


def gait_to_dict(gait: Gait) -> dict:
    return {
        "id": gait.id,
        "fps": gait.fps,
        "source": gait.source,
        "frames": [[[float(c) for c in joint] for joint in frame] for frame in gait.frames],
    }


def gait_from_dict(doc: dict) -> Gait:
    """Validate an interchange document; schema violations name the field path."""
    if not isinstance(doc, dict):
        raise GaitValidationError("document must be an object", "$")
    for key in ("id", "fps", "frames"):
        if key not in doc:
            raise GaitValidationError("missing required field", key)
    if not isinstance(doc["id"], str):
        raise GaitValidationError("must be text", "id")
    fps = doc["fps"]
    if not isinstance(fps, (int, float)) or isinstance(fps, bool) \
            or not math.isfinite(fps) or fps <= 0:
        raise GaitValidationError(f"must be a finite positive number, got {fps!r}", "fps")
    source = doc.get("source", "")
    if not isinstance(source, str):
        raise GaitValidationError("must be text", "source")
    frames = doc["frames"]
    if not isinstance(frames, list) or len(frames) < 1:
        raise GaitValidationError("must be a non-empty array", "frames")
    for t, frame in enumerate(frames):
        if not isinstance(frame, list) or len(frame) != N_JOINTS:
            raise GaitValidationError(
                f"expected {N_JOINTS} joints, got {len(frame) if isinstance(frame, list) else type(frame).__name__}",
                f"frames[{t}]")
        for j, coords in enumerate(frame):
            if not isinstance(coords, list) or len(coords) != 3:
                raise GaitValidationError("expected [x, y, z]", f"frames[{t}][{j}]")
            for c in coords:
                if not isinstance(c, (int, float)) or isinstance(c, bool) or not math.isfinite(c):
                    raise GaitValidationError(
                        f"non-finite or non-numeric coordinate {c!r}", f"frames[{t}][{j}]")
    arr = np.asarray(frames, dtype=float)
    return Gait(id=doc["id"], frames=arr, fps=float(fps), source=source)


def save_gait(gait: Gait, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(gait_to_dict(gait), fh)
        fh.write("\n")


def load_gait(path) -> Gait:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GaitValidationError(f"not valid JSON: {exc}", "$") from exc
    return gait_from_dict(doc)


def load_gait_dir(path) -> list[Gait]:
    """Load every *.json gait document in a directory, sorted by filename."""
    gaits = []
    for name in sorted(os.listdir(path)):
        if name.endswith(".json"):
            gaits.append(load_gait(os.path.join(path, name)))
    return gaits
