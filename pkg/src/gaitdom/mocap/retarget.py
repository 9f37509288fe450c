"""Name-based retargeting of raw skeletons onto the canonical 16 joints."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..errors import GaitValidationError, RetargetError
from .skeleton import Gait, JointId, N_JOINTS


@dataclass(frozen=True)
class JointMapping:
    """Maps raw joint names to canonical joints. Must cover all 16 to retarget."""

    raw_to_canonical: dict[str, JointId]

    def __post_init__(self):
        seen: dict[JointId, str] = {}
        for raw, canon in self.raw_to_canonical.items():
            if canon in seen:
                raise GaitValidationError(
                    f"both {seen[canon]!r} and {raw!r} map to {canon.name}", "mapping")
            seen[canon] = raw

    def missing(self) -> list[JointId]:
        covered = set(self.raw_to_canonical.values())
        return [j for j in JointId if j not in covered]


def load_mapping(path) -> JointMapping:
    """Read a flat {raw name: canonical name} JSON document."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise GaitValidationError("mapping file must be a flat object", "mapping")
    table = {}
    for raw, canon in data.items():
        try:
            table[str(raw)] = JointId[canon]
        except KeyError:
            raise GaitValidationError(
                f"unknown canonical joint {canon!r}", f"mapping[{raw!r}]") from None
    return JointMapping(table)


def identity_mapping() -> JointMapping:
    return JointMapping({j.name: j for j in JointId})


def retarget(raw_positions: np.ndarray, raw_names: tuple[str, ...], mapping: JointMapping,
             fps: float, gait_id: str, source: str = "") -> Gait:
    """Relabel raw joint tracks onto the canonical order.

    raw_positions has shape (tau, n_raw, 3). Positions are copied verbatim;
    no interpolation or bone inference happens here.
    """
    missing = mapping.missing()
    if missing:
        raise RetargetError(missing)
    name_index = {name: i for i, name in enumerate(raw_names)}
    canonical_to_raw_idx = {}
    for raw, canon in mapping.raw_to_canonical.items():
        if raw not in name_index:
            raise RetargetError([canon])
        canonical_to_raw_idx[canon] = name_index[raw]

    raw_positions = np.asarray(raw_positions, dtype=float)
    tau = raw_positions.shape[0]
    frames = np.empty((tau, N_JOINTS, 3))
    for joint in JointId:
        frames[:, int(joint), :] = raw_positions[:, canonical_to_raw_idx[joint], :]
    return Gait(id=gait_id, frames=frames, fps=fps, source=source)
