"""BVH (Biovision Hierarchy) parsing and forward kinematics.

The parser accepts whitespace-tolerant HIERARCHY/MOTION text and reports
structural problems with 1-based line numbers and a stable error code, so
callers can distinguish e.g. a frame-count mismatch from non-numeric data.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BvhParseError, ChannelMismatchError

POSITION_CHANNELS = {"XPOSITION": 0, "YPOSITION": 1, "ZPOSITION": 2}
ROTATION_CHANNELS = {"XROTATION": 0, "YROTATION": 1, "ZROTATION": 2}


@dataclass(frozen=True)
class RawJoint:
    """One joint as declared in the file. End sites get an empty channel list."""

    name: str
    parent: int  # -1 for the root
    offset: np.ndarray  # (3,) in the file's native unit
    channels: tuple[str, ...]


@dataclass(frozen=True)
class SkeletonHierarchy:
    """Joints in declaration order; parents always precede children."""

    joints: tuple[RawJoint, ...]

    def __post_init__(self):
        roots = [i for i, j in enumerate(self.joints) if j.parent == -1]
        if len(roots) != 1:
            raise ValueError(f"hierarchy must have exactly one root, found {len(roots)}")
        for i, j in enumerate(self.joints):
            if j.parent >= i:
                raise ValueError(f"joint {j.name!r} declared before its parent")

    @property
    def total_channels(self) -> int:
        return sum(len(j.channels) for j in self.joints)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(j.name for j in self.joints)


class _Tokens:
    """Token stream that remembers the source line of every token."""

    def __init__(self, text: str):
        self.items: list[tuple[str, int]] = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            for tok in line.split():
                self.items.append((tok, lineno))
        self.pos = 0
        self.last_line = self.items[-1][1] if self.items else 1

    def peek(self) -> str | None:
        return self.items[self.pos][0] if self.pos < len(self.items) else None

    def line(self) -> int:
        return self.items[self.pos][1] if self.pos < len(self.items) else self.last_line

    def next(self, what: str, code: str) -> tuple[str, int]:
        if self.pos >= len(self.items):
            raise BvhParseError(f"unexpected end of file, expected {what}", self.last_line, code)
        tok, line = self.items[self.pos]
        self.pos += 1
        return tok, line

    def expect(self, literal: str, code: str) -> int:
        tok, line = self.next(literal, code)
        if tok.upper() != literal.upper():
            raise BvhParseError(f"expected {literal!r}, got {tok!r}", line, code)
        return line


def _parse_floats(tokens: _Tokens, count: int, what: str, code: str) -> np.ndarray:
    values = np.empty(count)
    for k in range(count):
        tok, line = tokens.next(what, code)
        try:
            values[k] = float(tok)
        except ValueError:
            raise BvhParseError(f"non-numeric {what} value {tok!r}", line, code) from None
    return values


def _parse_joint_body(tokens: _Tokens, joints: list[RawJoint], parent: int, name: str,
                      is_end_site: bool) -> None:
    """Parse everything between a joint's braces, recursing into children."""
    open_line = tokens.expect("{", "unbalanced-braces")
    offset = None
    channels: tuple[str, ...] = ()
    index = len(joints)
    joints.append(None)  # reserve slot so children index after their parent
    saw_child = False

    while True:
        tok = tokens.peek()
        if tok is None:
            raise BvhParseError("missing closing brace", open_line, "unbalanced-braces")
        upper = tok.upper()
        if upper == "OFFSET":
            tokens.next("OFFSET", "missing-offset")
            offset = _parse_floats(tokens, 3, "OFFSET", "non-numeric-offset")
        elif upper == "CHANNELS":
            _, line = tokens.next("CHANNELS", "missing-channels")
            count_tok, count_line = tokens.next("channel count", "missing-channels")
            try:
                count = int(count_tok)
            except ValueError:
                raise BvhParseError(f"bad channel count {count_tok!r}", count_line,
                                    "missing-channels") from None
            names = []
            for _ in range(count):
                ch, ch_line = tokens.next("channel name", "missing-channels")
                if ch.upper() not in POSITION_CHANNELS and ch.upper() not in ROTATION_CHANNELS:
                    raise BvhParseError(f"unknown channel {ch!r}", ch_line, "unknown-channel")
                names.append(ch.upper())
            channels = tuple(names)
        elif upper in ("JOINT", "END"):
            saw_child = True
            tokens.next(tok, "missing-joint-name")  # consume the keyword
            if upper == "JOINT":
                child_name, _ = tokens.next("joint name", "missing-joint-name")
                _parse_joint_body(tokens, joints, index, child_name, is_end_site=False)
            else:
                tokens.expect("Site", "bad-end-site")
                _parse_joint_body(tokens, joints, index, f"{name}_end", is_end_site=True)
        elif tok == "}":
            tokens.next("}", "unbalanced-braces")
            break
        elif tok == "{":
            raise BvhParseError("unexpected '{'", tokens.line(), "unbalanced-braces")
        elif upper in ("MOTION", "HIERARCHY"):
            raise BvhParseError(f"{tok} section starts before the hierarchy is closed",
                                tokens.line(), "unbalanced-braces")
        else:
            raise BvhParseError(f"unexpected token {tok!r} in joint body", tokens.line(),
                                "unexpected-token")

    if offset is None:
        raise BvhParseError(f"joint {name!r} has no OFFSET", open_line, "missing-offset")
    if not channels and not is_end_site:
        raise BvhParseError(f"joint {name!r} has no CHANNELS", open_line, "missing-channels")
    joints[index] = RawJoint(name=name, parent=parent, offset=offset, channels=channels)
    _ = saw_child  # end sites are leaves; nothing else to check


def parse_bvh(text: str) -> tuple[SkeletonHierarchy, np.ndarray, float]:
    """Parse BVH text into (hierarchy, motion, frame_time).

    motion has shape (n_frames, total_channels) with channel values in joint
    declaration order. Raises BvhParseError with a line number on any
    structural problem.
    """
    tokens = _Tokens(text)
    tokens.expect("HIERARCHY", "missing-hierarchy")

    joints: list[RawJoint] = []
    tok, line = tokens.next("ROOT", "missing-root")
    if tok.upper() != "ROOT":
        raise BvhParseError(f"expected ROOT, got {tok!r}", line, "missing-root")
    root_name, _ = tokens.next("root name", "missing-joint-name")
    _parse_joint_body(tokens, joints, -1, root_name, is_end_site=False)

    nxt = tokens.peek()
    if nxt is not None and nxt.upper() == "ROOT":
        raise BvhParseError("multiple ROOT declarations", tokens.line(), "multiple-roots")
    if nxt is None or nxt.upper() != "MOTION":
        raise BvhParseError("expected MOTION section", tokens.line(), "missing-motion")
    tokens.next("MOTION", "missing-motion")

    hierarchy = SkeletonHierarchy(joints=tuple(joints))

    tokens.expect("Frames:", "missing-frames")
    count_tok, count_line = tokens.next("frame count", "missing-frames")
    try:
        n_frames = int(count_tok)
    except ValueError:
        raise BvhParseError(f"bad frame count {count_tok!r}", count_line, "missing-frames") from None
    if n_frames < 1:
        raise BvhParseError(f"frame count must be >= 1, got {n_frames}", count_line,
                            "missing-frames")

    tokens.expect("Frame", "missing-frame-time")
    tokens.expect("Time:", "missing-frame-time")
    ft_tok, ft_line = tokens.next("frame time", "missing-frame-time")
    try:
        frame_time = float(ft_tok)
    except ValueError:
        raise BvhParseError(f"non-numeric frame time {ft_tok!r}", ft_line,
                            "bad-frame-time") from None
    if not (frame_time > 0 and np.isfinite(frame_time)):
        raise BvhParseError(f"frame time must be positive, got {frame_time}", ft_line,
                            "bad-frame-time")

    n_channels = hierarchy.total_channels
    motion = np.empty((n_frames, n_channels))
    for f in range(n_frames):
        if tokens.peek() is None:
            raise BvhParseError(
                f"MOTION declares {n_frames} frames but only {f} data rows present",
                tokens.last_line, "frame-count-mismatch")
        row_line = tokens.line()
        for c in range(n_channels):
            tok, line = tokens.next("motion value", "channel-count-mismatch")
            if line != row_line:
                raise BvhParseError(
                    f"frame row has too few values (expected {n_channels})", row_line,
                    "channel-count-mismatch")
            try:
                motion[f, c] = float(tok)
            except ValueError:
                raise BvhParseError(f"non-numeric motion value {tok!r}", line,
                                    "non-numeric-motion") from None
        if tokens.peek() is not None and tokens.line() == row_line:
            raise BvhParseError(
                f"frame row has too many values (expected {n_channels})", row_line,
                "channel-count-mismatch")
    if tokens.peek() is not None:
        raise BvhParseError(
            f"MOTION declares {n_frames} frames but extra data rows follow",
            tokens.line(), "frame-count-mismatch")

    return hierarchy, motion, frame_time


def _axis_rotation(axis: int, degrees: float) -> np.ndarray:
    """Right-handed rotation matrix about the X (0), Y (1), or Z (2) axis."""
    a = np.deg2rad(degrees)
    c, s = np.cos(a), np.sin(a)
    if axis == 0:
        return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    if axis == 1:
        return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def forward_kinematics(hierarchy: SkeletonHierarchy, frame: np.ndarray) -> np.ndarray:
    """World positions (J, 3) of every raw joint for one frame of channel values.

    Rotations are degrees, applied in each joint's declared channel order;
    position channels are added to the joint offset.
    """
    frame = np.asarray(frame, dtype=float)
    expected = hierarchy.total_channels
    if frame.shape != (expected,):
        raise ChannelMismatchError(
            f"expected {expected} channel values, got {frame.shape}")

    n = len(hierarchy.joints)
    world_r = np.empty((n, 3, 3))
    world_t = np.empty((n, 3))
    cursor = 0
    for i, joint in enumerate(hierarchy.joints):
        local_t = joint.offset.copy()
        local_r = np.eye(3)
        for ch in joint.channels:
            value = frame[cursor]
            cursor += 1
            if ch in POSITION_CHANNELS:
                local_t[POSITION_CHANNELS[ch]] += value
            else:
                local_r = local_r @ _axis_rotation(ROTATION_CHANNELS[ch], value)
        if joint.parent == -1:
            world_r[i] = local_r
            world_t[i] = local_t
        else:
            p = joint.parent
            world_r[i] = world_r[p] @ local_r
            world_t[i] = world_r[p] @ local_t + world_t[p]
    return world_t


def fk_all_frames(hierarchy: SkeletonHierarchy, motion: np.ndarray) -> np.ndarray:
    """Forward kinematics for every motion row, shape (n_frames, J, 3)."""
    return np.stack([forward_kinematics(hierarchy, row) for row in motion])
