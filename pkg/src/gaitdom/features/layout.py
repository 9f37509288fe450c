"""Frozen feature vector layout (v1).

Per-frame block: 12 posture values followed by 15 movement values. The full
gait vector appends the gait cycle time and the stride length for 29 dims.
Models record the layout version and refuse mismatched inputs, so any change
here must bump LAYOUT_VERSION.
"""

LAYOUT_VERSION = "v1"

# Joints whose speed/acceleration/jerk magnitudes are tracked, in order.
TRACKED_JOINTS = ("RHand", "LHand", "Head", "RFoot", "LFoot")

POSTURE_COLUMNS = (
    "volume",
    "angle_neck_by_shoulders",
    "angle_rshoulder_neck_lshoulder",
    "angle_lshoulder_neck_rshoulder",
    "angle_vertical_back",
    "angle_head_back",
    "dist_rhand_root",
    "dist_lhand_root",
    "dist_rfoot_root",
    "dist_lfoot_root",
    "area_hands_neck",
    "area_feet_root",
)

MOVEMENT_COLUMNS = tuple(
    f"{kind}_{joint.lower()}"
    for kind in ("speed", "accel", "jerk")
    for joint in TRACKED_JOINTS
)

FRAME_COLUMNS = POSTURE_COLUMNS + MOVEMENT_COLUMNS  # 27 per-frame features

GAIT_COLUMNS = FRAME_COLUMNS + ("gait_cycle_time", "stride_length")  # 29 total

N_FRAME_FEATURES = len(FRAME_COLUMNS)
N_GAIT_FEATURES = len(GAIT_COLUMNS)

assert N_FRAME_FEATURES == 27 and N_GAIT_FEATURES == 29
