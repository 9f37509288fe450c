from .skeleton import BONES, Gait, JointId, N_JOINTS, validate_pose
from .bvh import (RawJoint, SkeletonHierarchy, fk_all_frames, forward_kinematics,
                  parse_bvh)
from .retarget import JointMapping, identity_mapping, load_mapping, retarget
from .gait_io import (gait_from_dict, gait_to_dict, load_gait, load_gait_dir,
                      save_gait)

__all__ = [
    "BONES", "Gait", "JointId", "N_JOINTS", "validate_pose",
    "RawJoint", "SkeletonHierarchy", "fk_all_frames", "forward_kinematics", "parse_bvh",
    "JointMapping", "identity_mapping", "load_mapping", "retarget",
    "gait_from_dict", "gait_to_dict", "load_gait", "load_gait_dir", "save_gait",
]
