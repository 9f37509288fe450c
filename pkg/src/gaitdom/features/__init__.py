from .layout import (FRAME_COLUMNS, GAIT_COLUMNS, LAYOUT_VERSION, MOVEMENT_COLUMNS,
                     N_FRAME_FEATURES, N_GAIT_FEATURES, POSTURE_COLUMNS, TRACKED_JOINTS)
from .posture import batch_posture_features, heading_vector, posture_features
from .kinematics import joint_kinematics
from .strikes import FootStrikes, StrikeConfig, detect_foot_strikes, stride_and_cycle
from .extract import (GaitFeatures, extract_features, read_features_csv,
                      write_features_csv)
from .normalize import NormalizationParams, apply_normalization, fit_normalization

__all__ = [
    "FRAME_COLUMNS", "GAIT_COLUMNS", "LAYOUT_VERSION", "MOVEMENT_COLUMNS",
    "N_FRAME_FEATURES", "N_GAIT_FEATURES", "POSTURE_COLUMNS", "TRACKED_JOINTS",
    "batch_posture_features", "heading_vector", "posture_features",
    "joint_kinematics",
    "FootStrikes", "StrikeConfig", "detect_foot_strikes", "stride_and_cycle",
    "GaitFeatures", "extract_features", "read_features_csv", "write_features_csv",
    "NormalizationParams", "apply_normalization", "fit_normalization",
]
