from .svm import (BinarySvmModel, SvmHyperParams, kkt_violations, rbf_kernel,
                  rbf_kernel_matrix, train_binary_svm)
from .ovr import (DEGENERATE_SCORE, OvrModel, five_level_classes, predict,
                  predict_batch, three_level_classes, train_ovr, training_accuracy)
from .crossval import CvReport, cross_validate, default_trainer, grid_search
from .model_io import load_model, save_model

__all__ = [
    "BinarySvmModel", "SvmHyperParams", "kkt_violations", "rbf_kernel",
    "rbf_kernel_matrix", "train_binary_svm",
    "DEGENERATE_SCORE", "OvrModel", "five_level_classes", "predict",
    "predict_batch", "three_level_classes", "train_ovr", "training_accuracy",
    "CvReport", "cross_validate", "default_trainer", "grid_search",
    "load_model", "save_model",
]
