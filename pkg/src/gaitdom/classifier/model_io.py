"""Versioned JSON model files (text-based and diff-friendly)."""
from __future__ import annotations

import json

import numpy as np

from ..errors import ModelFormatError
from ..features.normalize import NormalizationParams
from ..mapping import Label3, Label5
from .ovr import OvrModel
from .svm import BinarySvmModel

FORMAT_NAME = "gaitdom-ovr-model"
FORMAT_VERSION = 1


def _label_from_string(value: str):
    for enum in (Label5, Label3):
        try:
            return enum(value)
        except ValueError:
            continue
    return value


def save_model(model: OvrModel, path) -> None:
    doc = {
        "format": FORMAT_NAME,
        "format_version": FORMAT_VERSION,
        "layout": model.layout,
        "classes": [getattr(c, "value", str(c)) for c in model.classes],
        "normalization": {
            "min": [float(v) for v in model.normalization.minimum],
            "max": [float(v) for v in model.normalization.maximum],
        },
        "metadata": dict(model.metadata),
        "binaries": [
            None if b is None else {
                "support_vectors": [[float(v) for v in row] for row in b.support_vectors],
                "dual_coef": [float(v) for v in b.dual_coef],
                "bias": b.bias,
                "gamma": b.gamma,
                "converged": b.converged,
            }
            for b in model.binaries
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_model(path) -> OvrModel:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"corrupt model file {path}: {exc}") from exc
    try:
        if doc["format"] != FORMAT_NAME:
            raise ModelFormatError(f"not a model file: format {doc['format']!r}")
        if doc["format_version"] != FORMAT_VERSION:
            raise ModelFormatError(
                f"unsupported model format version {doc['format_version']!r}")
        binaries = []
        for b in doc["binaries"]:
            if b is None:
                binaries.append(None)
            else:
                binaries.append(BinarySvmModel(
                    support_vectors=np.asarray(b["support_vectors"], dtype=float),
                    dual_coef=np.asarray(b["dual_coef"], dtype=float),
                    bias=float(b["bias"]),
                    gamma=float(b["gamma"]),
                    converged=bool(b.get("converged", True))))
        normalization = NormalizationParams(
            minimum=np.asarray(doc["normalization"]["min"], dtype=float),
            maximum=np.asarray(doc["normalization"]["max"], dtype=float))
        return OvrModel(classes=tuple(_label_from_string(c) for c in doc["classes"]),
                        binaries=tuple(binaries),
                        normalization=normalization,
                        layout=str(doc["layout"]),
                        metadata=dict(doc.get("metadata", {})))
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"corrupt model file {path}: {exc}") from exc
