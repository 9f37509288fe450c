"""HTTP service for the perception-study loop and gait classification.

Endpoints:
  POST /sessions                create a rating session for a participant
  GET  /gaits                   list gait ids and metadata
  GET  /gaits/{id}              playback payload (canonical interchange doc)
  POST /ratings                 submit one four-adjective rating
  GET  /export/responses.csv    responses CSV in the mapping schema
  POST /classify                classify an uploaded gait payload

Data directory layout: gaits/*.json (corpus), models/*.json (optional),
labels.csv (optional, enables normalized-score lookup), events.log.
"""
from __future__ import annotations

import datetime
import hashlib
import io
import os
import uuid
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from ..classifier.model_io import load_model
from ..classifier.ovr import predict
from ..errors import GaitValidationError, LayoutMismatchError, MappingError
from ..features.extract import extract_features
from ..mapping import Label3, Label5, collapse_label, read_labels_csv, write_responses_csv
from ..mocap.gait_io import gait_from_dict, gait_to_dict, load_gait
from ..mocap.skeleton import Gait
from .store import (DuplicateRatingError, EventLog, StudySession, UnassignedGaitError,
                    UnknownSessionError, assignment_seed)


@dataclass(frozen=True)
class ServiceConfig:
    data_dir: str
    seed: int = 0
    small_assignment: int = 6
    large_assignment: int = 12
    large_corpus_min: int = 100


class SessionRequest(BaseModel):
    participant_id: str
    policy: str = "auto"  # auto, small, or large


class RatingRequest(BaseModel):
    session_id: str
    gait_id: str
    values: dict
    client_timestamp: str = ""


class ClassifyRequest(BaseModel):
    gait: dict
    model_id: str = "default"


def _load_corpus(data_dir: str) -> dict[str, Gait]:
    gaits_dir = os.path.join(data_dir, "gaits")
    corpus = {}
    if os.path.isdir(gaits_dir):
        for name in sorted(os.listdir(gaits_dir)):
            if name.endswith(".json"):
                gait = load_gait(os.path.join(gaits_dir, name))
                corpus[gait.id] = gait
    return corpus


def _load_models(data_dir: str) -> dict:
    models_dir = os.path.join(data_dir, "models")
    models = {}
    if os.path.isdir(models_dir):
        for name in sorted(os.listdir(models_dir)):
            if name.endswith(".json"):
                models[name[:-5]] = load_model(os.path.join(models_dir, name))
    return models


def _load_score_table(data_dir: str) -> dict[str, float]:
    path = os.path.join(data_dir, "labels.csv")
    if not os.path.exists(path):
        return {}
    return {item.gait_id: item.normalized_score for item in read_labels_csv(path)}


def create_app(config: ServiceConfig) -> FastAPI:
    os.makedirs(config.data_dir, exist_ok=True)
    corpus = _load_corpus(config.data_dir)
    models = _load_models(config.data_dir)
    scores = _load_score_table(config.data_dir)
    log = EventLog(os.path.join(config.data_dir, "events.log"))
    corpus_version = hashlib.sha256("\n".join(sorted(corpus)).encode()).hexdigest()[:12]

    app = FastAPI(title="gaitdom study service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    app.state.event_log = log
    app.state.corpus = corpus

    def assignment_size(policy: str) -> tuple[int, str]:
        if policy == "small":
            return config.small_assignment, "small"
        if policy == "large":
            return config.large_assignment, "large"
        if policy == "auto":
            big = len(corpus) >= config.large_corpus_min
            return ((config.large_assignment, "large") if big
                    else (config.small_assignment, "small"))
        raise HTTPException(status_code=400, detail=f"unknown policy {policy!r}")

    @app.post("/sessions", status_code=201)
    def create_session(request: SessionRequest):
        size, policy_tag = assignment_size(request.policy)
        if len(corpus) < size:
            raise HTTPException(
                status_code=400,
                detail=f"corpus has {len(corpus)} gaits, policy needs {size}")
        seed = assignment_seed(corpus_version, request.participant_id, config.seed)
        rng = np.random.default_rng(seed)
        assigned = [sorted(corpus)[i]
                    for i in rng.choice(len(corpus), size=size, replace=False)]
        session = StudySession(session_id=uuid.uuid4().hex,
                               participant_id=request.participant_id,
                               gait_ids=tuple(assigned),
                               policy=policy_tag)
        log.add_session(session)
        return {"session_id": session.session_id,
                "participant_id": session.participant_id,
                "gait_ids": list(session.gait_ids),
                "policy": session.policy,
                "completion": session.completion}

    @app.get("/gaits")
    def list_gaits():
        return [{"id": g.id, "fps": g.fps, "frames": g.n_frames, "source": g.source}
                for g in corpus.values()]

    @app.get("/gaits/{gait_id}")
    def get_gait_playback(gait_id: str):
        if gait_id not in corpus:
            raise HTTPException(status_code=404, detail=f"unknown gait {gait_id!r}")
        return gait_to_dict(corpus[gait_id])

    @app.post("/ratings", status_code=201)
    def submit_rating(request: RatingRequest):
        timestamp = request.client_timestamp or datetime.datetime.now(
            datetime.timezone.utc).isoformat()
        try:
            log.add_rating(request.session_id, request.gait_id, request.values, timestamp)
        except UnknownSessionError as exc:
            raise HTTPException(status_code=404, detail=f"unknown session {exc}") from exc
        except UnassignedGaitError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except DuplicateRatingError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except MappingError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"status": "stored", "session_id": request.session_id,
                "gait_id": request.gait_id}

    @app.get("/export/responses.csv")
    def export_responses():
        buffer = io.StringIO()
        write_responses_csv(log.to_rating_records(), buffer)
        return PlainTextResponse(buffer.getvalue(), media_type="text/csv")

    @app.post("/classify")
    def classify(request: ClassifyRequest):
        if request.model_id not in models:
            raise HTTPException(status_code=404,
                                detail=f"unknown model {request.model_id!r}")
        model = models[request.model_id]
        try:
            gait = gait_from_dict(request.gait)
            features = extract_features(gait)
            label, values = predict(model, features)
        except GaitValidationError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except LayoutMismatchError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        if isinstance(label, Label5):
            label5, label3 = label, collapse_label(label)
        else:
            label5, label3 = None, label
        return {"gait_id": gait.id,
                "label5": label5.value if label5 else None,
                "label3": label3.value if isinstance(label3, Label3) else str(label3),
                "decision_values": {getattr(c, "value", str(c)): float(v)
                                    for c, v in zip(model.classes, values)},
                "normalized_score": scores.get(gait.id)}

    return app
