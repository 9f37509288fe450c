"""Durable study state: an append-only JSONL event log with an in-memory index.

Every session creation and rating submission is one appended line; the index
is rebuilt by replaying the log at startup, so a crash can lose at most the
line being written. Writes are serialized through a lock.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass

from ..errors import MappingError
from ..mapping import ADJECTIVES, LIKERT_MAX, LIKERT_MIN, RatingRecord


class DuplicateRatingError(Exception):
    """A (session, gait) pair was already rated."""


class UnknownSessionError(Exception):
    pass


class UnassignedGaitError(Exception):
    pass


@dataclass(frozen=True)
class StudySession:
    session_id: str
    participant_id: str
    gait_ids: tuple[str, ...]
    policy: str
    rated: frozenset = frozenset()

    @property
    def completion(self) -> dict:
        return {g: g in self.rated for g in self.gait_ids}


@dataclass(frozen=True)
class StoredRating:
    session_id: str
    participant_id: str
    gait_id: str
    values: dict  # adjective -> 1..5
    timestamp: str


def validate_rating_values(values: dict) -> dict:
    if set(values) != set(ADJECTIVES):
        raise MappingError(
            f"expected exactly the adjectives {ADJECTIVES}, got {sorted(values)}")
    clean = {}
    for adj in ADJECTIVES:
        v = values[adj]
        if not isinstance(v, int) or isinstance(v, bool) or not LIKERT_MIN <= v <= LIKERT_MAX:
            raise MappingError(f"{adj}: Likert value must be an integer in 1..5, got {v!r}")
        clean[adj] = v
    return clean


def assignment_seed(corpus_version: str, participant_id: str, server_seed: int) -> int:
    """Stable session seed so assignments are reproducible across restarts."""
    digest = hashlib.sha256(
        f"{corpus_version}:{participant_id}:{server_seed}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class EventLog:
    """Append-only store for sessions and ratings."""

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()
        self._sessions: dict[str, StudySession] = {}
        self._ratings: list[StoredRating] = []
        self._rated_keys: set[tuple[str, str]] = set()
        if os.path.exists(path):
            self._replay()

    def _replay(self) -> None:
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                if event["type"] == "session":
                    self._apply_session(event)
                elif event["type"] == "rating":
                    self._apply_rating(event)

    def _apply_session(self, event: dict) -> None:
        session = StudySession(session_id=event["session_id"],
                               participant_id=event["participant_id"],
                               gait_ids=tuple(event["gait_ids"]),
                               policy=event["policy"])
        self._sessions[session.session_id] = session

    def _apply_rating(self, event: dict) -> None:
        rating = StoredRating(session_id=event["session_id"],
                              participant_id=event["participant_id"],
                              gait_id=event["gait_id"],
                              values=dict(event["values"]),
                              timestamp=event["timestamp"])
        self._ratings.append(rating)
        self._rated_keys.add((rating.session_id, rating.gait_id))
        session = self._sessions.get(rating.session_id)
        if session is not None:
            self._sessions[rating.session_id] = StudySession(
                session_id=session.session_id, participant_id=session.participant_id,
                gait_ids=session.gait_ids, policy=session.policy,
                rated=session.rated | {rating.gait_id})

    def _append(self, event: dict) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, separators=(",", ":")) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def add_session(self, session: StudySession) -> None:
        with self._lock:
            event = {"type": "session", "session_id": session.session_id,
                     "participant_id": session.participant_id,
                     "gait_ids": list(session.gait_ids), "policy": session.policy}
            self._append(event)
            self._apply_session(event)

    def add_rating(self, session_id: str, gait_id: str, values: dict, timestamp: str) -> StoredRating:
        """Validate against the session's assignment and append; duplicates conflict."""
        values = validate_rating_values(values)
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSessionError(session_id)
            if gait_id not in session.gait_ids:
                raise UnassignedGaitError(
                    f"gait {gait_id!r} is not assigned to session {session_id!r}")
            if (session_id, gait_id) in self._rated_keys:
                raise DuplicateRatingError(f"({session_id}, {gait_id}) already rated")
            event = {"type": "rating", "session_id": session_id,
                     "participant_id": session.participant_id, "gait_id": gait_id,
                     "values": values, "timestamp": timestamp}
            self._append(event)
            self._apply_rating(event)
            return self._ratings[-1]

    def get_session(self, session_id: str) -> StudySession:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSessionError(session_id)
            return session

    @property
    def n_sessions(self) -> int:
        with self._lock:
            return len(self._sessions)

    def ratings_snapshot(self) -> list[StoredRating]:
        with self._lock:
            return list(self._ratings)

    def to_rating_records(self) -> list[RatingRecord]:
        """One RatingRecord per (submission, adjective), in submission order."""
        records = []
        for rating in self.ratings_snapshot():
            for adj in ADJECTIVES:
                records.append(RatingRecord(gait_id=rating.gait_id,
                                            participant_id=rating.participant_id,
                                            adjective=adj,
                                            value=rating.values[adj],
                                            timestamp=rating.timestamp))
        return records
