from .store import (DuplicateRatingError, EventLog, StoredRating, StudySession,
                    UnassignedGaitError, UnknownSessionError, assignment_seed,
                    validate_rating_values)
from .app import ClassifyRequest, RatingRequest, ServiceConfig, SessionRequest, create_app

__all__ = [
    "DuplicateRatingError", "EventLog", "StoredRating", "StudySession",
    "UnassignedGaitError", "UnknownSessionError", "assignment_seed",
    "validate_rating_values",
    "ClassifyRequest", "RatingRequest", "ServiceConfig", "SessionRequest", "create_app",
]
