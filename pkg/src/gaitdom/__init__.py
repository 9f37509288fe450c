"""Gait dominance toolkit.

Parses motion-captured walking gaits, extracts psychologically grounded
posture and movement features, maps human Likert ratings to dominance
scores and labels, classifies gaits with a one-vs-rest RBF SVM, and drives
virtual characters with selected gaits at interactive rates.
"""

__version__ = "0.1.0"
