"""Toolkit for building feedback comment generation pipelines.

Covers the full data path: reading the error-annotated learner corpus,
span marking and comment normalization, dependency-based sentence
clipping, LM-backed corpus augmentation, training-stage manifests,
bracket repair of generated comments, and evaluation (BLEU, P/R/F1).
"""

__version__ = "0.1.0"
