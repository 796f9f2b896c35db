"""Behavioral telemetry collector: capture, ingest, store, featurize."""

__version__ = "0.1.0"
