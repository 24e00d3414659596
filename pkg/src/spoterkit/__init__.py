"""Pose-based isolated sign language recognition toolkit."""

__version__ = "0.1.0"
