"""Partial representations of free groups from subshift languages, checked exactly."""

__version__ = "0.1.0"
