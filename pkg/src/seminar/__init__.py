"""Seminar assignment management: moderated themes, capacity-checked
selection, moderated uploads, and presentation-week planning."""

__version__ = "0.1.0"
