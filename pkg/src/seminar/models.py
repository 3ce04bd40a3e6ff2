"""Domain entities and enumerations.

Frozen dataclasses; all mutation happens by writing new rows through the
store, never by mutating an entity in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum


class Role(str, Enum):
    ADMINISTRATOR = "administrator"
    STUDENT = "student"


class ThemeStatus(str, Enum):
    PENDING = "pending"
    APPROVED = "approved"
    REJECTED = "rejected"
    DELETED = "deleted"


class FileStatus(str, Enum):
    PENDING = "pending"
    APPROVED = "approved"
    REJECTED = "rejected"


@dataclass(frozen=True)
class User:
    id: int
    email: str
    password_digest: str
    display_name: str
    role: Role
    disabled: bool = False


@dataclass(frozen=True)
class Theme:
    id: int
    title: str
    summary: str
    keywords: frozenset[str]
    references: tuple[str, ...]
    proposer_id: int
    status: ThemeStatus
    max_students: int | None
    fixed_week: int | None
    deadline_week: int | None
    created_at: datetime

    @property
    def effective_week(self) -> int | None:
        """Week used for list ordering: a fixed date wins over a deadline."""
        return self.fixed_week if self.fixed_week is not None else self.deadline_week


@dataclass(frozen=True)
class Assignment:
    id: int
    student_id: int
    theme_id: int
    presentation_week: int | None
    created_at: datetime


@dataclass(frozen=True)
class UploadedFile:
    id: int
    theme_id: int
    uploader_id: int
    filename: str
    content_hash: str
    size_bytes: int
    status: FileStatus
    created_at: datetime


@dataclass(frozen=True)
class Policy:
    max_choices_per_student: int = 1
    per_week_capacity: int = 6
    num_weeks: int = 7
    proposal_open: bool = True
    selection_opens_at: datetime | None = None


@dataclass(frozen=True)
class Session:
    """Authenticated principal, as returned by authenticate()."""

    user_id: int
    role: Role

    @property
    def is_admin(self) -> bool:
        return self.role is Role.ADMINISTRATOR


@dataclass(frozen=True)
class ThemeDraft:
    """Proposal payload, before moderation."""

    title: str
    summary: str = ""
    keywords: frozenset[str] = frozenset()
    references: tuple[str, ...] = ()
    proposed_week: int | None = None


@dataclass(frozen=True)
class ThemeListing:
    """One row of the student/admin theme list."""

    theme: Theme
    assigned_count: int
    remaining_capacity: int | None  # None while capacity is undecided (pending)
    selected_by_viewer: bool = False


@dataclass(frozen=True)
class AuditEntry:
    id: int
    at: datetime
    actor_id: int | None
    action: str
    entity: str
    entity_id: int | None
    detail: str = ""
