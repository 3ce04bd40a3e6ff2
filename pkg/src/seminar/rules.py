"""Pure decision logic: lifecycle state machines and policy checks.

Every function here takes plain values and either returns or raises a
domain error. No I/O; the store runs these inside its transactions so that
check-then-act sequences stay atomic.
"""

from __future__ import annotations

from datetime import datetime

from .errors import (
    AlreadyAssigned,
    ChoiceLimitReached,
    InvalidPolicy,
    InvalidTransition,
    MissingCapacity,
    SelectionNotOpen,
    ThemeFull,
    ThemeNotSelectable,
    ValidationError,
    WeakPassword,
    WeekOutOfRange,
)
from .models import FileStatus, Policy, Theme, ThemeDraft, ThemeStatus
from .passwords import MIN_PASSWORD_LENGTH

# Legal lifecycle moves. Anything else is an InvalidTransition.
THEME_TRANSITIONS: frozenset[tuple[ThemeStatus, ThemeStatus]] = frozenset({
    (ThemeStatus.PENDING, ThemeStatus.APPROVED),
    (ThemeStatus.PENDING, ThemeStatus.REJECTED),
    (ThemeStatus.PENDING, ThemeStatus.DELETED),
    (ThemeStatus.APPROVED, ThemeStatus.DELETED),
})

FILE_TRANSITIONS: frozenset[tuple[FileStatus, FileStatus]] = frozenset({
    (FileStatus.PENDING, FileStatus.APPROVED),
    (FileStatus.PENDING, FileStatus.REJECTED),
})


def check_theme_transition(current: ThemeStatus, new: ThemeStatus) -> None:
    if (current, new) not in THEME_TRANSITIONS:
        raise InvalidTransition(f"theme cannot move {current.value} -> {new.value}")


def check_file_transition(current: FileStatus, new: FileStatus) -> None:
    if (current, new) not in FILE_TRANSITIONS:
        raise InvalidTransition(f"file cannot move {current.value} -> {new.value}")


def check_week(week: int | None, num_weeks: int, label: str = "week") -> None:
    if week is None:
        return
    if not 1 <= week <= num_weeks:
        raise WeekOutOfRange(f"{label} {week} outside [1, {num_weeks}]")


def validate_draft(draft: ThemeDraft, num_weeks: int) -> None:
    if not draft.title.strip():
        raise ValidationError("title must not be empty")
    if not draft.keywords or not any(k.strip() for k in draft.keywords):
        raise ValidationError("at least one keyword required")
    check_week(draft.proposed_week, num_weeks, "proposed_week")


def check_capacity_value(max_students: int | None) -> int:
    if max_students is None:
        raise MissingCapacity("approval requires max_students")
    if max_students < 1:
        raise ValidationError("max_students must be >= 1")
    return max_students


def check_week_pair(fixed_week: int | None, deadline_week: int | None,
                    num_weeks: int) -> None:
    check_week(fixed_week, num_weeks, "fixed_week")
    check_week(deadline_week, num_weeks, "deadline_week")
    if fixed_week is not None and deadline_week is not None and deadline_week < fixed_week:
        raise ValidationError("deadline_week must not precede fixed_week")


def check_selection(theme: Theme, *, already_assigned: bool, theme_count: int,
                    student_count: int, policy: Policy, now: datetime) -> None:
    """All preconditions of taking a theme, in one place.

    Duplicate is tested before capacity: a student re-selecting the theme
    they already hold must hear AlreadyAssigned even when their own
    assignment is the one that filled the theme.
    """
    if theme.status is not ThemeStatus.APPROVED:
        raise ThemeNotSelectable(f"theme is {theme.status.value}")
    if policy.selection_opens_at is not None and now < policy.selection_opens_at:
        raise SelectionNotOpen(f"selection opens at {policy.selection_opens_at.isoformat()}")
    if already_assigned:
        raise AlreadyAssigned("student already holds this theme")
    if theme.max_students is not None and theme_count >= theme.max_students:
        raise ThemeFull(f"theme already has {theme_count} students")
    if student_count >= policy.max_choices_per_student:
        raise ChoiceLimitReached(f"student already holds {student_count} themes")


def validate_policy(policy: Policy) -> None:
    for name in ("max_choices_per_student", "per_week_capacity", "num_weeks"):
        if getattr(policy, name) < 1:
            raise InvalidPolicy(f"{name} must be >= 1")


def check_password_strength(password: str) -> None:
    if len(password) < MIN_PASSWORD_LENGTH:
        raise WeakPassword(f"password must be at least {MIN_PASSWORD_LENGTH} characters")


def listing_sort_key(theme: Theme) -> tuple:
    """Week ascending, weekless themes last, then case-insensitive title."""
    week = theme.effective_week
    return (week is None, week if week is not None else 0, theme.title.casefold())
