"""The seminar operations: moderation, selection, uploads, planning.

``SeminarService`` owns no state of its own; every operation opens one
store transaction, applies the pure rules, and writes the outcome. The
clock is injectable so deadline- and window-dependent behavior is
testable.
"""

from __future__ import annotations

import re
from dataclasses import replace
from datetime import datetime, timezone
from typing import Callable, Sequence

from . import rules
from .errors import (
    AccountDisabled,
    AuthFailed,
    EmptyFile,
    FileTooLarge,
    Forbidden,
    NotAssigned,
    ProposalsClosed,
    ValidationError,
)
from .models import (
    Assignment,
    FileStatus,
    Policy,
    Role,
    Session,
    Theme,
    ThemeDraft,
    ThemeListing,
    ThemeStatus,
    UploadedFile,
    User,
)
from .passwords import hash_password, verify_password
from .scheduling import ScheduleInstance, ScheduleItem, ScheduleResult, plan_schedule
from .store import Store, Transaction

DEFAULT_MAX_UPLOAD_BYTES = 16 * 1024 * 1024

_EMAIL_RE = re.compile(r"^[^@\s]+@[^@\s]+\.[^@\s]+$")


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class SeminarService:
    def __init__(self, store: Store, *, clock: Callable[[], datetime] = _utcnow,
                 max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES,
                 anonymize_schedule: bool = False):
        self.store = store
        self.clock = clock
        self.max_upload_bytes = max_upload_bytes
        self.anonymize_schedule = anonymize_schedule

    # -- accounts ---------------------------------------------------------

    def create_user(self, email: str, password: str, display_name: str,
                    role: Role, *, salt: bytes | None = None) -> User:
        email = email.strip().lower()
        if not _EMAIL_RE.match(email):
            raise ValidationError(f"not an email address: {email!r}")
        rules.check_password_strength(password)
        digest = hash_password(password, salt=salt)
        return self.store.run(
            lambda txn: txn.insert_user(email, digest, display_name, role)
        )

    def ensure_admin(self, email: str, password: str,
                     display_name: str = "Administrator") -> User | None:
        """Bootstrap: create the administrator account unless one exists."""
        def fn(txn: Transaction) -> User | None:
            if txn.count_users(Role.ADMINISTRATOR) > 0:
                return None
            rules.check_password_strength(password)
            return txn.insert_user(email.strip().lower(), hash_password(password),
                                   display_name, Role.ADMINISTRATOR)
        return self.store.run(fn)

    def authenticate(self, email: str, password: str) -> Session:
        def fn(txn: Transaction) -> Session:
            user = txn.find_user_by_email(email.strip().lower())
            if user is None or not verify_password(password, user.password_digest):
                raise AuthFailed("unknown email or wrong password")
            if user.disabled:
                raise AccountDisabled("this account has been disabled")
            return Session(user_id=user.id, role=user.role)
        return self.store.run(fn)

    def get_user(self, session: Session) -> User:
        return self.store.run(lambda txn: txn.get_user(session.user_id))

    def update_profile(self, session: Session, *, display_name: str | None = None,
                       email: str | None = None,
                       new_password: str | None = None) -> tuple[User, bool]:
        """Returns the updated user and whether the password changed (the
        API layer revokes the user's other sessions on a password change)."""
        if email is not None:
            email = email.strip().lower()
            if not _EMAIL_RE.match(email):
                raise ValidationError(f"not an email address: {email!r}")
        digest = None
        if new_password is not None:
            rules.check_password_strength(new_password)
            digest = hash_password(new_password)

        def fn(txn: Transaction) -> User:
            return txn.update_user(session.user_id, email=email,
                                   display_name=display_name, password_digest=digest)
        return self.store.run(fn), digest is not None

    # -- themes -------------------------------------------------------------

    def propose_theme(self, session: Session, draft: ThemeDraft, *,
                      max_students: int | None = None,
                      fixed_week: int | None = None) -> Theme:
        """Students file a pending proposal; an administrator's theme is
        approved on the spot (capacity required)."""
        now = self.clock()

        def fn(txn: Transaction) -> Theme:
            policy = txn.get_policy()
            rules.validate_draft(draft, policy.num_weeks)
            if session.is_admin:
                capacity = rules.check_capacity_value(max_students)
                rules.check_week_pair(fixed_week, draft.proposed_week, policy.num_weeks)
                theme = txn.insert_theme(
                    title=draft.title.strip(), summary=draft.summary,
                    keywords=draft.keywords, references=draft.references,
                    proposer_id=session.user_id, status=ThemeStatus.APPROVED,
                    max_students=capacity, fixed_week=fixed_week,
                    deadline_week=draft.proposed_week, now=now,
                )
            else:
                if not policy.proposal_open:
                    raise ProposalsClosed("theme proposals are closed")
                if max_students is not None or fixed_week is not None:
                    raise Forbidden("only the administrator sets capacity or fixed dates")
                theme = txn.insert_theme(
                    title=draft.title.strip(), summary=draft.summary,
                    keywords=draft.keywords, references=draft.references,
                    proposer_id=session.user_id, status=ThemeStatus.PENDING,
                    max_students=None, fixed_week=None,
                    deadline_week=draft.proposed_week, now=now,
                )
            txn.audit(now=now, actor_id=session.user_id, action="theme_proposed",
                      entity="theme", entity_id=theme.id, detail=theme.status.value)
            return theme
        return self.store.run(fn)

    def review_theme(self, session: Session, theme_id: int, decision: str, *,
                     max_students: int | None = None,
                     deadline_week: int | None = None,
                     fixed_week: int | None = None) -> Theme:
        self._require_admin(session)
        if decision not in ("approve", "reject"):
            raise ValidationError(f"decision must be approve or reject, not {decision!r}")
        now = self.clock()

        def fn(txn: Transaction) -> Theme:
            theme = txn.get_theme(theme_id)
            policy = txn.get_policy()
            if decision == "reject":
                rules.check_theme_transition(theme.status, ThemeStatus.REJECTED)
                updated = txn.update_theme(theme_id, status=ThemeStatus.REJECTED)
            else:
                rules.check_theme_transition(theme.status, ThemeStatus.APPROVED)
                capacity = rules.check_capacity_value(max_students)
                new_fixed = fixed_week if fixed_week is not None else theme.fixed_week
                new_deadline = deadline_week if deadline_week is not None else theme.deadline_week
                rules.check_week_pair(new_fixed, new_deadline, policy.num_weeks)
                updated = txn.update_theme(
                    theme_id, status=ThemeStatus.APPROVED, max_students=capacity,
                    fixed_week=new_fixed, deadline_week=new_deadline,
                )
            txn.audit(now=now, actor_id=session.user_id, action=f"theme_{decision}d",
                      entity="theme", entity_id=theme_id)
            return updated
        return self.store.run(fn)

    def delete_theme(self, session: Session, theme_id: int) -> Theme:
        self._require_admin(session)
        now = self.clock()

        def fn(txn: Transaction) -> Theme:
            theme = txn.get_theme(theme_id)
            rules.check_theme_transition(theme.status, ThemeStatus.DELETED)
            cancelled = txn.clear_theme_satellites(theme_id)
            updated = txn.update_theme(theme_id, status=ThemeStatus.DELETED)
            txn.audit(now=now, actor_id=session.user_id, action="theme_deleted",
                      entity="theme", entity_id=theme_id,
                      detail=f"cancelled_assignments={cancelled}")
            if cancelled:
                txn.audit(now=now, actor_id=session.user_id,
                          action="assignments_cancelled", entity="theme",
                          entity_id=theme_id, detail="theme deleted")
            return updated
        return self.store.run(fn)

    def list_themes(self, session: Session) -> list[ThemeListing]:
        return self.store.run(lambda txn: txn.listing(session.role, session.user_id))

    # -- selection ------------------------------------------------------------

    def select_theme(self, session: Session, theme_id: int) -> Assignment:
        if session.role is not Role.STUDENT:
            raise Forbidden("only students select themes")
        now = self.clock()

        def fn(txn: Transaction) -> Assignment:
            theme = txn.get_theme(theme_id)
            policy = txn.get_policy()
            rules.check_selection(
                theme,
                already_assigned=txn.find_assignment(session.user_id, theme_id) is not None,
                theme_count=txn.theme_assignment_count(theme_id),
                student_count=txn.student_assignment_count(session.user_id),
                policy=policy,
                now=now,
            )
            assignment = txn.insert_assignment(
                session.user_id, theme_id, theme.fixed_week, now
            )
            txn.audit(now=now, actor_id=session.user_id, action="theme_selected",
                      entity="assignment", entity_id=assignment.id)
            return assignment
        return self.store.run(fn)

    def withdraw_selection(self, session: Session, theme_id: int) -> Assignment:
        now = self.clock()

        def fn(txn: Transaction) -> Assignment:
            assignment = txn.find_assignment(session.user_id, theme_id)
            if assignment is None:
                raise NotAssigned("no active assignment for this theme")
            txn.delete_assignment(assignment.id)
            txn.audit(now=now, actor_id=session.user_id, action="assignment_withdrawn",
                      entity="assignment", entity_id=assignment.id)
            return assignment
        return self.store.run(fn)

    # -- files ------------------------------------------------------------------

    def attach_file(self, session: Session, theme_id: int, filename: str,
                    data: bytes) -> UploadedFile:
        if len(data) == 0:
            raise EmptyFile("refusing a zero-byte upload")
        if len(data) > self.max_upload_bytes:
            raise FileTooLarge(
                f"{len(data)} bytes exceeds the {self.max_upload_bytes} byte cap"
            )
        now = self.clock()
        content_hash = self.store.save_blob(data)

        def fn(txn: Transaction) -> UploadedFile:
            txn.get_theme(theme_id)  # NotFound guard
            if txn.find_assignment(session.user_id, theme_id) is None:
                raise NotAssigned("upload requires holding an assignment on the theme")
            return txn.insert_file(
                theme_id=theme_id, uploader_id=session.user_id,
                filename=filename or "upload.bin", content_hash=content_hash,
                size_bytes=len(data), now=now,
            )
        return self.store.run(fn)

    def review_file(self, session: Session, file_id: int, decision: str) -> UploadedFile:
        self._require_admin(session)
        if decision not in ("approve", "reject"):
            raise ValidationError(f"decision must be approve or reject, not {decision!r}")
        new_status = FileStatus.APPROVED if decision == "approve" else FileStatus.REJECTED
        now = self.clock()

        def fn(txn: Transaction) -> UploadedFile:
            current = txn.get_file(file_id)
            rules.check_file_transition(current.status, new_status)
            updated = txn.set_file_status(file_id, new_status)
            txn.audit(now=now, actor_id=session.user_id, action=f"file_{decision}d",
                      entity="file", entity_id=file_id)
            return updated
        return self.store.run(fn)

    def list_files(self, session: Session, theme_id: int) -> list[UploadedFile]:
        """Approved files only; the administrator also sees the queue."""
        def fn(txn: Transaction) -> list[UploadedFile]:
            txn.get_theme(theme_id)
            if session.is_admin:
                return txn.files_for_theme(theme_id)
            return txn.files_for_theme(theme_id, [FileStatus.APPROVED])
        return self.store.run(fn)

    def pending_files(self, session: Session) -> list[UploadedFile]:
        self._require_admin(session)
        return self.store.run(lambda txn: txn.files_with_status(FileStatus.PENDING))

    def file_bytes(self, session: Session, file_id: int) -> tuple[UploadedFile, bytes]:
        def fn(txn: Transaction) -> UploadedFile:
            record = txn.get_file(file_id)
            if not session.is_admin and record.status is not FileStatus.APPROVED:
                raise NotFound(f"no file {file_id}")
            return record
        record = self.store.run(fn)
        return record, self.store.load_blob(record.content_hash)

    # -- policy --------------------------------------------------------------

    def get_policy(self) -> Policy:
        return self.store.run(lambda txn: txn.get_policy())

    def set_policy(self, session: Session, **patch) -> Policy:
        """Existing assignments are grandfathered when limits drop; only
        future selections feel the new policy."""
        self._require_admin(session)
        allowed = {"max_choices_per_student", "per_week_capacity", "num_weeks",
                   "proposal_open", "selection_opens_at"}
        unknown = set(patch) - allowed
        if unknown:
            raise ValidationError(f"unknown policy fields {sorted(unknown)}")
        now = self.clock()

        def fn(txn: Transaction) -> Policy:
            merged = replace(txn.get_policy(), **patch)
            rules.validate_policy(merged)
            saved = txn.save_policy(merged)
            txn.audit(now=now, actor_id=session.user_id, action="policy_changed",
                      entity="policy", entity_id=1,
                      detail=", ".join(f"{k}={v}" for k, v in sorted(patch.items())))
            return saved
        return self.store.run(fn)

    # -- planning -----------------------------------------------------------

    def plan_presentations(self, session: Session) -> ScheduleResult:
        """Assign presentation weeks to assignments that lack one.

        Already-placed assignments are fixed, so published dates never
        move; the result's placement covers every assignment.
        """
        self._require_admin(session)
        now = self.clock()

        def fn(txn: Transaction) -> ScheduleResult:
            policy = txn.get_policy()
            assignments = txn.all_assignments()
            themes = {a.theme_id: txn.get_theme(a.theme_id) for a in assignments}
            fixed = tuple(
                (a.id, a.presentation_week)
                for a in assignments if a.presentation_week is not None
            )
            free = tuple(
                ScheduleItem(
                    item_id=a.id,
                    earliest_week=1,
                    deadline_week=themes[a.theme_id].deadline_week,
                )
                for a in assignments if a.presentation_week is None
            )
            instance = ScheduleInstance(num_weeks=policy.num_weeks,
                                        fixed=fixed, free_items=free)
            result = plan_schedule(instance)
            for assignment_id, week in result.placement.items():
                txn.set_presentation_week(assignment_id, week)
            txn.audit(now=now, actor_id=session.user_id, action="schedule_planned",
                      entity="schedule", entity_id=None,
                      detail=f"placed={len(result.placement)} max_load={result.max_weekly_load}")
            full_placement = dict(result.placement)
            full_placement.update({item_id: week for item_id, week in fixed})
            return ScheduleResult(placement=full_placement,
                                  max_weekly_load=result.max_weekly_load,
                                  loads=result.loads)
        return self.store.run(fn)

    def plan_theme_load(self) -> ScheduleResult:
        """Operator capacity report: one slot per approved theme, placed by
        the same planner. Nothing is persisted."""
        def fn(txn: Transaction) -> ScheduleResult:
            policy = txn.get_policy()
            themes = txn.themes_with_status([ThemeStatus.APPROVED])
            fixed = tuple(
                (t.id, t.fixed_week) for t in themes if t.fixed_week is not None
            )
            free = tuple(
                ScheduleItem(item_id=t.id, deadline_week=t.deadline_week)
                for t in themes if t.fixed_week is None
            )
            instance = ScheduleInstance(num_weeks=policy.num_weeks,
                                        fixed=fixed, free_items=free)
            return plan_schedule(instance)
        return self.store.run(fn)

    def schedule_board(self, session: Session) -> dict:
        """Week-by-week view of who presents what."""
        def fn(txn: Transaction) -> dict:
            policy = txn.get_policy()
            weeks: dict[int, list[dict]] = {w: [] for w in range(1, policy.num_weeks + 1)}
            unscheduled: list[dict] = []
            for assignment in txn.all_assignments():
                student = txn.get_user(assignment.student_id)
                theme = txn.get_theme(assignment.theme_id)
                name = (f"Student {student.id}" if self.anonymize_schedule
                        else student.display_name)
                row = {
                    "assignment_id": assignment.id,
                    "student_id": student.id,
                    "student_name": name,
                    "theme_id": theme.id,
                    "theme_title": theme.title,
                }
                if assignment.presentation_week is None:
                    unscheduled.append(row)
                elif assignment.presentation_week in weeks:
                    weeks[assignment.presentation_week].append(row)
                else:
                    unscheduled.append(row)
            return {
                "num_weeks": policy.num_weeks,
                "per_week_capacity": policy.per_week_capacity,
                "weeks": weeks,
                "unscheduled": unscheduled,
            }
        return self.store.run(fn)

    # -- helpers ---------------------------------------------------------------

    @staticmethod
    def _require_admin(session: Session) -> None:
        if not session.is_admin:
            raise Forbidden("administrator role required")


def make_draft(title: str, summary: str = "", keywords: Sequence[str] = (),
               references: Sequence[str] = (), proposed_week: int | None = None) -> ThemeDraft:
    return ThemeDraft(
        title=title, summary=summary,
        keywords=frozenset(keywords), references=tuple(references),
        proposed_week=proposed_week,
    )
