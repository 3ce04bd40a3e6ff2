"""Model-based property tests.

A shadow model tracks what the service should contain; every rule asserts
the service's outcome (success or exact error) against the model, and the
invariants re-check capacity, quota, pair-uniqueness, and visibility after
every step.
"""

from __future__ import annotations

import shutil
import tempfile

import pytest
from hypothesis import settings
from hypothesis import strategies as st
from hypothesis.stateful import (
    RuleBasedStateMachine,
    invariant,
    precondition,
    rule,
)

from seminar import errors
from seminar.models import FileStatus, Role, Session, ThemeStatus
from seminar.service import SeminarService, make_draft
from seminar.store import Store


class SeminarMachine(RuleBasedStateMachine):
    def __init__(self):
        super().__init__()
        self.blob_dir = tempfile.mkdtemp(prefix="seminar-blobs-")
        self.store = Store(":memory:", files_dir=self.blob_dir)
        self.store.migrate()
        self.service = SeminarService(self.store)
        with self.store.transaction() as txn:
            admin = txn.insert_user("admin@machine.test", "digest", "Admin",
                                    Role.ADMINISTRATOR)
            students = [
                txn.insert_user(f"s{i}@machine.test", "digest", f"S{i}", Role.STUDENT)
                for i in range(6)
            ]
        self.admin = Session(admin.id, Role.ADMINISTRATOR)
        self.students = [Session(u.id, Role.STUDENT) for u in students]
        # shadow model
        self.theme_status: dict[int, str] = {}
        self.titles: dict[int, str] = {}
        self.capacity: dict[int, int] = {}
        self.pairs: set[tuple[int, int]] = set()
        self.files: dict[int, tuple[int, str]] = {}  # file_id -> (theme_id, status)
        self.quota = 1
        self.title_counter = 0

    def teardown(self):
        self.store.close()
        shutil.rmtree(self.blob_dir, ignore_errors=True)

    # -- rules -------------------------------------------------------------

    @rule(data=st.data())
    def propose(self, data):
        student = data.draw(st.sampled_from(self.students))
        self.title_counter += 1
        title = f"Theme {self.title_counter:04d}"
        theme = self.service.propose_theme(student, make_draft(title, keywords=["k"]))
        assert theme.status is ThemeStatus.PENDING
        self.theme_status[theme.id] = "pending"
        self.titles[theme.id] = title

    @precondition(lambda self: self.titles)
    @rule(data=st.data())
    def propose_duplicate_title(self, data):
        victim = data.draw(st.sampled_from(sorted(self.titles)))
        title = self.titles[victim]
        blocked = any(
            self.titles[tid] == title and self.theme_status[tid] != "rejected"
            for tid in self.titles
        )
        student = data.draw(st.sampled_from(self.students))
        if blocked:
            with pytest.raises(errors.DuplicateTitle):
                self.service.propose_theme(student, make_draft(title, keywords=["k"]))
        else:
            theme = self.service.propose_theme(student, make_draft(title, keywords=["k"]))
            self.theme_status[theme.id] = "pending"
            self.titles[theme.id] = title

    @precondition(lambda self: self.theme_status)
    @rule(data=st.data(), capacity=st.integers(min_value=1, max_value=3),
          decision=st.sampled_from(["approve", "reject"]))
    def review(self, data, capacity, decision):
        theme_id = data.draw(st.sampled_from(sorted(self.theme_status)))
        status = self.theme_status[theme_id]
        if status != "pending":
            with pytest.raises(errors.InvalidTransition):
                self.service.review_theme(self.admin, theme_id, decision,
                                          max_students=capacity)
        elif decision == "approve":
            theme = self.service.review_theme(self.admin, theme_id, "approve",
                                              max_students=capacity)
            assert theme.max_students == capacity
            self.theme_status[theme_id] = "approved"
            self.capacity[theme_id] = capacity
        else:
            self.service.review_theme(self.admin, theme_id, "reject")
            self.theme_status[theme_id] = "rejected"

    @precondition(lambda self: self.theme_status)
    @rule(data=st.data())
    def delete(self, data):
        theme_id = data.draw(st.sampled_from(sorted(self.theme_status)))
        status = self.theme_status[theme_id]
        if status in ("pending", "approved"):
            self.service.delete_theme(self.admin, theme_id)
            self.theme_status[theme_id] = "deleted"
            self.pairs = {(s, t) for s, t in self.pairs if t != theme_id}
            self.files = {fid: (t, st_) for fid, (t, st_) in self.files.items()
                          if t != theme_id}
        else:
            with pytest.raises(errors.InvalidTransition):
                self.service.delete_theme(self.admin, theme_id)

    @precondition(lambda self: self.theme_status)
    @rule(data=st.data())
    def select(self, data):
        student = data.draw(st.sampled_from(self.students))
        theme_id = data.draw(st.sampled_from(sorted(self.theme_status)))
        status = self.theme_status[theme_id]
        held = sum(1 for s, _ in self.pairs if s == student.user_id)
        theme_count = sum(1 for _, t in self.pairs if t == theme_id)

        if status != "approved":
            expected = errors.ThemeNotSelectable
        elif (student.user_id, theme_id) in self.pairs:
            expected = errors.AlreadyAssigned
        elif theme_count >= self.capacity[theme_id]:
            expected = errors.ThemeFull
        elif held >= self.quota:
            expected = errors.ChoiceLimitReached
        else:
            expected = None

        if expected is None:
            self.service.select_theme(student, theme_id)
            self.pairs.add((student.user_id, theme_id))
            # quota at the moment of a successful select is respected
            assert held + 1 <= self.quota
        else:
            with pytest.raises(expected):
                self.service.select_theme(student, theme_id)

    @precondition(lambda self: self.theme_status)
    @rule(data=st.data())
    def withdraw(self, data):
        student = data.draw(st.sampled_from(self.students))
        theme_id = data.draw(st.sampled_from(sorted(self.theme_status)))
        if (student.user_id, theme_id) in self.pairs:
            self.service.withdraw_selection(student, theme_id)
            self.pairs.discard((student.user_id, theme_id))
        else:
            with pytest.raises(errors.NotAssigned):
                self.service.withdraw_selection(student, theme_id)

    @precondition(lambda self: self.theme_status)
    @rule(data=st.data())
    def upload(self, data):
        student = data.draw(st.sampled_from(self.students))
        theme_id = data.draw(st.sampled_from(sorted(self.theme_status)))
        if (student.user_id, theme_id) in self.pairs:
            record = self.service.attach_file(student, theme_id, "f.txt", b"bytes")
            assert record.status is FileStatus.PENDING
            self.files[record.id] = (theme_id, "pending")
        else:
            with pytest.raises(errors.NotAssigned):
                self.service.attach_file(student, theme_id, "f.txt", b"bytes")

    @precondition(lambda self: self.files)
    @rule(data=st.data(), decision=st.sampled_from(["approve", "reject"]))
    def review_file(self, data, decision):
        file_id = data.draw(st.sampled_from(sorted(self.files)))
        theme_id, status = self.files[file_id]
        if status == "pending":
            self.service.review_file(self.admin, file_id, decision)
            self.files[file_id] = (theme_id, decision + "d")
        else:
            with pytest.raises(errors.InvalidTransition):
                self.service.review_file(self.admin, file_id, decision)

    @rule(quota=st.integers(min_value=1, max_value=3))
    def set_quota(self, quota):
        self.service.set_policy(self.admin, max_choices_per_student=quota)
        self.quota = quota

    # -- invariants ----------------------------------------------------------

    @invariant()
    def capacity_never_exceeded(self):
        over = self.store._conn().execute(
            "SELECT a.theme_id FROM assignments a JOIN themes t ON t.id = a.theme_id"
            " GROUP BY a.theme_id HAVING COUNT(*) > t.max_students"
        ).fetchall()
        assert over == []

    @invariant()
    def pairs_are_unique(self):
        duplicates = self.store._conn().execute(
            "SELECT student_id, theme_id FROM assignments"
            " GROUP BY student_id, theme_id HAVING COUNT(*) > 1"
        ).fetchall()
        assert duplicates == []

    @invariant()
    def student_listing_shows_exactly_approved(self):
        listed = {r.theme.id for r in self.service.list_themes(self.students[0])}
        approved = {tid for tid, s in self.theme_status.items() if s == "approved"}
        assert listed == approved

    @invariant()
    def visible_files_are_exactly_approved(self):
        themes_with_files = {t for t, _ in self.files.values()}
        for theme_id in themes_with_files:
            if self.theme_status.get(theme_id) == "deleted":
                continue
            visible = {f.id for f in self.service.list_files(self.students[0], theme_id)}
            expected = {fid for fid, (t, s) in self.files.items()
                        if t == theme_id and s == "approved"}
            assert visible == expected

    @invariant()
    def model_matches_store_counts(self):
        count = self.store._conn().execute("SELECT COUNT(*) FROM assignments").fetchone()[0]
        assert count == len(self.pairs)


TestSeminarMachine = SeminarMachine.TestCase
TestSeminarMachine.settings = settings(
    max_examples=40, stateful_step_count=60, deadline=None,
)


ILLEGAL_THEME_MOVES = [
    ("approved", "approve"), ("approved", "reject"),
    ("rejected", "approve"), ("rejected", "reject"),
    ("deleted", "approve"), ("deleted", "reject"),
]


class TestIllegalTransitionSweep:
    """Every lifecycle move outside the allowed set raises InvalidTransition."""

    def put_theme_in_state(self, service, admin, student, state: str, n: int):
        theme = service.propose_theme(student, make_draft(f"Sweep {state} {n}", keywords=["k"]))
        if state == "approved":
            service.review_theme(admin, theme.id, "approve", max_students=1)
        elif state == "rejected":
            service.review_theme(admin, theme.id, "reject")
        elif state == "deleted":
            service.delete_theme(admin, theme.id)
        return theme

    @pytest.mark.parametrize("state,decision", ILLEGAL_THEME_MOVES)
    def test_theme_review_guards(self, service, admin, student, state, decision, request):
        theme = self.put_theme_in_state(service, admin, student, state,
                                        abs(hash(request.node.name)) % 10_000)
        with pytest.raises(errors.InvalidTransition):
            service.review_theme(admin, theme.id, decision, max_students=1)

    @pytest.mark.parametrize("state", ["rejected", "deleted"])
    def test_theme_delete_guards(self, service, admin, student, state):
        theme = self.put_theme_in_state(service, admin, student, state, 0)
        with pytest.raises(errors.InvalidTransition):
            service.delete_theme(admin, theme.id)

    @pytest.mark.parametrize("first,second", [
        ("approve", "approve"), ("approve", "reject"),
        ("reject", "approve"), ("reject", "reject"),
    ])
    def test_file_review_guards(self, service, admin, student, first, second):
        theme = service.propose_theme(admin, make_draft(f"F {first}{second}", keywords=["k"]),
                                      max_students=1)
        service.select_theme(student, theme.id)
        record = service.attach_file(student, theme.id, "f.txt", b"x")
        service.review_file(admin, record.id, first)
        with pytest.raises(errors.InvalidTransition):
            service.review_file(admin, record.id, second)
