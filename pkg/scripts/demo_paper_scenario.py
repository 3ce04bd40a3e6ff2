#!/usr/bin/env python3
"""End-to-end demo on a throwaway database.

Seeds the pilot cohort (35 students, 41 themes once approved), has every
theme selected — six students take a second topic — then plans the
presentation calendar and prints the weekly board.
"""

from __future__ import annotations

import sys
import tempfile

from seminar.models import Role, Session, ThemeStatus
from seminar.seeds import approve_all_pending, seed_paper_scenario
from seminar.service import SeminarService
from seminar.store import Store


def main() -> int:
    with tempfile.TemporaryDirectory() as scratch:
        store = Store(f"{scratch}/demo.db", f"{scratch}/files")
        store.migrate()
        service = SeminarService(store)

        summary = seed_paper_scenario(service)
        approved = approve_all_pending(service, max_students=1)
        print(f"seeded {summary.students} students; "
              f"{summary.teacher_themes} teacher themes; "
              f"{approved} student proposals approved")

        with store.transaction() as txn:
            admin_row = txn.conn.execute(
                "SELECT id FROM users WHERE role = 'administrator'").fetchone()
            student_rows = txn.conn.execute(
                "SELECT id FROM users WHERE role = 'student' ORDER BY id").fetchall()
        admin = Session(admin_row["id"], Role.ADMINISTRATOR)
        students = [Session(r["id"], Role.STUDENT) for r in student_rows]

        # everyone picks one topic; six volunteers take a second
        service.set_policy(admin, max_choices_per_student=2)
        themes = [r.theme for r in service.list_themes(admin)
                  if r.theme.status is ThemeStatus.APPROVED]
        for student, theme in zip(students, themes[:len(students)]):
            service.select_theme(student, theme.id)
        for student, theme in zip(students[:6], themes[len(students):]):
            service.select_theme(student, theme.id)

        result = service.plan_presentations(admin)
        print(f"planned {len(result.placement)} presentations, "
              f"busiest week holds {result.max_weekly_load}")

        board = service.schedule_board(admin)
        for week in sorted(board["weeks"]):
            rows = board["weeks"][week]
            print(f"\nweek {week} ({len(rows)} presentations)")
            for row in rows:
                print(f"  {row['student_name']:24s} {row['theme_title']}")
        store.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
