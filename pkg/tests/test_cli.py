from __future__ import annotations

import pytest

from seminar import cli
from seminar.models import Role, ThemeStatus
from seminar.service import SeminarService
from seminar.store import Store


def env_for(tmp_path, name="cli.db"):
    return {
        "SEMINAR_DB_URL": str(tmp_path / name),
        "SEMINAR_FILES_DIR": str(tmp_path / "files"),
    }


def open_service(tmp_path, name="cli.db"):
    store = Store(tmp_path / name, tmp_path / "files")
    return SeminarService(store)


class TestUsage:
    def test_unknown_verb_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"], environ=env_for(tmp_path))
        assert exc.value.code == 2

    def test_unknown_flag_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            cli.main(["migrate", "--bogus"], environ=env_for(tmp_path))
        assert exc.value.code == 2

    def test_seed_without_work_exits_2(self, tmp_path, capsys):
        assert cli.main(["seed"], environ=env_for(tmp_path)) == 2

    def test_no_verb_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            cli.main([], environ=env_for(tmp_path))
        assert exc.value.code == 2


class TestMigrate:
    def test_migrate_twice_both_succeed(self, tmp_path, capsys):
        env = env_for(tmp_path)
        assert cli.main(["migrate"], environ=env) == 0
        assert cli.main(["migrate"], environ=env) == 0
        out = capsys.readouterr().out
        assert out.count("schema\t") == 2

    def test_migrate_bootstraps_admin_from_env(self, tmp_path, capsys):
        env = env_for(tmp_path)
        env["SEMINAR_ADMIN_EMAIL"] = "teacher@example.edu"
        env["SEMINAR_ADMIN_PASSWORD"] = "chalk-and-talk"
        assert cli.main(["migrate"], environ=env) == 0
        assert "admin\tteacher@example.edu" in capsys.readouterr().out
        service = open_service(tmp_path)
        assert service.authenticate("teacher@example.edu", "chalk-and-talk").is_admin
        # second run must not try to create a duplicate
        assert cli.main(["migrate"], environ=env) == 0

    def test_unreachable_store_exits_1(self, tmp_path, capsys):
        env = {
            "SEMINAR_DB_URL": str(tmp_path / "no" / "such" / "dir" / "x.db"),
            "SEMINAR_FILES_DIR": str(tmp_path / "files"),
        }
        assert cli.main(["migrate"], environ=env) == 1
        assert "StoreUnavailable" in capsys.readouterr().err


class TestPaperScenario:
    def test_seed_then_approve_all_yields_41_visible(self, tmp_path, capsys):
        env = env_for(tmp_path)
        assert cli.main(["seed", "--scenario", "paper"], environ=env) == 0
        assert cli.main(["seed", "--approve-all"], environ=env) == 0
        out = capsys.readouterr().out
        assert "students\t35" in out
        assert "approved\t6" in out

        service = open_service(tmp_path)
        student = service.authenticate(
            "student01@example.edu", self._student_password(out)
        )
        listing = service.list_themes(student)
        assert len(listing) == 41
        assert all(r.theme.status is ThemeStatus.APPROVED for r in listing)
        with service.store.transaction() as txn:
            assert txn.count_users(Role.STUDENT) == 35

    @staticmethod
    def _student_password(out: str) -> str:
        line = next(l for l in out.splitlines() if l.startswith("students\t"))
        return line.split("\t")[-1]

    def test_seed_is_deterministic_for_a_seed_value(self, tmp_path, capsys):
        env_a = env_for(tmp_path, "a.db")
        env_b = env_for(tmp_path, "b.db")
        assert cli.main(["seed", "--scenario", "paper", "--seed", "7"], environ=env_a) == 0
        out_a = capsys.readouterr().out
        assert cli.main(["seed", "--scenario", "paper", "--seed", "7"], environ=env_b) == 0
        out_b = capsys.readouterr().out
        assert out_a == out_b

        store_a = Store(tmp_path / "a.db", tmp_path / "files")
        store_b = Store(tmp_path / "b.db", tmp_path / "files")
        rows_a = store_a._conn().execute(
            "SELECT email, password_digest, display_name FROM users ORDER BY id"
        ).fetchall()
        rows_b = store_b._conn().execute(
            "SELECT email, password_digest, display_name FROM users ORDER BY id"
        ).fetchall()
        assert [tuple(r) for r in rows_a] == [tuple(r) for r in rows_b]
        titles_a = store_a._conn().execute("SELECT title FROM themes ORDER BY id").fetchall()
        titles_b = store_b._conn().execute("SELECT title FROM themes ORDER BY id").fetchall()
        assert [tuple(r) for r in titles_a] == [tuple(r) for r in titles_b]

    def test_different_seed_changes_fixture(self, tmp_path, capsys):
        env_a = env_for(tmp_path, "a.db")
        env_b = env_for(tmp_path, "b.db")
        cli.main(["seed", "--scenario", "paper", "--seed", "1"], environ=env_a)
        out_a = capsys.readouterr().out
        cli.main(["seed", "--scenario", "paper", "--seed", "2"], environ=env_b)
        out_b = capsys.readouterr().out
        assert out_a != out_b


class TestReport:
    def test_load_report_is_stable_tsv(self, tmp_path, capsys):
        env = env_for(tmp_path)
        cli.main(["seed", "--scenario", "paper"], environ=env)
        cli.main(["seed", "--approve-all"], environ=env)
        capsys.readouterr()

        assert cli.main(["report", "load"], environ=env) == 0
        first = capsys.readouterr().out
        assert cli.main(["report", "load"], environ=env) == 0
        second = capsys.readouterr().out
        assert first == second  # golden: deterministic output

        lines = first.strip().splitlines()
        assert lines[0] == "week\ttopics"
        rows = [line.split("\t") for line in lines[1:]]
        assert len(rows) == 7
        counts = [int(c) for _, c in rows]
        assert sum(counts) == 41
        assert max(counts) == 6

    def test_report_on_empty_store(self, tmp_path, capsys):
        env = env_for(tmp_path)
        cli.main(["migrate"], environ=env)
        capsys.readouterr()
        assert cli.main(["report", "load"], environ=env) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 8  # header + 7 weeks
        assert all(line.endswith("\t0") for line in lines[1:])
