from __future__ import annotations

import pytest

from seminar.models import Role
from seminar.service import SeminarService
from seminar.store import Store


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """One visible pass/fail line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or not item.fspath.basename.startswith("test_acceptance"):
        return
    label = (item.function.__doc__ or item.name).strip().splitlines()[0]
    status = "PASS" if report.passed else "FAIL"
    terminal = item.config.pluginmanager.get_plugin("terminalreporter")
    if terminal is not None:
        terminal.write_line(f"[{status}] {label}")

ADMIN_EMAIL = "admin@example.edu"
ADMIN_PASSWORD = "admin-pass-1"
STUDENT_PASSWORD = "s3minar-pw"


@pytest.fixture
def store(tmp_path):
    s = Store(tmp_path / "seminar.db", tmp_path / "files")
    s.migrate()
    yield s
    s.close()


@pytest.fixture
def service(store):
    return SeminarService(store)


@pytest.fixture
def admin(service):
    service.create_user(ADMIN_EMAIL, ADMIN_PASSWORD, "Teacher", Role.ADMINISTRATOR)
    return service.authenticate(ADMIN_EMAIL, ADMIN_PASSWORD)


@pytest.fixture
def student(service):
    service.create_user("ana@example.edu", STUDENT_PASSWORD, "Ana", Role.STUDENT)
    return service.authenticate("ana@example.edu", STUDENT_PASSWORD)


@pytest.fixture
def student2(service):
    service.create_user("bogdan@example.edu", STUDENT_PASSWORD, "Bogdan", Role.STUDENT)
    return service.authenticate("bogdan@example.edu", STUDENT_PASSWORD)


@pytest.fixture
def make_student(service):
    def factory(name: str):
        email = f"{name.lower()}@example.edu"
        service.create_user(email, STUDENT_PASSWORD, name.title(), Role.STUDENT)
        return service.authenticate(email, STUDENT_PASSWORD)
    return factory
