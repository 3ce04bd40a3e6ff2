"""SQLite-backed store: normalized schema, migrations, transactions.

The store is the synchronization point for the whole service. Every
check-then-act sequence runs inside ``BEGIN IMMEDIATE`` so concurrent
callers serialize on the write lock; bounded retry absorbs the rare
lock-timeout. Keywords and references live in their own relations (no
delimited-list columns); ``assignments`` is the association entity
carrying ``presentation_week`` with a UNIQUE (student_id, theme_id) pair.

File bytes never enter the database: they land under ``files_dir`` at
``<hash[:2]>/<hash>`` and only metadata is stored relationally.
"""

from __future__ import annotations

import hashlib
import sqlite3
import threading
import time
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Callable, Iterator, Sequence, TypeVar

from . import rules
from .errors import (
    AlreadyAssigned,
    DuplicateTitle,
    EmailTaken,
    MigrationConflict,
    NotFound,
    StoreUnavailable,
    TransactionRetryExhausted,
)
from .models import (
    Assignment,
    AuditEntry,
    FileStatus,
    Policy,
    Role,
    Theme,
    ThemeListing,
    ThemeStatus,
    UploadedFile,
    User,
)

T = TypeVar("T")

MIGRATIONS: tuple[tuple[str, ...], ...] = (
    # version 1: the ERD tables
    (
        """
        CREATE TABLE users (
            id INTEGER PRIMARY KEY,
            email TEXT NOT NULL UNIQUE,
            password_digest TEXT NOT NULL CHECK (length(password_digest) > 0),
            display_name TEXT NOT NULL DEFAULT '',
            role TEXT NOT NULL CHECK (role IN ('administrator', 'student')),
            disabled INTEGER NOT NULL DEFAULT 0
        )
        """,
        """
        CREATE TABLE themes (
            id INTEGER PRIMARY KEY,
            title TEXT NOT NULL CHECK (length(title) > 0),
            summary TEXT NOT NULL DEFAULT '',
            proposer_id INTEGER NOT NULL REFERENCES users (id),
            status TEXT NOT NULL
                CHECK (status IN ('pending', 'approved', 'rejected', 'deleted')),
            max_students INTEGER CHECK (max_students IS NULL OR max_students >= 1),
            fixed_week INTEGER,
            deadline_week INTEGER,
            created_at TEXT NOT NULL
        )
        """,
        # titles stay unique while a theme is anything but rejected
        """
        CREATE UNIQUE INDEX idx_themes_title_active
            ON themes (title) WHERE status != 'rejected'
        """,
        """
        CREATE TABLE keywords (
            id INTEGER PRIMARY KEY,
            word TEXT NOT NULL UNIQUE CHECK (length(word) > 0)
        )
        """,
        """
        CREATE TABLE theme_keywords (
            theme_id INTEGER NOT NULL REFERENCES themes (id),
            keyword_id INTEGER NOT NULL REFERENCES keywords (id),
            PRIMARY KEY (theme_id, keyword_id)
        )
        """,
        """
        CREATE TABLE "references" (
            id INTEGER PRIMARY KEY,
            theme_id INTEGER NOT NULL REFERENCES themes (id),
            position INTEGER NOT NULL,
            text TEXT NOT NULL,
            UNIQUE (theme_id, position)
        )
        """,
        """
        CREATE TABLE assignments (
            id INTEGER PRIMARY KEY,
            student_id INTEGER NOT NULL REFERENCES users (id),
            theme_id INTEGER NOT NULL REFERENCES themes (id),
            presentation_week INTEGER,
            created_at TEXT NOT NULL,
            UNIQUE (student_id, theme_id)
        )
        """,
        """
        CREATE TABLE files (
            id INTEGER PRIMARY KEY,
            theme_id INTEGER NOT NULL REFERENCES themes (id),
            uploader_id INTEGER NOT NULL REFERENCES users (id),
            filename TEXT NOT NULL,
            content_hash TEXT NOT NULL,
            size_bytes INTEGER NOT NULL CHECK (size_bytes >= 0),
            status TEXT NOT NULL CHECK (status IN ('pending', 'approved', 'rejected')),
            created_at TEXT NOT NULL
        )
        """,
        """
        CREATE TABLE policy (
            id INTEGER PRIMARY KEY CHECK (id = 1),
            max_choices_per_student INTEGER NOT NULL CHECK (max_choices_per_student >= 1),
            per_week_capacity INTEGER NOT NULL CHECK (per_week_capacity >= 1),
            num_weeks INTEGER NOT NULL CHECK (num_weeks >= 1),
            proposal_open INTEGER NOT NULL DEFAULT 1,
            selection_opens_at TEXT
        )
        """,
        """
        INSERT INTO policy (id, max_choices_per_student, per_week_capacity,
                            num_weeks, proposal_open, selection_opens_at)
        VALUES (1, 1, 6, 7, 1, NULL)
        """,
    ),
    # version 2: durable history + hot-path indexes
    (
        """
        CREATE TABLE audit_log (
            id INTEGER PRIMARY KEY,
            at TEXT NOT NULL,
            actor_id INTEGER REFERENCES users (id),
            action TEXT NOT NULL,
            entity TEXT NOT NULL,
            entity_id INTEGER,
            detail TEXT NOT NULL DEFAULT ''
        )
        """,
        "CREATE INDEX idx_assignments_theme ON assignments (theme_id)",
        "CREATE INDEX idx_assignments_student ON assignments (student_id)",
        "CREATE INDEX idx_files_theme ON files (theme_id)",
    ),
)

SCHEMA_VERSION = len(MIGRATIONS)

LISTING_LIMIT = 1000


def _dt(value: str | None) -> datetime | None:
    return datetime.fromisoformat(value) if value else None


def _iso(value: datetime | None) -> str | None:
    return value.isoformat() if value else None


class Transaction:
    """Typed query surface over one open write transaction."""

    def __init__(self, conn: sqlite3.Connection):
        self.conn = conn

    # -- users ---------------------------------------------------------

    def insert_user(self, email: str, password_digest: str, display_name: str,
                    role: Role) -> User:
        if self.conn.execute("SELECT 1 FROM users WHERE email = ?", (email,)).fetchone():
            raise EmailTaken(f"email {email!r} is already registered")
        cur = self.conn.execute(
            "INSERT INTO users (email, password_digest, display_name, role)"
            " VALUES (?, ?, ?, ?)",
            (email, password_digest, display_name, role.value),
        )
        return User(cur.lastrowid, email, password_digest, display_name, role)

    def get_user(self, user_id: int) -> User:
        row = self.conn.execute("SELECT * FROM users WHERE id = ?", (user_id,)).fetchone()
        if row is None:
            raise NotFound(f"no user {user_id}")
        return _user_from_row(row)

    def find_user_by_email(self, email: str) -> User | None:
        row = self.conn.execute("SELECT * FROM users WHERE email = ?", (email,)).fetchone()
        return _user_from_row(row) if row else None

    def update_user(self, user_id: int, *, email: str | None = None,
                    display_name: str | None = None,
                    password_digest: str | None = None) -> User:
        current = self.get_user(user_id)
        if email is not None and email != current.email:
            clash = self.conn.execute(
                "SELECT 1 FROM users WHERE email = ? AND id != ?", (email, user_id)
            ).fetchone()
            if clash:
                raise EmailTaken(f"email {email!r} is already registered")
        self.conn.execute(
            "UPDATE users SET email = COALESCE(?, email),"
            " display_name = COALESCE(?, display_name),"
            " password_digest = COALESCE(?, password_digest) WHERE id = ?",
            (email, display_name, password_digest, user_id),
        )
        return self.get_user(user_id)

    def count_users(self, role: Role | None = None) -> int:
        if role is None:
            return self.conn.execute("SELECT COUNT(*) FROM users").fetchone()[0]
        return self.conn.execute(
            "SELECT COUNT(*) FROM users WHERE role = ?", (role.value,)
        ).fetchone()[0]

    # -- themes --------------------------------------------------------

    def insert_theme(self, *, title: str, summary: str, keywords: Sequence[str],
                     references: Sequence[str], proposer_id: int, status: ThemeStatus,
                     max_students: int | None, fixed_week: int | None,
                     deadline_week: int | None, now: datetime) -> Theme:
        clash = self.conn.execute(
            "SELECT 1 FROM themes WHERE title = ? AND status != 'rejected'", (title,)
        ).fetchone()
        if clash:
            raise DuplicateTitle(f"a theme titled {title!r} already exists")
        cur = self.conn.execute(
            "INSERT INTO themes (title, summary, proposer_id, status, max_students,"
            " fixed_week, deadline_week, created_at) VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
            (title, summary, proposer_id, status.value, max_students,
             fixed_week, deadline_week, now.isoformat()),
        )
        theme_id = cur.lastrowid
        for word in sorted({k.strip() for k in keywords if k.strip()}):
            self.conn.execute("INSERT OR IGNORE INTO keywords (word) VALUES (?)", (word,))
            keyword_id = self.conn.execute(
                "SELECT id FROM keywords WHERE word = ?", (word,)
            ).fetchone()[0]
            self.conn.execute(
                "INSERT INTO theme_keywords (theme_id, keyword_id) VALUES (?, ?)",
                (theme_id, keyword_id),
            )
        for position, text in enumerate(references):
            self.conn.execute(
                'INSERT INTO "references" (theme_id, position, text) VALUES (?, ?, ?)',
                (theme_id, position, text),
            )
        return self.get_theme(theme_id)

    def get_theme(self, theme_id: int) -> Theme:
        row = self.conn.execute("SELECT * FROM themes WHERE id = ?", (theme_id,)).fetchone()
        if row is None:
            raise NotFound(f"no theme {theme_id}")
        return self._theme_from_row(row)

    def _theme_from_row(self, row: sqlite3.Row) -> Theme:
        keywords = frozenset(
            r[0] for r in self.conn.execute(
                "SELECT k.word FROM keywords k"
                " JOIN theme_keywords tk ON tk.keyword_id = k.id WHERE tk.theme_id = ?",
                (row["id"],),
            )
        )
        references = tuple(
            r[0] for r in self.conn.execute(
                'SELECT text FROM "references" WHERE theme_id = ? ORDER BY position',
                (row["id"],),
            )
        )
        return Theme(
            id=row["id"], title=row["title"], summary=row["summary"],
            keywords=keywords, references=references, proposer_id=row["proposer_id"],
            status=ThemeStatus(row["status"]), max_students=row["max_students"],
            fixed_week=row["fixed_week"], deadline_week=row["deadline_week"],
            created_at=_dt(row["created_at"]),
        )

    def update_theme(self, theme_id: int, **fields) -> Theme:
        allowed = {"status", "max_students", "fixed_week", "deadline_week"}
        unknown = set(fields) - allowed
        if unknown:
            raise ValueError(f"cannot update theme fields {sorted(unknown)}")
        sets, params = [], []
        for name, value in fields.items():
            sets.append(f"{name} = ?")
            params.append(value.value if isinstance(value, ThemeStatus) else value)
        params.append(theme_id)
        self.conn.execute(f"UPDATE themes SET {', '.join(sets)} WHERE id = ?", params)
        return self.get_theme(theme_id)

    def themes_with_status(self, statuses: Sequence[ThemeStatus]) -> list[Theme]:
        marks = ", ".join("?" for _ in statuses)
        rows = self.conn.execute(
            f"SELECT * FROM themes WHERE status IN ({marks}) ORDER BY id",
            [s.value for s in statuses],
        ).fetchall()
        return [self._theme_from_row(r) for r in rows]

    def listing(self, viewer_role: Role, viewer_id: int) -> list[ThemeListing]:
        statuses = ["approved"]
        if viewer_role is Role.ADMINISTRATOR:
            statuses.append("pending")
        marks = ", ".join("?" for _ in statuses)
        rows = self.conn.execute(
            f"""

            SELECT t.*, COUNT(a.id) AS assigned_count,
                   COALESCE(SUM(CASE WHEN a.student_id = ? THEN 1 ELSE 0 END), 0) AS mine
            FROM themes t LEFT JOIN assignments a ON a.theme_id = t.id
            WHERE t.status IN ({marks})
            GROUP BY t.id
            LIMIT {LISTING_LIMIT}
            """,
            [viewer_id, *statuses],
        ).fetchall()
        listings = []
        for row in rows:
            theme = self._theme_from_row(row)
            remaining = None
            if theme.max_students is not None:
                remaining = max(theme.max_students - row["assigned_count"], 0)
            listings.append(ThemeListing(
                theme=theme, assigned_count=row["assigned_count"],
                remaining_capacity=remaining, selected_by_viewer=bool(row["mine"]),
            ))
        listings.sort(key=lambda item: rules.listing_sort_key(item.theme))
        return listings

    def clear_theme_satellites(self, theme_id: int) -> int:
        """Hard-delete link rows, references, files, and assignments for a
        theme being deleted. Returns the number of cancelled assignments."""
        cancelled = self.conn.execute(
            "SELECT COUNT(*) FROM assignments WHERE theme_id = ?", (theme_id,)
        ).fetchone()[0]
        self.conn.execute("DELETE FROM theme_keywords WHERE theme_id = ?", (theme_id,))
        self.conn.execute('DELETE FROM "references" WHERE theme_id = ?', (theme_id,))
        self.conn.execute("DELETE FROM files WHERE theme_id = ?", (theme_id,))
        self.conn.execute("DELETE FROM assignments WHERE theme_id = ?", (theme_id,))
        return cancelled

    # -- assignments -----------------------------------------------------

    def theme_assignment_count(self, theme_id: int) -> int:
        return self.conn.execute(
            "SELECT COUNT(*) FROM assignments WHERE theme_id = ?", (theme_id,)
        ).fetchone()[0]

    def student_assignment_count(self, student_id: int) -> int:
        return self.conn.execute(
            "SELECT COUNT(*) FROM assignments WHERE student_id = ?", (student_id,)
        ).fetchone()[0]

    def find_assignment(self, student_id: int, theme_id: int) -> Assignment | None:
        row = self.conn.execute(
            "SELECT * FROM assignments WHERE student_id = ? AND theme_id = ?",
            (student_id, theme_id),
        ).fetchone()
        return _assignment_from_row(row) if row else None

    def insert_assignment(self, student_id: int, theme_id: int,
                          presentation_week: int | None, now: datetime) -> Assignment:
        try:
            cur = self.conn.execute(
                "INSERT INTO assignments (student_id, theme_id, presentation_week,"
                " created_at) VALUES (?, ?, ?, ?)",
                (student_id, theme_id, presentation_week, now.isoformat()),
            )
        except sqlite3.IntegrityError as exc:
            raise AlreadyAssigned("student already holds this theme") from exc
        return Assignment(cur.lastrowid, student_id, theme_id, presentation_week, now)

    def delete_assignment(self, assignment_id: int) -> None:
        self.conn.execute("DELETE FROM assignments WHERE id = ?", (assignment_id,))

    def all_assignments(self) -> list[Assignment]:
        rows = self.conn.execute("SELECT * FROM assignments ORDER BY id").fetchall()
        return [_assignment_from_row(r) for r in rows]

    def get_assignment(self, assignment_id: int) -> Assignment:
        row = self.conn.execute(
            "SELECT * FROM assignments WHERE id = ?", (assignment_id,)
        ).fetchone()
        if row is None:
            raise NotFound(f"no assignment {assignment_id}")
        return _assignment_from_row(row)

    def set_presentation_week(self, assignment_id: int, week: int | None) -> None:
        self.conn.execute(
            "UPDATE assignments SET presentation_week = ? WHERE id = ?",
            (week, assignment_id),
        )

    # -- files -----------------------------------------------------------

    def insert_file(self, *, theme_id: int, uploader_id: int, filename: str,
                    content_hash: str, size_bytes: int, now: datetime) -> UploadedFile:
        cur = self.conn.execute(
            "INSERT INTO files (theme_id, uploader_id, filename, content_hash,"
            " size_bytes, status, created_at) VALUES (?, ?, ?, ?, ?, ?, ?)",
            (theme_id, uploader_id, filename, content_hash, size_bytes,
             FileStatus.PENDING.value, now.isoformat()),
        )
        return self.get_file(cur.lastrowid)

    def get_file(self, file_id: int) -> UploadedFile:
        row = self.conn.execute("SELECT * FROM files WHERE id = ?", (file_id,)).fetchone()
        if row is None:
            raise NotFound(f"no file {file_id}")
        return _file_from_row(row)

    def set_file_status(self, file_id: int, status: FileStatus) -> UploadedFile:
        self.conn.execute(
            "UPDATE files SET status = ? WHERE id = ?", (status.value, file_id)
        )
        return self.get_file(file_id)

    def files_for_theme(self, theme_id: int,
                        statuses: Sequence[FileStatus] | None = None) -> list[UploadedFile]:
        query = "SELECT * FROM files WHERE theme_id = ?"
        params: list = [theme_id]
        if statuses is not None:
            query += " AND status IN (%s)" % ", ".join("?" for _ in statuses)
            params.extend(s.value for s in statuses)
        rows = self.conn.execute(query + " ORDER BY id", params).fetchall()
        return [_file_from_row(r) for r in rows]

    def files_with_status(self, status: FileStatus) -> list[UploadedFile]:
        rows = self.conn.execute(
            "SELECT * FROM files WHERE status = ? ORDER BY id", (status.value,)
        ).fetchall()
        return [_file_from_row(r) for r in rows]

    # -- policy / audit ----------------------------------------------------

    def get_policy(self) -> Policy:
        row = self.conn.execute("SELECT * FROM policy WHERE id = 1").fetchone()
        if row is None:
            raise StoreUnavailable("policy row missing; store not migrated")
        return Policy(
            max_choices_per_student=row["max_choices_per_student"],
            per_week_capacity=row["per_week_capacity"],
            num_weeks=row["num_weeks"],
            proposal_open=bool(row["proposal_open"]),
            selection_opens_at=_dt(row["selection_opens_at"]),
        )

    def save_policy(self, policy: Policy) -> Policy:
        self.conn.execute(
            "UPDATE policy SET max_choices_per_student = ?, per_week_capacity = ?,"
            " num_weeks = ?, proposal_open = ?, selection_opens_at = ? WHERE id = 1",
            (policy.max_choices_per_student, policy.per_week_capacity,
             policy.num_weeks, int(policy.proposal_open),
             _iso(policy.selection_opens_at)),
        )
        return self.get_policy()

    def audit(self, *, now: datetime, actor_id: int | None, action: str,
              entity: str, entity_id: int | None, detail: str = "") -> None:
        self.conn.execute(
            "INSERT INTO audit_log (at, actor_id, action, entity, entity_id, detail)"
            " VALUES (?, ?, ?, ?, ?, ?)",
            (now.isoformat(), actor_id, action, entity, entity_id, detail),
        )

    def audit_entries(self, action: str | None = None) -> list[AuditEntry]:
        query = "SELECT * FROM audit_log"
        params: tuple = ()
        if action:
            query += " WHERE action = ?"
            params = (action,)
        rows = self.conn.execute(query + " ORDER BY id", params).fetchall()
        return [
            AuditEntry(r["id"], _dt(r["at"]), r["actor_id"], r["action"],
                       r["entity"], r["entity_id"], r["detail"])
            for r in rows
        ]


def _user_from_row(row: sqlite3.Row) -> User:
    return User(row["id"], row["email"], row["password_digest"],
                row["display_name"], Role(row["role"]), bool(row["disabled"]))


def _assignment_from_row(row: sqlite3.Row) -> Assignment:
    return Assignment(row["id"], row["student_id"], row["theme_id"],
                      row["presentation_week"], _dt(row["created_at"]))


def _file_from_row(row: sqlite3.Row) -> UploadedFile:
    return UploadedFile(row["id"], row["theme_id"], row["uploader_id"],
                        row["filename"], row["content_hash"], row["size_bytes"],
                        FileStatus(row["status"]), _dt(row["created_at"]))


class Store:
    """One SQLite database plus a content-addressed blob directory.

    File-backed databases get one connection per thread (WAL, busy
    timeout); ``:memory:`` keeps a single shared connection behind a lock
    so unit tests stay cheap.
    """

    MAX_RETRIES = 5

    def __init__(self, db_path: str | Path = "./seminar.db",
                 files_dir: str | Path = "./files"):
        self.db_path = str(db_path)
        self.files_dir = Path(files_dir)
        self._memory = self.db_path == ":memory:"
        self._local = threading.local()
        self._lock = threading.RLock()
        self._all_conns: list[sqlite3.Connection] = []
        self._conns_guard = threading.Lock()
        if self._memory:
            self._shared_conn = self._connect()

    def _connect(self) -> sqlite3.Connection:
        try:
            conn = sqlite3.connect(
                self.db_path, timeout=10.0, isolation_level=None,
                check_same_thread=False,
            )
        except sqlite3.OperationalError as exc:
            raise StoreUnavailable(f"cannot open database at {self.db_path}") from exc
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA foreign_keys = ON")
        if not self._memory:
            conn.execute("PRAGMA journal_mode = WAL")
            conn.execute("PRAGMA busy_timeout = 10000")
        with self._conns_guard:
            self._all_conns.append(conn)
        return conn

    def _conn(self) -> sqlite3.Connection:
        if self._memory:
            return self._shared_conn
        conn = getattr(self._local, "conn", None)
        if conn is None:
            conn = self._connect()
            self._local.conn = conn
        return conn

    def close(self) -> None:
        with self._conns_guard:
            for conn in self._all_conns:
                try:
                    conn.close()
                except sqlite3.Error:
                    pass
            self._all_conns.clear()
        self._local = threading.local()

    # -- migrations -----------------------------------------------------

    def schema_version(self) -> int:
        return self._conn().execute("PRAGMA user_version").fetchone()[0]

    def migrate(self) -> int:
        """Bring the schema to the latest version. Idempotent."""
        with self._lock:
            conn = self._conn()
            current = conn.execute("PRAGMA user_version").fetchone()[0]
            if current > SCHEMA_VERSION:
                raise MigrationConflict(
                    f"store is at schema {current}, this build understands {SCHEMA_VERSION}"
                )
            for version in range(current + 1, SCHEMA_VERSION + 1):
                conn.execute("BEGIN IMMEDIATE")
                try:
                    for statement in MIGRATIONS[version - 1]:
                        conn.execute(statement)
                    conn.execute(f"PRAGMA user_version = {version}")
                    conn.execute("COMMIT")
                except BaseException:
                    conn.execute("ROLLBACK")
                    raise
            return SCHEMA_VERSION

    def migrate_to(self, version: int) -> int:
        """Apply only the first ``version`` migrations (test fixture hook)."""
        if not 0 <= version <= SCHEMA_VERSION:
            raise MigrationConflict(f"no such schema version {version}")
        with self._lock:
            conn = self._conn()
            current = conn.execute("PRAGMA user_version").fetchone()[0]
            for v in range(current + 1, version + 1):
                conn.execute("BEGIN IMMEDIATE")
                try:
                    for statement in MIGRATIONS[v - 1]:
                        conn.execute(statement)
                    conn.execute(f"PRAGMA user_version = {v}")
                    conn.execute("COMMIT")
                except BaseException:
                    conn.execute("ROLLBACK")
                    raise
            return version

    # -- transactions ----------------------------------------------------

    @contextmanager
    def transaction(self) -> Iterator[Transaction]:
        """One immediate transaction; commits on success, rolls back on any
        exception. No retry — use :meth:`run` for contended paths.

        In-process callers queue on a plain lock instead of SQLite's
        sleep-and-poll busy handler, which under heavy contention wastes
        orders of magnitude more time than the transactions themselves.
        SQLite's file locking still guards against other processes.
        """
        with self._lock:
            conn = self._conn()
            conn.execute("BEGIN IMMEDIATE")
            try:
                yield Transaction(conn)
                conn.execute("COMMIT")
            except BaseException:
                conn.execute("ROLLBACK")
                raise

    def run(self, fn: Callable[[Transaction], T], *, retries: int = MAX_RETRIES) -> T:
        """Run ``fn`` inside a transaction, retrying on lock contention."""
        attempt = 0
        while True:
            try:
                with self.transaction() as txn:
                    return fn(txn)
            except sqlite3.OperationalError as exc:
                message = str(exc).lower()
                if "locked" not in message and "busy" not in message:
                    raise StoreUnavailable(str(exc)) from exc
                attempt += 1
                if attempt >= retries:
                    raise TransactionRetryExhausted(
                        f"gave up after {attempt} attempts: {exc}"
                    ) from exc
                time.sleep(0.01 * attempt)

    # -- blob storage ------------------------------------------------------

    def save_blob(self, data: bytes) -> str:
        digest = hashlib.sha256(data).hexdigest()
        target = self.blob_path(digest)
        if not target.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
            tmp = target.with_suffix(".tmp")
            tmp.write_bytes(data)
            tmp.replace(target)
        return digest

    def blob_path(self, content_hash: str) -> Path:
        return self.files_dir / content_hash[:2] / content_hash

    def load_blob(self, content_hash: str) -> bytes:
        path = self.blob_path(content_hash)
        if not path.exists():
            raise NotFound(f"no stored blob {content_hash}")
        return path.read_bytes()
