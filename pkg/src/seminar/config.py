"""Runtime configuration, read once from the environment."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .service import DEFAULT_MAX_UPLOAD_BYTES


@dataclass(frozen=True)
class AppConfig:
    db_url: str = "./seminar.db"
    files_dir: str = "./files"
    bind: str = "127.0.0.1:8080"
    static_dir: str = "./frontend/dist"
    admin_email: str | None = None
    admin_password: str | None = None
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES
    anonymize_schedule: bool = False
    session_ttl_hours: float = 12.0

    @property
    def host(self) -> str:
        return self.bind.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.bind.rsplit(":", 1)[1])


def from_env(environ: dict[str, str] | None = None) -> AppConfig:
    env = os.environ if environ is None else environ
    return AppConfig(
        db_url=env.get("SEMINAR_DB_URL", "./seminar.db"),
        files_dir=env.get("SEMINAR_FILES_DIR", "./files"),
        bind=env.get("SEMINAR_BIND", "127.0.0.1:8080"),
        static_dir=env.get("SEMINAR_STATIC_DIR", "./frontend/dist"),
        admin_email=env.get("SEMINAR_ADMIN_EMAIL"),
        admin_password=env.get("SEMINAR_ADMIN_PASSWORD"),
        max_upload_bytes=int(env.get("SEMINAR_MAX_UPLOAD_BYTES", DEFAULT_MAX_UPLOAD_BYTES)),
        anonymize_schedule=env.get("SEMINAR_ANONYMIZE_SCHEDULE", "") == "1",
        session_ttl_hours=float(env.get("SEMINAR_SESSION_TTL_HOURS", "12")),
    )
