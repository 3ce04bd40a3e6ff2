"""HTTP/JSON boundary.

Thin translation layer: parse the request, call the service, shape the
response. Every modeled failure maps to exactly one (status, code) pair;
handlers are synchronous so they run in the framework's thread pool and
contention funnels into the store's transactions.
"""

from __future__ import annotations

import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable

from fastapi import Depends, FastAPI, File, Header, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import errors
from .config import AppConfig
from .models import (
    Assignment,
    Policy,
    Role,
    Session,
    Theme,
    ThemeListing,
    UploadedFile,
    User,
)
from .service import SeminarService, make_draft
from .store import Store

SESSION_TOKEN_BYTES = 16  # 128-bit tokens

ERROR_STATUS: dict[type[errors.SeminarError], int] = {
    errors.AuthFailed: 401,
    errors.AccountDisabled: 401,
    errors.Forbidden: 403,
    errors.NotFound: 404,
    errors.ThemeFull: 409,
    errors.AlreadyAssigned: 409,
    errors.ChoiceLimitReached: 409,
    errors.InvalidTransition: 409,
    errors.EmailTaken: 409,
    errors.DuplicateTitle: 409,
    errors.ProposalsClosed: 409,
    errors.ThemeNotSelectable: 409,
    errors.SelectionNotOpen: 409,
    errors.NotAssigned: 409,
    errors.Infeasible: 409,
    errors.FileTooLarge: 413,
    errors.ValidationError: 422,
    errors.WeekOutOfRange: 422,
    errors.MissingCapacity: 422,
    errors.WeakPassword: 422,
    errors.EmptyFile: 422,
    errors.InvalidPolicy: 422,
    errors.StoreUnavailable: 503,
    errors.TransactionRetryExhausted: 503,
    errors.MigrationConflict: 503,
}


def error_status(exc: errors.SeminarError) -> int:
    for klass in type(exc).__mro__:
        if klass in ERROR_STATUS:
            return ERROR_STATUS[klass]
    return 500


@dataclass(frozen=True)
class ApiSession:
    token: str
    user_id: int
    role: Role
    expires_at: datetime


class SessionStore:
    """Server-side token registry; revocable, expiring."""

    def __init__(self, ttl: timedelta = timedelta(hours=12),
                 clock: Callable[[], datetime] | None = None):
        self.ttl = ttl
        self.clock = clock or (lambda: datetime.now(timezone.utc))
        self._sessions: dict[str, ApiSession] = {}
        self._lock = threading.Lock()

    def create(self, user_id: int, role: Role) -> ApiSession:
        session = ApiSession(
            token=secrets.token_urlsafe(SESSION_TOKEN_BYTES),
            user_id=user_id, role=role,
            expires_at=self.clock() + self.ttl,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def resolve(self, token: str) -> ApiSession | None:
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                return None
            if self.clock() >= session.expires_at:
                del self._sessions[token]
                return None
            return session

    def revoke(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)

    def revoke_user(self, user_id: int, *, keep_token: str | None = None) -> int:
        with self._lock:
            doomed = [
                t for t, s in self._sessions.items()
                if s.user_id == user_id and t != keep_token
            ]
            for token in doomed:
                del self._sessions[token]
            return len(doomed)


@dataclass(frozen=True)
class AuthContext:
    session: Session
    token: str


# -- request bodies -----------------------------------------------------------

class LoginBody(BaseModel):
    email: str
    password: str


class ProposeBody(BaseModel):
    title: str
    summary: str = ""
    keywords: list[str] = Field(default_factory=list)
    references: list[str] = Field(default_factory=list)
    proposed_week: int | None = None
    max_students: int | None = None     # administrator proposals only
    fixed_week: int | None = None       # administrator proposals only


class ThemeReviewBody(BaseModel):
    decision: str
    max_students: int | None = None
    deadline_week: int | None = None
    fixed_week: int | None = None


class FileReviewBody(BaseModel):
    decision: str


class ProfileBody(BaseModel):
    display_name: str | None = None
    email: str | None = None
    new_password: str | None = None


class PolicyBody(BaseModel):
    max_choices_per_student: int | None = None
    per_week_capacity: int | None = None
    num_weeks: int | None = None
    proposal_open: bool | None = None
    selection_opens_at: datetime | None = None


# -- JSON projections ---------------------------------------------------------

def user_json(user: User) -> dict:
    return {
        "id": user.id,
        "email": user.email,
        "display_name": user.display_name,
        "role": user.role.value,
    }


def theme_json(theme: Theme) -> dict:
    return {
        "id": theme.id,
        "title": theme.title,
        "summary": theme.summary,
        "keywords": sorted(theme.keywords),
        "references": list(theme.references),
        "proposer_id": theme.proposer_id,
        "status": theme.status.value,
        "max_students": theme.max_students,
        "fixed_week": theme.fixed_week,
        "deadline_week": theme.deadline_week,
        "created_at": theme.created_at.isoformat(),
    }


def listing_json(row: ThemeListing) -> dict:
    payload = theme_json(row.theme)
    payload["assigned_count"] = row.assigned_count
    payload["remaining_capacity"] = row.remaining_capacity
    payload["selected_by_me"] = row.selected_by_viewer
    return payload


def assignment_json(assignment: Assignment) -> dict:
    return {
        "id": assignment.id,
        "student_id": assignment.student_id,
        "theme_id": assignment.theme_id,
        "presentation_week": assignment.presentation_week,
        "created_at": assignment.created_at.isoformat(),
    }


def file_json(record: UploadedFile) -> dict:
    return {
        "id": record.id,
        "theme_id": record.theme_id,
        "uploader_id": record.uploader_id,
        "filename": record.filename,
        "content_hash": record.content_hash,
        "size_bytes": record.size_bytes,
        "status": record.status.value,
        "created_at": record.created_at.isoformat(),
    }


def policy_json(policy: Policy) -> dict:
    return {
        "max_choices_per_student": policy.max_choices_per_student,
        "per_week_capacity": policy.per_week_capacity,
        "num_weeks": policy.num_weeks,
        "proposal_open": policy.proposal_open,
        "selection_opens_at": (
            policy.selection_opens_at.isoformat() if policy.selection_opens_at else None
        ),
    }


def create_app(config: AppConfig | None = None, *,
               service: SeminarService | None = None,
               session_store: SessionStore | None = None) -> FastAPI:
    config = config or AppConfig()
    if service is None:
        store = Store(config.db_url, config.files_dir)
        service = SeminarService(store, max_upload_bytes=config.max_upload_bytes,
                                 anonymize_schedule=config.anonymize_schedule)
    service.store.migrate()
    if config.admin_email and config.admin_password:
        service.ensure_admin(config.admin_email, config.admin_password)
    sessions = session_store or SessionStore(ttl=timedelta(hours=config.session_ttl_hours),
                                             clock=service.clock)

    app = FastAPI(title="Seminar assignment service", version="0.1.0",
                  docs_url=None, redoc_url=None)
    app.state.service = service
    app.state.sessions = sessions

    @app.exception_handler(errors.SeminarError)
    def seminar_error_handler(_request, exc: errors.SeminarError):
        payload = {"code": exc.code, "message": exc.message}
        if isinstance(exc, errors.Infeasible) and exc.item_ids:
            payload["item_ids"] = list(exc.item_ids)
        return JSONResponse(status_code=error_status(exc), content=payload)

    @app.exception_handler(RequestValidationError)
    def validation_error_handler(_request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"code": "ValidationError", "message": str(exc.errors()[:3])},
        )

    def current(authorization: str | None = Header(default=None)) -> AuthContext:
        if not authorization or not authorization.lower().startswith("bearer "):
            raise errors.AuthFailed("missing bearer token")
        token = authorization.split(" ", 1)[1].strip()
        session = sessions.resolve(token)
        if session is None:
            raise errors.AuthFailed("invalid or expired token")
        return AuthContext(session=Session(session.user_id, session.role), token=token)

    def admin_only(ctx: AuthContext = Depends(current)) -> AuthContext:
        if not ctx.session.is_admin:
            raise errors.Forbidden("administrator role required")
        return ctx

    # -- sessions ------------------------------------------------------------

    @app.post("/api/login")
    def login(body: LoginBody):
        domain_session = service.authenticate(body.email, body.password)
        api_session = sessions.create(domain_session.user_id, domain_session.role)
        return {
            "token": api_session.token,
            "role": api_session.role.value,
            "expires_at": api_session.expires_at.isoformat(),
        }

    @app.post("/api/logout", status_code=204)
    def logout(ctx: AuthContext = Depends(current)):
        sessions.revoke(ctx.token)
        return Response(status_code=204)

    # -- profile ---------------------------------------------------------------

    @app.get("/api/me")
    def me(ctx: AuthContext = Depends(current)):
        user = service.get_user(ctx.session)
        payload = user_json(user)
        with service.store.transaction() as txn:
            payload["assignment_count"] = txn.student_assignment_count(user.id)
        return payload

    @app.patch("/api/me")
    def patch_me(body: ProfileBody, ctx: AuthContext = Depends(current)):
        user, password_changed = service.update_profile(
            ctx.session, display_name=body.display_name,
            email=body.email, new_password=body.new_password,
        )
        if password_changed:
            sessions.revoke_user(user.id, keep_token=ctx.token)
        return user_json(user)

    # -- policy ------------------------------------------------------------------

    @app.get("/api/policy")
    def get_policy(_ctx: AuthContext = Depends(current)):
        return policy_json(service.get_policy())

    @app.patch("/api/policy")
    def patch_policy(body: PolicyBody, ctx: AuthContext = Depends(admin_only)):
        patch = {k: v for k, v in body.model_dump().items() if v is not None}
        return policy_json(service.set_policy(ctx.session, **patch))

    # -- themes ---------------------------------------------------------------------

    @app.get("/api/themes")
    def list_themes(ctx: AuthContext = Depends(current)):
        return [listing_json(row) for row in service.list_themes(ctx.session)]

    @app.post("/api/themes", status_code=201)
    def propose_theme(body: ProposeBody, ctx: AuthContext = Depends(current)):
        draft = make_draft(body.title, body.summary, body.keywords,
                           body.references, body.proposed_week)
        theme = service.propose_theme(ctx.session, draft,
                                      max_students=body.max_students,
                                      fixed_week=body.fixed_week)
        return theme_json(theme)

    @app.post("/api/themes/{theme_id}/review")
    def review_theme(theme_id: int, body: ThemeReviewBody,
                     ctx: AuthContext = Depends(admin_only)):
        theme = service.review_theme(
            ctx.session, theme_id, body.decision, max_students=body.max_students,
            deadline_week=body.deadline_week, fixed_week=body.fixed_week,
        )
        return theme_json(theme)

    @app.delete("/api/themes/{theme_id}")
    def delete_theme(theme_id: int, ctx: AuthContext = Depends(admin_only)):
        return theme_json(service.delete_theme(ctx.session, theme_id))

    # -- selection ----------------------------------------------------------------------

    @app.post("/api/themes/{theme_id}/select", status_code=201)
    def select_theme(theme_id: int, ctx: AuthContext = Depends(current)):
        return assignment_json(service.select_theme(ctx.session, theme_id))

    @app.delete("/api/themes/{theme_id}/select")
    def withdraw_selection(theme_id: int, ctx: AuthContext = Depends(current)):
        return assignment_json(service.withdraw_selection(ctx.session, theme_id))

    # -- files -------------------------------------------------------------------------

    @app.post("/api/themes/{theme_id}/files", status_code=201)
    def upload_file(theme_id: int, file: UploadFile = File(...),
                    ctx: AuthContext = Depends(current)):
        data = file.file.read()
        record = service.attach_file(ctx.session, theme_id,
                                     file.filename or "upload.bin", data)
        return file_json(record)

    @app.get("/api/themes/{theme_id}/files")
    def list_files(theme_id: int, ctx: AuthContext = Depends(current)):
        return [file_json(f) for f in service.list_files(ctx.session, theme_id)]

    @app.get("/api/files/pending")
    def pending_files(ctx: AuthContext = Depends(admin_only)):
        return [file_json(f) for f in service.pending_files(ctx.session)]

    @app.get("/api/files/{file_id}")
    def download_file(file_id: int, ctx: AuthContext = Depends(current)):
        record, data = service.file_bytes(ctx.session, file_id)
        return Response(
            content=data, media_type="application/octet-stream",
            headers={"Content-Disposition": f'attachment; filename="{record.filename}"'},
        )

    @app.post("/api/files/{file_id}/review")
    def review_file(file_id: int, body: FileReviewBody,
                    ctx: AuthContext = Depends(admin_only)):
        return file_json(service.review_file(ctx.session, file_id, body.decision))

    # -- planning -----------------------------------------------------------------------

    @app.post("/api/schedule/plan")
    def plan_schedule(ctx: AuthContext = Depends(admin_only)):
        result = service.plan_presentations(ctx.session)
        return {
            "placement": {str(k): v for k, v in sorted(result.placement.items())},
            "max_weekly_load": result.max_weekly_load,
            "loads": {str(k): v for k, v in sorted(result.loads.items())},
        }

    @app.get("/api/schedule")
    def get_schedule(ctx: AuthContext = Depends(current)):
        return service.schedule_board(ctx.session)

    static_dir = Path(config.static_dir)
    if static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="webui")

    return app
