"""seminarctl: migrations, fixtures, load reports, and the dev server.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import config as config_module
from .errors import SeminarError
from .seeds import approve_all_pending, seed_paper_scenario
from .service import SeminarService
from .store import Store


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seminarctl",
        description="Operate the seminar assignment service.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("migrate", help="create or upgrade the database schema")

    seed = sub.add_parser("seed", help="load fixtures into the store")
    seed.add_argument("--scenario", choices=["paper"],
                      help="named fixture: the 35-student pilot cohort")
    seed.add_argument("--approve-all", action="store_true",
                      help="approve every pending theme proposal")
    seed.add_argument("--max-students", type=int, default=1,
                      help="capacity used by --approve-all (default 1)")
    seed.add_argument("--seed", type=int, default=2026,
                      help="RNG seed for reproducible fixtures")

    report = sub.add_parser("report", help="print operator reports (TSV)")
    report.add_argument("kind", choices=["load"],
                        help="load: planned topics per seminar week")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--bind", help="host:port (default from SEMINAR_BIND)")

    return parser


def main(argv: list[str] | None = None, environ: dict[str, str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_module.from_env(environ)

    try:
        if args.verb == "serve":
            return _serve(cfg, args)
        store = Store(cfg.db_url, cfg.files_dir)
        service = SeminarService(store, max_upload_bytes=cfg.max_upload_bytes,
                                 anonymize_schedule=cfg.anonymize_schedule)
        service.store.migrate()
        if args.verb == "migrate":
            if cfg.admin_email and cfg.admin_password:
                created = service.ensure_admin(cfg.admin_email, cfg.admin_password)
                if created:
                    print(f"admin\t{created.email}")
            print(f"schema\t{store.schema_version()}")
            return 0
        if args.verb == "seed":
            return _seed(service, args)
        if args.verb == "report":
            return _report(service)
        parser.error(f"unknown verb {args.verb!r}")
    except SeminarError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 1
    except LookupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _seed(service: SeminarService, args: argparse.Namespace) -> int:
    if not args.scenario and not args.approve_all:
        print("error: nothing to do; pass --scenario and/or --approve-all",
              file=sys.stderr)
        return 2
    if args.scenario == "paper":
        summary = seed_paper_scenario(service, seed=args.seed)
        print(f"admin\t{summary.admin_email}\t{summary.admin_password}")
        print(f"students\t{summary.students}\tstudent01..student{summary.students:02d}"
              f"@example.edu\t{summary.student_password}")
        print(f"themes\t{summary.teacher_themes}")
        print(f"proposals\t{summary.student_proposals}")
    if args.approve_all:
        approved = approve_all_pending(service, max_students=args.max_students)
        print(f"approved\t{approved}")
    return 0


def _report(service: SeminarService) -> int:
    result = service.plan_theme_load()
    print("week\ttopics")
    for week in sorted(result.loads):
        print(f"{week}\t{result.loads[week]}")
    return 0


def _serve(cfg: config_module.AppConfig, args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    if args.bind:
        cfg = config_module.AppConfig(
            db_url=cfg.db_url, files_dir=cfg.files_dir, bind=args.bind,
            static_dir=cfg.static_dir, admin_email=cfg.admin_email,
            admin_password=cfg.admin_password, max_upload_bytes=cfg.max_upload_bytes,
            anonymize_schedule=cfg.anonymize_schedule,
            session_ttl_hours=cfg.session_ttl_hours,
        )
    app = create_app(cfg)
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
