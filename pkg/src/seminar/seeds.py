"""Deterministic fixtures, including the pilot-cohort scenario: one
administrator, 35 students, 35 approved teacher themes, and 6 student
proposals awaiting review (41 visible once approved)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import timedelta

from .models import Role, Session, ThemeStatus
from .service import SeminarService, make_draft

FIRST_NAMES = [
    "Ana", "Bogdan", "Carmen", "Dana", "Elena", "Florin", "Gabriela", "Horia",
    "Ioana", "Iulia", "Liviu", "Mihai", "Nadia", "Oana", "Paul", "Radu",
    "Sabina", "Teodora", "Vlad", "Zoe",
]
LAST_NAMES = [
    "Albu", "Barbu", "Ciobanu", "Dima", "Enache", "Florea", "Georgescu",
    "Ionescu", "Lungu", "Marin", "Nistor", "Oprea", "Popescu", "Stan",
    "Tudor", "Ungureanu", "Vasile",
]
CONCEPTS = [
    "Headline ellipsis", "Quotation patterns", "Metaphor", "Narrative framing",
    "Proper names", "Evaluative adjectives", "Passive voice", "Modality markers",
    "Irony", "Intertextuality", "Photo captions", "Lead paragraphs",
    "Direct address", "Euphemism", "Stance adverbs", "Nominalization",
    "Pronoun choice", "Temporal deixis", "Register shifts", "Code switching",
    "Sound bites", "Syntactic parallelism", "Presupposition", "Agenda cues",
]
CONTEXTS = [
    "broadsheet front pages", "tabloid headlines", "television news scripts",
    "radio bulletins", "online news portals", "sports coverage",
    "political interviews", "financial news", "crime reporting",
    "editorial columns", "breaking-news tickers", "press releases",
    "news agency wire copy", "election-night coverage", "war correspondence",
    "science reporting", "local news segments", "celebrity profiles",
]
KEYWORD_POOL = [
    "news discourse", "semiotics", "media paradigm", "generic paradigm",
    "textual strategy", "framing", "genre", "reception",
]
BIBLIOGRAPHY = [
    "van Dijk, T. (1988). News as Discourse.",
    "Bell, A. (1991). The Language of News Media.",
    "Fairclough, N. (1995). Media Discourse.",
    "Fiske, J. (1987). Television Culture.",
    "Hartley, J. (1982). Understanding News.",
    "Eco, U. (1976). A Theory of Semiotics.",
    "Barthes, R. (1967). Elements of Semiology.",
    "Tuchman, G. (1978). Making News.",
]

NUM_STUDENTS = 35
NUM_TEACHER_THEMES = 35
NUM_STUDENT_PROPOSALS = 6

ADMIN_EMAIL = "admin@example.edu"


@dataclass(frozen=True)
class SeedSummary:
    admin_email: str
    admin_password: str
    student_password: str
    students: int
    teacher_themes: int
    student_proposals: int


def seed_paper_scenario(service: SeminarService, *, seed: int = 2026) -> SeedSummary:
    """Populate an empty store with the pilot cohort. Fully deterministic
    for a given seed, password salts included."""
    rng = random.Random(seed)
    admin_password = f"teach-{rng.getrandbits(40):010x}"
    student_password = f"study-{rng.getrandbits(40):010x}"

    admin = service.create_user(ADMIN_EMAIL, admin_password, "Seminar Teacher",
                                Role.ADMINISTRATOR, salt=rng.randbytes(16))
    admin_session = Session(admin.id, Role.ADMINISTRATOR)

    student_sessions: list[Session] = []
    for i in range(1, NUM_STUDENTS + 1):
        name = f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"
        user = service.create_user(f"student{i:02d}@example.edu", student_password,
                                   name, Role.STUDENT, salt=rng.randbytes(16))
        student_sessions.append(Session(user.id, Role.STUDENT))

    titles = [f"{concept} in {context}" for concept in CONCEPTS for context in CONTEXTS]
    rng.shuffle(titles)
    picked = titles[:NUM_TEACHER_THEMES + NUM_STUDENT_PROPOSALS]

    def draft_for(title: str, proposed_week: int | None):
        concept, _, context = title.partition(" in ")
        keywords = {concept.split()[0].lower(), context.split()[-1]}
        keywords.add(rng.choice(KEYWORD_POOL))
        return make_draft(
            title,
            summary=f"How {concept.lower()} shapes meaning across {context}.",
            keywords=sorted(keywords),
            references=rng.sample(BIBLIOGRAPHY, rng.randint(1, 3)),
            proposed_week=proposed_week,
        )

    # a couple of dated topics and a few deadlines, the rest unconstrained
    for index in range(NUM_TEACHER_THEMES):
        fixed_week = {0: 1, 1: 6}.get(index)
        deadline = index + 1 if 2 <= index <= 5 else None  # deadlines 3..6
        service.propose_theme(
            admin_session, draft_for(picked[index], deadline),
            max_students=2 if index % 7 == 0 else 1,
            fixed_week=fixed_week,
        )

    for offset in range(NUM_STUDENT_PROPOSALS):
        title = picked[NUM_TEACHER_THEMES + offset]
        proposed_week = rng.randint(4, 7) if offset % 2 == 0 else None
        service.propose_theme(student_sessions[offset], draft_for(title, proposed_week))

    # the cohort had one week of reading before choices opened
    service.set_policy(admin_session,
                       selection_opens_at=service.clock() - timedelta(days=7))

    return SeedSummary(
        admin_email=ADMIN_EMAIL, admin_password=admin_password,
        student_password=student_password, students=NUM_STUDENTS,
        teacher_themes=NUM_TEACHER_THEMES, student_proposals=NUM_STUDENT_PROPOSALS,
    )


def approve_all_pending(service: SeminarService, *, max_students: int = 1) -> int:
    """Approve every pending theme at the given capacity. Returns how many
    were approved."""
    admin_session = _admin_session(service)
    approved = 0
    for row in service.list_themes(admin_session):
        if row.theme.status is ThemeStatus.PENDING:
            service.review_theme(admin_session, row.theme.id, "approve",
                                 max_students=max_students)
            approved += 1
    return approved


def _admin_session(service: SeminarService) -> Session:
    with service.store.transaction() as txn:
        row = txn.conn.execute(
            "SELECT id FROM users WHERE role = 'administrator' ORDER BY id LIMIT 1"
        ).fetchone()
    if row is None:
        raise LookupError("no administrator account; seed or migrate first")
    return Session(row["id"], Role.ADMINISTRATOR)
