"""Domain error hierarchy.

Every failure mode of the service is a subclass of :class:`SeminarError`
with a stable machine-readable ``code`` (the class name). The HTTP layer
maps codes to status values; nothing here knows about HTTP.
"""

from __future__ import annotations


class SeminarError(Exception):
    """Base class for all modeled failures."""

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__

    @property
    def code(self) -> str:
        return self.__class__.__name__


# -- authentication ---------------------------------------------------------

class AuthFailed(SeminarError):
    """Unknown email or bad password; caller cannot tell which."""


class AccountDisabled(SeminarError):
    """Credentials verified but the account has been disabled."""


# -- authorization / lookup -------------------------------------------------

class Forbidden(SeminarError):
    """Caller's role does not permit the operation."""


class NotFound(SeminarError):
    """Referenced entity does not exist."""


# -- request validation -----------------------------------------------------

class ValidationError(SeminarError):
    """Required draft fields missing or malformed."""


class WeekOutOfRange(SeminarError):
    """Week index outside [1, num_weeks]."""


class MissingCapacity(SeminarError):
    """Approval without a max_students value."""


class WeakPassword(SeminarError):
    """New password shorter than the minimum length."""


class EmptyFile(SeminarError):
    """Zero-byte upload."""


class FileTooLarge(SeminarError):
    """Upload exceeds the configured size cap."""


class InvalidPolicy(SeminarError):
    """Policy patch with non-positive limits."""


# -- state conflicts --------------------------------------------------------

class DuplicateTitle(SeminarError):
    """A non-rejected theme already carries this title."""


class ProposalsClosed(SeminarError):
    """Student proposals are not being accepted right now."""


class InvalidTransition(SeminarError):
    """Lifecycle transition not allowed from the current status."""


class ThemeFull(SeminarError):
    """Theme already holds max_students assignments."""


class ChoiceLimitReached(SeminarError):
    """Student already holds the maximum number of themes."""


class AlreadyAssigned(SeminarError):
    """This student already holds this theme."""


class ThemeNotSelectable(SeminarError):
    """Theme is pending, rejected, or deleted."""


class SelectionNotOpen(SeminarError):
    """Selection has not opened yet."""


class NotAssigned(SeminarError):
    """No active assignment exists for this (student, theme) pair."""


class EmailTaken(SeminarError):
    """Another account already uses this email address."""


class Infeasible(SeminarError):
    """No placement satisfies the deadline windows.

    ``item_ids`` names the offending items (empty window or fixed week
    outside the planning horizon).
    """

    def __init__(self, message: str = "", item_ids: tuple[int, ...] = ()):
        super().__init__(message)
        self.item_ids = tuple(item_ids)


# -- storage ----------------------------------------------------------------

class StoreUnavailable(SeminarError):
    """Backing store cannot be reached."""


class MigrationConflict(SeminarError):
    """Store schema is ahead of or incompatible with this build."""


class TransactionRetryExhausted(SeminarError):
    """Serialization conflict persisted past the retry budget."""
