"""Runtime configuration shared by the CLI and the API service."""

import os
from dataclasses import dataclass, field

DEFAULT_SEED = 42
DEFAULT_BOOTSTRAP = 200

ENV_DB = "APS_DB"
ENV_ADMIN_KEY = "APS_ADMIN_KEY"
ENV_ADMIN_SECRET = "APS_ADMIN_SECRET"


def _env_db() -> str:
    return os.environ.get(ENV_DB, "aps.sqlite3")


@dataclass
class Config:
    """Service configuration.

    ``admin_secret`` left as None disables every admin action (kill
    switch): requests are rejected before any credential comparison.
    """

    db_path: str = field(default_factory=_env_db)
    admin_key: str | None = field(
        default_factory=lambda: os.environ.get(ENV_ADMIN_KEY)
    )
    admin_secret: str | None = field(
        default_factory=lambda: os.environ.get(ENV_ADMIN_SECRET)
    )
    seed: int = DEFAULT_SEED
    bootstrap_count: int = DEFAULT_BOOTSTRAP
    cors_origins: tuple = ("*",)
