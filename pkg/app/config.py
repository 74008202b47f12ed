"""
Configuration management using Pydantic v2 settings.
"""

import logging

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SolverSettings(BaseModel):
    """Maximum-entropy projection settings."""

    tol: float = Field(1e-8)
    boundary_tol: float = Field(1e-5)
    max_iter: int = Field(500)
    theta_threshold: float = Field(1e3)
    boundary_eigenvalue: float = Field(1e-7)
    ipf_max_iter: int = Field(20000)
    primal_floors: list[float] = Field(
        default_factory=lambda: [1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12]
    )


class SearchSettings(BaseModel):
    """Local maximizer search settings."""

    restarts: int = Field(32)
    max_steps: int = Field(400)
    cluster_tol: float = Field(1e-6)
    snap: float = Field(1e-12)
    exp_form_tol: float = Field(1e-5)
    rank_eigenvalue: float = Field(1e-9)


class FeasibilitySettings(BaseModel):
    """Exhaustive feasibility enumeration settings."""

    guard: int = Field(2**20)


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        env_nested_delimiter="__",
    )

    log_level: str = Field("INFO")
    threads: int = Field(1)
    seed: int = Field(0)
    # Gram check of assembled model bases is skipped above this many entries
    verify_basis_limit: int = Field(4_000_000)

    solver: SolverSettings = SolverSettings()
    search: SearchSettings = SearchSettings()
    feasibility: FeasibilitySettings = FeasibilitySettings()


# Create a singleton settings instance
settings = Settings()

logging.basicConfig(level=settings.log_level)
