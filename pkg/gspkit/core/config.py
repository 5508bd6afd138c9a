"""
Toolkit configuration and settings
"""

from fractions import Fraction
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix GSPKIT_)"""

    # Logging
    log_level: str = "INFO"

    # Service info
    service_name: str = "gspkit"
    version: str = "1.0.0"

    # GAP dynamic program
    table_budget: int = 250_000  # Max cells in the capacity table (GSPKIT_TABLE_BUDGET)
    max_gap_bins: int = 8
    gap_batch_bins: int = 3  # Containers per GAP call inside the pipelines
    assignment_node_budget: int = 20_000  # Search nodes when matching items to a supplied layout

    # Pipelines
    default_epsilon: str = "1/4"
    container_budget: int = 64  # g(delta, eps) stand-in
    max_layouts: int = 24  # Layout templates tried per OPT' guess
    opt_grid_steps: int = 12  # Max OPT' guesses per pipeline run
    candidate_grid_size: int = 64  # Max candidate coordinates per axis

    # Exact oracle
    oracle_item_limit: int = 9

    # Benchmark harness
    bench_jobs: int = 1

    class Config:
        env_prefix = "GSPKIT_"
        env_file = ".env"
        env_file_encoding = "utf-8"

    @property
    def epsilon(self) -> Fraction:
        """Default epsilon as an exact rational"""
        return Fraction(self.default_epsilon)


# Global settings instance
settings = Settings()
