"""Application configuration"""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings"""

    # Logging
    log_level: str = "WARNING"

    # Resource caps (desk-scale guards; CLI flags override per invocation)
    max_chains: int = 1_000_000
    max_linext: int = 10_000
    max_paths: int = 1_000_000

    # Verification
    jobs: int = 1
    # "minus" checks sigma(lambda) - j*beta, "plus" the literal sigma(lambda) + j*beta reading.
    mult_one_sign: str = "minus"
    lattice_samples: int = 10_000
    random_seed: int = 20240101

    # Run ledger (verify --record / history)
    database_url: str = "sqlite:///./lsfan.db"

    # HTTP surface (serve)
    host: str = "127.0.0.1"
    port: int = 8000

    class Config:
        env_file = ".env"
        case_sensitive = False


settings = Settings()
