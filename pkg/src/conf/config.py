from pydantic import ConfigDict
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    MIN_BUCKET: int = 3
    MIN_EDGES: int = 8
    SPAN_BUDGET: int = 100_000_000
    MAX_SUBSET_SIZE: int = 24
    WORKERS: int = 1
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(levelname)-5.5s [%(name)s] %(message)s"

    model_config = ConfigDict(
        extra="ignore",
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="TRIPLES_",
        case_sensitive=True,
    )  # type: ignore


settings = Settings()  # type: ignore
