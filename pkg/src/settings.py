from functools import lru_cache
from typing import Annotated, Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="steklov_", case_sensitive=False)

    log_level: Literal["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"] = "WARNING"
    log_json: bool = False
    rtol: Annotated[float, Field(gt=0)] = 1e-8
    atol: Annotated[float, Field(gt=0)] = 1e-12
    max_steps: Annotated[int, Field(ge=1)] = 1_000_000
    workers: Annotated[int, Field(ge=1)] = 1  # bench process-pool size
    seed: Annotated[int, Field(ge=0, lt=2**64)] = 42


@lru_cache
def get_settings():
    return Settings()
