from functools import lru_cache
from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_prefix="MODGEN_", extra="ignore", case_sensitive=True)

    APP_TITLE: str = "Reed-Muller X mod P generator"
    LOG_LEVEL: str = "INFO"

    # Workers
    JOBS: int = 4
    VERIFY_CHUNKS: int = 16    # power of two; aligned input blocks checked concurrently

    # Method caps
    COMBINATORIAL_N_MAX: int = 16

    # Emission
    WRAP_COLUMN: int = 100     # 0 disables wrapping
    DEFAULT_ENTITY: str = "mod_p"
    DEFAULT_FORMAT: str = "vhdl"

@lru_cache
def get_settings() -> "Settings":
    return Settings()  # type: ignore
