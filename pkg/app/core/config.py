from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    APP_NAME: str = "Mutual Unbiasedness Lab"
    APP_ENV: str = "dev"
    APP_VERSION: str = "0.1.0"
    LOG_LEVEL: str = "INFO"

    # Numerical tolerances shared by the service modules
    CAUSTIC_TOL: float = 1e-8
    UNITARY_TOL: float = 1e-8
    PHASE_MODULUS_FLOOR: float = 1e-6
    RICCATI_BLOWUP_GUARD: float = 1e8
    MONOTONE_SLACK: float = 0.02

    DEFAULT_WINDOW: float = 0.5
    ORACLE_MAX_POINTS: int = 2048

    CSV_SIGNIFICANT_DIGITS: int = 17

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=False)


settings = Settings()  # type: ignore
