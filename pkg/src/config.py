from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Interval arithmetic
    precision_bits: int = 128
    fallback_precision_bits: int = 256
    refinement_cap_bits: int = 4096

    # Numeric fallback sampling
    samples: int = 25
    seed: int = 0

    # Quartic search
    search_bound: int = 5

    # Bundle constants (c for A2, k for L_{k omega})
    charge_c: int = 1
    bogomolov_k: int = 1

    # Genus bookkeeping search
    c_max: int = 20
    k1_max: int = 10
    omega4: str = "24"

    # Output
    log_level: str = "INFO"
    report_format: str = "json"

    class Config:
        env_file = ".env"
        case_sensitive = False
        extra = "allow"


settings = Settings()
