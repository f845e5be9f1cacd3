from functools import lru_cache

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """Laboratory settings.

    Only init arguments are honoured: the CLI passes its flags as overrides and
    nothing is read from the environment or from dotenv files, so identical
    argv gives identical output on every machine.
    """

    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="forbid",
    )

    # Application
    app_name: str = "bincover-lab"
    app_version: str = "0.1.0"
    debug: bool = False

    # Reproducibility
    default_seed: int = 20140923
    prng_algorithm: str = "PCG64"

    # Search budgets
    opt_node_limit: int = 10_000_000
    worst_order_budget: int = 10_000_000

    # Monte Carlo
    mc_block_size: int = 1000
    jobs: int = 1
    tolerance_sigmas: float = 3.0

    # Output precision
    float_digits: int = 12
    analytic_digits: int = 40
    mu_max_working_dps: int = 2000

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    def with_overrides(self, **overrides) -> "Settings":
        """Copy with the non-None overrides applied."""
        values = {key: value for key, value in overrides.items() if value is not None}
        if not values:
            return self
        return Settings(**{**self.model_dump(), **values})


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
