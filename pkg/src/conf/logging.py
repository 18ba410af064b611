import logging.config

from src.conf.config import settings


def setup_logging(level: str | None = None) -> None:
    """
    Configure the console logger used by every module.

    Args:
        level (str | None): Logging level name. Defaults to ``settings.LOG_LEVEL``.
    """
    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "generic": {"format": settings.LOG_FORMAT, "datefmt": "%H:%M:%S"},
            },
            "handlers": {
                "console": {
                    "class": "logging.StreamHandler",
                    "stream": "ext://sys.stderr",
                    "formatter": "generic",
                },
            },
            "root": {
                "level": (level or settings.LOG_LEVEL).upper(),
                "handlers": ["console"],
            },
        }
    )
