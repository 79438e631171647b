from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

import orjson
from pydantic import ValidationError

from app.commands import field, kernel, mub, riccati, schema, sweep
from app.commands.common import add_common_arguments
from app.core.config import settings
from app.core.errors import ConfigurationError, LabError
from app.core.logging import configure_logging
from app.schemas.common import ErrorReport

logger = logging.getLogger(__name__)

EXIT_CONFIG = ConfigurationError.exit_code


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mublab", description=settings.APP_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    add_common_arguments(parser, default=None)
    subparsers = parser.add_subparsers(dest="command", required=True)

    # commands
    kernel.register(subparsers)
    sweep.register(subparsers)
    mub.register(subparsers)
    riccati.register(subparsers)
    field.register(subparsers)
    schema.register(subparsers)
    return parser


def _report(error: str, detail: str, error_code: str) -> None:
    report = ErrorReport(error=error, detail=detail, error_code=error_code)
    sys.stderr.write(orjson.dumps(report.model_dump()).decode("utf-8") + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, stream=sys.stderr)

    # Exception handlers
    try:
        return args.func(args)
    except LabError as exc:
        logger.error(f"{exc.error}: {exc.detail}")
        _report(exc.error, exc.detail, exc.error_code)
        return exc.exit_code
    except ValidationError as exc:
        logger.error(f"Config validation error: {exc}")
        _report("Invalid configuration", str(exc), "VALIDATION_ERROR")
        return EXIT_CONFIG
    except orjson.JSONDecodeError as exc:
        logger.error(f"Malformed JSON input: {exc}")
        _report("Malformed JSON", str(exc), "MALFORMED_JSON")
        return EXIT_CONFIG
    except (FileNotFoundError, IsADirectoryError) as exc:
        logger.error(f"Input file error: {exc}")
        _report("Input file error", str(exc), "FILE_NOT_FOUND")
        return EXIT_CONFIG
    except ValueError as exc:
        logger.error(f"Invalid argument: {exc}")
        _report("Invalid argument", str(exc), "INVALID_ARGUMENT")
        return EXIT_CONFIG


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
