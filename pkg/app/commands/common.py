from __future__ import annotations

import argparse
from typing import Any, Optional

from app.core.errors import ConfigurationError
from app.repositories.artifacts import load_run_config
from app.schemas.run_config import RunConfig


def add_common_arguments(parser: argparse.ArgumentParser, default: Any = argparse.SUPPRESS) -> None:
    """
    Shared flags. Subcommands register them with SUPPRESS so a value given before
    the subcommand name survives; the top-level parser registers them with None.
    """
    parser.add_argument("--config", help="path to a JSON RunConfig file", default=default)
    parser.add_argument("--output", help="artifact path (stdout when omitted)", default=default)
    parser.add_argument("--seed", type=int, help="64-bit seed for randomized commands", default=default)
    parser.add_argument("--window", type=float, help="central window fraction in (0, 1]", default=default)
    parser.add_argument("--tol", type=float, help="acceptance tolerance", default=default)


def require_config(args: argparse.Namespace) -> RunConfig:
    if not args.config:
        raise ConfigurationError(f"'{args.command}' needs --config <path>")
    config = load_run_config(args.config)
    if args.window is not None:
        config = RunConfig.model_validate({**config.model_dump(), "window": args.window})
    if args.seed is not None:
        config = RunConfig.model_validate({**config.model_dump(), "seed": args.seed})
    return config


def output_path(args: argparse.Namespace, config: Optional[RunConfig] = None) -> Optional[str]:
    if args.output:
        return args.output
    return config.output_path if config is not None else None


def argument_payload(args: argparse.Namespace, *names: str) -> dict[str, Any]:
    """Command arguments that determine the output, for the header's config hash."""
    return {"command": args.command, **{name: getattr(args, name) for name in names}}
