from __future__ import annotations

import argparse
import logging

from app.commands.common import add_common_arguments, output_path, require_config
from app.repositories.artifacts import make_header, write_csv
from app.services.unbiasedness import asymptotic_mub_sweep, scaling_check, scaling_check_closed_form

logger = logging.getLogger(__name__)

DEFICIT_COLUMNS = ("t", "deficit", "window", "potential")
SCALING_COLUMNS = ("x", "y", "t", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_error", "method")


def register(subparsers) -> None:
    parser = subparsers.add_parser("deficit-sweep", help="flatness deficit of U(t) as t decreases")
    add_common_arguments(parser)
    parser.set_defaults(func=cmd_deficit_sweep)

    parser = subparsers.add_parser("scaling-check", help="both sides of the kernel scaling identity")
    add_common_arguments(parser)
    parser.set_defaults(func=cmd_scaling_check)


def cmd_deficit_sweep(args: argparse.Namespace) -> int:
    config = require_config(args)
    curve = asymptotic_mub_sweep(
        config.potential,
        config.grid,
        config.t_list,
        config.units,
        window=config.window,
        matched=config.matched,
    )
    header = make_header(config.model_dump(mode="json"), config.seed)
    write_csv(output_path(args, config), header, DEFICIT_COLUMNS, curve.rows())
    return 0


def cmd_scaling_check(args: argparse.Namespace) -> int:
    config = require_config(args)
    rows = []
    for t in config.t_list:
        for x, y in config.points:
            if config.method == "closed_form":
                result = scaling_check_closed_form(config.potential, x, y, t, config.units)
            else:
                result = scaling_check(config.potential, x, y, t, config.units, config.grid)
            rows.append(
                (x, y, t, result.lhs.real, result.lhs.imag, result.rhs.real, result.rhs.imag, result.rel_error,
                 "closed_form" if config.method == "closed_form" else "oracle")
            )
    logger.info("scaling check over %d rows", len(rows))
    header = make_header(config.model_dump(mode="json"), config.seed)
    write_csv(output_path(args, config), header, SCALING_COLUMNS, rows)
    return 0
