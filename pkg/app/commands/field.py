from __future__ import annotations

import argparse
import logging

from app.commands.common import add_common_arguments, argument_payload
from app.core.errors import ConfigurationError
from app.repositories.artifacts import load_field_pair, make_header, read_json, write_csv, write_json
from app.schemas.potential import parse_potential
from app.services.field_lattice import (
    DEFAULT_GRAD_COEFF,
    DEFAULT_MASS_COEFF,
    field_transition_phase,
    rescale_lagrangian_4form,
)
from app.utils.formatting import format_float, mode_label

logger = logging.getLogger(__name__)

MODE_COLUMNS = ("mode_index", "omega", "contribution")


def register(subparsers) -> None:
    parser = subparsers.add_parser("field-phase", help="per-mode free-field transition phase")
    parser.add_argument("pair", help='JSON file {"alpha": FieldConfig, "beta": FieldConfig}')
    parser.add_argument("--time", type=float, required=True)
    add_common_arguments(parser)
    parser.set_defaults(func=cmd_field_phase)

    parser = subparsers.add_parser("rescale-4form", help="coefficients of the rescaled lagrangian 4-form")
    parser.add_argument("--s", type=float, required=True)
    parser.add_argument("--grad-coeff", dest="grad_coeff", type=float, default=DEFAULT_GRAD_COEFF)
    parser.add_argument("--mass-coeff", dest="mass_coeff", type=float, default=DEFAULT_MASS_COEFF)
    parser.add_argument("--potential", default='{"kind": "free"}', help="PotentialSpec as JSON")
    add_common_arguments(parser)
    parser.set_defaults(func=cmd_rescale_4form)


def cmd_field_phase(args: argparse.Namespace) -> int:
    pair = load_field_pair(args.pair)
    breakdown = field_transition_phase(pair.alpha, pair.beta, args.time, with_short_time=True)
    rows = [(mode_label(m.mode_index), m.omega, m.contribution) for m in breakdown.modes]
    footer = [f"total={format_float(breakdown.total_phase)}, short_time={format_float(breakdown.short_time_phase)}"]
    logger.info("field phase t=%g total=%g over %d modes", args.time, breakdown.total_phase, len(rows))
    header = make_header({"command": args.command, "pair": read_json(args.pair), "time": args.time}, args.seed)
    write_csv(args.output, header, MODE_COLUMNS, rows, footer)
    return 0


def cmd_rescale_4form(args: argparse.Namespace) -> int:
    if not args.s > 0:
        raise ConfigurationError("--s must be positive")
    potential = parse_potential(args.potential)
    coefficients = rescale_lagrangian_4form(args.s, args.grad_coeff, args.mass_coeff, potential)
    report = {
        "s": args.s,
        "kinetic": coefficients.kinetic,
        "gradient": coefficients.gradient,
        "mass": coefficients.mass,
        "potential": coefficients.potential.model_dump(),
    }
    payload = {
        **argument_payload(args, "s", "grad_coeff", "mass_coeff"),
        "potential": potential.model_dump(mode="json"),
    }
    write_json(args.output, make_header(payload, args.seed), report)
    return 0
