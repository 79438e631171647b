from __future__ import annotations

import argparse
import logging

from app.commands.common import add_common_arguments, argument_payload
from app.core.errors import ConfigurationError
from app.repositories.artifacts import make_header, write_csv
from app.services.unbiasedness import DEFAULT_RICCATI_T0, riccati_solve

logger = logging.getLogger(__name__)

RICCATI_COLUMNS = ("t", "R", "S", "P")


def register(subparsers) -> None:
    parser = subparsers.add_parser("riccati", help="integrate the R, S, P system for V = -k1 x^2 - k2 x - k3")
    parser.add_argument("--k1", type=float, default=0.0)
    parser.add_argument("--k2", type=float, default=0.0)
    parser.add_argument("--k3", type=float, default=0.0)
    parser.add_argument("--t0", type=float, default=DEFAULT_RICCATI_T0)
    parser.add_argument("--t-end", dest="t_end", type=float, default=1.0)
    parser.add_argument("--steps", type=int, default=10_000)
    parser.add_argument("--source", type=float, default=0.0, help="source point y of the kernel column")
    parser.add_argument("--stride", type=int, default=1, help="write every stride-th sample")
    add_common_arguments(parser)
    parser.set_defaults(func=cmd_riccati)


def cmd_riccati(args: argparse.Namespace) -> int:
    if args.stride < 1:
        raise ConfigurationError("--stride must be >= 1")
    state = riccati_solve(
        args.k1, args.k2, args.k3, t0=args.t0, t_end=args.t_end, steps=args.steps, source=args.source
    )
    rows = [
        (state.times[i], state.R[i], state.S[i], state.P[i])
        for i in range(0, len(state.times), args.stride)
    ]
    logger.info("riccati solved over [%g, %g] in %d steps", args.t0, args.t_end, args.steps)
    payload = argument_payload(args, "k1", "k2", "k3", "t0", "t_end", "steps", "source", "stride")
    write_csv(args.output, make_header(payload, args.seed), RICCATI_COLUMNS, rows)
    return 0
