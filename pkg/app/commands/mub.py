from __future__ import annotations

import argparse
import logging

import numpy as np

from app.commands.common import add_common_arguments, argument_payload
from app.core.errors import ConfigurationError
from app.repositories.artifacts import load_matrix, make_header, read_json, write_csv, write_json
from app.services.mub_finite import DEFAULT_MUB_TOL, insertion_identity, matrix_report, random_basis, random_state

logger = logging.getLogger(__name__)

INSERTION_COLUMNS = ("dim", "n_bases", "chained", "direct", "abs_error")


def register(subparsers) -> None:
    parser = subparsers.add_parser("mub-check", help="unitarity, flatness and MUB verdict of a matrix file")
    parser.add_argument("matrix", help='JSON file {"dim": M, "re": [[...]], "im": [[...]]}')
    add_common_arguments(parser)
    parser.set_defaults(func=cmd_mub_check)

    parser = subparsers.add_parser("insertion", help="chained basis insertions versus the direct inner product")
    parser.add_argument("--dim", type=int, default=8)
    parser.add_argument("--bases", type=int, default=5)
    add_common_arguments(parser)
    parser.set_defaults(func=cmd_insertion)


def cmd_mub_check(args: argparse.Namespace) -> int:
    tol = DEFAULT_MUB_TOL if args.tol is None else args.tol
    payload = load_matrix(args.matrix)
    report = matrix_report(payload.to_array(), tol)
    report["tol"] = tol
    header = make_header({"command": args.command, "matrix": read_json(args.matrix), "tol": tol}, args.seed)
    write_json(args.output, header, report)
    return 0


def cmd_insertion(args: argparse.Namespace) -> int:
    if args.seed is None:
        raise ConfigurationError("'insertion' is randomized and needs --seed")
    if args.dim < 1 or args.bases < 0:
        raise ConfigurationError("--dim must be >= 1 and --bases >= 0")

    children = np.random.SeedSequence(args.seed).spawn(args.bases + 2)
    phi = random_state(args.dim, children[0])
    psi = random_state(args.dim, children[1])
    bases = [random_basis(args.dim, child) for child in children[2:]]

    chained = insertion_identity(phi, psi, bases)
    direct = insertion_identity(phi, psi, [])
    error = abs(chained - direct)
    logger.info("insertion dim=%d bases=%d error=%.3e", args.dim, args.bases, error)

    header = make_header(argument_payload(args, "dim", "bases", "seed"), args.seed)
    write_csv(args.output, header, INSERTION_COLUMNS, [(args.dim, args.bases, chained, direct, error)])
    return 0
