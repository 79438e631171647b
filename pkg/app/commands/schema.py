from __future__ import annotations

import argparse

import orjson

from app.repositories.artifacts import write_text
from app.schemas.run_config import RunConfig


def register(subparsers) -> None:
    parser = subparsers.add_parser("schema", help="print the RunConfig JSON schema")
    parser.add_argument("--output", default=argparse.SUPPRESS, help="schema path (stdout when omitted)")
    parser.set_defaults(func=cmd_schema)


def cmd_schema(args: argparse.Namespace) -> int:
    schema = orjson.dumps(RunConfig.model_json_schema(), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS)
    write_text(schema.decode("utf-8") + "\n", args.output)
    return 0
