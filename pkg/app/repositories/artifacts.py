"""
Reading config/matrix/field files and writing CSV/JSON artifacts.

Every artifact starts with a header recording tool, version, config hash and
seed. Nothing time-dependent is written, so identical inputs give identical bytes.
"""
from __future__ import annotations

import csv
import io
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, TextIO

import orjson

from app.core.config import settings
from app.schemas.common import ArtifactHeader
from app.schemas.field import FieldPair
from app.schemas.matrix import MatrixPayload
from app.schemas.run_config import RunConfig
from app.utils.formatting import config_hash, format_cell

TOOL_NAME = "mublab"


def read_json(path: str | Path) -> Any:
    return orjson.loads(Path(path).read_bytes())


def load_run_config(path: str | Path) -> RunConfig:
    return RunConfig.model_validate(read_json(path))


def load_matrix(path: str | Path) -> MatrixPayload:
    return MatrixPayload.model_validate(read_json(path))


def load_field_pair(path: str | Path) -> FieldPair:
    return FieldPair.model_validate(read_json(path))


def make_header(config_payload: Any, seed: Optional[int] = None) -> ArtifactHeader:
    return ArtifactHeader(
        tool=TOOL_NAME,
        version=settings.APP_VERSION,
        config_hash=config_hash(config_payload),
        seed=seed,
    )


def header_line(header: ArtifactHeader) -> str:
    seed = "none" if header.seed is None else str(header.seed)
    return f"# tool={header.tool} version={header.version} config_sha256={header.config_hash} seed={seed}\n"


def render_csv(
    header: ArtifactHeader,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    footer: Sequence[str] = (),
) -> str:
    buffer = io.StringIO()
    buffer.write(header_line(header))
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(value) for value in row])
    for line in footer:
        buffer.write(f"# {line}\n")
    return buffer.getvalue()


def render_json(header: ArtifactHeader, payload: dict) -> bytes:
    document = {"header": header.model_dump(), **payload}
    options = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY
    return orjson.dumps(document, option=options) + b"\n"


def write_text(content: str, output: Optional[str | Path], stream: Optional[TextIO] = None) -> None:
    """Write to `output`, or to `stream` (stdout) when no path is given."""
    if output is None:
        target = stream or sys.stdout
        target.write(content)
        target.flush()
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(content.encode("utf-8"))


def write_csv(
    output: Optional[str | Path],
    header: ArtifactHeader,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    footer: Sequence[str] = (),
) -> None:
    write_text(render_csv(header, columns, rows, footer), output)


def write_json(output: Optional[str | Path], header: ArtifactHeader, payload: dict) -> None:
    write_text(render_json(header, payload).decode("utf-8"), output)
