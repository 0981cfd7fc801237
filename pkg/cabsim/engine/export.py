import csv
import io
import json
import math
from pathlib import Path
from typing import Any
from typing import Iterable
from typing import Tuple
from typing import Union

from filelock import FileLock

from cabsim.exceptions import ExportError
from cabsim.helpers import setup_logger
from cabsim.models import AggregateResult

logger = setup_logger("[Export]")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if value is None:
        return ""
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(float(value))
    return str(value)


def to_csv(result: AggregateResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(result.header)
    for row in result.rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def to_json(result: AggregateResult) -> str:
    return json.dumps(result.to_dict(), sort_keys=True, indent=2) + "\n"


def _write_atomic(text: str, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_file = path.with_name(path.name + ".part")
    with FileLock(str(path) + ".lock"):
        temp_file.write_text(text, encoding="utf-8")
        temp_file.replace(path)


def export(result: AggregateResult, fmt: str, path: Union[str, Path]) -> Path:
    """Write an aggregate as ``csv`` (header plus rows) or ``json`` (everything).

    Identical aggregates give byte-identical files; run metadata such as wall
    time is never written.
    """
    if fmt == "csv":
        text = to_csv(result)
    elif fmt == "json":
        text = to_json(result)
    else:
        raise ExportError(f"Unknown export format '{fmt}'")
    output = Path(path)
    try:
        _write_atomic(text, output)
    except OSError as e:
        raise ExportError(f"Cannot write {output}: {e}") from e
    logger.info(f"Wrote {result.kind} {fmt} to {output}")
    return output


def load_result(path: Union[str, Path]) -> AggregateResult:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ExportError(f"Cannot read result {path}: {e}") from e
    return AggregateResult.from_dict(payload)


def write_partial(items: Iterable[Tuple[int, Any]], path: Union[str, Path]) -> None:
    """One JSON line ``{"rep": r, "result": ...}`` per completed replication."""
    lines = [
        json.dumps({"rep": rep, "result": result}, sort_keys=True)
        for rep, result in items
    ]
    try:
        _write_atomic("\n".join(lines) + "\n", Path(path))
    except OSError as e:
        raise ExportError(f"Cannot write partial results to {path}: {e}") from e
