"""Export the response-model JSON schemas shipped with the package.

Run ``python -m factorbounds.service.schema_export`` after changing the
models; the test suite asserts the shipped files stay in sync and that live
endpoint output validates against them.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import schemas

EXPORTED = {
    "census": schemas.CensusOut,
    "bound_sweep": schemas.BoundSweepOut,
    "newton": schemas.NewtonOut,
    "fuchs": schemas.FuchsOut,
    "operator": schemas.OperatorOut,
    "divmod": schemas.DivmodOut,
    "recurrence": schemas.RecurrenceOut,
    "expand": schemas.ExpandOut,
    "minimize": schemas.MinimizeOut,
    "error": schemas.ErrorOut,
}

DEFAULT_DIR = Path(__file__).resolve().parent.parent / "schemas"


def generate() -> dict[str, dict]:
    return {name: model.model_json_schema() for name, model in EXPORTED.items()}


def write_schemas(target: Path = DEFAULT_DIR) -> None:
    target.mkdir(parents=True, exist_ok=True)
    for name, schema in generate().items():
        path = target / f"{name}.json"
        path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    write_schemas()
    print(f"wrote {len(EXPORTED)} schemas to {DEFAULT_DIR}")
