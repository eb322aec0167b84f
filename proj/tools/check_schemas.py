#!/usr/bin/env python3
"""Validate every fixture file against the schema for its kind."""

import json
import sys
from pathlib import Path

import jsonschema


def schema_for(path: Path) -> str:
    name = path.stem
    if name in ("topology", "forecast", "config"):
        return name
    return "scenario"


def main() -> int:
    if len(sys.argv) != 3:
        print("usage: check_schemas.py SCHEMA_DIR FIXTURE_DIR", file=sys.stderr)
        return 2
    schema_dir, fixture_dir = Path(sys.argv[1]), Path(sys.argv[2])
    schemas = {}
    for p in schema_dir.glob("*.schema.json"):
        doc = json.loads(p.read_text())
        jsonschema.Draft202012Validator.check_schema(doc)
        schemas[p.name.removesuffix(".schema.json")] = jsonschema.Draft202012Validator(doc)

    failures = 0
    files = sorted(fixture_dir.rglob("*.json"))
    for path in files:
        validator = schemas[schema_for(path)]
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        for e in errors:
            loc = "/".join(str(p) for p in e.absolute_path)
            print(f"{path.relative_to(fixture_dir)}: {loc}: {e.message}")
        failures += bool(errors)
    print(f"{len(files) - failures}/{len(files)} fixture files valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
