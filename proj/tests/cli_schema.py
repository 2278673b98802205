"""Validates every CLI command's JSON output against the published schemas."""

import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def run(cli, *args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
    return proc.returncode, json.loads(proc.stdout)


def main():
    cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values()
    )
    registry = registry.with_resources(
        (name, Resource.from_contents(s)) for name, s in schemas.items()
    )

    def validator(name):
        return Draft202012Validator(schemas[name], registry=registry)

    record = validator("record.schema.json")
    suite = validator("suite.schema.json")
    catalog = validator("catalog.schema.json")
    errors = []

    code, listing = run(cli, "catalog")
    errors += [f"catalog: {e.message}" for e in catalog.iter_errors(listing)]
    if code != 0:
        errors.append(f"catalog exited {code}")

    for entry in listing:
        if entry["tier"] == "extended":
            continue
        for cmd in ("tensor", "schur"):
            _, out = run(cli, cmd, entry["spec"])
            errors += [f"{cmd} {entry['spec']}: {e.message}" for e in record.iter_errors(out)]

    for spec in ("S3", "D10", "E1_5"):
        _, out = run(cli, "tensor", spec, "--max-cosets", "100000")
        errors += [f"tensor {spec}: {e.message}" for e in record.iter_errors(out)]

    code, out = run(cli, "verify")
    errors += [f"verify: {e.message}" for e in suite.iter_errors(out)]
    if code != 0:
        errors.append(f"verify exited {code}")
    code, out = run(cli, "verify", "--p", "3", "--abelian-only")
    errors += [f"verify --p 3: {e.message}" for e in suite.iter_errors(out)]

    for e in errors:
        print(e)
    print(f"{len(errors)} schema violations")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
