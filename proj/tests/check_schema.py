#!/usr/bin/env python3
"""Validate the CLI's JSON output against docs/report.schema.json.

Usage: check_schema.py <cli-binary> <schema-file>
"""
import json
import subprocess
import sys

import jsonschema


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as fh:
        schema = json.load(fh)
    validator = jsonschema.Draft7Validator(schema)

    invocations = [
        ["demo", "--k", "3", "--p", "2", "--rounds", "25", "--seed", "42"],
        ["demo", "--k", "2", "--p", "3", "--rounds", "10", "--seed", "1",
         "--transport", "stream", "--audit"],
        ["verify", "--k", "3", "--p", "2", "--l", "1", "--checks", "all"],
        ["verify", "--k", "2", "--p", "2", "--scheme", "fixtures/naive.scheme"],
        ["search", "--model", "linear", "--k", "2", "--p", "2",
         "--seed-dims", "0,1"],
        ["search", "--model", "linear", "--k", "3", "--p", "2",
         "--seed-dims", "2"],
        ["census"],
        ["metrics", "--k", "4", "--p", "5"],
    ]
    failures = 0
    for args in invocations:
        proc = subprocess.run(
            [cli, *args, "--format", "json"], capture_output=True, text=True
        )
        if proc.returncode not in (0, 1):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}\n{proc.stderr}")
            failures += 1
            continue
        try:
            doc = json.loads(proc.stdout)
        except json.JSONDecodeError as exc:
            print(f"FAIL {' '.join(args)}: output is not JSON ({exc})")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            print(f"FAIL {' '.join(args)}:")
            for err in errors[:5]:
                print(f"  {list(err.path)}: {err.message}")
            failures += 1
        else:
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
