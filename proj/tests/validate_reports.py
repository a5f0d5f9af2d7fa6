"""Runs the CLI report commands and validates their JSON against the schema."""
import json
import subprocess
import sys

import jsonschema


def main(tool, schema_path):
    with open(schema_path) as f:
        schema = json.load(f)
    runs = [
        ["verify", "--grid-points", "50"],
        ["certify", "--grid-points", "10"],
        ["certify", "--grid-points", "10", "--sigma-N", "50"],
    ]
    for args in runs:
        proc = subprocess.run([tool, *args], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print("exit", proc.returncode, args, proc.stderr)
            return 1
        jsonschema.validate(json.loads(proc.stdout), schema)
        print("valid:", " ".join(args))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
