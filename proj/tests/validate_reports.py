"""Validates sqrteuler JSON output against schema/report.schema.json."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def run(exe, *args):
    proc = subprocess.run([exe, *args], capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout


def main():
    exe, root = sys.argv[1], pathlib.Path(sys.argv[2])
    schema = json.loads((root / "schema" / "report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    jsonschema.Draft202012Validator.check_schema(schema)

    outputs = []
    for script in sorted((root / "corpus").glob("*.se")):
        code, out = run(exe, "run", str(script), "--format", "json")
        outputs.append((script.name, code, out))
    outputs.append(("corpus check",) + run(exe, "check", str(root / "corpus"), "--format", "json"))

    extra = {
        "failing": "space Y = P(4)\north F = hyperbolic(O(1)+O(2))\ncheck sqrt_euler(F) == 3H^2\n",
        "undeclared": "bundle V = O(1) on Y\n",
        "syntax": "space Y = P(4\n",
        "empty": "",
    }
    expected_codes = {"failing": 1, "undeclared": 2, "syntax": 2, "empty": 0}
    with tempfile.TemporaryDirectory() as tmp:
        for name, text in extra.items():
            path = pathlib.Path(tmp) / (name + ".se")
            path.write_text(text)
            code, out = run(exe, "run", str(path), "--format", "json")
            if code != expected_codes[name]:
                print(f"{name}: exit {code}, expected {expected_codes[name]}")
                return 1
            outputs.append((name, code, out))
        outputs.append(("mixed check",) + run(exe, "check", tmp, "--format", "json"))

    failures = 0
    for name, code, out in outputs:
        try:
            validator.validate(json.loads(out))
        except (json.JSONDecodeError, jsonschema.ValidationError) as err:
            failures += 1
            print(f"{name}: invalid report: {err}")
        else:
            print(f"{name}: valid (exit {code})")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
