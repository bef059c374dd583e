#!/usr/bin/env python3
"""Runs the seqfmeca tool on the fixtures and validates every JSON document
it writes against the published schemas."""

import csv
import io
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    tool, fixtures, schemas, config = (pathlib.Path(a) for a in sys.argv[1:5])
    schema = {
        p.name.removesuffix(".schema.json"): json.loads(p.read_text(encoding="utf-8"))
        for p in schemas.glob("*.schema.json")
    }
    for s in schema.values():
        jsonschema.Draft7Validator.check_schema(s)

    failures = []

    def run(*args, status=0):
        r = subprocess.run([str(tool), *map(str, args)], capture_output=True, text=True)
        if r.returncode != status:
            failures.append(f"{' '.join(map(str, args))}: exit {r.returncode}\n{r.stderr}")
        return r.stdout

    def validate(kind, text, label):
        try:
            doc = json.loads(text)
            jsonschema.validate(doc, schema[kind])
            if doc["schema"] != f"seqfmeca.{kind}/1":
                failures.append(f"{label}: schema field is {doc['schema']}")
        except (ValueError, jsonschema.ValidationError) as e:
            failures.append(f"{label}: {e}")

    ter = fixtures / "ter.rau"
    with tempfile.TemporaryDirectory() as tmp:
        ws = pathlib.Path(tmp) / "ws.json"
        run("worksheet", "init", ter, "-o", ws)
        validate("worksheet", ws.read_text(encoding="utf-8"), "blank worksheet")
        run("worksheet", "merge", ws, fixtures / "ter_annotations.json")
        validate("worksheet", ws.read_text(encoding="utf-8"), "merged worksheet")

        validate("annotations", (fixtures / "ter_annotations.json").read_text(encoding="utf-8"),
                 "annotation fixture")
        validate("matrix", (config / "default_matrix.json").read_text(encoding="utf-8"),
                 "default matrix")
        validate("matrix", (fixtures / "nonmonotone_matrix.json").read_text(encoding="utf-8"),
                 "non-monotone matrix fixture")

        for model in ("ter.rau", "linear3.rau", "examination.rau"):
            validate("candidates", run("enumerate", fixtures / model, "--json"), f"candidates {model}")
            validate("diagnostics", run("check", fixtures / model, "--json"), f"check {model}")
        validate("diagnostics", run("worksheet", "check", ter, ws, "--json"), "worksheet check")

        bad = pathlib.Path(tmp) / "bad.rau"
        bad.write_text("system S {\n  actor A kind robot;\n}\n", encoding="utf-8")
        validate("diagnostics", run("check", bad, "--json", status=1), "syntax errors")

        builtin = run("report", ws, "--format", "json")
        validate("report", builtin, "report")
        shipped = run("report", ws, "--format", "json", "--matrix", config / "default_matrix.json")
        if builtin != shipped:
            failures.append("config/default_matrix.json differs from the built-in default")
        validate("report", run("report", ws, "--format", "json", "--top", "2"), "report --top")
        validate("summary", run("report", ws, "--summary", "--format", "json"), "summary")

        rows = list(csv.reader(io.StringIO(run("report", ws, "--format", "csv", "--include-waived"),
                                           newline="")))
        worksheet_rows = json.loads(ws.read_text(encoding="utf-8"))["rows"]
        if len(rows) != len(worksheet_rows) + 1 or len({len(r) for r in rows}) != 1:
            failures.append(f"csv: {len(rows)} records for {len(worksheet_rows)} rows")

    for f in failures:
        print("FAIL", f)
    print(f"{len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
