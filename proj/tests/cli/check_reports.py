#!/usr/bin/env python3
"""Runs the defekt CLI on the test corpus, checks exit codes and validates
every report against the JSON schema."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

defekt, schema_path, data = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
schema = json.loads(schema_path.read_text())
validator = jsonschema.Draft202012Validator(schema)

# (arguments, expected exit code, check on the report)
CASES = [
    (["groebner", "--expr", "x0^2-x1*x2; x1^2-x0*x2"], 0, lambda r: r["size"] == 2),
    (["groebner", "--expr", "x1^2+x2^2-1; x1-x2", "--order", "lex"], 0, lambda r: r["quotient_dimension"] == 2),
    (["classify", "--poly", data / "a4_surface.txt", "--field", "F7"], 0, lambda r: r["locus"]["dimension"] == "zero"),
    (["classify", "--expr", "x1^2+x2^3", "--point", "0,0"], 0, lambda r: r["class"]["tag"] == "A_2"),
    (["classify", "--poly", data / "nine_node_quartic.txt", "--point", "0,0,1,1,1"], 0,
     lambda r: r["class"]["tag"] == "A_1"),
    (["tjurina", "--poly", data / "cone3.txt", "--vars", "4"], 0, lambda r: r["tau"] == 8 and r["chart"] == 0),
    (["defect", "--poly", data / "nine_node_quartic.txt", "--field", "F7"], 0,
     lambda r: r["defect"]["delta"] == 1 and r["defect"]["witness"]["rank"] == 8),
    (["defect", "--poly", data / "node_cubic.txt", "--profile"], 0,
     lambda r: r["defect"]["delta"] == 0 and len(r["obstruction_profile"]) == 4),
    (["defect", "--poly", data / "cone3.txt", "--vars", "4"], 0, lambda r: r["defect"]["method"] == "cone-formula"),
    (["certify", "--poly", data / "node_cubic.txt"], 0, lambda r: r["no_defect"]),
    (["certify", "--poly", data / "cone_cubic.txt", "--vars", "4"], 2, lambda r: r["kind"] == "Inconclusive"),
    (["certify", "--poly", data / "fermat_quartic_threefold.txt", "--field", "F3", "--factorial"], 0,
     lambda r: r["kind"] == "Factorial-Nodal"),
    (["betti", "--smooth", "3", "3"], 0, lambda r: r["h"][2] == 7),
    (["betti", "--singular", "4", "1"], 0, lambda r: r["h"][4] == 2 and r["h"][3] is None),
    (["cone", "--poly", data / "cone3.txt"], 0, lambda r: r["defect"]["delta"] == 2),
    (["census", "quad", "--n", "3", "--q", "3", "--brute"], 0, lambda r: r["count"] == r["formula"]),
    (["census", "jets", "--n", "2", "--r", "3"], 0, lambda r: r["probability"] == "728/729"),
    (["census", "density", "--n", "2", "--q", "3", "--d", "3", "--exhaustive"], 0,
     lambda r: r["fractions"]["smooth"]["exact"] == "416/729"),
    (["census", "density", "--n", "3", "--q", "3", "--d", "3", "--samples", "50", "--seed", "7"], 0,
     lambda r: r["samples"] == 50 and r["seed"] == 7),
]

# (arguments, expected exit code, expected error name)
ERRORS = [
    (["census", "density", "--q", "3"], 64, "UsageError"),
    (["frobnicate"], 64, "UsageError"),
    (["tjurina", "--expr", "x0^3+x1^3+x0*x1^2+x2^2*x0", "--field", "F6"], 1, None),
    (["classify", "--expr", "x1^2+x2^2", "--point", "1,0"], 1, "PointNotOnHypersurface"),
    (["cone", "--expr", "x0^3+x1^3+x2^3", "--field", "F5"], 1, "InvalidField"),
]

failures = 0


def run(args):
    return subprocess.run([defekt] + [str(a) for a in args], capture_output=True, text=True, timeout=600)


for args, code, check in CASES:
    label = " ".join(str(a) for a in args)
    p = run(args)
    try:
        doc = json.loads(p.stdout)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        ok = p.returncode == code and not errors and check(doc["report"])
        detail = "; ".join(e.message for e in errors[:3])
    except Exception as e:  # noqa: BLE001
        ok, detail = False, repr(e)
    if not ok:
        failures += 1
        print(f"FAIL {label}: exit {p.returncode} (want {code}) {detail}\n{p.stderr}")
    else:
        print(f"ok   {label}")

for args, code, name in ERRORS:
    label = " ".join(str(a) for a in args)
    p = run(args)
    try:
        err = json.loads(p.stderr.strip().splitlines()[-1])
        ok = p.returncode == code and err["exit_code"] == code and (name is None or err["error"] == name)
    except Exception as e:  # noqa: BLE001
        ok = False
    if not ok:
        failures += 1
        print(f"FAIL {label}: exit {p.returncode} (want {code}) stderr={p.stderr!r}")
    else:
        print(f"ok   {label}")

sys.exit(1 if failures else 0)
