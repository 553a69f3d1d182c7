#!/usr/bin/env python3
"""Runs floercalc --json over the fixture corpus and validates every report against the schema."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

binary, root = sys.argv[1], Path(sys.argv[2])
fx = root / "fixtures"
schema = json.loads((root / "schemas" / "floercalc.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

# (arguments, expected exit code)
runs = [
    (["cone", "verify", "--seed", "5", "--trials", "10", "--max-dim", "8"], 0),
    (["diagram", "homology", fx / "diagrams/s3_three_point.json"], 0),
    (["diagram", "homology", fx / "diagrams/s2s1_knot.json", "--flavor", "knot-hat"], 0),
    (["diagram", "homology", fx / "diagrams/s2s1_parallel.json", "--flavor", "knot-hat"], 0),
    (["diagram", "admissible", fx / "diagrams/s2s1_parallel.json"], 0),
    (["diagram", "twist", fx / "diagrams/twist_n3_base.json", "--delta", fx / "diagrams/twist_n3_delta.json"], 0),
    (["diagram", "twist", fx / "diagrams/twist_double_base.json", "--delta", fx / "diagrams/twist_double_delta.json"], 1),
    (["grid", "euler", fx / "grids/figure_eight6.json"], 0),
    (["grid", "hfk", fx / "grids/hopf4.json"], 1),
    (["knot", "alexander", fx / "knots/stevedore.json"], 0),
    (["knot", "signature", fx / "knots/cinquefoil.json", "--mirror"], 0),
    (["knot", "alternating-hfk", fx / "knots/twist_m6.json"], 0),
    (["legendrian", "vanishing", fx / "fronts/L_m4.front", "--hfk", fx / "hfk/Ebar_m4_paper.json"], 0),
    (["legendrian", "vanishing", fx / "fronts/unknot.front", "--hfk", fx / "hfk/unknot.json"], 0),
    (["surgery", "check", fx / "surgery/half_coefficient.json"], 0),
    (["surgery", "check", fx / "surgery/overtwisted_s3.json"], 0),
    (["grid", "hfk", fx / "fronts/unknot.front"], 2),
]
for g in sorted((fx / "grids").glob("*.json")):
    if "hopf" not in g.name and json.loads(g.read_text())["n"] <= 6:
        runs.append((["grid", "hfk", g], 0))
for f in sorted((fx / "fronts").rglob("*.front")):
    runs.append((["legendrian", "invariants", f], 0))
for s in sorted((fx / "surgery").glob("*.json")) + [fx / "convanish.json"]:
    runs.append((["surgery", "check", s], 0))

failures = 0
for args, expected in runs:
    args = [str(a) for a in args]
    p = subprocess.run([binary, *args, "--json"], capture_output=True, text=True)
    label = " ".join(args)
    if p.returncode != expected:
        print(f"FAIL exit {p.returncode} != {expected}: {label}\n{p.stderr}")
        failures += 1
        continue
    try:
        report = json.loads(p.stdout)
    except json.JSONDecodeError as e:
        print(f"FAIL not JSON: {label}: {e}")
        failures += 1
        continue
    errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
    for e in errors[:3]:
        print(f"FAIL schema: {label}: {'/'.join(map(str, e.path))}: {e.message[:200]}")
    failures += bool(errors)

# the per-command result schemas are really applied
probe = json.loads(subprocess.run([binary, "grid", "hfk", str(fx / "unknot2.json"), "--json"], capture_output=True, text=True).stdout)
del probe["result"]["total_rank"]
if validator.is_valid(probe):
    print("FAIL schema accepted a grid hfk result without total_rank")
    failures += 1

print(f"{len(runs) - failures}/{len(runs)} reports valid")
sys.exit(1 if failures else 0)
