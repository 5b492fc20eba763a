#!/usr/bin/env python3
"""End-to-end checks of the bohm-radiance CLI.

Runs every subcommand, validates each JSON output against schemas/,
verifies manifest checksums, checks byte-identical reruns and exit codes.

usage: cli_check.py <bohm-radiance> <schemas-dir> <work-dir>
"""
import glob
import hashlib
import json
import os
import shutil
import subprocess
import sys

import jsonschema

FAST = ["--n", "200", "--y0-list", "7.15e-5,1.5e-4"]
SUBCOMMANDS = {
    "quantum-potential": [],
    "valley-report": [],
    "simulate-trajectories": FAST,
    "spectrum": [],
    "table1": [],
    "detectability": [],
    "compare": [],
}

failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def sha256(path):
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def load_schemas(d):
    out = {}
    for f in glob.glob(os.path.join(d, "*.schema.json")):
        with open(f) as fh:
            s = json.load(fh)
        jsonschema.Draft202012Validator.check_schema(s)
        out[s["$id"].split("/")[1]] = s
    return out


def run(exe, args):
    return subprocess.run([exe] + args, capture_output=True, text=True)


def validate_dir(d, schemas):
    for f in sorted(glob.glob(os.path.join(d, "*.json"))):
        with open(f) as fh:
            doc = json.load(fh)
        name = "config" if os.path.basename(f) == "config.json" else doc.get("schema", "?").split("/")[0]
        try:
            jsonschema.validate(doc, schemas[name], format_checker=jsonschema.FormatChecker())
            check(True, f"schema {os.path.relpath(f)}")
        except (jsonschema.ValidationError, KeyError) as e:
            check(False, f"schema {os.path.relpath(f)}: {str(e).splitlines()[0]}")


def manifest_ok(d):
    with open(os.path.join(d, "manifest.json")) as fh:
        m = json.load(fh)
    good = m["complete"] and len(m["files"]) > 0
    for entry in m["files"]:
        p = os.path.join(d, entry["path"])
        good = good and os.path.exists(p) and sha256(p) == entry["sha256"] and os.path.getsize(p) == entry["bytes"]
    return m, good


def main():
    exe, schema_dir, work = sys.argv[1:4]
    schemas = load_schemas(schema_dir)
    check(len(schemas) == 9, "nine schemas load and are well-formed")
    shutil.rmtree(work, ignore_errors=True)
    os.makedirs(work)

    for sub, extra in SUBCOMMANDS.items():
        digests = []
        for rep in ("a", "b"):
            out = os.path.join(work, f"{sub}-{rep}")
            r = run(exe, [sub, "--out", out] + extra)
            check(r.returncode == 0, f"{sub} run {rep} exits 0 ({r.returncode}) {r.stderr.strip()[:200]}")
            if r.returncode != 0:
                break
            m, good = manifest_ok(out)
            check(good, f"{sub} run {rep} manifest complete with matching checksums")
            check(m["subcommand"] == sub, f"{sub} manifest names its subcommand")
            if rep == "a":
                validate_dir(out, schemas)
            digests.append({e["path"]: e["sha256"] for e in m["files"] if e["path"] != "config.json"})
        if len(digests) == 2:
            check(digests[0] == digests[1], f"{sub} reruns are byte-identical")

    r = run(exe, ["table1", "--constants", "modern", "--out", os.path.join(work, "modern")])
    check(r.returncode == 0, "table1 with modern constants exits 0")
    validate_dir(os.path.join(work, "modern"), schemas)

    r = run(exe, ["spectrum", "--mode", "simulation", "--out", os.path.join(work, "simulation")])
    check(r.returncode == 0, "spectrum in simulation mode exits 0")
    validate_dir(os.path.join(work, "simulation"), schemas)

    def config_case(name, text, code):
        path = os.path.join(work, name + ".json")
        with open(path, "w") as fh:
            fh.write(text)
        out = os.path.join(work, name)
        r = run(exe, ["table1", "--config", path, "--out", out])
        check(r.returncode == code, f"{name} exits {code} (got {r.returncode})")
        return r

    config_case("parse_error", '{"mode": "reproduction",\n  "constants": }', 2)
    r = config_case("unknown_key", '{"experiment": {"slit_width": 1}}', 5)
    check("experiment.slit_width" in r.stderr, "unknown key error names the field")
    r = config_case("too_fast", '{"experiment": {"kinetic_energy_eV": 200000}}', 6)
    check("kinetic_energy_eV" in r.stderr, "physics error names the field")
    r = run(exe, ["table1", "--config", os.path.join(work, "missing.json"), "--out", os.path.join(work, "missing")])
    check(r.returncode == 4, f"unreadable config exits 4 (got {r.returncode})")
    r = run(exe, ["table1", "--no-such-flag"])
    check(r.returncode == 2, f"bad command line exits 2 (got {r.returncode})")

    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
