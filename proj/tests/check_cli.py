#!/usr/bin/env python3
"""End-to-end CLI contract: exit codes, JSON fidelity, and the disk cache.

Usage: check_cli.py <cli-binary>
"""
import json
import pathlib
import subprocess
import sys
import tempfile

FAILURES = 0


def run(binary: str, *args: str) -> subprocess.CompletedProcess:
    return subprocess.run([binary, *args], capture_output=True, text=True)


def expect(label: str, ok: bool, detail: str = "") -> None:
    global FAILURES
    if ok:
        print(f"ok: {label}")
    else:
        FAILURES += 1
        print(f"FAIL: {label}" + (f" ({detail})" if detail else ""))


def check_exit_codes(binary: str) -> None:
    expect("successful run exits 0", run(binary, "values", "--p", "3", "--n-max", "2").returncode == 0)
    expect("verify exits 0", run(binary, "verify", "--p", "3", "--n-max", "12").returncode == 0)
    expect("--help exits 0", run(binary, "--help").returncode == 0)
    expect("unknown subcommand exits 2", run(binary, "bogus").returncode == 2)
    expect("missing subcommand exits 2", run(binary).returncode == 2)
    expect("malformed flag value exits 2",
           run(binary, "values", "--p", "notanumber").returncode == 2)
    expect("unknown flag exits 2", run(binary, "values", "--bogus", "1").returncode == 2)
    expect("invalid format exits 2",
           run(binary, "values", "--format", "xml").returncode == 2)
    expect("composite p exits 2", run(binary, "values", "--p", "4").returncode == 2)
    expect("oversized j-max exits 2",
           run(binary, "congruence", "--p", "3", "--j-max", "40").returncode == 2)


def check_json_fidelity(binary: str) -> None:
    out = run(binary, "values", "--p", "3", "--n-max", "8", "--format", "json")
    expect("json run exits 0", out.returncode == 0)
    doc = json.loads(out.stdout)
    expect("command recorded", doc["command"] == "values")
    expect("status is pass", doc["status"] == "pass")
    rows = doc["rows"]
    expect("eight rows", len(rows) == 8)
    expect("exact rational n=2", rows[1]["value"] == "4/3")
    expect("exact rational n=8", rows[7]["value"] == "10595003836/3")
    expect("denominator string", rows[7]["denominator"] == "3")
    expect("numerator factorization rendered",
           rows[5]["numerator_factorization"]["rendered"] == "2^2·7·43·1171")


def stripped(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "timestamp"}


def check_cache(binary: str) -> None:
    with tempfile.TemporaryDirectory(prefix="moorel-cli-") as tmp:
        cache = pathlib.Path(tmp) / "cache.json"
        args = ["values", "--p", "3", "--n-max", "8", "--cache-path", str(cache),
                "--format", "json"]
        cold = run(binary, *args)
        expect("cold-cache run exits 0", cold.returncode == 0)
        expect("cache file written", cache.exists())
        keys = json.loads(cache.read_text())
        expect("cache keyed by p:logvalue:n", "3:2:2" in keys)
        expect("cache stores coefficient strings", keys["3:2:2"] == ["8/3", "4/3"])

        warm = run(binary, *args)
        expect("warm-cache run exits 0", warm.returncode == 0)
        expect("warm output identical",
               stripped(json.loads(cold.stdout)) == stripped(json.loads(warm.stdout)))

        cache.write_text("{ not even json")
        broken = run(binary, *args)
        expect("corrupt cache still exits 0", broken.returncode == 0)
        expect("corrupt cache leaves results unchanged",
               stripped(json.loads(cold.stdout)) == stripped(json.loads(broken.stdout)))
        expect("corrupt cache rewritten as valid JSON",
               isinstance(json.loads(cache.read_text()), dict))
        expect("no temp file left behind", not (pathlib.Path(tmp) / "cache.json.tmp").exists())


def main() -> int:
    binary = sys.argv[1]
    check_exit_codes(binary)
    check_json_fidelity(binary)
    check_cache(binary)
    print("all CLI checks passed" if FAILURES == 0 else f"{FAILURES} CLI check(s) failed")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
