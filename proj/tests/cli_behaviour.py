"""Exit codes, file inputs and the result cache of the tensorsq CLI."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile

failures = []


def run(cli, *args, env=None):
    return subprocess.run([cli, *args], capture_output=True, text=True, check=False, env=env)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def main():
    cli, data = sys.argv[1], pathlib.Path(sys.argv[2])

    p = run(cli, "tensor", "Q8", "--format", "json")
    rec = json.loads(p.stdout)
    expect(p.returncode == 0, "tensor Q8 exits 0")
    expect(rec["tensor"]["order"] == 64, "tensor Q8 has order 64")
    expect(rec["tensor"]["invariants"] == [4, 4, 2, 2], "tensor Q8 is [4,4,2,2]")

    p = run(cli, "tensor", "D8", "--format", "tsv")
    lines = p.stdout.strip().split("\n")
    header, row = lines[0].split("\t"), lines[1].split("\t")
    expect(len(lines) == 2 and len(header) == len(row), "tsv has one header and one row")
    expect(dict(zip(header, row))["invariants"] == "4,2,2,2", "tsv D8 invariants")

    p = run(cli, "schur", "E1_3")
    rec = json.loads(p.stdout)
    expect(rec["multiplier_order"] == 9 and rec["nabla_order"] == 27, "schur E1_3")

    p = run(cli, "tensor", "E1_5", "--max-cosets", "100")
    expect(p.returncode == 1, "capped enumeration exits 1")
    expect(json.loads(p.stdout)["status"] == "skipped-by-cap", "capped record status")

    p = run(cli, "tensor", "E1_2")
    expect(p.returncode == 1 and p.stderr.strip() != "", "parse error exits 1 with message")
    p = run(cli, "tensor", "C4096xC2")
    expect(p.returncode == 1, "oversized group exits 1")

    p = run(cli, "tensor", f"@{data / 'c2xc2.cay'}")
    rec = json.loads(p.stdout)
    expect(p.returncode == 0 and rec["tensor"]["invariants"] == [2, 2, 2, 2],
           "Cayley file input")
    p = run(cli, "tensor", f"@{data / 's3.cay'}")
    rec = json.loads(p.stdout)
    expect(rec["tensor"]["order"] == 6 and rec["group"]["p"] is None, "S3 from file")
    p = run(cli, "tensor", f"@{data / 'q8.fp'}")
    rec = json.loads(p.stdout)
    expect(rec["tensor"]["invariants"] == [4, 4, 2, 2], "presentation file input")
    p = run(cli, "tensor", f"@{data / 'bad.cay'}")
    expect(p.returncode == 1, "malformed Cayley file exits 1")
    p = run(cli, "tensor", f"@{data / 'missing.cay'}")
    expect(p.returncode == 1, "missing file exits 1")

    p = run(cli, "verify", "Q8", "D8", "C4")
    expect(p.returncode == 0, "verify of explicit specs exits 0")
    p = run(cli, "verify", "--p", "7", "--max-order", "3")
    expect(p.returncode == 0 and json.loads(p.stdout)["groups"] == [], "empty selection")

    with tempfile.TemporaryDirectory() as tmp:
        first = run(cli, "tensor", "Q8", "--cache-dir", tmp)
        second = run(cli, "tensor", "Q8", "--cache-dir", tmp)
        expect("cache hit" not in first.stderr, "first run misses the cache")
        expect("cache hit" in second.stderr, "second run hits the cache")
        expect(first.stdout == second.stdout, "cached output is identical")
        env = dict(os.environ, TENSORSQ_CACHE=tmp)
        third = run(cli, "tensor", f"@{data / 'q8.fp'}", env=env)
        expect("cache hit" in third.stderr, "TENSORSQ_CACHE and relabelled input hit")
        expect(json.loads(third.stdout)["group"]["spec"] == f"@{data / 'q8.fp'}",
               "cache hit reports the requested spec")

    print(f"{len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
