"""Driving the command line tool from Python."""

# %% Every subcommand prints JSON and maps errors to exit codes:
# 0 ok, 1 verify failure, 2 not bounded, 3 precision, 4 ramified, 5 bad input.
import json
import tempfile

from topjordan.cli import run

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
    json.dump([[2, 0], [0, 3]], fh)
report, code, _ = run(["tjd", "decompose", "--ctx", '{"p":5,"d":1,"k":2}', "--matrix", fh.name])
print(code, json.dumps(report, indent=1))

# %% Unbounded input.
with open(fh.name, "w") as out:
    json.dump([[5, 0], [0, 1]], out)
print(run(["tjd", "decompose", "--ctx", '{"p":5,"k":2}', "--matrix", fh.name])[1])

# %% Seeded invariant suites give the same report for the same seed.
first = run(["verify", "--suite", "tjd-roundtrip", "--seed", "7", "--trials", "20"])[0]
print(first["ok"], first == run(["verify", "--suite", "tjd-roundtrip", "--seed", "7", "--trials", "20"])[0])

# %% Permutations.
print(run(["profinite", "decompose", "--perm", "1 2 3 4 5 0", "--p", "2"])[0])
