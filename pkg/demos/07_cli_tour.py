"""Tour of the wedgeworks command line: generate a de Sitter response
curve, feed it back through the KMS checker, and run the self-test and
oracle scenarios.  Every output opens with the natural-units banner and
serializes floats at full precision, so round trips are bit-exact.

Run:  python3 demos/07_cli_tour.py
"""

import json
import os
import tempfile

from wedgeworks import cli

tmp = tempfile.mkdtemp(prefix="wedgeworks-demo-")
curve = os.path.join(tmp, "desitter.csv")

print("== desitter-response -> %s ==" % curve)
cli.main(["desitter-response", "--kappa", "1.0", "--s", "2.0",
          "--gap-grid", "0.4:2.0:5", "--output", curve])
with open(curve) as fh:
    for line in fh.read().splitlines()[:6]:
        print(line)

print("\n== kms-check on that curve ==")
out = os.path.join(tmp, "kms.json")
cli.main(["kms-check", "--input", curve, "--format", "json",
          "--output", out])
with open(out) as fh:
    meta = json.load(fh)["meta"]
print("t_eff = %s   residual = %s" % (meta["t_eff"], meta["kms_residual"]))

print("\n== rindler-spectrum (csv to stdout, first rows) ==")
cli.main(["rindler-spectrum", "--a", "1.0", "--omega-grid", "0.5:2.0:3"])

print("\n== oracle (seeded, deterministic) ==")
code = cli.main(["oracle", "--points", "3", "--seed", "7",
                 "--output", os.path.join(tmp, "oracle.csv")])
print("exit code %d" % code)

print("\n== selftest ==")
cli.main(["selftest"])
