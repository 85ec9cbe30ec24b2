"""Repeat the distributional suite over alternative base seeds and count individual test failures."""

import argparse
import json
import sys

from bridge_transforms.identities import CATALOG, IdentityCase, verify
from bridge_transforms.samplers import RunParams

from run_suite import SUITE


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="*", default=list(range(1, 21)))
    ap.add_argument("--x", type=float, nargs="*", default=[0.0, -0.7, 1.3])
    ap.add_argument("--replicates", type=int, default=20000)
    ap.add_argument("--steps", type=int, default=2048)
    ap.add_argument("--alpha", type=float, default=0.001)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--identity", nargs="*", default=list(SUITE))
    ap.add_argument("--out", default=None, help="JSON lines, one record per (seed, case)")
    a = ap.parse_args()

    fh = open(a.out, "w") if a.out else None
    tests = fails = 0
    for seed in a.seeds:
        for cid in a.identity:
            for x in (a.x if CATALOG[cid].uses_x else [0.0]):
                params = RunParams(x=x, n_steps=a.steps, replicates=a.replicates, base_seed=seed)
                rep = verify(IdentityCase(cid, params), alpha=a.alpha, threads=a.threads)
                bad = [t.name for t in rep.tests if not t.passed]
                tests += len(rep.tests)
                fails += len(bad)
                print(f"seed={seed} {cid} x={x:+.2f} failures={bad}", flush=True)
                if fh:
                    fh.write(json.dumps({"seed": seed, "identity": cid, "x": x, "failing": bad,
                                         "n_tests": len(rep.tests)}) + "\n")
                    fh.flush()
    rate = fails / max(tests, 1)
    print(f"individual failures {fails}/{tests} = {rate:.4f}")
    if fh:
        fh.close()
    return 0 if rate <= 0.05 else 1


if __name__ == "__main__":
    sys.exit(main())
