#!/usr/bin/env python3
"""Print the classification table of every built-in relation plus the
gap-2 pair-order relation, at the default desk-scale bounds.

    python3 scripts/classify_builtins.py --alphabet 3 --max-len 6
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from wordbialg.relations import (
    BUILTIN_NAMES,
    builtin_relation,
    check_algebraic,
    check_p_algebraic,
    check_uniformly_algebraic,
    close,
    coxeter_relation,
    gap_braid_m,
    is_finite_type_bounded,
    is_homogeneous_observed,
)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--alphabet", type=int, default=3)
    parser.add_argument("--max-len", type=int, default=6)
    args = parser.parse_args()

    targets = [builtin_relation(name) for name in BUILTIN_NAMES]
    targets.append(coxeter_relation(gap_braid_m(2), name="coxeter-gap2"))
    header = f"{'relation':<16} {'homog':<6} {'alg':<5} {'unif':<5} {'p-alg':<6} {'ftype':<6} time"
    print(header)
    print("-" * len(header))
    for pres in targets:
        t0 = time.time()
        inst = close(pres, args.alphabet, args.max_len)
        row = (
            is_homogeneous_observed(inst),
            check_algebraic(inst)["status"] == "pass",
            check_uniformly_algebraic(inst)["status"] == "pass",
            check_p_algebraic(inst)["status"] == "pass",
            is_finite_type_bounded(inst)["stable"],
        )
        cells = " ".join(f"{('yes' if v else 'no'):<6}" for v in row)
        print(f"{pres.name:<16} {cells} {time.time() - t0:4.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
