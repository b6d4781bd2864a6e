#!/usr/bin/env python3
"""Solve an MPS file with HiGHS and print the optimal objective.

Exit codes: 0 optimal, 1 solver did not reach optimality, 3 highspy missing.
"""
import sys

try:
    import highspy
except ImportError:
    print("highspy not available", file=sys.stderr)
    sys.exit(3)


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: mps_solve.py MODEL.mps", file=sys.stderr)
        return 2
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    h.setOptionValue("primal_feasibility_tolerance", 1e-9)
    h.setOptionValue("mip_feasibility_tolerance", 1e-9)
    if h.readModel(sys.argv[1]) != highspy.HighsStatus.kOk:
        print("readModel failed", file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        print("status " + h.modelStatusToString(status), file=sys.stderr)
        return 1
    print(repr(h.getInfo().objective_function_value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
