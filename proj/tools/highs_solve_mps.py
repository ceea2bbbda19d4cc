#!/usr/bin/env python3
"""Solve an MPS file with HiGHS and print a one-line JSON summary.

Usage: highs_solve_mps.py MODEL.mps [--time-limit SECONDS]
"""
import argparse
import json
import sys


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("mps")
    ap.add_argument("--time-limit", type=float, default=None)
    args = ap.parse_args()
    try:
        import highspy
    except ImportError:
        print(json.dumps({"status": "unavailable", "error": "highspy is not installed"}))
        return 2

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 1e-9)
    if args.time_limit is not None:
        h.setOptionValue("time_limit", args.time_limit)
    if h.readModel(args.mps) != highspy.HighsStatus.kOk:
        print(json.dumps({"status": "read_error"}))
        return 2
    h.run()
    status = h.modelStatusToString(h.getModelStatus())
    info = h.getInfo()
    out = {"status": status, "objective": info.objective_function_value,
           "bound": info.mip_dual_bound, "nodes": info.mip_node_count}
    print(json.dumps(out))
    return 0 if status == "Optimal" else 1


if __name__ == "__main__":
    sys.exit(main())
