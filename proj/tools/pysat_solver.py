#!/usr/bin/env python3
"""Runs a python-sat backend on a DIMACS file and prints a competition-style answer.

Exit status follows the usual convention: 10 satisfiable, 20 unsatisfiable.
With --proof, the DRUP lemmas of an unsatisfiable run are written to the given file.
"""

import argparse
import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("cnf")
    parser.add_argument("--solver", default="glucose4")
    parser.add_argument("--proof", help="write a DRUP proof here when unsatisfiable")
    args = parser.parse_args()

    formula = CNF(from_file=args.cnf)
    with Solver(name=args.solver, bootstrap_with=formula.clauses, with_proof=bool(args.proof)) as solver:
        sat = solver.solve()
        stats = solver.accum_stats() or {}
        print(f"c solver: {args.solver}")
        print(f"c conflicts: {stats.get('conflicts', 0)}")
        if sat:
            print("s SATISFIABLE")
            model = solver.get_model() or []
            print("v " + " ".join(str(lit) for lit in model) + " 0")
            return 10
        print("s UNSATISFIABLE")
        if args.proof:
            with open(args.proof, "w") as out:
                for line in solver.get_proof() or []:
                    out.write(line.strip() + "\n")
        return 20


if __name__ == "__main__":
    sys.exit(main())
