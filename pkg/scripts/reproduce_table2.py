"""Recompute alpha(Gamma(n, 1, n-3)) for the table rows and print timings.

    python scripts/reproduce_table2.py --max-n 8
    python scripts/reproduce_table2.py --max-n 10 --left-shifted
    python scripts/reproduce_table2.py --min-n 9 --max-n 9 --budget 600
"""

import argparse
from dataclasses import dataclass

from flagkneser import SolverConfig, verify_table2


@dataclass
class Table2Run:
    min_n: int = 5
    max_n: int = 8
    budget: float | None = None
    left_shifted: bool = False
    threads: int = 1


def run(cfg: Table2Run) -> int:
    solver = SolverConfig(time_budget=cfg.budget, left_shifted=cfg.left_shifted,
                          thread_count=cfg.threads)
    rows = verify_table2(cfg.max_n, solver, min_n=cfg.min_n)
    print(f"{'n':>3} {'expected':>9} {'alpha':>7} {'solver':>10} {'row':>13} {'seconds':>9}")
    for r in rows:
        print(f"{r.n:>3} {r.expected:>9} {r.alpha:>7} {r.solver_status:>10} {r.status:>13} "
              f"{r.seconds:>9.2f}")
    return 1 if any(r.status == "fail" for r in rows) else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min-n", type=int, default=5)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--budget", type=float, default=None, help="seconds per row")
    p.add_argument("--left-shifted", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    a = p.parse_args()
    return run(Table2Run(a.min_n, a.max_n, a.budget, a.left_shifted, a.threads))


if __name__ == "__main__":
    raise SystemExit(main())
