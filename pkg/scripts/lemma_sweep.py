"""Run the randomised shifting and weight certificate suites over a grid of n."""

import argparse
import time
from dataclasses import dataclass, field

from flagkneser.suites import shifting_suite, weight_suite


@dataclass
class SweepConfig:
    shifting_ns: list[int] = field(default_factory=lambda: [5, 6, 7, 8])
    weight_ns: list[int] = field(default_factory=lambda: [7, 8, 9])
    shifting_samples: int = 500
    weight_samples: int = 100
    seed: int = 0


def run(cfg: SweepConfig) -> int:
    failed = False
    jobs = [(shifting_suite, n, cfg.shifting_samples) for n in cfg.shifting_ns]
    jobs += [(weight_suite, n, cfg.weight_samples) for n in cfg.weight_ns]
    for suite, n, samples in jobs:
        t = time.monotonic()
        rep = suite(n, samples, cfg.seed)
        print(f"{rep.summary()} ({time.monotonic() - t:.1f} s)")
        if rep.statuses:
            print("    " + ", ".join(f"{k}={v}" for k, v in sorted(rep.statuses.items())))
        for v in rep.violations[:5]:
            print("    " + v)
        failed |= not rep.ok
    return 1 if failed else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--shifting-n", type=int, nargs="+", default=[5, 6, 7, 8])
    p.add_argument("--weight-n", type=int, nargs="+", default=[7, 8, 9])
    p.add_argument("--shifting-samples", type=int, default=500)
    p.add_argument("--weight-samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    return run(SweepConfig(a.shifting_n, a.weight_n, a.shifting_samples, a.weight_samples,
                           a.seed))


if __name__ == "__main__":
    raise SystemExit(main())
