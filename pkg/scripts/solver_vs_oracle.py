"""Solver values against brute-force values on seeded random arenas, per objective."""
import argparse
import time
from dataclasses import dataclass, fields

from posgames.generate import GenConfig, arenas
from posgames.oracle import OracleBudget, brute_force_solve, strategy_values
from posgames.solver import solve
from posgames.valuations import parse_spec


@dataclass
class Config:
    specs: str = "safety,immvar,reach,buchi,cobuchi,parity:2,energy,backsup:3,bounded:3"
    count: int = 500
    seed: int = 0
    max_vertices: int = 5
    max_out: int = 3


def main(cfg: Config):
    gen = GenConfig(max_vertices=cfg.max_vertices, max_out=cfg.max_out)
    budget = OracleBudget(max_vertices=cfg.max_vertices, strategy_cap=10**6)
    print(f"{'spec':<12} {'arenas':>7} {'value':>6} {'strat':>6} {'sec':>6}")
    for k, text in enumerate(cfg.specs.split(",")):
        spec = parse_spec(text)
        t0 = time.time()
        bad_val = bad_strat = 0
        for a in arenas(spec, cfg.count, seed=cfg.seed + k, cfg=gen):
            res = solve(a)
            bad_val += res.values != brute_force_solve(a, budget).values
            bad_strat += tuple(strategy_values(a, res.strategy.chosen)) != res.values
        print(f"{text:<12} {cfg.count:>7} {bad_val:>6} {bad_strat:>6} {time.time() - t0:>6.1f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        p.add_argument("--" + f.name.replace("_", "-"), type=type(f.default), default=f.default)
    main(Config(**vars(p.parse_args())))
