"""Smallest level budget at which each builder passes the small-graph universality check."""
import argparse
from dataclasses import dataclass, fields

from posgames.monotone import build
from posgames.oracle import OracleBudget, universality_check
from posgames.valuations import parse_spec


@dataclass
class Config:
    specs: str = "reach,buchi,cobuchi,parity:1"
    max_vertices: int = 3
    max_levels: int = 6
    samples: int = 2000
    seed: int = 0


def main(cfg: Config):
    budget = OracleBudget(max_vertices=cfg.max_vertices, sample_count=cfg.samples)
    for text in cfg.specs.split(","):
        spec = parse_spec(text)
        mode = "B" if spec.qualitative and spec.prefix_increasing else "A"
        row = []
        for levels in range(1, cfg.max_levels + 1):
            rep = universality_check(build(spec, levels), spec, budget, mode=mode, seed=cfg.seed)
            row.append("ok" if rep.passed else "--")
        print(f"{text:<10} mode {mode}  " + " ".join(f"{lv}:{r}" for lv, r in enumerate(row, 1)))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        p.add_argument("--" + f.name.replace("_", "-"), type=type(f.default), default=f.default)
    main(Config(**vars(p.parse_args())))
