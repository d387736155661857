#!/usr/bin/env python3
"""Regenerates fixtures/random/r01..r10.pde.

Deterministic: a fixed seed drives every choice, so re-running the script
reproduces the checked-in files byte for byte. The systems are small (2-3
base variables, 1-2 unknowns, order <= 2) with coefficients drawn from small
integers and degree-one polynomials, which keeps every CLI subcommand fast.
"""

import random
from pathlib import Path

SEED = 20240917
OUT = Path(__file__).resolve().parent.parent / "fixtures" / "random"


def coeff(rng, vars_):
    # Never starts with '-': terms are joined with explicit +/- operators.
    kind = rng.randrange(4)
    if kind == 0:
        return str(rng.choice([1, 2, 3]))
    if kind == 1:
        return rng.choice(vars_)
    if kind == 2:
        return f"{rng.choice([2, 3])}*{rng.choice(vars_)}"
    c = rng.choice([1, 2, -1])
    op = "+" if c > 0 else "-"
    return f"({rng.choice(vars_)} {op} {abs(c)})"


def jet(rng, unknowns, n, max_order):
    name = rng.choice(unknowns)
    order = rng.randrange(max_order + 1)
    if order == 0:
        return name
    digits = sorted(str(rng.randrange(1, n + 1)) for _ in range(order))
    return name + "_" + "".join(digits)


def term(rng, unknowns, vars_, n, max_order):
    j = jet(rng, unknowns, n, max_order)
    if rng.randrange(2):
        return j
    return coeff(rng, vars_) + "*" + j


def system(rng, index):
    n = rng.choice([2, 3])
    vars_ = [f"x{i + 1}" for i in range(n)]
    m = rng.choice([1, 1, 2])
    unknowns = [f"y{k + 1}" for k in range(m)] if m > 1 else ["y"]
    neqs = rng.choice([1, 2, 2, 3])
    max_order = rng.choice([1, 2])
    lines = [
        f"# random fixture r{index:02d} (seed {SEED})",
        "vars " + " ".join(vars_),
        "unknown " + " ".join(unknowns),
    ]
    for k in range(neqs):
        nterms = rng.choice([1, 2, 2, 3])
        terms = [term(rng, unknowns, vars_, n, max_order) for _ in range(nterms)]
        lhs = terms[0]
        for t in terms[1:]:
            lhs += (" + " if rng.randrange(2) else " - ") + t
        lines.append(f"eq: {lhs} = f{k + 1}")
    return "\n".join(lines) + "\n"


def main():
    rng = random.Random(SEED)
    OUT.mkdir(parents=True, exist_ok=True)
    for i in range(1, 11):
        text = system(rng, i)
        (OUT / f"r{i:02d}.pde").write_text(text)
        print(f"wrote r{i:02d}.pde")


if __name__ == "__main__":
    main()
