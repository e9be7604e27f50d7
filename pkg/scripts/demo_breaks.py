"""Sweep break witnesses across bounds and construction variants.

For each requested bound the sweep builds one defectless witness (principal
conductor, closed break) and one defect model (open conductor, open break),
then prints where the ramification jump lands and how the model's generator
sequence creeps down toward the p-th root of the bound.  Irrational bounds
get their own row when the group supports them.

Run from the repository root:

    python3 scripts/demo_breaks.py --p 2 --depth 4
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from ramify.cli import format_cut, format_element
from ramify.cuts import Surd
from ramify.defect_lab import (
    VARIANT_CLOSED,
    VARIANT_OPEN,
    VARIANT_OPEN_IRRATIONAL,
    break_witness,
)
from ramify.ordered_group import GroupDescriptor, element, p_inverted


@dataclass(frozen=True)
class SweepConfig:
    descriptor: GroupDescriptor
    p: int
    depth: int
    bounds: Tuple[Fraction, ...]
    irrational: bool


def sweep(config: SweepConfig) -> None:
    rows = []
    for b in config.bounds:
        g = element(config.descriptor, b)
        for variant in (VARIANT_CLOSED, VARIANT_OPEN):
            w = break_witness(config.descriptor, config.p, g, variant, depth=config.depth)
            rows.append((format_element(g), variant, w))
    if config.irrational:
        s = Surd(0, 1, 2)
        w = break_witness(config.descriptor, config.p, s, VARIANT_OPEN_IRRATIONAL, depth=config.depth)
        rows.append(("sqrt(2)", VARIANT_OPEN_IRRATIONAL, w))

    bw = max(len(r[0]) for r in rows)
    vw = max(len(r[1]) for r in rows)
    print(f"group {config.descriptor}, p = {config.p}, depth = {config.depth}")
    print(f"{'bound'.ljust(bw)}  {'variant'.ljust(vw)}  {'break'.ljust(16)}  principal  defect")
    for name, variant, w in rows:
        print(
            f"{name.ljust(bw)}  {variant.ljust(vw)}  {format_cut(w.break_cut).ljust(16)}"
            f"  {str(w.break_cut.kind == 'principal').lower().ljust(9)}"
            f"  {str(w.swan.defect).lower()}"
        )
    print()
    for name, variant, w in rows:
        if not w.swan.defect:
            continue
        seq = ", ".join(format_element(e) for e in w.source.e_seq)
        print(f"e-sequence at {name} ({variant}): {seq}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=2)
    parser.add_argument("--depth", type=int, default=4)
    parser.add_argument("--bounds", default="1,2,3/2", help="comma-separated rational bounds")
    parser.add_argument("--no-irrational", action="store_true")
    args = parser.parse_args()
    descriptor = p_inverted(args.p)
    bounds = tuple(Fraction(b) for b in args.bounds.split(","))
    sweep(SweepConfig(descriptor, args.p, args.depth, bounds, not args.no_irrational))


if __name__ == "__main__":
    main()
