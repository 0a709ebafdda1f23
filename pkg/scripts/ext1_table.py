"""Tabulate |Ext^1(G, U)| against the number of classified G-families.

    python3 scripts/ext1_table.py --max-grading-order 8 --max-unit-order 8 > ext1.tsv
"""

import argparse
import sys

from coxrings.experiments import Ext1TableConfig, ext1_table


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-grading-order", type=int, default=Ext1TableConfig.max_grading_order)
    ap.add_argument("--max-unit-order", type=int, default=Ext1TableConfig.max_unit_order)
    ap.add_argument("--extra-units", nargs="*", default=list(Ext1TableConfig.extra_units))
    args = ap.parse_args(argv)
    cfg = Ext1TableConfig(args.max_grading_order, args.max_unit_order, tuple(args.extra_units))
    run = ext1_table(cfg)
    print("grading\tunits\text1\tclasses\tagrees\tseconds")
    for r in run.rows:
        print(f"{r.grading}\t{r.units}\t{r.ext1}\t{r.classes}\t{str(r.agrees).lower()}\t{r.seconds:.4f}")
    print(f"# {len(run.rows)} pairs, all agree: {run.ok}", file=sys.stderr)
    return 0 if run.ok else 1


if __name__ == "__main__":
    sys.exit(main())
