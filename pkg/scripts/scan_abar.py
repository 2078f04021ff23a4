"""Print the variance-estimator coefficient quantities over a range of n.

Each ratio divides a quantity by its rate (n / ln^2 n for the influence and the
diagonal, ln^2 n for the contraction), so a bounded column means the rate holds.
"""
import argparse

from src.experiments import abar_facts

DEFAULT_SIZES = [64, 128, 256, 512, 1024]


def main():
    parser = argparse.ArgumentParser(description="Scan the cbar_n rate ratios over n")
    parser.add_argument(
        "--n",
        type=int,
        nargs="+",
        default=DEFAULT_SIZES,
        help=f"Grid sizes (default: {DEFAULT_SIZES})",
    )
    args = parser.parse_args()

    print(f"{'n':>6} {'delta':>10} {'norm_sq':>10} {'diagonal':>10} {'contraction':>12}  bounds")
    for n in args.n:
        facts = abar_facts(n)
        r = facts.ratios()
        status = "ok" if facts.passed else "FAIL"
        print(
            f"{n:>6} {r['delta_ratio']:>10.4f} {r['norm_sq']:>10.4f} "
            f"{r['diagonal_ratio']:>10.4f} {r['contraction_ratio']:>12.4f}  {status}"
        )


if __name__ == "__main__":
    main()
