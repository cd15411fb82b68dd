"""Evolution vs gradient descent on one dataset, printed as the two result tables.

    python3 scripts/compare_gd.py                          # separable synthetic, 100 train / 50 test
    python3 scripts/compare_gd.py --train ref/train.diga --test ref/test.diga \
        --normalize 255 --max-dims 12288,20,5,1 --gd-arch 12288,20,7,5,1 --gd-lr 0.0075
"""

import argparse

from diga.cli import int_list
from diga.data_io import load_dataset, synth_dataset
from diga.engine import EvolutionConfig, final_report, format_table, run_evolution
from diga.gd_baseline import GDConfig, gd_train
from diga.model import Dataset


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--train")
    ap.add_argument("--test")
    ap.add_argument("--normalize", type=float)
    ap.add_argument("--max-dims", type=int_list, default=[50, 5, 5, 1])
    ap.add_argument("--stop-cost", type=float, default=0.035)
    ap.add_argument("--max-iter", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--gd-arch", type=int_list, default=[50, 5, 5, 1])
    ap.add_argument("--gd-lr", type=float, default=0.0075)
    ap.add_argument("--gd-iters", type=int, default=3000)
    args = ap.parse_args()

    if args.train:
        train = load_dataset(args.train, args.normalize)
        test = load_dataset(args.test, args.normalize) if args.test else None
    else:
        # one hyperplane for both splits
        full = synth_dataset(50, 150, seed=42, separable=True)
        train, test = Dataset(full.X[:, :100], full.Y[:, :100]), Dataset(full.X[:, 100:], full.Y[:, 100:])

    ev = run_evolution(EvolutionConfig(args.max_dims, args.stop_cost, max_iter=args.max_iter, seed=args.seed),
                       train, test)
    print(f"evolution: {ev.iterations} iterations, {len(ev.swap_iterations)} swaps, {ev.wall_time:.0f}s")
    print(format_table(final_report(ev)))
    gd = gd_train(GDConfig(args.gd_arch, args.gd_iters, args.gd_lr, args.seed), train, test)
    print(f"\ngradient descent: {gd.iterations} iterations, {gd.wall_time:.0f}s")
    print(format_table(final_report(gd)))


if __name__ == "__main__":
    main()
