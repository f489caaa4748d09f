"""A small paired benchmark: how strategy selection changes game size and quality.

Every variant starts from the same seeded centers, so differences are
attributable to the variant, not to initialization luck.  The same grid
is available from the command line:

    gameclust bench --ds1 --k 6..8 --algo gtkmeans --ns 0,2,3 --reps 10 --seed 0 --out results.json
"""

from gameclust import (
    Ds1Config,
    clamp_nonnegative,
    generate_ds1,
    geometric_mean_index,
    jain_index,
    paired_compare,
)

dataset = generate_ds1(Ds1Config(seed=0))
seeds = list(range(10))

header = f"{'variant':16s} {'time (ms)':>10s} {'strat/player':>13s} {'entries':>9s} {'SSE imp %':>10s} {'L imp %':>9s} {'Jain':>7s} {'GMI':>7s}"

for k in (6, 8):
    print(f"\nk = {k}, {len(seeds)} paired seeds")
    print(header)
    for summary in paired_compare(dataset, k, seeds, [None, 2, 3], algorithms=("gtkmeans",)):
        label = "gtkmeans" if summary.ns is None else f"gtkmeans ns={summary.ns}"
        improvements = clamp_nonnegative(
            [summary.mean_sse_improvement_pct, summary.mean_l_improvement_pct]
        )
        print(
            f"{label:16s} {summary.mean_wall_time_s*1e3:10.1f} "
            f"{summary.mean_strategies_per_player:13.2f} {summary.mean_payoff_entries:9.0f} "
            f"{summary.mean_sse_improvement_pct:10.1f} {summary.mean_l_improvement_pct:9.1f} "
            f"{jain_index(improvements):7.4f} {geometric_mean_index(improvements):7.2f}"
        )
