"""Controlled-error experiment: how resolution degrades with label quality.

Gold labels are perturbed to hit chosen animate precision/recall targets,
many times per target pair with derived seeds, and the resolver runs on
each perturbed assignment.  The CSV of the full grid is what the `sweep`
subcommand writes; here we print a small corner of it.
"""

from animacy import load_corpus
from animacy.data import mini_corpus_path
from animacy.resolution import marginal_csv, sweep, sweep_csv

docs = load_corpus(mini_corpus_path())

grid = sweep(
    docs,
    precision_percents=range(60, 101, 10),
    recall_percents=range(60, 101, 20),
    runs=25,
    seed=2024,
)

print("mean success rate (rows: precision %, columns: recall %):")
recalls = sorted({r for _, r in grid.cells})
print("      " + "".join(f"{r:>8d}" for r in recalls))
for p in sorted({p for p, _ in grid.cells}):
    row = [grid.cells[(p, r)] for r in recalls]
    cells = "".join(
        f"{s.mean_success:8.3f}" if s.feasible else "       -" for s in row
    )
    print(f"  {p:3d} {cells}")

print("\nfirst lines of the grid CSV:")
print("\n".join(sweep_csv(grid).splitlines()[:4]))
print("\nmarginal curves (averaged over the other axis):")
print(marginal_csv(grid))
