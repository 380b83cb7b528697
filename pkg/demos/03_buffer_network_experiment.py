"""
Buffer network experiment
=========================

Seven nodes, ``b = 0.1``, five candidate models per node, thirty steps and a
per-node sinusoidal disturbance.  Three controllers share the disturbance:
the adaptive minimax law, the oracle that knows every true ``a``, and a
nominal law fixed at the midpoint of each admissible interval.

Pass an output directory to also write the CSV bundle, and ``--plot`` to
draw the state and gap series (needs matplotlib).
"""

import sys

import numpy as np

from dmac.cli import run_scenario
from dmac.config import paper_preset
from dmac.engine import run

seed = 0
cfg = paper_preset(seed)
records, metrics = run(cfg)

for name, m in metrics.controllers.items():
    print(f"{name:8s} cost={m.cost[-1]:8.3f} energy={m.energy[-1]:8.3f} gain={m.gain_ratio:.3f}")
print("minimax identification times:", metrics.controllers["minimax"].identification_times)
for key, gap in metrics.gaps.items():
    print(f"{key:15s} mean gap first 10 = {gap[:10].mean():.4f}  last 10 = {gap[-10:].mean():.4f}")

args = [a for a in sys.argv[1:] if a != "--plot"]
if args:
    run_scenario(cfg, args[0])
    print("wrote", args[0])

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)
    panels = [
        (records["minimax"].x, "states, minimax"),
        (records["oracle"].x, "states, oracle"),
        (metrics.gaps["minimax-oracle"], "|minimax - oracle|"),
        (metrics.gaps["nominal-oracle"], "|nominal - oracle|"),
    ]
    for ax, (data, title) in zip(axes.ravel(), panels):
        ax.plot(np.arange(data.shape[0]), data)
        ax.set_title(title)
    fig.tight_layout()
    plt.show()
