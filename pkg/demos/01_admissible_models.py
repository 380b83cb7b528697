"""
Admissible decay rates and sampled model sets
=============================================

The closed-form distributed feedback needs every node's decay rate ``a`` to
satisfy ``a**2 + 2*b**2*d < a``, where ``d`` is the node degree.  Higher
degree squeezes the interval.
"""

from dmac.config import sample_models
from dmac.topology import admissible_interval, buffer_network

for d in range(5):
    lo, hi = admissible_interval(0.1, d)
    print(f"degree {d}: ({lo:.10f}, {hi:.10f})")

# Five candidates per node on the seven-node buffer network; one is the truth.
topo = buffer_network()
models = sample_models(0, topo, 0.1, 5)
for i, (cands, k) in enumerate(zip(models.candidates, models.true_index)):
    marked = ", ".join(f"[{c:.3f}]" if j == k else f"{c:.3f}" for j, c in enumerate(cands))
    print(f"node {i + 1} (degree {topo.degrees[i]}): {marked}")
