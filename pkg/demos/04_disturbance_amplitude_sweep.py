"""
How disturbance size affects model selection
============================================

Least-squares selection scores each candidate by the summed squared
one-step prediction error.  A slow sinusoid is strongly correlated with the
state it drives, which pulls the best fit toward larger ``a``.  When the
sinusoid is large compared with the initial state this bias dominates and
nodes settle on the wrong candidate; when it is small the initial transient
carries enough information.

The sweep below counts, over ten seeds, how often the minimax/oracle gap
shrinks from the first ten steps to the last ten and how often the minimax
law ends closer to the oracle than the nominal law does.
"""

from dataclasses import replace

import numpy as np

from dmac import disturbance as dist
from dmac.config import paper_preset
from dmac.engine import run

print("amplitude  shrink  beats-nominal  nodes-identified")
for amp in (1.0, 0.5, 0.2, 0.1, 0.05, 0.01):
    shrink = beats = identified = 0
    for seed in range(10):
        cfg = replace(paper_preset(seed), disturbance=dist.sinusoid(7, amp))
        _, m = run(cfg)
        g, gn = m.gaps["minimax-oracle"], m.gaps["nominal-oracle"]
        shrink += g[-10:].mean() <= g[:10].mean()
        beats += g[-10:].mean() <= gn[-10:].mean()
        identified += sum(t is not None for t in m.controllers["minimax"].identification_times)
    print(f"{amp:9.2f}  {shrink:4d}/10  {beats:9d}/10  {identified:10d}/70")
