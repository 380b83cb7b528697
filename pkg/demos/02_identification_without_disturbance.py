"""
Model selection with no disturbance
===================================

Without disturbance the first transition already pins down the true decay
rate: its prediction error is zero while every other candidate pays
``(a - a_true)**2 * x(0)**2``.  Afterwards the adaptive law is the oracle law
and the network is regulated to zero.
"""

from dataclasses import replace

import numpy as np

from dmac.config import paper_preset
from dmac.disturbance import DisturbanceSpec
from dmac.engine import run

cfg = replace(paper_preset(0), disturbance=DisturbanceSpec("zero"), horizon=200)
records, metrics = run(cfg)
mm = records["minimax"]

print("true a     :", np.round(cfg.models.true_a, 4))
print("selected t0:", np.round(mm.a_selected[0], 4), "(tie-break, no data yet)")
print("selected t1:", np.round(mm.a_selected[1], 4))
print("identification times:", metrics.controllers["minimax"].identification_times)
print("||x(200)||_inf =", np.max(np.abs(mm.x[-1])))
