"""Exact moments on O_MN^L and U_MN^L against sampled partial isometries.

Points of the space are drawn as A J B* with A, B Haar and J the rank-L
truncated identity; each exact moment should sit within a few standard
errors of its estimate.
"""

import sys

from haarspace import MomentSpec, QuantumFamily, SpaceSpec, space_moment
from haarspace.oracle import mc_space_moment

count = int(sys.argv[1]) if len(sys.argv) > 1 else 50_000

cases = [
    (SpaceSpec(QuantumFamily("O"), 2, 3, 4), ["ww", "wwww"], MomentSpec("wwww", (1, 2, 1, 2), (1, 1, 2, 2))),
    (SpaceSpec(QuantumFamily("U"), 1, 2, 3), ["wb", "wwbb"], MomentSpec("wbwb", (1, 2, 1, 2), (1, 1, 1, 1))),
]
for spec, words, mixed in cases:
    ms = [MomentSpec(w, (1,) * len(w), (1,) * len(w)) for w in words] + [mixed]
    batch = mc_space_moment(spec, ms, count, seed=0)
    print(spec.family, (spec.L, spec.M, spec.N))
    for k, m in enumerate(ms):
        exact = space_moment(spec, m)
        z = abs(batch.means[k] - complex(exact)) / batch.stderrs[k]
        print(f"    {m.word} rows={m.rows} cols={m.cols}: exact {exact}, "
              f"estimate {batch.means[k].real:.5f} +- {batch.stderrs[k]:.5f} ({z:.1f} SE)")
