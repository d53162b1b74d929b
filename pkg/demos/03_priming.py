#!/usr/bin/env python3
# Prime-to-target approximation: how close does the semantic vector predicted
# from a prime's form come to the target's meaning?
#
#   ms  prefixed form of the target stem, same meaning      (ver-stem / stem)
#   m   prefixed form of the target stem, opaque meaning
#   ph  prefixed word sharing only the first syllable
#   c   unrelated prefixed word

import numpy as np

from ldl import (apply_map, build_cue_matrix, comprehension_map, eval_SC,
                 prime_target_approximation, simulate_semantics)
from ldl.synthetic import PRIME_TYPES, priming_lexicon

ds, pairs = priming_lexicon(n_targets=40, n_fillers=300, seed=3)
inv, cm = build_cue_matrix(ds, n=2)
S = simulate_semantics(ds, "Lexeme", ["Prefix"], n_cues=len(inv), seed=3)
F = comprehension_map(cm, S)
res = eval_SC(apply_map(cm.matrix, F), S.values, ds.forms)
print(f"{len(ds)} words, {len(inv)} cues, comprehension {res.accuracy:.3f}")

kind, p, t = pairs[0]
print("one quadruple:", [ds.forms[q] for _, q, _ in pairs[:4]], "->", ds.forms[t])

for kind in PRIME_TYPES:
    pta = [prime_target_approximation(res, p, t) for k, p, t in pairs if k == kind]
    print(f"{kind:3s} mean PTA {np.mean(pta):+.3f}  sd {np.std(pta):.3f}")
