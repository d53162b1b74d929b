#!/usr/bin/env python3
# Four English words, two lexemes (TREE, BEE), two numbers (SG, PL).
# The smallest lexicon on which every step of the model can be read off by hand.

import numpy as np

from ldl import (apply_map, build_cue_matrix, comprehension_map, distance_legs, eval_SC,
                 fit_positional, functional_load, learn_paths, production_map,
                 simulate_semantics)
from ldl.synthetic import toy_lexicon

np.set_printoptions(precision=3, suppress=True)

# %% forms become rows of a binary cue matrix
ds = toy_lexicon()
inv, cm = build_cue_matrix(ds, n=2)
print("cues:", " ".join(inv.names))
print(cm.toarray())

# %% meanings are sums of lexome vectors (one draw per lexome, nothing per word)
S = simulate_semantics(ds, "Lexeme", ["Number"], dims=8, seed=0)
print("lexomes:", S.lexome_names())

# %% comprehension C -> S and production S -> C are plain least-squares maps
F = comprehension_map(cm, S)
G = production_map(S, cm)
res = eval_SC(apply_map(cm.matrix, F), S.values, ds.forms)
print("comprehension accuracy", res.accuracy)

# %% production: positional supports pick candidate cues, synthesis-by-analysis ranks paths
paths, gold = learn_paths(inv, cm, S, F, fit_positional(S, cm))
for i, form in enumerate(ds.forms):
    top = paths.candidates[i][0]
    print(f"{form:5s} -> {inv.sequence_form(top.cues):5s} r={top.score:.3f}")

# %% the G columns of #t, tr, ri coincide, so 'trees' only travels on two legs
for form in ("triz", "bi"):
    seq = cm.word_cue_sequences[ds.index_of(form)]
    print(form, distance_legs(G, seq))

# %% which meaning does each cue carry?
fl = functional_load(G, inv, S)
print(fl.argmax())
