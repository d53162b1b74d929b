#!/usr/bin/env python3
# Word-level measures from the production map on a tokenized lexicon with
# triphone cues, then a 2-d PCA of the cue vectors.  Random vectors stand in
# for word embeddings here; with real embeddings the file is read with
# ldl.load_embeddings.

import numpy as np

from ldl import (Dataset, build_cue_matrix, comprehension_map, distance_travelled,
                 fit_positional, learn_paths, pca_project, production_map, total_support)
from ldl.semantics import SemanticMatrix

words = ["m.a1", "m.a3", "m.a1.m.a1", "sh.i4", "sh.i4.h.ou4", "h.ou4", "m.a3.sh.ang4",
         "sh.ang4", "h.ao3", "h.ao3.m.a1"]
ds = Dataset.from_records([{"phones": w} for w in words], "phones")
inv, cm = build_cue_matrix(ds, n=3, tokenized=True, separator=".")
S = SemanticMatrix(np.random.default_rng(7).normal(size=(len(words), 30)),
                   {"source": "random stand-in"})
F, G = comprehension_map(cm, S), production_map(S, cm)
_, gold = learn_paths(inv, cm, S, F, fit_positional(S, cm), threshold=0.01)

print(f"{'word':14s} {'distance':>9s} {'support':>9s}")
for i, w in enumerate(words):
    dt = distance_travelled(G, cm.word_cue_sequences[i])
    print(f"{w:14s} {dt:9.3f} {total_support(gold, i):9.3f}")

xy = pca_project(G)
for name, (x, y) in list(zip(inv.names, xy))[:8]:
    print(f"{name:12s} {x:+.3f} {y:+.3f}")
