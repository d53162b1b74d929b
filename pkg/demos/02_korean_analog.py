#!/usr/bin/env python3
# A made-up agglutinative verb system in the style of Korean: 40 stems, each
# inflected for honorific, tense, speech level and illocutionary force.
# Syllables are the tokens, so cues are syllable bigrams.

import time

from ldl import (apply_map, build_cue_matrix, comprehension_map, eval_production, eval_SC,
                 fit_positional, learn_paths, simulate_semantics)
from ldl.synthetic import korean_analog

t0 = time.perf_counter()
ds = korean_analog(n_lexemes=40, seed=1)
inv, cm = build_cue_matrix(ds, n=2, tokenized=True, separator="_")
print(f"{len(ds)} forms, {len(set(ds.forms))} distinct, {len(inv)} cues")
print("first forms:", ds.forms[:4])

S = simulate_semantics(ds, "Lexeme", ["Honorifics", "Tense", "SpeechLevel",
                                      "IllocutionaryForce"], n_cues=len(inv), seed=1)
F = comprehension_map(cm, S)
comp = eval_SC(apply_map(cm.matrix, F), S.values, ds.forms)
print("comprehension", round(comp.accuracy, 4))

# meanings here are exact sums of 5 lexomes, so S has low rank and positional
# support is spread thin; a low threshold keeps the gold cues in play
pm = fit_positional(S, cm)
for threshold in (0.1, 0.05, 0.01):
    paths, _ = learn_paths(inv, cm, S, F, pm, threshold=threshold)
    print(f"production at threshold {threshold}: "
          f"{eval_production(paths, cm.word_cue_sequences):.4f}")
print(f"{time.perf_counter() - t0:.1f} s")
