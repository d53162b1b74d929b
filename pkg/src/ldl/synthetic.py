"""Small generated lexicons for demonstrations and tests.

``toy_lexicon``
    tree / bee / trees / bees in a phone transcription, with lexeme and
    number columns.
``korean_analog``
    Agglutinative verb paradigms: random syllabic stems followed by
    exponents for subject honorifics, tense, and a fused speech-level +
    illocutionary-force ending, with stem-conditioned allomorphy.
``priming_lexicon``
    A stem-and-prefix lexicon plus prime/target pairs of four kinds:
    morphologically and semantically related, morphologically related only,
    phonologically related, and unrelated.
"""
from __future__ import annotations

import itertools

import numpy as np

from .lexicon_io import Dataset

TOY_ROWS = [
    ("tri", "TREE", "SG"),
    ("bi", "BEE", "SG"),
    ("triz", "TREE", "PL"),
    ("biz", "BEE", "PL"),
]


def toy_lexicon() -> Dataset:
    return Dataset.from_records(
        [{"Word": w, "Lexeme": lx, "Number": nb} for w, lx, nb in TOY_ROWS],
        form_column="Word", columns=["Word", "Lexeme", "Number"])


ONSETS = ["g", "k", "n", "d", "t", "m", "b", "s", "c", "h", "p", "l", "j"]
VOWELS = ["a", "o", "u", "U", "i", "e", "E", "O"]
CODAS = ["", "", "", "n", "m", "l", "k", "p"]

HONORIFICS = ["plain", "hon"]
TENSES = ["present", "past", "future"]
SPEECH_LEVELS = ["plain", "for", "pol", "int"]
ILLOCUTIONS = ["dec", "inq", "imp", "pro"]

# fused speech-level x illocution endings, as syllable lists
ENDINGS = {
    ("for", "dec"): ["ni", "da"], ("for", "inq"): ["ni", "kka"],
    ("for", "imp"): ["si", "o"], ("for", "pro"): ["si", "da"],
    ("pol", "dec"): ["yo"], ("pol", "inq"): ["yo", "ka"],
    ("pol", "imp"): ["se", "yo"], ("pol", "pro"): ["ja", "yo"],
    ("int", "dec"): ["e"], ("int", "inq"): ["ni"],
    ("int", "imp"): ["ra"], ("int", "pro"): ["ja"],
    ("plain", "dec"): ["da"], ("plain", "inq"): ["nya"],
    ("plain", "imp"): ["ra", "go"], ("plain", "pro"): ["ja", "go"],
}


def feature_combinations() -> list[tuple]:
    """The 59 admissible (honorifics, tense, speech level, illocution) cells.

    Past and future tense do not combine with imperatives or propositives,
    and the honorific plain-level propositive and imperative, the honorific
    intimate future and the honorific plain-level future question are not
    used.
    """
    combos = []
    for hon, tense, sl, ill in itertools.product(HONORIFICS, TENSES, SPEECH_LEVELS, ILLOCUTIONS):
        if tense != "present" and ill in ("imp", "pro"):
            continue
        if hon == "hon" and sl == "plain" and ill in ("imp", "pro"):
            continue
        if hon == "hon" and sl == "int" and tense == "future":
            continue
        if hon == "hon" and sl == "plain" and tense == "future" and ill == "inq":
            continue
        combos.append((hon, tense, sl, ill))
    return combos


def _syllable(rng) -> str:
    return ONSETS[rng.integers(len(ONSETS))] + VOWELS[rng.integers(len(VOWELS))] + \
        CODAS[rng.integers(len(CODAS))]


def korean_analog(n_lexemes: int = 40, seed: int = 1) -> Dataset:
    """Inflected verb forms, syllables separated by ``_``.

    Forms are stem + [si|u_si] (honorific) + [ss|ess] / [get] (tense) +
    ending. The honorific and past exponents have an allomorph after stems
    that end in a consonant.
    """
    rng = np.random.default_rng(seed)
    stems, seen = [], set()
    while len(stems) < n_lexemes:
        sylls = tuple(_syllable(rng) for _ in range(int(rng.integers(1, 3))))
        if sylls not in seen:
            seen.add(sylls)
            stems.append(sylls)
    records = []
    for k, stem in enumerate(stems):
        closed = stem[-1][-1] not in VOWELS
        for hon, tense, sl, ill in feature_combinations():
            parts = list(stem)
            if hon == "hon":
                parts += ["u", "si"] if closed else ["si"]
            if tense == "past":
                parts += ["ess"] if closed or hon == "hon" else ["ass"]
            elif tense == "future":
                parts += ["get"]
            parts += ENDINGS[(sl, ill)]
            records.append({"Word": "_".join(parts), "Lexeme": f"V{k:03d}",
                            "Honorifics": hon, "Tense": tense,
                            "SpeechLevel": sl, "IllocutionaryForce": ill})
    return Dataset.from_records(records, form_column="Word",
                                columns=["Word", "Lexeme", "Honorifics", "Tense",
                                         "SpeechLevel", "IllocutionaryForce"])


PRIME_TYPES = ("ms", "m", "ph", "c")


def priming_lexicon(n_targets: int = 40, n_fillers: int = 300, seed: int = 3):
    """Stem/prefix lexicon with prime-target quadruples.

    Every target is a simple stem word. Its primes are
    ``ms``: prefix + stem, meaning = stem lexome + prefix lexome;
    ``m``: another prefix + stem with an unrelated (opaque) lexeme;
    ``ph``: a prefixed word whose stem shares only its first syllable;
    ``c``: a prefixed word with an unrelated stem.
    Every prime carries a prefix and the target does not, so no prime type
    shares a feature vector with its target.
    Filler stems occur on their own and with prefixes (transparently), so
    that stem cues carry stem meaning across the lexicon.

    Returns
    -------
    dataset : Dataset
        Columns ``Word``, ``Lexeme``, ``Prefix``.
    pairs : list of (prime_type, prime_index, target_index)
    """
    rng = np.random.default_rng(seed)
    prefixes = ["ver", "be", "ont", "op", "af", "uit"]
    seen = set()

    def new_stem(first=None):
        while True:
            s1 = first if first is not None else _syllable(rng)
            s = s1 + _syllable(rng)
            if s not in seen and not any(s.startswith(p) for p in prefixes):
                seen.add(s)
                return s, s1

    rows, index = [], {}

    def add(word, lexeme, prefix):
        if word in index:
            return index[word]
        index[word] = len(rows)
        rows.append({"Word": word, "Lexeme": lexeme, "Prefix": prefix})
        return index[word]

    for f in range(n_fillers):
        stem, _ = new_stem()
        add(stem, f"F{f}", "none")
        for p in rng.choice(prefixes, size=2, replace=False):
            add(p + stem, f"F{f}", p)

    pairs = []
    for t in range(n_targets):
        stem, first = new_stem()
        tgt = add(stem, f"T{t}", "none")
        p_ms, p_m, p_ph, p_c = rng.choice(prefixes, size=4, replace=False)
        ms = add(p_ms + stem, f"T{t}", p_ms)
        m = add(p_m + stem, f"O{t}", p_m)
        ph_stem, _ = new_stem(first=first)
        ph = add(p_ph + ph_stem, f"P{t}", p_ph)
        c_stem, _ = new_stem()
        c = add(p_c + c_stem, f"C{t}", p_c)
        pairs += [("ms", ms, tgt), ("m", m, tgt), ("ph", ph, tgt), ("c", c, tgt)]
    ds = Dataset.from_records(rows, form_column="Word", columns=["Word", "Lexeme", "Prefix"])
    return ds, pairs


def random_lexicon(rng, n_lexemes: int = 4, n_values: int = 2, max_stem: int = 3,
                   alphabet: str = "abcdefg") -> Dataset:
    """Tiny stem + suffix lexicon for randomized invariant checks."""
    suffixes = ["".join(rng.choice(list(alphabet), size=int(rng.integers(1, 3))))
                for _ in range(n_values)]
    records, forms = [], set()
    for k in range(n_lexemes):
        stem = "".join(rng.choice(list(alphabet), size=int(rng.integers(1, max_stem + 1))))
        for v, suf in enumerate(suffixes):
            form = stem + suf
            if form in forms:
                continue
            forms.add(form)
            records.append({"Word": form, "Lexeme": f"L{k}", "Number": f"N{v}"})
    return Dataset.from_records(records, form_column="Word", columns=["Word", "Lexeme", "Number"])
