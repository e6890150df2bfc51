#!/usr/bin/env python3
"""Regenerates data/corpus.txt and data/lexicon.tsv.

A small technical-manual-style grammar produces annotated declarative
sentences: subject brackets gold-placed, one gold tag per token. The
lexicon covers the grammar's vocabulary plus the worked-example words,
with deliberate noun/verb and prep/adv ambiguity.
"""

import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

# word -> candidate tags; first tag listed is not privileged, gold tags come
# from the grammar below.
LEXICON = {
    "the": ["det"], "a": ["art"], "this": ["prod"], "all": ["pred"],
    # unambiguous nouns
    "engine": ["noun"], "filter": ["noun"], "pump": ["noun"], "valve": ["noun"],
    "oil": ["noun"], "coolant": ["noun"], "gearbox": ["noun"], "pipe": ["noun"],
    "cap": ["noun"], "hose": ["noun"], "system": ["noun"], "unit": ["noun"],
    "level": ["noun"], "pressure": ["noun"], "manual": ["noun"], "seal": ["noun"],
    "cooler": ["noun"], "connections": ["noun"], "directions": ["noun"],
    "instructions": ["noun"], "bolt": ["noun"], "bracket": ["noun"],
    "housing": ["noun"], "tank": ["noun"], "journal": ["noun"], "copyright": ["noun"],
    # noun/verb ambiguous
    "supplies": ["noun", "verb"], "controls": ["noun", "verb"],
    "drains": ["noun", "verb"], "filters": ["noun", "verb"],
    "mounts": ["noun", "verb"], "checks": ["noun", "verb"], "papers": ["noun", "verb"],
    # unambiguous verbs
    "requires": ["verb"], "needs": ["verb"], "operates": ["verb"],
    "contains": ["verb"], "protects": ["verb"], "drives": ["verb"],
    # past participles
    "fitted": ["pastp"], "checked": ["pastp"], "given": ["pastp"],
    "replaced": ["pastp"], "protected": ["pastp"], "connected": ["pastp"],
    "mounted": ["pastp"], "drained": ["pastp"], "inspected": ["pastp"],
    "published": ["pastp"], "tightened": ["pastp"], "followed": ["pastp"],
    # auxiliaries
    "is": ["aux"], "are": ["aux"], "must": ["aux"], "be": ["aux"],
    "was": ["aux"], "were": ["aux"], "should": ["aux"],
    # adverbs
    "regularly": ["adv"], "carefully": ["adv"], "often": ["adv"],
    "fully": ["adv"], "slowly": ["adv"],
    # prepositions, two prep/adv ambiguous
    "of": ["prep"], "to": ["prep"], "by": ["prep"], "with": ["prep"],
    "on": ["prep"], "in": ["prep", "adv"], "below": ["prep", "adv"],
    "under": ["prep", "adv"],
    # adjectives
    "new": ["adj"], "main": ["adj"], "worn": ["adj"], "hot": ["adj"],
    "loose": ["adj"],
    ".": ["endp"],
}

NOUNS = [w for w, t in LEXICON.items() if t == ["noun"]] + \
        [w for w, t in LEXICON.items() if t == ["noun", "verb"]]
PLAIN_NOUNS = [w for w, t in LEXICON.items() if t == ["noun"]]
VERBS = [w for w, t in LEXICON.items() if t == ["verb"]] + \
        [w for w, t in LEXICON.items() if t == ["noun", "verb"]]
PASTPS = [w for w, t in LEXICON.items() if t == ["pastp"]]
ADVS = [w for w, t in LEXICON.items() if t == ["adv"]]
PREPS = [w for w, t in LEXICON.items() if "prep" in t]
ADJS = [w for w, t in LEXICON.items() if t == ["adj"]]
AMB_PREPS = ["below", "under"]


def np_simple(rng, allow_bare=False):
    toks = []
    det = rng.choice([("the", "det"), ("a", "art"), ("this", "prod"), ("all", "pred")])
    if not (allow_bare and rng.random() < 0.2):
        toks.append(det)
    if rng.random() < 0.3:
        toks.append((rng.choice(ADJS), "adj"))
    toks.append((rng.choice(NOUNS), "noun"))
    return toks


def subject(rng):
    r = rng.random()
    if r < 0.40:
        return np_simple(rng)
    if r < 0.70:
        # PP-attached subject: "the pipe connections of the cooler"
        return np_simple(rng) + [(rng.choice(PREPS[:5]), "prep")] + np_simple(rng)
    if r < 0.85:
        # participial subject ending in a stranded preposition:
        # "the directions given below"
        return np_simple(rng) + [(rng.choice(PASTPS), "pastp"),
                                 (rng.choice(AMB_PREPS), "prep")]
    # bare plural-ish subject: "all papers published in this journal"
    return np_simple(rng) + [(rng.choice(PASTPS), "pastp"),
                             ("in", "prep")] + np_simple(rng)


def predicate(rng):
    r = rng.random()
    if r < 0.35:
        toks = [(rng.choice(["is", "are", "was", "were"]), "aux"),
                (rng.choice(PASTPS), "pastp")]
        if rng.random() < 0.5:
            toks.append((rng.choice(ADVS), "adv"))
        if rng.random() < 0.4:
            toks += [(rng.choice(PREPS[:5]), "prep")] + np_simple(rng)
        return toks
    if r < 0.60:
        # "must be carefully checked"
        toks = [(rng.choice(["must", "should"]), "aux"), ("be", "aux")]
        if rng.random() < 0.6:
            toks.append((rng.choice(ADVS), "adv"))
        toks.append((rng.choice(PASTPS), "pastp"))
        if rng.random() < 0.3:
            toks += [(rng.choice(PREPS[:5]), "prep")] + np_simple(rng)
        return toks
    # finite verb with object
    toks = [(rng.choice(VERBS), "verb")] + np_simple(rng)
    if rng.random() < 0.3:
        toks.append((rng.choice(ADVS), "adv"))
    return toks


def sentence(rng):
    pre = []
    if rng.random() < 0.25:
        pre = [(rng.choice(PREPS[:5]), "prep")] + np_simple(rng)
    subj = subject(rng)
    pred = predicate(rng)
    return pre, subj, pred + [(".", "endp")]


def main():
    rng = random.Random(20240817)
    lines = [
        "# Synthetic technical-manual-style corpus.",
        "# Regenerate with tools/make_corpus.py (fixed seed).",
    ]
    seen = set()
    while len(seen) < 120:
        pre, subj, pred = sentence(rng)
        toks = [f"{w}/{t}" for w, t in pre] + ["["] + \
               [f"{w}/{t}" for w, t in subj] + ["]"] + \
               [f"{w}/{t}" for w, t in pred]
        line = " ".join(toks)
        if line in seen:
            continue
        seen.add(line)
        lines.append(line)
    (DATA / "corpus.txt").write_text("\n".join(lines) + "\n")

    lex_lines = ["# word<TAB>comma-separated candidate tags"]
    for word in sorted(LEXICON):
        lex_lines.append(f"{word}\t{','.join(LEXICON[word])}")
    (DATA / "lexicon.tsv").write_text("\n".join(lex_lines) + "\n")
    print(f"wrote {len(seen)} sentences, {len(LEXICON)} lexicon entries")


if __name__ == "__main__":
    main()
