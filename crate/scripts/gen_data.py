#!/usr/bin/env python3
"""Regenerates the bundled toy resources under crates/core/data/.

Everything is derived from a fixed seed, so running this script twice
produces byte-identical files.
"""

import math
import os
import random

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")
DIM = 32
rng = random.Random(20201005)

POS_ADJ = [
    ["good", "fine", "nice", "decent"],
    ["great", "excellent", "superb", "outstanding"],
    ["wonderful", "marvelous", "fantastic", "terrific"],
    ["beautiful", "lovely", "charming", "delightful"],
    ["brilliant", "clever", "smart", "witty"],
    ["enjoyable", "entertaining", "fun", "engaging"],
]
NEG_ADJ = [
    ["bad", "poor", "weak", "lousy"],
    ["terrible", "awful", "horrible", "dreadful"],
    ["boring", "dull", "tedious", "bland"],
    ["stupid", "silly", "dumb", "pointless"],
    ["ugly", "messy", "clumsy", "sloppy"],
    ["annoying", "irritating", "tiresome", "frustrating"],
]
POS_VERB = [["loved", "adored", "cherished"], ["enjoyed", "liked", "appreciated"]]
NEG_VERB = [["hated", "despised", "loathed"], ["disliked", "resented", "regretted"]]
NOUNS = [
    ["movie", "film", "picture"],
    ["story", "plot", "narrative"],
    ["acting", "performance", "cast"],
    ["script", "dialogue", "writing"],
    ["soundtrack", "score", "music"],
    ["ending", "finale", "conclusion"],
    ["direction", "pacing", "editing"],
]
INTENS = [["very", "really", "truly"], ["quite", "rather", "pretty"]]
FILLER = [["honestly", "frankly", "overall"], ["felt", "seemed", "looked"]]

# Words that stay out of the embedding table (they are all stopwords or
# punctuation-adjacent glue).
GLUE = ["the", "a", "was", "is", "this", "i", "it", "and", "but", "with", "what", "so"]

STOPWORDS = sorted(set("""
a about above after again against all am an and any are as at be because been
before being below between both but by can did do does doing down during each
few for from further had has have having he her here hers herself him himself
his how i if in into is it its itself just me more most my myself no nor not
now of off on once only or other our ours ourselves out over own same she
should so some such than that the their theirs them themselves then there
these they this those through to too under until up very was we were what
when where which while who whom why will with you your yours yourself
yourselves
""".split()))


def norm(v):
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def gauss(scale=1.0):
    return [rng.gauss(0.0, scale) for _ in range(DIM)]


def add(*vs):
    return [sum(xs) for xs in zip(*vs)]


def scale(v, s):
    return [x * s for x in v]


def build_embeddings():
    table = {}
    pos_dir = norm(gauss())
    neg_dir = norm(gauss())

    def family(groups, polarity):
        for group in groups:
            centre = norm(gauss())
            if polarity is not None:
                centre = norm(add(centre, scale(polarity, 0.6)))
            for word in group:
                table[word] = norm(add(centre, scale(norm(gauss()), 0.3)))

    family(POS_ADJ, pos_dir)
    family(NEG_ADJ, neg_dir)
    family(POS_VERB, pos_dir)
    family(NEG_VERB, neg_dir)
    family(NOUNS, None)
    family(INTENS, None)
    family(FILLER, None)
    # plurals / inflections share their lemma's neighbourhood
    for word in list(table):
        if word in NOUN_PLURAL:
            table[NOUN_PLURAL[word]] = norm(add(table[word], scale(norm(gauss()), 0.2)))
    return table


NOUN_PLURAL = {
    "movie": "movies", "film": "films", "picture": "pictures", "story": "stories",
    "plot": "plots", "performance": "performances", "script": "scripts",
    "ending": "endings", "score": "scores",
}
VERB_FORMS = {
    # lemma: (3sg, past, gerund)
    "love": ("loves", "loved", "loving"),
    "adore": ("adores", "adored", "adoring"),
    "enjoy": ("enjoys", "enjoyed", "enjoying"),
    "like": ("likes", "liked", "liking"),
    "hate": ("hates", "hated", "hating"),
    "despise": ("despises", "despised", "despising"),
    "dislike": ("dislikes", "disliked", "disliking"),
    "loathe": ("loathes", "loathed", "loathing"),
    "be": ("is", "was", "being"),
    "seem": ("seems", "seemed", "seeming"),
    "feel": ("feels", "felt", "feeling"),
}


def write(name, lines):
    with open(os.path.join(OUT, name), "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line + "\n")


def fmt(x):
    return f"{x:.6f}"


def pos_tags():
    tags = {}
    for g in POS_ADJ + NEG_ADJ:
        for w in g:
            tags[w] = ["ADJ"]
    for g in POS_VERB + NEG_VERB:
        for w in g:
            tags[w] = ["VERB"]
    for g in NOUNS:
        for w in g:
            tags[w] = ["NOUN"]
    tags["score"] = ["NOUN", "VERB"]
    tags["writing"] = ["NOUN", "VERB"]
    tags["editing"] = ["NOUN", "VERB"]
    for w in NOUN_PLURAL.values():
        tags[w] = ["NOUN"]
    for lemma, forms in VERB_FORMS.items():
        for w in (lemma,) + forms:
            tags.setdefault(w, ["VERB"])
    for g in INTENS:
        for w in g:
            tags[w] = ["ADV"]
    tags["pretty"] = ["ADV", "ADJ"]
    for w in ["honestly", "frankly", "overall"]:
        tags[w] = ["ADV"]
    for w in ["felt", "seemed", "looked"]:
        tags[w] = ["VERB"]
    tags["fun"] = ["ADJ", "NOUN"]
    tags.update({
        "the": ["DET"], "a": ["DET"], "this": ["DET"], "what": ["PRON"],
        "i": ["PRON"], "it": ["PRON"], "and": ["CONJ"], "but": ["CONJ"],
        "with": ["ADP"], "so": ["ADV"], "was": ["VERB"], "is": ["VERB"],
    })
    return tags


def build_corpus():
    pos_adj = [w for g in POS_ADJ for w in g]
    neg_adj = [w for g in NEG_ADJ for w in g]
    pos_verb = [w for g in POS_VERB for w in g]
    neg_verb = [w for g in NEG_VERB for w in g]
    nouns = [w for g in NOUNS for w in g]
    intens = [w for g in INTENS for w in g]
    filler = ["honestly", "frankly", "overall"]
    linking = ["felt", "seemed", "looked", "was"]

    def sentence(label):
        adjs = pos_adj if label == 1 else neg_adj
        other = neg_adj if label == 1 else pos_adj
        verbs = pos_verb if label == 1 else neg_verb
        c = rng.choice
        t = rng.randrange(8)
        if t == 0:
            s = f"the {c(nouns)} was {c(intens)} {c(adjs)}."
        elif t == 1:
            s = f"i {c(verbs)} this {c(nouns)}."
        elif t == 2:
            s = f"a {c(adjs)} {c(nouns)} with a {c(adjs)} {c(nouns)}."
        elif t == 3:
            s = f"the {c(nouns)} is {c(adjs)} and the {c(nouns)} is {c(adjs)}."
        elif t == 4:
            s = f"what a {c(adjs)} {c(nouns)}!"
        elif t == 5:
            s = f"{c(filler)}, the {c(nouns)} {c(linking)} {c(adjs)}."
        elif t == 6:
            s = f"i {c(verbs)} it, the {c(nouns)} was so {c(adjs)}."
        else:
            # contrast: the final clause decides the label
            s = f"the {c(nouns)} was {c(other)} but the {c(nouns)} was {c(adjs)}."
        if rng.random() < 0.5:
            s = s[0].upper() + s[1:]
        return s

    rows = []
    for i in range(1000):
        label = i % 2
        rows.append((sentence(label), label))
    rng.shuffle(rows)
    return rows


def build_translation():
    lexicon = {
        "the": "le", "a": "un", "was": "était", "is": "est", "this": "ce",
        "i": "je", "it": "il", "and": "et", "but": "mais", "with": "avec",
        "movie": "film", "movies": "films", "film": "film", "films": "films",
        "story": "histoire", "stories": "histoires", "plot": "intrigue",
        "plots": "intrigues", "ending": "fin", "endings": "fins",
        "script": "scénario", "scripts": "scénarios", "good": "bon",
        "great": "génial", "bad": "mauvais", "boring": "ennuyeux",
        "love": "aime", "loves": "aime", "loved": "aimait", "loving": "aimant",
        "hate": "déteste", "hates": "déteste", "hated": "détestait",
        "hating": "détestant", "enjoy": "apprécie", "enjoys": "apprécie",
        "enjoyed": "appréciait", "enjoying": "appréciant", "like": "aime",
        "likes": "aime", "liked": "aimait", "liking": "aimant",
        "seems": "semble", "seemed": "semblait", "feels": "semble",
        "felt": "semblait", "very": "très", "really": "vraiment",
    }
    sources = [
        "the movie was very good.", "i loved this movie.", "i hated the ending.",
        "the story seems boring.", "i enjoyed the script.", "the plot was bad.",
        "this film is great.", "i liked the movie and the story.",
        "the ending feels really bad.", "i love stories.", "the films were good.",
        "i hate this plot.", "the script was boring but the ending was great.",
        "i enjoy movies.", "the story is good.", "i liked it.",
        "the scripts seemed great.", "i loved the plots.", "this ending felt bad.",
        "the movies loved the stories.",
    ]

    def tr(s):
        out = []
        for tok in s.replace(".", " .").split():
            out.append(lexicon.get(tok, tok))
        return " ".join(out).replace(" .", ".")

    return lexicon, [(s, tr(s)) for s in sources]


def main():
    os.makedirs(OUT, exist_ok=True)
    emb = build_embeddings()
    write("embeddings.txt", [w + " " + " ".join(fmt(x) for x in emb[w]) for w in sorted(emb)])

    tags = pos_tags()
    write("pos_lexicon.tsv", [f"{w}\t{'|'.join(tags[w])}" for w in sorted(tags)])
    write("stopwords.txt", STOPWORDS)

    # thesaurus: synonyms inside a cluster
    thesaurus = []
    for groups, tag in [(POS_ADJ, "ADJ"), (NEG_ADJ, "ADJ"), (POS_VERB, "VERB"),
                        (NEG_VERB, "VERB"), (NOUNS, "NOUN"), (INTENS, "ADV")]:
        for g in groups:
            for w in g:
                syns = [f"{s}:{tag}" for s in g if s != w]
                thesaurus.append(f"{w}\t{','.join(syns)}")
    write("thesaurus.tsv", sorted(thesaurus))

    # sememe lexicon: same part of speech and same polarity sememe
    sememe = []
    for families, tag in [(POS_ADJ, "ADJ"), (NEG_ADJ, "ADJ"), (POS_VERB, "VERB"),
                          (NEG_VERB, "VERB"), (NOUNS, "NOUN")]:
        for gi, g in enumerate(families):
            neighbour = families[(gi + 1) % len(families)]
            for w in g:
                syns = [s for s in g if s != w] + neighbour[:2]
                sememe.append(f"{w}\t{','.join(s + ':' + tag for s in syns)}")
    write("sememe.tsv", sorted(sememe))

    infl = []
    for lemma, forms in sorted(VERB_FORMS.items()):
        all_forms = [lemma] + list(forms)
        infl.append(f"{lemma}\t{','.join(f + ':VERB' for f in all_forms)}")
    for sing, plur in sorted(NOUN_PLURAL.items()):
        infl.append(f"{sing}\t{sing}:NOUN,{plur}:NOUN")
    write("inflections.tsv", infl)

    rows = build_corpus()
    header = "text\tlabel"
    write("sentiment_train.tsv", [header] + [f"{t}\t{l}" for t, l in rows[:800]])
    write("sentiment_test.tsv", [header] + [f"{t}\t{l}" for t, l in rows[800:]])

    lexicon, pairs = build_translation()
    write("translation_dict.tsv", [f"{k}\t{v}" for k, v in sorted(lexicon.items())])
    write("translation.tsv", ["source\treference"] + [f"{s}\t{t}" for s, t in pairs])


if __name__ == "__main__":
    main()
