#!/usr/bin/env python3
"""Prints BLEU and chrF fixture values for the metric tests.

This is a separate implementation of the definitions used by the library:

* BLEU: sentence BLEU-4 over lowercased words, uniform weights, clipped
  n-gram precision, standard brevity penalty. A zero unigram match (or an
  empty side) scores 0; a higher order with zero matches uses 1 / (total + 1).
* chrF: character n-grams for n = 1..6 with whitespace removed, precision
  and recall averaged over orders where either side has n-grams, beta = 2.

Fixture texts are lowercase words separated by single spaces, so word
segmentation is a plain split.
"""

from collections import Counter
from fractions import Fraction
import math

PAIRS = [
    ("the cat sat on the mat", "the cat sat on the mat"),
    ("the cat sat on the mat", "the cat is on the mat"),
    ("a quick brown fox jumps", "the quick brown fox jumped over"),
    ("le chat", "le chien"),
    ("one two three four five six", "six five four three two one"),
    ("there is a cat on the mat", "the cat is on the mat"),
    ("hello", "hello world"),
    ("completely different words", "nothing in common here"),
    ("the movie was spotless", "the movie was perfect"),
    ("abcdefghij", "abcdefghiz"),
]


def ngrams(seq, n):
    return Counter(tuple(seq[i : i + n]) for i in range(len(seq) - n + 1))


def bleu(hyp, ref):
    h, r = hyp.lower().split(), ref.lower().split()
    if not h or not r:
        return 0.0
    log_sum = 0.0
    for n in range(1, 5):
        hc, rc = ngrams(h, n), ngrams(r, n)
        total = max(len(h) - n + 1, 0)
        matches = sum(min(c, rc[g]) for g, c in hc.items())
        if matches > 0:
            p = matches / total
        elif n == 1:
            return 0.0
        else:
            p = 1.0 / (total + 1)
        log_sum += 0.25 * math.log(p)
    bp = 1.0 if len(h) > len(r) else math.exp(1 - len(r) / len(h))
    return bp * math.exp(log_sum)


def chrf(hyp, ref):
    h = [c for c in hyp if not c.isspace()]
    r = [c for c in ref if not c.isspace()]
    ps, rs, orders = Fraction(0), Fraction(0), 0
    for n in range(1, 7):
        hc, rc = ngrams(h, n), ngrams(r, n)
        ht, rt = sum(hc.values()), sum(rc.values())
        if ht == 0 and rt == 0:
            continue
        m = sum(min(c, rc[g]) for g, c in hc.items())
        ps += Fraction(m, ht) if ht else 0
        rs += Fraction(m, rt) if rt else 0
        orders += 1
    if orders == 0:
        return 1.0
    p, rr = ps / orders, rs / orders
    if p + rr == 0:
        return 0.0
    return float(5 * p * rr / (4 * p + rr))


for hyp, ref in PAIRS:
    print(f'    ("{hyp}", "{ref}", {bleu(hyp, ref)!r}, {chrf(hyp, ref)!r}),')
