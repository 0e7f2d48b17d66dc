"""Check that the three del-delbar lemma detectors agree on random complexes."""

import argparse
import random
from collections import Counter

from bottchern.diagnostics import lemma_verdict
from bottchern.synthetic import random_complex


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = Counter()
    for i in range(args.count):
        v = lemma_verdict(random_complex(rng))
        if not v.agree:
            print(f"disagreement on sample {i}: {v}")
        tally["agree" if v.agree else "disagree"] += 1
        tally["lemma holds" if v.holds else "lemma fails"] += 1
    for key, n in sorted(tally.items()):
        print(f"{key:<12} {n}")
    return 0 if not tally["disagree"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
