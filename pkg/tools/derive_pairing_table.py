"""Rederive kappa on generator pairs from a chord model of the surface and
compare with the bundled (or given) pairing table.

Model: a disk with 2g bands attached along its top edge. Handle i carries
the a_i band (feet q1, q3) and the b_i band (feet q2, q4), interleaved, and
handles appear right to left along the boundary. Both base points sit on
the bottom edge, the bullet before the star in counterclockwise order. A
generator based at a point is the pair of chords (base -> entry foot) and
(exit foot -> base) closed up through its band. Parallel copies of a band
are separated by the parameter t, and kappa counts the signed crossings of
those chords.

    python tools/derive_pairing_table.py [--genus 3] [--table PATH]

Exits 0 if the table agrees with the derivation for every generator pair.
"""
import argparse
import sys
from collections import Counter

from gdtwist.free_group import GroupWord
from gdtwist.pairing import GeneratorPairingTable


def derive(g, x_first=True):
    order = ["bullet", "star"]
    for i in range(g, 0, -1):
        for q in (4, 3, 2, 1):
            order.append((i, q))

    def pos(point):
        if point in ("bullet", "star"):
            return (order.index(point), 0)
        foot, t = point
        return (order.index(foot), -t)  # counterclockwise within a foot is decreasing t

    gens = {}
    for i in range(1, g + 1):
        gens[("a", i)] = ((i, 1), (i, 3))
        gens[("b", i)] = ((i, 4), (i, 2))

    def chords(gen, base, t):
        entry, exit_ = gens[gen]
        left = min(entry[1], exit_[1])

        def tt(foot):
            return t if foot[1] == left else 1 - t

        return [(base, (entry, tt(entry))), ((exit_, tt(exit_)), base)]

    def between(a, b, c):
        if a < b:
            return a < c < b
        return c > a or c < b

    table = {}
    tx, ty = (0.3, 0.6) if x_first else (0.6, 0.3)
    for x in gens:
        for y in gens:
            terms = Counter()
            for ix, (P1, P2) in enumerate(chords(x, "bullet", tx)):
                for iy, (Q1, Q2) in enumerate(chords(y, "star", ty)):
                    p1, p2, q1, q2 = map(pos, (P1, P2, Q1, Q2))
                    if between(p1, p2, q1) and between(p2, p1, q2):
                        eps = 1
                    elif between(p2, p1, q1) and between(p1, p2, q2):
                        eps = -1
                    else:
                        continue
                    left = (() if iy == 0 else (y,)) + ((x,) if ix == 0 else ())
                    right = (() if ix == 0 else (x,)) + ((y,) if iy == 0 else ())
                    terms[(left, right)] += eps
            table[(x, y)] = {k: v for k, v in terms.items() if v}
    return table


def letter(gen):
    kind, i = gen
    return 2 * (i - 1) + (kind == "b")


def as_words(terms):
    out = Counter()
    for (left, right), c in terms.items():
        out[(GroupWord([letter(s) + 1 for s in left]), GroupWord([letter(s) + 1 for s in right]))] += c
    return {k: v for k, v in out.items() if v}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--genus", type=int, default=3)
    p.add_argument("--table", default=None)
    args = p.parse_args(argv)
    table = GeneratorPairingTable.load(args.table)
    derived = derive(args.genus)
    other = derive(args.genus, x_first=False)
    bad = 0
    for (x, y), terms in sorted(derived.items()):
        if terms != other[(x, y)]:
            print(f"parallel-copy order changes kappa({x}, {y})")
            bad += 1
        want = as_words(terms)
        got = Counter()
        for c, l, r in table.value(letter(x), letter(y)):
            got[(l, r)] += c
        got = {k: v for k, v in got.items() if v}
        if got != want:
            bad += 1
            print(f"kappa{x, y}: table {got} derived {want}")
    print(f"{len(derived) - bad}/{len(derived)} generator pairs agree")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
