#!/usr/bin/env python3
"""Frozen PARI data for the curves module tests.

Writes tests/data/curves_oracle.json with
  torsion:  a-invariants, torsion structure, j, disc, #E(F_p) for a few good p
  isomorph: pairs of curves with the PARI verdict on Q-isomorphism

Usage: gen_curves.py OUT.json [--seed N]
"""
import argparse
import json
import random
from fractions import Fraction

import cypari

pari = cypari.pari
ellinit = pari("ellinit")
elltors = pari("elltors")
ellap = pari("ellap")
ellchange = pari("ellchangecurve")


def q(x):
    f = Fraction(str(x))
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def tate(b, c):
    # y^2 + (1-c)xy - by = x^3 - bx^2
    return [1 - c, -b, -b, 0, 0]


def kubert(order, t):
    t = Fraction(t)
    if order == 4:
        return tate(t, Fraction(0))
    if order == 5:
        return tate(t, t)
    if order == 6:
        return tate(t + t * t, t)
    if order == 7:
        return tate(t**3 - t**2, t**2 - t)
    if order == 8:
        b = (2 * t - 1) * (t - 1)
        return tate(b, b / t)
    if order == 9:
        c = t * t * (t - 1)
        return tate(c * (t * t - t + 1), c)
    if order == 10:
        c = (2 * t**3 - 3 * t**2 + t) / (t - (t - 1) ** 2)
        d = t * t / (t - (t - 1) ** 2)
        return tate(c * d, c)
    if order == 12:
        m = (3 * t - 3 * t * t - 1) / (t - 1)
        f = m / (1 - t)
        d = m + t
        c = f * (d - 1)
        return tate(c * d, c)
    raise ValueError(order)


def z8(v):
    A = 1 - 8 * v + 16 * v**2 - 16 * v**3 + 8 * v**4
    B = 16 * (v - 1) ** 4 * v**4
    return [0, A, 0, B, 0]


def z2x6(v):
    A = 37 - 84 * v + 102 * v**2 - 36 * v**3 - 3 * v**4
    B = 32 * (v - 1) ** 3 * (v + 1) ** 3 * (3 * v - 5)
    return [0, A, 0, B, 0]


def random_ainv(rng):
    style = rng.random()
    if style < 0.2:
        k = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        pick = rng.randrange(5)
        if pick == 4:
            return [rng.randint(-9, 9), 0, rng.randint(1, 40), 0, 0]
        if pick == 0:
            return tate(k * k - Fraction(1, 16), Fraction(0))
        if pick == 1 and k * k != 8:
            return z8((8 + 2 * k) / (8 - k * k))
        if pick == 2:
            return z8(v)
        return z2x6(v)
    if style < 0.45:
        order = rng.choice([4, 5, 6, 7, 8, 9, 10, 12])
        t = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        try:
            return kubert(order, t)
        except ZeroDivisionError:
            return [0, 0, 0, 1, 1]
    if style < 0.7:
        # y^2 = x^3 + A x^2 + B x, often with full 2-torsion
        r1, r2 = rng.randint(-60, 60), rng.randint(-60, 60)
        if rng.random() < 0.5:
            return [0, -(r1 + r2), 0, r1 * r2, 0]
        return [0, rng.randint(-60, 60), 0, rng.randint(-300, 300), 0]
    return [rng.randint(-3, 3), rng.randint(-10, 10), rng.randint(-3, 3),
            rng.randint(-500, 500), rng.randint(-5000, 5000)]


def curve(a):
    E = ellinit([pari(q(x)) for x in a])
    return E if len(E) else None


def torsion_record(a):
    E = curve(a)
    if E is None:
        return None
    tors = elltors(E)
    Ei = ellinit(pari("ellintegralmodel")(E))
    disc = int(Ei[11])
    counts = {}
    p = 3
    while len(counts) < 6:
        if disc % p:
            counts[str(p)] = int(p + 1 - ellap(Ei, p))
        p = int(pari("nextprime")(p + 1))
    return {
        "a": [q(x) for x in a],
        "order": int(tors[0]),
        "cyc": [int(x) for x in tors[1]],
        "gens": [[q(P[0]), q(P[1])] for P in tors[2]],
        "j": q(E[12]),
        "disc": q(E[11]),
        "counts": counts,
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--count", type=int, default=300)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    fixed = [
        [0, 49, 0, 256, 0],
        [0, 37, 0, -160, 0],
        [0, 37, 0, 160, 0],
        [1, 1, 1, -1595, -4768],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 4, 0],
        [0, 0, 0, -1, 0],
        [0, 0, 0, 0, 1],
        [0, -1, 1, -10, -20],
    ]
    torsion = []
    seen = set()
    for a in fixed:
        torsion.append(torsion_record(a))
        seen.add(tuple(q(x) for x in a))
    while len(torsion) < args.count:
        a = random_ainv(rng)
        key = tuple(q(x) for x in a)
        if key in seen:
            continue
        rec = torsion_record(a)
        if rec is None:
            continue
        seen.add(key)
        torsion.append(rec)

    isom = []
    while len(isom) < 80:
        a = random_ainv(rng)
        E = curve(a)
        if E is None:
            continue
        u = Fraction(rng.choice([1, -1, 2, -3, 5])) / rng.choice([1, 2, 3])
        r, s, t = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3))
        F = ellchange(E, [pari(q(x)) for x in (u, r, s, t)])
        isom.append({"a": [q(x) for x in a], "b": [q(F[i]) for i in range(5)], "iso": True})
        # a quadratic twist by a non-square is never isomorphic
        d = rng.choice([-4, 8, 12, -7, 5, -3])
        tw = pari("elltwist")(E, d)
        tw = ellchange(ellinit(tw), [pari(q(x)) for x in (u, r, s, t)])
        isom.append({"a": [q(x) for x in a], "b": [q(tw[i]) for i in range(5)], "iso": None})
    # reduced minimal models agree exactly when the curves are Q-isomorphic
    for rec in isom:
        E = curve(rec["a"])
        F = curve(rec["b"])
        rec["iso"] = bool(pari("(E,F)->E.j==F.j && "
                               "ellminimalmodel(E)[1..5]==ellminimalmodel(F)[1..5]")(E, F))
    json.dump({"torsion": torsion, "isomorphism": isom}, open(args.out, "w"), indent=1)


if __name__ == "__main__":
    main()
