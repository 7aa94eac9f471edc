#!/usr/bin/env python3
"""Frozen PARI data for Tate's algorithm, minimal models and root numbers.

Writes tests/data/localdata_oracle.json: a list of curves, each with
  a:        input a-invariants (integral, often non-minimal)
  minimal:  ellminimalmodel a-invariants
  N:        conductor
  w:        global root number
  local:    per bad prime [p, f_p, kodaira code, c_p, local root number]
Kodaira codes follow PARI: 1 I0, 2 II, 3 III, 4 IV, 4+n I_n, -1 I0*, -4-n I_n*,
-2 II*, -3 III*, -4 IV*.

Usage: gen_localdata.py OUT.json [--seed N] [--count N]
"""
import argparse
import json
import random

import cypari

pari = cypari.pari
ellinit = pari("ellinit")
minimal = pari("ellminimalmodel")
glob = pari("ellglobalred")
localred = pari("elllocalred")
rootno = pari("ellrootno")
change = pari("ellchangecurve")


def record(a):
    E = ellinit(a)
    if len(E) == 0:
        return None
    M = minimal(E)
    g = glob(M)
    N = int(g[0])
    fac = pari("factor")(N)
    loc = []
    for i in range(len(fac[0])):
        p = int(fac[0][i])
        lr = localred(M, p)
        loc.append([p, int(lr[0]), int(lr[1]), int(lr[3]), int(rootno(M, p))])
    return {"a": [str(int(x)) for x in a], "minimal": [str(int(M[i])) for i in range(5)],
            "N": str(N), "w": int(rootno(M)), "local": loc}


def random_curve(rng):
    style = rng.random()
    if style < 0.25:
        # additive at 2 or 3: scale a random curve by p and twist
        p = rng.choice([2, 3])
        a = [rng.randint(-20, 20) for _ in range(5)]
        e = rng.randint(1, 3)
        return [a[0] * p, a[1] * p ** e, a[2] * p ** 2, a[3] * p ** (e + 1), a[4] * p ** (e + 2)]
    if style < 0.4:
        return [0, 0, 0, rng.randint(-300, 300) * rng.choice([1, 4, 9, 16, 27, 8]),
                rng.randint(-3000, 3000) * rng.choice([1, 8, 27, 64])]
    if style < 0.55:
        # additive at a prime >= 5
        p = rng.choice([5, 7, 11, 13])
        k = rng.randint(1, 5)
        return [0, 0, 0, rng.randint(-9, 9) * p ** ((k + 1) // 2), rng.randint(-9, 9) * p ** k]
    if style < 0.7:
        # non-minimal models
        u = rng.choice([2, 3, 5, 6])
        a = [rng.randint(-5, 5) for _ in range(5)]
        return [a[0] * u, a[1] * u ** 2, a[2] * u ** 3, a[3] * u ** 4, a[4] * u ** 6]
    if style < 0.78:
        # quadratic twists turn multiplicative primes into I_n*
        a = [rng.randint(-2, 2), rng.randint(-3, 3), rng.randint(-2, 2),
             rng.randint(-60, 60), rng.randint(-200, 200)]
        E = ellinit(a)
        if len(E) == 0:
            return a
        d = rng.choice([-4, 8, -8, -3, 5, -7, 12, 13, -11, 24, -15])
        tw = pari("elltwist")(E, d)
        return [int(x) for x in ellinit(pari("ellintegralmodel")(ellinit(tw)))[:5]]
    if style < 0.85:
        r1, r2 = rng.randint(-60, 60), rng.randint(-60, 60)
        return [0, -(r1 + r2), 0, r1 * r2, 0]
    return [rng.randint(-2, 2), rng.randint(-3, 3), rng.randint(-2, 2),
            rng.randint(-200, 200), rng.randint(-2000, 2000)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--seed", type=int, default=17)
    ap.add_argument("--count", type=int, default=500)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    fixed = [
        [0, 0, 0, 0, 16], [0, -1, 1, 0, 0], [0, -1, 1, -10, -20], [0, 49, 0, 256, 0],
        [0, 37, 0, 160, 0], [1, 1, 1, -1595, -4768], [0, 0, 0, -105987, 11743634],
        [0, -1, 0, -456, 3456], [0, 0, 0, 0, 25], [0, 0, 0, 0, 49], [0, 0, 0, 0, 121],
        [0, 0, 1, -1, 0], [0, 0, 0, -1, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1],
        [4, 4 * 4, 8 * 3, 16 * 5, 64 * 7], [0, 0, 0, -432, 8208],
    ]
    # I_n* at primes >= 5: twist multiplicative primes of small-conductor curves
    for a, d in (([0, -1, 1, -10, -20], -11), ([0, 0, 1, -1, 0], 37), ([1, -1, 1, -1, -14], 17),
                 ([0, 1, 1, -9, -15], -19), ([1, 0, 1, 4, -6], -7), ([1, 1, 1, -10, -10], 5),
                 ([1, 1, 1, -10, -10], -15), ([0, -1, 1, -10, -20], 44), ([1, 0, 1, 4, -6], 28)):
        tw = pari("elltwist")(ellinit(a), d)
        fixed.append([int(x) for x in ellinit(pari("ellintegralmodel")(ellinit(tw)))[:5]])
    out, seen = [], set()
    for a in fixed:
        out.append(record(a))
        seen.add(tuple(a))
    while len(out) < args.count:
        a = random_curve(rng)
        if tuple(a) in seen:
            continue
        rec = record(a)
        if rec is None:
            continue
        seen.add(tuple(a))
        out.append(rec)
    json.dump(out, open(args.out, "w"), indent=0)


if __name__ == "__main__":
    main()
