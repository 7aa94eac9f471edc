#!/usr/bin/env python3
"""Frozen PARI data for the sections module tests.

Writes tests/data/sections_oracle.json with
  conics:   symmetric integer matrices with the qfsolve verdict (solvable or not)
  quartics: t^2 = q(u) with a known point and the minimal model of the Jacobian
            (ellfromeqn), plus the rank pair returned by ellrank

Usage: gen_sections.py OUT.json [--seed N]
"""
import argparse
import json
import random

import cypari

pari = cypari.pari


def conic_record(M):
    m = pari.matrix(3, 3, [x for row in M for x in row])
    if pari("matdet")(m) == 0:
        return None
    sol = pari("qfsolve")(m)
    solvable = str(pari("type")(sol)) == "t_COL"
    return {"M": M, "solvable": bool(solvable)}


def random_conic(rng):
    if rng.random() < 0.5:
        d = [rng.choice([-1, 1]) * rng.randint(1, 400) for _ in range(3)]
        return [[d[0], 0, 0], [0, d[1], 0], [0, 0, d[2]]]
    M = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            M[i][j] = M[j][i] = rng.randint(-60, 60)
    return M


QUARTICS = {
    "R3-8-1": ("29*x^4+62*x^2+3509", (1, 60)),
    "R3-8-2": ("15*(121+118*x^2+x^4)", (1, 60)),
    "R3-8-3": ("3*(2523-870*x+151*x^2-30*x^3+3*x^4)", (0, 87)),
    "R3-26-1": ("784-756*x+293*x^2-54*x^3+4*x^4", (0, 28)),
    "R3-26-2": ("196-420*x+197*x^2-30*x^3+x^4", (0, 14)),
    "R3-26-3": ("784-924*x+383*x^2-66*x^3+4*x^4", (0, 28)),
    "R3-26-4": ("32400+60480*x-9432*x^2+336*x^3+x^4", (0, 180)),
}


def quartic_record(name, q, pt):
    coeffs = [int(c) for c in reversed(pari("Vec")(pari(q)))]
    E = pari("ellinit")(pari("ellfromeqn")(pari("y^2-(" + q + ")")))
    M = pari("ellminimalmodel")(E)
    rk = pari("ellrank")(M)
    return {"id": name, "q": coeffs, "point": [str(pt[0]), str(pt[1])],
            "jacobian": [str(int(M[i])) for i in range(5)],
            "rank_bounds": [int(rk[0]), int(rk[1])]}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--seed", type=int, default=13)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    conics = []
    for M in ([[1, 0, 0], [0, 1, 0], [0, 0, -3]], [[1, 0, 0], [0, 1, 0], [0, 0, -2]],
              [[4, 1, -2], [1, 0, 0], [-2, 0, 5]]):
        conics.append(conic_record(M))
    while len(conics) < 150:
        rec = conic_record(random_conic(rng))
        if rec is not None:
            conics.append(rec)

    # random quartics with a point at u = 0
    quartics = [quartic_record(k, q, p) for k, (q, p) in QUARTICS.items()]
    while len(quartics) < 40:
        c = [rng.randint(-30, 30) for _ in range(4)]
        t0 = rng.randint(1, 12)
        if c[3] == 0:
            continue
        q = f"{c[3]}*x^4+{c[2]}*x^3+{c[1]}*x^2+{c[0]}*x+{t0 * t0}"
        if pari("poldisc")(pari(q)) == 0:
            continue
        quartics.append(quartic_record(f"random-{len(quartics)}", q, (0, t0)))
    json.dump({"conics": conics, "quartics": quartics}, open(args.out, "w"), indent=1)


if __name__ == "__main__":
    main()
