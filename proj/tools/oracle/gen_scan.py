#!/usr/bin/env python3
"""Frozen PARI root numbers for the scan sub-grids.

Reads a grid dump (one object per scan name, cells carrying the specialized
curve and the values g(u) of the irreducible factors of the family
discriminant) and writes, for every cell with a curve, PARI's minimal model
and ellrootno.  PARI factors each g(u) itself and registers the primes with
addprimes before ellrootno.  Cells PARI cannot finish within the time limit
are omitted.

Usage: gen_scan.py GRIDS.json OUT.json [--seconds N]
"""
import argparse
import json

import cypari

pari = cypari.pari
pari.allocatemem(2 * 10**9)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("grids")
    ap.add_argument("out")
    ap.add_argument("--seconds", type=int, default=300)
    args = ap.parse_args()
    grids = json.load(open(args.grids))
    run = pari("(a, h) -> my(P = List()); for(i = 1, #h, my(F = factor(h[i])[,1]); for(k = 1, #F, listput(P, F[k]))); "
               "addprimes(Vec(P)); my(E = ellminimalmodel(ellinit(a))); my(w = ellrootno(E)); "
               "removeprimes(addprimes()); [E[1..5], w]")
    out = {}
    for name, grid in grids.items():
        cells = []
        for c in grid["cells"]:
            if "curve" not in c:
                continue
            a = pari("[" + ",".join(c["curve"]) + "]")
            h = pari("[" + ",".join(c.get("hints", [])) + "]")
            try:
                pari("alarm(%d)" % args.seconds)
                r = run(a, h)
                pari("alarm(0)")
            except cypari.PariError:
                print(name, c["n"], c["m"], "timeout")
                pari("removeprimes(addprimes())")
                continue
            except cypari._pari.AlarmInterrupt as e:
                print(name, c["n"], c["m"], "timeout", type(e).__name__)
                pari("removeprimes(addprimes())")
                continue
            print(name, c["n"], c["m"], int(r[1]), flush=True)
            cells.append({"n": c["n"], "m": c["m"], "u": c["u"], "minimal": [str(x) for x in r[0]], "w": int(r[1])})
        out[name] = cells
        print(name, len(cells))
    with open(args.out, "w") as f:
        json.dump(out, f, indent=1)


if __name__ == "__main__":
    main()
