#!/usr/bin/env python3
"""Emit a PD code for the plat closure of a 4-strand braid word.

Usage: plat_pd.py WORD   e.g.  plat_pd.py "2A 2A 2A 2A 1B 2A"

Each token is <gap><over>: gap 1 crosses strands 0,1 (2 crosses 1,2, 3 crosses 2,3),
over is A when the strand coming from the upper left passes over.
"""
import json
import sys


def plat(events):
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    counter = [0]

    def new():
        counter[0] += 1
        parent[counter[0]] = counter[0]
        return counter[0]

    pos, crosses = [], []
    for ev in events:
        if ev[0] == "open":
            e = new()
            pos[ev[1]:ev[1]] = [e, e]
        elif ev[0] == "close":
            a, b = pos[ev[1]], pos[ev[1] + 1]
            parent[find(a)] = find(b)
            del pos[ev[1]:ev[1] + 2]
        else:
            i = ev[1]
            lt, lb = pos[i], pos[i + 1]
            rt, rb = new(), new()
            # counterclockwise from the upper right end
            crosses.append(([rt, lt, lb, rb], ev[2]))
            pos[i], pos[i + 1] = rt, rb
    if pos:
        raise ValueError("plat is not closed")
    cr = [([find(x) for x in s], o) for s, o in crosses]
    ends = {}
    for c, (s, _) in enumerate(cr):
        for k, e in enumerate(s):
            ends.setdefault(e, []).append((c, k))
    incoming, seen, labels = set(), set(), {}
    for e0 in sorted(ends):
        if e0 in seen:
            continue
        c, k = ends[e0][1]
        e = e0
        while e not in seen:
            seen.add(e)
            labels[e] = len(labels) + 1
            incoming.add((c, k))
            k2 = (k + 2) % 4
            e = cr[c][0][k2]
            a, b = ends[e]
            c, k = b if a == (c, k2) else a
    out = []
    for c, (s, o) in enumerate(cr):
        over = (1, 3) if o == "A" else (0, 2)
        u = [k for k in range(4) if k not in over and (c, k) in incoming][0]
        out.append([labels[s[(u + j) % 4]] for j in range(4)])
    return out


def main():
    word = sys.argv[1].split()
    events = [("open", 0), ("open", 2)]
    events += [("cross", int(t[0]) - 1, t[1]) for t in word]
    events += [("close", 0), ("close", 0)]
    pd = plat(events)
    print(json.dumps({"pd": ", ".join("X[%d,%d,%d,%d]" % tuple(x) for x in pd)}))


if __name__ == "__main__":
    main()
