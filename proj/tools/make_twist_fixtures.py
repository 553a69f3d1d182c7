#!/usr/bin/env python3
"""Writes the genus-one Dehn-twist fixtures under fixtures/diagrams/.

alpha is horizontal, beta vertical (they meet once, so the base diagram is S^3) and
delta has slope (1, n), meeting beta once and alpha n times. z goes next to the
crossing q = beta ∩ delta in a corner that the twist joins. Arriving at q along beta
the twisted curve turns right, so it wraps around the corner between the incoming beta
ray and the right-hand delta ray; the joined corners lie between the incoming beta ray
and the left-hand delta ray, and opposite to it. w goes in the opposite corner.
"""
import json
import math
import os
import sys
from fractions import Fraction as F

sys.path.insert(0, os.path.dirname(__file__))
from torus_diagram import build  # noqa: E402

OUT = os.path.join(os.path.dirname(__file__), "..", "fixtures", "diagrams")
ALPHA = {"name": "a0", "slope": [1, 0], "offset": ["0", "1/2"]}
BETA = {"name": "b0", "slope": [0, 1], "offset": ["1/2", "0"]}


def corner_points(delta, flip=False):
    (p, q), (ox, oy) = delta["slope"], [F(v) for v in delta["offset"]]
    # beta is x = 1/2; solve ox + t p = 1/2 (mod 1)
    t = ((F(1, 2) - ox) / p) % 1
    qx, qy = F(1, 2), (oy + t * q) % 1
    u = (0.0, 1.0)  # travel direction along beta
    out = (p / math.hypot(p, q), q / math.hypot(p, q))
    if u[0] * out[1] - u[1] * out[0] < 0:  # the delta ray to the left of the incoming beta
        out = (-out[0], -out[1])
    if flip:  # the other pair of corners: a deliberately wrong placement
        out = (-out[0], -out[1])
    eps = 0.002

    def at(dx, dy):
        return [str((qx + F(dx * eps).limit_denominator(100000)) % 1), str((qy + F(dy * eps).limit_denominator(100000)) % 1)]

    z = at(-u[0] + out[0], -u[1] + out[1])
    w = at(u[0] - out[0], u[1] - out[1])
    return z, w


def emit(name, delta, note, flip=False):
    z, w = corner_points(delta, flip)
    spec = {"curves": [ALPHA, BETA, delta], "z": z, "w": w}
    refined = build(spec)
    base = build({"curves": [ALPHA, BETA], "z": z})
    refined["note"] = note
    base["note"] = "base diagram for " + name + ": alpha and beta meet once (S^3)"
    for suffix, d in (("_base", base), ("_delta", refined)):
        with open(os.path.join(OUT, name + suffix + ".json"), "w") as fh:
            json.dump(d, fh, indent=1)
            fh.write("\n")


def main():
    os.makedirs(OUT, exist_ok=True)
    emit("twist_n0", {"name": "d0", "slope": [1, 0], "offset": ["0", "1/5"]},
         "delta parallel to alpha: meets beta once and alpha not at all")
    for n in (2, 3):
        emit(f"twist_n{n}", {"name": "d0", "slope": [1, n], "offset": ["3/10", "13/100"]},
             f"delta of slope (1,{n}): meets beta once and alpha {n} times")
    emit("twist_n1", {"name": "d0", "slope": [1, 1], "offset": ["3/10", "13/100"]},
         "delta of slope (1,1); z sits in the corner the twist joins")
    emit("twist_wrong_corner", {"name": "d0", "slope": [1, 2], "offset": ["3/10", "13/100"]},
         "as twist_n2 but z in a corner the twist does not join", flip=True)
    emit("twist_double", {"name": "d0", "slope": [2, 1], "offset": ["3/10", "13/100"]},
         "delta of slope (2,1) meets beta twice")


if __name__ == "__main__":
    main()
