#!/usr/bin/env python3
"""Cell complex of straight closed curves on the flat torus R^2/Z^2.

Input (JSON on stdin or a file argument):
  {"curves": [{"name": "a0", "slope": [1, 0], "offset": [0, "1/2"]}, ...],
   "z": [x, y], "w": [x, y],            # optional basepoint coordinates
   "keep": ["a0", "b0"]}                # optional subset of curves to emit
Curve families come from the first letter of the name (a, b or d).
Prints a diagram in the floercalc JSON format.
"""
import itertools
import json
import math
import sys
from fractions import Fraction as F


def frac(v):
    return F(v) if not isinstance(v, str) else F(v)


def load_curves(spec):
    curves = []
    for c in spec["curves"]:
        p, q = c["slope"]
        if math.gcd(p, q) != 1:
            sys.exit(f"slope of {c['name']} is not primitive")
        curves.append({"name": c["name"], "v": (p, q), "o": tuple(frac(x) for x in c["offset"])})
    return curves


def intersections(c1, c2):
    (p1, q1), (p2, q2) = c1["v"], c2["v"]
    det = p1 * (-q2) - (-p2) * q1
    if det == 0:
        return []
    bound = abs(p1) + abs(q1) + abs(p2) + abs(q2) + 2
    out = set()
    for kx, ky in itertools.product(range(-bound, bound + 1), repeat=2):
        rx = c2["o"][0] - c1["o"][0] + kx
        ry = c2["o"][1] - c1["o"][1] + ky
        # t v1 - s v2 = r
        t = F(rx * (-q2) - (-p2) * ry, det)
        s = F(p1 * ry - q1 * rx, det)
        if 0 <= t < 1 and 0 <= s < 1:
            out.add((t, s))
    if len(out) != abs(det):
        sys.exit(f"expected {abs(det)} intersections of {c1['name']} and {c2['name']}, found {len(out)}")
    return sorted(out)


def build(spec):
    curves = load_curves(spec)
    fam_order = {"a": 0, "b": 1, "d": 2}
    points = []  # (name, {curve index: t})
    on_curve = [[] for _ in curves]
    for i, j in itertools.combinations(range(len(curves)), 2):
        for n, (t, s) in enumerate(intersections(curves[i], curves[j])):
            a, b = sorted([i, j], key=lambda k: (fam_order[curves[k]["name"][0]], curves[k]["name"]))
            pid = len(points)
            points.append({"name": f"{curves[a]['name']}.{curves[b]['name']}#{n}", "t": {i: t, j: s}})
            on_curve[i].append((t, pid))
            on_curve[j].append((s, pid))
    coords = {}
    for pid, p in enumerate(points):
        ci, t = next(iter(p["t"].items()))
        c = curves[ci]
        coords[pid] = tuple((c["o"][k] + t * c["v"][k]) % 1 for k in range(2))
    triple = {}
    for pid, xy in coords.items():
        if xy in triple:
            sys.exit(f"triple point at {xy}")
        triple[xy] = pid
    order = [[pid for _, pid in sorted(lst)] for lst in on_curve]
    tpos = [{pid: t for t, pid in sorted(lst)} for lst in on_curve]
    pos = [{pid: k for k, pid in enumerate(o)} for o in order]

    # rays at each point: (angle, curve, direction)
    def angle(v, sgn):
        return math.atan2(sgn * v[1], sgn * v[0])

    rays = {pid: [] for pid in range(len(points))}
    for ci, o in enumerate(order):
        for pid in o:
            for sgn in (1, -1):
                rays[pid].append((angle(curves[ci]["v"], sgn), ci, sgn))

    def dart_from_ray(pid, ci, sgn):
        k = pos[ci][pid]
        m = len(order[ci])
        return (ci, k if sgn > 0 else (k - 1) % m, sgn)

    def dart_end(d):
        ci, arc, sgn = d
        m = len(order[ci])
        return order[ci][(arc + 1) % m] if sgn > 0 else order[ci][arc]

    def next_dart(d):
        ci, arc, sgn = d
        p = dart_end(d)
        back = angle(curves[ci]["v"], -sgn)
        best = None
        for a, cj, s in rays[p]:
            if cj == ci and s == -sgn:
                continue
            turn = (back - a) % (2 * math.pi)  # clockwise from the back ray
            if best is None or turn < best[0]:
                best = (turn, cj, s)
        return dart_from_ray(p, best[1], best[2])

    darts = [(ci, a, s) for ci, o in enumerate(order) for a in range(max(1, len(o))) for s in (1, -1)]
    for ci, o in enumerate(order):
        if not o:
            sys.exit(f"curve {curves[ci]['name']} meets no other curve")
    seen, faces = set(), []
    for d in darts:
        if d in seen:
            continue
        face, cur = [], d
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            cur = next_dart(cur)
        faces.append(face)
    V, E = len(points), sum(len(o) for o in order)
    if V - E + len(faces) != 0:
        sys.exit("faces are not all discs; the curves do not cut the torus into cells")

    def displacement(d):
        ci, arc, sgn = d
        o = order[ci]
        t0 = tpos[ci][o[arc]]
        t1 = tpos[ci][o[(arc + 1) % len(o)]]
        dt = (t1 - t0) % 1 or 1
        v = curves[ci]["v"]
        return (sgn * dt * v[0], sgn * dt * v[1])

    def contains(face, xy):
        start = coords[dart_end(face[-1])]
        poly = [start]
        for d in face[:-1]:
            dx, dy = displacement(d)
            poly.append((poly[-1][0] + dx, poly[-1][1] + dy))
        for sx, sy in itertools.product(range(-3, 4), repeat=2):
            x, y = xy[0] + sx, xy[1] + sy
            inside = True
            for i in range(len(poly)):
                (x0, y0), (x1, y1) = poly[i], poly[(i + 1) % len(poly)]
                if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) <= 0:
                    inside = False
                    break
            if inside:
                return True
        return False

    def locate(xy):
        xy = tuple(frac(v) for v in xy)
        hits = [i for i, f in enumerate(faces) if contains(f, xy)]
        if len(hits) != 1:
            sys.exit(f"basepoint {xy} lies in {len(hits)} faces")
        return hits[0]

    out = {"genus": 1, "points": [{"name": p["name"]} for p in points]}
    for key, fam in (("alpha", "a"), ("beta", "b"), ("delta", "d")):
        cs = [{"name": c["name"], "points": order[i]} for i, c in enumerate(curves) if c["name"][0] == fam]
        if cs or fam != "d":
            out[key] = cs
    out["regions"] = [{"boundary": [[curves[ci]["name"], a, s] for ci, a, s in f]} for f in faces]
    out["z"] = [locate(spec["z"])]
    out["w"] = [locate(spec["w"])] if "w" in spec else []
    return out


def main():
    src = open(sys.argv[1]) if len(sys.argv) > 1 else sys.stdin
    spec = json.load(src)
    if "keep" in spec:
        spec["curves"] = [c for c in spec["curves"] if c["name"] in spec["keep"]]
    print(json.dumps(build(spec)))


if __name__ == "__main__":
    main()
