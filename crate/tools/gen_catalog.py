#!/usr/bin/env python3
"""Regenerate the embedded solid data under crates/core/data/.

Platonic and Archimedean solids come from their standard Cartesian
coordinates (convex hull, coplanar facets merged) scaled to unit edge
length. Catalan solids are the polar reciprocals of their Archimedean
partners rescaled to unit midradius.

Usage: python3 tools/gen_catalog.py [out_dir]
"""
import itertools
import json
import math
import os
import sys

import numpy as np
from scipy.spatial import ConvexHull

PHI = (1 + 5 ** 0.5) / 2
SQ2 = 2 ** 0.5


def signs(p, parity=None):
    """All sign changes of the nonzero entries of p.

    parity: None for all, 'even'/'odd' to keep an even/odd number of
    positive entries among the nonzero ones.
    """
    out = []
    idx = [i for i, v in enumerate(p) if v != 0]
    for bits in itertools.product([1, -1], repeat=len(idx)):
        q = list(p)
        for i, s in zip(idx, bits):
            q[i] = s * q[i]
        plus = sum(1 for s in bits if s > 0)
        if parity == "even" and plus % 2:
            continue
        if parity == "odd" and plus % 2 == 0:
            continue
        out.append(tuple(q))
    return out


def even_perms(p):
    x, y, z = p
    return [(x, y, z), (y, z, x), (z, x, y)]


def odd_perms(p):
    x, y, z = p
    return [(x, z, y), (z, y, x), (y, x, z)]


def all_perms(p):
    return list(itertools.permutations(p))


def uniq(points):
    out = []
    for p in points:
        if not any(np.allclose(p, q, atol=1e-9) for q in out):
            out.append(p)
    return np.array(out, dtype=float)


def perm_signs(base, perms=all_perms, parity=None):
    pts = []
    for b in base:
        for s in signs(b, parity):
            pts.extend(perms(s))
    return uniq(pts)


def hull_faces(pts):
    hull = ConvexHull(pts)
    planes = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        n, off = eq[:3], eq[3]
        found = None
        for k, (n2, off2, vs) in enumerate(planes):
            if np.allclose(n, n2, atol=1e-7) and abs(off - off2) < 1e-7:
                found = k
                break
        if found is None:
            planes.append((n, off, set(simplex)))
        else:
            planes[found][2].update(simplex)
    faces = []
    for n, _, vs in planes:
        vs = list(vs)
        c = pts[vs].mean(axis=0)
        u = pts[vs[0]] - c
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        ang = [math.atan2(np.dot(pts[v] - c, w), np.dot(pts[v] - c, u)) for v in vs]
        faces.append([v for _, v in sorted(zip(ang, vs))])
    return faces


def order_faces(pts, faces):
    def key(f):
        c = pts[f].mean(axis=0)
        return (round(-c[2], 6), round(math.atan2(c[1], c[0]), 6), len(f))
    return sorted(faces, key=key)


def normalize_edge(pts, faces):
    f = faces[0]
    e = np.linalg.norm(pts[f[0]] - pts[f[1]])
    return pts / e


def solid_from_points(pts):
    pts = pts - pts.mean(axis=0)
    faces = hull_faces(pts)
    pts = normalize_edge(pts, faces)
    return pts, order_faces(pts, faces)


def tribonacci():
    return (1 + (19 - 3 * 33 ** 0.5) ** (1 / 3) + (19 + 3 * 33 ** 0.5) ** (1 / 3)) / 3


def snub_dodecahedron_points():
    # xi is the real root of xi^3 - 2 xi = phi
    xi = np.roots([1, 0, -2, -PHI])
    xi = float(xi[np.argmin(abs(xi.imag))].real)
    a = xi - 1 / xi
    b = xi * PHI + PHI ** 2 + PHI / xi
    base = [
        (2 * a, 2, 2 * b),
        (a + b / PHI + PHI, -a * PHI + b + 1 / PHI, a / PHI + b * PHI - 1),
        (a + b / PHI - PHI, a * PHI - b + 1 / PHI, a / PHI + b * PHI + 1),
        (-a / PHI + b * PHI + 1, -a + b / PHI - PHI, a * PHI + b - 1 / PHI),
        (-a / PHI + b * PHI - 1, a - b / PHI - PHI, a * PHI + b + 1 / PHI),
    ]
    pts = []
    for p in base:
        for s in signs(p, "even"):
            pts.extend(even_perms(s))
    return uniq(pts)


def snub_cube_points():
    t = tribonacci()
    p = (1.0, 1 / t, t)
    pts = []
    for s in signs(p, "even"):
        pts.extend(even_perms(s))
    for s in signs(p, "odd"):
        pts.extend(odd_perms(s))
    return uniq(pts)


def platonic():
    return {
        "tetrahedron": uniq([s for s in signs((1, 1, 1), "odd")]),
        "cube": perm_signs([(1, 1, 1)]),
        "octahedron": perm_signs([(1, 0, 0)]),
        "dodecahedron": uniq(
            list(perm_signs([(1, 1, 1)]))
            + list(perm_signs([(0, 1 / PHI, PHI)], even_perms))
        ),
        "icosahedron": perm_signs([(0, 1, PHI)], even_perms),
    }


def archimedean():
    p = PHI
    return {
        "truncated-tetrahedron": perm_signs([(3, 1, 1)], all_perms, "odd"),
        "cuboctahedron": perm_signs([(1, 1, 0)]),
        "truncated-cube": perm_signs([(SQ2 - 1, 1, 1)]),
        "truncated-octahedron": perm_signs([(0, 1, 2)]),
        "rhombicuboctahedron": perm_signs([(1, 1, 1 + SQ2)]),
        "truncated-cuboctahedron": perm_signs([(1, 1 + SQ2, 1 + 2 * SQ2)]),
        "snub-cube": snub_cube_points(),
        "icosidodecahedron": perm_signs(
            [(0, 0, p), (0.5, p / 2, p * p / 2)], even_perms
        ),
        "truncated-dodecahedron": perm_signs(
            [(0, 1 / p, 2 + p), (1 / p, p, 2 * p), (p, 2, p + 1)], even_perms
        ),
        "truncated-icosahedron": perm_signs(
            [(0, 1, 3 * p), (1, 2 + p, 2 * p), (p, 2, p ** 3)], even_perms
        ),
        "rhombicosidodecahedron": perm_signs(
            [(1, 1, p ** 3), (p * p, p, 2 * p), (2 + p, 0, p * p)], even_perms
        ),
        "truncated-icosidodecahedron": perm_signs(
            [
                (1 / p, 1 / p, 3 + p),
                (2 / p, p, 1 + 2 * p),
                (1 / p, p * p, -1 + 3 * p),
                (2 * p - 1, 2, 2 + p),
                (p, 3, 2 * p),
            ],
            even_perms,
        ),
        "snub-dodecahedron": snub_dodecahedron_points(),
    }


CATALAN = {
    "truncated-tetrahedron": "triakis-tetrahedron",
    "cuboctahedron": "rhombic-dodecahedron",
    "truncated-cube": "triakis-octahedron",
    "truncated-octahedron": "tetrakis-hexahedron",
    "rhombicuboctahedron": "deltoidal-icositetrahedron",
    "truncated-cuboctahedron": "disdyakis-dodecahedron",
    "snub-cube": "pentagonal-icositetrahedron",
    "icosidodecahedron": "rhombic-triacontahedron",
    "truncated-dodecahedron": "triakis-icosahedron",
    "truncated-icosahedron": "pentakis-dodecahedron",
    "rhombicosidodecahedron": "deltoidal-hexecontahedron",
    "truncated-icosidodecahedron": "disdyakis-triacontahedron",
    "snub-dodecahedron": "pentagonal-hexecontahedron",
}


def polar_dual(pts, faces):
    # rescale to unit midradius
    a, b = faces[0][0], faces[0][1]
    mid = np.linalg.norm((pts[a] + pts[b]) / 2)
    pts = pts / mid
    dual_pts = []
    for f in faces:
        c = pts[f].mean(axis=0)
        v0, v1, v2 = pts[f[0]], pts[f[1]], pts[f[2]]
        n = np.cross(v1 - v0, v2 - v0)
        n /= np.linalg.norm(n)
        d = float(np.dot(n, v0))
        if d < 0:
            n, d = -n, -d
        dual_pts.append(n / d)
    dual_pts = np.array(dual_pts)
    # one dual face per primal vertex: faces around it in cyclic order
    dual_faces = []
    for v in range(len(pts)):
        around = [i for i, f in enumerate(faces) if v in f]
        dual_faces.append(around)
    out = []
    for ring in dual_faces:
        c = dual_pts[ring].mean(axis=0)
        n = c / np.linalg.norm(c)
        u = dual_pts[ring[0]] - c
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        ang = [math.atan2(np.dot(dual_pts[i] - c, w), np.dot(dual_pts[i] - c, u)) for i in ring]
        out.append([i for _, i in sorted(zip(ang, ring))])
    return dual_pts, order_faces(dual_pts, out)


def check(name, pts, faces):
    v, f = len(pts), len(faces)
    e = sum(len(x) for x in faces) // 2
    assert v - e + f == 2, (name, v, e, f)
    for face in faces:
        c = pts[face].mean(axis=0)
        a, b = pts[face[0]] - c, pts[face[1]] - c
        assert np.dot(np.cross(a, b), c) > 0, name


def dump(out_dir, name, pts, faces):
    check(name, pts, faces)
    data = {
        "name": name,
        "vertices": [[float(f"{x:.17g}") for x in p] for p in pts],
        "faces": [[int(i) for i in f] for f in faces],
    }
    with open(os.path.join(out_dir, name + ".json"), "w") as fh:
        json.dump(data, fh, indent=None, separators=(",", ":"))
        fh.write("\n")
    print(f"{name:32s} V={len(pts):3d} F={len(faces):3d}")


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "crates", "core", "data"
    )
    os.makedirs(out_dir, exist_ok=True)
    for name, pts in platonic().items():
        dump(out_dir, name, *solid_from_points(pts))
    for name, pts in archimedean().items():
        pts, faces = solid_from_points(pts)
        dump(out_dir, name, pts, faces)
        dump(out_dir, CATALAN[name], *polar_dual(pts, faces))


if __name__ == "__main__":
    main()
