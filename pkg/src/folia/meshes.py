"""Reference surface meshes and fields used by tests, fixtures and the CLI."""

from __future__ import annotations

import numpy as np

from .ingest import ScalarMesh

# fixed generic rotation so that no two icosphere vertices share a height
_TILT = (0.3141, 0.2718, 0.1618)


def _rotation(ax: float, ay: float, az: float) -> np.ndarray:
    cx, sx, cy, sy, cz, sz = np.cos(ax), np.sin(ax), np.cos(ay), np.sin(ay), np.cos(az), np.sin(az)
    rx = np.array([[1, 0, 0], [0, cx, -sx], [0, sx, cx]])
    ry = np.array([[cy, 0, sy], [0, 1, 0], [-sy, 0, cy]])
    rz = np.array([[cz, -sz, 0], [sz, cz, 0], [0, 0, 1]])
    return rz @ ry @ rx


def torus_mesh(nu: int = 32, nv: int = 32, R: float = 2.0, r: float = 0.7) -> ScalarMesh:
    """Torus standing upright (axis horizontal), field = height z."""
    i, j = np.meshgrid(np.arange(nu), np.arange(nv), indexing="ij")
    # half-step offset keeps the grid off the symmetry planes of the height
    u = 2 * np.pi * (i + 0.37) / nu
    v = 2 * np.pi * (j + 0.21) / nv
    x = (R + r * np.cos(v)) * np.cos(u)
    y = r * np.sin(v)
    z = (R + r * np.cos(v)) * np.sin(u)
    verts = np.stack([x, y, z], axis=-1).reshape(-1, 3)
    idx = (i * nv + j)
    a = idx
    b = ((i + 1) % nu) * nv + j
    c = ((i + 1) % nu) * nv + (j + 1) % nv
    d = i * nv + (j + 1) % nv
    tris = np.concatenate([np.stack([a, b, c], -1).reshape(-1, 3), np.stack([a, c, d], -1).reshape(-1, 3)])
    return ScalarMesh(verts, tris, verts[:, 2])


def icosphere(level: int = 3) -> ScalarMesh:
    """Unit icosphere, tilted by a fixed rotation, field = height z."""
    t = (1 + 5 ** 0.5) / 2
    verts = [
        (-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
        (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
        (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1),
    ]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    pts = [np.array(p, dtype=float) / np.linalg.norm(p) for p in verts]
    for _ in range(level):
        cache: dict[tuple[int, int], int] = {}

        def mid(a: int, b: int) -> int:
            key = (a, b) if a < b else (b, a)
            if key not in cache:
                m = pts[a] + pts[b]
                pts.append(m / np.linalg.norm(m))
                cache[key] = len(pts) - 1
            return cache[key]

        new = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new
    v = np.array(pts) @ _rotation(*_TILT).T
    return ScalarMesh(v, np.array(faces), v[:, 2])


def bump_field(vertices: np.ndarray, centers, amplitude: float, width: float) -> np.ndarray:
    out = vertices[:, 2].copy()
    for c in centers:
        d2 = np.sum((vertices - np.asarray(c)) ** 2, axis=1)
        out += amplitude * np.exp(-d2 / width**2)
    return out


BUMPS = ((np.sin(0.9), 0.0, np.cos(0.9)), (-np.sin(0.9), 0.0, np.cos(0.9)))


def bumpy_sphere(level: int = 3) -> ScalarMesh:
    """Height on the sphere plus two Gaussian bumps: one minimum, one saddle, two maxima."""
    mesh = icosphere(level)
    return mesh.with_field(bump_field(mesh.vertices, BUMPS, 0.8, 0.45))


def smooth_random_field(mesh: ScalarMesh, rng: np.random.Generator, terms: int = 3) -> np.ndarray:
    """Low-frequency random field: a few random plane waves in the embedding coordinates."""
    v = mesh.vertices
    scale = np.max(np.ptp(v, axis=0))
    out = np.zeros(len(v))
    for _ in range(terms):
        k = rng.normal(size=3) * (2.0 / scale)
        out += rng.uniform(0.5, 1.0) * np.sin(v @ k + rng.uniform(0, 2 * np.pi))
    return out + 1e-3 * rng.normal(size=len(v))




def monkey_saddle_sphere(level: int = 2, delta: float = 1e-3) -> ScalarMesh:
    """Height on the icosphere with a monkey saddle planted at a valence-6 vertex.

    The six link vertices alternate between ``f(v) + delta`` and ``f(v) - delta``,
    so the lower link has three components: a saddle of multiplicity two.
    """
    mesh = icosphere(level)
    z = mesh.vertices[:, 2]
    links = mesh.links
    v = min((i for i in range(len(z)) if len(links[i]) == 6), key=lambda i: abs(z[i]))
    field = z.copy()
    for j, w in enumerate(links[v]):
        field[w] = z[v] + (delta if j % 2 == 0 else -delta)
    return mesh.with_field(field)


MESHES = {
    "sphere": icosphere,
    "torus": torus_mesh,
    "bumpy_sphere": bumpy_sphere,
    "monkey": monkey_saddle_sphere,
}
