"""Triangle meshes of ellipsoids for external viewers (JSON or Wavefront OBJ)."""
import numpy as np

RANK_TOL = 1e-9


def uv_sphere(n_lon=64, n_lat=32):
    """Unit sphere with single-vertex poles; latitude rings at k*pi/n_lat."""
    theta = np.pi * np.arange(1, n_lat) / n_lat
    phi = 2 * np.pi * np.arange(n_lon) / n_lon
    st, ct = np.sin(theta)[:, None], np.cos(theta)[:, None]
    ring = np.stack([st * np.cos(phi), st * np.sin(phi), ct * np.ones_like(phi)],
                    axis=-1).reshape(-1, 3)
    verts = np.vstack([[0.0, 0.0, 1.0], ring, [0.0, 0.0, -1.0]])
    south = len(verts) - 1

    def idx(r, j):
        return 1 + r * n_lon + (j % n_lon)

    faces = []
    for j in range(n_lon):
        faces.append([0, idx(0, j), idx(0, j + 1)])
    for r in range(n_lat - 2):
        for j in range(n_lon):
            a, b = idx(r, j), idx(r, j + 1)
            c, d = idx(r + 1, j), idx(r + 1, j + 1)
            faces.append([a, c, b])
            faces.append([b, c, d])
    for j in range(n_lon):
        faces.append([south, idx(n_lat - 2, j + 1), idx(n_lat - 2, j)])
    return verts, np.array(faces, dtype=np.int64)


def disc(n_lon=64, n_rad=16):
    """Unit disc in the xy plane: centre vertex plus concentric rings."""
    phi = 2 * np.pi * np.arange(n_lon) / n_lon
    rad = np.arange(1, n_rad + 1) / n_rad
    ring = np.stack([rad[:, None] * np.cos(phi), rad[:, None] * np.sin(phi),
                     np.zeros((n_rad, n_lon))], axis=-1).reshape(-1, 3)
    verts = np.vstack([[0.0, 0.0, 0.0], ring])

    def idx(r, j):
        return 1 + r * n_lon + (j % n_lon)

    faces = [[0, idx(0, j), idx(0, j + 1)] for j in range(n_lon)]
    for r in range(n_rad - 1):
        for j in range(n_lon):
            a, b = idx(r, j), idx(r, j + 1)
            c, d = idx(r + 1, j), idx(r + 1, j + 1)
            faces.append([a, c, b])
            faces.append([b, c, d])
    return verts, np.array(faces, dtype=np.int64)


def ellipsoid_mesh(E, lengths, axes, n_lon=64, n_lat=32):
    """Mesh of the ellipsoid E; lower-rank ellipsoids become a disc, segment or point.

    Full-rank ellipsoids are the image of a UV sphere under nu -> c + T_tilde nu.
    Returns ``(kind, vertices, faces, lines)``.
    """
    rank = int(np.sum(lengths > RANK_TOL))
    if E.singular_b or rank == 0:
        return "point", E.c[None, :].copy(), np.zeros((0, 3), dtype=np.int64), []
    if rank == 1:
        d = lengths[0] * axes[:, 0]
        return "segment", np.vstack([E.c - d, E.c + d]), np.zeros((0, 3), dtype=np.int64), [[0, 1]]
    if rank == 2:
        v, f = disc(n_lon, max(2, n_lat // 2))
        frame = np.column_stack([lengths[0] * axes[:, 0], lengths[1] * axes[:, 1]])
        return "disc", E.c + v[:, :2] @ frame.T, f, []
    v, f = uv_sphere(n_lon, n_lat)
    return "ellipsoid", E.c + v @ E.T_tilde.T, f, []


def mesh_document(E, lengths, axes, meta, n_lon=64, n_lat=32):
    kind, v, f, lines = ellipsoid_mesh(E, lengths, axes, n_lon, n_lat)
    sv, sf = uv_sphere(n_lon, n_lat)
    doc = {
        "vertices": v.tolist(),
        "faces": f.tolist(),
        "meta": dict(meta, kind=kind),
        "bloch_sphere": {"vertices": sv.tolist(), "faces": sf.tolist()},
    }
    if lines:
        doc["lines"] = lines
    return doc


def to_obj(doc):
    out = ["# ellipsoid and reference Bloch sphere",
           f"# kind={doc['meta']['kind']} class={doc['meta'].get('class')} chi={doc['meta'].get('chi')}",
           "o ellipsoid"]
    out += [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in doc["vertices"]]
    out += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in doc["faces"]]
    out += [f"l {a + 1} {b + 1}" for a, b in doc.get("lines", [])]
    if len(doc["vertices"]) == 1:
        out.append("p 1")
    offset = len(doc["vertices"])
    out.append("o bloch_sphere")
    sphere = doc["bloch_sphere"]
    out += [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in sphere["vertices"]]
    out += [f"f {a + 1 + offset} {b + 1 + offset} {c + 1 + offset}" for a, b, c in sphere["faces"]]
    return "\n".join(out) + "\n"
