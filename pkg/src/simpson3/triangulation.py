"""Enumeration of the 74 triangulations of the 3-cube and exact classification.

Every strictly positive 2x2x2 table lifts the cube vertices to heights
(the log-entries) in 4-space; the upper envelope of the lifted convex hull
projects to a triangulation of the cube.  This module enumerates all
triangulations combinatorially, derives for each one the set of strict sign
conditions on the 20 balanced forms that characterizes the tables inducing
it, and classifies tables either exactly (rational arithmetic) or in bulk
(vectorized floating point with a degeneracy margin).

All geometric predicates during enumeration are integer-exact: tetrahedron
volumes, barycentric functionals, and pairwise intersection tests use only
integer determinants on the 0/1 vertex coordinates.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CatalogError, DegenerateTable, DomainError
from .tables import (
    FACES,
    FORM_COEFFS,
    FORM_INDEX,
    FORM_LETTERS,
    Table3,
    VERTICES,
    eval_form_signs,
    face_vertices,
    vertex_bits,
)
from . import symmetry

VERTEX_COORDS = tuple(vertex_bits(v) for v in VERTICES)

FORM_MATRIX = np.array(FORM_COEFFS, dtype=np.float64)          # (20, 8)
FORM_NORMS = np.linalg.norm(FORM_MATRIX, axis=1)
_POW2 = (1 << np.arange(20, dtype=np.int64))

DEFAULT_TOLERANCE = 1e-9


def _det3(r0, r1, r2) -> int:
    return (
        r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
        - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
    )


def _det4(rows) -> int:
    total = 0
    for j in range(4):
        sub = [[row[c] for c in range(4) if c != j] for row in rows[1:]]
        term = rows[0][j] * _det3(sub[0], sub[1], sub[2])
        total += term if j % 2 == 0 else -term
    return total


def tetrahedron_volume_sixths(vertices: Sequence[int]) -> int:
    """Volume in units of one sixth of the cube; zero iff degenerate."""
    p0 = VERTEX_COORDS[vertices[0]]
    rows = [
        tuple(VERTEX_COORDS[v][k] - p0[k] for k in range(3)) for v in vertices[1:]
    ]
    return abs(_det3(*rows))


@dataclass(frozen=True)
class Tetrahedron:
    """Four affinely independent cube vertices, stored sorted."""

    vertices: tuple[int, int, int, int]

    def __init__(self, vertices: Iterable[int]):
        verts = tuple(sorted(vertices))
        if len(verts) != 4 or len(set(verts)) != 4:
            raise DomainError("a tetrahedron needs 4 distinct vertices")
        if any(not 0 <= v <= 7 for v in verts):
            raise DomainError("vertex indices must be 0..7")
        if tetrahedron_volume_sixths(verts) == 0:
            raise DomainError(f"vertices {verts} are coplanar")
        object.__setattr__(self, "vertices", verts)

    @property
    def volume_sixths(self) -> int:
        return tetrahedron_volume_sixths(self.vertices)

    def has_hyperdiagonal(self) -> bool:
        return any(v ^ 7 in self.vertices for v in self.vertices)


@dataclass(frozen=True)
class Triangulation:
    """A catalog entry: tetrahedra plus every derived attribute.

    constraints is the exact membership test: a positive table induces this
    triangulation iff its form signs strictly satisfy every (letter, sign)
    pair.  face_diagonals is indexed in FACES order; vertex_incidence packs,
    for each vertex, which of its three facet diagonals pass through it
    (bit 2 for the x-facet, bit 1 for the y-facet, bit 0 for the z-facet).
    """

    canonical_id: int
    tetrahedra: tuple[Tetrahedron, ...]
    constraints: frozenset[tuple[str, int]]
    face_diagonals: tuple[tuple[int, int], ...]
    vertex_incidence: tuple[int, ...]
    full_vertices: tuple[int, ...]
    empty_vertices: tuple[int, ...]
    has_hyperdiagonal: bool
    anti_aligned_axes: int
    type_class: str
    orbit_rep: int

    def encoding(self) -> tuple[tuple[int, ...], ...]:
        return tuple(t.vertices for t in self.tetrahedra)

    def tet_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(t.vertices) for t in self.tetrahedra)


@dataclass(frozen=True)
class TriangulationFeatures:
    face_diagonals: tuple[tuple[int, int], ...]
    full_vertices: tuple[int, ...]
    empty_vertices: tuple[int, ...]
    has_hyperdiagonal: bool
    type_class: str


def features(t: Triangulation) -> TriangulationFeatures:
    """Structural features of a catalog entry."""
    return TriangulationFeatures(
        t.face_diagonals,
        t.full_vertices,
        t.empty_vertices,
        t.has_hyperdiagonal,
        t.type_class,
    )


# ---------------------------------------------------------------------------
# Integer geometry for enumeration


def _barycentric_functionals(tet: Sequence[int]):
    """Integer affine functionals, one per vertex of the tetrahedron, positive
    inside, vanishing on the opposite facet, as coefficients on (1, x, y, z)."""
    m = [(1,) + VERTEX_COORDS[v] for v in tet]
    d = _det4(m)
    s = 1 if d > 0 else -1
    funs = []
    for i in range(4):
        coeffs = []
        for j in range(4):
            sub = [
                [m[r][c] for c in range(4) if c != j] for r in range(4) if r != i
            ]
            minor = _det3(sub[0], sub[1], sub[2])
            coeffs.append(s * minor if (i + j) % 2 == 0 else -s * minor)
        funs.append(tuple(coeffs))
    return tuple(funs)


def _nondegenerate_tets() -> list[tuple[int, ...]]:
    return [
        comb
        for comb in itertools.combinations(VERTICES, 4)
        if tetrahedron_volume_sixths(comb) != 0
    ]


def _intersect_properly(tet_a, tet_b, funs_a, funs_b) -> bool:
    """Whether the two tetrahedra meet in a common face (possibly empty).

    The intersection polytope is cut out by the eight barycentric functionals.
    Its extreme points are enumerated exactly over all functional triples; the
    intersection is a common face iff every extreme point is a shared vertex.
    """
    shared = set(tet_a) & set(tet_b)
    funs = funs_a + funs_b
    for ia, ib, ic in itertools.combinations(range(8), 3):
        fa, fb, fc = funs[ia], funs[ib], funs[ic]
        d = _det3(fa[1:], fb[1:], fc[1:])
        if d == 0:
            continue
        b = (-fa[0], -fb[0], -fc[0])
        nx = _det3((b[0], fa[2], fa[3]), (b[1], fb[2], fb[3]), (b[2], fc[2], fc[3]))
        ny = _det3((fa[1], b[0], fa[3]), (fb[1], b[1], fb[3]), (fc[1], b[2], fc[3]))
        nz = _det3((fa[1], fa[2], b[0]), (fb[1], fb[2], b[1]), (fc[1], fc[2], b[2]))
        sd = 1 if d > 0 else -1
        feasible = True
        for f in funs:
            val = f[0] * d + f[1] * nx + f[2] * ny + f[3] * nz
            if val * sd < 0:
                feasible = False
                break
        if not feasible:
            continue
        if nx not in (0, d) or ny not in (0, d) or nz not in (0, d):
            return False
        vertex = ((nx == d) << 2) | ((ny == d) << 1) | (nz == d)
        if vertex not in shared:
            return False
    return True


def _enumerate_encodings() -> list[tuple[tuple[int, ...], ...]]:
    """All interior-disjoint tetrahedron covers of the cube, as sorted tuples
    of sorted vertex tuples."""
    tets = _nondegenerate_tets()
    funs = [_barycentric_functionals(t) for t in tets]
    vols = [tetrahedron_volume_sixths(t) for t in tets]
    n = len(tets)
    compat_mask = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if _intersect_properly(tets[i], tets[j], funs[i], funs[j]):
                compat_mask[i] |= 1 << j
                compat_mask[j] |= 1 << i

    found: list[tuple[tuple[int, ...], ...]] = []

    def extend(chosen: list[int], volume: int, candidates: int, floor: int) -> None:
        if volume == 6:
            found.append(tuple(sorted(tets[i] for i in chosen)))
            return
        m = candidates
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if j < floor:
                continue
            if volume + vols[j] <= 6:
                chosen.append(j)
                extend(chosen, volume + vols[j], candidates & compat_mask[j], j + 1)
                chosen.pop()

    # every cover has a tetrahedron containing vertex 0; start there to avoid
    # revisiting permutations of the same cover
    for i in range(n):
        if 0 in tets[i]:
            extend([i], vols[i], compat_mask[i], i + 1)
    return sorted(found)


# ---------------------------------------------------------------------------
# Constraint derivation


def _affine_dependence(points: Sequence[int]) -> list[int]:
    """The unique (up to scale) integer affine dependence among 5 vertices."""
    m = [(1,) + VERTEX_COORDS[v] for v in points]
    lam = []
    for i in range(5):
        sub = [m[r] for r in range(5) if r != i]
        val = _det4(sub)
        lam.append(val if i % 2 == 0 else -val)
    g = 0
    for x in lam:
        g = math.gcd(g, abs(x))
    return [x // g for x in lam]


def derive_constraints(tetrahedra) -> frozenset[tuple[str, int]]:
    """The strict sign conditions characterizing the tables that induce the
    given triangulation.

    For each interior wall (a triangle shared by two tetrahedra) the unique
    affine dependence on the five involved vertices, normalized positive on
    the two apexes, must be negative on the height vector for the lifted
    surface to be locally concave across that wall.  Each such dependence is
    plus or minus one of the 20 forms, giving one (letter, sign) condition.
    """
    tet_tuples = []
    for t in tetrahedra:
        tet_tuples.append(tuple(t.vertices) if isinstance(t, Tetrahedron) else tuple(sorted(t)))
    out = set()
    sets = [set(t) for t in tet_tuples]
    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            wall = sets[a] & sets[b]
            if len(wall) != 3:
                continue
            apex_a = (sets[a] - wall).pop()
            apex_b = (sets[b] - wall).pop()
            points = sorted(wall) + [apex_a, apex_b]
            lam = _affine_dependence(points)
            if lam[3] == 0 or lam[4] == 0:
                raise CatalogError(f"wall dependence misses an apex: {points}")
            if lam[3] < 0:
                lam = [-x for x in lam]
            if lam[4] < 0:
                raise CatalogError(f"apex coefficients disagree in sign: {points}")
            vec = [0] * 8
            for coeff, v in zip(lam, points):
                vec[v] += coeff
            vec_t = tuple(vec)
            neg_t = tuple(-x for x in vec)
            for idx, coeffs in enumerate(FORM_COEFFS):
                if vec_t == coeffs:
                    out.add((FORM_LETTERS[idx], -1))
                    break
                if neg_t == coeffs:
                    out.add((FORM_LETTERS[idx], +1))
                    break
            else:
                raise CatalogError(f"wall dependence {vec_t} matches no form")
    return frozenset(out)


# ---------------------------------------------------------------------------
# Features


def _edge_set(encoding) -> set[tuple[int, int]]:
    edges = set()
    for tet in encoding:
        for a, b in itertools.combinations(tet, 2):
            edges.add((a, b))
    return edges


def _face_diagonals(encoding) -> tuple[tuple[int, int], ...]:
    from .tables import face_diagonal_pair

    edges = _edge_set(encoding)
    out = []
    for axis, value in FACES:
        first, second = face_diagonal_pair(axis, value)
        in_first, in_second = first in edges, second in edges
        if in_first == in_second:
            raise CatalogError(f"face {(axis, value)} has {in_first + in_second} diagonals")
        out.append(first if in_first else second)
    return tuple(out)


def _vertex_incidence(diagonals) -> tuple[int, ...]:
    by_face = dict(zip(FACES, diagonals))
    incidence = []
    for v in VERTICES:
        bits = 0
        for axis in range(3):
            diag = by_face[(axis, vertex_bits(v)[axis])]
            if v in diag:
                bits |= 1 << (2 - axis)
        incidence.append(bits)
    return tuple(incidence)


def _anti_aligned_axes(diagonals) -> int:
    by_face = dict(zip(FACES, diagonals))
    count = 0
    for axis in range(3):
        kinds = []
        for value in (0, 1):
            verts = face_vertices(axis, value)
            kinds.append(min(verts) in by_face[(axis, value)])
        if kinds[0] != kinds[1]:
            count += 1
    return count


def _type_label(tet_count: int, n_full: int, n_empty: int) -> str:
    """Symmetry type from structural features alone: the corner-cut covers are
    Type I; among the 6-tetrahedron triangulations the full/empty vertex
    counts separate the remaining five types."""
    if tet_count == 5:
        return "I"
    if n_full == 4:
        return "II"
    if n_full == 2 and n_empty == 2:
        return "III"
    if n_full == 0:
        return "IV"
    if n_full == 1:
        return "V"
    if n_full == 2 and n_empty == 0:
        return "VI"
    raise CatalogError(f"unclassifiable feature signature {(tet_count, n_full, n_empty)}")


# ---------------------------------------------------------------------------
# Catalog


class Catalog:
    """The immutable list of all 74 triangulations with lookup structures."""

    def __init__(self, entries: Sequence[Triangulation]):
        self.entries = tuple(entries)
        self._by_tets = {e.tet_sets(): e for e in self.entries}
        self._id_action: np.ndarray | None = None
        self._masks: np.ndarray | None = None
        self._vals: np.ndarray | None = None
        self._pattern_cache: dict[int, int] = {}
        self._validate()

    def _validate(self) -> None:
        if len(self.entries) != 74:
            raise CatalogError(f"expected 74 triangulations, got {len(self.entries)}")
        five = sum(1 for e in self.entries if len(e.tetrahedra) == 5)
        if five != 2:
            raise CatalogError(f"expected 2 five-tetrahedron covers, got {five}")
        for k, e in enumerate(self.entries):
            if e.canonical_id != k + 1:
                raise CatalogError("entries out of canonical order")
            if sum(t.volume_sixths for t in e.tetrahedra) != 6:
                raise CatalogError(f"entry {e.canonical_id} volumes do not fill the cube")
        reps = {e.orbit_rep for e in self.entries}
        if len(reps) != 6:
            raise CatalogError(f"expected 6 symmetry orbits, got {len(reps)}")
        labels = {self[r].type_class for r in reps}
        if len(labels) != 6:
            raise CatalogError("type labels are not distinct across orbits")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, canonical_id: int) -> Triangulation:
        if not 1 <= canonical_id <= len(self.entries):
            raise DomainError(f"unknown triangulation id {canonical_id}")
        return self.entries[canonical_id - 1]

    def entry_by_tets(self, tets) -> Triangulation:
        key = frozenset(frozenset(t) for t in tets)
        entry = self._by_tets.get(key)
        if entry is None:
            raise DomainError("tetrahedron set is not a triangulation of the cube")
        return entry

    def id_action(self) -> np.ndarray:
        """(48, 74) array: entry [s, i] is the id of GROUP[s] applied to id i+1."""
        if self._id_action is None:
            rank = {e.encoding(): e.canonical_id for e in self.entries}
            action = np.zeros((len(symmetry.GROUP), len(self.entries)), dtype=np.int64)
            for s, vmap in enumerate(symmetry.VERTEX_MAPS):
                for e in self.entries:
                    image = tuple(
                        sorted(tuple(sorted(vmap[v] for v in t.vertices)) for t in e.tetrahedra)
                    )
                    action[s, e.canonical_id - 1] = rank[image]
            for s in range(action.shape[0]):
                if len(set(action[s])) != len(self.entries):
                    raise CatalogError("symmetry action is not a bijection on ids")
            self._id_action = action
        return self._id_action

    def apply_symmetry(self, sigma: symmetry.CubeSymmetry, canonical_id: int) -> int:
        self[canonical_id]
        return int(self.id_action()[symmetry.GROUP_INDEX[sigma], canonical_id - 1])

    def orbit_representatives(self) -> tuple[int, ...]:
        return tuple(sorted({e.orbit_rep for e in self.entries}))

    def type_representative(self, label: str) -> Triangulation:
        for rep in self.orbit_representatives():
            if self[rep].type_class == label:
                return self[rep]
        raise DomainError(f"unknown type label {label!r}")

    def orbit_members(self, canonical_id: int) -> tuple[int, ...]:
        rep = self[canonical_id].orbit_rep
        return tuple(e.canonical_id for e in self.entries if e.orbit_rep == rep)

    def _constraint_bits(self):
        if self._masks is None:
            masks = np.zeros(len(self.entries), dtype=np.int64)
            vals = np.zeros(len(self.entries), dtype=np.int64)
            for k, e in enumerate(self.entries):
                for letter, sign in e.constraints:
                    bit = 1 << FORM_INDEX[letter]
                    masks[k] |= bit
                    if sign > 0:
                        vals[k] |= bit
            self._masks, self._vals = masks, vals
        return self._masks, self._vals

    def resolve_sign_pattern(self, code: int) -> int:
        """Catalog id for a fully nonzero sign pattern packed as 20 bits
        (bit i set iff form i positive)."""
        cached = self._pattern_cache.get(code)
        if cached is not None:
            return cached
        masks, vals = self._constraint_bits()
        hits = np.nonzero((code & masks) == vals)[0]
        if len(hits) != 1:
            raise CatalogError(
                f"sign pattern {code:020b} matches {len(hits)} constraint sets"
            )
        result = int(hits[0]) + 1
        self._pattern_cache[code] = result
        return result


def _build_catalog() -> Catalog:
    encodings = _enumerate_encodings()
    if len(encodings) != 74:
        raise CatalogError(f"enumeration produced {len(encodings)} covers, expected 74")
    rank = {enc: i + 1 for i, enc in enumerate(encodings)}

    action = np.zeros((len(symmetry.GROUP), len(encodings)), dtype=np.int64)
    for s, vmap in enumerate(symmetry.VERTEX_MAPS):
        for enc, cid in rank.items():
            image = tuple(sorted(tuple(sorted(vmap[v] for v in t)) for t in enc))
            action[s, cid - 1] = rank[image]
    orbit_rep = action.min(axis=0)

    entries = []
    for enc, cid in sorted(rank.items(), key=lambda kv: kv[1]):
        constraints = derive_constraints(enc)
        diagonals = _face_diagonals(enc)
        incidence = _vertex_incidence(diagonals)
        full = tuple(v for v in VERTICES if incidence[v] == 7)
        empty = tuple(v for v in VERTICES if incidence[v] == 0)
        tets = tuple(Tetrahedron(t) for t in enc)
        entries.append(
            Triangulation(
                canonical_id=cid,
                tetrahedra=tets,
                constraints=constraints,
                face_diagonals=diagonals,
                vertex_incidence=incidence,
                full_vertices=full,
                empty_vertices=empty,
                has_hyperdiagonal=any(t.has_hyperdiagonal() for t in tets),
                anti_aligned_axes=_anti_aligned_axes(diagonals),
                type_class=_type_label(len(tets), len(full), len(empty)),
                orbit_rep=int(orbit_rep[cid - 1]),
            )
        )
    catalog = Catalog(entries)
    catalog._id_action = action
    return catalog


def enumerate_triangulations() -> Catalog:
    """Build the full catalog from scratch (a few seconds of integer geometry)."""
    return _build_catalog()


@functools.lru_cache(maxsize=1)
def get_catalog() -> Catalog:
    """The shared catalog instance, built once per process."""
    return _build_catalog()


# ---------------------------------------------------------------------------
# Classification


def classify_exact(table: Table3, catalog: Catalog | None = None) -> Triangulation:
    """The triangulation induced by a strictly positive table, decided by the
    exact signs of the 20 forms.  Raises DegenerateTable when a vanishing sign
    prevents any constraint set from being strictly satisfied."""
    if catalog is None:
        catalog = get_catalog()
    signs = eval_form_signs(table).signs
    match = None
    for entry in catalog.entries:
        for letter, sign in entry.constraints:
            if signs[FORM_INDEX[letter]] != sign:
                break
        else:
            if match is not None:
                raise CatalogError("table satisfies two constraint sets")
            match = entry
    if match is not None:
        return match
    if all(s == 0 for s in signs):
        raise DegenerateTable("all forms vanish")
    if any(s == 0 for s in signs):
        raise DegenerateTable("a relevant form vanishes; no triangulation induced")
    raise CatalogError("nonzero sign vector matches no constraint set")


def classify_heights_batch(
    heights: np.ndarray,
    catalog: Catalog | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> np.ndarray:
    """Vectorized classification of height vectors (rows of log-entries).

    Returns 1-based catalog ids, with 0 marking rows discarded as degenerate:
    some form evaluation fell within tolerance * ||coeffs|| * max(1, ||h||inf)
    of zero, or the row was not finite.
    """
    if catalog is None:
        catalog = get_catalog()
    h = np.ascontiguousarray(heights, dtype=np.float64)
    if h.ndim != 2 or h.shape[1] != 8:
        raise DomainError("heights must be an (n, 8) array")
    with np.errstate(invalid="ignore"):
        values = h @ FORM_MATRIX.T
        scale = np.maximum(1.0, np.abs(h).max(axis=1))
        margin = tolerance * FORM_NORMS[None, :] * scale[:, None]
        degenerate = ~np.isfinite(h).all(axis=1)
        degenerate |= (np.abs(values) < margin).any(axis=1)
    codes = ((values > 0).astype(np.int64) @ _POW2)
    ids = np.zeros(len(h), dtype=np.int64)
    keep = ~degenerate
    kept_codes = codes[keep]
    if kept_codes.size:
        uniq, inverse = np.unique(kept_codes, return_inverse=True)
        resolved = np.array(
            [catalog.resolve_sign_pattern(int(c)) for c in uniq], dtype=np.int64
        )
        ids[keep] = resolved[inverse]
    return ids


def classify_float_oracle(
    heights: Sequence[float],
    catalog: Catalog | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Triangulation:
    """Independent classifier: computes the upper envelope of the 4-dimensional
    lift with a convex hull and reads the triangulation off the upper facets.

    Development and test oracle only; the exact path never calls this.
    """
    from scipy.spatial import ConvexHull

    if catalog is None:
        catalog = get_catalog()
    h = np.asarray(heights, dtype=np.float64)
    if h.shape != (8,):
        raise DomainError("oracle needs exactly 8 heights")
    if not np.isfinite(h).all():
        raise DomainError("heights must be finite")
    values = FORM_MATRIX @ h
    margin = tolerance * FORM_NORMS * max(1.0, float(np.abs(h).max()))
    if (np.abs(values) < margin).any():
        raise DegenerateTable("a form evaluation is within tolerance of zero")
    points = np.column_stack([np.array(VERTEX_COORDS, dtype=np.float64), h])
    hull = ConvexHull(points)
    upper = hull.equations[:, 3] > 1e-10
    tets = {tuple(sorted(simplex)) for simplex in hull.simplices[upper]}
    try:
        return catalog.entry_by_tets(tets)
    except DomainError:
        raise CatalogError(f"upper facets {sorted(tets)} are not a catalog entry") from None


# ---------------------------------------------------------------------------
# Catalog serialization


def catalog_to_json_obj(catalog: Catalog) -> dict:
    entries = []
    for e in catalog.entries:
        entries.append(
            {
                "canonicalId": e.canonical_id,
                "tetrahedra": [list(t.vertices) for t in e.tetrahedra],
                "constraints": [
                    {"form": letter, "sign": "+" if sign > 0 else "-"}
                    for letter, sign in sorted(e.constraints)
                ],
                "faceDiagonals": [list(d) for d in e.face_diagonals],
                "vertexIncidence": list(e.vertex_incidence),
                "fullVertices": list(e.full_vertices),
                "emptyVertices": list(e.empty_vertices),
                "hasHyperdiagonal": e.has_hyperdiagonal,
                "antiAlignedAxes": e.anti_aligned_axes,
                "typeClass": e.type_class,
                "orbitRep": e.orbit_rep,
                "orbitMembers": list(catalog.orbit_members(e.canonical_id)),
            }
        )
    return {"triangulationCount": len(catalog), "entries": entries}


def catalog_from_json_obj(obj: dict, verify: bool = True) -> Catalog:
    """Rebuild a catalog from its JSON export.  With verify on, every derived
    attribute is recomputed from the tetrahedra and compared."""
    entries = []
    for rec in obj["entries"]:
        tets = tuple(Tetrahedron(t) for t in rec["tetrahedra"])
        entry = Triangulation(
            canonical_id=rec["canonicalId"],
            tetrahedra=tets,
            constraints=frozenset(
                (c["form"], 1 if c["sign"] == "+" else -1) for c in rec["constraints"]
            ),
            face_diagonals=tuple(tuple(d) for d in rec["faceDiagonals"]),
            vertex_incidence=tuple(rec["vertexIncidence"]),
            full_vertices=tuple(rec["fullVertices"]),
            empty_vertices=tuple(rec["emptyVertices"]),
            has_hyperdiagonal=rec["hasHyperdiagonal"],
            anti_aligned_axes=rec["antiAlignedAxes"],
            type_class=rec["typeClass"],
            orbit_rep=rec["orbitRep"],
        )
        entries.append(entry)
    catalog = Catalog(entries)
    if verify:
        for e in catalog.entries:
            if derive_constraints(e.encoding()) != e.constraints:
                raise CatalogError(f"entry {e.canonical_id}: stored constraints differ")
            diagonals = _face_diagonals(e.encoding())
            if diagonals != e.face_diagonals:
                raise CatalogError(f"entry {e.canonical_id}: stored diagonals differ")
    return catalog


def catalog_to_json(catalog: Catalog) -> str:
    return json.dumps(catalog_to_json_obj(catalog), indent=2)
