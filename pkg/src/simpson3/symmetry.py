"""The 48 signed-permutation symmetries of the cube and their orbit machinery.

A symmetry permutes the three coordinate axes and then complements a subset
of them.  It acts on vertices by relabeling, on tables by precomposition with
the inverse relabeling, and on triangulations by relabeling every tetrahedron.
Orbit enumeration for single triangulations, ordered pairs, and summand-
unordered triples runs over catalog ids via the induced id permutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .tables import Table3, NonnegTable3, VERTICES, vertex_bits


@dataclass(frozen=True)
class CubeSymmetry:
    """Axis permutation followed by axis complementation.

    The image of a vertex u has coordinate i equal to u[perm[i]] XOR flips[i].
    """

    perm: tuple[int, int, int]
    flips: tuple[int, int, int]

    def vertex_map(self) -> tuple[int, ...]:
        """Image vertex index for each of the 8 vertices."""
        out = []
        for v in VERTICES:
            u = vertex_bits(v)
            w = tuple(u[self.perm[i]] ^ self.flips[i] for i in range(3))
            out.append((w[0] << 2) | (w[1] << 1) | w[2])
        return tuple(out)

    def compose(self, other: "CubeSymmetry") -> "CubeSymmetry":
        """The symmetry acting as self after other."""
        perm = tuple(other.perm[self.perm[i]] for i in range(3))
        flips = tuple(other.flips[self.perm[i]] ^ self.flips[i] for i in range(3))
        return CubeSymmetry(perm, flips)  # type: ignore[arg-type]

    def inverse(self) -> "CubeSymmetry":
        pinv = [0, 0, 0]
        for i in range(3):
            pinv[self.perm[i]] = i
        flips = tuple(self.flips[pinv[j]] for j in range(3))
        return CubeSymmetry(tuple(pinv), flips)  # type: ignore[arg-type]

    @staticmethod
    def identity() -> "CubeSymmetry":
        return CubeSymmetry((0, 1, 2), (0, 0, 0))


GROUP: tuple[CubeSymmetry, ...] = tuple(
    CubeSymmetry(perm, flips)
    for perm in itertools.permutations(range(3))
    for flips in itertools.product((0, 1), repeat=3)
)

GROUP_INDEX = {sigma: i for i, sigma in enumerate(GROUP)}

VERTEX_MAPS: tuple[tuple[int, ...], ...] = tuple(sigma.vertex_map() for sigma in GROUP)

INVERSE_INDEX: tuple[int, ...] = tuple(GROUP_INDEX[sigma.inverse()] for sigma in GROUP)

ANTIPODAL_MAP = CubeSymmetry((0, 1, 2), (1, 1, 1))


def apply_vertex(sigma: CubeSymmetry, v: int) -> int:
    return VERTEX_MAPS[GROUP_INDEX[sigma]][v]


def apply_table(sigma: CubeSymmetry, table):
    """Relabeled table: the image assigns to sigma(v) the old value at v."""
    vmap = VERTEX_MAPS[GROUP_INDEX[sigma]]
    out = [None] * len(VERTICES)
    for v in VERTICES:
        out[vmap[v]] = table.entries[v]
    return type(table)(out)


def apply_vertex_set(sigma: CubeSymmetry, vertices: Iterable[int]) -> frozenset[int]:
    vmap = VERTEX_MAPS[GROUP_INDEX[sigma]]
    return frozenset(vmap[v] for v in vertices)


def apply(sigma: CubeSymmetry, x):
    """Generic group action: vertices, tables, tetrahedra, triangulations."""
    if isinstance(x, int):
        return apply_vertex(sigma, x)
    if isinstance(x, (Table3, NonnegTable3)):
        return apply_table(sigma, x)
    if isinstance(x, frozenset):
        return apply_vertex_set(sigma, x)
    tets = getattr(x, "tetrahedra", None)
    if tets is not None:
        from .triangulation import get_catalog

        catalog = get_catalog()
        encoding = frozenset(apply_vertex_set(sigma, t.vertices) for t in tets)
        return catalog.entry_by_tets(encoding)
    raise DomainError(f"cannot apply a cube symmetry to {type(x).__name__}")


@dataclass(frozen=True)
class OrbitClass:
    """One equivalence class of id tuples under the simultaneous group action."""

    representative: tuple[int, ...]
    size: int
    members: tuple[tuple[int, ...], ...]


def _check_ids(ids: Sequence[int], count: int) -> None:
    for i in ids:
        if not 1 <= i <= count:
            raise DomainError(f"unknown triangulation id {i}")


def orbit_classes(arity: int, catalog) -> list[OrbitClass]:
    """All orbit classes of single ids (arity 1), ordered pairs (arity 2), or
    summand-unordered triples with distinct summands (arity 3)."""
    ida = catalog.id_action()
    n = ida.shape[1]
    if arity == 1:
        keys = ida.min(axis=0)
        groups: dict[int, list[tuple[int, ...]]] = {}
        for a in range(1, n + 1):
            groups.setdefault(int(keys[a - 1]), []).append((a,))
    elif arity == 2:
        pa = ida - 1
        best = None
        for s in range(len(GROUP)):
            k = pa[s][:, None] * n + pa[s][None, :]
            best = k if best is None else np.minimum(best, k)
        groups = {}
        for a in range(n):
            for b in range(n):
                key = int(best[a, b])
                groups.setdefault(key, []).append((a + 1, b + 1))
        groups = {k: v for k, v in groups.items()}
        decode = {k: (k // n + 1, k % n + 1) for k in groups}
        return _build_classes(groups, decode)
    elif arity == 3:
        pa = ida.astype(np.int64) - 1
        ii, jj = np.triu_indices(n, k=1)
        best = None
        for s in range(len(GROUP)):
            u, v = pa[s][ii], pa[s][jj]
            lo, hi = np.minimum(u, v), np.maximum(u, v)
            k = (lo[:, None] * n + hi[:, None]) * n + pa[s][None, :]
            best = k if best is None else np.minimum(best, k)
        groups = {}
        for r in range(len(ii)):
            a, b = int(ii[r]) + 1, int(jj[r]) + 1
            for c in range(n):
                key = int(best[r, c])
                groups.setdefault(key, []).append((a, b, c + 1))
        decode = {
            k: (k // (n * n) + 1, (k // n) % n + 1, k % n + 1) for k in groups
        }
        return _build_classes(groups, decode)
    else:
        raise DomainError(f"unsupported arity {arity}")
    decode = {k: (k,) for k in groups}
    return _build_classes(groups, decode)


def _build_classes(groups: dict, decode: dict) -> list[OrbitClass]:
    classes = []
    for key in sorted(groups):
        members = tuple(sorted(groups[key]))
        classes.append(OrbitClass(decode[key], len(members), members))
    return classes


def canonical_class_of(ids: Sequence[int], catalog) -> tuple[int, ...]:
    """Representative of the orbit class containing the given id tuple."""
    rep, _ = canonical_transporter(ids, catalog)
    return rep


def canonical_transporter(ids: Sequence[int], catalog):
    """Canonical representative together with a symmetry index realizing it.

    Returns (representative, s) such that applying GROUP[s] maps the input
    tuple onto the representative (for arity 3 up to swapping the two summand
    coordinates, which are unordered by convention).
    """
    ida = catalog.id_action()
    n = ida.shape[1]
    _check_ids(ids, n)
    if len(ids) == 1:
        (a,) = ids
        images = [(int(ida[s, a - 1]),) for s in range(len(GROUP))]
    elif len(ids) == 2:
        a, b = ids
        images = [
            (int(ida[s, a - 1]), int(ida[s, b - 1])) for s in range(len(GROUP))
        ]
    elif len(ids) == 3:
        a, b, c = ids
        if a == b:
            raise DomainError("triple classes require distinct summand ids")
        images = []
        for s in range(len(GROUP)):
            u, v = int(ida[s, a - 1]), int(ida[s, b - 1])
            lo, hi = (u, v) if u <= v else (v, u)
            images.append((lo, hi, int(ida[s, c - 1])))
    else:
        raise DomainError(f"unsupported arity {len(ids)}")
    best = min(range(len(GROUP)), key=lambda s: images[s])
    return images[best], best
