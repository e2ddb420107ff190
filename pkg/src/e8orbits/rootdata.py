"""Crystallographic root data built from integer Cartan matrices.

Conventions
-----------
Weights live in ``X = Z^r`` written in the basis of fundamental weights, coweights
in ``Y = Z^r`` written in the basis of simple coroots, and the pairing is the
plain dot product.  Row ``j`` of the Cartan matrix is the simple root
``alpha_j``; vectors are rows and group elements act on the right, so the
simple reflection ``s_j`` is the matrix ``I - E_j`` where ``E_j`` carries
``alpha_j`` in row ``j``.

Reflection indices are 1-based for simple reflections (``1..r``) and ``0``
denotes the reflection in the root ``alpha_0`` paired with the highest coroot.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Iterable, Sequence

import numpy as np

from .errors import MalformedCartan, NotFiniteType, UnknownDiagram

E8_CARTAN = np.array(
    [
        [2, 0, -1, 0, 0, 0, 0, 0],
        [0, 2, 0, -1, 0, 0, 0, 0],
        [-1, 0, 2, -1, 0, 0, 0, 0],
        [0, -1, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, 0, 0, -1, 2],
    ],
    dtype=np.int64,
)
E8_HIGHEST_COROOT = np.array([2, 3, 4, 6, 5, 4, 3, 2], dtype=np.int64)
E8_ALPHA0 = np.array([0, 0, 0, 0, 0, 0, 0, 1], dtype=np.int64)

G2_CARTAN = np.array([[2, -1], [-3, 2]], dtype=np.int64)
F4_CARTAN = np.array(
    [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]], dtype=np.int64
)
A1_CARTAN = np.array([[2]], dtype=np.int64)

NAMED_CARTANS = {"E8": E8_CARTAN, "F4": F4_CARTAN, "G2": G2_CARTAN, "A1": A1_CARTAN}

_EXCEPTIONAL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}


def component_order(kind: str, rank: int) -> int:
    """Order of the irreducible Weyl group of type ``kind`` and ``rank``."""
    if kind == "A":
        return factorial(rank + 1)
    if kind in ("B", "C"):
        return 2**rank * factorial(rank)
    if kind == "D":
        return 2 ** (rank - 1) * factorial(rank)
    try:
        return _EXCEPTIONAL_ORDERS[(kind, rank)]
    except KeyError:
        raise UnknownDiagram(f"no Weyl group of type {kind}{rank}") from None


def check_cartan(cartan) -> np.ndarray:
    c = np.asarray(cartan)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
        raise MalformedCartan(f"Cartan matrix must be square and non-empty, got shape {c.shape}")
    if not np.issubdtype(c.dtype, np.integer):
        if not np.all(np.equal(np.mod(c, 1), 0)):
            raise MalformedCartan("Cartan matrix must have integer entries")
    c = c.astype(np.int64)
    if np.any(np.diag(c) != 2):
        raise MalformedCartan("diagonal entries must all be 2")
    off = c[~np.eye(len(c), dtype=bool)]
    if np.any(off > 0):
        raise MalformedCartan("off-diagonal entries must be <= 0")
    if np.any((c == 0) != (c.T == 0)):
        raise MalformedCartan("entry (i,j) must vanish iff entry (j,i) does")
    return c


def _adjugate(c: np.ndarray) -> tuple[int, np.ndarray]:
    det = int(round(np.linalg.det(c.astype(float))))
    if det <= 0:
        raise NotFiniteType(f"Cartan matrix has determinant {det}; not of finite type")
    adj = np.rint(det * np.linalg.inv(c.astype(float))).astype(np.int64)
    if not np.array_equal(c @ adj, det * np.eye(len(c), dtype=np.int64)):
        raise NotFiniteType("could not invert Cartan matrix exactly")
    return det, adj


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Immutable root datum; see module docstring for coordinate conventions.

    ``roots[k]`` and ``coroots[k]`` are aligned.  Positive roots come first,
    sorted by height, followed by their negatives in the same order.
    """

    cartan: np.ndarray
    roots: np.ndarray
    coroots: np.ndarray
    positive_root_indices: np.ndarray
    simple_indices: np.ndarray
    rho: np.ndarray
    highest_coroot_index: int
    alpha0: np.ndarray
    highest_coroot: np.ndarray
    reflection_matrices: tuple
    weyl_order: int
    marks: tuple
    connection_index: int
    name: str = ""
    # height functional scaled by the connection index: positive on positive roots
    height_form: np.ndarray = field(repr=False, default=None)
    _root_index: dict = field(repr=False, default=None)

    @property
    def rank(self) -> int:
        return self.cartan.shape[0]

    @property
    def n_positive(self) -> int:
        return len(self.positive_root_indices)

    def root_index(self, beta) -> int:
        """Index of ``beta`` in :attr:`roots`, or -1 when it is not a root."""
        return self._root_index.get(tuple(int(v) for v in beta), -1)

    def reflection(self, j: int) -> np.ndarray:
        return self.reflection_matrices[j]

    def reflection_root(self, j: int) -> np.ndarray:
        """Root whose reflection is ``s_j`` (``j = 0`` gives ``alpha_0``)."""
        return self.alpha0 if j == 0 else self.cartan[j - 1]

    def reflection_coroot(self, j: int) -> np.ndarray:
        if j == 0:
            return self.highest_coroot
        e = np.zeros(self.rank, dtype=np.int64)
        e[j - 1] = 1
        return e

    def __repr__(self) -> str:
        label = self.name or f"rank {self.rank}"
        return f"RootDatum({label}, {len(self.roots)} roots, |W|={self.weyl_order})"


def pairing(x, c) -> int:
    """Pair a weight with a coweight (dot product of coordinate rows)."""
    x = np.asarray(x, dtype=np.int64)
    c = np.asarray(c, dtype=np.int64)
    if x.shape != c.shape:
        raise ValueError(f"rank mismatch: {x.shape} vs {c.shape}")
    return int(x @ c)


def act(x, m) -> np.ndarray:
    """Right action ``x * m`` of an integer matrix on a row vector."""
    x = np.asarray(x, dtype=np.int64)
    return x @ np.asarray(m, dtype=np.int64)


def _reflection_matrix(root: np.ndarray, coroot: np.ndarray) -> np.ndarray:
    r = len(root)
    return np.eye(r, dtype=np.int64) - np.outer(coroot, root)


def _root_closure(c: np.ndarray, cap: int) -> tuple[list, list]:
    r = len(c)
    eye = np.eye(r, dtype=np.int64)
    roots = [tuple(int(v) for v in c[j]) for j in range(r)]
    coroots = [tuple(int(v) for v in eye[j]) for j in range(r)]
    seen = {beta: k for k, beta in enumerate(roots)}
    queue = deque(range(r))
    while queue:
        k = queue.popleft()
        beta = np.array(roots[k], dtype=np.int64)
        gamma = np.array(coroots[k], dtype=np.int64)
        for j in range(r):
            b2 = beta - beta[j] * c[j]
            g2 = gamma.copy()
            g2[j] -= int(c[j] @ gamma)
            key = tuple(int(v) for v in b2)
            if key in seen:
                if coroots[seen[key]] != tuple(int(v) for v in g2):
                    raise MalformedCartan("root closure produced inconsistent coroots")
                continue
            if len(roots) >= cap:
                raise NotFiniteType(f"root closure exceeded {cap} roots; not of finite type")
            seen[key] = len(roots)
            roots.append(key)
            coroots.append(tuple(int(v) for v in g2))
            queue.append(seen[key])
    return roots, coroots


def build_root_datum(cartan, name: str = "", cap: int = 10_000) -> RootDatum:
    """Close the simple roots under the simple reflections and assemble a datum.

    Raises
    ------
    MalformedCartan
        If the matrix violates the Cartan axioms or has no highest coroot
        (reducible input).
    NotFiniteType
        If the closure exceeds ``cap`` roots.
    """
    c = check_cartan(cartan)
    r = len(c)
    det, adj = _adjugate(c)
    roots, coroots = _root_closure(c, cap)
    roots = np.array(roots, dtype=np.int64)
    coroots = np.array(coroots, dtype=np.int64)

    # a root is positive iff its coroot has non-negative simple-coroot coordinates
    pos_mask = np.all(coroots >= 0, axis=1)
    neg_mask = np.all(coroots <= 0, axis=1)
    if not np.all(pos_mask ^ neg_mask):
        raise NotFiniteType("closure produced a root that is neither positive nor negative")
    pos = np.flatnonzero(pos_mask)
    order = sorted(pos, key=lambda k: (int(coroots[k].sum()), tuple(-coroots[k])))
    roots_pos = roots[order]
    coroots_pos = coroots[order]
    if len(roots_pos) * 2 != len(roots):
        raise NotFiniteType("roots do not come in +/- pairs")
    all_roots = np.vstack([roots_pos, -roots_pos])
    all_coroots = np.vstack([coroots_pos, -coroots_pos])
    n_pos = len(roots_pos)

    dominant = [
        k for k in range(n_pos) if np.all(coroots_pos[k] >= coroots_pos)
    ]
    if not dominant:
        raise MalformedCartan("no positive coroot dominates all others; is the Cartan matrix reducible?")
    hk = dominant[0]
    highest = all_coroots[hk].copy()
    alpha0 = all_roots[hk].copy()

    refl = [_reflection_matrix(alpha0, highest)]
    eye = np.eye(r, dtype=np.int64)
    refl += [_reflection_matrix(c[j], eye[j]) for j in range(r)]
    for m in refl:
        m.setflags(write=False)

    simple_idx = np.array(
        [int(np.flatnonzero(np.all(all_roots == c[j], axis=1))[0]) for j in range(r)],
        dtype=np.int64,
    )
    for arr in (c, all_roots, all_coroots, highest, alpha0):
        arr.setflags(write=False)
    rho = np.ones(r, dtype=np.int64)
    rho.setflags(write=False)
    height_form = adj @ np.ones(r, dtype=np.int64)
    height_form.setflags(write=False)
    marks = tuple(int(v) for v in highest)

    datum = RootDatum(
        cartan=c,
        roots=all_roots,
        coroots=all_coroots,
        positive_root_indices=np.arange(n_pos),
        simple_indices=simple_idx,
        rho=rho,
        highest_coroot_index=hk,
        alpha0=alpha0,
        highest_coroot=highest,
        reflection_matrices=tuple(refl),
        weyl_order=0,
        marks=marks,
        connection_index=det,
        name=name,
        height_form=height_form,
        _root_index={tuple(int(v) for v in b): k for k, b in enumerate(all_roots)},
    )
    object.__setattr__(datum, "weyl_order", weyl_order(datum))
    return datum


def named_datum(name: str) -> RootDatum:
    """Root datum for one of the shipped Cartan matrices (E8, F4, G2, A1)."""
    key = name.upper()
    if key not in NAMED_CARTANS:
        raise KeyError(f"unknown type {name!r}; choose from {sorted(NAMED_CARTANS)}")
    return _named_cache(key)


_CACHE: dict = {}


def _named_cache(key: str) -> RootDatum:
    if key not in _CACHE:
        _CACHE[key] = build_root_datum(NAMED_CARTANS[key], name=key)
    return _CACHE[key]


def e8() -> RootDatum:
    return named_datum("E8")


def coxeter_length(datum: RootDatum, w) -> int:
    """Number of positive roots sent to negative roots by ``w``.

    ``w`` is assumed to lie in the Weyl group; for other matrices the count is
    meaningless but still returned.
    """
    w = np.asarray(w, dtype=np.int64)
    images = datum.roots[: datum.n_positive] @ w
    return int(np.count_nonzero(images @ datum.height_form < 0))


def word_matrix(datum: RootDatum, word: Iterable[int]) -> np.ndarray:
    """Product ``s_{w1} s_{w2} ...`` of reflection matrices (indices 0..r)."""
    m = np.eye(datum.rank, dtype=np.int64)
    for j in word:
        m = m @ datum.reflection_matrices[j]
    return m


def _pair_count(datum: RootDatum, a: int, b: int) -> int:
    """Coxeter bond multiplicity between reflections ``a`` and ``b`` (0..3)."""
    ra, rb = datum.reflection_root(a), datum.reflection_root(b)
    ca, cb = datum.reflection_coroot(a), datum.reflection_coroot(b)
    return int(ra @ cb) * int(rb @ ca)


def _classify_component(datum: RootDatum, nodes: Sequence[int]) -> tuple[str, int]:
    n = len(nodes)
    if n == 1:
        return ("A", 1)
    bonds = {}
    adj = {v: [] for v in nodes}
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            k = _pair_count(datum, a, b)
            if k:
                if k > 3:
                    raise UnknownDiagram(f"bond of multiplicity {k} between {a} and {b}")
                bonds[(a, b)] = bonds[(b, a)] = k
                adj[a].append(b)
                adj[b].append(a)
    n_edges = len(bonds) // 2
    if n_edges != n - 1:
        raise UnknownDiagram(f"diagram on {sorted(nodes)} is not a tree")
    mults = sorted({k for k in bonds.values()})
    if 3 in mults:
        if n == 2:
            return ("G", 2)
        raise UnknownDiagram("triple bond in a diagram of rank > 2")
    degrees = {v: len(adj[v]) for v in nodes}
    doubles = [e for e, k in bonds.items() if k == 2 and e[0] < e[1]]
    if max(degrees.values()) > 3 or sum(1 for d in degrees.values() if d == 3) > 1:
        raise UnknownDiagram(f"diagram on {sorted(nodes)} has too many branches")
    if not doubles:
        branch = [v for v in nodes if degrees[v] == 3]
        if not branch:
            return ("A", n)
        b = branch[0]
        arms = []
        for start in adj[b]:
            length, prev, cur = 1, b, start
            while degrees[cur] == 2:
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                prev, cur = cur, nxt
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return ("D", n)
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return ("E", n)
        raise UnknownDiagram(f"simply-laced tree with arms {arms}")
    if len(doubles) > 1 or any(d == 3 for d in degrees.values()):
        raise UnknownDiagram("double bond in a branched or multiply-doubled diagram")
    a, b = doubles[0]
    if degrees[a] == 1 or degrees[b] == 1:
        end, inner = (a, b) if degrees[a] == 1 else (b, a)
        short_end = int(datum.reflection_root(inner) @ datum.reflection_coroot(end)) == -2
        if n == 2:
            return ("B", 2)
        return ("B" if short_end else "C", n)
    if n == 4:
        return ("F", 4)
    raise UnknownDiagram("double bond in the interior of a diagram of rank != 4")


def classify_subdiagram(datum: RootDatum, J) -> tuple[list[tuple[str, int]], int]:
    """Split the reflections indexed by ``J`` into irreducible components.

    ``J`` is a subset of ``{0, 1, ..., r}``.  Returns the component types as
    ``(letter, rank)`` pairs, sorted, and the order of the generated group.
    """
    nodes = sorted(set(int(j) for j in J))
    if any(j < 0 or j > datum.rank for j in nodes):
        raise ValueError(f"reflection indices must lie in 0..{datum.rank}")
    remaining = set(nodes)
    comps = []
    while remaining:
        start = min(remaining)
        stack, comp = [start], {start}
        while stack:
            v = stack.pop()
            for u in remaining:
                if u not in comp and _pair_count(datum, v, u):
                    comp.add(u)
                    stack.append(u)
        remaining -= comp
        comps.append(_classify_component(datum, sorted(comp)))
    comps.sort()
    return comps, prod(component_order(k, n) for k, n in comps)


def weyl_order(datum: RootDatum) -> int:
    """|W| by diagram classification, cross-checked against the marks formula."""
    _, by_class = classify_subdiagram(datum, range(1, datum.rank + 1))
    by_marks = factorial(datum.rank) * prod(datum.marks) * datum.connection_index
    if by_class != by_marks:
        raise UnknownDiagram(
            f"Weyl order mismatch: classification gives {by_class}, marks formula {by_marks}"
        )
    return by_class


def weyl_order_from_marks(datum: RootDatum) -> int:
    return factorial(datum.rank) * prod(datum.marks) * datum.connection_index
