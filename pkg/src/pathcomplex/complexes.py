"""Lifting simple graphs to higher-order complexes.

Three lifting transformations share one container type:

* ``path``    -- members at dimension p are the canonically oriented simple
  paths on p+1 vertices; boundaries are the one-vertex deletions that remain
  walks (ends always, interiors when the skip edge exists).
* ``simplex`` -- members at dimension p are the (p+1)-cliques; boundaries are
  the facets.
* ``cell``    -- dimensions 0/1 are vertices/edges and dimension 2 holds the
  chordless cycles up to a maximum ring size; the boundary of a ring is its
  edge set.

Member ids are global and dimension-major; within a dimension members are
listed in lexicographic carrier order, which makes every derived structure
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .graphs import SimpleGraph

__all__ = [
    "CapacityError",
    "SerializationError",
    "DEFAULT_MEMBER_CAP",
    "Member",
    "CyclicFamily",
    "HigherOrderComplex",
    "canonical_path",
    "canonical_ring",
    "lift_path_complex",
    "lift_clique_complex",
    "lift_ring_complex",
    "cyclic_families",
    "serialize_complex",
    "deserialize_complex",
]

DEFAULT_MEMBER_CAP = 50_000_000


class CapacityError(RuntimeError):
    """Member enumeration exceeded the configured cap."""


class SerializationError(ValueError):
    """Unreadable or inconsistent serialized complex."""


def canonical_path(seq: Sequence[int]) -> tuple:
    """Identify a sequence with its reverse: keep the end with the smaller label first."""
    seq = tuple(seq)
    if len(seq) >= 2 and seq[0] > seq[-1]:
        return seq[::-1]
    return seq


def canonical_ring(cycle: Sequence[int]) -> tuple:
    """Canonical rotation/reflection of a cyclic sequence.

    Rotates the smallest vertex to the front and picks the direction whose
    second element is smaller.
    """
    cy = list(cycle)
    m = len(cy)
    i = cy.index(min(cy))
    fwd = tuple(cy[(i + j) % m] for j in range(m))
    bwd = tuple(cy[(i - j) % m] for j in range(m))
    return fwd if fwd[1] < bwd[1] else bwd


@dataclass(frozen=True)
class Member:
    """One complex member: a path, simplex, or cell with its canonical carrier."""

    dim: int
    kind: str
    carrier: tuple


@dataclass(frozen=True)
class CyclicFamily:
    """Per-dimension canonical sub-walk sets of a ring's cyclic shifts.

    ``families[p]`` holds every canonical length-p window of the ring
    sequence read cyclically in either direction.
    """

    cell_seq: tuple
    families: tuple  # tuple of frozensets, index = dimension

    @property
    def top_dim(self) -> int:
        return len(self.families) - 1


class HigherOrderComplex:
    """Members per dimension plus boundary incidence, with derived adjacency."""

    def __init__(self, kind, source, max_dim, members_by_dim, boundary):
        self.kind = kind
        self.source = source
        self.n = source.n if source is not None else 0
        self.max_dim = max_dim
        self.members_by_dim = [list(ms) for ms in members_by_dim]
        self.boundary = [sorted(b) for b in boundary]
        offs = [0]
        for ms in self.members_by_dim:
            offs.append(offs[-1] + len(ms))
        self.dim_offsets = tuple(offs)
        self.total = offs[-1]
        self._index = None
        self.coboundary = [[] for _ in range(self.total)]
        for gid, bnd in enumerate(self.boundary):
            for b in bnd:
                self.coboundary[b].append(gid)
        for cb in self.coboundary:
            cb.sort()
        self._boundary_csr = None
        self._coboundary_csr = None
        self._upper_flat = None
        self._lower_flat = None

    # -- lookups ---------------------------------------------------------

    def counts(self) -> list:
        return [len(ms) for ms in self.members_by_dim]

    def dim_of(self, gid: int) -> int:
        for p in range(self.max_dim + 1):
            if gid < self.dim_offsets[p + 1]:
                return p
        raise IndexError(gid)

    def carrier_of(self, gid: int) -> tuple:
        p = self.dim_of(gid)
        return self.members_by_dim[p][gid - self.dim_offsets[p]]

    def member(self, gid: int) -> Member:
        return Member(self.dim_of(gid), self.kind, self.carrier_of(gid))

    def members(self, dim: Optional[int] = None):
        dims = range(self.max_dim + 1) if dim is None else [dim]
        for p in dims:
            for carrier in self.members_by_dim[p]:
                yield Member(p, self.kind, carrier)

    def member_id(self, dim: int, carrier: Sequence[int]) -> int:
        if self._index is None:
            self._index = [
                {c: i for i, c in enumerate(ms)} for ms in self.members_by_dim
            ]
        return self.dim_offsets[dim] + self._index[dim][tuple(carrier)]

    def dim_range(self, p: int) -> range:
        return range(self.dim_offsets[p], self.dim_offsets[p + 1])

    def boundary_sizes(self) -> list:
        return [len(b) for b in self.boundary]

    # -- derived index structures ----------------------------------------

    def boundary_csr(self):
        """(indptr, indices): boundary ids of member g at indices[indptr[g]:indptr[g+1]]."""
        if self._boundary_csr is None:
            lens = np.fromiter(
                (len(b) for b in self.boundary), dtype=np.int64, count=self.total
            )
            indptr = np.zeros(self.total + 1, dtype=np.int64)
            np.cumsum(lens, out=indptr[1:])
            if indptr[-1]:
                indices = np.concatenate(
                    [np.asarray(b, dtype=np.int64) for b in self.boundary if b]
                )
            else:
                indices = np.zeros(0, dtype=np.int64)
            self._boundary_csr = (indptr, indices)
        return self._boundary_csr

    def coboundary_csr(self):
        if self._coboundary_csr is None:
            lens = np.fromiter(
                (len(b) for b in self.coboundary), dtype=np.int64, count=self.total
            )
            indptr = np.zeros(self.total + 1, dtype=np.int64)
            np.cumsum(lens, out=indptr[1:])
            if indptr[-1]:
                indices = np.concatenate(
                    [np.asarray(b, dtype=np.int64) for b in self.coboundary if b]
                )
            else:
                indices = np.zeros(0, dtype=np.int64)
            self._coboundary_csr = (indptr, indices)
        return self._coboundary_csr

    def upper_adjacency(self):
        """Flat witness triples (src, tau, delta) sorted by (src, tau, delta).

        A pair of members sharing several co-boundaries contributes one triple
        per witness.
        """
        if self._upper_flat is None:
            self._upper_flat = _pair_triples(self.boundary)
        return self._upper_flat

    def lower_adjacency(self):
        """Flat witness triples (src, tau, delta) through shared boundaries."""
        if self._lower_flat is None:
            self._lower_flat = _pair_triples(self.coboundary)
        return self._lower_flat

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HigherOrderComplex)
            and self.kind == other.kind
            and self.n == other.n
            and self.max_dim == other.max_dim
            and self.members_by_dim == other.members_by_dim
            and self.boundary == other.boundary
        )

    def __repr__(self) -> str:
        return (
            f"HigherOrderComplex(kind={self.kind!r}, n={self.n}, "
            f"max_dim={self.max_dim}, counts={self.counts()})"
        )


def _pair_triples(incidence: list):
    """All ordered pairs drawn from each incidence list, tagged by the witness.

    For lists ``incidence[delta] = [a, b, c]`` emits (a,b,delta), (a,c,delta),
    (b,a,delta), ... Grouped by list size so numpy can emit pairs in bulk.
    """
    by_size = {}
    for delta, lst in enumerate(incidence):
        if len(lst) >= 2:
            by_size.setdefault(len(lst), ([], []))
            by_size[len(lst)][0].append(delta)
            by_size[len(lst)][1].append(lst)
    srcs, taus, deltas = [], [], []
    for size, (ids, lists) in by_size.items():
        arr = np.asarray(lists, dtype=np.int64)
        ids = np.asarray(ids, dtype=np.int64)
        for i in range(size):
            for j in range(size):
                if i == j:
                    continue
                srcs.append(arr[:, i])
                taus.append(arr[:, j])
                deltas.append(ids)
    if not srcs:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    src = np.concatenate(srcs)
    tau = np.concatenate(taus)
    delta = np.concatenate(deltas)
    order = np.lexsort((delta, tau, src))
    return src[order], tau[order], delta[order]


# ---------------------------------------------------------------------------
# lifting transformations
# ---------------------------------------------------------------------------


class _CapCounter:
    __slots__ = ("count", "cap")

    def __init__(self, cap):
        self.count = 0
        self.cap = cap

    def add(self, k=1):
        self.count += k
        if self.count > self.cap:
            raise CapacityError(
                f"member count exceeded the cap of {self.cap}; "
                "lower the lifting dimension or raise the cap"
            )


def lift_path_complex(
    g: SimpleGraph,
    max_dim: int,
    boundary_mode: str = "incidence",
    member_cap: int = DEFAULT_MEMBER_CAP,
) -> HigherOrderComplex:
    """All canonically oriented simple paths of length <= max_dim.

    ``boundary_mode="incidence"`` keeps every one-vertex deletion that is
    still a walk (interior deletions need the skip edge); ``"truncation"``
    keeps only the two end deletions.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    if boundary_mode not in ("incidence", "truncation"):
        raise ValueError(f"unknown boundary mode {boundary_mode!r}")
    cap = _CapCounter(member_cap)
    members = [[] for _ in range(max_dim + 1)]
    for v in range(g.n):
        members[0].append((v,))
        cap.add()
    if max_dim >= 1:
        in_path = [False] * g.n

        def extend(path):
            v = path[-1]
            for w in g.adjacency[v]:
                if in_path[w]:
                    continue
                path.append(w)
                if path[0] < w:
                    cap.add()
                    members[len(path) - 1].append(tuple(path))
                if len(path) <= max_dim:
                    in_path[w] = True
                    extend(path)
                    in_path[w] = False
                path.pop()

        for s in range(g.n):
            in_path[s] = True
            extend([s])
            in_path[s] = False
    index = [{c: i for i, c in enumerate(ms)} for ms in members]
    offsets = [0]
    for ms in members:
        offsets.append(offsets[-1] + len(ms))
    boundary = [[] for _ in range(offsets[-1])]
    for p in range(1, max_dim + 1):
        lower = index[p - 1]
        base_lo = offsets[p - 1]
        base = offsets[p]
        for i, seq in enumerate(members[p]):
            out = []
            for q in range(p + 1):
                if 0 < q < p:
                    if boundary_mode == "truncation":
                        continue
                    if not g.has_edge(seq[q - 1], seq[q + 1]):
                        continue
                dropped = canonical_path(seq[:q] + seq[q + 1:])
                out.append(base_lo + lower[dropped])
            boundary[base + i] = sorted(out)
    return HigherOrderComplex("path", g, max_dim, members, boundary)


def lift_clique_complex(
    g: SimpleGraph,
    max_dim: int,
    member_cap: int = DEFAULT_MEMBER_CAP,
) -> HigherOrderComplex:
    """Cliques of size <= max_dim+1 as members; boundaries are the facets."""
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    cap = _CapCounter(member_cap)
    members = [[] for _ in range(max_dim + 1)]

    def extend(clique):
        v = clique[-1]
        for w in g.adjacency[v]:
            if w <= v:
                continue
            if all(g.has_edge(u, w) for u in clique):
                clique.append(w)
                cap.add()
                members[len(clique) - 1].append(tuple(clique))
                if len(clique) <= max_dim:
                    extend(clique)
                clique.pop()

    for v in range(g.n):
        cap.add()
        members[0].append((v,))
        if max_dim >= 1:
            extend([v])
    index = [{c: i for i, c in enumerate(ms)} for ms in members]
    offsets = [0]
    for ms in members:
        offsets.append(offsets[-1] + len(ms))
    boundary = [[] for _ in range(offsets[-1])]
    for p in range(1, max_dim + 1):
        lower = index[p - 1]
        base_lo = offsets[p - 1]
        base = offsets[p]
        for i, cl in enumerate(members[p]):
            boundary[base + i] = sorted(
                base_lo + lower[cl[:q] + cl[q + 1:]] for q in range(p + 1)
            )
    return HigherOrderComplex("simplex", g, max_dim, members, boundary)


def lift_ring_complex(
    g: SimpleGraph,
    max_ring: int,
    member_cap: int = DEFAULT_MEMBER_CAP,
) -> HigherOrderComplex:
    """Vertices, edges, and chordless cycles of size 3..max_ring as 2-cells."""
    if max_ring < 3:
        raise ValueError("max_ring must be at least 3")
    cap = _CapCounter(member_cap)
    verts = [(v,) for v in range(g.n)]
    cap.add(g.n)
    edges = sorted(g.edges)
    cap.add(len(edges))
    rings = []

    def extend(path, blocked):
        # blocked: vertices adjacent to an interior path vertex (chord makers)
        v = path[-1]
        for w in g.adjacency[v]:
            if w <= path[0] or w in blocked or w in path:
                continue
            if g.has_edge(w, path[0]):
                if path[1] < w:
                    cap.add()
                    rings.append(tuple(path) + (w,))
                continue
            if len(path) + 1 < max_ring:
                path.append(w)
                # v just became an interior vertex; its neighbors would chord
                extend(path, blocked | set(g.adjacency[v]))
                path.pop()

    for v0 in range(g.n):
        for v1 in g.adjacency[v0]:
            if v1 > v0:
                extend([v0, v1], frozenset())
    rings.sort()
    members = [verts, edges, rings]
    edge_index = {e: i for i, e in enumerate(edges)}
    boundary = [[] for _ in range(g.n + len(edges) + len(rings))]
    base_e = g.n
    base_r = g.n + len(edges)
    for i, (u, v) in enumerate(edges):
        boundary[base_e + i] = [u, v]
    for i, ring in enumerate(rings):
        out = []
        m = len(ring)
        for q in range(m):
            a, b = ring[q], ring[(q + 1) % m]
            out.append(base_e + edge_index[(a, b) if a < b else (b, a)])
        boundary[base_r + i] = sorted(out)
    return HigherOrderComplex("cell", g, 2, members, boundary)


# ---------------------------------------------------------------------------
# cyclic-shifting families
# ---------------------------------------------------------------------------


def cyclic_families(cell: Member) -> CyclicFamily:
    """Canonical sub-walk families of a ring, one set per dimension.

    For a ring on m vertices, ``families[p]`` collects the canonical form of
    every (p+1)-vertex window of the cyclic sequence; a window and its
    reverse count once.
    """
    if cell.kind != "cell" or cell.dim != 2:
        raise ValueError("cyclic families are defined for 2-dimensional cells")
    ring = tuple(cell.carrier)
    m = len(ring)
    doubled = ring + ring
    fams = []
    for p in range(m):
        fams.append(
            frozenset(canonical_path(doubled[i:i + p + 1]) for i in range(m))
        )
    return CyclicFamily(cell_seq=canonical_path(ring), families=tuple(fams))


# ---------------------------------------------------------------------------
# serialization (PCX v1, line oriented)
# ---------------------------------------------------------------------------


def serialize_complex(c: HigherOrderComplex) -> str:
    lines = [f"PCX v1 kind={c.kind} n={c.n} maxdim={c.max_dim}"]
    gid = 0
    for p in range(c.max_dim + 1):
        lines.append(f"dim {p} count {len(c.members_by_dim[p])}")
        for carrier in c.members_by_dim[p]:
            lines.append(f"{gid}: " + " ".join(str(v) for v in carrier))
            gid += 1
    lines.append("boundaries")
    for gid in range(c.total):
        lines.append(f"{gid}: " + " ".join(str(b) for b in c.boundary[gid]))
    return "\n".join(lines) + "\n"


def deserialize_complex(text: str) -> HigherOrderComplex:
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    if not lines:
        raise SerializationError("empty payload")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "PCX":
        raise SerializationError(f"bad header: {lines[0]!r}")
    if head[1] != "v1":
        raise SerializationError(f"unsupported format version {head[1]!r}")
    fields = dict(part.split("=", 1) for part in head[2:])
    kind = fields["kind"]
    if kind not in ("path", "simplex", "cell"):
        raise SerializationError(f"unknown kind {kind!r}")
    n = int(fields["n"])
    max_dim = int(fields["maxdim"])
    members = []
    pos = 1
    expected_gid = 0
    for p in range(max_dim + 1):
        if pos >= len(lines):
            raise SerializationError(f"missing 'dim {p}' section")
        parts = lines[pos].split()
        if len(parts) != 4 or parts[0] != "dim" or int(parts[1]) != p:
            raise SerializationError(f"bad dimension header: {lines[pos]!r}")
        count = int(parts[3])
        pos += 1
        ms = []
        for _ in range(count):
            gid_s, _, rest = lines[pos].partition(":")
            if int(gid_s) != expected_gid:
                raise SerializationError(
                    f"member ids must be consecutive; got {gid_s} wanted {expected_gid}"
                )
            carrier = tuple(int(v) for v in rest.split())
            if any(not 0 <= v < n for v in carrier):
                raise SerializationError(f"vertex out of range in member {gid_s}")
            ms.append(carrier)
            expected_gid += 1
            pos += 1
        members.append(ms)
    if pos >= len(lines) or lines[pos] != "boundaries":
        raise SerializationError("missing 'boundaries' section")
    pos += 1
    total = expected_gid
    offsets = [0]
    for ms in members:
        offsets.append(offsets[-1] + len(ms))
    boundary = [[] for _ in range(total)]
    for _ in range(total):
        if pos >= len(lines):
            raise SerializationError("truncated boundaries section")
        gid_s, sep, rest = lines[pos].partition(":")
        if not sep:
            raise SerializationError(f"bad boundary line: {lines[pos]!r}")
        gid = int(gid_s)
        if not 0 <= gid < total:
            raise SerializationError(f"boundary line for unknown member {gid}")
        ids = [int(v) for v in rest.split()]
        dim = next(p for p in range(max_dim + 1) if gid < offsets[p + 1])
        lo, hi = (offsets[dim - 1], offsets[dim]) if dim > 0 else (0, 0)
        for b in ids:
            if not lo <= b < hi:
                raise SerializationError(
                    f"dangling boundary id {b} for member {gid} (dimension {dim})"
                )
        boundary[gid] = ids
        pos += 1
    source = _reconstruct_source(n, members, max_dim)
    return HigherOrderComplex(kind, source, max_dim, members, boundary)


def _reconstruct_source(n, members, max_dim):
    edges = [tuple(c) for c in members[1]] if max_dim >= 1 else []
    return SimpleGraph.from_edges(n, edges)
