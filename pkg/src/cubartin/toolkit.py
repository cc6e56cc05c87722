"""Hyperplane combinatorics on finite CAT(0) cube complexes.

Everything is combinatorial (1-skeleton / l^1 metric): hyperplanes are
classes of edges under "opposite in a common square", halfspaces are the
two vertex sides, and the distance between vertices is the number of
separating hyperplanes.  Vertices carry side-bitmask coordinates, so set
operations reduce to integer arithmetic.

Callers certify CAT(0)-ness (via is_median or construction by sageev_dual);
a failed halfspace split raises NotCat0Error rather than misbehaving.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .cube_model import CubeComplex, Edge, make_complex


class NotCat0Error(ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    hid: int
    edges: frozenset  # dual edge ids
    minus: frozenset  # vertex side containing the least vertex
    plus: frozenset


@dataclass(frozen=True)
class GatePair:
    v1: frozenset
    v2: frozenset
    separators: frozenset  # hyperplane ids separating Y1 from Y2
    matching: dict  # v1 vertex -> nearest v2 vertex

    @property
    def delta_sep(self) -> int:
        return len(self.separators)


@dataclass(frozen=True)
class ParallelDecomposition:
    base: frozenset  # Y
    copies: tuple  # parallel copies of Y, as vertex sets (Y included)
    parallel_set: frozenset  # P_Y = hull of the union
    orthogonal: frozenset  # Y-perp, the fiber through min(Y)


@dataclass(frozen=True)
class ProductPartition:
    classes: tuple  # tuple of frozensets of hyperplane ids
    factors: tuple  # tuple of vertex sets, one per class


def _edge_classes(c: CubeComplex) -> list[frozenset]:
    """Partition edge ids by the transitive closure of square-opposition."""
    parent = {e.eid: e.eid for e in c.edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for _, ts in c.squares:
        union(ts[0][0], ts[2][0])
        union(ts[1][0], ts[3][0])
    groups: dict[str, set] = {}
    for e in c.edges:
        groups.setdefault(find(e.eid), set()).add(e.eid)
    return sorted((frozenset(g) for g in groups.values()), key=sorted)


def _skeleton(c: CubeComplex, without: frozenset = frozenset()) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(c.vertices)
    for e in c.edges:
        if e.eid not in without:
            g.add_edge(e.src, e.dst, key=e.eid)
    return g


class CubicalStructure:
    """Immutable hyperplane handle over a certified CAT(0) complex.

    Coordinates are integer bitmasks (bit h set iff the vertex lies in the
    plus side of hyperplane h), so d(u, v) = popcount(coord_u ^ coord_v).
    """

    def __init__(self, c: CubeComplex):
        self.complex = c
        for e in c.edges:
            if e.is_loop:
                raise NotCat0Error(f"loop edge {e.eid}: not simply connected")
        hyperplanes = []
        for hid, cls in enumerate(_edge_classes(c)):
            comps = list(nx.connected_components(_skeleton(c, without=cls)))
            if len(comps) != 2:
                raise NotCat0Error(
                    f"hyperplane {sorted(cls)} splits into {len(comps)} parts"
                )
            a, b = comps
            for eid in cls:
                e = c.edge(eid)
                if (e.src in a) == (e.dst in a):
                    raise NotCat0Error(f"dual edge {eid} does not cross its hyperplane")
            minus, plus = (a, b) if min(c.vertices) in a else (b, a)
            hyperplanes.append(Hyperplane(hid, cls, frozenset(minus), frozenset(plus)))
        self.hyperplanes: tuple[Hyperplane, ...] = tuple(hyperplanes)
        self.coords: dict[str, int] = {
            v: sum(1 << h.hid for h in hyperplanes if v in h.plus) for v in c.vertices
        }
        self._edge_to_hid = {eid: h.hid for h in hyperplanes for eid in h.edges}

    # -- metric -------------------------------------------------------------

    def distance(self, u: str, v: str) -> int:
        return (self.coords[u] ^ self.coords[v]).bit_count()

    def set_distance(self, us, vs) -> int:
        return min(self.distance(u, v) for u in us for v in vs)

    def hyperplane_of(self, eid: str) -> Hyperplane:
        return self.hyperplanes[self._edge_to_hid[eid]]

    def crosses(self, s) -> frozenset:
        """Hyperplane ids with vertices of s on both sides."""
        s = set(s)
        out = set()
        for h in self.hyperplanes:
            if s & h.plus and s & h.minus:
                out.add(h.hid)
        return frozenset(out)

    def crossing(self, h1: Hyperplane, h2: Hyperplane) -> bool:
        return all(
            a & b
            for a in (h1.plus, h1.minus)
            for b in (h2.plus, h2.minus)
        )

    def _side_of(self, h: Hyperplane, s) -> int:
        s = set(s)
        if s <= h.plus:
            return 1
        if s <= h.minus:
            return -1
        return 0

    def carrier_vertices(self, h: Hyperplane) -> frozenset:
        out = set()
        for eid in h.edges:
            e = self.complex.edge(eid)
            out.update((e.src, e.dst))
        return frozenset(out)

    # -- hulls and gates ----------------------------------------------------

    def convex_hull(self, s) -> frozenset:
        """Intersection of all halfspaces containing s."""
        s = set(s)
        if not s:
            raise ValueError("empty vertex set has no hull")
        if not s <= set(self.complex.vertices):
            raise ValueError("vertex set not in the complex")
        hull = set(self.complex.vertices)
        for h in self.hyperplanes:
            side = self._side_of(h, s)
            if side == 1:
                hull &= h.plus
            elif side == -1:
                hull &= h.minus
        return frozenset(hull)

    def is_convex(self, s) -> bool:
        return self.convex_hull(s) == frozenset(s)

    def separators(self, y1, y2) -> frozenset:
        out = set()
        for h in self.hyperplanes:
            s1, s2 = self._side_of(h, y1), self._side_of(h, y2)
            if s1 != 0 and s2 != 0 and s1 != s2:
                out.add(h.hid)
        return frozenset(out)

    def gates(self, y1, y2) -> GatePair:
        y1, y2 = frozenset(y1), frozenset(y2)
        if not self.is_convex(y1) or not self.is_convex(y2):
            raise ValueError("gates need convex inputs")
        sep = self.separators(y1, y2)
        delta = len(sep)
        v1 = frozenset(v for v in y1 if min(self.distance(v, w) for w in y2) == delta)
        v2 = frozenset(v for v in y2 if min(self.distance(v, w) for w in y1) == delta)
        matching = {}
        for v in sorted(v1):
            partners = [w for w in sorted(v2) if self.distance(v, w) == delta]
            if len(partners) != 1:
                raise NotCat0Error(f"gate projection not unique at {v}")
            matching[v] = partners[0]
        return GatePair(v1, v2, sep, matching)

    def check_gate_edge_duality(self, gp: GatePair):
        """Every hyperplane dual to an edge of V1 must meet V2 (and dually)."""
        for side, other in ((gp.v1, gp.v2), (gp.v2, gp.v1)):
            for e in self.complex.edges:
                if e.src in side and e.dst in side:
                    h = self.hyperplane_of(e.eid)
                    if not (other & h.plus and other & h.minus):
                        return False, (e.eid, h.hid)
        return True, None

    # -- parallel sets and products ------------------------------------------

    def parallel_set(self, y) -> ParallelDecomposition:
        y = frozenset(y)
        if not self.is_convex(y):
            raise ValueError("parallel_set needs a convex input")
        h1 = self.crosses(y)
        mask = sum(1 << h for h in h1)
        outer = ~mask
        # fibers: vertex classes with identical coordinates away from H1
        fibers: dict[int, set] = {}
        for v in self.complex.vertices:
            fibers.setdefault(self.coords[v] & outer, set()).add(v)
        copies = []
        for key in sorted(fibers):
            fiber = frozenset(fibers[key])
            if self.crosses(fiber) == h1:
                copies.append(fiber)
        union = set().union(*copies)
        py = self.convex_hull(union)
        base = min(y)
        ortho = frozenset(
            v for v in py if self.coords[v] & mask == self.coords[base] & mask
        )
        return ParallelDecomposition(y, tuple(copies), py, ortho)

    def product_decompose(self) -> ProductPartition:
        """Finest hyperplane partition into pairwise-crossing classes."""
        g = nx.Graph()
        g.add_nodes_from(h.hid for h in self.hyperplanes)
        for h1, h2 in combinations(self.hyperplanes, 2):
            if not self.crossing(h1, h2):
                g.add_edge(h1.hid, h2.hid)
        classes = sorted((frozenset(comp) for comp in nx.connected_components(g)), key=sorted)
        base = min(self.complex.vertices) if self.complex.vertices else None
        factors = []
        for cls in classes:
            outer = sum(1 << h.hid for h in self.hyperplanes if h.hid not in cls)
            fixed = self.coords[base] & outer
            factors.append(
                frozenset(v for v in self.complex.vertices if self.coords[v] & outer == fixed)
            )
        return ProductPartition(tuple(classes), tuple(factors))

    def has_facing_triple(self):
        """Three pairwise-disjoint hyperplanes, none separating the other two."""
        carriers = {h.hid: self.carrier_vertices(h) for h in self.hyperplanes}
        for h1, h2, h3 in combinations(self.hyperplanes, 3):
            if (
                self.crossing(h1, h2)
                or self.crossing(h1, h3)
                or self.crossing(h2, h3)
            ):
                continue
            triple = (h1, h2, h3)
            facing = True
            for i, h in enumerate(triple):
                others = [triple[j] for j in range(3) if j != i]
                sides = [self._side_of(h, carriers[o.hid]) for o in others]
                if sides[0] != sides[1]:
                    facing = False
                    break
            if facing:
                return True, (h1.hid, h2.hid, h3.hid)
        return False, None

    def induced_subcomplex(self, vs) -> CubeComplex:
        return induced_subcomplex(self.complex, vs)


def induced_subcomplex(c: CubeComplex, vs) -> CubeComplex:
    vs = set(vs)
    edges = [e for e in c.edges if e.src in vs and e.dst in vs]
    eids = {e.eid for e in edges}
    squares = [(sid, ts) for sid, ts in c.squares if all(e in eids for e, _ in ts)]
    return make_complex(sorted(vs), edges, squares)


# -- wallspaces and the Sageev dual ----------------------------------------

@dataclass(frozen=True)
class Wallspace:
    n_points: int
    walls: tuple  # frozensets of point indices (the side containing no point 0,
    # or either side; sides are normalized to exclude point 0)

    def __post_init__(self):
        for w in self.walls:
            if not w or len(w) == self.n_points:
                raise ValueError("wall has an empty side")
            if not all(0 <= p < self.n_points for p in w):
                raise ValueError("wall references an unknown point")
        if len(set(self.walls)) != len(self.walls):
            raise ValueError("duplicate wall")


class WallspaceParseError(ValueError):
    pass


def parse_wallspace(text: str) -> Wallspace:
    """`points n` then `wall <bitmask>` lines, bitmask = n chars of 0/1."""
    n = None
    walls = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "points" and len(parts) == 2:
            if n is not None:
                raise WallspaceParseError(f"line {line_no}: repeated points record")
            n = int(parts[1])
        elif parts[0] == "wall" and len(parts) == 2:
            if n is None:
                raise WallspaceParseError(f"line {line_no}: wall before points")
            bits = parts[1]
            if len(bits) != n or set(bits) - {"0", "1"}:
                raise WallspaceParseError(f"line {line_no}: bad bitmask {bits!r}")
            side = frozenset(i for i, ch in enumerate(bits) if ch == "1")
            # normalize so the recorded side excludes point 0
            if 0 in side:
                side = frozenset(range(n)) - side
            walls.append(side)
        else:
            raise WallspaceParseError(f"line {line_no}: bad record {line!r}")
    if n is None:
        raise WallspaceParseError("missing points record")
    try:
        return Wallspace(n, tuple(walls))
    except ValueError as exc:
        raise WallspaceParseError(str(exc)) from None


def wallspace_text(w: Wallspace) -> str:
    lines = [f"points {w.n_points}"]
    for side in w.walls:
        lines.append("wall " + "".join("1" if i in side else "0" for i in range(w.n_points)))
    return "\n".join(lines) + "\n"


def sageev_dual(w: Wallspace, max_walls: int = 16) -> CubeComplex:
    """Dual cube complex of a finite wallspace (as its 2-skeleton).

    Vertices are consistent orientations (a chosen side per wall, pairwise
    intersecting), reached by breadth-first single-wall flips from the
    principal orientations of the points; edges are single-wall flips and
    squares come from commuting flip pairs.
    """
    k = len(w.walls)
    if k > max_walls:
        raise ValueError(f"{k} walls exceed the bound {max_walls}")
    sides = []  # per wall: (side excluding point 0, complement)
    all_points = frozenset(range(w.n_points))
    for side in w.walls:
        sides.append((all_points - side, side))

    def consistent(bits: int) -> bool:
        chosen = [sides[i][(bits >> i) & 1] for i in range(k)]
        return all(
            a & b for a, b in combinations(chosen, 2)
        )

    def principal(p: int) -> int:
        return sum(1 << i for i in range(k) if p in sides[i][1])

    seen = set()
    queue = sorted({principal(p) for p in range(w.n_points)})
    seen.update(queue)
    while queue:
        nxt = []
        for bits in queue:
            for i in range(k):
                flip = bits ^ (1 << i)
                if flip not in seen and consistent(flip):
                    seen.add(flip)
                    nxt.append(flip)
        queue = sorted(set(nxt))
    order = {bits: idx for idx, bits in enumerate(sorted(seen))}

    def vid(bits):
        return f"o{order[bits]}"

    vertices = [vid(b) for b in sorted(seen)]
    edges = []
    for bits in sorted(seen):
        for i in range(k):
            flip = bits ^ (1 << i)
            if flip in seen and not bits >> i & 1:
                edges.append(Edge(f"e{order[bits]}.w{i}", vid(bits), vid(flip)))
    squares = []
    for bits in sorted(seen):
        for i, j in combinations(range(k), 2):
            if bits >> i & 1 or bits >> j & 1:
                continue
            bi, bj, bij = bits ^ (1 << i), bits ^ (1 << j), bits ^ (1 << i) ^ (1 << j)
            if bi in seen and bj in seen and bij in seen:
                squares.append(
                    (
                        f"s{order[bits]}.w{i}.w{j}",
                        (
                            (f"e{order[bits]}.w{i}", 1),
                            (f"e{order[bi]}.w{j}", 1),
                            (f"e{order[bj]}.w{i}", -1),
                            (f"e{order[bits]}.w{j}", -1),
                        ),
                    )
                )
    return make_complex(vertices, edges, squares)


# -- median certificate ------------------------------------------------------

def is_median(c: CubeComplex, max_vertices: int = 2000) -> bool:
    """Whether the complex's 1-skeleton is a median graph.

    Characterization used: the graph embeds isometrically in a hypercube
    along its square-opposition edge classes (each class splits the graph
    into exactly two sides) and the vertex set is closed under the
    coordinatewise majority (median) operation.
    """
    if len(c.vertices) > max_vertices:
        raise ValueError(f"{len(c.vertices)} vertices exceed the bound {max_vertices}")
    if any(e.is_loop for e in c.edges):
        return False
    g = _skeleton(c)
    if len(c.vertices) == 0 or not nx.is_connected(g):
        return False
    classes = _edge_classes(c)
    coords = {v: 0 for v in c.vertices}
    for hid, cls in enumerate(classes):
        comps = list(nx.connected_components(_skeleton(c, without=cls)))
        if len(comps) != 2:
            return False
        a, b = comps
        for eid in cls:
            e = c.edge(eid)
            if (e.src in a) == (e.dst in a):
                return False
        for v in b:
            coords[v] |= 1 << hid
    # parallel edges within a class collapse; distinct classes per edge pair
    for u in c.vertices:
        dist = nx.single_source_shortest_path_length(g, u)
        for v, d in dist.items():
            if d != (coords[u] ^ coords[v]).bit_count():
                return False
    cs = sorted(coords.values())
    vset = set(cs)
    if len(vset) != len(cs):
        return False
    for cu, cv, cw in combinations(cs, 3):
        if (cu & cv) | (cu & cw) | (cv & cw) not in vset:
            return False
    return True


# -- small factory complexes -------------------------------------------------

def path_complex(n: int) -> CubeComplex:
    """A path with n edges."""
    vertices = [f"p{i}" for i in range(n + 1)]
    edges = [Edge(f"e{i}", f"p{i}", f"p{i + 1}") for i in range(n)]
    return make_complex(vertices, edges, [])


def tree_complex(pairs) -> CubeComplex:
    """A tree from (parent, child) name pairs."""
    vertices = sorted({v for p in pairs for v in p})
    edges = [Edge(f"e.{u}.{v}", u, v) for u, v in pairs]
    c = make_complex(vertices, edges, [])
    g = _skeleton(c)
    if not nx.is_tree(g):
        raise ValueError("pairs do not form a tree")
    return c


def grid_complex(rows: int, cols: int) -> CubeComplex:
    """A rows x cols grid of squares."""
    vertices = [f"v{i}.{j}" for i in range(rows + 1) for j in range(cols + 1)]
    edges = []
    for i in range(rows + 1):
        for j in range(cols + 1):
            if j < cols:
                edges.append(Edge(f"h{i}.{j}", f"v{i}.{j}", f"v{i}.{j + 1}"))
            if i < rows:
                edges.append(Edge(f"u{i}.{j}", f"v{i}.{j}", f"v{i + 1}.{j}"))
    squares = []
    for i in range(rows):
        for j in range(cols):
            squares.append(
                (
                    f"s{i}.{j}",
                    (
                        (f"h{i}.{j}", 1),
                        (f"u{i}.{j + 1}", 1),
                        (f"h{i + 1}.{j}", -1),
                        (f"u{i}.{j}", -1),
                    ),
                )
            )
    return make_complex(vertices, edges, squares)


def hypercube_complex(k: int) -> CubeComplex:
    """The 2-skeleton of a k-cube."""
    vertices = [f"c{bits:0{max(k, 1)}b}" for bits in range(1 << k)]

    def vid(bits):
        return f"c{bits:0{max(k, 1)}b}"

    edges = []
    for bits in range(1 << k):
        for i in range(k):
            if not bits >> i & 1:
                edges.append(Edge(f"e{bits}.{i}", vid(bits), vid(bits | 1 << i)))
    squares = []
    for bits in range(1 << k):
        for i, j in combinations(range(k), 2):
            if bits >> i & 1 or bits >> j & 1:
                continue
            squares.append(
                (
                    f"s{bits}.{i}.{j}",
                    (
                        (f"e{bits}.{i}", 1),
                        (f"e{bits | 1 << i}.{j}", 1),
                        (f"e{bits | 1 << j}.{i}", -1),
                        (f"e{bits}.{j}", -1),
                    ),
                )
            )
    return make_complex(vertices, edges, squares)
