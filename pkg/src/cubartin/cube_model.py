"""Combinatorial cube complexes with vertex links and curvature checks.

A complex is a set of vertices, directed edges, and squares (closed boundary
paths of four directed edge traversals).  Higher cubes come in two restricted
shapes, which cover everything the constructions produce:

  * salvetti cubes: cliques of commuting loop edges at a designated base
    vertex (one d-cube per d-clique, closed under subsets), and
  * prisms: square x circle cells from a product with S^1, recorded as the
    square id plus the z-loops at its corner vertices.

Link vertices are edge-ends: an edge u -> v contributes its outgoing end
(e, +1) at u and its incoming end (e, -1) at v (both, for a loop).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import networkx as nx

from .words import Word, cyclic_reduce, free_reduce, invert

Traversal = tuple[str, int]  # (edge id, +1 forward / -1 backward)


@dataclass(frozen=True)
class Edge:
    eid: str
    src: str
    dst: str
    label: str | None = None

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class CubeComplex:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    squares: tuple[tuple[str, tuple[Traversal, Traversal, Traversal, Traversal]], ...]
    salvetti_cubes: frozenset = frozenset()  # frozensets of loop edge ids, size >= 3
    base_vertex: str | None = None
    prisms: tuple[str, ...] = ()  # square ids with a circle factor
    zloops: tuple[tuple[str, str], ...] = ()  # (vertex, z edge id), for prisms
    internal_edges: frozenset = frozenset()  # chain edges, for composite relators

    def __post_init__(self):
        _validate(self)

    # -- basic accessors --------------------------------------------------

    def edge(self, eid: str) -> Edge:
        return self._edge_map[eid]

    @property
    def _edge_map(self) -> dict[str, Edge]:
        m = getattr(self, "_edge_map_cache", None)
        if m is None:
            m = {e.eid: e for e in self.edges}
            object.__setattr__(self, "_edge_map_cache", m)
        return m

    @property
    def square_map(self) -> dict[str, tuple[Traversal, ...]]:
        return dict(self.squares)

    def tail(self, t: Traversal) -> str:
        e = self.edge(t[0])
        return e.src if t[1] == 1 else e.dst

    def head(self, t: Traversal) -> str:
        e = self.edge(t[0])
        return e.dst if t[1] == 1 else e.src

    def ends_at(self, v: str) -> list[Traversal]:
        """Edge-ends incident to v: (e, +1) = outgoing end, (e, -1) = incoming."""
        ends = []
        for e in self.edges:
            if e.src == v:
                ends.append((e.eid, 1))
            if e.dst == v:
                ends.append((e.eid, -1))
        return ends

    def out_end(self, t: Traversal) -> Traversal:
        """The end of the traversed edge at its starting vertex."""
        return (t[0], t[1])

    def in_end(self, t: Traversal) -> Traversal:
        """The end of the traversed edge at its finishing vertex."""
        return (t[0], -t[1])

    def zloop_at(self, v: str) -> str:
        return dict(self.zloops)[v]


def _validate(c: CubeComplex) -> None:
    vset = set(c.vertices)
    if len(vset) != len(c.vertices):
        raise ValueError("duplicate vertex ids")
    eids = [e.eid for e in c.edges]
    if len(set(eids)) != len(eids):
        raise ValueError("duplicate edge ids")
    for e in c.edges:
        if e.src not in vset or e.dst not in vset:
            raise ValueError(f"edge {e.eid} references unknown vertex")
    emap = {e.eid: e for e in c.edges}
    for sid, ts in c.squares:
        if len(ts) != 4:
            raise ValueError(f"square {sid} does not have 4 sides")
        for i in range(4):
            e, d = ts[i]
            if e not in emap or d not in (1, -1):
                raise ValueError(f"square {sid} has a bad traversal {ts[i]}")
        for i in range(4):
            cur, nxt = ts[i], ts[(i + 1) % 4]
            head = emap[cur[0]].dst if cur[1] == 1 else emap[cur[0]].src
            tail = emap[nxt[0]].src if nxt[1] == 1 else emap[nxt[0]].dst
            if head != tail:
                raise ValueError(f"square {sid} boundary does not close at side {i}")
    # salvetti cubes: loop labels at the base vertex, 2-faces present as squares
    if c.salvetti_cubes:
        if c.base_vertex is None:
            raise ValueError("salvetti cubes need a base vertex")
        square_edge_sets = {frozenset(e for e, _ in ts) for _, ts in c.squares}
        for cube in c.salvetti_cubes:
            if len(cube) < 3:
                raise ValueError("salvetti cubes must have dimension >= 3")
            for eid in cube:
                e = emap.get(eid)
                if e is None or not e.is_loop or e.src != c.base_vertex:
                    raise ValueError(f"salvetti cube edge {eid} is not a base loop")
            for pair in combinations(sorted(cube), 2):
                if frozenset(pair) not in square_edge_sets:
                    raise ValueError(f"salvetti cube {sorted(cube)} misses 2-face {pair}")
            for k in range(3, len(cube)):
                for sub in combinations(sorted(cube), k):
                    if frozenset(sub) not in c.salvetti_cubes:
                        raise ValueError("salvetti cubes not closed under subsets")
    smap = dict(c.squares)
    zmap = dict(c.zloops)
    for sid in c.prisms:
        if sid not in smap:
            raise ValueError(f"prism over unknown square {sid}")
        for t in smap[sid]:
            e = emap[t[0]]
            for v in (e.src, e.dst):
                if v not in zmap:
                    raise ValueError(f"prism over {sid}: no z-loop at vertex {v}")
    for v, z in c.zloops:
        e = emap.get(z)
        if e is None or not e.is_loop or e.src != v:
            raise ValueError(f"z-loop {z} is not a loop at {v}")


def make_complex(
    vertices,
    edges,
    squares,
    salvetti_cubes=(),
    base_vertex=None,
    prisms=(),
    zloops=(),
    internal_edges=(),
) -> CubeComplex:
    """Convenience constructor normalising the container types."""
    return CubeComplex(
        vertices=tuple(vertices),
        edges=tuple(Edge(*e) if not isinstance(e, Edge) else e for e in edges),
        squares=tuple((sid, tuple(ts)) for sid, ts in squares),
        salvetti_cubes=frozenset(frozenset(s) for s in salvetti_cubes),
        base_vertex=base_vertex,
        prisms=tuple(prisms),
        zloops=tuple(sorted(zloops)),
        internal_edges=frozenset(internal_edges),
    )


# -- links ----------------------------------------------------------------

@dataclass(frozen=True)
class LinkComplex:
    base: str
    link_vertices: tuple[Traversal, ...]
    link_edges: tuple[tuple[str, frozenset], ...]  # (owning cell id, end pair)
    link_triangles: tuple[frozenset, ...]

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.link_vertices)
        for _, pair in self.link_edges:
            if len(pair) == 2:
                g.add_edge(*pair)
        return g


def square_corners(c: CubeComplex, sid: str, ts) -> list[tuple[str, Traversal, Traversal]]:
    """The four corners of a square: (vertex, incoming end, outgoing end)."""
    corners = []
    for i in range(4):
        cur, nxt = ts[i], ts[(i + 1) % 4]
        v = c.head(cur)
        corners.append((v, c.in_end(cur), c.out_end(nxt)))
    return corners


def vertex_link(c: CubeComplex, v: str) -> LinkComplex:
    if v not in c.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    ends = tuple(sorted(c.ends_at(v)))
    edges = []
    for sid, ts in c.squares:
        for w, p, q in square_corners(c, sid, ts):
            if w == v:
                edges.append((sid, frozenset((p, q))))
    triangles: list[frozenset] = []
    if v == c.base_vertex:
        for cube in sorted(c.salvetti_cubes, key=sorted):
            labels = sorted(cube)
            for signs in product((1, -1), repeat=len(labels)):
                simplex = frozenset(zip(labels, signs))
                if len(labels) == 3:
                    triangles.append(simplex)
                else:
                    for tri in combinations(sorted(simplex), 3):
                        triangles.append(frozenset(tri))
    zmap = dict(c.zloops)
    smap = dict(c.squares)
    for sid in c.prisms:
        for w, p, q in square_corners(c, sid, smap[sid]):
            if w == v:
                z = zmap[v]
                triangles.append(frozenset((p, q, (z, 1))))
                triangles.append(frozenset((p, q, (z, -1))))
    return LinkComplex(v, ends, tuple(edges), tuple(dict.fromkeys(triangles)))


# -- nonpositive curvature ------------------------------------------------

@dataclass(frozen=True)
class NpcViolation:
    vertex: str
    kind: str  # "loop" | "bigon" | "non-flag"
    detail: str


def check_npc(c: CubeComplex) -> list[NpcViolation]:
    """Gromov link criterion: every vertex link simple and flag.

    Empty list means nonpositively curved.  For 2-dimensional complexes the
    flag condition is the absence of triangles in the link graph.
    """
    violations = []
    for v in c.vertices:
        link = vertex_link(c, v)
        seen: set[frozenset] = set()
        simple = True
        for cell, pair in link.link_edges:
            if len(pair) == 1:
                violations.append(
                    NpcViolation(v, "loop", f"cell {cell} folds the end {next(iter(pair))}")
                )
                simple = False
            elif pair in seen:
                p, q = sorted(pair)
                violations.append(
                    NpcViolation(v, "bigon", f"repeated link edge {p}-{q} (cell {cell})")
                )
                simple = False
            else:
                seen.add(pair)
        if not simple:
            continue
        graph = link.graph()
        simplices = set(link.link_triangles)
        for clique in nx.enumerate_all_cliques(graph):
            if len(clique) < 3:
                continue
            labels = frozenset(e for e, _ in clique)
            if len(labels) != len(clique):
                violations.append(
                    NpcViolation(v, "non-flag", f"clique reuses an edge: {sorted(clique)}")
                )
                continue
            if len(clique) == 3:
                if frozenset(clique) not in simplices:
                    violations.append(
                        NpcViolation(v, "non-flag", f"empty triangle {sorted(clique)}")
                    )
            else:
                # only salvetti cubes span simplices of dimension >= 3
                if v != c.base_vertex or labels not in c.salvetti_cubes:
                    violations.append(
                        NpcViolation(v, "non-flag", f"empty {len(clique)}-clique {sorted(clique)}")
                    )
    return violations


def euler_characteristic(c: CubeComplex) -> int:
    chi = len(c.vertices) - len(c.edges) + len(c.squares)
    chi -= len(c.prisms)  # 3-cells
    for cube in c.salvetti_cubes:
        chi += (-1) ** len(cube)
    return chi


# -- presentations --------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "relators", tuple(cyclic_reduce(r) for r in self.relators)
        )

    def exponent_matrix(self) -> list[list[int]]:
        index = {g: i for i, g in enumerate(self.generators)}
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for g, e in r:
                row[index[g]] += e
            rows.append(row)
        return rows


def _is_spanning_tree(c: CubeComplex, tree: frozenset) -> bool:
    if len(tree) != len(c.vertices) - 1:
        return False
    g = nx.Graph()
    g.add_nodes_from(c.vertices)
    for eid in tree:
        e = c.edge(eid)
        g.add_edge(e.src, e.dst)
    return nx.is_connected(g)


def extract_presentation(
    c: CubeComplex,
    spanning_tree,
    composite: bool = False,
    eliminate=None,
) -> Presentation:
    """Collapse a spanning tree: generators are the non-tree edges, one relator
    per square.  In composite mode, chain edges (those in c.internal_edges, or
    an explicit `eliminate` set) are Tietze-eliminated, merging each chain of
    squares into a single relator."""
    tree = frozenset(spanning_tree)
    if not _is_spanning_tree(c, tree):
        raise ValueError("not a spanning tree of the 1-skeleton")
    gens = [e.eid for e in c.edges if e.eid not in tree]
    relators = []
    for _, ts in c.squares:
        w = tuple((e, d) for e, d in ts if e not in tree)
        relators.append(free_reduce(w))
    if composite:
        candidates = set(eliminate) if eliminate is not None else set(c.internal_edges)
        candidates &= set(gens)
        gens, relators = _tietze_eliminate(gens, relators, candidates)
    relators = [r for r in (cyclic_reduce(r) for r in relators) if r]
    return Presentation(tuple(gens), tuple(relators))


def _tietze_eliminate(gens, relators, candidates):
    gens = list(gens)
    relators = [list(r) for r in relators]
    progress = True
    while progress and candidates:
        progress = False
        for x in sorted(candidates):
            pick = None
            for i, r in enumerate(relators):
                occ = [j for j, (g, _) in enumerate(r) if g == x]
                if len(occ) == 1:
                    pick = (i, occ[0])
                    break
            if pick is None:
                continue
            i, j = pick
            r = relators.pop(i)
            # rotate so the x occurrence leads, orient it positively
            r = r[j:] + r[:j]
            if r[0][1] == -1:
                r = list(invert(tuple(r)))
                r = r[-1:] + r[:-1]  # bring x back to the front
            assert r[0] == (x, 1)
            value = invert(tuple(r[1:]))  # x = (rest)^-1
            relators = [
                list(free_reduce(_substitute_letters(tuple(s), x, value)))
                for s in relators
            ]
            gens.remove(x)
            candidates.discard(x)
            progress = True
            break
    return gens, [tuple(r) for r in relators]


def _substitute_letters(w: Word, x: str, value: Word) -> Word:
    out = []
    for g, e in w:
        if g == x:
            out.extend(value if e == 1 else invert(value))
        else:
            out.append((g, e))
    return tuple(out)


# -- local convexity ------------------------------------------------------

def check_local_convexity(c: CubeComplex, circle) -> bool:
    """A closed edge path is locally convex when, at each of its vertices, the
    incoming and outgoing link ends are distinct and not joined by a corner."""
    path = [tuple(t) for t in circle]
    if not path:
        raise ValueError("empty path")
    if len({t[0] for t in path}) != len(path):
        raise ValueError("path repeats an edge")
    for i in range(len(path)):
        if c.head(path[i]) != c.tail(path[(i + 1) % len(path)]):
            raise ValueError("path not closed")
    for i in range(len(path)):
        cur, nxt = path[i], path[(i + 1) % len(path)]
        v = c.head(cur)
        p, q = c.in_end(cur), c.out_end(nxt)
        if p == q:
            return False
        link = vertex_link(c, v)
        if any(pair == frozenset((p, q)) for _, pair in link.link_edges):
            return False
    return True


# -- serialization --------------------------------------------------------

def complex_text(c: CubeComplex) -> str:
    lines = ["cubecomplex 1"]
    for v in c.vertices:
        lines.append(f"vertex {v}")
    for e in c.edges:
        rec = f"edge {e.eid} {e.src} {e.dst}"
        if e.label is not None:
            rec += f" {e.label}"
        lines.append(rec)
    for sid, ts in c.squares:
        sides = " ".join(f"{e}{'+' if d == 1 else '-'}" for e, d in ts)
        lines.append(f"square {sid} {sides}")
    for cube in sorted(c.salvetti_cubes, key=sorted):
        lines.append("cube " + " ".join(sorted(cube)))
    for sid in c.prisms:
        lines.append(f"prism {sid}")
    for v, z in c.zloops:
        lines.append(f"zloop {v} {z}")
    if c.base_vertex is not None:
        lines.append(f"base {c.base_vertex}")
    for eid in sorted(c.internal_edges):
        lines.append(f"internal {eid}")
    return "\n".join(lines) + "\n"


class ComplexParseError(ValueError):
    pass


def parse_complex(text: str) -> CubeComplex:
    vertices, edges, squares = [], [], []
    cubes, prisms, zloops, internal = [], [], [], []
    base = None
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0].split() != ["cubecomplex", "1"]:
        raise ComplexParseError("missing 'cubecomplex 1' header")
    for ln in lines[1:]:
        parts = ln.split()
        kind = parts[0]
        try:
            if kind == "vertex" and len(parts) == 2:
                vertices.append(parts[1])
            elif kind == "edge" and len(parts) in (4, 5):
                label = parts[4] if len(parts) == 5 else None
                edges.append(Edge(parts[1], parts[2], parts[3], label))
            elif kind == "square" and len(parts) == 6:
                ts = []
                for item in parts[2:]:
                    if item[-1] not in "+-":
                        raise ComplexParseError(f"bad traversal {item!r}")
                    ts.append((item[:-1], 1 if item[-1] == "+" else -1))
                squares.append((parts[1], tuple(ts)))
            elif kind == "cube" and len(parts) >= 4:
                cubes.append(frozenset(parts[1:]))
            elif kind == "prism" and len(parts) == 2:
                prisms.append(parts[1])
            elif kind == "zloop" and len(parts) == 3:
                zloops.append((parts[1], parts[2]))
            elif kind == "base" and len(parts) == 2:
                base = parts[1]
            elif kind == "internal" and len(parts) == 2:
                internal.append(parts[1])
            else:
                raise ComplexParseError(f"bad record {ln!r}")
        except ComplexParseError:
            raise
        except ValueError as exc:
            raise ComplexParseError(str(exc)) from None
    try:
        return make_complex(
            vertices, edges, squares, cubes, base, prisms, zloops, internal
        )
    except ValueError as exc:
        raise ComplexParseError(str(exc)) from None
