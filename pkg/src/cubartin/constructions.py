"""Cube complexes realising the positive side of the classification.

Three building blocks, glued per defining-graph component:

  * an odd edge gives the two-vertex strip complex K_n (n squares between
    the a/b sides and a t-edge),
  * an even edge gives the one-vertex chain complex K_{n,a} on the
    presentation <a, x | a x^{n/2} = x^{n/2} a> with x = ab,
  * a component with more than one edge gives the amalgam of the Salvetti
    complex of its interior subgraph with one K_{n_i, s_i} per leaf, glued
    along the s_i circles.

A product with a circle (for the three-generator two-label-2 case) adds a
z-loop per vertex, a square per edge, and a prism per square.
"""

from __future__ import annotations

import networkx as nx

from . import defining_graph as dg
from .cube_model import (
    CubeComplex,
    Edge,
    check_npc,
    extract_presentation,
    make_complex,
    Presentation,
)
from .words import Word, concat, invert, power


def alternating(x: str, y: str, n: int) -> Word:
    """The length-n alternating word x y x y ..."""
    return tuple(((x, y)[i % 2], 1) for i in range(n))


def artin_relator(u: str, v: str, m: int) -> Word:
    return concat(alternating(u, v, m), invert(alternating(v, u, m)))


def artin_presentation(g: dg.DefiningGraph) -> Presentation:
    relators = tuple(artin_relator(u, v, m) for u, v, m in g.edge_list())
    return Presentation(g.vertices, relators)


def build_K_odd(n: int, u: str = "a", v: str = "b", prefix: str = "") -> CubeComplex:
    """Strip complex for a single edge labeled by odd n.

    Two vertices; edges a: v0->v1, b: v1->v0, t: v0->v1 and internal
    verticals e_1 .. e_{n-1}; n squares whose composite boundary spells
    (ab...a) t^-1 (b^-1 a^-1 ... b^-1) t^-1.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("K_n needs an odd label n >= 3")
    v0, v1 = prefix + "v0", prefix + "v1"
    t = prefix + "t"
    edges = [
        Edge(u, v0, v1, u),
        Edge(v, v1, v0, v),
        Edge(t, v0, v1),
    ]
    internal = [f"{prefix}e{i}" for i in range(1, n)]
    # top path vertices u_i alternate v0, v1, ...; bottom path w_i the reverse
    for i, eid in enumerate(internal, start=1):
        edges.append(Edge(eid, v0, v1))

    def vert_down(i):  # traversal u_i -> w_i
        if i == n:
            return (t, -1)
        eid = internal[i - 1]
        return (eid, -1) if i % 2 == 1 else (eid, 1)

    def vert_up(i):  # traversal w_i -> u_i
        if i == 0:
            return (t, -1)
        eid = internal[i - 1]
        return (eid, 1) if i % 2 == 1 else (eid, -1)

    squares = []
    for i in range(1, n + 1):
        top = (u, 1) if i % 2 == 1 else (v, 1)
        bottom_back = (v, -1) if i % 2 == 1 else (u, -1)
        squares.append((f"{prefix}s{i}", (top, vert_down(i), bottom_back, vert_up(i - 1))))
    return make_complex(
        [v0, v1], edges, squares, internal_edges=internal
    )


def build_K_even(n: int, g: str = "a", prefix: str = "", vertex: str | None = None) -> CubeComplex:
    """Chain complex K_{n,g} for a single edge labeled by even n.

    One vertex; loops g, x and y_1 .. y_{n/2 - 1}; n/2 commutation squares
    y_{i-1} x = x y_i with y_0 = y_{n/2} = g.
    """
    if n < 2 or n % 2 == 1:
        raise ValueError("K_{n,a} needs an even label n >= 2")
    v0 = vertex if vertex is not None else prefix + "v0"
    half = n // 2
    x = prefix + "x"
    ys = [f"{prefix}y{i}" for i in range(1, half)]
    chain = [g] + ys + [g]
    edges = [Edge(g, v0, v0, g), Edge(x, v0, v0)]
    edges += [Edge(y, v0, v0) for y in ys]
    squares = []
    for i in range(1, half + 1):
        squares.append(
            (f"{prefix}s{i}", ((chain[i - 1], 1), (x, 1), (chain[i], -1), (x, -1)))
        )
    return make_complex([v0], edges, squares, internal_edges=ys)


def build_salvetti(g: dg.DefiningGraph, vertex: str = "v0") -> CubeComplex:
    """Salvetti complex of a right-angled (all labels 2) defining graph."""
    for u, v, m in g.edge_list():
        if m != 2:
            raise ValueError(f"edge {u}-{v} labeled {m}; Salvetti needs all labels 2")
    edges = [Edge(v, vertex, vertex, v) for v in g.vertices]
    squares = []
    for u, v, _ in g.edge_list():
        squares.append((f"sq.{u}.{v}", ((u, 1), (v, 1), (u, -1), (v, -1))))
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(tuple(sorted(p)) for p in g.edges)
    cubes = [frozenset(c) for c in nx.enumerate_all_cliques(graph) if len(c) >= 3]
    return make_complex([vertex], edges, squares, cubes, base_vertex=vertex)


def _merge(pieces: list[CubeComplex], vertices, base_vertex=None) -> CubeComplex:
    edges, squares, cubes, internal = [], [], set(), set()
    seen_edges = set()
    for p in pieces:
        for e in p.edges:
            if e.eid not in seen_edges:
                seen_edges.add(e.eid)
                edges.append(e)
        squares.extend(p.squares)
        cubes |= set(p.salvetti_cubes)
        internal |= set(p.internal_edges)
    return make_complex(
        vertices, edges, squares, cubes, base_vertex, internal_edges=internal
    )


def build_amalgam(plan: dg.Amalgam, base: str = "v0") -> CubeComplex:
    """Glue the Salvetti complex of the interior graph with one K_{n,s} per
    leaf along the s-circles (all pieces share the single base vertex)."""
    pieces = [build_salvetti(plan.interior, vertex=base)]
    for s, t, n in plan.leaves:
        pieces.append(build_K_even(n, g=s, prefix=f"{s}.{t}.", vertex=base))
    merged = _merge(pieces, [base], base_vertex=base)
    return merged


def build_component(piece, base: str = "v0") -> CubeComplex:
    if isinstance(piece, dg.Circle):
        return make_complex([base], [Edge(piece.vertex, base, base, piece.vertex)], [])
    if isinstance(piece, dg.OddEdge):
        return build_K_odd(piece.n, piece.u, piece.v, prefix=f"{piece.u}.{piece.v}.")
    if isinstance(piece, dg.EvenEdge):
        return build_K_even(
            piece.n, g=piece.generator, prefix=f"{piece.u}.{piece.v}.", vertex=base
        )
    if isinstance(piece, dg.Amalgam):
        return build_amalgam(piece, base=base)
    raise TypeError(f"unknown plan piece {piece!r}")


def build_from_plan(plan: dg.ConstructionPlan) -> CubeComplex:
    base = "v0"
    pieces = []
    for item in plan.pieces:
        piece = build_component(item, base=base)
        if isinstance(item, dg.OddEdge):
            # wedge the strip complex at its v0 vertex
            piece = _rename_vertex(piece, f"{item.u}.{item.v}.v0", base)
        pieces.append(piece)
    vertices = [base]
    for p in pieces:
        vertices += [v for v in p.vertices if v != base]
    salvetti_base = base if any(p.base_vertex for p in pieces) or _needs_base(pieces) else None
    c = _merge(pieces, vertices, base_vertex=salvetti_base)
    if plan.times_circle is not None:
        c = build_product_with_circle(c, z_name=plan.times_circle)
    return c


def _needs_base(pieces) -> bool:
    return any(p.salvetti_cubes for p in pieces)


def _rename_vertex(c: CubeComplex, old: str, new: str) -> CubeComplex:
    sub = lambda v: new if v == old else v
    return make_complex(
        [sub(v) for v in c.vertices],
        [Edge(e.eid, sub(e.src), sub(e.dst), e.label) for e in c.edges],
        c.squares,
        c.salvetti_cubes,
        sub(c.base_vertex) if c.base_vertex else None,
        c.prisms,
        [(sub(v), z) for v, z in c.zloops],
        c.internal_edges,
    )


def build_for_graph(g: dg.DefiningGraph) -> CubeComplex:
    ok, witness = dg.satisfies_condition_iii(g)
    if not ok:
        u, v, m = witness
        raise ValueError(f"condition (iii) fails at edge {u}-{v} (label {m})")
    return build_from_plan(dg.amalgam_plan(g))


def build_product_with_circle(k: CubeComplex, z_name: str = "z") -> CubeComplex:
    """Product with a circle: z-loop per vertex, a square per (edge, z) pair,
    a prism per square (and, at a salvetti base, extended cubes)."""
    if check_npc(k):
        raise ValueError("product input fails the link condition")
    single = len(k.vertices) == 1

    def zid(v):
        return z_name if single else f"{z_name}.{v}"

    edges = list(k.edges)
    zloops = []
    for v in k.vertices:
        edges.append(Edge(zid(v), v, v, z_name if single else None))
        zloops.append((v, zid(v)))
    squares = list(k.squares)
    for e in k.edges:
        squares.append(
            (f"zs.{e.eid}", ((e.eid, 1), (zid(e.dst), 1), (e.eid, -1), (zid(e.src), -1)))
        )
    cubes = set(k.salvetti_cubes)
    base = k.base_vertex
    prisms = []
    for sid, ts in k.squares:
        eset = {e for e, _ in ts}
        if (
            base is not None
            and len(eset) == 2
            and all(k.edge(e).is_loop and k.edge(e).src == base for e in eset)
        ):
            cubes.add(frozenset(eset | {zid(base)}))
        else:
            prisms.append(sid)
    for cube in k.salvetti_cubes:
        cubes.add(frozenset(set(cube) | {zid(base)}))
    if base is None and single:
        # cubes added above need a base vertex; plain prisms do not
        base = k.vertices[0] if cubes else None
    return make_complex(
        k.vertices,
        edges,
        squares,
        cubes,
        base,
        prisms,
        zloops,
        k.internal_edges,
    )


# -- presentation extraction helpers --------------------------------------

def canonical_spanning_tree(c: CubeComplex) -> frozenset:
    """The t-edges of the strip pieces span every constructed complex."""
    if len(c.vertices) == 1:
        return frozenset()
    tree = {e.eid for e in c.edges if e.eid == "t" or e.eid.endswith(".t")}
    if len(tree) == len(c.vertices) - 1:
        return frozenset(tree)
    # fall back to a BFS tree for foreign complexes
    g = nx.Graph()
    g.add_nodes_from(c.vertices)
    for e in c.edges:
        if not e.is_loop:
            g.add_edge(e.src, e.dst, eid=e.eid)
    t = nx.bfs_tree(g, sorted(c.vertices)[0])
    return frozenset(g.edges[u, v]["eid"] for u, v in t.edges())


def extracted_presentation(c: CubeComplex) -> Presentation:
    """Composite-mode presentation over the canonical spanning tree."""
    return extract_presentation(c, canonical_spanning_tree(c), composite=True)


def expected_even_relator(g: str, x: str, n: int) -> Word:
    """g x^{n/2} g^-1 x^{-n/2}, the composite relator of K_{n,g}."""
    half = power(((x, 1),), n // 2)
    return concat(((g, 1),), half, ((g, -1),), invert(half))
