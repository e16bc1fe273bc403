"""Series-parallel poset expressions and their Hasse diagrams.

Grammar (ASCII, whitespace-insensitive)::

    expr  := "1" | "c" N | "mu(" expr ("," expr)+ ")" | "u(" expr ("," expr)+ ")" | "d(" expr ")"

``1`` is a point, ``cN`` a chain of N points, ``mu`` concatenation (ordered,
left is below right), ``u`` disjoint union (unordered) and ``d`` attaches a
handle: a new minimum, a new maximum and a middle point between them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from typing import Iterator, Union as _U

from .errors import ExprSyntaxError, SizeLimitError
from .series import (
    ChainSeries,
    NonStrictSeries,
    dee,
    hadamard,
    reciprocity,
    star,
    zeta,
)

ISO_LIMIT = 32


# ---------------------------------------------------------------------------
# expression tree


@dataclass(frozen=True)
class Point:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Chain:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a chain needs at least one point")

    def __str__(self):
        return f"c{self.n}"


@dataclass(frozen=True)
class Mu:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("mu needs at least two arguments")

    def __str__(self):
        return "mu(" + ",".join(map(str, self.children)) + ")"


@dataclass(frozen=True)
class Union:
    """Disjoint union; children are kept sorted so equal multisets compare equal."""

    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("u needs at least two arguments")
        ordered = tuple(sorted(self.children, key=str))
        if ordered != self.children:
            object.__setattr__(self, "children", ordered)

    def __str__(self):
        return "u(" + ",".join(map(str, self.children)) + ")"


@dataclass(frozen=True)
class Dee:
    child: object

    def __str__(self):
        return f"d({self.child})"


PosetExpr = _U[Point, Chain, Mu, Union, Dee]
POINT = Point()


def mu(*children) -> Mu:
    return normalize(Mu(tuple(children)))


def union(*children) -> Union:
    return normalize(Union(tuple(children)))


def normalize(e: PosetExpr) -> PosetExpr:
    """Flatten nested mu into one corolla and nested u into one union."""
    if isinstance(e, Mu):
        flat = []
        for c in map(normalize, e.children):
            flat.extend(c.children if isinstance(c, Mu) else (c,))
        return Mu(tuple(flat))
    if isinstance(e, Union):
        flat = []
        for c in map(normalize, e.children):
            flat.extend(c.children if isinstance(c, Union) else (c,))
        return Union(tuple(flat))
    if isinstance(e, Dee):
        return Dee(normalize(e.child))
    return e


def compact(e: PosetExpr) -> PosetExpr:
    """Display sugar: a corolla whose inputs are all points becomes a chain."""
    if isinstance(e, Mu):
        kids = tuple(compact(c) for c in e.children)
        if all(isinstance(c, Point) for c in kids):
            return Chain(len(kids))
        return Mu(kids)
    if isinstance(e, Union):
        return Union(tuple(compact(c) for c in e.children))
    if isinstance(e, Dee):
        return Dee(compact(e.child))
    return e


def is_wixarika(e: PosetExpr) -> bool:
    if isinstance(e, (Point, Chain)):
        return True
    if isinstance(e, Mu):
        return all(is_wixarika(c) for c in e.children)
    if isinstance(e, Dee):
        return is_wixarika(e.child)
    return False


def print_expr(e: PosetExpr) -> str:
    return str(e)


def parse_expr(text: str) -> PosetExpr:
    """Parse the expression grammar; nested mu/u are flattened."""
    src = "".join(text.split())
    # positions in error messages refer to the whitespace-stripped text
    expr, pos = _parse(src, 0)
    if pos != len(src):
        raise ExprSyntaxError(f"unexpected trailing input {src[pos:]!r}", pos)
    return normalize(expr)


def _parse(s: str, pos: int):
    if pos >= len(s):
        raise ExprSyntaxError("unexpected end of input", pos)
    if s[pos] == "1" and not s[pos + 1 : pos + 2].isdigit():
        return POINT, pos + 1
    if s[pos] == "c" and s[pos + 1 : pos + 2].isdigit():
        end = pos + 1
        while end < len(s) and s[end].isdigit():
            end += 1
        n = int(s[pos + 1 : end])
        if n < 1:
            raise ExprSyntaxError("chain length must be at least 1", pos)
        return Chain(n), end
    for name in ("mu", "u", "d"):
        if s.startswith(name + "(", pos):
            args, end = _parse_args(s, pos + len(name) + 1)
            if name == "d":
                if len(args) != 1:
                    raise ExprSyntaxError(f"d takes exactly one argument, got {len(args)}", pos)
                return Dee(args[0]), end
            if len(args) < 2:
                raise ExprSyntaxError(f"{name} takes at least two arguments, got {len(args)}", pos)
            return (Mu if name == "mu" else Union)(tuple(args)), end
    raise ExprSyntaxError(f"unexpected character {s[pos]!r}", pos)


def _parse_args(s: str, pos: int):
    args = []
    while True:
        e, pos = _parse(s, pos)
        args.append(e)
        if pos >= len(s):
            raise ExprSyntaxError("missing ')'", pos)
        if s[pos] == ",":
            pos += 1
        elif s[pos] == ")":
            return args, pos + 1
        else:
            raise ExprSyntaxError(f"expected ',' or ')', got {s[pos]!r}", pos)


def desugar(e: PosetExpr) -> PosetExpr:
    """Rewrite chains and handles in terms of point, mu and u only."""
    if isinstance(e, Chain):
        return POINT if e.n == 1 else Mu((POINT,) * e.n)
    if isinstance(e, Mu):
        return normalize(Mu(tuple(desugar(c) for c in e.children)))
    if isinstance(e, Union):
        return normalize(Union(tuple(desugar(c) for c in e.children)))
    if isinstance(e, Dee):
        return normalize(Mu((POINT, Union((POINT, desugar(e.child))), POINT)))
    return e


# ---------------------------------------------------------------------------
# evaluation homomorphism


@lru_cache(maxsize=65536)
def eval_strict(e: PosetExpr) -> ChainSeries:
    if isinstance(e, Point):
        return zeta(1)
    if isinstance(e, Chain):
        return zeta(e.n)
    if isinstance(e, Mu):
        return reduce(star, map(eval_strict, e.children))
    if isinstance(e, Union):
        return reduce(hadamard, map(eval_strict, e.children))
    if isinstance(e, Dee):
        return dee(eval_strict(e.child))
    raise TypeError(f"not a poset expression: {e!r}")


def eval_nonstrict(e: PosetExpr) -> NonStrictSeries:
    return reciprocity(eval_strict(e), n_points(e))


def n_points(e: PosetExpr) -> int:
    if isinstance(e, Point):
        return 1
    if isinstance(e, Chain):
        return e.n
    if isinstance(e, (Mu, Union)):
        return sum(n_points(c) for c in e.children)
    if isinstance(e, Dee):
        return n_points(e.child) + 3
    raise TypeError(f"not a poset expression: {e!r}")


def dee_input_min_indices(e: PosetExpr) -> list[int]:
    """Lowest basis index of the series entering each handle, bottom-up."""
    out: list[int] = []

    def walk(x):
        if isinstance(x, (Mu, Union)):
            for c in x.children:
                walk(c)
        elif isinstance(x, Dee):
            walk(x.child)
            out.append(eval_strict(x.child).min_index)

    walk(e)
    return out


# ---------------------------------------------------------------------------
# Hasse diagrams


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class HasseDigraph:
    """Covering relation on vertices 0..n-1; edge (u, v) means u is covered by v."""

    n: int
    edges: tuple = field(default=())

    def __post_init__(self):
        edges = tuple(sorted(set(map(tuple, self.edges))))
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"bad edge {(u, v)} for {self.n} vertices")
        self.topological_order  # raises on cycles
        for u, v in edges:
            # a covering edge cannot be implied by a longer path
            if any(self.below[w] >> u & 1 for w in _bits(self.lower_covers[v] & ~(1 << u))):
                raise ValueError(f"edge {(u, v)} is transitive, not a cover")

    @classmethod
    def from_relations(cls, n: int, pairs) -> "HasseDigraph":
        """Transitive reduction of the order generated by ``pairs`` (u < v)."""
        succ = [0] * n
        for u, v in pairs:
            succ[u] |= 1 << v
        reach = [0] * n
        order = _toposort(n, [[v for v in _bits(succ[u])] for u in range(n)])
        for u in reversed(order):
            r = 0
            for v in _bits(succ[u]):
                r |= (1 << v) | reach[v]
            reach[u] = r
        edges = []
        for u in range(n):
            for v in _bits(reach[u]):
                # v covers u unless some w with u < w < v
                if not any(reach[w] >> v & 1 for w in _bits(reach[u] & ~(1 << v))):
                    edges.append((u, v))
        return cls(n, tuple(edges))

    @cached_property
    def upper_covers(self) -> tuple:
        up = [0] * self.n
        for u, v in self.edges:
            up[u] |= 1 << v
        return tuple(up)

    @cached_property
    def lower_covers(self) -> tuple:
        dn = [0] * self.n
        for u, v in self.edges:
            dn[v] |= 1 << u
        return tuple(dn)

    @cached_property
    def topological_order(self) -> tuple:
        return tuple(_toposort(self.n, [list(_bits(m)) for m in self.upper_covers]))

    @cached_property
    def below(self) -> tuple:
        """below[v]: bitmask of elements strictly less than v."""
        out = [0] * self.n
        for v in self.topological_order:
            m = 0
            for u in _bits(self.lower_covers[v]):
                m |= (1 << u) | out[u]
            out[v] = m
        return tuple(out)

    @cached_property
    def above(self) -> tuple:
        out = [0] * self.n
        for v in range(self.n):
            for u in _bits(self.below[v]):
                out[u] |= 1 << v
        return tuple(out)

    @cached_property
    def components(self) -> int:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in range(self.n)})

    @cached_property
    def longest_chain(self) -> int:
        """Number of vertices in a longest chain."""
        depth = [1] * self.n
        for v in self.topological_order:
            for u in _bits(self.lower_covers[v]):
                depth[v] = max(depth[v], depth[u] + 1)
        return max(depth, default=0)

    @property
    def betti(self) -> int:
        return len(self.edges) - self.n + self.components

    def relabel(self, perm) -> "HasseDigraph":
        """Image under the vertex map v -> perm[v]."""
        return HasseDigraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))


def _toposort(n: int, succ: list) -> list:
    indeg = [0] * n
    for u in range(n):
        for v in succ[u]:
            indeg[v] += 1
    stack = [v for v in range(n) if indeg[v] == 0][::-1]
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    if len(order) != n:
        raise ValueError("relation has a cycle")
    return order


def hasse(e: PosetExpr) -> HasseDigraph:
    n, edges, _, _ = _build(desugar(e), 0)
    return HasseDigraph(n, tuple(edges))


def _build(e, offset):
    """Returns (vertex count, edges, minimal elements, maximal elements)."""
    if isinstance(e, Point):
        return 1, [], [offset], [offset]
    if isinstance(e, Mu):
        total, edges, mins, prev_max = 0, [], None, None
        for c in e.children:
            n, ce, cmin, cmax = _build(c, offset + total)
            edges += ce
            if prev_max is None:
                mins = cmin
            else:
                edges += [(a, b) for a in prev_max for b in cmin]
            prev_max = cmax
            total += n
        return total, edges, mins, prev_max
    if isinstance(e, Union):
        total, edges, mins, maxs = 0, [], [], []
        for c in e.children:
            n, ce, cmin, cmax = _build(c, offset + total)
            edges += ce
            mins += cmin
            maxs += cmax
            total += n
        return total, edges, mins, maxs
    raise TypeError(f"unexpected node after desugaring: {e!r}")


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class PosetInvariants:
    n_points: int
    max_chain: int
    betti: int
    components: int
    mu_count: int
    dee_count: int
    leaf_count: int


def _counts(e) -> tuple[int, int, int]:
    """(mu uses, handle count, leaves) with an n-corolla counting n-1 uses."""
    if isinstance(e, Point):
        return 0, 0, 1
    if isinstance(e, Chain):
        return e.n - 1, 0, e.n
    if isinstance(e, Dee):
        m, d, l = _counts(e.child)
        return m, d + 1, l
    m = len(e.children) - 1 if isinstance(e, Mu) else 0
    d = l = 0
    for c in e.children:
        cm, cd, cl = _counts(c)
        m, d, l = m + cm, d + cd, l + cl
    return m, d, l


def invariants(e: PosetExpr) -> PosetInvariants:
    h = hasse(e)
    m, d, leaves = _counts(e)
    return PosetInvariants(
        n_points=h.n,
        max_chain=h.longest_chain,
        betti=h.betti,
        components=h.components,
        mu_count=m,
        dee_count=d,
        leaf_count=leaves,
    )


# ---------------------------------------------------------------------------
# isomorphism via canonical forms


def canonical_form(h: HasseDigraph) -> str:
    """A string that two digraphs share iff they are order-isomorphic.

    Posets are split recursively into connected components (sorted) and
    ordinal summands (kept in order); what remains indecomposable is labelled
    canonically by refinement plus backtracking.
    """
    if h.n > ISO_LIMIT:
        raise SizeLimitError(f"isomorphism test limited to {ISO_LIMIT} vertices, got {h.n}")
    comparable = [h.below[v] | h.above[v] for v in range(h.n)]
    return _canon((1 << h.n) - 1, comparable, h)


def _split(mask: int, adj) -> list[int]:
    """Connected components of the graph ``adj`` restricted to ``mask``."""
    parts = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj(v) & mask
            frontier = nxt & ~comp
            comp |= nxt
        parts.append(comp)
        rest &= ~comp
    return parts


def _canon(mask: int, comparable, h: HasseDigraph) -> str:
    if mask & (mask - 1) == 0:
        return "1"
    comps = _split(mask, lambda v: comparable[v])
    if len(comps) > 1:
        return "u(" + ",".join(sorted(_canon(c, comparable, h) for c in comps)) + ")"
    summands = _split(mask, lambda v: ~comparable[v] & ~(1 << v))
    if len(summands) > 1:
        # every element of an earlier summand is below every element of a later one
        summands.sort(key=lambda s: bin(h.below[(s & -s).bit_length() - 1] & mask).count("1"))
        return "mu(" + ",".join(_canon(s, comparable, h) for s in summands) + ")"
    return _canon_prime(mask, h)


def _canon_prime(mask: int, h: HasseDigraph) -> str:
    verts = list(_bits(mask))
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    below = [0] * n
    for v in verts:
        for u in _bits(h.below[v] & mask):
            below[idx[v]] |= 1 << idx[u]
    sub = HasseDigraph.from_relations(n, [(u, v) for v in range(n) for u in _bits(below[v])])
    return "p" + str(n) + ":" + ";".join(f"{u}>{v}" for u, v in _canonical_labeling(sub))


def _refine(h: HasseDigraph, colors: list[int]) -> list[int]:
    """Colour refinement by (colour, sorted lower-cover colours, sorted upper-cover colours)."""
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[u] for u in _bits(h.lower_covers[v]))),
                tuple(sorted(colors[u] for u in _bits(h.upper_covers[v]))),
            )
            for v in range(h.n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _canonical_labeling(h: HasseDigraph) -> tuple:
    """Lexicographically least sorted edge list over refined labelings."""
    depth = [0] * h.n
    for v in h.topological_order:
        for u in _bits(h.lower_covers[v]):
            depth[v] = max(depth[v], depth[u] + 1)
    start = [
        (depth[v], bin(h.lower_covers[v]).count("1"), bin(h.upper_covers[v]).count("1"))
        for v in range(h.n)
    ]
    ranks = {s: r for r, s in enumerate(sorted(set(start)))}
    best = [None]

    def search(colors):
        colors = _refine(h, colors)
        if len(set(colors)) == h.n:
            code = tuple(sorted((colors[u], colors[v]) for u, v in h.edges))
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        # branch on the smallest non-singleton colour class
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(h.n) if colors[v] == target]
        seen_twins = set()
        for v in cell:
            twin_key = (h.lower_covers[v], h.upper_covers[v])
            if twin_key in seen_twins:
                continue  # swapping twins is an automorphism
            seen_twins.add(twin_key)
            new = [2 * c + (1 if c >= target else 0) for c in colors]
            new[v] = 2 * target
            search(new)

    search([ranks[s] for s in start])
    return best[0]


def isomorphic(a: HasseDigraph, b: HasseDigraph) -> bool:
    if a.n != b.n or len(a.edges) != len(b.edges):
        if max(a.n, b.n) > ISO_LIMIT:
            raise SizeLimitError(f"isomorphism test limited to {ISO_LIMIT} vertices")
        return False
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# generators


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple:
    """Connected SP posets with n points, one per isomorphism type."""
    if n == 1:
        return (POINT,)
    out = []
    for seq in _series_sequences(n, first=True):
        out.append(Mu(seq))
    return tuple(out)


def _series_sequences(n: int, first: bool):
    # ordered summands, each a point or a disconnected poset; at least two of them
    for size in range(1, n + 1):
        if first and size == n:
            continue
        for head in _indecomposable(size):
            if size == n:
                yield (head,)
            else:
                for tail in _series_sequences(n - size, first=False):
                    yield (head,) + tail


@lru_cache(maxsize=None)
def _indecomposable(n: int) -> tuple:
    return ((POINT,) if n == 1 else ()) + _disconnected(n)


@lru_cache(maxsize=None)
def _disconnected(n: int) -> tuple:
    pool = [(k, e) for k in range(1, n) for e in _connected(k)]
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            if len(acc) >= 2:
                out.append(Union(tuple(acc)))
            return
        for j in range(start, len(pool)):
            k, e = pool[j]
            if k <= remaining:
                rec(j, remaining - k, acc + [e])

    rec(0, n, [])
    return tuple(out)


def enumerate_sp(n: int) -> tuple:
    """Every series-parallel poset with n points, exactly once up to isomorphism."""
    if n < 1:
        return ()
    return _connected(n) + _disconnected(n)


def random_wixarika(rng: random.Random, max_points: int) -> PosetExpr:
    """A random expression in point, mu and d with between 1 and max_points points."""
    return normalize(_random_tree(rng, rng.randint(1, max_points), allow_union=False))


def random_sp(rng: random.Random, max_points: int) -> PosetExpr:
    return normalize(_random_tree(rng, rng.randint(1, max_points), allow_union=True))


def _random_tree(rng, k, allow_union):
    if k == 1:
        return POINT
    options = ["mu"]
    if k >= 4:
        options.append("d")
    if allow_union:
        options.append("u")
    op = rng.choice(options)
    if op == "d":
        return Dee(_random_tree(rng, k - 3, allow_union))
    parts = _random_composition(rng, k)
    kids = tuple(_random_tree(rng, p, allow_union) for p in parts)
    return Mu(kids) if op == "mu" else Union(kids)


def _random_composition(rng, k):
    # split k into at least two positive parts
    cuts = sorted(rng.sample(range(1, k), rng.randint(1, min(k - 1, 3))))
    bounds = [0] + cuts + [k]
    return [b - a for a, b in zip(bounds, bounds[1:])]
