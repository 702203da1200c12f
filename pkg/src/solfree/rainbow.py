"""Properly colored digraph systems and rainbow directed path search.

A system bundles digraphs D_1..D_k on a shared vertex set with per-vertex
forbidden color lists f(v) (pairwise disjoint, each of size at most ell). A
path v_1..v_{r+1} is accepted when step i uses an arc of D_i, step colors are
pairwise distinct, and no step color lies in f(v_1) or f(v_{r+1}).

find_rainbow_greedy grows, level by level, the set of endpoints reachable by
accepted paths, keeping one witness path per endpoint; stalling returns None.
find_rainbow_exhaustive is the small-instance ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_MAX_VERTICES = 40
DEFAULT_MAX_LENGTH = 3


class RainbowError(ValueError):
    pass


class LoopArc(RainbowError):
    pass


class ImproperColoring(RainbowError):
    """Some vertex carries two out-arcs (or two in-arcs) of one color."""


class UnknownVertex(RainbowError):
    pass


class MismatchedVertexSets(RainbowError):
    pass


class ListBoundExceeded(RainbowError):
    pass


class OverlappingLists(RainbowError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class ColoredDigraph:
    """Arc-colored digraph; the coloring must be proper on both sides."""

    def __init__(self, vertices, arcs):
        self.vertices = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        seen_out: set[tuple[int, int]] = set()
        seen_in: set[tuple[int, int]] = set()
        cleaned = set()
        for tail, head, color in arcs:
            if tail not in vset or head not in vset:
                raise UnknownVertex(f"arc ({tail},{head}) leaves the vertex set")
            if tail == head:
                raise LoopArc(f"loop at {tail}")
            arc = (tail, head, color)
            if arc in cleaned:
                continue
            if (tail, color) in seen_out:
                raise ImproperColoring(f"two out-arcs of color {color} at {tail}")
            if (head, color) in seen_in:
                raise ImproperColoring(f"two in-arcs of color {color} at {head}")
            seen_out.add((tail, color))
            seen_in.add((head, color))
            cleaned.add(arc)
        self.arcs = tuple(sorted(cleaned))
        self._arc_set = cleaned
        self._out: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for tail, head, color in self.arcs:
            self._out[tail].append((head, color))

    def out_arcs(self, v) -> list[tuple[int, int]]:
        """(head, color) pairs leaving v, sorted."""
        return self._out[v]

    def has_arc(self, tail, head, color) -> bool:
        return (tail, head, color) in self._arc_set

    def __eq__(self, other):
        if not isinstance(other, ColoredDigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.vertices, self.arcs))

    def __repr__(self):
        return f"ColoredDigraph({len(self.vertices)} vertices, {len(self.arcs)} arcs)"


class RestrictedSystem:
    """Digraphs D_1..D_k on one vertex set plus disjoint forbidden-color lists."""

    def __init__(self, digraphs, f=None, ell=None):
        digraphs = tuple(digraphs)
        if not digraphs:
            raise RainbowError("need at least one digraph")
        self.vertices = digraphs[0].vertices
        for i, d in enumerate(digraphs[1:], start=2):
            if d.vertices != self.vertices:
                raise MismatchedVertexSets(f"digraph {i} disagrees on vertices")
        self.digraphs = digraphs
        vset = set(self.vertices)
        self.f: dict[int, frozenset] = {}
        claimed: dict[int, int] = {}  # color -> owning vertex
        for v, colors in sorted((f or {}).items()):
            if v not in vset:
                raise UnknownVertex(f"f defined on unknown vertex {v}")
            cs = frozenset(colors)
            for c in cs:
                if c in claimed:
                    raise OverlappingLists(
                        f"color {c} listed for both {claimed[c]} and {v}")
                claimed[c] = v
            if cs:
                self.f[v] = cs
        max_list = max((len(cs) for cs in self.f.values()), default=0)
        self.ell = max(1, max_list) if ell is None else ell
        if max_list > self.ell:
            raise ListBoundExceeded(f"|f(v)| up to {max_list} exceeds ell={self.ell}")

    @property
    def k(self) -> int:
        return len(self.digraphs)

    def forbidden(self, v) -> frozenset:
        return self.f.get(v, frozenset())


_EMPTY = frozenset()


@dataclass(frozen=True)
class RainbowPath:
    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.colors) + 1:
            raise RainbowError("need exactly one more vertex than colors")

    @property
    def length(self) -> int:
        return len(self.colors)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]


def verify_rainbow(sys: RestrictedSystem, path: RainbowPath):
    """(True, None) if the path is accepted, else (False, first violated tag).

    Tags: "vertices-repeat", "unknown-vertex", "A1:step-<i>" (step i arc not in
    D_i), "A2" (repeated color), "A3:start" / "A3:end" (color in an endpoint's
    forbidden list).
    """
    if path.length > sys.k:
        raise RainbowError(f"path length {path.length} exceeds {sys.k} digraphs")
    if len(set(path.vertices)) != len(path.vertices):
        return False, "vertices-repeat"
    vset = set(sys.vertices)
    if any(v not in vset for v in path.vertices):
        return False, "unknown-vertex"
    for i in range(path.length):
        if not sys.digraphs[i].has_arc(path.vertices[i], path.vertices[i + 1],
                                       path.colors[i]):
            return False, f"A1:step-{i + 1}"
    if len(set(path.colors)) != len(path.colors):
        return False, "A2"
    if any(c in sys.forbidden(path.start) for c in path.colors):
        return False, "A3:start"
    if any(c in sys.forbidden(path.end) for c in path.colors):
        return False, "A3:end"
    return True, None


def _check_length(sys, length):
    if not 1 <= length <= sys.k:
        raise RainbowError(f"length must be in 1..{sys.k}, got {length}")


def find_rainbow_greedy(sys: RestrictedSystem, length: int) -> RainbowPath | None:
    """Level-growth greedy; returns a verified path of the given length or None.

    Level r holds one witness path per reachable endpoint. An arc u->h of
    color c extends a witness ending at u when h is off the path, c is unused,
    c avoids f(start) and f(h), and no path color lies in f(h); these are
    exactly the constraints that keep every intermediate level accepted.
    Endpoints and arcs are scanned in sorted order, first witness per new
    endpoint wins, so reruns are deterministic. A stall (no level growth)
    returns None: success is only guaranteed under the independence-number
    hypotheses, which callers check separately.
    """
    _check_length(sys, length)
    frontier = {v: RainbowPath((v,), ()) for v in sys.vertices}
    for step in range(length):
        digraph = sys.digraphs[step]
        nxt: dict[int, RainbowPath] = {}
        for u in sorted(frontier):
            path = frontier[u]
            f_start = sys.forbidden(path.start)
            for head, color in digraph.out_arcs(u):
                if head in nxt:
                    continue
                if head in path.vertices:
                    continue
                if color in path.colors or color in f_start:
                    continue
                f_head = sys.forbidden(head)
                if color in f_head:
                    continue
                if any(pc in f_head for pc in path.colors):
                    continue
                nxt[head] = RainbowPath(path.vertices + (head,),
                                        path.colors + (color,))
        if not nxt:
            return None
        frontier = nxt
    best = frontier[min(frontier)]
    ok, tag = verify_rainbow(sys, best)
    assert ok, tag
    return best


def find_rainbow_exhaustive(sys: RestrictedSystem, length: int, *,
                            max_vertices: int = DEFAULT_MAX_VERTICES,
                            max_length: int = DEFAULT_MAX_LENGTH):
    """First accepted path in lexicographic order, or None.

    Order: start vertices ascending, then per step by (head, color). Unlike
    the greedy, prefixes are allowed to violate the endpoint list condition at
    intermediate vertices, so this search dominates the greedy and serves as
    its ground truth; the cost is a full |V|^(length+1) sweep, hence the
    budget guard.
    """
    _check_length(sys, length)
    if len(sys.vertices) > max_vertices or length > max_length:
        raise BudgetExceeded(
            f"|V|={len(sys.vertices)}, length={length} beyond "
            f"({max_vertices}, {max_length})")

    def extend(vertices: list, colors: list):
        if len(colors) == length:
            f_end = sys.forbidden(vertices[-1])
            if any(c in f_end for c in colors):
                return None
            return RainbowPath(tuple(vertices), tuple(colors))
        f_start = sys.forbidden(vertices[0])
        for head, color in sys.digraphs[len(colors)].out_arcs(vertices[-1]):
            if head in vertices or color in colors or color in f_start:
                continue
            got = extend(vertices + [head], colors + [color])
            if got is not None:
                return got
        return None

    for v in sys.vertices:
        got = extend([v], [])
        if got is not None:
            ok, tag = verify_rainbow(sys, got)
            assert ok, tag
            return got
    return None


def save_instance(sys: RestrictedSystem) -> str:
    """Text fixture form: vertex count, digraph sections, f lines, ell line.

    Requires vertices to be exactly 0..n-1.
    """
    n = len(sys.vertices)
    if sys.vertices != tuple(range(n)):
        raise RainbowError("text format needs contiguous vertices 0..n-1")
    lines = [str(n)]
    for i, d in enumerate(sys.digraphs, start=1):
        lines.append(f"digraph {i}")
        for tail, head, color in d.arcs:
            lines.append(f"{tail} {head} {color}")
    for v in sorted(sys.f):
        lines.append(f"f {v}: {','.join(str(c) for c in sorted(sys.f[v]))}")
    lines.append(f"ell {sys.ell}")
    return "\n".join(lines) + "\n"


def load_instance(text: str) -> RestrictedSystem:
    n = None
    arc_lists: list[list[tuple[int, int, int]]] = []
    f: dict[int, set] = {}
    ell = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            n = int(line)
            continue
        parts = line.split()
        if parts[0] == "digraph":
            if int(parts[1]) != len(arc_lists) + 1:
                raise RainbowError(f"digraph sections out of order at {line!r}")
            arc_lists.append([])
        elif parts[0] == "f":
            body = line[1:].strip()
            vtx_s, _, colors_s = body.partition(":")
            colors = [int(c) for c in colors_s.split(",") if c.strip()]
            f.setdefault(int(vtx_s), set()).update(colors)
        elif parts[0] == "ell":
            ell = int(parts[1])
        else:
            if not arc_lists:
                raise RainbowError(f"arc line {line!r} before any digraph header")
            tail, head, color = (int(x) for x in parts)
            arc_lists[-1].append((tail, head, color))
    if n is None or not arc_lists:
        raise RainbowError("instance needs a vertex count and a digraph section")
    vertices = range(n)
    digraphs = [ColoredDigraph(vertices, arcs) for arcs in arc_lists]
    return RestrictedSystem(digraphs, f, ell)
