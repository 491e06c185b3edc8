"""Weighted dual graphs of surface singularities and their bracket notation.

A graph is either a chain [n1, ..., nk] or a star
[c; [l...], [m...], [n...]] with three branches; weights n >= 2 encode
self-intersection -n.  A multiset of such graphs forms a Dynkin type,
written e.g. "2[2^4]+[2,4]".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg


class DynkinSyntaxError(ValueError):
    """Raised on malformed bracket notation; carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class NotNegativeDefiniteError(ValueError):
    pass


class ParamOutOfRangeError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedDualGraph:
    """Immutable weighted graph, shaped as a chain or a three-branch star.

    vertices: tuple of (id, weight), weight >= 2 meaning self-intersection
    -weight; edges: frozenset of frozensets {id, id}.  The empty graph is
    allowed (a smooth point).
    """

    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex ids")
        for _, w in self.vertices:
            if w < 2:
                raise ValueError(f"vertex weight {w} < 2")
        idset = set(ids)
        for e in self.edges:
            if len(e) != 2 or not e <= idset:
                raise ValueError(f"bad edge {set(e)}")
        self._check_shape()

    def _check_shape(self):
        n = len(self.vertices)
        if n == 0:
            if self.edges:
                raise ValueError("edges without vertices")
            return
        if len(self.edges) != n - 1:
            raise ValueError("graph must be a connected tree (chain or 3-star)")
        deg = {v: 0 for v, _ in self.vertices}
        for e in self.edges:
            for v in e:
                deg[v] += 1
        # connectivity: tree with n-1 edges is connected iff no isolated part;
        # walk it to be safe
        seen = set()
        stack = [self.vertices[0][0]]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v])
        if len(seen) != n:
            raise ValueError("graph is not connected")
        branch = [v for v, d in deg.items() if d >= 3]
        if len(branch) > 1 or (branch and deg[branch[0]] != 3):
            raise ValueError("graph must be a chain or a star with three branches")

    # -- structure helpers ------------------------------------------------

    def adjacency(self):
        adj = {v: [] for v, _ in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].append(b)
            adj[b].append(a)
        return adj

    @property
    def weight_map(self):
        return dict(self.vertices)

    def is_empty(self):
        return not self.vertices

    def is_chain(self):
        return all(len(vs) <= 2 for vs in self.adjacency().values())

    def center(self):
        """The degree-3 vertex of a star, or None for chains."""
        for v, vs in self.adjacency().items():
            if len(vs) == 3:
                return v
        return None

    def chain_order(self):
        """Vertex ids of a chain listed end to end."""
        if not self.is_chain():
            raise ValueError("not a chain")
        if self.is_empty():
            return []
        adj = self.adjacency()
        ends = [v for v, vs in adj.items() if len(vs) <= 1]
        start = min(ends) if ends else self.vertices[0][0]
        order = [start]
        while len(order) < len(self.vertices):
            nxt = [v for v in adj[order[-1]] if v not in order]
            order.append(nxt[0])
        return order

    def star_parts(self):
        """(center id, [branch ids from center outward] x3) of a star."""
        c = self.center()
        if c is None:
            raise ValueError("not a star")
        adj = self.adjacency()
        branches = []
        for first in adj[c]:
            branch = [first]
            prev = c
            while True:
                nxt = [v for v in adj[branch[-1]] if v != prev]
                if not nxt:
                    break
                prev = branch[-1]
                branch.append(nxt[0])
            branches.append(branch)
        return c, branches

    # -- canonical form ----------------------------------------------------

    def canonical_key(self):
        w = self.weight_map
        if self.is_empty():
            return ("empty",)
        if self.is_chain():
            seq = tuple(w[v] for v in self.chain_order())
            return ("chain", min(seq, seq[::-1]))
        c, branches = self.star_parts()
        bw = sorted(
            (len(b), tuple(w[v] for v in b)) for b in branches
        )
        return ("star", w[c], tuple(seq for _, seq in bw))

    def canonical(self):
        key = self.canonical_key()
        if key[0] == "empty":
            return chain([])
        if key[0] == "chain":
            return chain(list(key[1]))
        return star(key[1], [list(b) for b in key[2]])

    def __eq__(self, other):
        if not isinstance(other, WeightedDualGraph):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return f"WeightedDualGraph({format_graph(self)!r})"


def chain(weights, prefix="v"):
    verts = tuple((f"{prefix}{i}", w) for i, w in enumerate(weights))
    edges = frozenset(
        frozenset((f"{prefix}{i}", f"{prefix}{i+1}")) for i in range(len(weights) - 1)
    )
    return WeightedDualGraph(verts, edges)


def star(center_weight, branch_weights, prefix="v"):
    if len(branch_weights) != 3 or any(not b for b in branch_weights):
        raise ValueError("a star needs exactly three nonempty branches")
    verts = [(f"{prefix}0", center_weight)]
    edges = []
    idx = 1
    for branch in branch_weights:
        prev = f"{prefix}0"
        for w in branch:
            vid = f"{prefix}{idx}"
            idx += 1
            verts.append((vid, w))
            edges.append(frozenset((prev, vid)))
            prev = vid
    return WeightedDualGraph(tuple(verts), frozenset(edges))


@dataclass(frozen=True)
class DynkinType:
    """Multiset of nonempty connected weighted dual graphs."""

    components: tuple

    def __post_init__(self):
        for g in self.components:
            if g.is_empty():
                raise ValueError("Dynkin type components must be nonempty")

    def canonical_key(self):
        return tuple(sorted(g.canonical_key() for g in self.components))

    def sorted_components(self):
        return sorted(self.components, key=_component_sort_key)

    def __eq__(self, other):
        if not isinstance(other, DynkinType):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return f"DynkinType({format_dynkin(self)!r})"


def _component_sort_key(g):
    key = g.canonical_key()
    if key[0] == "chain":
        return (0, -len(key[1]), key[1])
    return (1, sum(len(b) for b in key[2]), key[1], key[2])


# -- formatting -------------------------------------------------------------


def _format_runs(weights):
    out = []
    i = 0
    while i < len(weights):
        j = i
        while j < len(weights) and weights[j] == weights[i]:
            j += 1
        out.append(f"{weights[i]}^{j - i}" if j - i >= 2 else str(weights[i]))
        i = j
    return ",".join(out)


def format_graph(g):
    key = g.canonical_key()
    if key[0] == "empty":
        return "[]"
    if key[0] == "chain":
        return f"[{_format_runs(key[1])}]"
    center, branches = key[1], key[2]
    inner = ",".join(f"[{_format_runs(b)}]" for b in branches)
    return f"[{center};{inner}]"


def format_dynkin(t):
    comps = [format_graph(g) for g in t.sorted_components()]
    out = []
    i = 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        out.append(f"{j - i}{comps[i]}" if j - i >= 2 else comps[i])
        i = j
    return "+".join(out)


# -- parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise DynkinSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def run(self):
        """One weight run 'w' or 'w^r'; returns a weight list."""
        at = self.pos
        w = self.integer()
        if w < 2:
            self.pos = at
            self.error(f"weight {w} < 2")
        if self.peek() == "^":
            self.pos += 1
            r = self.integer()
            return [w] * r
        return [w]

    def chain_body(self):
        """After '[': runs up to (not consuming) ';' / ']'."""
        weights = list(self.run())
        while self.peek() == ",":
            self.pos += 1
            weights.extend(self.run())
        return weights

    def bracket_chain(self):
        self.expect("[")
        weights = self.chain_body()
        self.expect("]")
        return weights

    def graph(self):
        self.expect("[")
        at = self.pos
        first = self.chain_body()
        if self.peek() == ";":
            if len(first) != 1:
                self.pos = at
                self.error("star center must be a single weight")
            self.pos += 1
            branches = [self.bracket_chain()]
            while self.peek() == ",":
                self.pos += 1
                branches.append(self.bracket_chain())
            self.expect("]")
            if len(branches) != 3 or any(not b for b in branches):
                self.error(f"a star needs exactly three nonempty branches")
            return star(first[0], branches)
        self.expect("]")
        return chain(first)

    def item(self):
        mult = 1
        if self.peek().isdigit():
            at = self.pos
            mult = self.integer()
            if mult < 2:
                self.pos = at
                self.error("multiplicity prefix must be >= 2")
        g = self.graph()
        return [g] * mult

    def dynkin(self):
        graphs = list(self.item())
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                graphs.extend(self.item())
            elif ch == "":
                break
            else:
                self.error(f"unexpected character {ch!r}")
        return DynkinType(tuple(g for g in graphs if not g.is_empty()))


def parse_dynkin(text):
    return _Parser(text).dynkin()


def parse_graph(text):
    """Parse a single-component graph like '[2,4]' or '[2;[2],[3],[5]]'."""
    t = _Parser(text).dynkin()
    if len(t.components) != 1:
        raise DynkinSyntaxError("expected a single graph", 0)
    return t.components[0]


# -- matrices ----------------------------------------------------------------


def intersection_matrix(g):
    """Symmetric integer matrix: diagonal -weight, 1 on edges."""
    ids = [v for v, _ in g.vertices]
    index = {v: i for i, v in enumerate(ids)}
    w = g.weight_map
    n = len(ids)
    m = [[0] * n for _ in range(n)]
    for i, v in enumerate(ids):
        m[i][i] = -w[v]
    for e in g.edges:
        a, b = tuple(e)
        m[index[a]][index[b]] = 1
        m[index[b]][index[a]] = 1
    return m


def is_negative_definite(g):
    if g.is_empty():
        return True
    m = intersection_matrix(g)
    return all(
        (minor < 0 if k % 2 else minor > 0)
        for k, minor in enumerate(
            (linalg.int_det([row[: j + 1] for row in m[: j + 1]]) for j in range(len(m))),
            1,
        )
    )


def graph_determinant(g):
    """|det| of the intersection matrix; 1 for the empty graph."""
    if g.is_empty():
        return 1
    if not is_negative_definite(g):
        raise NotNegativeDefiniteError(f"{format_graph(g)} is not negative definite")
    d = linalg.det(intersection_matrix(g))
    assert d.denominator == 1
    return abs(int(d))


def dynkin_matrix(t):
    """Block-diagonal intersection matrix of a whole Dynkin type."""
    comps = t.sorted_components()
    blocks = [intersection_matrix(g) for g in comps]
    n = sum(len(b) for b in blocks)
    m = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                m[at + i][at + j] = x
        at += len(b)
    return m


# -- Table 1 families ---------------------------------------------------------

# Each family of (+) parts, keyed 1-21; params is a dict of allowed
# parameter names to (lo, hi) ranges with hi=None meaning unbounded.
TABLE1_FAMILIES = {
    1: ({}, lambda p: "[3]"),
    2: ({}, lambda p: "[2,4]"),
    3: ({}, lambda p: "[2]+[3]+[5]"),
    4: ({"n": (0, None)}, lambda p: f"[2^{p['n']}]+[{2+p['n']};[2],[3],[5]]"),
    5: ({"n": (0, None)}, lambda p: f"[2^{p['n']},3]+[3,{2+p['n']},5]"),
    6: ({"n": (0, None)}, lambda p: f"[2^{p['n']},4]+[2,{2+p['n']},5]"),
    7: ({"n": (0, None)}, lambda p: f"[2^{p['n']},6]+[2,{2+p['n']},3]"),
    8: ({}, lambda p: "[4]+[2;[2],[3],[5]]"),
    9: ({"m": (1, None)}, lambda p: f"[3,2^{p['m']-1},3]+[{2+p['m']};[2],[3],[5]]"),
    10: ({"l": (1, 2)}, lambda p: f"[{4+p['l']}]+[2;[2],[2^{p['l']}],[5]]"),
    11: (
        {"l": (1, 2), "m": (1, None)},
        lambda p: f"[{2+p['l']},2^{p['m']-1},4]+[{2+p['m']};[2],[2^{p['l']}],[5]]",
    ),
    12: ({}, lambda p: "[2,5]+[2;[2],[3],[5]]"),
    13: ({"m": (1, None)}, lambda p: f"[2,3,2^{p['m']-1},4]+[{2+p['m']};[2],[3],[5]]"),
    14: ({"l": (1, 4)}, lambda p: f"[{6+p['l']}]+[2;[2],[3],[2^{p['l']}]]"),
    15: (
        {"l": (1, 4), "m": (1, None)},
        lambda p: f"[{2+p['l']},2^{p['m']-1},6]+[{2+p['m']};[2],[3],[2^{p['l']}]]",
    ),
    16: ({"l": (1, 3)}, lambda p: f"[2^{p['l']},7]+[2;[2],[3],[{2+p['l']}]]"),
    17: (
        {"l": (1, 3), "m": (1, None)},
        lambda p: f"[2^{p['l']},3,2^{p['m']-1},6]+[{2+p['m']};[2],[3],[{2+p['l']}]]",
    ),
    18: ({}, lambda p: "[3,7]+[2;[2],[3],[3,2]]"),
    19: ({"m": (1, None)}, lambda p: f"[3,3,2^{p['m']-1},6]+[{2+p['m']};[2],[3],[3,2]]"),
    20: ({}, lambda p: "[2,8]+[2;[2],[3],[2,3]]"),
    21: ({"m": (1, None)}, lambda p: f"[2,4,2^{p['m']-1},6]+[{2+p['m']};[2],[3],[2,3]]"),
}


@dataclass(frozen=True)
class Table1Instance:
    family: int
    params: tuple  # sorted tuple of (name, value)

    @staticmethod
    def make(family, **params):
        return Table1Instance(family, tuple(sorted(params.items())))

    @property
    def param_dict(self):
        return dict(self.params)


def table1_generate(inst):
    """The full Dynkin type 2[2^4] + (family part with params substituted)."""
    if inst.family not in TABLE1_FAMILIES:
        raise ParamOutOfRangeError(f"no Table 1 family {inst.family}")
    bounds, template = TABLE1_FAMILIES[inst.family]
    params = inst.param_dict
    if set(params) != set(bounds):
        raise ParamOutOfRangeError(
            f"family {inst.family} takes parameters {sorted(bounds)}, got {sorted(params)}"
        )
    for name, (lo, hi) in bounds.items():
        v = params[name]
        if v < lo or (hi is not None and v > hi):
            raise ParamOutOfRangeError(
                f"family {inst.family}: {name}={v} outside [{lo}, {hi if hi is not None else 'inf'}]"
            )
    return parse_dynkin("2[2^4]+" + template(params))


def table1_enumerate(n_range=(0, 2), m_range=(1, 2), l_values=None):
    """All (instance, type) pairs over the given parameter boxes.

    l_values=None means every legal l for each family.
    """
    out = []
    for fam, (bounds, _) in sorted(TABLE1_FAMILIES.items()):
        boxes = [{}]
        for name, (lo, hi) in sorted(bounds.items()):
            if name == "n":
                vals = range(n_range[0], n_range[1] + 1)
            elif name == "m":
                vals = range(max(lo, m_range[0]), m_range[1] + 1)
            else:
                vals = [v for v in range(lo, hi + 1) if l_values is None or v in l_values]
            boxes = [dict(b, **{name: v}) for b in boxes for v in vals]
        for params in boxes:
            inst = Table1Instance.make(fam, **params)
            out.append((inst, table1_generate(inst)))
    return out


# -- JSON --------------------------------------------------------------------


def graph_to_json(g):
    return {
        "vertices": [{"id": v, "self_int": -w} for v, w in g.vertices],
        "edges": sorted(sorted(e) for e in g.edges),
    }


def graph_from_json(data):
    verts = tuple((v["id"], -v["self_int"]) for v in data["vertices"])
    edges = frozenset(frozenset(e) for e in data["edges"])
    return WeightedDualGraph(verts, edges)
