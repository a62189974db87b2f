"""Finite windows of the level Schreier graphs and orbital components.

The level-``n`` Schreier graph has the level-``n`` tree vertices as its
vertex set and an edge ``v -- s(v)`` for every generator ``s``; loops
are dropped (the reduced graph).  Vertex sets are infinite, so the
graphs are only ever exposed through balls and letter windows, guarded
by a vertex cap.

For an end ``u``, the orbital component piece ``T_m(u)`` (vertices
agreeing with ``u`` beyond level ``m``) is identified with the level-
``m`` graph through the length-``m`` prefix; the edges leaving it
correspond to pairs ``(v, q)`` whose section at ``v`` moves the tail of
``u``, computed here from the activity pairs.  Windows are all this
module computes; the end-space topology itself is out of scope.

Every exported ordering is canonical (letters by increasing absolute
value, negative first), so repeated runs produce identical bytes.
"""

from collections import deque
from dataclasses import dataclass, field

from .automaton import (
    EndSpec,
    KneadingError,
    State,
    ZAutomaton,
    a_state,
    letter_key,
    word_key,
)

DEFAULT_VERTEX_CAP = 100_000

Label = tuple[State, int]


class VertexCapExceeded(RuntimeError):
    """A window construction hit the configured vertex cap."""


def generator_labels(aut: ZAutomaton) -> tuple[Label, ...]:
    """Signed generators in canonical order: a1, a1^-1, ..., bp, bp^-1."""
    labels = []
    for state in aut.generators:
        labels.append((state, 1))
        labels.append((state, -1))
    return tuple(labels)


def label_name(label: Label) -> str:
    state, sign = label
    return state.name if sign > 0 else f"{state.name}^-1"


def _label_index(aut: ZAutomaton, label: Label) -> int:
    state, sign = label
    return 2 * (aut.state_code(state) - 1) + (0 if sign > 0 else 1)


def neighbors(aut: ZAutomaton, vertex) -> list[tuple[Label, tuple[int, ...]]]:
    """Images of a vertex under all signed generators that move it."""
    vertex = tuple(int(z) for z in vertex)
    result = []
    for state in aut.generators:
        code = aut.state_code(state)
        for sign in (1, -1):
            image = aut._k_gen_act(code, sign, vertex)
            if image != vertex:
                result.append(((state, sign), image))
    return result


@dataclass(frozen=True)
class SpineData:
    """Depth-``m`` address and state whose section is the translating state."""

    m: int
    word: tuple[int, ...]
    state: State


def spine(aut: ZAutomaton, m: int) -> SpineData:
    """Walk the restriction diagram backwards from ``a1`` for ``m`` steps.

    Yields the unique pair with ``state`` restricting to ``a1`` along
    ``word``; the word is the reverse of the length-``m`` prefix of the
    infinite word spelled by the defining letter sequences.
    """
    if m < 1:
        raise KneadingError("spine data needs level >= 1")
    incoming = aut.incoming()
    current = a_state(1)
    letters = []
    for _ in range(m):
        preds = incoming[current]
        if len(preds) != 1:
            raise KneadingError(
                f"spine undefined: state {current} has {len(preds)} incoming edges"
            )
        current, z = preds[0]
        letters.append(z)
    return SpineData(m, tuple(reversed(letters)), current)


@dataclass(frozen=True)
class SchreierBall:
    """A radius-``r`` window of a level Schreier graph.

    ``edges`` contains directed labeled edges ``(v, label, w)`` with
    both endpoints in the ball and ``v != w``; it is closed under label
    inversion.  ``vertices`` is sorted canonically.
    """

    automaton: ZAutomaton = field(compare=False)
    center: tuple[int, ...]
    radius: int
    vertices: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[tuple[int, ...], Label, tuple[int, ...]]]

    @property
    def level(self) -> int:
        return len(self.center)

    def undirected_edges(self):
        """One record per undirected edge, oriented by the positive generator."""
        picked = [(v, lab, w) for (v, lab, w) in self.edges if lab[1] > 0]
        picked.sort(key=lambda e: (word_key(e[0]), _label_index(self.automaton, e[1])))
        return picked


def ball(aut: ZAutomaton, center, radius: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> SchreierBall:
    """Breadth-first ball around ``center`` in the level Schreier graph."""
    if radius < 0:
        raise KneadingError("the radius must be nonnegative")
    center = tuple(int(z) for z in center)
    signed = [
        ((state, sign), aut.state_code(state), sign)
        for state in aut.generators
        for sign in (1, -1)
    ]
    act = aut._k_gen_act
    dist = {center: 0}
    queue = deque([center])
    while queue:
        v = queue.popleft()
        if dist[v] == radius:
            continue
        for _, code, sign in signed:
            w = act(code, sign, v)
            if w != v and w not in dist:
                if len(dist) >= vertex_cap:
                    raise VertexCapExceeded(
                        f"ball construction exceeded the vertex cap ({vertex_cap})"
                    )
                dist[w] = dist[v] + 1
                queue.append(w)
    vertices = tuple(sorted(dist, key=word_key))
    edges = set()
    for v in vertices:
        for label, code, sign in signed:
            w = act(code, sign, v)
            if w != v and w in dist:
                edges.add((v, label, w))
    return SchreierBall(aut, center, radius, vertices, frozenset(edges))


def is_tree(ball: SchreierBall) -> tuple[bool, list | None]:
    """Acyclicity of the ball as an undirected graph, with a cycle witness.

    Parallel edges (two generator labels joining the same vertex pair)
    count as a two-vertex cycle.
    """
    undirected = {}
    for v, lab, w in ball.edges:
        pair = (v, w) if word_key(v) <= word_key(w) else (w, v)
        state, sign = lab
        undirected.setdefault(pair, set()).add(state)
    for (v, w), labels in sorted(undirected.items(), key=lambda it: (word_key(it[0][0]), word_key(it[0][1]))):
        if len(labels) > 1:
            return False, [list(v), list(w)]
    adjacency = {v: [] for v in ball.vertices}
    for v, w in undirected:
        adjacency[v].append(w)
        adjacency[w].append(v)
    for v in adjacency:
        adjacency[v].sort(key=word_key)
    parent: dict = {}
    for root in ball.vertices:
        if root in parent:
            continue
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    return False, _cycle_from_parents(parent, v, w)
    return True, None


def _cycle_from_parents(parent, v, w):
    ancestors = {}
    node = v
    while node is not None:
        ancestors[node] = None
        node = parent[node]
    node = w
    path_w = []
    while node not in ancestors:
        path_w.append(node)
        node = parent[node]
    meet = node
    path_v = []
    node = v
    while node != meet:
        path_v.append(node)
        node = parent[node]
    cycle = path_v + [meet] + list(reversed(path_w))
    return [list(u) for u in cycle]


# ---------------------------------------------------------------------------
# inductive structure of consecutive levels


@dataclass(frozen=True)
class InductiveStructureReport:
    passed: bool
    m: int
    letters: tuple[int, ...]
    copy_edges_checked: int
    spine_edges_checked: int
    violations: tuple[str, ...]


def verify_inductive_structure(aut: ZAutomaton, m: int, letters) -> InductiveStructureReport:
    """Check the two construction rules tying level ``m`` to level ``m+1``.

    Within the letter window: an edge ``v -- v'`` at level ``m`` must
    reappear as ``v.i -- v'.i`` for every window letter ``i``, the extra
    edges must be exactly the spine line ``w_m.i -- w_m.(i+1)`` labeled
    by the spine state, and nothing else may occur.
    """
    if m < 1:
        raise KneadingError("the inductive step needs level >= 1")
    letters = tuple(sorted({int(z) for z in letters}, key=letter_key))
    window = set(letters)
    sp = spine(aut, m)
    violations = []

    def window_edges(level):
        verts = _window_vertices(letters, level)
        found = set()
        for v in verts:
            for label, w in neighbors(aut, v):
                if w in verts:
                    found.add((v, label, w))
        return verts, found

    verts_m, edges_m = window_edges(m)
    verts_m1, edges_m1 = window_edges(m + 1)

    copy_checked = 0
    spine_checked = 0
    for v, label, w in sorted(edges_m1, key=lambda e: (word_key(e[0]), _label_index(aut, e[1]))):
        if v[-1] == w[-1]:
            if (v[:-1], label, w[:-1]) in edges_m:
                copy_checked += 1
            else:
                violations.append(
                    f"edge {v} --{label_name(label)}-- {w} has no level-{m} counterpart"
                )
        elif v[:-1] == sp.word and w[:-1] == sp.word and abs(v[-1] - w[-1]) == 1:
            want_sign = 1 if w[-1] - v[-1] == 1 else -1
            if label == (sp.state, want_sign):
                spine_checked += 1
            else:
                violations.append(
                    f"spine edge {v} -- {w} carries label {label_name(label)} "
                    f"instead of {sp.state.name}"
                )
        else:
            violations.append(
                f"unexpected edge {v} --{label_name(label)}-- {w}"
            )

    for v, label, w in sorted(edges_m, key=lambda e: (word_key(e[0]), _label_index(aut, e[1]))):
        for i in letters:
            if (v + (i,), label, w + (i,)) not in edges_m1:
                violations.append(
                    f"copy of {v} --{label_name(label)}-- {w} at letter {i} is missing"
                )
    if all(z in window for z in sp.word):
        for i in letters:
            if i + 1 in window:
                edge = (sp.word + (i,), (sp.state, 1), sp.word + (i + 1,))
                if edge not in edges_m1:
                    violations.append(
                        f"spine edge {edge[0]} -- {edge[2]} is missing"
                    )

    return InductiveStructureReport(
        passed=not violations,
        m=m,
        letters=letters,
        copy_edges_checked=copy_checked,
        spine_edges_checked=spine_checked,
        violations=tuple(violations[:16]),
    )


def _window_vertices(letters, level):
    verts = {()}
    for _ in range(level):
        verts = {v + (z,) for v in verts for z in letters}
    return verts


# ---------------------------------------------------------------------------
# leaving edges of orbital components


@dataclass(frozen=True)
class LeavingEdgeSet:
    """Edges of the orbital component leaving the level-``m`` piece.

    Each member is ``(vertex, label)``: the edge starts at the component
    vertex with that length-``m`` prefix and its label's section moves
    the tail of the end.
    """

    end: EndSpec
    m: int
    edges: frozenset[tuple[tuple[int, ...], Label]]

    def sorted_edges(self):
        return sorted(
            self.edges, key=lambda e: (word_key(e[0]), e[1][0].sort_key(), -e[1][1])
        )


def state_moves_end(aut: ZAutomaton, state: State, end: EndSpec) -> bool:
    """Does the state move the eventually periodic end?

    Decidable: walk the restriction diagram along the end; the state
    moves it iff the walk reaches the translating state before either
    dying in the identity or revisiting a (state, phase) pair.
    """
    code = aut.state_code(aut.check_state(state))
    trans = aut._tables[0]
    pre_len = len(end.preperiod)
    p_len = len(end.period)
    seen = set()
    i = 1
    while True:
        if code == 0:
            return False
        if trans[code] != 0:
            return True
        phase = i if i <= pre_len else pre_len + ((i - pre_len - 1) % p_len)
        if (code, phase) in seen:
            return False
        seen.add((code, phase))
        code = aut._k_state_section(code, (end.letter(i),))
        i += 1


def leaving_edges(aut: ZAutomaton, end: EndSpec, m: int) -> LeavingEdgeSet:
    """All ``(vertex, signed generator)`` pairs leaving the level-``m`` piece.

    A signed generator leaves at ``v`` iff its section there moves the
    tail of the end; inverse labels leave at the image vertex.  The
    count is bounded by twice the number of activity pairs.
    """
    if m < 1:
        raise KneadingError("leaving edges need level >= 1")
    tail = end.tail(m)
    edges = set()
    for state, v in aut.activity_pairs(m):
        section = aut.section(state, v)
        if state_moves_end(aut, section, tail):
            edges.add((v, (state, 1)))
            edges.add((aut.act(state, v), (state, -1)))
    return LeavingEdgeSet(end, m, frozenset(edges))


def _tree_path(aut, v, w, vertex_cap):
    """The unique path between two level vertices of the tree graph.

    Uses the inductive structure directly: vertices in the same copy
    (equal last letter) are joined inside it, everything else routes
    through the spine line of the previous level.  The cap bounds the
    path length.
    """
    m = len(v)
    if v == w:
        return [v]
    if m == 1:
        step = 1 if w[0] > v[0] else -1
        if abs(w[0] - v[0]) > vertex_cap:
            raise VertexCapExceeded(
                f"path construction exceeded the vertex cap ({vertex_cap})"
            )
        return [(i,) for i in range(v[0], w[0] + step, step)]
    if v[-1] == w[-1]:
        return [u + (v[-1],) for u in _tree_path(aut, v[:-1], w[:-1], vertex_cap)]
    sp = spine(aut, m - 1).word
    if abs(w[-1] - v[-1]) > vertex_cap:
        raise VertexCapExceeded(
            f"path construction exceeded the vertex cap ({vertex_cap})"
        )
    left = [u + (v[-1],) for u in _tree_path(aut, v[:-1], sp, vertex_cap)]
    step = 1 if w[-1] > v[-1] else -1
    mid = [sp + (i,) for i in range(v[-1], w[-1] + step, step)]
    right = [u + (w[-1],) for u in _tree_path(aut, sp, w[:-1], vertex_cap)]
    path = left + mid[1:] + right[1:]
    if len(path) > vertex_cap:
        raise VertexCapExceeded(
            f"path construction exceeded the vertex cap ({vertex_cap})"
        )
    return path


def _edge_label(aut, v, w):
    for label, image in neighbors(aut, v):
        if image == w:
            return label
    raise KneadingError(f"no generator edge from {v} to {w}")


def project_leaving(
    aut: ZAutomaton,
    end: EndSpec,
    m: int,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> dict:
    """The geodesic projection from level-``m`` leaving edges to level ``m-1``.

    An edge whose vertex already lies in the deeper piece (its last
    prefix letter matches the end) projects to itself; otherwise it
    projects to the unique edge where the geodesic from the end's base
    vertex first exits the deeper piece.
    """
    if m < 2:
        raise KneadingError("projection needs level >= 2")
    em = leaving_edges(aut, end, m)
    em1 = leaving_edges(aut, end, m - 1)
    base = end.prefix(m)
    um = end.letter(m)

    mapping = {}
    for v, label in em.sorted_edges():
        if v[-1] == um:
            image = (v[:-1], label)
        else:
            path = _tree_path(aut, base, v, vertex_cap)
            image = None
            for i in range(len(path) - 1):
                if path[i][-1] == um and path[i + 1][-1] != um:
                    image = (path[i][:-1], _edge_label(aut, path[i], path[i + 1]))
                    break
            if image is None:
                raise KneadingError(
                    f"no exit edge on the geodesic from {base} to {v}"
                )
        if image not in em1.edges:
            raise KneadingError(
                f"projection of {v} landed outside the level-{m-1} leaving edges"
            )
        mapping[(v, label)] = image
    return mapping


# ---------------------------------------------------------------------------
# exports


def ball_to_json_obj(ball: SchreierBall) -> dict:
    return {
        "center": list(ball.center),
        "radius": ball.radius,
        "vertices": [list(v) for v in ball.vertices],
        "edges": [
            {"from": list(v), "label": lab[0].name, "to": list(w)}
            for v, lab, w in ball.undirected_edges()
        ],
    }


def ball_to_dot(ball: SchreierBall, name: str = "schreier") -> str:
    def vid(v):
        return '"' + ",".join(str(z) for z in v) + '"'

    lines = [f"graph {name} {{"]
    for v in ball.vertices:
        lines.append(f"  {vid(v)};")
    for v, lab, w in ball.undirected_edges():
        lines.append(f"  {vid(v)} -- {vid(w)} [label=\"{lab[0].name}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
