"""Structure verifiers with machine-checkable pass/fail reports.

Each verifier is a deterministic pure function of the automaton and its
explicit caps, and every failing report carries a concrete
counterexample.  Infinite statements (level transitivity, end counts)
are only ever asserted on finite windows with explicit radii; reports
record the window, never the unbounded claim.
"""

import time
from dataclasses import dataclass

from .automaton import KneadingError, ZAutomaton, a_state, b_state
from .schreier import VertexCapExceeded, ball, word_key
from .words import GroupWord, WreathElement, commutator, conjugate, _probe_letters

DEFAULT_DEPTH = 8
DEFAULT_CONJUGATION_CAP = 64
DEFAULT_VERTEX_CAP = 100_000


@dataclass
class VerificationReport:
    check: str
    params: dict
    passed: bool
    witness: object
    ms: int

    def to_json_obj(self, zero_ms: bool = False) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "pass": self.passed,
            "witness": self.witness,
            "ms": 0 if zero_ms else self.ms,
        }


def _report(check, params, started, passed, witness) -> VerificationReport:
    ms = int((time.perf_counter() - started) * 1000)
    return VerificationReport(check, params, passed, witness, ms)


def verify_kneading_shape(aut: ZAutomaton, depth: int = DEFAULT_DEPTH) -> VerificationReport:
    """Every nontrivial state has exactly one incoming restriction edge,
    hence a unique restriction path of every length ends in it."""
    started = time.perf_counter()
    params = {"depth": depth}
    incoming = aut.incoming()
    bad = {
        s.name: [[owner.name, z] for owner, z in edges]
        for s, edges in incoming.items()
        if len(edges) != 1
    }
    if bad:
        return _report("kneading-shape", params, started, False, {"incoming": bad})
    counts = {s: 1 for s in aut.generators}
    for m in range(1, depth + 1):
        counts = {
            s: sum(counts[owner] for owner, _ in incoming[s]) for s in aut.generators
        }
        offenders = {s.name: c for s, c in counts.items() if c != 1}
        if offenders:
            return _report(
                "kneading-shape",
                params,
                started,
                False,
                {"length": m, "path_counts": offenders},
            )
    return _report(
        "kneading-shape",
        params,
        started,
        True,
        {"incoming": {s.name: [edges[0][0].name, edges[0][1]] for s, edges in incoming.items()}},
    )


def verify_abelianization(aut: ZAutomaton) -> VerificationReport:
    """The matrix of abelianization vectors over the generators is the identity."""
    started = time.perf_counter()
    size = aut.k + aut.p
    matrix = [list(aut.generator_word(s).rho_vec()) for s in aut.generators]
    expected = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    passed = matrix == expected
    return _report(
        "abelianization",
        {"size": size},
        started,
        passed,
        {"matrix": matrix, "generators": [s.name for s in aut.generators]},
    )


def verify_self_replicating(aut: ZAutomaton, letter_range: int = 2) -> VerificationReport:
    """Every generator is the section of another generator, and conjugating
    that parent with powers of the translating state plants the section at
    any prescribed first-level letter (checked on a sample window)."""
    started = time.perf_counter()
    params = {"letter_range": letter_range}
    incoming = aut.incoming()
    missing = [s.name for s in aut.generators if not incoming[s]]
    if missing:
        return _report(
            "self-replicating", params, started, False, {"unreachable": missing}
        )
    a1 = aut.generator_word(a_state(1))
    parents = {}
    for s in aut.generators:
        owner, z = incoming[s][0]
        parents[s.name] = [owner.name, z]
        s_word = aut.generator_word(s)
        owner_word = aut.generator_word(owner)
        for target in range(-letter_range, letter_range + 1):
            h = owner_word * a1 ** (z - target)
            if not h.section((target,)).equals(s_word):
                return _report(
                    "self-replicating",
                    params,
                    started,
                    False,
                    {"generator": s.name, "letter": target},
                )
    return _report("self-replicating", params, started, True, {"parents": parents})


def verify_level_transitive_window(
    aut: ZAutomaton,
    level: int,
    lo: int,
    hi: int,
    radius: int,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> VerificationReport:
    """All window vertices of the level lie in one ball around the zero vertex.

    Window-verified only; an exhausted vertex cap makes the report
    inconclusive (and failing).
    """
    started = time.perf_counter()
    if level < 1 or radius < 1:
        raise KneadingError("level and radius must be positive")
    params = {"level": level, "window": [lo, hi], "radius": radius, "vertex_cap": vertex_cap}
    center = (0,) * level
    try:
        window_ball = ball(aut, center, radius, vertex_cap)
    except VertexCapExceeded:
        return _report(
            "level-transitive", params, started, False, {"inconclusive": "vertex cap hit"}
        )
    reached = set(window_ball.vertices)
    targets = [()]
    for _ in range(level):
        targets = [v + (z,) for v in targets for z in range(lo, hi + 1)]
    unreached = sorted((v for v in targets if v not in reached), key=word_key)
    if unreached:
        return _report(
            "level-transitive", params, started, False, {"unreached": list(unreached[0])}
        )
    return _report(
        "level-transitive", params, started, True, {"window_vertices": len(targets)}
    )


def verify_commutator_section(aut: ZAutomaton, s, t) -> VerificationReport:
    """Commutators of conjugated parent generators plant the commutator of
    their sections at letter zero and act trivially elsewhere."""
    started = time.perf_counter()
    s = aut.check_state(s)
    t = aut.check_state(t)
    params = {"s": s.name, "t": t.name}
    incoming = aut.incoming()
    if not incoming[s] or not incoming[t]:
        return _report(
            "commutator-section", params, started, False, {"missing_parent": True}
        )
    (c, z), (d, w) = incoming[s][0], incoming[t][0]
    a1 = aut.generator_word(a_state(1))
    g1 = conjugate(aut.generator_word(c), a1 ** z)
    g2 = conjugate(aut.generator_word(d), a1 ** w)
    element = commutator(g1, g2)
    target = commutator(aut.generator_word(s), aut.generator_word(t))
    witness = {
        "parents": {s.name: [c.name, z], t.name: [d.name, w]},
        "element": str(element),
    }
    if element.rho() != 0:
        witness["rho"] = element.rho()
        return _report("commutator-section", params, started, False, witness)
    if not element.section((0,)).equals(target):
        witness["section_at_zero"] = str(element.section((0,)))
        return _report("commutator-section", params, started, False, witness)
    codes, signs = element._code_arrays()
    checked = []
    for letter in _probe_letters(aut, codes, signs):
        if letter == 0:
            continue
        if not element.section((letter,)).is_trivial():
            witness["nontrivial_at"] = letter
            return _report("commutator-section", params, started, False, witness)
        checked.append(letter)
    witness["other_letters_checked"] = checked
    return _report("commutator-section", params, started, True, witness)


def verify_wreath_surjection(aut: ZAutomaton) -> VerificationReport:
    """The translating state and its Moore parent map to the standard
    lamp-and-shift generators (shift one, and a single unit lamp)."""
    started = time.perf_counter()
    a1 = aut.generator_word(a_state(1))
    second_state = a_state(2) if aut.k >= 2 else b_state(1)
    second = aut.generator_word(second_state)
    params = {"second_generator": second_state.name}
    image_a = a1.wreath_image()
    image_second = second.wreath_image()
    witness = {
        "a1": image_a.to_json_obj(),
        second_state.name: image_second.to_json_obj(),
    }
    shift_ok = image_a == WreathElement((), 1)
    lamp = image_second.lamp
    delta_ok = image_second.shift == 0 and len(lamp) == 1 and lamp[0][1] == 1
    if delta_ok:
        witness["lamp_position"] = lamp[0][0]
    return _report("wreath-surjection", params, started, shift_ok and delta_ok, witness)


def find_stabilizer_pair(aut: ZAutomaton, search_conjugates: int = 6):
    """A deterministic non-commuting pair in the first-level stabilizer.

    Candidates are the translation-free generators and their conjugates
    by small powers of the translating state; the first pair whose
    commutator is nontrivial (by the word problem) is returned.
    """
    a1 = aut.generator_word(a_state(1))
    basic = [aut.generator_word(s) for s in aut.generators if aut.translation(s) == 0]
    candidates = list(basic)
    for j in range(1, search_conjugates + 1):
        candidates.extend(conjugate(g, a1 ** j) for g in basic)
    for x in candidates:
        for y in candidates:
            if x == y:
                continue
            if not commutator(x, y).is_trivial():
                return x, y
    return None


def verify_residual_witness(
    aut: ZAutomaton,
    x: GroupWord | None = None,
    y: GroupWord | None = None,
    conjugation_cap: int = DEFAULT_CONJUGATION_CAP,
) -> VerificationReport:
    """Conjugation by the translating state separates stabilizer supports.

    For a non-commuting stabilizer pair, some bounded power of the
    translating state conjugates the first element away from the
    second, making them commute; the report carries the minimal such
    power.  With a commuting (for example equal) input pair the check
    degenerates and is flagged as such.
    """
    started = time.perf_counter()
    if (x is None) != (y is None):
        raise KneadingError("provide both stabilizer words or neither")
    if x is None:
        pair = find_stabilizer_pair(aut)
        if pair is None:
            return _report(
                "residual-witness",
                {"conjugation_cap": conjugation_cap},
                started,
                False,
                {"no_pair_found": True},
            )
        x, y = pair
    if x.rho() != 0 or y.rho() != 0:
        raise KneadingError("the witness pair must stabilize the first level")
    params = {"conjugation_cap": conjugation_cap, "x": str(x), "y": str(y)}
    a1 = aut.generator_word(a_state(1))
    certificate = commutator(x, y).triviality()
    if certificate.trivial:
        return _report(
            "residual-witness",
            params,
            started,
            True,
            {"degenerate": True, "minimal_m": 0},
        )
    witness = {
        "degenerate": False,
        "commutator_witness": list(certificate.witness),
        "commutator_rho": certificate.rho,
    }
    for m in range(1, conjugation_cap + 1):
        moved = conjugate(x, a1 ** m)
        if commutator(moved, y).is_trivial():
            witness["minimal_m"] = m
            return _report("residual-witness", params, started, True, witness)
    witness["no_m_up_to_cap"] = conjugation_cap
    return _report("residual-witness", params, started, False, witness)


def wreath_ball_sizes(aut: ZAutomaton, radius: int) -> list[int]:
    """Sizes of the balls of lamp-and-shift images of generator products.

    ``result[r]`` counts distinct images of products of at most ``r``
    signed generators; used as a coarse growth proxy.
    """
    images = []
    for s in aut.generators:
        img = aut.generator_word(s).wreath_image()
        images.append(img)
        images.append(img.inverse())
    seen = {WreathElement.identity()}
    frontier = [WreathElement.identity()]
    sizes = [1]
    for _ in range(radius):
        new = []
        for w in frontier:
            for g in images:
                cand = w * g
                if cand not in seen:
                    seen.add(cand)
                    new.append(cand)
        frontier = new
        sizes.append(len(seen))
    return sizes


def run_all(
    aut: ZAutomaton,
    depth: int = DEFAULT_DEPTH,
    level: int = 2,
    window: tuple[int, int] = (-2, 2),
    radius: int = 24,
    conjugation_cap: int = DEFAULT_CONJUGATION_CAP,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> list[VerificationReport]:
    """Run every verifier in a fixed order and collect the reports."""
    reports = [
        verify_kneading_shape(aut, depth),
        verify_abelianization(aut),
        verify_self_replicating(aut),
        verify_level_transitive_window(aut, level, window[0], window[1], radius, vertex_cap),
    ]
    for s in aut.generators:
        for t in aut.generators:
            reports.append(verify_commutator_section(aut, s, t))
    reports.append(verify_wreath_surjection(aut))
    reports.append(verify_residual_witness(aut, conjugation_cap=conjugation_cap))
    return reports
