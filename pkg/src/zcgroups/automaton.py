"""Kneading automata over the integer alphabet and their tree actions.

The rooted tree has vertex set the finite integer words; a vertex is a
tuple of ints whose first entry is the letter at the first (topmost)
level.  A kneading automaton is built from two integer words
``x = x_1 .. x_k`` and ``y = y_1 .. y_p`` with ``x_k != y_p``.  Its
states are named ``a1 .. ak`` and ``b1 .. bp`` plus the identity state;
``a1`` translates every letter by one and all other states fix letters.
The nonidentity restrictions are

* ``a(i+1)`` restricts to ``a(i)`` at ``x_i``,
* ``b1`` restricts to ``a(k)`` at ``x_k`` and to ``b(p)`` at ``y_p``,
* ``b(j+1)`` restricts to ``b(j)`` at ``y_j``,

and every other restriction is the identity state.

All values in this module are immutable after construction and all
operations are pure functions, so concurrent readers never interfere.
"""

import json
from dataclasses import dataclass

from . import _kernels

DEFAULT_DEPTH = 8


class KneadingError(ValueError):
    """Invalid kneading data or malformed automaton input."""


# ---------------------------------------------------------------------------
# canonical letter / word ordering: 0, -1, 1, -2, 2, ...
# (increasing absolute value, negative first)

def letter_key(z: int):
    return (abs(z), 0 if z < 0 else 1)


def word_key(word):
    return tuple(letter_key(z) for z in word)


def parse_tree_word(text: str) -> tuple[int, ...]:
    """Parse a tree word given as space- or comma-separated integers.

    The empty string and ``"e"`` denote the root (the empty word).
    """
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise KneadingError(f"not a tree word: {text!r}") from None


def format_tree_word(word) -> str:
    if not word:
        return "e"
    return " ".join(str(z) for z in word)


# ---------------------------------------------------------------------------
# states


@dataclass(frozen=True, slots=True)
class State:
    """An automaton state: the identity, ``a(i)`` or ``b(j)``.

    Index bounds are only checked against a concrete automaton; the
    value itself just carries the family (``"a"`` or ``"b"``) and the
    one-based index.
    """

    kind: str
    index: int

    def __post_init__(self):
        if self.kind == "id":
            if self.index != 0:
                raise KneadingError("identity state has no index")
        elif self.kind in ("a", "b"):
            if self.index < 1:
                raise KneadingError("state indices are one-based")
        else:
            raise KneadingError(f"unknown state kind {self.kind!r}")

    @property
    def is_identity(self) -> bool:
        return self.kind == "id"

    @property
    def name(self) -> str:
        if self.kind == "id":
            return "id"
        return f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, name: str) -> "State":
        name = name.strip()
        if name in ("id", "e", "1"):
            return ID
        if name and name[0] in ("a", "b"):
            digits = name[1:] or "1"
            if digits.isdigit():
                return cls(name[0], int(digits))
        raise KneadingError(f"not a state name: {name!r}")

    def sort_key(self):
        return {"id": 0, "a": 1, "b": 2}[self.kind], self.index

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"State({self.name!r})"


ID = State("id", 0)


def a_state(i: int) -> State:
    return State("a", i)


def b_state(j: int) -> State:
    return State("b", j)


# ---------------------------------------------------------------------------
# kneading data and ends


@dataclass(frozen=True)
class KneadingData:
    """The two integer words driving the construction; ``x[-1] != y[-1]``."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(z) for z in self.x))
        object.__setattr__(self, "y", tuple(int(z) for z in self.y))
        if not self.x or not self.y:
            raise KneadingError("both kneading words must be nonempty")
        if self.x[-1] == self.y[-1]:
            raise KneadingError(
                "the last letters of the two kneading words must differ "
                f"(got {self.x[-1]} for both)"
            )

    @property
    def k(self) -> int:
        return len(self.x)

    @property
    def p(self) -> int:
        return len(self.y)

    def sequence_letter(self, i: int) -> int:
        """Letter ``i`` (one-based) of the infinite word ``x . y y y ...``."""
        if i < 1:
            raise KneadingError("positions are one-based")
        if i <= self.k:
            return self.x[i - 1]
        return self.y[(i - self.k - 1) % self.p]

    def end(self) -> "EndSpec":
        """The eventually periodic end spelled by the kneading words."""
        return EndSpec(self.x, self.y)


@dataclass(frozen=True)
class EndSpec:
    """An eventually periodic end of the tree: ``preperiod . period^inf``."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(z) for z in self.preperiod))
        object.__setattr__(self, "period", tuple(int(z) for z in self.period))
        if not self.period:
            raise KneadingError("the period of an end must be nonempty")

    def letter(self, i: int) -> int:
        """The ``i``-th letter of the end, one-based."""
        if i < 1:
            raise KneadingError("positions are one-based")
        if i <= len(self.preperiod):
            return self.preperiod[i - 1]
        return self.period[(i - len(self.preperiod) - 1) % len(self.period)]

    def prefix(self, m: int) -> tuple[int, ...]:
        if m < 0:
            raise KneadingError("prefix lengths are nonnegative")
        return tuple(self.letter(i) for i in range(1, m + 1))

    def tail(self, m: int) -> "EndSpec":
        """The end obtained by dropping the first ``m`` letters."""
        if m < 0:
            raise KneadingError("tail offsets are nonnegative")
        pre = self.preperiod
        if m <= len(pre):
            return EndSpec(pre[m:], self.period)
        r = (m - len(pre)) % len(self.period)
        return EndSpec((), self.period[r:] + self.period[:r])

    @classmethod
    def parse(cls, text: str) -> "EndSpec":
        """Parse ``"z1 z2 : w1 w2"`` (preperiod before the colon)."""
        if ":" not in text:
            raise KneadingError(f"an end is written 'preperiod : period', got {text!r}")
        pre, per = text.split(":", 1)
        return cls(parse_tree_word(pre), parse_tree_word(per))

    def __str__(self):
        pre = " ".join(str(z) for z in self.preperiod)
        per = " ".join(str(z) for z in self.period)
        return f"{pre} : {per}".strip()


# ---------------------------------------------------------------------------
# the automaton


class ZAutomaton:
    """A finite-state automaton acting on the integer-alphabet tree.

    The state set is ``id, a1..ak, b1..bp`` with ``k = len(x)`` and
    ``p = len(y)``.  ``a1`` translates letters by one; every other state
    fixes letters.  Restrictions are stored sparsely (absent entries
    restrict to the identity state).  ``build_kneading`` produces the
    canonical restriction map; passing ``restrictions`` explicitly
    allows deliberately malformed variants, which the verifiers use as
    negative controls.
    """

    def __init__(self, data: KneadingData, restrictions=None):
        if restrictions is None:
            restrictions = _kneading_restrictions(data)
        self._data = data
        states = [ID]
        states += [a_state(i) for i in range(1, data.k + 1)]
        states += [b_state(j) for j in range(1, data.p + 1)]
        self._states = tuple(states)
        self._codes = {s: c for c, s in enumerate(self._states)}
        self._restrictions = self._normalize(restrictions)
        self._build_kernels()

    # -- construction helpers ------------------------------------------------

    def _normalize(self, restrictions):
        normalized = {}
        for state, entries in restrictions.items():
            if state not in self._codes:
                raise KneadingError(f"unknown state {state}")
            if state.is_identity:
                if entries:
                    raise KneadingError("the identity state admits no restrictions")
                continue
            cleaned = {}
            for z, target in entries.items():
                if target not in self._codes:
                    raise KneadingError(f"unknown restriction target {target}")
                if target.is_identity:
                    continue  # implicit default
                cleaned[int(z)] = target
            if cleaned:
                normalized[state] = cleaned
        return normalized

    def _build_kernels(self):
        n = len(self._states)
        trans = [0] * n
        trans[self._codes[a_state(1)]] = 1
        ptr = [0]
        keys = []
        vals = []
        for state in self._states:
            entries = self._restrictions.get(state, {})
            for z in sorted(entries, key=letter_key):
                keys.append(z)
                vals.append(self._codes[entries[z]])
            ptr.append(len(keys))
        self._tables = (trans, ptr, keys, vals)
        self._pure = _kernels.modules()["pure"].Kernel(trans, ptr, keys, vals)
        self._fast = self._pure
        mod = _kernels.active_module()
        if mod.BACKEND != "pure":
            try:
                self._fast = mod.Kernel(trans, ptr, keys, vals)
            except OverflowError:
                pass  # letters beyond the compiled range: stay on pure

    def _force_backend(self, name: str):
        """Pin the kernel backend (used by benchmarks and parity tests)."""
        mod = _kernels.modules()[name]
        trans, ptr, keys, vals = self._tables
        self._fast = self._pure if mod.BACKEND == "pure" else mod.Kernel(trans, ptr, keys, vals)

    # -- basic views ----------------------------------------------------------

    @property
    def data(self) -> KneadingData:
        return self._data

    @property
    def k(self) -> int:
        return self._data.k

    @property
    def p(self) -> int:
        return self._data.p

    @property
    def states(self) -> tuple[State, ...]:
        """All states, identity first, then ``a1..ak``, ``b1..bp``."""
        return self._states

    @property
    def generators(self) -> tuple[State, ...]:
        """The nonidentity states, in canonical order."""
        return self._states[1:]

    def check_state(self, state: State) -> State:
        if state not in self._codes:
            raise KneadingError(f"state {state} does not belong to this automaton")
        return state

    def translation(self, state: State) -> int:
        """Letter translation of ``state`` (one for ``a1``, zero otherwise)."""
        self.check_state(state)
        return 1 if state == a_state(1) else 0

    def restriction(self, state: State, letter: int) -> State:
        self.check_state(state)
        return self._restrictions.get(state, {}).get(letter, ID)

    def support(self, state: State) -> tuple[int, ...]:
        """Letters with an explicit (nonidentity) restriction, in canonical order."""
        self.check_state(state)
        return tuple(sorted(self._restrictions.get(state, {}), key=letter_key))

    def restrictions(self) -> dict[State, dict[int, State]]:
        """A copy of the sparse restriction map."""
        return {s: dict(e) for s, e in self._restrictions.items()}

    def incoming(self) -> dict[State, list[tuple[State, int]]]:
        """For each state the list of ``(owner, letter)`` pairs restricting to it."""
        result = {s: [] for s in self.generators}
        for owner in self.generators:
            for z in self.support(owner):
                result[self.restriction(owner, z)].append((owner, z))
        return result

    # -- the action -----------------------------------------------------------

    def step(self, state: State, letter: int) -> tuple[int, State]:
        """One transition: the image letter and the restriction state."""
        self.check_state(state)
        return letter + self.translation(state), self.restriction(state, letter)

    def act(self, state: State, word) -> tuple[int, ...]:
        """Image of a tree word under the extended action of ``state``."""
        code = self._codes[self.check_state(state)]
        return self._k_gen_act(code, 1, tuple(word))

    def section(self, state: State, word) -> State:
        """The state obtained by restricting ``state`` along ``word``."""
        code = self._codes[self.check_state(state)]
        return self._states[self._k_state_section(code, tuple(word))]

    def activity_pairs(self, m: int) -> frozenset[tuple[State, tuple[int, ...]]]:
        """All pairs ``(q, v)`` with ``len(v) == m`` and nontrivial section.

        These are exactly the length-``m`` paths of the sparse restriction
        graph, so their number is bounded by the number of states.
        """
        if m < 0:
            raise KneadingError("the level must be nonnegative")
        pairs = []

        def extend(start, state, path):
            if len(path) == m:
                pairs.append((start, path))
                return
            for z in self.support(state):
                extend(start, self.restriction(state, z), path + (z,))

        for q in self.generators:
            extend(q, q, ())
        return frozenset(pairs)

    # -- kernel plumbing -------------------------------------------------------

    def state_code(self, state: State) -> int:
        return self._codes[self.check_state(state)]

    def state_of_code(self, code: int) -> State:
        return self._states[code]

    def _k_gen_act(self, code, sign, letters):
        try:
            return self._fast.gen_act(code, sign, letters)
        except OverflowError:
            return self._pure.gen_act(code, sign, letters)

    def _k_act(self, codes, signs, letters):
        try:
            return self._fast.act(codes, signs, letters)
        except OverflowError:
            return self._pure.act(codes, signs, letters)

    def _k_section_at(self, codes, signs, letter):
        try:
            return self._fast.section_at(codes, signs, letter)
        except OverflowError:
            return self._pure.section_at(codes, signs, letter)

    def _k_state_section(self, code, letters):
        try:
            return self._fast.state_section(code, letters)
        except OverflowError:
            return self._pure.state_section(code, letters)

    # -- group-word conveniences (implemented in zcgroups.words) ---------------

    def word(self, text: str):
        """Parse a group word such as ``"a1 b1^-1"`` over this automaton."""
        from .words import GroupWord

        return GroupWord.from_text(self, text)

    def generator_word(self, state):
        from .words import GroupWord

        if isinstance(state, str):
            state = State.parse(state)
        return GroupWord(self, ((self.check_state(state), 1),))

    def identity_word(self):
        from .words import GroupWord

        return GroupWord(self, ())

    # -- misc -------------------------------------------------------------------

    def __repr__(self):
        x = " ".join(str(z) for z in self.data.x)
        y = " ".join(str(z) for z in self.data.y)
        return f"ZAutomaton(x=[{x}], y=[{y}])"


def _kneading_restrictions(data: KneadingData) -> dict[State, dict[int, State]]:
    x, y, k, p = data.x, data.y, data.k, data.p
    res: dict[State, dict[int, State]] = {}
    for i in range(1, k):
        res[a_state(i + 1)] = {x[i - 1]: a_state(i)}
    res[b_state(1)] = {x[k - 1]: a_state(k), y[p - 1]: b_state(p)}
    for j in range(1, p):
        res.setdefault(b_state(j + 1), {})[y[j - 1]] = b_state(j)
    return res


def build_kneading(x, y=None) -> ZAutomaton:
    """Build the kneading automaton for the words ``x`` and ``y``.

    Accepts either a :class:`KneadingData` or the two letter sequences.

    >>> aut = build_kneading([0], [1])
    >>> aut.act(State.parse("b1"), (0, 0))
    (0, 1)
    """
    data = x if isinstance(x, KneadingData) else KneadingData(tuple(x), tuple(y))
    return ZAutomaton(data)


# ---------------------------------------------------------------------------
# JSON form
#
# {"x": [...], "y": [...], "states": ["id", "a1", ...],
#  "transitions": [{"state": s, "letter": z, "image": z', "restriction": s'}]}
#
# Only transitions with a nonidentity restriction are listed; the letter
# translations are implied by the state names (``a1`` translates by one).


def automaton_to_json_obj(aut: ZAutomaton) -> dict:
    transitions = []
    for state in aut.generators:
        for z in aut.support(state):
            image, target = aut.step(state, z)
            transitions.append(
                {
                    "state": state.name,
                    "letter": z,
                    "image": image,
                    "restriction": target.name,
                }
            )
    return {
        "x": list(aut.data.x),
        "y": list(aut.data.y),
        "states": [s.name for s in aut.states],
        "transitions": transitions,
    }


def automaton_to_json(aut: ZAutomaton) -> str:
    return json.dumps(automaton_to_json_obj(aut), indent=2) + "\n"


def automaton_from_json_obj(obj: dict) -> ZAutomaton:
    try:
        data = KneadingData(tuple(obj["x"]), tuple(obj["y"]))
    except (KeyError, TypeError) as exc:
        raise KneadingError(f"malformed automaton JSON: {exc}") from None
    restrictions: dict[State, dict[int, State]] = {}
    for entry in obj.get("transitions", []):
        state = State.parse(entry["state"])
        target = State.parse(entry["restriction"])
        letter = int(entry["letter"])
        restrictions.setdefault(state, {})[letter] = target
    aut = ZAutomaton(data, restrictions)
    if "states" in obj:
        names = [s.name for s in aut.states]
        if list(obj["states"]) != names:
            raise KneadingError(
                f"state list {obj['states']!r} does not match the kneading words"
            )
    for entry in obj.get("transitions", []):
        state = State.parse(entry["state"])
        image, _ = aut.step(state, int(entry["letter"]))
        if int(entry["image"]) != image:
            raise KneadingError(
                f"transition image {entry['image']} of {entry['state']} at "
                f"{entry['letter']} contradicts the letter translation"
            )
    return aut


def automaton_from_json(text: str) -> ZAutomaton:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KneadingError(f"malformed automaton JSON: {exc}") from None
    return automaton_from_json_obj(obj)


def load_automaton(path) -> ZAutomaton:
    with open(path, "r", encoding="utf-8") as fh:
        return automaton_from_json(fh.read())


def dump_automaton(aut: ZAutomaton, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(automaton_to_json(aut))
