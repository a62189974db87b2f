"""Group elements as freely reduced words over the automaton states.

A :class:`GroupWord` is a product of signed generators of the group an
automaton generates.  Elements act on the left,

    ``(g * h).act(w) == g.act(h.act(w))``,

so the rightmost factor of a product is applied first.  ``==`` and
``hash`` compare words *syntactically* (same reduced letters over the
same automaton); semantic equality of the tree automorphisms is decided
by :meth:`GroupWord.equals`, which runs the word problem via
:meth:`GroupWord.triviality`.

The word problem rests on the finite-support structure of the action: a
word can only have a nontrivial first-level section at letters obtained
by shifting the restriction supports of its states through the
translations of the suffix acting below them.  Exploring sections at
these probe letters, memoized on reduced words, terminates because
sections never get longer than the word itself.

The level-two data of an element is summarized by
:meth:`GroupWord.wreath_image` as a pair ``(lamp, shift)``: ``shift`` is
the first-level translation and ``lamp[z]`` the translation of the
section at ``z``.  With the left-action convention these compose as
``lamp(x) = lamp_g(x + shift_h) + lamp_h(x)``.  Under this convention
the commutator of ``a1`` and ``b1`` over the words ``x=(0,)``,
``y=(1,)`` maps to ``lamp={0: -1, 1: 1}, shift=0``.
"""

import re
from collections import deque
from dataclasses import dataclass

from .automaton import KneadingError, State, ZAutomaton, letter_key


class WordParseError(ValueError):
    """A word expression that does not parse over the active automaton."""


@dataclass(frozen=True)
class TrivialityCertificate:
    """Outcome of the word problem.

    For a nontrivial word, ``witness`` is a vertex whose subtree sees a
    nonzero first-level translation and ``rho`` that translation; both
    are ``None`` for trivial words.
    """

    trivial: bool
    witness: tuple[int, ...] | None
    rho: int | None


@dataclass(frozen=True)
class WreathElement:
    """Lamp-and-shift pair: a finitely supported integer lamp plus a shift.

    ``lamp`` is normalized to a sorted tuple of ``(position, value)``
    entries with nonzero values.
    """

    lamp: tuple[tuple[int, int], ...]
    shift: int

    def __post_init__(self):
        entries = tuple(
            sorted((int(z), int(v)) for z, v in dict(self.lamp).items() if v)
        )
        object.__setattr__(self, "lamp", entries)
        object.__setattr__(self, "shift", int(self.shift))

    @classmethod
    def identity(cls) -> "WreathElement":
        return cls((), 0)

    def lamp_dict(self) -> dict[int, int]:
        return dict(self.lamp)

    @property
    def is_identity(self) -> bool:
        return not self.lamp and self.shift == 0

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        if not isinstance(other, WreathElement):
            return NotImplemented
        lamp: dict[int, int] = {}
        for z, v in self.lamp:
            lamp[z - other.shift] = lamp.get(z - other.shift, 0) + v
        for z, v in other.lamp:
            lamp[z] = lamp.get(z, 0) + v
        return WreathElement(tuple(lamp.items()), self.shift + other.shift)

    def inverse(self) -> "WreathElement":
        return WreathElement(
            tuple((z + self.shift, -v) for z, v in self.lamp), -self.shift
        )

    def commutes_with(self, other: "WreathElement") -> bool:
        return self * other == other * self

    def to_json_obj(self) -> dict:
        return {"lamp": {str(z): v for z, v in self.lamp}, "shift": self.shift}

    def __repr__(self):
        lamp = ", ".join(f"{z}: {v}" for z, v in self.lamp)
        return f"WreathElement(lamp={{{lamp}}}, shift={self.shift})"


_TOKEN = re.compile(r"^([ab])([0-9]*)(?:\^(-?[0-9]+))?$")


def _free_reduce(letters):
    out = []
    for state, sign in letters:
        if out and out[-1][0] == state and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((state, sign))
    return tuple(out)


class GroupWord:
    """A freely reduced word in the signed generators of an automaton group.

    >>> aut = __import__("zcgroups").build_kneading([0], [1])
    >>> g = aut.word("a1 b1^-1")
    >>> (g * g.inverse()).is_trivial()
    True
    """

    __slots__ = ("_aut", "_letters", "_arrays")

    def __init__(self, automaton: ZAutomaton, letters):
        letters = tuple(letters)
        for state, e in letters:
            if e not in (1, -1):
                raise WordParseError("letter exponents must be +1 or -1")
            if state.is_identity:
                raise WordParseError("the identity state is not a generator")
        letters = tuple((automaton.check_state(s), e) for s, e in letters)
        self._aut = automaton
        self._letters = _free_reduce(letters)
        self._arrays = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, automaton: ZAutomaton) -> "GroupWord":
        return cls(automaton, ())

    @classmethod
    def from_text(cls, automaton: ZAutomaton, text: str) -> "GroupWord":
        """Parse ``"a1 b1^-1 a1^-1"``; ``e`` (or an empty string) is the identity.

        Generator names are ``a1..ak`` and ``b1..bp``; bare ``a`` and
        ``b`` abbreviate ``a1`` and ``b1``.  Unknown generators are
        rejected.
        """
        letters = []
        for token in text.split():
            if token == "e":
                continue
            match = _TOKEN.match(token)
            if match is None:
                raise WordParseError(f"bad word token {token!r}")
            kind, digits, exp = match.groups()
            state = State(kind, int(digits) if digits else 1)
            try:
                automaton.check_state(state)
            except KneadingError:
                raise WordParseError(
                    f"unknown generator {state.name!r} for this automaton"
                ) from None
            n = int(exp) if exp is not None else 1
            sign = 1 if n > 0 else -1
            letters.extend((state, sign) for _ in range(abs(n)))
        return cls(automaton, letters)

    # -- views ------------------------------------------------------------------

    @property
    def automaton(self) -> ZAutomaton:
        return self._aut

    @property
    def letters(self) -> tuple[tuple[State, int], ...]:
        return self._letters

    def _code_arrays(self):
        if self._arrays is None:
            codes = tuple(self._aut.state_code(s) for s, _ in self._letters)
            signs = tuple(e for _, e in self._letters)
            self._arrays = (codes, signs)
        return self._arrays

    def __len__(self):
        return len(self._letters)

    def __bool__(self):
        return bool(self._letters)

    def __eq__(self, other):
        return (
            isinstance(other, GroupWord)
            and self._aut is other._aut
            and self._letters == other._letters
        )

    def __hash__(self):
        return hash((id(self._aut), self._letters))

    def __str__(self):
        if not self._letters:
            return "e"
        parts = []
        i = 0
        while i < len(self._letters):
            state, sign = self._letters[i]
            j = i
            while j < len(self._letters) and self._letters[j] == (state, sign):
                j += 1
            n = (j - i) * sign
            parts.append(state.name if n == 1 else f"{state.name}^{n}")
            i = j
        return " ".join(parts)

    def __repr__(self):
        return f"<GroupWord {self}>"

    # -- group structure ----------------------------------------------------------

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if not isinstance(other, GroupWord):
            return NotImplemented
        if other._aut is not self._aut:
            raise WordParseError("cannot multiply words over different automata")
        return GroupWord(self._aut, self._letters + other._letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self._aut, tuple((s, -e) for s, e in reversed(self._letters)))

    def __pow__(self, n: int) -> "GroupWord":
        if n < 0:
            return self.inverse() ** (-n)
        result = GroupWord.identity(self._aut)
        for _ in range(n):
            result = result * self
        return result

    # -- the action -------------------------------------------------------------

    def act(self, word) -> tuple[int, ...]:
        """Image of a tree word; letters of the product act right to left."""
        codes, signs = self._code_arrays()
        return self._aut._k_act(codes, signs, tuple(word))

    def section(self, word) -> "GroupWord":
        """The reduced word acting on the subtree at ``word``."""
        codes, signs = self._code_arrays()
        for z in word:
            _, codes, signs = self._aut._k_section_at(codes, signs, z)
        return self._from_codes(codes, signs)

    def _from_codes(self, codes, signs) -> "GroupWord":
        aut = self._aut
        return GroupWord(
            aut, tuple((aut.state_of_code(c), e) for c, e in zip(codes, signs))
        )

    def rho(self) -> int:
        """First-level translation; a homomorphism to the integers."""
        codes, signs = self._code_arrays()
        return _rho(self._aut, codes, signs)

    def rho_bar(self, n: int) -> int:
        """Sum of the first-level translations of all level-``n`` sections."""
        if n < 0:
            raise KneadingError("the level must be nonnegative")
        codes, signs = self._code_arrays()
        memo: dict = {}

        def rec(codes, signs, n):
            if n == 0:
                return _rho(self._aut, codes, signs)
            key = (codes, signs, n)
            if key in memo:
                return memo[key]
            total = 0
            for z in _probe_letters(self._aut, codes, signs):
                _, c2, s2 = self._aut._k_section_at(codes, signs, z)
                if c2:
                    total += rec(c2, s2, n - 1)
            memo[key] = total
            return total

        return rec(codes, signs, n)

    def rho_vec(self) -> tuple[int, ...]:
        """The abelianization vector ``(rho_bar(0), ..., rho_bar(k+p-1))``."""
        size = self._aut.k + self._aut.p
        return tuple(self.rho_bar(n) for n in range(size))

    def wreath_image(self) -> WreathElement:
        """Lamp-and-shift image carried by the first two tree levels."""
        codes, signs = self._code_arrays()
        lamp = {}
        for z in _probe_letters(self._aut, codes, signs):
            _, c2, s2 = self._aut._k_section_at(codes, signs, z)
            value = _rho(self._aut, c2, s2)
            if value:
                lamp[z] = value
        return WreathElement(tuple(lamp.items()), _rho(self._aut, codes, signs))

    # -- word problem --------------------------------------------------------------

    def triviality(self) -> TrivialityCertificate:
        """Decide whether the word acts trivially on the whole tree.

        Breadth-first closure under first-level sections at the probe
        letters.  A word is trivial iff every word in the closure has
        zero first-level translation; the first word found with a
        nonzero translation yields the witness vertex.
        """
        aut = self._aut
        codes, signs = self._code_arrays()
        start = (codes, signs)
        seen = {start}
        queue = deque([(codes, signs, ())])
        while queue:
            codes, signs, address = queue.popleft()
            r = _rho(aut, codes, signs)
            if r != 0:
                return TrivialityCertificate(False, address, r)
            for z in _probe_letters(aut, codes, signs):
                _, c2, s2 = aut._k_section_at(codes, signs, z)
                if not c2:
                    continue
                key = (c2, s2)
                if key not in seen:
                    seen.add(key)
                    queue.append((c2, s2, address + (z,)))
        return TrivialityCertificate(True, None, None)

    def is_trivial(self) -> bool:
        return self.triviality().trivial

    def equals(self, other: "GroupWord") -> bool:
        """Semantic equality: do both words act identically on the tree?"""
        return (self * other.inverse()).is_trivial()


def commutator(g: GroupWord, h: GroupWord) -> GroupWord:
    return g * h * g.inverse() * h.inverse()


def conjugate(g: GroupWord, by: GroupWord) -> GroupWord:
    """The conjugate ``by^-1 * g * by``."""
    return by.inverse() * g * by


def _rho(aut, codes, signs):
    trans = aut._tables[0]
    return sum(e * trans[c] for c, e in zip(codes, signs))


def _probe_letters(aut, codes, signs):
    """First-level letters where the word can have a nontrivial section.

    Walking the word right to left, the letter seen by position ``i`` is
    the root letter shifted by the translation of the suffix below it;
    inverted letters additionally see their own translation undone.
    Outside the resulting finite set every section is a product of
    identity states.
    """
    trans, ptr, keys, _ = aut._tables
    seen = set()
    shift = 0
    for code, sign in zip(reversed(codes), reversed(signs)):
        t = trans[code]
        base = -shift if sign > 0 else -shift + t
        for i in range(ptr[code], ptr[code + 1]):
            seen.add(keys[i] + base)
        shift += sign * t
    return sorted(seen, key=letter_key)
