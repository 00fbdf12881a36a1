"""Word primitives and the replacement calculus on finite words.

Words are plain Python sequences of symbol tokens: a ``str`` when every
symbol is a single character (the common case), or a tuple of token strings
for multi-character alphabets.  All operations are generic over the two
representations; slicing, concatenation and equality behave identically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    InvalidPositionError,
    InvalidWordError,
    ReplacementBrokenError,
    ResourceLimitError,
)

# Words of this length or more would make exhaustive sweeps explode.
_SWEEP_BUDGET = 1 << 22


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite symbol set; the order fixes canonical enumeration."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise InvalidWordError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidWordError("alphabet contains duplicate symbols")
        if any(not s for s in self.symbols):
            raise InvalidWordError("alphabet symbols must be nonempty strings")

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def empty_word(self):
        return "" if self.single_char else ()

    def words(self, length: int):
        """Yield all words of the given length in canonical order."""
        if self.single_char:
            for tup in itertools.product(self.symbols, repeat=length):
                yield "".join(tup)
        else:
            yield from itertools.product(self.symbols, repeat=length)


BINARY = Alphabet(("0", "1"))


def parse_word(text: str, alphabet: Alphabet):
    """Parse the serialized form of a word (tokens joined with '.')."""
    if alphabet.single_char:
        for ch in text:
            if ch not in alphabet.symbols:
                raise InvalidWordError(f"symbol {ch!r} not in alphabet")
        return text
    if text == "":
        return ()
    tokens = tuple(text.split("."))
    for tok in tokens:
        if tok not in alphabet.symbols:
            raise InvalidWordError(f"symbol {tok!r} not in alphabet")
    return tokens


def format_word(word) -> str:
    """Serialize a word; multi-character symbols join with '.'."""
    if isinstance(word, str):
        return word
    return ".".join(word)


def occurrences(u, v) -> list[int]:
    """All start indices where v occurs as a subword of u, ascending."""
    if len(v) == 0:
        raise InvalidWordError("occurrence pattern must be nonempty")
    n, k = len(u), len(v)
    return [i for i in range(n - k + 1) if u[i : i + k] == v]


def replace_at(u, v, w, i: int):
    """Replace the occurrence of v at index i of u by w."""
    if i not in occurrences(u, v):
        raise InvalidPositionError(f"index {i} is not an occurrence of {format_word(v)!r}")
    return u[:i] + w + u[i + len(v) :]


def replace_seq(u, v, w, positions: Sequence[int]):
    """Replace occurrences of v by w at the given sorted positions, left to right.

    Follows the sequential step rule: the m-th replacement happens at
    ``s_m + (m-1)(|w|-|v|)`` in the current word.  Raises
    ReplacementBrokenError if a shifted position is no longer an occurrence,
    which indicates the non-interference hypothesis fails here.
    """
    positions = sorted(positions)
    occ = set(occurrences(u, v)) if positions else set()
    for s in positions:
        if s not in occ:
            raise InvalidPositionError(f"position {s} is not an occurrence of {format_word(v)!r}")
    shift = len(w) - len(v)
    cur = u
    for m, s in enumerate(positions):
        pos = s + m * shift
        if pos < 0 or cur[pos : pos + len(v)] != v:
            raise ReplacementBrokenError(
                f"shifted position {pos} is not an occurrence at step {m + 1}",
                word=cur,
                step=m + 1,
                position=pos,
            )
        cur = cur[:pos] + w + cur[pos + len(v) :]
    return cur


def self_overlaps(v) -> set[int]:
    """Offsets d in (0,|v|) at which v overlaps itself: v[d:] == v[:|v|-d]."""
    if len(v) == 0:
        raise InvalidWordError("word must be nonempty")
    n = len(v)
    return {d for d in range(1, n) if v[d:] == v[: n - d]}


def affix_flags(v, w) -> tuple[bool, bool]:
    """(v is a suffix of w, w is a prefix of v); a word is an affix of itself."""
    if len(v) == 0 or len(w) == 0:
        raise InvalidWordError("affix test needs nonempty words")
    v_suffix_of_w = len(v) <= len(w) and w[len(w) - len(v) :] == v
    w_prefix_of_v = len(w) <= len(v) and v[: len(w)] == w
    return v_suffix_of_w, w_prefix_of_v


@dataclass(frozen=True)
class TransitionWitness:
    """Concrete violation of the non-interference conditions.

    ``u`` contains the occurrence pattern at index ``i`` (the replaced one)
    and at index ``j`` (the one that breaks); ``condition`` is one of
    "i", "ii", "iii", "iv".
    """

    condition: str
    u: object
    i: int
    j: int


def respects_transition_exact(v, w) -> tuple[bool, Optional[TransitionWitness]]:
    """Decide whether replacing v by w never disturbs other occurrences.

    The four conditions are quantified over every word u and every
    occurrence of v in u; a finite case analysis over relative placements
    of two occurrences decides them exactly.  On failure the returned
    witness pins down a violating (u, i, j).
    """
    if len(v) == 0 or len(w) == 0:
        raise InvalidWordError("words must be nonempty")
    if v == w:
        raise InvalidWordError("the two words must differ")
    nv, nw = len(v), len(w)
    overlaps = self_overlaps(v)

    # (iv): a later occurrence at distance d must stay to the right of the
    # replacement, i.e. d + |w| - |v| > 0.
    for d in sorted(overlaps):
        if d <= nv - nw:
            return False, TransitionWitness("iv", v[:d] + v, 0, d)

    # (i): replacing the left of two d-overlapping occurrences; the
    # surviving occurrence starts inside the spliced-in w, so the length
    # |v|-d suffix of w must equal the length |v|-d prefix of v.
    for d in sorted(overlaps):
        if d <= nv - nw:
            continue  # already fails (iv)
        k = nv - d
        if k > nw or w[nw - k :] != v[:k]:
            return False, TransitionWitness("i", v[:d] + v, 0, d)

    # (ii): replacing the right of two d-overlapping occurrences; the left
    # occurrence now reads into w, so w and v must share a length |v|-d prefix.
    for d in sorted(overlaps):
        k = nv - d
        if k > nw or w[:k] != v[:k]:
            return False, TransitionWitness("ii", v[:d] + v, d, 0)

    # (iii): an occurrence of w at j < i overlapping the replaced v at
    # i = j + d.  The overlap forces letter equations between w and v; if
    # they are consistent such a u exists, and after the splice the old w
    # window reads w shifted by d, so w needs a self-overlap at d.
    for d in range(1, nw):
        k = min(nw - d, nv)
        if w[d : d + k] != v[:k]:
            continue  # placement impossible in any u
        if w[d:] != w[: nw - d]:
            u = w + v[k:] if d + nv > nw else w
            return False, TransitionWitness("iii", u, d, 0)

    return True, None


def _check_conditions(u, v, w, i: int) -> Optional[TransitionWitness]:
    """Literal check of the four conditions for one (u, i)."""
    shift = len(w) - len(v)
    up = replace_at(u, v, w, i)
    occ_v_up = set(occurrences(up, v))
    occ_w_up = set(occurrences(up, w))
    for j in occurrences(u, v):
        if j > i:
            if j + shift <= i:
                return TransitionWitness("iv", u, i, j)
            if j + shift not in occ_v_up:
                return TransitionWitness("i", u, i, j)
        elif j < i:
            if j not in occ_v_up:
                return TransitionWitness("ii", u, i, j)
    for j in occurrences(u, w):
        if j < i and j not in occ_w_up:
            return TransitionWitness("iii", u, i, j)
    return None


def respects_transition_bounded(
    v, w, max_len: int, alphabet: Alphabet = BINARY
) -> tuple[bool, Optional[TransitionWitness]]:
    """Brute-force sweep of the four conditions over all u with |u| <= max_len.

    Independent oracle for respects_transition_exact; cost |A|^max_len.
    """
    if len(v) == 0 or len(w) == 0:
        raise InvalidWordError("words must be nonempty")
    if max_len < len(v):
        raise InvalidWordError("max_len must be at least |v|")
    total = sum(len(alphabet.symbols) ** L for L in range(len(v), max_len + 1))
    if total > _SWEEP_BUDGET:
        raise ResourceLimitError(
            f"sweep of {total} words exceeds budget; lower max_len or shrink the alphabet"
        )
    for L in range(len(v), max_len + 1):
        for u in alphabet.words(L):
            for i in occurrences(u, v):
                witness = _check_conditions(u, v, w, i)
                if witness is not None:
                    return False, witness
    return True, None


def find_respecting_extension(spec, v, w, left, right, max_alpha: int | None = None):
    """Search context affixes (alpha, beta) making the padded pair non-interfering.

    alpha is a suffix of ``left``, beta a prefix of ``right``.  alpha is the
    shortest suffix, above a floor derived from the language growth of
    ``spec``, with ``alpha+v`` not a suffix of ``alpha+w``; beta is then the
    shortest prefix of ``right`` such that every word of length |alpha| in
    the language occurs in alpha+v+beta and the |alpha|-suffix of
    alpha+v+beta occurs there exactly once.  The result is verified with
    respects_transition_exact plus the affix conditions; on verification
    failure the search extends beta, then alpha.  Returns None when the
    supplied contexts are exhausted.
    """
    from . import subshifts  # local import: subshifts builds on this module

    if v == w:
        raise InvalidWordError("the two words must differ")
    n2 = 1
    while subshifts.count_words(spec, n2) < 2 * n2:
        n2 += 1
        if n2 > len(left) + len(v) + len(right):
            return None
    floor = max(n2, len(v)) + 1
    if max_alpha is None:
        max_alpha = len(left)

    for na in range(floor, max_alpha + 1):
        alpha = left[len(left) - na :]
        if len(alpha) < na:
            return None
        av, aw = alpha + v, alpha + w
        if len(av) <= len(aw) and aw[len(aw) - len(av) :] == av:
            continue  # alpha+v still a suffix of alpha+w; extend alpha
        needed = set(subshifts.enumerate_words(spec, na))
        for nb in range(0, len(right) + 1):
            beta = right[:nb]
            g = av + beta
            if not all(len(occurrences(g, q)) >= 1 for q in needed):
                continue
            tail = g[len(g) - na :]
            if len(occurrences(g, tail)) != 1:
                continue
            gp = aw + beta
            ok, _ = respects_transition_exact(g, gp)
            suf, pref = affix_flags(g, gp)
            if ok and not suf and not pref:
                return alpha, beta
    return None
