"""Eventually periodic admissible sequences: the basis of the concrete model.

A basis vector is labelled by a right-infinite sequence ``prefix . cycle^oo``
kept in canonical form (primitive cycle, prefix rolled back as far as
possible).  The generator S_i prepends g_i when the result stays admissible;
its adjoint drops a leading g_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from .errors import InputError
from .freegroup import E, Word, format_word, parse_word, words_up_to
from .language import SftLanguage, has_periodic_point


class EvpSeq(NamedTuple):
    prefix: Word
    cycle: Word

    def __str__(self) -> str:
        return format_seq(self)


def primitive_root(cycle: Word) -> Word:
    k = len(cycle)
    for d in range(1, k + 1):
        if k % d == 0 and cycle[:d] * (k // d) == cycle:
            return cycle[:d]
    return cycle


def canonicalize(prefix: Word, cycle: Word) -> EvpSeq:
    if not cycle:
        raise InputError("cycle must be nonempty")
    cycle = primitive_root(tuple(cycle))
    prefix = tuple(prefix)
    while prefix and prefix[-1] == cycle[-1]:
        prefix = prefix[:-1]
        cycle = cycle[-1:] + cycle[:-1]
    return EvpSeq(prefix, cycle)


def is_canonical(x: EvpSeq) -> bool:
    return bool(x.cycle) and canonicalize(x.prefix, x.cycle) == x


def unfold(x: EvpSeq, length: int) -> Word:
    """The first ``length`` letters of the infinite sequence."""
    p, c = x
    if length <= len(p):
        return p[:length]
    reps = -(-(length - len(p)) // len(c))
    return (p + c * reps)[:length]


def first(x: EvpSeq) -> int:
    return x.prefix[0] if x.prefix else x.cycle[0]


def _window_has_forbidden(lang: SftLanguage, w: Word) -> bool:
    for k in lang._lengths:
        for i in range(len(w) - k + 1):
            if w[i:i + k] in lang.forbidden:
                return True
    return False


def is_admissible(x: EvpSeq, lang: SftLanguage) -> bool:
    # every factor of length <= memory starts inside prefix + one period
    window = len(x.prefix) + 2 * len(x.cycle) + lang.memory
    return not _window_has_forbidden(lang, unfold(x, window))


def junction_ok(i: int, x: EvpSeq, lang: SftLanguage) -> bool:
    """No forbidden word starts at the first position of g_i x."""
    tails = lang.starts[i]
    if not tails:
        return True
    head = unfold(x, lang.memory - 1)
    return not any(head[:len(t)] == t for t in tails)


def prepend(i: int, x: EvpSeq, lang: SftLanguage, junction_check: bool = True) -> Optional[EvpSeq]:
    if not 1 <= i <= lang.n:
        raise InputError(f"generator index {i} out of range 1..{lang.n}")
    if junction_check and not junction_ok(i, x, lang):
        return None
    p, c = x
    if not p and c[-1] == i:
        # g_i c^oo with c ending in g_i is the rotated cycle
        return EvpSeq(E, c[-1:] + c[:-1])
    return EvpSeq((i,) + p, c)


def shift(x: EvpSeq) -> EvpSeq:
    p, c = x
    if p:
        return EvpSeq(p[1:], c)
    return EvpSeq(E, c[1:] + c[:1])


def vector_key(x: EvpSeq):
    return (len(x.prefix) + len(x.cycle), len(x.prefix), x.prefix, x.cycle)


@dataclass(frozen=True)
class VectorSet:
    """Test vectors plus a flag for the case where the shift space is empty."""

    vectors: Tuple[EvpSeq, ...]
    space_empty: bool

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    @property
    def warning(self) -> Optional[str]:
        if self.space_empty:
            return "sequence space is empty: no admissible infinite sequence exists"
        if not self.vectors:
            return "no admissible sequence within the prefix/cycle bounds"
        return None


def enumerate_vectors(lang: SftLanguage, max_prefix: int, max_cycle: int) -> VectorSet:
    found = set()
    cycles = [c for c in words_up_to(lang.n, max_cycle, positive=True) if c]
    prefixes = list(words_up_to(lang.n, max_prefix, positive=True))
    for c in cycles:
        if primitive_root(c) != c:
            continue
        for p in prefixes:
            x = canonicalize(p, c)
            if x not in found and is_admissible(x, lang):
                found.add(x)
    vectors = tuple(sorted(found, key=vector_key))
    return VectorSet(vectors, space_empty=not vectors and not has_periodic_point(lang))


# -- formal vectors -------------------------------------------------------

FormalVector = Dict[EvpSeq, int]


def basis(x: EvpSeq) -> FormalVector:
    return {x: 1}


def format_seq(x: EvpSeq) -> str:
    return f"{format_word(x.prefix)}|{format_word(x.cycle)}"


def parse_seq(text: str, n: Optional[int] = None) -> EvpSeq:
    if text.count("|") != 1:
        raise InputError(f"sequence must look like 'prefix|cycle', got {text!r}")
    left, right = text.split("|")
    p = parse_word(left, n)
    c = parse_word(right, n)
    if any(a < 0 for a in p + c):
        raise InputError("sequences use positive letters only")
    return canonicalize(p, c)


def format_vector(v: FormalVector) -> str:
    if not v:
        return "0"
    parts = []
    for x in sorted(v, key=vector_key):
        c = v[x]
        s = format_seq(x)
        if c == 1:
            parts.append(f"+ {s}")
        elif c == -1:
            parts.append(f"- {s}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {abs(c)} {s}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# -- interned action ------------------------------------------------------

ABSENT = -1


class SequenceModel:
    """Memoized action of S_i and S_i* on interned sequence ids.

    An atom is a signed generator index: ``+i`` is S_i, ``-i`` is S_i*.
    ``step`` returns the id of the image, or ABSENT when the atom kills the
    vector.  With ``junction_check=False`` S_i prepends unconditionally; this
    is a deliberately broken variant used as a mutation control.
    """

    # shift(prepend(i, x)) == x, so a successful S_i also fills in S_i*
    backlink = True

    def __init__(self, lang: SftLanguage, junction_check: bool = True):
        self.lang = lang
        self.junction_check = junction_check
        self.seqs: List[EvpSeq] = []
        self._ids: Dict[EvpSeq, int] = {}
        self._tab: Dict[int, Dict[int, int]] = {
            a: {} for j in range(1, lang.n + 1) for a in (j, -j)
        }

    def intern(self, x: EvpSeq) -> int:
        i = self._ids.get(x)
        if i is None:
            i = len(self.seqs)
            self._ids[x] = i
            self.seqs.append(x)
        return i

    def step(self, atom: int, i: int) -> int:
        tab = self._tab[atom]
        r = tab.get(i)
        if r is None:
            y = self.image(atom, self.seqs[i])
            if y is None:
                r = tab[i] = ABSENT
            else:
                r = self._ids.get(y)
                if r is None:
                    r = self._ids[y] = len(self.seqs)
                    self.seqs.append(y)
                tab[i] = r
                if atom > 0 and self.backlink:
                    self._tab[-atom][r] = i
        return r

    def image(self, atom: int, x: EvpSeq) -> Optional[EvpSeq]:
        if atom > 0:
            return prepend(atom, x, self.lang, self.junction_check)
        return shift(x) if first(x) == -atom else None

    def run(self, atoms: Iterable[int], i: int) -> int:
        """Apply a product of atoms (rightmost acts first)."""
        for a in reversed(tuple(atoms)):
            if i == ABSENT:
                break
            i = self.step(a, i)
        return i

    def apply(self, atoms: Word, x: EvpSeq) -> Optional[EvpSeq]:
        r = self.run(atoms, self.intern(x))
        return None if r == ABSENT else self.seqs[r]

    def support(self, i: int, maxlen: int, positive_only: bool = False) -> Dict[Word, int]:
        """All reduced words w with |w| <= maxlen and S(w) nonzero on vector i.

        Words are grown leftwards; a word that kills the vector kills every
        left extension of it, so those branches are pruned.
        """
        out = {E: i}
        layer = [(E, i)]
        letters = [a for j in range(1, self.lang.n + 1) for a in ((j,) if positive_only else (j, -j))]
        for _ in range(maxlen):
            nxt = []
            for w, v in layer:
                for a in letters:
                    if w and w[0] == -a:
                        continue
                    r = self.step(a, v)
                    if r != ABSENT:
                        u = (a,) + w
                        out[u] = r
                        nxt.append((u, r))
            layer = nxt
        return out
