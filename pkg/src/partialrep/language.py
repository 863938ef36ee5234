"""Factor languages of subshifts of finite type.

The language is the set of positive words avoiding a finite list of
forbidden factors.  Every forbidden word has length >= 2, so the empty word
and every generator are always members.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import InputError, PreconditionError
from .freegroup import E, Word, factors, format_word, words_up_to
from .report_types import Verdict

Matrix = Tuple[Tuple[int, ...], ...]


def _normalize(forbidden: Iterable[Word]) -> FrozenSet[Word]:
    # drop any word that contains another forbidden word as a factor
    words = sorted(set(forbidden), key=lambda w: (len(w), w))
    kept: List[Word] = []
    for w in words:
        if not any(f in factors(w) for f in kept):
            kept.append(w)
    return frozenset(kept)


@dataclass(frozen=True)
class SftLanguage:
    n: int
    forbidden: FrozenSet[Word] = frozenset()
    memory: int = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"alphabet size must be a positive integer, got {self.n!r}")
        checked = []
        for w in self.forbidden:
            w = tuple(w)
            if len(w) < 2:
                raise InputError(f"forbidden word {list(w)} has length < 2")
            if any(not isinstance(a, int) or a < 1 or a > self.n for a in w):
                raise InputError(f"forbidden word {list(w)} uses an index outside 1..{self.n}")
            checked.append(w)
        norm = _normalize(checked)
        object.__setattr__(self, "forbidden", norm)
        object.__setattr__(self, "memory", max((len(w) for w in norm), default=1))

    # -- lookup tables ----------------------------------------------------

    @cached_property
    def _lengths(self) -> Tuple[int, ...]:
        return tuple(sorted({len(w) for w in self.forbidden}))

    @cached_property
    def starts(self) -> Dict[int, Tuple[Word, ...]]:
        """Forbidden words keyed by first letter, first letter stripped."""
        out: Dict[int, List[Word]] = {i: [] for i in range(1, self.n + 1)}
        for w in sorted(self.forbidden):
            out[w[0]].append(w[1:])
        return {i: tuple(v) for i, v in out.items()}

    @property
    def is_markov(self) -> bool:
        return all(len(w) == 2 for w in self.forbidden)

    def matrix(self) -> Matrix:
        """Transition matrix of a Markov language."""
        if not self.is_markov:
            raise PreconditionError("language has forbidden words longer than 2")
        return tuple(
            tuple(0 if (i, j) in self.forbidden else 1 for j in range(1, self.n + 1))
            for i in range(1, self.n + 1)
        )

    def __str__(self) -> str:
        fw = ", ".join(format_word(w) for w in sorted(self.forbidden, key=lambda w: (len(w), w)))
        return f"SFT(n={self.n}, forbidden={{{fw}}})"


def from_markov(matrix: Sequence[Sequence[int]]) -> SftLanguage:
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise InputError("transition matrix must be square and nonempty")
    if any(v not in (0, 1) for r in rows for v in r):
        raise InputError("transition matrix entries must be 0 or 1")
    forbidden = [(i + 1, j + 1) for i in range(n) for j in range(n) if rows[i][j] == 0]
    return SftLanguage(n, frozenset(forbidden))


def _has_forbidden_ending_at(lang: SftLanguage, w: Word, end: int) -> bool:
    for k in lang._lengths:
        if k <= end and w[end - k:end] in lang.forbidden:
            return True
    return False


def member(lang: SftLanguage, mu: Word) -> bool:
    for a in mu:
        if not isinstance(a, int) or a < 1 or a > lang.n:
            raise InputError(f"letter {a!r} is not a generator index in 1..{lang.n}")
    return not any(_has_forbidden_ending_at(lang, mu, end) for end in range(2, len(mu) + 1))


def enumerate_words(lang: SftLanguage, maxlen: int) -> List[Word]:
    """Members of length <= maxlen in length-lex order, starting with e."""
    out = [E]
    layer = [E]
    for _ in range(maxlen):
        nxt = []
        for w in layer:
            for j in range(1, lang.n + 1):
                v = w + (j,)
                if not _has_forbidden_ending_at(lang, v, len(v)):
                    nxt.append(v)
        out.extend(nxt)
        layer = nxt
    return out


def _require_member(lang: SftLanguage, mu: Word) -> None:
    if not member(lang, mu):
        raise PreconditionError(f"{format_word(mu)} is not in the language")


def l_set(lang: SftLanguage, mu: Word, k: int) -> FrozenSet[Word]:
    """Exit set: length-k words nu in the language with mu nu_1..nu_{k-1}
    in the language and mu nu outside it."""
    _require_member(lang, mu)
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if k == 1:
        return frozenset((j,) for j in range(1, lang.n + 1) if not member(lang, mu + (j,)))
    return frozenset(
        nu
        for nu in enumerate_words(lang, k)
        if len(nu) == k and member(lang, mu + nu[:-1]) and not member(lang, mu + nu)
    )


def l_sets_all(lang: SftLanguage, mu: Word) -> Dict[int, FrozenSet[Word]]:
    """Exit sets for k = 1..memory-1.

    Exit sets for k >= memory are empty: a forbidden factor of mu nu that is
    absent from mu nu_1..nu_{k-1} and from nu must end at nu_k and start inside
    mu, so it has length >= k + 1.
    """
    _require_member(lang, mu)
    return {k: l_set(lang, mu, k) for k in range(1, lang.memory)}


def verify_lemma1(lang: SftLanguage, max_word_len: int) -> Verdict:
    """Exit words for a fixed mu are never proper prefixes of one another.

    For each mu in the language (|mu| <= bound) and each positive word w with
    |w| <= bound, every pair of exit words v, v' that are both prefixes of w
    (so w = v r = v' s) must coincide.
    """
    checked = 0
    positives = list(words_up_to(lang.n, max_word_len, positive=True))
    for mu in enumerate_words(lang, max_word_len):
        exits = set()
        for s in l_sets_all(lang, mu).values():
            exits |= s
        if not exits:
            continue
        for w in positives:
            hits = [w[:j] for j in range(1, len(w) + 1) if w[:j] in exits]
            checked += len(hits) ** 2
            if len(hits) > 1:
                v, v2 = hits[0], hits[1]
                return Verdict.failed(checked, {
                    "mu": format_word(mu),
                    "v": format_word(v),
                    "r": format_word(w[len(v):]),
                    "v'": format_word(v2),
                    "s": format_word(w[len(v2):]),
                })
    return Verdict.passed(checked)


def validate(lang: SftLanguage) -> Verdict:
    words = enumerate_words(lang, lang.memory + 2)
    present = set(words)
    checked = 0
    if E not in present:
        return Verdict.failed(1, {"axiom": "e in language"})
    for j in range(1, lang.n + 1):
        checked += 1
        if (j,) not in present:
            return Verdict.failed(checked, {"axiom": "generators in language", "word": f"g{j}"})
    for w in words:
        for f in factors(w):
            checked += 1
            if f not in present:
                return Verdict.failed(checked, {
                    "axiom": "closed under sub-words",
                    "word": format_word(w),
                    "factor": format_word(f),
                })
    return Verdict.passed(checked + 1)


def finiteness_certificate(lang: SftLanguage, max_mu_len: int, extra: int = 2) -> Verdict:
    """Exhaustively confirm that exit sets vanish for memory <= k <= memory + extra."""
    checked = 0
    for mu in enumerate_words(lang, max_mu_len):
        for k in range(lang.memory, lang.memory + extra + 1):
            checked += 1
            s = l_set(lang, mu, k)
            if s:
                return Verdict.failed(checked, {
                    "mu": format_word(mu),
                    "k": k,
                    "l_set": sorted(format_word(v) for v in s),
                })
    return Verdict.passed(checked)


# -- spec files -----------------------------------------------------------

def to_json(lang: SftLanguage, as_markov: bool = False) -> dict:
    if as_markov:
        return {"markov": [list(r) for r in lang.matrix()]}
    return {"n": lang.n, "forbidden": [list(w) for w in sorted(lang.forbidden, key=lambda w: (len(w), w))]}


def from_json(data: dict) -> SftLanguage:
    if not isinstance(data, dict):
        raise InputError("language spec must be a JSON object")
    if "markov" in data:
        return from_markov(data["markov"])
    try:
        n = data["n"]
        forbidden = data.get("forbidden", [])
    except KeyError as exc:
        raise InputError(f"language spec missing key {exc}") from None
    if not isinstance(forbidden, list) or any(not isinstance(w, list) for w in forbidden):
        raise InputError("'forbidden' must be a list of generator-index lists")
    return SftLanguage(n, frozenset(tuple(w) for w in forbidden))


def load(path: str) -> SftLanguage:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read language spec {path}: {exc}") from None
    return from_json(data)


# -- fixtures and random languages -------------------------------------------

FULL_2_SHIFT = SftLanguage(2)
GOLDEN_MEAN = SftLanguage(2, frozenset({(2, 2)}))
CUBE_SHIFT = SftLanguage(2, frozenset({(1, 1, 1)}))


def random_sft(rng: random.Random, max_n: int = 3, max_memory: int = 3,
               max_forbidden: int = 4) -> SftLanguage:
    # one letter with any forbidden word leaves no infinite sequence, so
    # n = 1 is only drawn when nothing else is allowed
    n = rng.randint(min(2, max_n), max_n)
    m = rng.randint(2, max_memory)
    count = rng.randint(1, max_forbidden)
    words = []
    for _ in range(count):
        k = rng.randint(2, m)
        words.append(tuple(rng.randint(1, n) for _ in range(k)))
    return SftLanguage(n, frozenset(words))


def random_markov(rng: random.Random, max_n: int = 3) -> SftLanguage:
    n = rng.randint(min(2, max_n), max_n)
    return from_markov([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])


def has_periodic_point(lang: SftLanguage) -> bool:
    """True iff the shift space is nonempty (some admissible bi-infinite path exists)."""
    k = max(lang.memory - 1, 1)
    states = [w for w in enumerate_words(lang, k) if len(w) == k]
    known = set(states)
    succ = {
        s: [t for t in (s[1:] + (j,) for j in range(1, lang.n + 1))
            if t in known and member(lang, s + t[-1:])]
        for s in states
    }
    # repeatedly strip states without successors; a cycle survives iff nonempty
    alive = set(states)
    changed = True
    while changed:
        changed = False
        for s in list(alive):
            if not any(t in alive for t in succ[s]):
                alive.discard(s)
                changed = True
    return bool(alive)
