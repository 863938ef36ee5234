"""Reduced words in the free group F_n.

A word is a plain tuple of nonzero ints: ``+j`` stands for the generator g_j
and ``-j`` for its inverse g_j^{-1}.  Generators are numbered from 1.  The
empty tuple is the neutral element e.  A positive word is a word whose
letters are all positive.

Words carry no alphabet size; functions that need one take ``n``.
"""

from __future__ import annotations

import re
from typing import Iterable, Optional, Tuple

from .errors import InputError

Word = Tuple[int, ...]

E: Word = ()

_TOKEN = re.compile(r"g(\d+)(\^-1)?$")


def check_letters(raw: Iterable[int], n: Optional[int] = None) -> Word:
    word = tuple(raw)
    for a in word:
        if not isinstance(a, int) or a == 0:
            raise InputError(f"invalid letter {a!r}")
        if n is not None and abs(a) > n:
            raise InputError(f"generator index {abs(a)} out of range 1..{n}")
    return word


def reduce(raw: Iterable[int], n: Optional[int] = None) -> Word:
    """Freely reduce a sequence of letters."""
    out: list[int] = []
    for a in check_letters(raw, n):
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def is_reduced(w: Word) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def is_positive(w: Word) -> bool:
    return all(a > 0 for a in w)


def concat(a: Word, b: Word) -> Word:
    """Reduced product ab of two reduced words."""
    i = 0
    k = min(len(a), len(b))
    while i < k and a[-1 - i] == -b[i]:
        i += 1
    return a[: len(a) - i] + b[i:]


def inverse(a: Word) -> Word:
    return tuple(-x for x in reversed(a))


def decompose(a: Word) -> Optional[Tuple[Word, Word]]:
    """Split a reduced word as alpha * beta^{-1} with alpha, beta positive.

    Returns None when the word contains a negative letter immediately
    followed by a positive one (such words are sent to 0 by S).
    """
    i = 0
    while i < len(a) and a[i] > 0:
        i += 1
    tail = a[i:]
    if any(x > 0 for x in tail):
        return None
    return a[:i], inverse(tail)


def factors(mu: Word) -> frozenset:
    """All contiguous sub-words of mu, including e and mu itself."""
    out = {E}
    for i in range(len(mu)):
        for j in range(i + 1, len(mu) + 1):
            out.add(mu[i:j])
    return frozenset(out)


def letter_key(a: int) -> Tuple[int, int]:
    return (abs(a), 0 if a > 0 else 1)


def word_key(w: Word) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """Length-lexicographic sort key (g1 < g1^-1 < g2 < g2^-1 < ...)."""
    return (len(w), tuple(letter_key(a) for a in w))


def reduced_words(n: int, length: int, positive: bool = False):
    """Yield every reduced word of exactly ``length`` letters in length-lex order."""
    letters = sorted(range(1, n + 1)) if positive else sorted(
        [g for j in range(1, n + 1) for g in (j, -j)], key=letter_key
    )

    def rec(prefix: Word, left: int):
        if left == 0:
            yield prefix
            return
        for a in letters:
            if prefix and prefix[-1] == -a:
                continue
            yield from rec(prefix + (a,), left - 1)

    yield from rec(E, length)


def words_up_to(n: int, maxlen: int, positive: bool = False):
    for k in range(maxlen + 1):
        yield from reduced_words(n, k, positive)


def count_reduced(n: int, length: int) -> int:
    if length == 0:
        return 1
    return 2 * n * (2 * n - 1) ** (length - 1)


def format_word(w: Word) -> str:
    if not w:
        return "e"
    return " ".join(f"g{a}" if a > 0 else f"g{-a}^-1" for a in w)


def parse_word(text: str, n: Optional[int] = None) -> Word:
    """Parse ``g1 g2^-1`` style text.  ``e`` (or blank) is the empty word.

    The result is reduced; non-reduced input is accepted and reduced.
    """
    tokens = text.split()
    if tokens in ([], ["e"]):
        return E
    raw = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not m or int(m.group(1)) == 0:
            raise InputError(f"bad word token {tok!r}")
        j = int(m.group(1))
        raw.append(-j if m.group(2) else j)
    return reduce(raw, n)
