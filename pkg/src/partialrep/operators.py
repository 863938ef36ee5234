"""Integer combinations of monomials in S_i and S_i*, evaluated on basis vectors."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from .errors import InputError
from .freegroup import Word, letter_key
from .language import SftLanguage, l_sets_all
from .report_types import Verdict
from .seqspace import (
    ABSENT,
    EvpSeq,
    FormalVector,
    SequenceModel,
    format_seq,
    format_vector,
    vector_key,
)


class Atom(NamedTuple):
    gen: int
    starred: bool = False

    @property
    def code(self) -> int:
        return -self.gen if self.starred else self.gen

    @classmethod
    def from_code(cls, code: int) -> "Atom":
        return cls(abs(code), code < 0)

    def __str__(self) -> str:
        return f"S{self.gen}{'*' if self.starred else ''}"


Monomial = Tuple[Atom, ...]
IDENTITY: Monomial = ()


def monomial(codes: Iterable[int]) -> Monomial:
    return tuple(Atom.from_code(c) for c in codes)


def codes(m: Monomial) -> Word:
    return tuple(a.code for a in m)


def format_monomial(m: Monomial) -> str:
    return " ".join(str(a) for a in m) if m else "I"


def _mono_key(m: Monomial):
    return (len(m), tuple(letter_key(a.code) for a in m))


class OpExpr:
    """A finitely supported integer combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self.terms: Dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, m: Monomial, coeff: int = 1) -> "OpExpr":
        return cls({tuple(m): coeff})

    def __add__(self, other: "OpExpr") -> "OpExpr":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return OpExpr(out)

    def __neg__(self) -> "OpExpr":
        return OpExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "OpExpr") -> "OpExpr":
        return self + (-other)

    def __mul__(self, other: "OpExpr") -> "OpExpr":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, OpExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"OpExpr({format_expr(self)!r})"

    def __str__(self) -> str:
        return format_expr(self)


ZERO = OpExpr()
I = OpExpr.of(IDENTITY)


def compose(e1: OpExpr, e2: OpExpr) -> OpExpr:
    """e1 after e2."""
    out: Dict[Monomial, int] = {}
    for m1, c1 in e1.terms.items():
        for m2, c2 in e2.terms.items():
            m = m1 + m2
            out[m] = out.get(m, 0) + c1 * c2
    return OpExpr(out)


def adjoint(e: OpExpr) -> OpExpr:
    return OpExpr({
        tuple(Atom(a.gen, not a.starred) for a in reversed(m)): c
        for m, c in e.terms.items()
    })


def s_map(r: Word) -> OpExpr:
    """S(r) for a reduced word: g_j -> S_j, g_j^{-1} -> S_j*, e -> I."""
    return OpExpr.of(monomial(r))


def e_proj(r: Word) -> OpExpr:
    s = s_map(r)
    return compose(s, adjoint(s))


def range_proj(mu: Word) -> OpExpr:
    """S_mu S_mu* for a positive word mu."""
    return e_proj(mu)


def m1_defect(lang: SftLanguage) -> OpExpr:
    total = ZERO
    for i in range(1, lang.n + 1):
        total = total + e_proj((i,))
    return total - I


def m3_defect(lang: SftLanguage, i: int) -> OpExpr:
    if not 1 <= i <= lang.n:
        raise InputError(f"generator index {i} out of range 1..{lang.n}")
    out = I - e_proj((-i,))
    for nus in l_sets_all(lang, (i,)).values():
        for nu in nus:
            out = out - range_proj(nu)
    return out


def ck_defect(lang: SftLanguage, i: int) -> OpExpr:
    """S_i* S_i - sum_j A(i,j) S_j S_j* for a Markov language."""
    a = lang.matrix()
    out = e_proj((-i,))
    for j in range(1, lang.n + 1):
        if a[i - 1][j - 1]:
            out = out - e_proj((j,))
    return out


# -- evaluation -----------------------------------------------------------

@lru_cache(maxsize=64)
def model_for(lang: SftLanguage, junction_check: bool = True) -> SequenceModel:
    return SequenceModel(lang, junction_check)


def apply_atom(a: Atom, x: EvpSeq, lang: SftLanguage, junction_check: bool = True) -> Optional[EvpSeq]:
    return model_for(lang, junction_check).apply((a.code,), x)


def apply_monomial(m: Monomial, x: EvpSeq, lang: SftLanguage, junction_check: bool = True) -> Optional[EvpSeq]:
    return model_for(lang, junction_check).apply(codes(m), x)


def apply_expr(e: OpExpr, v: Mapping[EvpSeq, int], lang: SftLanguage,
               junction_check: bool = True, model: Optional[SequenceModel] = None) -> FormalVector:
    model = model or model_for(lang, junction_check)
    out: Dict[int, int] = {}
    for x, cx in v.items():
        i = model.intern(x)
        for m, c in e.terms.items():
            r = model.run(codes(m), i)
            if r != ABSENT:
                out[r] = out.get(r, 0) + c * cx
    return {model.seqs[r]: c for r, c in out.items() if c}


def ops_equal_on(e1: OpExpr, e2: OpExpr, vectors: Iterable[EvpSeq], lang: SftLanguage,
                 junction_check: bool = True, model: Optional[SequenceModel] = None) -> Verdict:
    """Compare two expressions on every basis vector; first mismatch is the witness."""
    checked = 0
    for x in sorted(vectors, key=vector_key):
        checked += 1
        lhs = apply_expr(e1, {x: 1}, lang, junction_check, model)
        rhs = apply_expr(e2, {x: 1}, lang, junction_check, model)
        if lhs != rhs:
            return Verdict.failed(checked, {
                "lhs_expr": format_expr(e1),
                "rhs_expr": format_expr(e2),
                "vector": format_seq(x),
                "lhs": format_vector(lhs),
                "rhs": format_vector(rhs),
            })
    return Verdict.passed(checked)


def inner(v: Mapping[EvpSeq, int], w: Mapping[EvpSeq, int]) -> int:
    return sum(c * w.get(x, 0) for x, c in v.items())


# -- text form ------------------------------------------------------------

def format_expr(e: OpExpr) -> str:
    if not e.terms:
        return "0"
    parts: List[str] = []
    for m in sorted(e.terms, key=_mono_key):
        c = e.terms[m]
        body = format_monomial(m)
        mag = abs(c)
        text = body if mag == 1 else f"{mag} {body}"
        parts.append(("- " if c < 0 else "+ ") + text)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


_EXPR_TOKEN = re.compile(r"\s*(?:(\d+)|S(\d+)(\*?)|(I)|([+-]))")


def _tokens(text: str) -> List[Tuple[str, object]]:
    out: List[Tuple[str, object]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _EXPR_TOKEN.match(text, pos)
        if not mt:
            raise InputError(f"cannot parse operator expression at {text[pos:]!r}")
        pos = mt.end()
        num, gen, star, ident, op = mt.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif gen is not None:
            out.append(("atom", Atom(int(gen), bool(star))))
        elif ident:
            out.append(("I", None))
        else:
            out.append(("op", 1 if op == "+" else -1))
    return out


def parse_expr(text: str, n: Optional[int] = None) -> OpExpr:
    """Parse ``S1 S2* + 2 I - S2 S2*``.  Juxtaposition is composition.

    A term is an optional coefficient followed by atoms or ``I``; terms are
    joined by ``+`` or ``-``, and only the first sign may be omitted.
    """
    toks = _tokens(text)
    if toks == [("num", 0)]:
        return ZERO
    terms: Dict[Monomial, int] = {}
    pos = 0
    while True:
        sign = 1
        if pos < len(toks) and toks[pos][0] == "op":
            sign = toks[pos][1]
            pos += 1
        elif pos:
            raise InputError(f"expected '+' or '-' in {text!r}")
        coeff = 1
        if pos < len(toks) and toks[pos][0] == "num":
            coeff = toks[pos][1]
            pos += 1
        atoms: List[Atom] = []
        seen = False
        while pos < len(toks) and toks[pos][0] in ("atom", "I"):
            kind, val = toks[pos]
            if kind == "atom":
                if val.gen == 0 or (n is not None and val.gen > n):
                    raise InputError(f"generator S{val.gen} out of range")
                atoms.append(val)
            seen = True
            pos += 1
        if not seen:
            raise InputError(f"missing monomial in {text!r}")
        m = tuple(atoms)
        terms[m] = terms.get(m, 0) + sign * coeff
        if pos == len(toks):
            return OpExpr(terms)
