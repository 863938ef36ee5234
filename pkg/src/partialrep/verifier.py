"""Bounded exhaustive checks of the partial-representation identities.

Every suite quantifies over finitely many instances (words up to the
configured lengths, test vectors up to the prefix/cycle bounds) and compares
both sides exactly on each basis vector.  A pass means "no counterexample
within bounds".

Evaluation is sparse but exact.  Two facts are used to skip work without
skipping instances:

* if both sides share a right factor that kills the vector, both sides are 0;
* if both sides have the form ``L . u`` and ``L . v`` and ``u == v`` as
  vectors, both sides agree.

Everything else is evaluated atom by atom on interned sequence ids.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from . import language as lg
from .errors import InputError, PreconditionError
from .freegroup import E, Word, concat, format_word, inverse, letter_key, word_key, words_up_to
from .language import SftLanguage
from .operators import (
    ZERO,
    I,
    adjoint,
    apply_expr,
    ck_defect,
    compose,
    e_proj,
    format_expr,
    m1_defect,
    m3_defect,
    ops_equal_on,
    parse_expr,
    s_map,
)
from .report_types import FAIL, PASS, VACUOUS, Verdict
from .seqspace import (
    ABSENT,
    SequenceModel,
    EvpSeq,
    VectorSet,
    canonicalize,
    enumerate_vectors,
    is_canonical,
    unfold,
    format_seq,
    format_vector,
    parse_seq,
)


@dataclass(frozen=True)
class SuiteConfig:
    lang: SftLanguage
    max_word_len: int = 4
    max_pair_len: int = 6
    prefix_bound: int = 3
    cycle_bound: int = 3
    junction_check: bool = True
    seed: int = 0
    canon_samples: int = 1000

    def __post_init__(self):
        for name in ("max_word_len", "max_pair_len", "prefix_bound", "cycle_bound"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be >= 1")

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "language": lg.to_json(self.lang),
            "max_word_len": self.max_word_len,
            "max_pair_len": self.max_pair_len,
            "prefix_bound": self.prefix_bound,
            "cycle_bound": self.cycle_bound,
            "seed": self.seed,
        }
        if not self.junction_check:
            out["junction_check"] = False
        return out


class Context:
    """Per-config evaluation state shared by the suites."""

    def __init__(self, cfg: SuiteConfig, model: Optional[SequenceModel] = None):
        self.cfg = cfg
        self.lang = cfg.lang
        self.model = model or SequenceModel(cfg.lang, cfg.junction_check)
        self.vectors: VectorSet = enumerate_vectors(cfg.lang, cfg.prefix_bound, cfg.cycle_bound)
        self.ids = [self.model.intern(x) for x in self.vectors]
        self.members = lg.enumerate_words(cfg.lang, cfg.max_word_len)
        self.member_set = frozenset(self.members)

    @property
    def empty(self) -> bool:
        return not self.ids

    def seq(self, i: int) -> str:
        return "0" if i == ABSENT else format_seq(self.model.seqs[i])

    def star_support(self, i: int, maxlen: int) -> Dict[Word, int]:
        """Positive words r (|r| <= maxlen) with S_r* nonzero on vector i.

        S_r* applies S_{r_1}* first, so r grows to the right.
        """
        step = self.model.step
        out = {E: i}
        layer = [(E, i)]
        for _ in range(maxlen):
            nxt = []
            for w, v in layer:
                for j in range(1, self.lang.n + 1):
                    u = step(-j, v)
                    if u != ABSENT:
                        out[w + (j,)] = u
                        nxt.append((w + (j,), u))
            layer = nxt
        return out


class _Worst:
    """Keeps the smallest failing (instance key, vector position)."""

    def __init__(self):
        self.key = None
        self.payload: Optional[Callable[[], Dict[str, Any]]] = None

    def offer(self, key, payload: Callable[[], Dict[str, Any]]) -> None:
        if self.key is None or key < self.key:
            self.key, self.payload = key, payload

    def verdict(self, checked: int, note: Optional[str] = None) -> Verdict:
        if self.payload is not None:
            return Verdict.failed(checked, self.payload())
        return Verdict.passed(checked, note)


def _op_witness(ctx: Context, instance: Dict[str, Any], lhs, rhs, x: int) -> Dict[str, Any]:
    """Witness with both sides re-evaluated from their text form."""
    xs = ctx.model.seqs[x]
    lv = apply_expr(lhs, {xs: 1}, ctx.lang, model=ctx.model)
    rv = apply_expr(rhs, {xs: 1}, ctx.lang, model=ctx.model)
    return {
        "instance": instance,
        "lhs_expr": format_expr(lhs),
        "rhs_expr": format_expr(rhs),
        "vector": format_seq(xs),
        "lhs": format_vector(lv),
        "rhs": format_vector(rv),
    }


def _vacuous_space(ctx: Context) -> Optional[Verdict]:
    if ctx.empty:
        return Verdict.vacuous(ctx.vectors.warning)
    return None


def _family(ctx: Context, instances: Iterable[Tuple[Dict[str, Any], Any, Any]]) -> Verdict:
    """Literal check of a list of (instance, lhs, rhs) expression pairs."""
    checked = 0
    for inst, lhs, rhs in instances:
        v = ops_equal_on(lhs, rhs, ctx.vectors.vectors, ctx.lang, model=ctx.model)
        if v.status == FAIL:
            w = dict(v.witness)
            w = {"instance": inst, **w}
            return Verdict.failed(checked + v.checked_count, w)
        checked += v.checked_count
    return Verdict.passed(checked)


# -- range and source relations ---------------------------------------------

def check_m1(ctx: Context) -> Verdict:
    return _vacuous_space(ctx) or _family(ctx, [({}, m1_defect(ctx.lang), ZERO)])


def check_m2(ctx: Context) -> Verdict:
    """Range projections of members commute with source projections of members."""
    if (v := _vacuous_space(ctx)) is not None:
        return v
    B = ctx.cfg.max_word_len
    members = ctx.members
    model = ctx.model
    worst = _Worst()
    range_cache: Dict[int, Dict[Word, int]] = {ABSENT: {}}
    source_cache: Dict[int, Dict[Word, int]] = {ABSENT: {}}

    def ranges(u: int) -> Dict[Word, int]:
        # mu -> S_mu S_mu* u, for members mu where it is nonzero
        if u not in range_cache:
            out = {}
            for mu, y in ctx.star_support(u, B).items():
                if mu in ctx.member_set:
                    r = model.run(mu, y)
                    if r != ABSENT:
                        out[mu] = r
            range_cache[u] = out
        return range_cache[u]

    def sources(u: int) -> Dict[Word, int]:
        # nu -> S_nu* S_nu u
        if u not in source_cache:
            out = {}
            for nu, y in model.support(u, B, positive_only=True).items():
                if nu in ctx.member_set:
                    r = model.run(inverse(nu), y)
                    if r != ABSENT:
                        out[nu] = r
            source_cache[u] = out
        return source_cache[u]

    for pos, x in enumerate(ctx.ids):
        P = ranges(x)
        Q = sources(x)
        by_p: Dict[int, List[Word]] = {}
        by_q: Dict[int, List[Word]] = {}
        for mu in members:
            by_p.setdefault(P.get(mu, ABSENT), []).append(mu)
        for nu in members:
            by_q.setdefault(Q.get(nu, ABSENT), []).append(nu)
        for p, mus in by_p.items():
            for q, nus in by_q.items():
                # lhs(mu, nu) = range_mu(q), rhs(mu, nu) = source_nu(p)
                Rq = ranges(q)
                Sp = sources(p)
                lvals = {Rq.get(mu, ABSENT) for mu in mus}
                rvals = {Sp.get(nu, ABSENT) for nu in nus}
                if len(lvals) == 1 and lvals == rvals:
                    continue
                for mu in mus:
                    for nu in nus:
                        if Rq.get(mu, ABSENT) != Sp.get(nu, ABSENT):
                            worst.offer(
                                (word_key(mu), word_key(nu), pos),
                                lambda mu=mu, nu=nu, x=x: _op_witness(
                                    ctx, {"mu": format_word(mu), "nu": format_word(nu)},
                                    compose(e_proj(mu), e_proj(inverse(nu))),
                                    compose(e_proj(inverse(nu)), e_proj(mu)), x),
                            )
    return worst.verdict(len(members) ** 2 * len(ctx.ids))


def check_m3(ctx: Context) -> Verdict:
    if (v := _vacuous_space(ctx)) is not None:
        return v
    return _family(ctx, [({"i": i}, m3_defect(ctx.lang, i), ZERO) for i in range(1, ctx.lang.n + 1)])


def check_orthogonality(ctx: Context) -> Verdict:
    if ctx.lang.n < 2:
        return Verdict.vacuous("needs at least two generators")
    if (v := _vacuous_space(ctx)) is not None:
        return v
    n = ctx.lang.n
    return _family(ctx, [
        ({"i": i, "j": j}, compose(s_map((-i,)), s_map((j,))), ZERO)
        for i in range(1, n + 1) for j in range(1, n + 1) if i != j
    ])


# -- lemmas -----------------------------------------------------------------

def check_lemma2(ctx: Context) -> Verdict:
    """S_mu = S_mu S_mu* S_mu for members mu."""
    if (v := _vacuous_space(ctx)) is not None:
        return v
    model = ctx.model
    worst = _Worst()
    B = ctx.cfg.max_word_len
    for pos, x in enumerate(ctx.ids):
        # mu outside the support: both sides start with S_mu, so both vanish
        for mu, y in model.support(x, B, positive_only=True).items():
            if mu not in ctx.member_set:
                continue
            r = model.run(mu + inverse(mu), y)
            if r != y:
                worst.offer((word_key(mu), pos), lambda mu=mu, x=x: _op_witness(
                    ctx, {"mu": format_word(mu)}, s_map(mu),
                    compose(s_map(mu), compose(adjoint(s_map(mu)), s_map(mu))), x))
    return worst.verdict(len(ctx.members) * len(ctx.ids))


def lemma3_prediction(nu: Word, alpha: Word) -> Tuple[str, Any]:
    """Case analysis for S_nu S_nu* S_alpha: returns (case, expression)."""
    if len(alpha) >= len(nu):
        if alpha[:len(nu)] == nu:
            return "a", s_map(alpha)
        return "a", ZERO
    if nu[:len(alpha)] == alpha:
        r = nu[len(alpha):]
        return "b", compose(s_map(nu), adjoint(s_map(r)))
    return "b", ZERO


def check_lemma3(ctx: Context) -> Verdict:
    if (v := _vacuous_space(ctx)) is not None:
        return v
    model = ctx.model
    B = ctx.cfg.max_word_len
    positives = list(words_up_to(ctx.lang.n, B, positive=True))
    worst = _Worst()
    proj_cache: Dict[int, Dict[Word, int]] = {}

    def range_images(y: int) -> Dict[Word, int]:
        # nu -> S_nu S_nu* y over members nu where nonzero
        if y not in proj_cache:
            out = {}
            for nu, u in ctx.star_support(y, B).items():
                if nu in ctx.member_set:
                    r = model.run(nu, u)
                    if r != ABSENT:
                        out[nu] = r
            proj_cache[y] = out
        return proj_cache[y]

    for pos, x in enumerate(ctx.ids):
        images = model.support(x, B, positive_only=True)
        stars = ctx.star_support(x, B)
        for alpha in positives:
            y = images.get(alpha, ABSENT)
            literal = range_images(y) if y != ABSENT else {}
            predicted = {}
            if y != ABSENT:
                for j in range(len(alpha) + 1):
                    if alpha[:j] in ctx.member_set:
                        predicted[alpha[:j]] = y
            for r, u in stars.items():
                if r and len(alpha) + len(r) <= B:
                    nu = alpha + r
                    if nu in ctx.member_set:
                        v = model.run(nu, u)
                        if v != ABSENT:
                            predicted[nu] = v
            if literal == predicted:
                continue
            for nu in set(literal) | set(predicted):
                if literal.get(nu, ABSENT) != predicted.get(nu, ABSENT):
                    case, pred = lemma3_prediction(nu, alpha)
                    worst.offer((word_key(nu), word_key(alpha), pos),
                                lambda nu=nu, alpha=alpha, x=x, case=case, pred=pred: _op_witness(
                                    ctx, {"nu": format_word(nu), "alpha": format_word(alpha), "case": case},
                                    compose(e_proj(nu), s_map(alpha)), pred, x))
    return worst.verdict(len(ctx.members) * len(positives) * len(ctx.ids))


def check_theorem1(ctx: Context) -> Verdict:
    """S_nu = 0 for positive words nu outside the language."""
    B = ctx.cfg.max_word_len
    outside = [w for w in words_up_to(ctx.lang.n, B, positive=True) if w not in ctx.member_set]
    if not outside:
        return Verdict.vacuous("every positive word within bounds is in the language")
    if (v := _vacuous_space(ctx)) is not None:
        return v
    worst = _Worst()
    for pos, x in enumerate(ctx.ids):
        for nu in ctx.model.support(x, B, positive_only=True):
            if nu not in ctx.member_set:
                worst.offer((word_key(nu), pos), lambda nu=nu, x=x: _op_witness(
                    ctx, {"nu": format_word(nu)}, s_map(nu), ZERO, x))
    return worst.verdict(len(outside) * len(ctx.ids))


# -- partial representation axioms -----------------------------------------

def check_claim(ctx: Context) -> Verdict:
    """E(r) and E(t) commute for reduced r and single letters t."""
    if (v := _vacuous_space(ctx)) is not None:
        return v
    model = ctx.model
    B = ctx.cfg.max_word_len
    n = ctx.lang.n
    letters = sorted([a for j in range(1, n + 1) for a in (j, -j)], key=letter_key)
    cache: Dict[int, Dict[Word, int]] = {ABSENT: {}}

    def projections(u: int) -> Dict[Word, int]:
        # r -> E(r) u = S(r) S(r^-1) u, nonzero entries only
        if u not in cache:
            out = {}
            for w, y in model.support(u, B).items():
                r = inverse(w)
                z = model.run(r, y)
                if z != ABSENT:
                    out[r] = z
            cache[u] = out
        return cache[u]

    worst = _Worst()
    nwords = sum(1 for _ in words_up_to(n, B))
    for pos, x in enumerate(ctx.ids):
        Ex = projections(x)
        for t in letters:
            tt = (t, -t)
            v = model.run(tt, x)
            lhs = projections(v)  # E(r) E(t) x
            rhs = {}
            for r, u in Ex.items():  # E(t) E(r) x
                z = model.run(tt, u)
                if z != ABSENT:
                    rhs[r] = z
            if lhs == rhs:
                continue
            for r in set(lhs) | set(rhs):
                if lhs.get(r, ABSENT) != rhs.get(r, ABSENT):
                    worst.offer((word_key(r), letter_key(t), pos),
                                lambda r=r, t=t, x=x: _op_witness(
                                    ctx, {"r": format_word(r), "t": format_word((t,))},
                                    compose(e_proj(r), e_proj((t,))),
                                    compose(e_proj((t,)), e_proj(r)), x))
    return worst.verdict(nwords * 2 * n * len(ctx.ids))


def _count_words(n: int, maxlen: int, banned_last: int = 0) -> int:
    """Reduced words of length <= maxlen whose last letter avoids ``banned_last``
    distinct letters (the empty word always counts)."""
    total = 1
    for k in range(1, maxlen + 1):
        total += (2 * n - banned_last) * (2 * n - 1) ** (k - 1)
    return total


def check_partial_rep(ctx: Context) -> Verdict:
    """Combined P1-P3 verdict; the first failing axiom supplies the witness."""
    parts = partial_rep_details(ctx)
    for axiom, v in parts.items():
        if v.status == FAIL:
            return Verdict.failed(sum(p.checked_count for p in parts.values()), v.witness)
    total = sum(p.checked_count for p in parts.values())
    notes = [f"{a}: {v.status}" + (f" ({v.note})" if v.note else "")
             for a, v in parts.items() if v.status != PASS or v.note]
    return Verdict.passed(total, "; ".join(notes) or None)


def partial_rep_details(ctx: Context) -> Dict[str, Verdict]:
    """P1: S(e) = I.  P2: S(t^-1) = S(t)*.  P3: S(t)S(r)S(r^-1) = S(tr)S(r^-1).

    P2 is checked structurally (the monomial of t^-1 is the adjoint of the
    monomial of t) and semantically (matrix coefficients on test vectors:
    S(t) x = y exactly when S(t^-1) y = x).  P3 is checked pointwise for all
    pairs with |t| + |r| <= max_pair_len.
    """
    n = ctx.lang.n
    B2 = ctx.cfg.max_pair_len
    # P1 and structural P2 are syntactic and do not need vectors
    out: Dict[str, Verdict] = {}
    p1 = ops_equal_on(s_map(E), I, ctx.vectors.vectors, ctx.lang, model=ctx.model)
    if s_map(E) != I:
        p1 = Verdict.failed(1, {"axiom": "P1", "lhs_expr": format_expr(s_map(E)), "rhs_expr": "I"})
    elif p1.status == VACUOUS:
        p1 = Verdict.passed(1, "syntactic only")
    out["P1"] = p1
    structural = 0
    for t in words_up_to(n, B2):
        structural += 1
        if adjoint(s_map(t)) != s_map(inverse(t)):
            out["P2"] = Verdict.failed(structural, {
                "axiom": "P2", "t": format_word(t),
                "lhs_expr": format_expr(s_map(inverse(t))),
                "rhs_expr": format_expr(adjoint(s_map(t))),
            })
            break
    if ctx.empty:
        out.setdefault("P2", Verdict.passed(structural, "structural only; " + ctx.vectors.warning))
        out["P3"] = Verdict.vacuous(ctx.vectors.warning)
        return out

    model = ctx.model
    step = model.step
    in_test = {x: pos for pos, x in enumerate(ctx.ids)}
    letters = sorted([a for j in range(1, n + 1) for a in (j, -j)], key=letter_key)
    worst_p2 = _Worst()
    worst_p3 = _Worst()

    def p3_fail(t: Word, r: Word, pos: int, x: int) -> None:
        worst_p3.offer(
            (len(t) + len(r), word_key(t), word_key(r), pos),
            lambda: _op_witness(
                ctx, {"axiom": "P3", "t": format_word(t), "r": format_word(r)},
                compose(compose(s_map(t), s_map(r)), s_map(inverse(r))),
                compose(s_map(concat(t, r)), s_map(inverse(r))), x))

    def descend(a: int, b: int, budget: int, banned: Tuple[int, ...], r: Word, c: int,
                pos: int, x: int) -> None:
        # compare S(t') a with S(t') b for reduced t' (grown leftwards)
        tail = inverse(r[:c])
        stack = [(E, a, b)]
        while stack:
            tp, u, v = stack.pop()
            if u != v:
                p3_fail(tp + tail, r, pos, x)
            if (u == ABSENT and v == ABSENT) or len(tp) == budget:
                continue
            for q in letters:
                if tp and tp[0] == -q:
                    continue
                if not tp and q in banned:
                    continue
                stack.append(((q,) + tp,
                              ABSENT if u == ABSENT else step(q, u),
                              ABSENT if v == ABSENT else step(q, v)))

    def fresh_state(r: Word, y: int):
        # b[j] = S(r[j:]) y, a[c] = S(r[:c]^-1) S(r) y
        k = len(r)
        b = [ABSENT] * (k + 1)
        b[k] = y
        for j in range(k - 1, -1, -1):
            b[j] = ABSENT if b[j + 1] == ABSENT else step(r[j], b[j + 1])
        a = [b[0]]
        for c in range(1, k + 1):
            a.append(ABSENT if a[-1] == ABSENT else step(-r[c - 1], a[-1]))
        mism = tuple((c, a[c], b[c]) for c in range(1, k + 1) if a[c] != b[c])
        return b[0], a[k], mism

    tables = model._tab

    def fast(a: int, u: int) -> int:
        r = tables[a].get(u)
        return step(a, u) if r is None else r

    children = {p: [q for q in letters if q != -p] for p in letters}
    children[0] = letters
    for pos, x in enumerate(ctx.ids):
        # nodes: (w = r^-1, y = S(w) x, z = S(r) y, A = S(w) z, mismatches)
        layer = [(E, x, x, x, ())]
        depth = 0
        while layer:
            nxt = []
            L = B2 - depth
            for w, y, z, A, mism in layer:
                # P2 on matrix coefficients: S(w) x = y in the test set needs S(w^-1) y = x
                if z != x and y in in_test:
                    worst_p2.offer((word_key(w), pos), lambda w=w, x=x: _op_witness(
                        ctx, {"axiom": "P2", "t": format_word(w)},
                        compose(s_map(inverse(w)), s_map(w)), I, x))
                if mism:
                    r = inverse(w)
                    for c, ac, bc in mism:
                        if c <= L:
                            banned = (r[c - 1],) + ((-r[c],) if c < depth else ())
                            descend(ac, bc, L - c, banned, r, c, pos, x)
                if depth == B2:
                    continue
                for p in children[w[0] if w else 0]:
                    y2 = fast(p, y)
                    if y2 == ABSENT:
                        continue  # S(r'^-1) x = 0: both P3 sides vanish for every t
                    if fast(-p, y2) == y:
                        A2 = ABSENT if A == ABSENT else fast(p, A)
                        if A2 == y2:
                            nxt.append(((p,) + w, y2, z, A2, mism))
                        else:
                            nxt.append(((p,) + w, y2, z, A2, mism + ((depth + 1, A2, y2),)))
                    else:
                        w2 = (p,) + w
                        z2, A2, mism2 = fresh_state(inverse(w2), y2)
                        nxt.append((w2, y2, z2, A2, mism2))
            layer = nxt
            depth += 1

    nwords = _count_words(n, B2)
    pairs = sum(
        (_count_words(n, k) - (_count_words(n, k - 1) if k else 0)) * _count_words(n, B2 - k)
        for k in range(B2 + 1)
    )
    nv = len(ctx.ids)
    out.setdefault("P2", worst_p2.verdict(structural + nwords * nv * nv))
    out["P3"] = worst_p3.verdict(pairs * nv)
    return out


# -- canonical form --------------------------------------------------------

def rerepresent(rng: random.Random, prefix: Word, cycle: Word) -> Tuple[Word, Word]:
    """Another (prefix, cycle) for the same sequence: pump 1-3 whole cycles
    into the prefix, optionally a partial cycle with a matching rotation, and
    optionally repeat the cycle."""
    k = rng.randint(1, 3)
    j = rng.randrange(len(cycle))
    p2 = prefix + cycle * k + cycle[:j]
    c2 = (cycle[j:] + cycle[:j]) * rng.randint(1, 2)
    return p2, c2


def check_canonicalization(ctx: Context) -> Verdict:
    """Canonical forms agree exactly when long enough unfoldings agree."""
    rng = random.Random(ctx.cfg.seed)
    n = ctx.lang.n
    checked = 0

    def rand_word(lo: int, hi: int) -> Word:
        return tuple(rng.randint(1, n) for _ in range(rng.randint(lo, hi)))

    for _ in range(ctx.cfg.canon_samples):
        p1, c1 = rand_word(0, 4), rand_word(1, 4)
        if rng.random() < 0.75:
            p2, c2 = rerepresent(rng, p1, c1)
        else:
            p2, c2 = rand_word(0, 4), rand_word(1, 4)
        length = max(len(p1), len(p2)) + math.lcm(len(c1), len(c2))
        same = unfold(EvpSeq(p1, c1), length) == unfold(EvpSeq(p2, c2), length)
        x1, x2 = canonicalize(p1, c1), canonicalize(p2, c2)
        checked += 1
        if same != (x1 == x2) or not is_canonical(x1):
            return Verdict.failed(checked, {
                "first": f"{format_word(p1)}|{format_word(c1)}",
                "second": f"{format_word(p2)}|{format_word(c2)}",
                "canonical": [format_seq(x1), format_seq(x2)],
                "unfoldings_agree": same,
            })
    return Verdict.passed(checked)


# -- Markov specialization and finiteness --------------------------------------

def check_markov_specialization(ctx: Context) -> Verdict:
    lang = ctx.lang
    if not lang.is_markov:
        raise PreconditionError("Markov specialization needs a language with only length-2 forbidden words")
    checked = 0
    for i in range(1, lang.n + 1):
        for k in range(2, lang.memory + 2):
            checked += 1
            s = lg.l_set(lang, (i,), k)
            if s:
                return Verdict.failed(checked, {
                    "i": i, "k": k, "l_set": sorted(format_word(v) for v in s)})
    if ctx.empty:
        return Verdict.passed(checked, ctx.vectors.warning)
    v = _family(ctx, [({"i": i}, m3_defect(lang, i), -ck_defect(lang, i))
                      for i in range(1, lang.n + 1)])
    if v.status == FAIL:
        return Verdict.failed(checked + v.checked_count, v.witness)
    return Verdict.passed(checked + v.checked_count)


def check_finiteness(ctx: Context) -> Verdict:
    return lg.finiteness_certificate(ctx.lang, ctx.cfg.max_word_len)


# -- report -----------------------------------------------------------------

SUITES: Tuple[Tuple[str, Callable[[Context], Verdict]], ...] = (
    ("language_axioms", lambda ctx: lg.validate(ctx.lang)),
    ("canonical_form", check_canonicalization),
    ("lemma1", lambda ctx: lg.verify_lemma1(ctx.lang, ctx.cfg.max_word_len)),
    ("finiteness", check_finiteness),
    ("m1", check_m1),
    ("m2", check_m2),
    ("m3", check_m3),
    ("orthogonality", check_orthogonality),
    ("lemma2", check_lemma2),
    ("lemma3", check_lemma3),
    ("theorem1", check_theorem1),
    ("claim", check_claim),
    ("partial_rep", check_partial_rep),
    ("markov", check_markov_specialization),
)


@dataclass
class Report:
    config: Dict[str, Any]
    suites: Dict[str, Verdict]
    warnings: List[str] = field(default_factory=list)

    @property
    def totals(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, VACUOUS: 0}
        for v in self.suites.values():
            out[v.status] += 1
        out["instances"] = sum(v.checked_count for v in self.suites.values())
        return out

    @property
    def status(self) -> str:
        statuses = {v.status for v in self.suites.values()}
        if FAIL in statuses:
            return FAIL
        return PASS if PASS in statuses else VACUOUS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config,
            "status": self.status,
            "suites": {k: v.to_dict() for k, v in self.suites.items()},
            "totals": self.totals,
            "warnings": self.warnings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        return cls(data["config"], {k: Verdict.from_dict(v) for k, v in data["suites"].items()},
                   list(data.get("warnings", [])))

    def to_text(self) -> str:
        lines = [f"language: {lg.from_json(self.config['language'])}"]
        bounds = {k: v for k, v in self.config.items() if k != "language"}
        lines.append("bounds: " + ", ".join(f"{k}={v}" for k, v in bounds.items()))
        width = max(len(k) for k in self.suites)
        for name, v in self.suites.items():
            line = f"  {name:<{width}}  {v.status:<7}  {v.checked_count} instances"
            if v.note:
                line += f"  ({v.note})"
            lines.append(line)
            if v.witness is not None:
                for key, val in v.witness.items():
                    lines.append(f"      {key}: {val}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        t = self.totals
        lines.append(f"overall: {self.status} ({t[PASS]} pass, {t[FAIL]} fail, {t[VACUOUS]} vacuous;"
                     f" exhaustive within bounds)")
        return "\n".join(lines)


def run_all(cfg: SuiteConfig, only: Optional[Iterable[str]] = None,
            model: Optional[SequenceModel] = None) -> Report:
    ctx = Context(cfg, model)
    wanted = set(only) if only is not None else None
    suites: Dict[str, Verdict] = {}
    for name, fn in SUITES:
        if wanted is not None and name not in wanted:
            continue
        if name == "markov" and not cfg.lang.is_markov:
            continue
        suites[name] = fn(ctx)
    warnings = []
    if ctx.vectors.warning:
        warnings.append(ctx.vectors.warning + "; operator identities hold vacuously")
    return Report(cfg.to_dict(), suites, warnings)


def replay(witness: Dict[str, Any], lang: SftLanguage, junction_check: bool = True) -> bool:
    """Re-evaluate an operator witness in isolation; True if the sides differ."""
    lhs = parse_expr(witness["lhs_expr"], lang.n)
    rhs = parse_expr(witness["rhs_expr"], lang.n)
    x = parse_seq(witness["vector"], lang.n)
    return apply_expr(lhs, {x: 1}, lang, junction_check) != apply_expr(rhs, {x: 1}, lang, junction_check)
