"""The fast verifier and the literal oracle must agree suite by suite.

Agreement covers the verdict and the first failing instance.  Besides the
correct model, both sides are run on the mutated model (no admissibility
check on prepend) and on hand-broken models, so that failure paths of the
sparse evaluation are exercised too.
"""

import random

import pytest

import oracle
from partialrep import language as lg
from partialrep.report_types import FAIL, PASS
from partialrep.seqspace import SequenceModel, canonicalize, enumerate_vectors, parse_seq
from partialrep.verifier import (
    Context,
    SuiteConfig,
    check_claim,
    check_lemma2,
    check_lemma3,
    check_m2,
    check_m3,
    check_theorem1,
    partial_rep_details,
)


def drop(x, k):
    p, c = x
    for _ in range(k):
        if p:
            p = p[1:]
        else:
            c = c[1:] + c[:1]
    return (tuple(p), tuple(c))


def head(x, k):
    return oracle.unfold(x, k)


# Each tweak sees (atom code, input, honest output) and may change the output.
# They only look at the denoted sequence, never at its representation.
TWEAKS = {
    "honest": None,
    "star1_kills_121": lambda a, x, y: None if a == -1 and head(x, 3) == (1, 2, 1) else y,
    "s2_refuses_11": lambda a, x, y: None if a == 2 and head(x, 2) == (1, 1) else y,
    "star1_drops_two": lambda a, x, y: drop(x, 2) if a == -1 and head(x, 2) == (1, 1) else y,
    "s1_kills_long_2run": lambda a, x, y: None if a == 1 and head(x, 3) == (2, 2, 2) else y,
}


class TweakedModel(SequenceModel):
    backlink = False

    def __init__(self, lang, junction_check, tweak):
        super().__init__(lang, junction_check)
        self.tweak = tweak

    def image(self, atom, x):
        y = super().image(atom, x)
        if self.tweak is None:
            return y
        out = self.tweak(atom, tuple(x), None if y is None else tuple(y))
        return None if out is None else canonicalize(*out)


LANGS = {
    "full2": lg.FULL_2_SHIFT,
    "golden": lg.GOLDEN_MEAN,
    "cube": lg.CUBE_SHIFT,
    "even_ish": lg.SftLanguage(2, frozenset({(1, 2, 1), (2, 2, 2)})),
    "n1": lg.SftLanguage(1),
}
_rng = random.Random(1)
for _k in range(3):
    _lang = lg.random_sft(_rng, max_n=2, max_memory=3)
    LANGS[f"random{_k}"] = _lang

B, B2, P, Q = 3, 4, 2, 2


def _setup(lang, junction_check, tweak_name, bounds=(B, B2, P, Q)):
    tweak = TWEAKS[tweak_name]
    b, b2, p, q = bounds
    cfg = SuiteConfig(lang, max_word_len=b, max_pair_len=b2, prefix_bound=p, cycle_bound=q,
                      junction_check=junction_check)
    ctx = Context(cfg, TweakedModel(lang, junction_check, tweak))
    om = oracle.Model(lang.n, lang.forbidden, junction_check, tweak)
    return ctx, om, om.vectors(p, q)


def _agree(verdict, failures):
    if not failures:
        assert verdict.status == PASS, verdict.witness
        return
    assert verdict.status == FAIL, f"oracle found {failures[0]}"
    assert verdict.witness["instance"] == failures[0]
    assert verdict.witness["lhs"] != verdict.witness["rhs"]


@pytest.mark.parametrize("name", sorted(LANGS))
def test_vector_sets_agree(name):
    lang = LANGS[name]
    fast = enumerate_vectors(lang, P, Q)
    slow = oracle.Model(lang.n, lang.forbidden).vectors(P, Q)
    assert {oracle.key(tuple(x)) for x in fast} == {oracle.key(x) for x in slow}


CASES = [(name, True, t) for name in sorted(LANGS) for t in TWEAKS] + \
        [(name, False, "honest") for name in sorted(LANGS)]


def _compare_all(lang, junction, tweak, bounds=(B, B2, P, Q)):
    b, b2 = bounds[:2]
    ctx, om, vecs = _setup(lang, junction, tweak, bounds)
    if not vecs:
        pytest.skip("empty sequence space")
    _agree(check_m3(ctx), oracle.m3(om, vecs))
    _agree(check_m2(ctx), oracle.m2(om, vecs, b))
    _agree(check_lemma2(ctx), oracle.lemma2(om, vecs, b))
    _agree(check_lemma3(ctx), oracle.lemma3(om, vecs, b))
    _agree(check_claim(ctx), oracle.claim(om, vecs, b))
    t1 = check_theorem1(ctx)
    if any(not lg.member(lang, w) for w in oracle.words(lang.n, b, positive=True)):
        _agree(t1, oracle.theorem1(om, vecs, b))
    details = partial_rep_details(ctx)
    _agree(details["P2"], oracle.p2(om, vecs, b2))
    _agree(details["P3"], oracle.p3(om, vecs, b2))


@pytest.mark.parametrize("name,junction,tweak", CASES)
def test_suites_agree(name, junction, tweak):
    _compare_all(LANGS[name], junction, tweak)


THREE_LETTERS = [
    lg.SftLanguage(3),
    lg.SftLanguage(3, frozenset({(1, 2), (3, 3)})),
    lg.SftLanguage(3, frozenset({(2, 1, 3), (1, 1)})),
]


@pytest.mark.parametrize("idx", range(len(THREE_LETTERS)))
@pytest.mark.parametrize("junction,tweak", [(True, "honest"), (False, "honest"), (True, "star1_kills_121")])
def test_suites_agree_three_letters(idx, junction, tweak):
    _compare_all(THREE_LETTERS[idx], junction, tweak, bounds=(2, 3, 1, 2))


def test_broken_models_reach_p3_failures():
    # at least one broken model must fail P3 with a nonempty t, which only the
    # t'-descent of the P3 search can find
    seen = []
    for tweak in TWEAKS:
        if tweak == "honest":
            continue
        for lang in (lg.FULL_2_SHIFT, lg.GOLDEN_MEAN, lg.CUBE_SHIFT):
            ctx, _, _ = _setup(lang, True, tweak)
            v = partial_rep_details(ctx)["P3"]
            if v.status == FAIL:
                seen.append(v.witness["instance"])
    assert any(w["t"] != "e" for w in seen), seen


def test_mutant_witness_vectors_are_oracle_failures():
    lang = lg.GOLDEN_MEAN
    ctx, om, vecs = _setup(lang, False, "honest")
    v = check_theorem1(ctx)
    assert v.status == FAIL
    x = tuple(parse_seq(v.witness["vector"], 2))
    nu = tuple(int(tok[1:]) for tok in v.witness["instance"]["nu"].split())
    assert om.mono(nu, x) is not None
