"""Acceptance criteria, one test per criterion.

Each test records a single ``[PASS]``/``[FAIL]`` line; the lines are printed
as they happen and again in the pytest terminal summary.  The module also
runs as a script: ``python tests/test_acceptance.py``.
"""

import contextlib
import io
import json
import math
import random
import sys
import time
from pathlib import Path

import pytest

from partialrep import language as lg
from partialrep.cli import main
from partialrep.seqspace import EvpSeq, canonicalize, enumerate_vectors, unfold
from partialrep.verifier import Context, SuiteConfig, check_markov_specialization, replay

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a script
    ACCEPTANCE_LINES = []

SEED = 2024
RANDOM_SFTS = 20
MARKOV_COUNT = 5
DEFAULT_P = DEFAULT_Q = 3


def record(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def nonempty(lang):
    return len(enumerate_vectors(lang, DEFAULT_P, DEFAULT_Q)) > 0


def draw(rng, make, count):
    out = []
    while len(out) < count:
        lang = make(rng)
        if nonempty(lang) and lang not in out:
            out.append(lang)
    return out


def fixed_languages():
    return [lg.FULL_2_SHIFT, lg.GOLDEN_MEAN, lg.CUBE_SHIFT]


def random_languages():
    return draw(random.Random(SEED), lambda r: lg.random_sft(r, max_n=3, max_memory=3), RANDOM_SFTS)


def markov_languages():
    return draw(random.Random(SEED + 1), lambda r: lg.random_markov(r, max_n=3), MARKOV_COUNT)


def verify(path, *extra):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["--lang", str(path), "--cmd", "verify", "--format", "json", *extra])
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("langs")


def write_spec(workdir, name, lang):
    path = Path(workdir) / f"{name}.json"
    path.write_text(json.dumps(lg.to_json(lang)))
    return path


@pytest.fixture(scope="module")
def battery(workdir):
    langs = fixed_languages() + random_languages()
    start = time.perf_counter()
    runs = []
    for k, lang in enumerate(langs):
        code, out = verify(write_spec(workdir, f"lang{k}", lang))
        runs.append((lang, code, json.loads(out)))
    return runs, time.perf_counter() - start


def test_criterion_01_battery(battery):
    runs, elapsed = battery
    bad = [str(lang) for lang, code, _ in runs if code != 0]
    n_random = len(runs) - 3
    ok = not bad and n_random >= RANDOM_SFTS and elapsed < 60
    record(1, ok, f"cmd_verify exit 0 on 3 fixed + {n_random} random SFTs in {elapsed:.1f} s (< 60 s)"
           + (f"; failing: {bad}" if bad else ""))


def test_criterion_02_lemma1(battery):
    bad, checked = [], 0
    for lang, _, _ in battery[0]:
        v = lg.verify_lemma1(lang, 5)
        checked += v.checked_count
        if v.status == "fail":
            bad.append((str(lang), v.witness))
    record(2, not bad, f"lemma 1 at word bound 5 on {len(battery[0])} languages, "
                       f"{checked} instances, {len(bad)} counterexamples")


def _suite_line(battery, suite, allowed=("pass",)):
    bad, checked = [], 0
    for lang, _, report in battery[0]:
        v = report["suites"][suite]
        checked += v["checked_count"]
        if v["status"] not in allowed:
            bad.append((str(lang), v["status"], v.get("witness")))
    return bad, checked


def test_criterion_03_lemma3(battery):
    bad, checked = _suite_line(battery, "lemma3")
    ok = not bad and all(r["config"]["max_word_len"] == 4 for _, _, r in battery[0])
    record(3, ok, f"lemma 3 case prediction equals the literal product, |nu|, |alpha| <= 4: "
                  f"{checked} instances, {len(bad)} mismatches")


def test_criterion_04_theorem1(battery):
    bad, checked = _suite_line(battery, "theorem1", allowed=("pass", "vacuous"))
    vacuous = [str(l) for l, _, r in battery[0] if r["suites"]["theorem1"]["status"] == "vacuous"]
    record(4, not bad, f"S_nu annihilates every vector for nu outside the language, |nu| <= 4: "
                       f"{checked} instances, {len(bad)} failures (vacuous only on {vacuous})")


def test_criterion_05_partial_rep(battery):
    bad, checked = _suite_line(battery, "partial_rep")
    ok = not bad and all(r["config"]["max_pair_len"] == 6 for _, _, r in battery[0])
    record(5, ok, f"P1 syntactic, P2 and P3 exhaustive for |t| + |r| <= 6: "
                  f"{checked} instances, {len(bad)} failures")


def test_criterion_06_markov(workdir):
    langs = markov_languages()
    bad = []
    for k, lang in enumerate(langs):
        v = check_markov_specialization(Context(SuiteConfig(lang)))
        code, out = verify(write_spec(workdir, f"markov{k}", lang))
        if v.status != "pass" or code != 0 or json.loads(out)["suites"]["markov"]["status"] != "pass":
            bad.append(str(lang))
    record(6, len(langs) >= MARKOV_COUNT and not bad,
           f"{len(langs)} random 0/1 matrices: exit sets vanish for k >= 2 and the M3 defect "
           f"matches the Cuntz-Krieger defect pointwise; failing: {bad or 'none'}")


def test_criterion_07_finiteness(battery):
    langs = [lang for lang, _, _ in battery[0]] + markov_languages()
    bad, checked = [], 0
    for lang in langs:
        v = lg.finiteness_certificate(lang, 4, extra=2)
        checked += v.checked_count
        if v.status != "pass":
            bad.append(str(lang))
    record(7, not bad, f"exit sets empty for memory <= k <= memory + 2, |mu| <= 4, on {len(langs)} "
                       f"languages ({checked} sets enumerated)")


def test_criterion_08_canonicalization():
    rng = random.Random(SEED)
    mismatches = 0
    for _ in range(1000):
        p1 = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 4)))
        c1 = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 4)))
        p2 = p1 + c1 * rng.randint(1, 3)
        c2 = c1
        length = max(len(p1), len(p2)) + math.lcm(len(c1), len(c2))
        same_text = unfold(EvpSeq(p1, c1), length) == unfold(EvpSeq(p2, c2), length)
        if not same_text or canonicalize(p1, c1) != canonicalize(p2, c2):
            mismatches += 1
    record(8, mismatches == 0, f"1000 pumped re-representations: {mismatches} mismatches")


def test_criterion_09_mutation(workdir):
    path = write_spec(workdir, "golden_mutant", lg.GOLDEN_MEAN)
    code, out = verify(path, "--no-junction-check")
    report = json.loads(out)
    failing = [k for k, v in report["suites"].items() if v["status"] == "fail"]
    targets = [k for k in failing if k in ("m3", "theorem1", "lemma3")]
    replays = [
        replay(report["suites"][k]["witness"], lg.GOLDEN_MEAN, junction_check=False)
        and not replay(report["suites"][k]["witness"], lg.GOLDEN_MEAN)
        for k in targets
    ]
    ok = code == 1 and bool(targets) and all(replays)
    record(9, ok, f"junction check disabled on golden mean: exit {code}, failing {failing}, "
                  f"witnesses replay in isolation: {all(replays) if replays else False}")


def test_criterion_10_determinism(workdir):
    path = write_spec(workdir, "golden_det", lg.GOLDEN_MEAN)
    a = verify(path, "--seed", "7")
    b = verify(path, "--seed", "7")
    record(10, a == b and a[0] == 0, f"two consecutive JSON runs byte-identical "
                                      f"({len(a[1])} bytes each)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
