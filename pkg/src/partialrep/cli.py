"""Command-line front end.

    partialrep --lang golden.json --cmd member --word "g1 g2"
    partialrep --lang golden.json --cmd lsets --mu g2
    partialrep --lang golden.json --cmd apply --expr "S1*" --vector "e|g1 g2"
    partialrep --lang golden.json --cmd verify --format json

Exit status: 0 success, 1 a verification suite failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import language as lg
from .errors import InputError, PreconditionError
from .freegroup import format_word, is_positive, parse_word
from .operators import apply_expr, parse_expr
from .report_types import FAIL
from .seqspace import format_vector, is_admissible, parse_seq
from .verifier import SuiteConfig, run_all


def _positive(text: str, n: int):
    w = parse_word(text, n)
    if not is_positive(w):
        raise InputError(f"{text!r} is not a positive word")
    return w


def cmd_member(lang: lg.SftLanguage, word: str) -> int:
    print("true" if lg.member(lang, _positive(word, lang.n)) else "false")
    return 0


def cmd_lsets(lang: lg.SftLanguage, mu_text: str) -> int:
    mu = _positive(mu_text, lang.n)
    sets = lg.l_sets_all(lang, mu)
    nonempty = {k: s for k, s in sets.items() if s}
    if not nonempty:
        print("(all empty)")
    for k, s in nonempty.items():
        words = sorted(s, key=lambda w: (len(w), w))
        print(f"k={k}: {{{', '.join(format_word(w) for w in words)}}}")
    print(f"empty for k >= {lang.memory}")
    return 0


def cmd_apply(lang: lg.SftLanguage, expr_text: str, vector_text: str,
              junction_check: bool = True) -> int:
    expr = parse_expr(expr_text, lang.n)
    x = parse_seq(vector_text, lang.n)
    if not is_admissible(x, lang):
        raise InputError(f"{vector_text!r} is not an admissible sequence")
    print(format_vector(apply_expr(expr, {x: 1}, lang, junction_check)))
    return 0


def cmd_verify(cfg: SuiteConfig, fmt: str) -> int:
    report = run_all(cfg)
    print(report.to_json() if fmt == "json" else report.to_text())
    return 1 if report.status == FAIL else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partialrep", description=__doc__.split("\n\n")[0])
    p.add_argument("--lang", required=True, help="language spec file (JSON)")
    p.add_argument("--cmd", required=True, choices=["member", "lsets", "apply", "verify"])
    p.add_argument("--word", help="positive word for 'member', e.g. 'g1 g2'")
    p.add_argument("--mu", help="positive word for 'lsets'")
    p.add_argument("--expr", help="operator expression for 'apply', e.g. 'S1 S1* + I'")
    p.add_argument("--vector", help="basis sequence for 'apply', e.g. 'g1|g1 g2'")
    p.add_argument("--max-word-len", type=int, default=4)
    p.add_argument("--max-pair-len", type=int, default=6)
    p.add_argument("--prefix-bound", type=int, default=3)
    p.add_argument("--cycle-bound", type=int, default=3)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=0)
    # mutation control: S_i prepends without checking admissibility
    p.add_argument("--no-junction-check", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        lang = lg.load(args.lang)
        if args.cmd == "member":
            if args.word is None:
                raise InputError("--word is required for member")
            return cmd_member(lang, args.word)
        if args.cmd == "lsets":
            if args.mu is None:
                raise InputError("--mu is required for lsets")
            return cmd_lsets(lang, args.mu)
        if args.cmd == "apply":
            if args.expr is None or args.vector is None:
                raise InputError("--expr and --vector are required for apply")
            return cmd_apply(lang, args.expr, args.vector, not args.no_junction_check)
        cfg = SuiteConfig(lang, args.max_word_len, args.max_pair_len, args.prefix_bound,
                          args.cycle_bound, junction_check=not args.no_junction_check,
                          seed=args.seed)
        return cmd_verify(cfg, args.format)
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
