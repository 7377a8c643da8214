"""
Flat Splicing Toolkit 命令列入口

    python main.py type fixtures/ex2.fss
    python main.py enum --mode szilard --bound 3 fixtures/ex5.fss
    python main.py compile --target kuroda-sz -o out.fss --hom out.hom fixtures/kuroda_ab.g
    python main.py diff --grammar fixtures/astarb.g --system out.fss --hom out.hom --bound 4 --steps 5

結果寫到 stdout，診斷訊息寫到 stderr。
結束碼：0 成功 / PASS / EQUAL，1 FAIL / NO / DIFFERENT / INCONCLUSIVE，2 錯誤
"""
import os
import sys
import signal
import argparse
import logging

# 確保能夠導入模組
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, current_dir)

import config.settings as settings
from utils.logging import init_logging, timestamped_print
from utils.helpers import read_source, write_output, source_name
from utils.compression import save_json
from core.errors import ModeMismatchError, SplicingToolkitError
from core.splicing import APPLICABILITY_MODES, PARTNER_MODE, closure_language_upto, system_type
from core.derivation import (
    Mode, find_image_witness, is_derivation_member, label_words_upto, replay,
)
from core.compile import TARGETS, CompilationOutput, compile_grammar
from core.decide import (
    VerdictStatus, check_reg_subset_sz, check_sz_subset_reg, default_max_steps, differential_compare,
)
from core.formats import parse_grammar, parse_hom, parse_system, print_hom, print_system
from core.regular import RegularSet
from core.words import parse_word
from ui.console import render_derivation, render_diff, render_trace_table, render_verdict, render_words

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2


def signal_handler(signum, frame):
    """
    第一次 Ctrl+C 讓搜尋在下一次記憶體檢查時中止，第二次直接退出
    """
    if not settings.force_stop:
        settings.force_stop = True
        print("\n收到中斷信號，搜尋會在下一個檢查點停止 (再按一次 Ctrl+C 強制退出)", file=sys.stderr)
    else:
        sys.exit(EXIT_ERROR)


def _load_system(path):
    return parse_system(read_source(path), source_name(path))


def _load_grammar(path, validate):
    return parse_grammar(read_source(path), source_name(path), validate=validate)


def _load_hom(path):
    return parse_hom(read_source(path), source_name(path))


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------


def cmd_type(args, out):
    lsys = _load_system(args.system)
    out.write(f"{system_type(lsys.system)}\n")
    return EXIT_OK


def cmd_enum(args, out):
    lsys = _load_system(args.system)
    if args.mode == 'lang':
        words = closure_language_upto(lsys.system, args.bound)
    else:
        wanted = Mode(args.mode)
        if lsys.mode is not wanted:
            raise ModeMismatchError(f"--mode {args.mode} needs a {args.mode} system, "
                                   f"{source_name(args.system)} is {lsys.mode.value}")
        steps = args.steps or args.bound
        words = label_words_upto(lsys, steps, args.partner_bound, max_len=args.bound).words
    timestamped_print(f"enum {args.mode}: {len(words)} words")
    out.write(render_words(words))
    return EXIT_OK


def _find_witness(lsys, word, steps, partner_bound):
    if lsys.mode is Mode.SZILARD:
        return is_derivation_member(lsys, word, partner_bound)
    steps = steps or default_max_steps(lsys, max(1, len(word)))
    return find_image_witness(lsys, word, steps, None, partner_bound)


def cmd_member(args, out):
    lsys = _load_system(args.system)
    word = parse_word(args.word)
    derivation = _find_witness(lsys, word, args.steps, args.partner_bound)
    if derivation is None:
        out.write("NO\n")
        return EXIT_NO
    out.write("YES\n")
    out.write(render_derivation(lsys, derivation))
    return EXIT_OK


def cmd_trace(args, out):
    lsys = _load_system(args.system)
    word = parse_word(args.word)
    derivation = _find_witness(lsys, word, args.steps, args.partner_bound)
    if derivation is None:
        out.write("NO\n")
        return EXIT_NO
    replay(lsys, derivation)
    out.write(render_trace_table(lsys, derivation))
    return EXIT_OK


def cmd_compile(args, out):
    grammar, form = _load_grammar(args.grammar, not args.no_validate)
    expected = TARGETS[args.target][1]
    if form is not expected and not args.no_validate:
        logging.warning(f"{source_name(args.grammar)} declares form {form.value}, "
                        f"{args.target} expects {expected.value}")
    result = compile_grammar(grammar, args.target)

    write_output(args.output, print_system(result.lsys))
    if args.hom:
        if result.hom is None:
            logging.warning(f"{args.target} has no homomorphism (control labels are terminals), "
                            f"{args.hom} not written")
        else:
            write_output(args.hom, print_hom(result.hom))
    if args.provenance:
        save_json(args.provenance, result.to_json())

    axioms = len(result.lsys.initial.words)
    out.write(f"{args.target}: {len(result.lsys.rules)} rules, {axioms} axioms, "
              f"type {system_type(result.lsys.system)} (declared {result.declared_type})\n")
    for note in result.notes:
        out.write(f"note: {note}\n")
    return EXIT_OK


def cmd_subset(args, out):
    lsys = _load_system(args.system)
    regular = RegularSet.from_pattern(args.pattern)
    if args.direction == 'r-in-sz':
        verdict = check_reg_subset_sz(regular, lsys, args.bound, args.partner_bound)
    else:
        verdict = check_sz_subset_reg(lsys, regular, args.steps or args.bound, args.partner_bound)
    out.write(render_verdict(verdict))
    return EXIT_OK if verdict.status is VerdictStatus.PASS else EXIT_NO


def cmd_diff(args, out):
    grammar, _ = _load_grammar(args.grammar, not args.no_validate)
    lsys = _load_system(args.system)
    hom = _load_hom(args.hom) if args.hom else None
    compiled = CompilationOutput(
        lsys=lsys,
        hom=hom,
        provenance=(),
        target=source_name(args.system),
        declared_type=system_type(lsys.system),
    )
    report = differential_compare(grammar, compiled, args.bound, args.steps, args.partner_bound,
                                  args.sentential_bound)
    out.write(render_diff(report, lsys))
    return EXIT_OK if report.equal else EXIT_NO


COMMANDS = {
    'type': cmd_type,
    'enum': cmd_enum,
    'member': cmd_member,
    'trace': cmd_trace,
    'compile': cmd_compile,
    'subset': cmd_subset,
    'diff': cmd_diff,
}


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog='flat-splicing', description="labeled flat splicing systems toolkit")
    parser.add_argument('--applicability', choices=APPLICABILITY_MODES, default=PARTNER_MODE,
                        help="when a rule counts as applicable (default: partner)")
    parser.add_argument('--partner-bound', type=_positive, default=None,
                        help="length bound for partners drawn from a regular initial set")
    parser.add_argument('--verbose', action='store_true', help="debug logging and progress on stderr")
    parser.add_argument('--no-validate', action='store_true',
                        help="accept grammars that violate their declared normal form")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('type', help="print the system type (m,n)")
    p.add_argument('system')

    p = sub.add_parser('enum', help="enumerate a bounded language slice")
    p.add_argument('--mode', choices=['lang', 'szilard', 'control'], required=True)
    p.add_argument('--bound', type=_positive, required=True, help="word length bound")
    p.add_argument('--steps', type=_positive, default=None, help="derivation step bound (default: --bound)")
    p.add_argument('system')

    for name, text in (('member', "find a terminal derivation with the given label word"),
                       ('trace', "print the full derivation table for a label word")):
        p = sub.add_parser(name, help=text)
        p.add_argument('--word', required=True)
        p.add_argument('--steps', type=_positive, default=None, help="step bound for control systems")
        p.add_argument('system')

    p = sub.add_parser('compile', help="compile a grammar into a labeled flat splicing system")
    p.add_argument('--target', choices=list(TARGETS), required=True)
    p.add_argument('-o', '--output', required=True)
    p.add_argument('--hom', default=None)
    p.add_argument('--provenance', default=None, help="JSON file (.gz/.lz4/.zst compress it)")
    p.add_argument('grammar')

    p = sub.add_parser('subset', help="bounded inclusion check against a token pattern")
    p.add_argument('--pattern', required=True)
    p.add_argument('--direction', choices=['r-in-sz', 'sz-in-r'], required=True)
    p.add_argument('--bound', type=_positive, required=True)
    p.add_argument('--steps', type=_positive, default=None, help="step bound for sz-in-r (default: --bound)")
    p.add_argument('system')

    p = sub.add_parser('diff', help="compare a grammar with a compiled system up to length k")
    p.add_argument('--grammar', required=True)
    p.add_argument('--system', required=True)
    p.add_argument('--hom', default=None)
    p.add_argument('--bound', type=_non_negative, required=True)
    p.add_argument('--steps', type=_positive, default=None)
    p.add_argument('--sentential-bound', type=_positive, default=None)
    return parser


def run(argv=None, out=None):
    """
    執行一個子命令並回傳結束碼
    """
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR

    init_logging(args.verbose)
    saved_mode = settings.APPLICABILITY_MODE
    settings.APPLICABILITY_MODE = args.applicability
    try:
        return COMMANDS[args.command](args, out)
    except SplicingToolkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, UnicodeDecodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        settings.APPLICABILITY_MODE = saved_mode
        settings.force_stop = False


def main():
    signal.signal(signal.SIGINT, signal_handler)
    sys.exit(run())


if __name__ == "__main__":
    main()
