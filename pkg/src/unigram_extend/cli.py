"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on data or validation errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .extender import EmptyExtensionError, ExtensionConfig, extend
from .lattice import encode
from .model import ModelValidationError, VocabFormatError, denormalize, export_vocab, read_model, write_model
from .stats import analyze
from .trainer import ConfigurationError, Corpus, TrainerConfig, train

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_int(value):
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    return n


def _non_negative_int(value):
    try:
        n = int(value)
    except ValueError:
        n = -1
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value!r}")
    return n


def _ratio(value):
    try:
        r = float(value)
    except ValueError:
        r = -1.0
    if not 0.0 < r < 1.0:
        raise argparse.ArgumentTypeError(f"expected a ratio in (0, 1), got {value!r}")
    return r


def _add_training_options(p):
    p.add_argument("--max-piece-len", type=_positive_int, default=16)
    p.add_argument("--min-count", type=_positive_int, default=2)
    p.add_argument("--seed-size", type=_positive_int, default=1_000_000)
    p.add_argument("--prune-ratio", type=_ratio, default=0.2)
    p.add_argument("--em-iters", type=_positive_int, default=2,
                   help="EM passes before each pruning round (default: 2)")
    p.add_argument("--final-em-iters", type=_non_negative_int, default=2)
    p.add_argument("--no-split-by-whitespace", dest="split_by_whitespace", action="store_false",
                   help="allow the space marker inside pieces")
    p.add_argument("--harvester", choices=("hash", "suffix_array"), default="hash")


def _em_kwargs(args):
    return dict(
        max_piece_len=args.max_piece_len, min_count=args.min_count, seed_size=args.seed_size,
        prune_ratio=args.prune_ratio, em_inner_iters=args.em_iters,
        final_em_iters=args.final_em_iters, split_by_whitespace=args.split_by_whitespace,
        harvester=args.harvester,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unigram-extend", description="Unigram subword tokenizer with vocabulary extension")
    parser.add_argument("--no-dummy-prefix", dest="add_dummy_prefix", action="store_false",
                        help="do not prepend a space marker to each sentence")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("train", help="learn a model from a corpus")
    p.add_argument("--input", required=True, help="corpus, one sentence per line")
    p.add_argument("--vocab-size", type=_positive_int, required=True)
    p.add_argument("--output", required=True)
    _add_training_options(p)

    p = sub.add_parser("extend", help="add subwords for letters unknown to a model")
    p.add_argument("--input", required=True)
    p.add_argument("--original", required=True)
    p.add_argument("--add-size", type=_positive_int, required=True)
    p.add_argument("--output-additional", required=True)
    p.add_argument("--output-merged", required=True)
    _add_training_options(p)

    p = sub.add_parser("encode", help="tokenize stdin line by line")
    p.add_argument("--model", required=True)
    p.add_argument("--show-scores", action="store_true",
                   help="append a TAB and the path log-probability")

    p = sub.add_parser("decode", help="join space-separated tokens from stdin")
    p.add_argument("--model", required=True)

    p = sub.add_parser("stats", help="tokens per sentence and OOV statistics")
    p.add_argument("--model", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--split-unknown", action="store_true",
                   help="split unknown runs into letters before counting")
    p.add_argument("--format", choices=("text", "record"), default="text")

    p = sub.add_parser("export-vocab", help="print a model in canonical form")
    p.add_argument("--model", required=True)
    return parser


def _require_files(*paths):
    for path in paths:
        if not os.path.isfile(path):
            raise DataError(f"no such file: {path}")


def _require_writable(*paths):
    for path in paths:
        parent = os.path.dirname(os.path.abspath(path))
        if not os.path.isdir(parent):
            raise DataError(f"output directory does not exist: {parent}")


def _load(path):
    try:
        return read_model(path)
    except (VocabFormatError, ModelValidationError) as exc:
        raise DataError(f"{path}: {exc}") from None


def _cmd_train(args, stdin, stdout):
    _require_files(args.input)
    _require_writable(args.output)
    corpus = Corpus.from_file(args.input, args.add_dummy_prefix)
    config = TrainerConfig(vocab_size=args.vocab_size, **_em_kwargs(args))
    try:
        model = train(corpus, config)
    except ConfigurationError as exc:
        raise DataError(f"{args.input}: {exc}") from None
    write_model(model, args.output)


def _cmd_extend(args, stdin, stdout):
    _require_files(args.input, args.original)
    _require_writable(args.output_additional, args.output_merged)
    original = _load(args.original)
    corpus = Corpus.from_file(args.input, args.add_dummy_prefix)
    config = ExtensionConfig(additional_vocab_size=args.add_size, **_em_kwargs(args))
    try:
        additional, merged = extend(corpus, original, config)
    except EmptyExtensionError:
        raise DataError(f"{args.input}: no new letters relative to {args.original}") from None
    except ConfigurationError as exc:
        raise DataError(f"{args.input}: {exc}") from None
    write_model(additional, args.output_additional)
    write_model(merged, args.output_merged)


def _cmd_encode(args, stdin, stdout):
    _require_files(args.model)
    model = _load(args.model)
    for line in stdin:
        seq = encode(line.rstrip("\n"), model, args.add_dummy_prefix)
        out = " ".join(seq.tokens)
        if args.show_scores:
            out += f"\t{seq.total_log_prob:.6f}"
        stdout.write(out + "\n")


def _cmd_decode(args, stdin, stdout):
    _require_files(args.model)
    _load(args.model)
    for line in stdin:
        line = line.rstrip("\n")
        stdout.write(denormalize(line.split(" ") if line else []) + "\n")


def _cmd_stats(args, stdin, stdout):
    _require_files(args.model, args.reference, args.input)
    model = _load(args.model)
    reference = _load(args.reference)
    corpus = Corpus.from_file(args.input, args.add_dummy_prefix)
    report = analyze(corpus, model, reference, split_unknown=args.split_unknown)
    stdout.write(report.as_record() if args.format == "record" else report.as_lines())


def _cmd_export_vocab(args, stdin, stdout):
    _require_files(args.model)
    stdout.write(export_vocab(_load(args.model)))


COMMANDS = {
    "train": _cmd_train,
    "extend": _cmd_extend,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "stats": _cmd_stats,
    "export-vocab": _cmd_export_vocab,
}


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return 0 if not exc.code else EXIT_USAGE
    logging.basicConfig(
        format="%(asctime)s | %(name)s | %(message)s",
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=stderr,
    )
    try:
        COMMANDS[args.command](args, stdin, stdout)
    except DataError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DATA
    except (OSError, UnicodeDecodeError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DATA
    return 0


def main():
    for stream in (sys.stdin, sys.stdout):
        stream.reconfigure(encoding="utf-8", newline="\n" if stream is sys.stdout else None)
    sys.exit(run())


if __name__ == "__main__":
    main()
