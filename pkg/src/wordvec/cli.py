"""Command-line surface: train, neighbors, analogy, gradcheck."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import embeddings, verify
from .errors import WordvecError
from .model import ModelConfig
from .trainer import TrainPlan, train
from .vocab import build_vocab, tokenize, windows

MODES = {"cbow": "cbow", "sg": "skipgram", "skipgram": "skipgram"}


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _positive_float(value: str) -> float:
    x = float(value)
    if x <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {x}")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wordvec")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train embeddings on a text corpus")
    p_train.add_argument("--input", required=True, help="UTF-8 corpus file")
    p_train.add_argument("--output", required=True, help="embedding file to write")
    p_train.add_argument("--mode", choices=sorted(MODES), default="cbow")
    p_train.add_argument("--objective", choices=["softmax", "hs", "ns"], default="ns")
    p_train.add_argument("--dim", type=_positive_int, default=10)
    p_train.add_argument("--window", type=_positive_int, default=2)
    p_train.add_argument("--negative", type=_positive_int, default=5,
                         help="negatives per output word (ns only)")
    p_train.add_argument("--eta", type=_positive_float, default=0.025)
    p_train.add_argument("--epochs", type=_positive_int, default=5)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--min-count", type=_positive_int, default=1)
    p_train.add_argument("--shuffle", action="store_true",
                         help="seeded per-epoch instance shuffle")
    p_train.add_argument("--no-lowercase", action="store_true")
    p_train.add_argument("--save-output-vectors", metavar="PATH",
                         help="also write output vectors (softmax/ns only)")

    p_nb = sub.add_parser("neighbors", help="nearest words by cosine similarity")
    p_nb.add_argument("--vectors", required=True)
    p_nb.add_argument("--word", required=True)
    p_nb.add_argument("--k", type=_positive_int, default=10)

    p_an = sub.add_parser("analogy", help="query b - a + c")
    p_an.add_argument("--vectors", required=True)
    p_an.add_argument("a")
    p_an.add_argument("b")
    p_an.add_argument("c")
    p_an.add_argument("--k", type=int, default=5)

    p_gc = sub.add_parser("gradcheck", help="finite-difference gradient certification")
    p_gc.add_argument("--arch", choices=["cbow", "skipgram"], action="append",
                      help="restrict to one architecture (repeatable)")
    p_gc.add_argument("--objective", choices=["softmax", "hs", "ns"], action="append",
                      help="restrict to one objective (repeatable)")
    p_gc.add_argument("--vocab", type=_positive_int, default=10)
    p_gc.add_argument("--dim", type=_positive_int, default=4)
    p_gc.add_argument("--context", type=_positive_int, default=2)
    p_gc.add_argument("--seed", type=int, default=0)
    p_gc.add_argument("--threshold", type=float, default=verify.DEFAULT_THRESHOLD)
    return parser


def cmd_train(args: argparse.Namespace) -> int:
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    tokens = tokenize(text, lowercase=not args.no_lowercase)
    vocab = build_vocab(tokens, min_count=args.min_count)
    ids = vocab.encode_corpus(tokens)
    instances = list(windows(ids, args.window, MODES[args.mode]))
    config = ModelConfig(
        vocab_size=len(vocab),
        dim=args.dim,
        architecture=MODES[args.mode],
        objective=args.objective,
        k_negatives=args.negative if args.objective == "ns" else 1,
        eta=args.eta,
    )
    plan = TrainPlan(
        epochs=args.epochs,
        eta0=args.eta,
        shuffle="per-epoch" if args.shuffle else "off",
        seed=args.seed,
    )
    report = train(instances, config, plan, counts=vocab.counts)
    for epoch, loss in enumerate(report.epoch_mean_losses, start=1):
        print(f"epoch {epoch} mean_loss {loss:.6f}")
    embeddings.save_embeddings(args.output, vocab.words, report.state.input_vectors)
    if args.save_output_vectors:
        if args.objective == "hs":
            print("error: output vectors for hs belong to inner units, not words",
                  file=sys.stderr)
            return 1
        embeddings.save_embeddings(
            args.save_output_vectors, vocab.words, report.state.output_vectors
        )
    return 0


def cmd_neighbors(args: argparse.Namespace) -> int:
    words, vectors = embeddings.load_embeddings(args.vectors)
    for word, sim in embeddings.nearest_words(words, vectors, args.word, args.k):
        print(f"{word}\t{sim:.6f}")
    return 0


def cmd_analogy(args: argparse.Namespace) -> int:
    words, vectors = embeddings.load_embeddings(args.vectors)
    for word, sim in embeddings.analogy(words, vectors, args.a, args.b, args.c, args.k):
        print(f"{word}\t{sim:.6f}")
    return 0


def cmd_gradcheck(args: argparse.Namespace) -> int:
    reports = verify.check_all(
        vocab_size=args.vocab,
        dim=args.dim,
        context_size=args.context,
        seed=args.seed,
        architectures=args.arch or verify.ARCHITECTURES,
        objectives=args.objective or verify.OBJECTIVES,
        threshold=args.threshold,
    )
    print(verify.format_reports(reports))
    return 0 if all(r.passed for r in reports) else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "train": cmd_train,
        "neighbors": cmd_neighbors,
        "analogy": cmd_analogy,
        "gradcheck": cmd_gradcheck,
    }
    try:
        return handlers[args.command](args)
    except (WordvecError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
