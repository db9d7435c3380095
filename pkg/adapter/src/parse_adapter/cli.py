"""Adapter entry points: serve the HTTP service or dump fixture parses as
extended CoNLL-U in one shot."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .backends import BackendError, FixtureBackend, NeuralBackend
from .conllu_writer import envelope_to_conllu

DEFAULT_FIXTURES = Path(__file__).resolve().parents[2] / "fixtures" / "parses.json"


def build_backend(args):
    if args.backend == "fixture":
        return FixtureBackend.from_file(args.fixtures)
    return NeuralBackend()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="parse-adapter")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8024)
    serve.add_argument("--backend", choices=("fixture", "neural"),
                       default="fixture")
    serve.add_argument("--fixtures", default=str(DEFAULT_FIXTURES))

    dump = sub.add_parser("dump", help="write extended CoNLL-U fixtures")
    dump.add_argument("--sentence", action="append", default=[],
                      help="repeatable; defaults to every fixture sentence")
    dump.add_argument("--backend", choices=("fixture", "neural"),
                      default="fixture")
    dump.add_argument("--fixtures", default=str(DEFAULT_FIXTURES))
    dump.add_argument("--k", type=int, default=3)
    dump.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    try:
        backend = build_backend(args)
    except BackendError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "serve":
        import uvicorn

        from .service import create_app
        uvicorn.run(create_app(backend), host=args.host, port=args.port)
        return 0

    sentences = args.sentence or (
        backend.sentences() if isinstance(backend, FixtureBackend) else [])
    blocks = []
    for i, sentence in enumerate(sentences, start=1):
        try:
            envelope = backend.parse(sentence, args.k)
        except BackendError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        blocks.append(envelope_to_conllu(envelope, sentence_id=i))
    Path(args.out).write_text("".join(blocks), encoding="utf-8")
    print(f"wrote {len(blocks)} sentences to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
