"""Command-line driver: batch authoring, interactive loop, serve mode,
training, and evaluation.

Exit codes: 0 on success, 1 on usage errors, 2 on data or structural
errors in the inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import PipelineConfig
from .conllu import ingest_conllu
from .evaluate import evaluate_documents
from .frames import LvpStore, read_training_file, train_store
from .model import FactlogError
from .paraparse import NormalizationConfig
from .pipeline import FactualAuthor
from .serve import AuthoringService, result_to_json, serve
from .disambig import load_synset_graph

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="authoring",
                     description="Author logical facts from factual English.")
    sub = parser.add_subparsers(dest="command", required=True)

    batch = sub.add_parser("batch", help="author a corpus into fact files")
    batch.add_argument("--corpus", required=True)
    batch.add_argument("--train", required=True,
                       help="training annotations (.train, with a sibling "
                            ".conllu) or a pattern dump (.lvp)")
    batch.add_argument("--synsets", required=True)
    batch.add_argument("--out", required=True, help="output directory")
    batch.add_argument("--config")
    batch.add_argument("--lexicon")

    interactive = sub.add_parser("interactive",
                                 help="author sentences from stdin")
    interactive.add_argument("--corpus", help="fixture parses")
    interactive.add_argument("--train", required=True)
    interactive.add_argument("--synsets", required=True)
    interactive.add_argument("--config")
    interactive.add_argument("--lexicon")

    serve_cmd = sub.add_parser("serve", help="HTTP+JSON authoring service")
    serve_cmd.add_argument("--corpus", help="fixture parses")
    serve_cmd.add_argument("--train", required=True)
    serve_cmd.add_argument("--synsets", required=True)
    serve_cmd.add_argument("--config")
    serve_cmd.add_argument("--lexicon")
    serve_cmd.add_argument("--host", default="127.0.0.1")
    serve_cmd.add_argument("--port", type=int, default=8023)

    evaluate_cmd = sub.add_parser("eval", help="score facts against gold")
    evaluate_cmd.add_argument("system", help="system fact file")
    evaluate_cmd.add_argument("--gold", required=True)
    evaluate_cmd.add_argument("--out", help="write the report as JSON")

    train_cmd = sub.add_parser("train", help="learn valence patterns")
    train_cmd.add_argument("--train", required=True,
                           help="annotation file (.train)")
    train_cmd.add_argument("--corpus", required=True,
                           help="parses of the training sentences")
    train_cmd.add_argument("--out", required=True, help="pattern dump file")
    train_cmd.add_argument("--lexicon")
    return parser


def _load_store(train_path: str, lexicon) -> LvpStore:
    path = Path(train_path)
    text = path.read_text(encoding="utf-8")
    head = next((line for line in text.splitlines()
                 if line.strip() and not line.strip().startswith("%")), "")
    if head.startswith("lvp("):
        return LvpStore.from_dump(text)
    sibling = path.with_suffix(".conllu")
    if not sibling.exists():
        raise FactlogError(
            f"training annotations need their parses at {sibling}")
    parse_sets = ingest_conllu(str(sibling))
    return train_store(read_training_file(text), parse_sets, lexicon)


def _build_author(args) -> tuple[FactualAuthor, PipelineConfig]:
    config = PipelineConfig.load(args.config) if args.config else PipelineConfig()
    lexicon = (NormalizationConfig.load(args.lexicon)
               if getattr(args, "lexicon", None) else None)
    graph, bindings = load_synset_graph(args.synsets)
    author = FactualAuthor(threshold=config.threshold,
                           hop_limit=config.hop_limit,
                           infinite_penalty=config.infinite_penalty,
                           lexicon=lexicon)
    author.with_store(_load_store(args.train, lexicon))
    author.with_senses(graph, bindings)
    return author, config


def cmd_batch(args) -> int:
    author, _config = _build_author(args)
    parse_sets = ingest_conllu(args.corpus)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    fact_lines = []
    json_records = []
    reject_lines = []
    trace_lines = []
    for parse_set in sorted(parse_sets, key=lambda ps: ps.sentence_id):
        result = author.predict_one(parse_set)
        fact_lines.append(f"% sentence {result.sentence_id} {result.status}")
        if result.trace is not None:
            for entry in result.trace.entries:
                record = {"sentence": result.sentence_id}
                record.update(entry.to_json())
                trace_lines.append(json.dumps(record))
        if result.status == "ok":
            serialized = result.serialized()
            if serialized:
                fact_lines.append(serialized.rstrip("\n"))
        elif result.status == "rejected":
            reject_lines.append(f"{result.sentence_id}\t{result.text}\t"
                                + "; ".join(str(v) for v in result.violations))
        else:
            reject_lines.append(
                f"{result.sentence_id}\t{result.text}\t{result.error}")
        record = result_to_json(result)
        record.pop("trace", None)
        record.pop("token_facts", None)
        json_records.append(record)

    (out_dir / "facts.ulr").write_text(
        "\n".join(fact_lines) + ("\n" if fact_lines else ""),
        encoding="utf-8")
    (out_dir / "facts.json").write_text(
        json.dumps(json_records, indent=2) + "\n", encoding="utf-8")
    (out_dir / "rejects.txt").write_text(
        "\n".join(reject_lines) + ("\n" if reject_lines else ""),
        encoding="utf-8")
    (out_dir / "traces.jsonl").write_text(
        "\n".join(trace_lines) + ("\n" if trace_lines else ""),
        encoding="utf-8")
    return 0


def cmd_interactive(args) -> int:
    author, config = _build_author(args)
    fixture_sets = ingest_conllu(args.corpus) if args.corpus else []
    service = AuthoringService(author, fixture_sets, config)
    if config.adapter_url is None and not fixture_sets:
        print("warning: no adapter and no fixture corpus; every sentence "
              "will be unknown", file=sys.stderr)
    print("enter sentences (blank line to skip, Ctrl-D to finish):",
          file=sys.stderr)
    for raw in sys.stdin:
        line = raw.strip()
        if not line:
            continue
        payload = service.author_text(line)
        status = payload["status"]
        if status == "ok":
            sys.stdout.write(payload["ulr"])
        elif status == "rejected":
            for violation in payload["violations"]:
                print(violation["message"])
            print("please rephrase the sentence")
        elif status == "unknown_sentence":
            print(payload["message"])
        else:
            print(f"cannot author: {payload['error']}")
        sys.stdout.flush()
    print(f"session facts: {len(service.session_facts)}", file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    author, config = _build_author(args)
    fixture_sets = ingest_conllu(args.corpus) if args.corpus else []
    service = AuthoringService(author, fixture_sets, config)
    server = serve(service, args.host, args.port)
    print(f"serving on http://{args.host}:{server.server_address[1]}/",
          file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def cmd_eval(args) -> int:
    system_text = Path(args.system).read_text(encoding="utf-8")
    gold_text = Path(args.gold).read_text(encoding="utf-8")
    report = evaluate_documents(system_text, gold_text)
    payload = report.to_json()
    print(f"frame_f1={payload['frame_f1']:.4f} "
          f"role_f1={payload['role_f1']:.4f} "
          f"synset_f1={payload['synset_f1']:.4f}")
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n",
                                  encoding="utf-8")
    return 0


def cmd_train(args) -> int:
    lexicon = (NormalizationConfig.load(args.lexicon)
               if args.lexicon else None)
    annotations = read_training_file(
        Path(args.train).read_text(encoding="utf-8"))
    parse_sets = ingest_conllu(args.corpus)
    store = train_store(annotations, parse_sets, lexicon)
    Path(args.out).write_text(store.serialize(), encoding="utf-8")
    print(f"wrote {len(store)} patterns to {args.out}", file=sys.stderr)
    return 0


_COMMANDS = {
    "batch": cmd_batch,
    "interactive": cmd_interactive,
    "serve": cmd_serve,
    "eval": cmd_eval,
    "train": cmd_train,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except FactlogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
