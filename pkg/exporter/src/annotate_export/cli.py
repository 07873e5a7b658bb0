"""annotate-export command line: one-shot annotation and embedding-subset
export for a SQuAD JSON file."""

from __future__ import annotations

import argparse
import sys

from .backends import make_backend
from .export import ExportError, export_annotations, export_embeddings, write_manifest


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="annotate-export",
        description="Export linguistic annotations (JSON-Lines) and embedding "
        "subsets for a SQuAD v1.1 file.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ann = sub.add_parser("annotations", help="annotate every paragraph")
    p_ann.add_argument("--squad", required=True)
    p_ann.add_argument("--out", required=True, help="annotation JSON-Lines output")
    p_ann.add_argument("--manifest", required=True, help="manifest JSON output")
    p_ann.add_argument("--backend", choices=("builtin", "spacy"), default="spacy")
    p_ann.add_argument("--spacy-model", default="en_core_web_sm")

    p_emb = sub.add_parser("embeddings", help="subset a vector file to the corpus vocabulary")
    p_emb.add_argument("--squad", required=True)
    p_emb.add_argument("--vectors", required=True, help="full word2vec-style text file")
    p_emb.add_argument("--out", required=True, help="embedding subset output")
    p_emb.add_argument("--manifest", required=True, help="manifest JSON output")

    args = parser.parse_args(argv)
    try:
        if args.command == "annotations":
            backend = make_backend(args.backend, args.spacy_model)
            fragment = export_annotations(args.squad, args.out, backend)
            write_manifest(args.manifest, {"annotations": fragment})
            counts = fragment["counts"]
            print(
                f"annotated {counts['paragraphs']} paragraphs "
                f"({counts['tokens']} tokens, {counts['entities']} entities, "
                f"{counts['noun_chunks']} chunks) with {fragment['pipeline']['name']} "
                f"{fragment['pipeline']['version']}"
            )
        else:
            fragment = export_embeddings(args.squad, args.vectors, args.out)
            write_manifest(args.manifest, {"embeddings": fragment})
            counts = fragment["counts"]
            print(
                f"kept {counts['vectors_kept']} of {counts['vocabulary']} vocabulary "
                f"words at dim {counts['dim']}"
            )
    except (ExportError, OSError, ImportError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
