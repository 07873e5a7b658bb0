"""One-shot exporter: runs an NLP pipeline over SQuAD paragraphs and emits
the annotation JSON-Lines and embedding-subset files consumed by answergen."""

from .backends import BuiltinBackend, SpacyBackend, make_backend
from .export import export_annotations, export_embeddings, write_manifest

__version__ = "0.1.0"
