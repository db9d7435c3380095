"""parse_adapter: ranked k-best parses over HTTP, with fixed-tag re-parsing."""

from .backends import BackendError, FixtureBackend, NeuralBackend
from .conllu_writer import envelope_to_conllu
from .service import create_app

__version__ = "0.1.0"
