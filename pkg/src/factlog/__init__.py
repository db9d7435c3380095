"""factlog: from dependency parses of factual English to logical facts."""

from .config import PipelineConfig
from .conllu import ConlluError, IngestOptions, export_conllu, ingest_conllu
from .correction import (CorrectionOutcome, KBestTags, TokenTags, correct,
                         correct_pos_tags, select_corrected_parse)
from .disambig import (RoleSynsetBinding, SynsetGraph, disambiguate,
                       disambiguate_candidate, load_synset_graph)
from .entities import compact_entities
from .evaluate import EvalReport, evaluate, evaluate_documents
from .factuality import Verdict, Violation, check_factual
from .frames import (CandidateParse, Lvp, LvpStore, RolePattern,
                     TrainingAnnotation, apply_lvp, learn_lvp,
                     read_training_file, train_store, trigger_lvps)
from .model import (AuthoringError, CoordGroup, DependencyParse,
                    DisambiguationError, Edge, FactlogError,
                    MixedCoordinationError, ParseSet, StructureError, Token,
                    TrainingError)
from .paraparse import (NormalizationConfig, RewriteTrace,
                        equalize_coordination, merge_particles_and_lemmas,
                        normalize_passive, paraparse, rewrite_adnominal)
from .pipeline import AuthoringResult, FactualAuthor, author_sentence
from .tokenfacts import export_token_facts
from .ulr import (UlrFact, build_ulr, canonical_facts, expand_coordinations,
                  segment_clauses, serialize_ulr)

__version__ = "0.1.0"
