"""Linear discriminative learning: linear maps between word forms and meanings."""

from .cues import (BOUNDARY, CueInventory, CueMatrix, adjacency, build_cue_matrix,
                   tokenize_form)
from .evaluation import CorrelationResult, eval_SC, eval_production, pearson
from .exceptions import ConfigError, DataError, LDLError, NumericalError
from .lexicon_io import Dataset, WordRecord, load_dataset, load_embeddings, write_dataset
from .mapping import (LinearMap, apply_map, comprehension_map, estimate_map, load_map,
                      production_map, save_map)
from .measures import (FunctionalLoad, MeasureTable, distance_legs, distance_travelled,
                       functional_load, pca_project, prime_target_approximation,
                       total_distances, total_support)
from .paths import (Candidate, GoldPathInfo, PathResult, PositionalModel,
                    candidate_form_vector, fit_positional, is_legal_path, learn_paths)
from .semantics import SemanticMatrix, lexome_vector, simulate_semantics

__version__ = "0.1.0"
