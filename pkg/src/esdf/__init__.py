"""Consensus clustering on a selected sub-ensemble.

Distinct partitions of a clustering ensemble are ranked by diversity (one
minus their mean adjusted Rand index to the others) times relative frequency;
the top ``k`` are combined by CSPA or HGPA.
"""
from .consensus import ConsensusConfig, CoassociationMatrix, build_hypergraph, coassociation, consensus, cspa, hgpa
from .data import Dataset, iris_path, load_dataset
from .embedding import Embedding, EmbeddingConfig, emit_scatter, lle, partition_distance_matrix
from .hypergraph import Hypergraph, cut_count, partition_hypergraph
from .kmeans import GeneratorConfig, generate_ensemble, kmeans, lloyd
from .partition import DistinctEnsemble, Ensemble, Partition, canonicalize, deduplicate
from .selection import SelectionResult, analyse, cas_select, esdf_select, rank_partitions, select_top
from .similarity import (
    ContingencyTable,
    SimilarityMatrix,
    WeightTable,
    adjusted_rand,
    contingency,
    pairwise_ari,
    weights,
)

__version__ = "0.1.0"
