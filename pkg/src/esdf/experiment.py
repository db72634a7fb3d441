"""Experiment harness: ensembles, selection/consensus grids, k-sweeps and embeddings."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Iterable

import numpy as np

from .consensus import ConsensusConfig, consensus
from .data import Dataset, load_dataset
from .embedding import EmbeddingConfig, assign_roles, emit_scatter, lle, partition_distance_matrix
from .formats import read_ensemble, read_rows, write_ensemble, write_rows, write_selection_csv, write_weights_csv
from .kmeans import GeneratorConfig, generate_ensemble
from .partition import Ensemble, Partition
from .plotting import plot_summary, plot_sweep
from .selection import Analysis, analyse, cas_select, select_top
from .similarity import adjusted_rand

log = logging.getLogger(__name__)

SELECTIONS = ("none", "cas", "esdf", "diversity", "frequency")
SWEEP_CRITERIA = ("diversity", "frequency", "weight")
_CRITERION = {"esdf": "weight", "diversity": "diversity", "frequency": "frequency"}


@dataclass(frozen=True)
class ExperimentSpec:
    dataset: str = ""
    label_col: str = "last"
    drop_cols: tuple[str, ...] = ()
    size: int = 200
    ensembles: int = 3
    seed: int = 0
    k: int | None = None  # clusters per k-means run and consensus target; default: class count
    select: tuple[str, ...] = SELECTIONS
    consensus: tuple[str, ...] = ("cspa", "hgpa")
    k_sweep: tuple[int, int] | None = None  # default 1..size
    linkage: str = "average"
    balance_tol: float = 0.05
    restarts: int = 8
    standardize: bool = False
    distinct_full: bool = False
    max_iters: int = 300
    tol: float = 1e-6
    select_k: int = 5
    n_neighbors: int = 10
    target_dim: int = 5
    dims: tuple[int, int] = (2, 3)
    out: str = "out"

    def __post_init__(self):
        for name in ("size", "ensembles", "restarts", "select_k", "max_iters"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for s in self.select:
            if s not in SELECTIONS:
                raise ValueError(f"unknown selection {s!r}; expected one of {SELECTIONS}")
        for c in self.consensus:
            if c not in ("cspa", "hgpa"):
                raise ValueError(f"unknown consensus method {c!r}")
        if self.k_sweep is not None:
            lo, hi = self.k_sweep
            if not 1 <= lo <= hi <= self.size:
                raise ValueError(f"k-sweep {lo}:{hi} must lie within [1, {self.size}]")

    @property
    def sweep_range(self) -> range:
        lo, hi = self.k_sweep or (1, self.size)
        return range(lo, hi + 1)

    @property
    def out_dir(self) -> Path:
        return Path(self.out)


def parse_k_sweep(text: str) -> tuple[int, int]:
    if ":" in text:
        a, b = text.split(":", 1)
        return int(a), int(b)
    return int(text), int(text)


def _coerce(name: str, raw: str):
    if name in ("size", "ensembles", "seed", "restarts", "select_k", "max_iters", "n_neighbors", "target_dim"):
        return int(raw)
    if name == "k":
        return None if raw.lower() in ("", "none", "auto") else int(raw)
    if name in ("balance_tol", "tol"):
        return float(raw)
    if name in ("standardize", "distinct_full"):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if name in ("select", "consensus", "drop_cols"):
        return tuple(t for t in (s.strip() for s in raw.split(",")) if t)
    if name == "k_sweep":
        return parse_k_sweep(raw)
    if name == "dims":
        a, b = raw.split(",")
        return int(a), int(b)
    return raw


def read_spec_file(path) -> dict:
    """``key = value`` lines; keys use the flag names with ``-`` or ``_``."""
    known = {f.name for f in fields(ExperimentSpec)}
    out = {}
    with Path(path).open() as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            if "=" not in s:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (t.strip() for t in s.split("=", 1))
            key = key.replace("-", "_")
            if key not in known:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _coerce(key, value)
    return out


def make_spec(**overrides) -> ExperimentSpec:
    return ExperimentSpec(**{k: v for k, v in overrides.items() if v is not None})


def load(spec: ExperimentSpec) -> Dataset:
    if not spec.dataset:
        raise ValueError("no dataset given")
    data = load_dataset(spec.dataset, spec.label_col, spec.drop_cols)
    return data.standardized() if spec.standardize else data


def n_clusters(spec: ExperimentSpec, data: Dataset) -> int:
    if spec.k is not None:
        return spec.k
    if data.n_classes is None:
        raise ValueError("dataset has no label column; pass --k")
    return data.n_classes


def ensemble_path(spec: ExperimentSpec, idx: int) -> Path:
    return spec.out_dir / f"ensemble-{idx}.txt"


def ensemble_seed(spec: ExperimentSpec, idx: int) -> int:
    # independent streams per ensemble id, derived from the base seed
    return int(np.random.SeedSequence([spec.seed, idx]).generate_state(1)[0])


def cmd_generate(spec: ExperimentSpec, data: Dataset | None = None) -> list[Path]:
    data = data or load(spec)
    k = n_clusters(spec, data)
    spec.out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for idx in range(1, spec.ensembles + 1):
        cfg = GeneratorConfig(k=k, runs=spec.size, seed=ensemble_seed(spec, idx),
                              max_iters=spec.max_iters, convergence_tol=spec.tol)
        ens = generate_ensemble(data, cfg)
        path = ensemble_path(spec, idx)
        write_ensemble(path, ens, comment=f"dataset={data.name} k={k} runs={spec.size} seed={cfg.seed}")
        log.info("wrote %s", path)
        paths.append(path)
    return paths


def _ensembles(spec: ExperimentSpec, data: Dataset) -> list[Ensemble]:
    missing = [i for i in range(1, spec.ensembles + 1) if not ensemble_path(spec, i).exists()]
    if missing:
        cmd_generate(spec, data)
    ensembles = []
    for i in range(1, spec.ensembles + 1):
        ens = read_ensemble(ensemble_path(spec, i))
        if ens.n_points != data.n:
            raise ValueError(f"{ensemble_path(spec, i)} covers {ens.n_points} points, dataset has {data.n}")
        ensembles.append(ens)
    return ensembles


@dataclass
class _Evaluator:
    """Consensus + AR against ground truth, memoised on the selected subset."""

    truth: Partition
    configs: dict[str, ConsensusConfig]
    cache: dict = field(default_factory=dict)

    def __call__(self, method: str, members: list[Partition], key) -> tuple[Partition, float]:
        if (method, key) not in self.cache:
            part = consensus(members, self.configs[method])
            self.cache[(method, key)] = (part, adjusted_rand(part, self.truth))
        return self.cache[(method, key)]


def _evaluator(spec: ExperimentSpec, data: Dataset) -> _Evaluator:
    if data.true_labels is None:
        raise ValueError("AR evaluation needs ground-truth labels")
    k = n_clusters(spec, data)
    configs = {
        m: ConsensusConfig(m, k, spec.balance_tol, spec.linkage, spec.restarts, spec.seed)
        for m in ("cspa", "hgpa")
    }
    return _Evaluator(data.true_labels, configs)


def selected_indices(analysis: Analysis, selection: str, k: int) -> tuple[int, ...]:
    if selection == "cas":
        return cas_select(analysis.distinct, analysis.similarity, k).selected_indices
    return select_top(analysis, k, _CRITERION[selection]).selected_indices


def full_members(spec: ExperimentSpec, ens: Ensemble, analysis: Analysis) -> list[Partition]:
    return list(analysis.distinct.partitions) if spec.distinct_full else list(ens.members)


RESULT_HEADER = ("dataset", "ensemble", "selection", "consensus", "k", "ari", "error")


def run_cells(spec: ExperimentSpec, data: Dataset, ensembles: list[Ensemble]) -> list[tuple]:
    rows = []
    for eid, ens in enumerate(ensembles, start=1):
        an = analyse(ens)
        ev = _evaluator(spec, data)
        for sel in spec.select:
            for method in spec.consensus:
                ks = [None] if sel == "none" else list(spec.sweep_range)
                for k in ks:
                    try:
                        if sel == "none":
                            _, ari = ev(method, full_members(spec, ens, an), "all")
                        else:
                            idx = selected_indices(an, sel, k)
                            _, ari = ev(method, an.distinct.subset(idx), tuple(sorted(idx)))
                        rows.append((data.name, eid, sel, method, "" if k is None else k, ari, ""))
                    except Exception as exc:  # recorded per cell, the run continues
                        log.warning("ensemble %d %s+%s k=%s failed: %s", eid, sel, method, k, exc)
                        rows.append((data.name, eid, sel, method, "" if k is None else k, "", str(exc)))
    return rows


def summarize(rows: Iterable[tuple]) -> list[tuple]:
    """Max AR over k for every (ensemble, selection, consensus) cell."""
    best: dict[tuple, tuple[float, object]] = {}
    order = []
    for dataset, eid, sel, method, k, ari, err in rows:
        key = (dataset, eid, sel, method)
        if key not in best:
            order.append(key)
            best[key] = (-np.inf, "")
        if ari != "" and ari > best[key][0]:
            best[key] = (ari, k)
    return [(*key, best[key][1], best[key][0] if np.isfinite(best[key][0]) else "") for key in order]


def cmd_run(spec: ExperimentSpec) -> tuple[Path, Path]:
    data = load(spec)
    ensembles = _ensembles(spec, data)
    rows = run_cells(spec, data, ensembles)
    out = spec.out_dir
    results = out / "results.csv"
    write_rows(results, RESULT_HEADER, rows)
    summary_rows = summarize(rows)
    summary = out / "summary.csv"
    write_rows(summary, ("dataset", "ensemble", "selection", "consensus", "best_k", "max_ari"), summary_rows)

    # median over ensembles of the max-over-k AR, for the figure
    cells: dict[str, dict[str, list[float]]] = {}
    for _, _, sel, method, _, ari in summary_rows:
        if ari != "":
            cells.setdefault(method, {}).setdefault(sel, []).append(ari)
    medians = {m: {s: float(np.median(v)) for s, v in d.items()} for m, d in cells.items()}
    plot_summary(medians, out / "summary.svg", title=f"{data.name}: median over ensembles")
    return results, summary


SWEEP_HEADER = ("ensemble", "consensus", "criterion", "k", "ari")


def sweep_curves(spec: ExperimentSpec, data: Dataset, ens: Ensemble, method: str = "cspa",
                 analysis: Analysis | None = None) -> dict[str, tuple[list[int], list[float]]]:
    """AR of the consensus of the top-k partitions for each ranking criterion.

    k stops at the number of distinct partitions; beyond it every criterion
    selects the whole distinct set.
    """
    an = analysis or analyse(ens)
    ev = _evaluator(spec, data)
    ks = [k for k in spec.sweep_range if k <= an.distinct.r]
    if not ks:
        raise ValueError(f"k sweep starts at {spec.sweep_range.start} but the ensemble has only "
                         f"{an.distinct.r} distinct partitions")
    curves = {}
    for crit in SWEEP_CRITERIA:
        ars = []
        for k in ks:
            idx = select_top(an, k, crit).selected_indices
            ars.append(ev(method, an.distinct.subset(idx), tuple(sorted(idx)))[1])
        curves[crit] = (ks, ars)
    return curves


def cmd_sweep(spec: ExperimentSpec) -> tuple[Path, Path]:
    data = load(spec)
    ensembles = _ensembles(spec, data)
    out = spec.out_dir
    rows, summary = [], []
    for eid, ens in enumerate(ensembles, start=1):
        for method in spec.consensus:
            curves = sweep_curves(spec, data, ens, method)
            for crit, (ks, ars) in curves.items():
                rows.extend((eid, method, crit, k, a) for k, a in zip(ks, ars))
                summary.append((eid, method, crit, max(ars), float(np.mean(ars))))
            plot_sweep(curves, out / f"sweep-{eid}-{method}.svg", title=f"{data.name} ensemble {eid} ({method})")
    path = out / "sweep.csv"
    write_rows(path, SWEEP_HEADER, rows)
    spath = out / "sweep_summary.csv"
    write_rows(spath, ("ensemble", "consensus", "criterion", "max_ari", "mean_ari"), summary)
    return path, spath


def read_sweep(path) -> dict[tuple[int, str, str], tuple[list[int], list[float]]]:
    curves: dict = {}
    for row in read_rows(path):
        key = (int(row["ensemble"]), row["consensus"], row["criterion"])
        ks, ars = curves.setdefault(key, ([], []))
        ks.append(int(row["k"]))
        ars.append(float(row["ari"]))
    return curves


def cmd_embed(spec: ExperimentSpec, ensemble_id: int = 1) -> tuple[Path, Path]:
    """Embed the distinct partitions of one ensemble together with reference partitions."""
    data = load(spec)
    ens = _ensembles(replace(spec, ensembles=max(spec.ensembles, ensemble_id)), data)[ensemble_id - 1]
    an = analyse(ens)
    distinct = an.distinct
    cfg = EmbeddingConfig(spec.n_neighbors, spec.target_dim)
    r_total = distinct.r + (4 if data.true_labels is not None else 0)
    cfg.check(r_total)

    esdf_idx = selected_indices(an, "esdf", spec.select_k)
    cas_idx = selected_indices(an, "cas", spec.select_k)
    extra_parts, extra_roles = [], []
    if data.true_labels is not None:
        k = n_clusters(spec, data)
        ccfg = ConsensusConfig("cspa", k, spec.balance_tol, spec.linkage, spec.restarts, spec.seed)
        extra_parts = [
            data.true_labels,
            consensus(full_members(spec, ens, an), ccfg),
            consensus(distinct.subset(cas_idx), ccfg),
            consensus(distinct.subset(esdf_idx), ccfg),
        ]
        extra_roles = ["ground-truth", "consensus-full", "consensus-cas", "consensus-esdf"]

    # extras may coincide with a distinct partition, so build the matrix directly
    everything = list(distinct.partitions) + extra_parts
    sim = np.eye(len(everything))
    sim[: distinct.r, : distinct.r] = an.similarity.values
    for i in range(len(everything)):
        for j in range(max(i + 1, distinct.r), len(everything)):
            sim[i, j] = sim[j, i] = adjusted_rand(everything[i], everything[j])
    emb = lle(partition_distance_matrix(sim), cfg)
    roles = assign_roles(distinct.r, esdf_idx, cas_idx, extra_roles)
    out = spec.out_dir
    out.mkdir(parents=True, exist_ok=True)
    write_weights_csv(out / f"weights-{ensemble_id}.csv", distinct, an.table)
    write_selection_csv(out / f"selection-esdf-{ensemble_id}.csv", distinct, an.table, esdf_idx)
    write_selection_csv(out / f"selection-cas-{ensemble_id}.csv", distinct, an.table, cas_idx)
    return emit_scatter(emb, spec.dims, roles, out / f"embedding-{ensemble_id}",
                        title=f"{data.name} ensemble {ensemble_id}")
