"""Balanced min-cut hypergraph partitioning.

Recursive bisection where each bisection is the best of several seeded
Fiduccia-Mattheyses runs. The objective is the (weighted) number of
hyperedges whose vertices end up in more than one part.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class InfeasibleBalanceError(ValueError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    n_vertices: int
    hyperedges: tuple[tuple[int, ...], ...]
    edge_weights: tuple[float, ...] | None = None

    def __post_init__(self):
        edges = tuple(tuple(int(v) for v in e) for e in self.hyperedges)
        object.__setattr__(self, "hyperedges", edges)
        for i, e in enumerate(edges):
            if not e:
                raise ValueError(f"hyperedge {i} is empty")
            if min(e) < 0 or max(e) >= self.n_vertices:
                raise ValueError(f"hyperedge {i} has a vertex outside 0..{self.n_vertices - 1}")
        if self.edge_weights is None:
            object.__setattr__(self, "edge_weights", (1.0,) * len(edges))
        elif len(self.edge_weights) != len(edges):
            raise ValueError("one weight per hyperedge required")
        elif any(w <= 0 for w in self.edge_weights):
            raise ValueError("hyperedge weights must be positive")

    @property
    def n_edges(self) -> int:
        return len(self.hyperedges)

    def incidence(self) -> np.ndarray:
        """Dense ``n_edges x n_vertices`` 0/1 incidence matrix."""
        H = np.zeros((self.n_edges, self.n_vertices))
        for i, e in enumerate(self.hyperedges):
            H[i, list(e)] = 1.0
        return H


def cut_count(graph: Hypergraph, parts) -> float:
    """Total weight of hyperedges spanning more than one part."""
    parts = np.asarray(parts)
    total = 0.0
    for e, w in zip(graph.hyperedges, graph.edge_weights):
        labels = parts[list(e)]
        if np.any(labels != labels[0]):
            total += w
    return total


def balance_bounds(n: int, k: int, tol: float) -> tuple[int, int]:
    """Smallest and largest admissible part size, rounded outward."""
    ideal = n / k
    lo = max(1, math.floor((1 - tol) * ideal + 1e-9))
    hi = min(n, math.ceil((1 + tol) * ideal - 1e-9))
    if k * lo > n or k * hi < n or k > n:
        raise InfeasibleBalanceError(
            f"infeasible balance: {k} parts of size {lo}..{hi} cannot cover {n} vertices"
        )
    return lo, hi


def _coalesce(H: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # edges with fewer than two pins can never be cut
    keep = H.sum(axis=1) >= 2
    H, w = H[keep], w[keep]
    if H.shape[0] == 0:
        return H, w
    uniq, inverse = np.unique(H, axis=0, return_inverse=True)
    return uniq, np.bincount(inverse.ravel(), weights=w, minlength=uniq.shape[0])


def _edge_terms(w, c_from, c_to):
    # first-order term: edge uncut by the move minus edge newly cut;
    # second-order term: the same one move further ahead
    g1 = w * ((c_from == 1).astype(float) - (c_to == 0))
    g2 = w * ((c_from == 2).astype(float) - (c_to == 1))
    return g1, g2


class _Bisection:
    """Pin counts and move gains of a two-way split, updated move by move."""

    def __init__(self, H, w, side):
        self.H, self.w, self.side = H, w, side
        self.deg = H.sum(axis=1)
        self.reset()

    def reset(self):
        H, w, side = self.H, self.w, self.side
        self.cA = H @ side
        self.cB = self.deg - self.cA
        a1, a2 = _edge_terms(w, self.cA, self.cB)
        b1, b2 = _edge_terms(w, self.cB, self.cA)
        self.gain = np.where(side, H.T @ a1, H.T @ b1)
        self.gain2 = np.where(side, H.T @ a2, H.T @ b2)
        self.size_a = int(side.sum())

    @property
    def cut(self) -> float:
        return float(self.w[(self.cA > 0) & (self.cB > 0)].sum())

    def best_move(self, movable, priority) -> int:
        cand = np.where(movable, self.gain, -np.inf)
        ties = np.flatnonzero(cand >= cand.max() - 1e-9)
        ties = ties[self.gain2[ties] >= self.gain2[ties].max() - 1e-9]
        return int(ties[np.argmin(priority[ties])])

    def move(self, v: int) -> None:
        H, w = self.H, self.w
        edges = np.flatnonzero(H[:, v])
        we, cA, cB = w[edges], self.cA, self.cB
        old_a = _edge_terms(we, cA[edges], cB[edges])
        old_b = _edge_terms(we, cB[edges], cA[edges])
        delta = -1 if self.side[v] else 1
        cA[edges] += delta
        cB[edges] -= delta
        self.size_a += delta
        self.side[v] = not self.side[v]
        new_a = _edge_terms(we, cA[edges], cB[edges])
        new_b = _edge_terms(we, cB[edges], cA[edges])
        da1, da2 = new_a[0] - old_a[0], new_a[1] - old_a[1]
        db1, db2 = new_b[0] - old_b[0], new_b[1] - old_b[1]
        # only edges whose counts crossed a threshold change any gain
        hit = (da1 != 0) | (da2 != 0) | (db1 != 0) | (db2 != 0)
        if hit.any():
            sub = H[edges[hit]].T
            self.gain += np.where(self.side, sub @ da1[hit], sub @ db1[hit])
            self.gain2 += np.where(self.side, sub @ da2[hit], sub @ db2[hit])
        # gains of v itself refer to its old side; recompute them
        if self.side[v]:
            g1, g2 = _edge_terms(we, cA[edges], cB[edges])
        else:
            g1, g2 = _edge_terms(we, cB[edges], cA[edges])
        self.gain[v] = g1.sum()
        self.gain2[v] = g2.sum()


def _better(cut, imbalance, best_cut, best_imbalance):
    """Lower cut wins; equal cuts are settled by closeness to an even split."""
    if cut < best_cut - 1e-9:
        return True
    return cut <= best_cut + 1e-9 and imbalance < best_imbalance


def _grow(H, w, lo_a, hi_a, rng):
    """Greedy hypergraph growing.

    Part A starts from one random vertex and repeatedly absorbs the vertex
    whose move costs least, up to ``hi_a`` vertices; the admissible prefix
    with the smallest cut is kept.
    """
    nv = H.shape[1]
    side = np.zeros(nv, dtype=bool)
    state = _Bisection(H, w, side)
    priority = rng.permutation(nv)
    order = [int(rng.integers(nv))]
    state.move(order[0])
    mid = (lo_a + hi_a) / 2
    best = (state.cut, 1) if state.size_a >= lo_a else (np.inf, lo_a)
    while state.size_a < hi_a:
        v = state.best_move(~state.side, priority)
        state.move(v)
        order.append(v)
        if state.size_a >= lo_a and _better(state.cut, abs(state.size_a - mid), best[0], abs(best[1] - mid)):
            best = (state.cut, state.size_a)
    side[:] = False
    side[order[: best[1]]] = True
    return side


def _fm_refine(H, w, side, lo_a, hi_a, rng, max_passes=50):
    """Improve a bisection in place; ``side`` is True for vertices in part A.

    Moves are ranked by cut reduction, then by the second-order gain, then by
    a random priority drawn per pass. Each pass moves every vertex at most
    once and rolls back to the best prefix.
    """
    nv = H.shape[1]
    mid = (lo_a + hi_a) / 2
    state = _Bisection(H, w, side)
    for _ in range(max_passes):
        state.reset()
        cut = best_cut = state.cut
        best_imb = abs(state.size_a - mid)
        best_step = 0
        locked = np.zeros(nv, dtype=bool)
        priority = rng.permutation(nv)
        moves = []
        for step in range(1, nv + 1):
            can_leave_a = state.size_a - 1 >= lo_a
            can_join_a = state.size_a + 1 <= hi_a
            movable = ~locked & np.where(state.side, can_leave_a, can_join_a)
            if not movable.any():
                break
            v = state.best_move(movable, priority)
            cut -= state.gain[v]
            state.move(v)
            locked[v] = True
            moves.append(v)
            imb = abs(state.size_a - mid)
            if _better(cut, imb, best_cut, best_imb):
                best_cut, best_imb, best_step = cut, imb, step
        for v in moves[best_step:]:
            side[v] = not side[v]
        if best_step == 0:
            break
    state.reset()
    return state.cut


def _bisect(H, w, lo_a, hi_a, restarts, rng):
    """Best of ``restarts`` FM runs; three in four start from greedy growing,
    the rest from a random split."""
    nv = H.shape[1]
    best = None
    for attempt in range(restarts):
        if H.shape[0] == 0:
            side = np.zeros(nv, dtype=bool)
            side[rng.permutation(nv)[: (lo_a + hi_a) // 2]] = True
            return side
        if attempt % 4 != 3:
            side = _grow(H, w, lo_a, hi_a, rng)
        else:
            side = np.zeros(nv, dtype=bool)
            side[rng.permutation(nv)[: int(rng.integers(lo_a, hi_a + 1))]] = True
        cut = _fm_refine(H, w, side, lo_a, hi_a, rng)
        imb = abs(side.sum() - (lo_a + hi_a) / 2)
        if best is None or _better(cut, imb, best[0], best[1]):
            best = (cut, imb, side.copy())
    return best[2]


def partition_hypergraph(
    graph: Hypergraph,
    n_parts: int,
    balance_tolerance: float = 0.05,
    restarts: int = 8,
    seed: int = 0,
) -> np.ndarray:
    """Split the vertices into ``n_parts`` balanced parts cutting few hyperedges.

    Every part ends up with a size in :func:`balance_bounds`. The result
    depends only on the inputs and ``seed``.

    Returns
    -------
    ndarray of shape (n_vertices,)
        Part index of each vertex.
    """
    n = graph.n_vertices
    lo, hi = balance_bounds(n, n_parts, balance_tolerance)
    rng = np.random.default_rng(seed)
    H, w = _coalesce(graph.incidence(), np.asarray(graph.edge_weights, dtype=float))
    parts = np.zeros(n, dtype=np.int64)
    # stack of (vertex ids, incidence restricted to them, weights, parts wanted, first part label)
    stack = [(np.arange(n), H, w, n_parts, 0)]
    while stack:
        verts, Hs, ws, k, base = stack.pop()
        if k == 1:
            parts[verts] = base
            continue
        k_a = k // 2
        k_b = k - k_a
        nv = verts.size
        lo_a = max(k_a * lo, nv - k_b * hi)
        hi_a = min(k_a * hi, nv - k_b * lo)
        side = _bisect(Hs, ws, lo_a, hi_a, restarts, rng)
        for mask, kk, b in ((side, k_a, base), (~side, k_b, base + k_a)):
            inside = Hs[:, ~mask].sum(axis=1) == 0 if Hs.shape[0] else np.zeros(0, dtype=bool)
            Hm, wm = _coalesce(Hs[inside][:, mask], ws[inside])
            stack.append((verts[mask], Hm, wm, kk, b))
    return parts
