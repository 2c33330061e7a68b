"""Exact graph edit distance on bipartite LP graphs.

The search is best-first (A*) over partial node assignments. Nodes of graph A
are visited in breadth-first order; each is mapped to an unused node of B on
the same side or deleted. Unused B nodes are inserted at the end.

The heuristic is the BRANCH-style bound: a linear sum assignment over the
undecided nodes whose entries count node costs, the exact cost of edges to
already decided nodes, and half the cheapest matching of the edge-label
multisets among undecided nodes. It never overestimates, so the first
complete state popped is optimal.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from dualkit.lpgraph import BipartiteLpGraph, Feature
from dualkit.tolerance import close

DEFAULT_BUDGET = 60
DEFAULT_MAX_EXPANSIONS = 300
DEFAULT_TIME_LIMIT = 60.0
ISOMORPHISM_STEPS = 1_000_000
_BIG = 1e9


class GedBudgetError(RuntimeError):
    """Instance too large for exact GED; ``lower``/``upper`` bound the distance when known."""

    def __init__(self, message: str, lower: float | None = None, upper: float | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


@dataclass(frozen=True)
class CostModel:
    node_insert: float = 1.0
    node_delete: float = 1.0
    edge_insert: float = 1.0
    edge_delete: float = 1.0
    node_sub: float = 1.0
    edge_sub: float = 1.0

    def __post_init__(self):
        if self.smallest < 0:
            raise ValueError("edit costs must be nonnegative")

    @property
    def smallest(self) -> float:
        return min(self.node_insert, self.node_delete, self.edge_insert, self.edge_delete,
                   self.node_sub, self.edge_sub)

    @property
    def positive(self) -> bool:
        return self.smallest > 0

    def node_substitute(self, f1: Feature, f2: Feature) -> float:
        return 0.0 if features_equal(f1, f2) else self.node_sub

    def edge_substitute(self, w1: float, w2: float) -> float:
        return 0.0 if close(w1, w2) else self.edge_sub


DEFAULT_COST = CostModel()


@dataclass(frozen=True)
class EditOperation:
    op: str  # "insert" | "delete" | "substitute"
    kind: str  # "var" | "con" | "edge"
    ids: tuple
    cost: float


@dataclass(frozen=True)
class EditPath:
    operations: tuple[EditOperation, ...]
    total: float
    node_map: tuple[tuple[str, str, str | None], ...] = ()  # (side, a_id, b_id or None)

    @staticmethod
    def empty() -> EditPath:
        return EditPath((), 0.0, ())


def features_equal(f1: Feature, f2: Feature) -> bool:
    return len(f1) == len(f2) and all(close(a, b) for a, b in zip(f1, f2))


def _classify(values: Sequence, equal) -> list[int]:
    """Map values to class ids; a value joins the first class whose representative it equals."""
    reps: list = []
    out = []
    for v in values:
        for idx, r in enumerate(reps):
            if equal(v, r):
                out.append(idx)
                break
        else:
            reps.append(v)
            out.append(len(reps) - 1)
    return out


class _Graph:
    """Integer-indexed view: nodes 0..n-1, side 0 = var, 1 = con."""

    def __init__(self, g: BipartiteLpGraph, node_labels: list[int], edge_labels: list[int]):
        self.ids = [v for v, _ in g.var_nodes] + [c for c, _ in g.con_nodes]
        self.side = [0] * len(g.var_nodes) + [1] * len(g.con_nodes)
        self.label = node_labels
        self.n = len(self.ids)
        index = {("v", v): i for i, (v, _) in enumerate(g.var_nodes)}
        index.update({("c", c): len(g.var_nodes) + j for j, (c, _) in enumerate(g.con_nodes)})
        self.adj: list[dict[int, int]] = [dict() for _ in range(self.n)]
        self.edges: list[tuple[int, int, int]] = []
        for (v, c, _), lab in zip(g.edges, edge_labels):
            i, j = index[("v", v)], index[("c", c)]
            self.adj[i][j] = lab
            self.adj[j][i] = lab
            self.edges.append((i, j, lab))


def _prepare(a: BipartiteLpGraph, b: BipartiteLpGraph) -> tuple[_Graph, _Graph]:
    var_feats = [f for _, f in a.var_nodes] + [f for _, f in b.var_nodes]
    con_feats = [f for _, f in a.con_nodes] + [f for _, f in b.con_nodes]
    var_lab = _classify(var_feats, features_equal)
    con_lab = [x + 1_000_000 for x in _classify(con_feats, features_equal)]
    weights = [w for *_, w in a.edges] + [w for *_, w in b.edges]
    edge_lab = _classify(weights, close)
    na_v, na_c, na_e = len(a.var_nodes), len(a.con_nodes), len(a.edges)
    ga = _Graph(a, var_lab[:na_v] + con_lab[:na_c], edge_lab[:na_e])
    gb = _Graph(b, var_lab[na_v:] + con_lab[na_c:], edge_lab[na_e:])
    return ga, gb


def _bfs_order(g: _Graph) -> list[int]:
    order: list[int] = []
    seen = [False] * g.n
    starts = sorted(range(g.n), key=lambda i: (-len(g.adj[i]), i))
    for s in starts:
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g.adj[u], key=lambda x: (-len(g.adj[x]), x)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


class _Search:
    """A* state: the B image (or -1 for deletion) of each A node in ``order``, decided left to right."""

    def __init__(self, ga: _Graph, gb: _Graph, cost: CostModel):
        self.a, self.b, self.c = ga, gb, cost
        self.order = np.array(_bfs_order(ga), dtype=int)
        self.side_a, self.side_b = np.array(ga.side, dtype=int), np.array(gb.side, dtype=int)
        self.lab_a, self.lab_b = np.array(ga.label, dtype=int), np.array(gb.label, dtype=int)
        labels = sorted({lab for *_, lab in ga.edges} | {lab for *_, lab in gb.edges})
        code = {lab: n for n, lab in enumerate(labels)}
        self.la, self.al = self._adjacency(ga, code, len(labels))
        self.lb, self.bl = self._adjacency(gb, code, len(labels))
        self.edges_a = np.array([(i, j, code[lab]) for i, j, lab in ga.edges], dtype=int).reshape(-1, 3)
        self.edges_b = np.array([(i, j, code[lab]) for i, j, lab in gb.edges], dtype=int).reshape(-1, 3)
        self.star_unit = min(cost.edge_sub, cost.edge_delete + cost.edge_insert)

    @staticmethod
    def _adjacency(g: _Graph, code: dict[int, int], n_labels: int) -> tuple[np.ndarray, np.ndarray]:
        lab = np.full((g.n, g.n), -1, dtype=int)
        onehot = np.zeros((g.n, g.n, max(n_labels, 1)), dtype=np.int32)
        for i, j, l in g.edges:
            lab[i, j] = lab[j, i] = code[l]
            onehot[i, j, code[l]] = onehot[j, i, code[l]] = 1
        return lab, onehot

    def _state(self, assigned: tuple[int, ...]):
        depth = len(assigned)
        done = self.order[:depth]
        images = np.array(assigned, dtype=int)
        mapped = images >= 0
        imaged = np.zeros(self.b.n, dtype=bool)
        imaged[images[mapped]] = True
        return done[mapped], images[mapped], done[~mapped], imaged

    def _match_costs(self, rows, cols, u, v, deleted) -> np.ndarray:
        """Node cost plus exact cost of edges to decided nodes, for each (A row, B col) pair."""
        c = self.c
        m = np.where(self.lab_a[rows][:, None] == self.lab_b[cols][None, :], 0.0, c.node_sub)
        if len(u):
            ea = self.la[np.ix_(rows, u)][:, None, :]
            eb = self.lb[np.ix_(cols, v)][None, :, :]
            both = (ea >= 0) & (eb >= 0)
            m = m + ((both & (ea != eb)).sum(2) * c.edge_sub + ((ea >= 0) & (eb < 0)).sum(2) * c.edge_delete
                     + ((ea < 0) & (eb >= 0)).sum(2) * c.edge_insert)
        if len(deleted):
            m = m + ((self.la[np.ix_(rows, deleted)] >= 0).sum(1) * c.edge_delete)[:, None]
        return np.where(self.side_a[rows][:, None] == self.side_b[cols][None, :], m, _BIG)

    def _delete_costs(self, rows, u, deleted) -> np.ndarray:
        decided = (self.la[np.ix_(rows, np.concatenate([u, deleted]))] >= 0).sum(1)
        return self.c.node_delete + decided * self.c.edge_delete

    def _completion(self, imaged: np.ndarray) -> float:
        c = self.c
        free = ~imaged
        edges = int((free[self.edges_b[:, 0]] | free[self.edges_b[:, 1]]).sum()) if len(self.edges_b) else 0
        return float(free.sum()) * c.node_insert + edges * c.edge_insert

    def lower_bound(self, assigned: tuple[int, ...]) -> tuple[float, list[tuple[int, int]]]:
        """Admissible bound on the cost still to pay, plus the LSAP assignment it came from."""
        c = self.c
        u, v, deleted, imaged = self._state(assigned)
        rem_a = self.order[len(assigned):]
        rem_b = np.flatnonzero(~imaged)
        na, nb = len(rem_a), len(rem_b)
        if na == 0:
            return self._completion(imaged), []
        ca = self.al[np.ix_(rem_a, rem_a)].sum(1)
        cb = self.bl[np.ix_(rem_b, rem_b)].sum(1)
        da, db = ca.sum(1), cb.sum(1)
        m = np.full((na + nb, nb + na), _BIG)
        m[na:, nb:] = 0.0
        if nb:
            common = np.minimum(ca[:, None, :], cb[None, :, :]).sum(2)
            star = ((np.minimum(da[:, None], db[None, :]) - common) * self.star_unit
                    + np.maximum(0, da[:, None] - db[None, :]) * c.edge_delete
                    + np.maximum(0, db[None, :] - da[:, None]) * c.edge_insert)
            m[:na, :nb] = np.minimum(self._match_costs(rem_a, rem_b, u, v, deleted) + 0.5 * star, _BIG)
            images = (self.lb[np.ix_(rem_b, v)] >= 0).sum(1) if len(v) else np.zeros(nb)
            m[na + np.arange(nb), np.arange(nb)] = c.node_insert + images * c.edge_insert + 0.5 * db * c.edge_insert
        m[np.arange(na), nb + np.arange(na)] = self._delete_costs(rem_a, u, deleted) + 0.5 * da * c.edge_delete
        rows, cols = linear_sum_assignment(m)
        bound = float(m[rows, cols].sum())
        pairs = [(int(rem_a[r]), int(rem_b[col]) if col < nb else -1) for r, col in zip(rows, cols) if r < na]
        return bound, pairs

    def full_cost(self, mapping: dict[int, int]) -> float:
        """Exact edit cost of a complete node map (A node -> B node or -1)."""
        c = self.c
        f = np.array([mapping[i] for i in range(self.a.n)], dtype=int)
        mapped = f >= 0
        total = float(np.where(self.lab_a[mapped] == self.lab_b[f[mapped]], 0.0, c.node_sub).sum())
        total += float((~mapped).sum()) * c.node_delete + (self.b.n - int(mapped.sum())) * c.node_insert
        covered = 0
        if len(self.edges_a):
            ki, kj = f[self.edges_a[:, 0]], f[self.edges_a[:, 1]]
            ok = (ki >= 0) & (kj >= 0)
            blab = np.full(len(ki), -1)
            blab[ok] = self.lb[ki[ok], kj[ok]]
            present = blab >= 0
            covered = int(present.sum())
            total += float((~present).sum()) * c.edge_delete
            total += float((present & (blab != self.edges_a[:, 2])).sum()) * c.edge_sub
        total += (len(self.edges_b) - covered) * c.edge_insert
        return total

    def _children(self, assigned: tuple[int, ...]) -> list[tuple[int, float]]:
        u, v, deleted, imaged = self._state(assigned)
        i = self.order[len(assigned)]
        cands = np.flatnonzero(~imaged & (self.side_b == self.side_a[i]))
        out = []
        if len(cands):
            steps = self._match_costs(np.array([i]), cands, u, v, deleted)[0]
            out = [(int(k), float(s)) for k, s in zip(cands, steps)]
        out.append((-1, float(self._delete_costs(np.array([i]), u, deleted)[0])))
        return out

    def run(self, cutoff: float | None, max_expansions: int) -> tuple[float, dict[int, int]] | None:
        n = self.a.n
        eps = 1e-9
        h0, pairs = self.lower_bound(())
        best_map = dict(pairs)
        upper = self.full_cost(best_map) if n else h0
        if cutoff is not None and h0 > cutoff + eps:
            return None
        if upper <= h0 + eps:
            return upper, best_map
        counter = itertools.count()
        # (f, -depth, tiebreak, g, assignment): deeper states first among equal f
        heap = [(h0, 0, next(counter), 0.0, ())]
        limit = upper if cutoff is None else min(upper, cutoff)
        expansions = 0
        while heap:
            fval, _, _, g, assigned = heapq.heappop(heap)
            if fval > limit + eps:
                break
            if len(assigned) == n:
                return g, dict(zip(self.order.tolist(), assigned))
            expansions += 1
            if expansions > max_expansions:
                raise GedBudgetError(f"exact GED search exceeded {max_expansions} expansions", fval, upper)
            for k, step in self._children(assigned):
                child = assigned + (k,)
                child_g = g + step
                h, pairs = self.lower_bound(child)
                if child_g + h > limit + eps:
                    continue
                full = dict(zip(self.order.tolist(), child))
                full.update(pairs)
                ub = self.full_cost(full)
                if ub < upper:
                    upper, best_map = ub, full
                    limit = upper if cutoff is None else min(upper, cutoff)
                heapq.heappush(heap, (child_g + h, -len(child), next(counter), child_g, child))
        if cutoff is not None and upper > cutoff + eps:
            return None
        return upper, best_map

    def solve_milp(self, time_limit: float) -> tuple[float, dict[int, int]]:
        """Exact GED as a binary program (node and edge matching variables), solved by HiGHS."""
        c = self.c
        na, nb = self.a.n, self.b.n
        pairs = [(i, k) for i in range(na) for k in range(nb) if self.side_a[i] == self.side_b[k]]
        x_index = {p: n for n, p in enumerate(pairs)}
        edge_pairs = []
        for ea, (i, j, la) in enumerate(self.edges_a):
            for eb, (k, l, lb) in enumerate(self.edges_b):
                if (i, k) in x_index and (j, l) in x_index:
                    edge_pairs.append((ea, eb, i, j, k, l, la == lb))
        nx, ny = len(pairs), len(edge_pairs)
        obj = np.empty(nx + ny)
        for n, (i, k) in enumerate(pairs):
            sub = 0.0 if self.lab_a[i] == self.lab_b[k] else c.node_sub
            obj[n] = sub - c.node_delete - c.node_insert
        for n, (*_, same) in enumerate(edge_pairs):
            obj[nx + n] = (0.0 if same else c.edge_sub) - c.edge_delete - c.edge_insert
        const = na * c.node_delete + nb * c.node_insert + len(self.edges_a) * c.edge_delete \
            + len(self.edges_b) * c.edge_insert
        rows, cols, vals = [], [], []
        r = 0
        for i in range(na):
            for k in range(nb):
                if (i, k) in x_index:
                    rows.append(r), cols.append(x_index[(i, k)]), vals.append(1.0)
            r += 1
        for k in range(nb):
            for i in range(na):
                if (i, k) in x_index:
                    rows.append(r), cols.append(x_index[(i, k)]), vals.append(1.0)
            r += 1
        n_node_rows = r
        # an A edge can use a B edge at k (resp. l) only if its endpoint i -> k (resp. j -> l)
        groups: dict[tuple, list[int]] = {}
        for n, (ea, eb, i, j, k, l, _) in enumerate(edge_pairs):
            groups.setdefault((ea, "v", k, i), []).append(nx + n)
            groups.setdefault((ea, "c", l, j), []).append(nx + n)
        for (ea, _, node_b, node_a), members in groups.items():
            for col in members:
                rows.append(r), cols.append(col), vals.append(1.0)
            rows.append(r), cols.append(x_index[(node_a, node_b)]), vals.append(-1.0)
            r += 1
        from scipy.optimize import Bounds, LinearConstraint, milp
        from scipy.sparse import csr_array

        matrix = csr_array((vals, (rows, cols)), shape=(r, nx + ny))
        upper = np.concatenate([np.ones(n_node_rows), np.zeros(r - n_node_rows)])
        result = milp(
            obj,
            constraints=LinearConstraint(matrix, -np.inf, upper),
            integrality=np.ones(nx + ny),
            bounds=Bounds(0, 1),
            options={"time_limit": time_limit, "mip_rel_gap": 0.0},
        )
        if result.status != 0 or result.x is None:
            bound = getattr(result, "mip_dual_bound", None)
            raise GedBudgetError(
                f"exact GED fallback did not finish: {result.message}",
                None if bound is None else bound + const,
                None if result.fun is None else result.fun + const,
            )
        mapping = dict.fromkeys(range(na), -1)
        for n, (i, k) in enumerate(pairs):
            if result.x[n] > 0.5:
                mapping[i] = k
        return self.full_cost(mapping), mapping


def _refine(ga: _Graph, gb: _Graph) -> tuple[list[int], list[int]]:
    """Joint colour refinement (1-WL) over both graphs, seeded by side and node label."""
    nodes = [(ga, i) for i in range(ga.n)] + [(gb, k) for k in range(gb.n)]
    colors = [(g.side[i], g.label[i]) for g, i in nodes]
    offset = ga.n
    while True:
        keyed = []
        for idx, (g, i) in enumerate(nodes):
            base = 0 if g is ga else offset
            neigh = sorted((lab, colors[base + j]) for j, lab in g.adj[i].items())
            keyed.append((colors[idx], tuple(neigh)))
        palette = {key: c for c, key in enumerate(sorted(set(keyed)))}
        new = [palette[key] for key in keyed]
        if len(palette) == len(set(colors)):
            break
        colors = new
    ints = {c: n for n, c in enumerate(sorted(set(colors), key=repr))}
    flat = [ints[c] for c in colors]
    return flat[:offset], flat[offset:]


def _isomorphism(ga: _Graph, gb: _Graph, max_steps: int) -> dict[int, int] | None:
    """Label-preserving isomorphism from ``ga`` to ``gb``, or None if there is none.

    Raises GedBudgetError if the backtracking exceeds ``max_steps``.
    """
    if ga.n != gb.n or len(ga.edges) != len(gb.edges):
        return None
    ca, cb = _refine(ga, gb)
    if sorted(ca) != sorted(cb):
        return None
    by_color: dict[int, list[int]] = {}
    for k, c in enumerate(cb):
        by_color.setdefault(c, []).append(k)
    order = _bfs_order(ga)
    f: dict[int, int] = {}
    used: set[int] = set()
    steps = [0]

    def consistent(i: int, k: int) -> bool:
        mapped = 0
        for u, lab in ga.adj[i].items():
            if u in f:
                mapped += 1
                if gb.adj[k].get(f[u]) != lab:
                    return False
        return mapped == sum(1 for v in gb.adj[k] if v in used)

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        steps[0] += 1
        if steps[0] > max_steps:
            raise GedBudgetError(f"isomorphism search exceeded {max_steps} steps")
        i = order[depth]
        for k in by_color[ca[i]]:
            if k in used or not consistent(i, k):
                continue
            f[i] = k
            used.add(k)
            if extend(depth + 1):
                return True
            del f[i]
            used.discard(k)
        return False

    return dict(f) if extend(0) else None


def _edit_path(a: BipartiteLpGraph, b: BipartiteLpGraph, ga: _Graph, gb: _Graph,
               mapping: dict[int, int], cost: CostModel) -> EditPath:
    ops: list[EditOperation] = []
    feats_a = list(a.var_nodes) + list(a.con_nodes)
    feats_b = list(b.var_nodes) + list(b.con_nodes)
    kinds = ("var", "con")
    inv = {k: i for i, k in mapping.items() if k >= 0}
    node_map = []
    for i in range(ga.n):
        k = mapping[i]
        kind = kinds[ga.side[i]]
        node_map.append((kind, ga.ids[i], gb.ids[k] if k >= 0 else None))
        if k < 0:
            ops.append(EditOperation("delete", kind, (ga.ids[i],), cost.node_delete))
        elif ga.label[i] != gb.label[k]:
            ops.append(EditOperation("substitute", kind, (ga.ids[i], gb.ids[k], feats_a[i][1], feats_b[k][1]),
                                     cost.node_sub))
    for k in range(gb.n):
        if k not in inv:
            ops.append(EditOperation("insert", kinds[gb.side[k]], (gb.ids[k], feats_b[k][1]), cost.node_insert))
    weights_a = {(ga.ids[i], ga.ids[j]): w for (i, j, _), (*_, w) in zip(ga.edges, a.edges)}
    weights_b = {(gb.ids[i], gb.ids[j]): w for (i, j, _), (*_, w) in zip(gb.edges, b.edges)}
    covered = set()
    for i, j, lab in ga.edges:
        ki, kj = mapping[i], mapping[j]
        blab = gb.adj[ki].get(kj) if ki >= 0 and kj >= 0 else None
        key_a = (ga.ids[i], ga.ids[j])
        if blab is None:
            ops.append(EditOperation("delete", "edge", key_a, cost.edge_delete))
        else:
            covered.add((ki, kj))
            if blab != lab:
                key_b = (gb.ids[ki], gb.ids[kj])
                ops.append(EditOperation("substitute", "edge", key_a + key_b + (weights_a[key_a], weights_b[key_b]),
                                         cost.edge_sub))
    for i, j, _ in gb.edges:
        if (i, j) not in covered:
            key_b = (gb.ids[i], gb.ids[j])
            ops.append(EditOperation("insert", "edge", key_b + (weights_b[key_b],), cost.edge_insert))
    total = math.fsum(op.cost for op in ops)
    return EditPath(tuple(ops), total, tuple(node_map))


def ged(a: BipartiteLpGraph, b: BipartiteLpGraph, cost: CostModel = DEFAULT_COST,
        budget: int = DEFAULT_BUDGET, cutoff: float | None = None,
        max_expansions: int = DEFAULT_MAX_EXPANSIONS, method: str = "auto",
        time_limit: float = DEFAULT_TIME_LIMIT) -> EditPath | None:
    """Exact minimum-cost edit path from ``a`` to ``b``.

    Isomorphic graphs are recognised first and return distance 0 whatever
    their size. Otherwise the combined node count must fit ``budget``. With
    ``cutoff`` set, returns None once the distance is proven to exceed it.

    ``method``: ``"astar"`` runs the best-first search only, ``"milp"`` the
    binary-program formulation only, and ``"auto"`` starts with the search and
    switches to the binary program if the search exceeds ``max_expansions``.
    All three are exact; failure raises :class:`GedBudgetError`.
    """
    if method not in ("auto", "astar", "milp"):
        raise ValueError(f"unknown GED method {method!r}")
    ga, gb = _prepare(a, b)
    if cost.positive:
        # with positive costs, distance 0 is exactly a label-preserving isomorphism
        iso = _isomorphism(ga, gb, ISOMORPHISM_STEPS)
        if iso is not None:
            return _edit_path(a, b, ga, gb, iso, cost)
        if cutoff is not None and cutoff < cost.smallest:
            return None
    if a.node_count + b.node_count > budget:
        raise GedBudgetError(
            f"instance too large for exact GED: {a.node_count} + {b.node_count} nodes exceeds budget {budget}"
        )
    search = _Search(ga, gb, cost)
    if method == "milp":
        result = search.solve_milp(time_limit)
    else:
        try:
            result = search.run(cutoff, max_expansions)
        except GedBudgetError:
            if method == "astar":
                raise
            result = search.solve_milp(time_limit)
    if result is None or (cutoff is not None and result[0] > cutoff + 1e-9):
        return None
    return _edit_path(a, b, ga, gb, result[1], cost)


def ged_brute_force(a: BipartiteLpGraph, b: BipartiteLpGraph, cost: CostModel = DEFAULT_COST) -> float:
    """Minimum over every side-respecting partial injection; for tiny graphs only."""
    ga, gb = _prepare(a, b)
    search = _Search(ga, gb, cost)

    def injections(src: list[int], dst: list[int]):
        for r in range(min(len(src), len(dst)) + 1):
            for chosen in itertools.combinations(src, r):
                for image in itertools.permutations(dst, r):
                    m = dict.fromkeys(src, -1)
                    m.update(zip(chosen, image))
                    yield m

    var_a = [i for i in range(ga.n) if ga.side[i] == 0]
    con_a = [i for i in range(ga.n) if ga.side[i] == 1]
    var_b = [k for k in range(gb.n) if gb.side[k] == 0]
    con_b = [k for k in range(gb.n) if gb.side[k] == 1]
    con_maps = list(injections(con_a, con_b))
    best = math.inf
    for vm in injections(var_a, var_b):
        for cm in con_maps:
            best = min(best, search.full_cost({**vm, **cm}))
    return best


def apply_edit_path(a: BipartiteLpGraph, path: EditPath) -> BipartiteLpGraph:
    """Replay ``path`` on ``a``; the result is isomorphic to the target graph (B's ids where mapped)."""
    var_map = {a_id: b_id for side, a_id, b_id in path.node_map if side == "var"}
    con_map = {a_id: b_id for side, a_id, b_id in path.node_map if side == "con"}
    var_feat = dict(a.var_nodes)
    con_feat = dict(a.con_nodes)
    edges = {(v, c): w for v, c, w in a.edges}
    new_vars: dict[str, Feature] = {}
    new_cons: dict[str, Feature] = {}
    for a_id, b_id in var_map.items():
        if b_id is not None:
            new_vars[b_id] = var_feat[a_id]
    for a_id, b_id in con_map.items():
        if b_id is not None:
            new_cons[b_id] = con_feat[a_id]
    new_edges = {}
    for (v, c), w in edges.items():
        bv, bc = var_map.get(v), con_map.get(c)
        if bv is not None and bc is not None:
            new_edges[(bv, bc)] = w
    for op in path.operations:
        if op.kind in ("var", "con"):
            target = new_vars if op.kind == "var" else new_cons
            if op.op == "substitute":
                target[op.ids[1]] = op.ids[3]
            elif op.op == "insert":
                target[op.ids[0]] = op.ids[1]
        else:
            if op.op == "delete":
                v, c = op.ids
                new_edges.pop((var_map.get(v), con_map.get(c)), None)
            elif op.op == "substitute":
                new_edges[(op.ids[2], op.ids[3])] = op.ids[5]
            else:
                new_edges[(op.ids[0], op.ids[1])] = op.ids[2]
    return BipartiteLpGraph(
        tuple(sorted(new_vars.items())),
        tuple(sorted(new_cons.items())),
        tuple(sorted((v, c, w) for (v, c), w in new_edges.items())),
        a.mode,
    )
