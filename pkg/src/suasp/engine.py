"""Stable-model search for ground normal programs.

The clause store starts as the Clark completion of the program, with one
auxiliary variable per distinct rule body.  Parameter atoms get no
completion and are therefore free.  Search is conflict-driven clause
learning (two watched literals, first-UIP learning, activity heuristic with
phase saving, geometric restarts).  For non-tight programs every total
assignment is checked for stability; an unstable candidate yields the loop
formula of one unfounded loop, which is added before search resumes.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

import networkx as nx

from .errors import ContractError
from .program import NormalProgram, SymbolTable


@dataclass
class EngineStats:
    decisions: int = 0
    conflicts: int = 0
    propagations: int = 0
    restarts: int = 0
    candidates: int = 0
    loop_clauses: int = 0
    models: int = 0


class Engine:
    """Single-owner solver instance for one normal program (not thread-safe)."""

    def __init__(self, program: NormalProgram, seed: int = 0):
        self.program = program
        self.table = SymbolTable(sorted(program.vocabulary))
        self.n_atoms = len(self.table)
        self.parameters = frozenset(self.table.id(a) for a in program.parameters)
        self.stats = EngineStats()
        self.ok = True

        # (head, pos, neg, body var); rules with pos & neg overlap never fire
        self.rules: list[tuple[int, tuple, tuple, int]] = []
        bodies: dict[tuple, int] = {}
        self.body_lits: list[tuple] = []
        nvars = self.n_atoms
        for r in program.rules:
            if r.pos_body & r.neg_body:
                continue
            pos = tuple(sorted(self.table.id(a) for a in r.pos_body))
            neg = tuple(sorted(self.table.id(a) for a in r.neg_body))
            key = (pos, neg)
            if key not in bodies:
                nvars += 1
                bodies[key] = nvars
                self.body_lits.append(key)
            self.rules.append((self.table.id(r.head), pos, neg, bodies[key]))
        self.nvars = nvars

        self.value = [0] * (nvars + 1)
        self.level = [0] * (nvars + 1)
        self.reason: list = [None] * (nvars + 1)
        self.phase = [-1] * (nvars + 1)
        self.activity = [0.0] * (nvars + 1)
        self.seen = [False] * (nvars + 1)
        self.watches: list[list] = [[] for _ in range(2 * nvars + 2)]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.var_inc = 1.0
        self.var_decay = 0.95
        rng = random.Random(seed)
        for v in range(1, nvars + 1):
            self.activity[v] = rng.random() * 1e-5
        self.heap = [(-self.activity[v], v) for v in range(1, nvars + 1)]
        heapq.heapify(self.heap)

        self.by_head: dict[int, list[int]] = {}
        self.by_pos: dict[int, list[int]] = {}
        for idx, (head, pos, _, _) in enumerate(self.rules):
            self.by_head.setdefault(head, []).append(idx)
            for a in pos:
                self.by_pos.setdefault(a, []).append(idx)

        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.n_atoms + 1))
        graph.add_edges_from((head, a) for head, pos, _, _ in self.rules for a in pos)
        self.tight = nx.is_directed_acyclic_graph(graph)
        self.loop_atoms = frozenset() if self.tight else frozenset(
            a for comp in nx.strongly_connected_components(graph)
            for a in comp if len(comp) > 1 or graph.has_edge(a, a))

        self._add_completion(bodies)

    # -- clause construction -------------------------------------------------

    def _add_completion(self, bodies: dict) -> None:
        for (pos, neg), b in bodies.items():
            for a in pos:
                self.add_clause([-b, a])
            for a in neg:
                self.add_clause([-b, -a])
            self.add_clause([b] + [-a for a in pos] + list(neg))
        for atom in range(1, self.n_atoms + 1):
            if atom in self.parameters:
                continue
            support = sorted({self.rules[i][3] for i in self.by_head.get(atom, ())})
            self.add_clause([-atom] + support)
            for b in support:
                self.add_clause([-b, atom])

    def add_clause(self, lits: Iterable[int]) -> bool:
        """Add a permanent clause (solver returns to level 0); False once unsatisfiable."""
        if not self.ok:
            return False
        self._backtrack(0)
        clause: list[int] = []
        present = set()
        for lit in lits:
            if -lit in present:
                return True
            if lit in present:
                continue
            val = self._lit_value(lit)
            if val == 1:
                return True
            if val == -1:
                continue
            present.add(lit)
            clause.append(lit)
        if not clause:
            self.ok = False
            return False
        if len(clause) == 1:
            self._enqueue(clause[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self._attach(clause)
        return True

    def _attach(self, clause: list) -> None:
        self.watches[self._idx(clause[0])].append(clause)
        self.watches[self._idx(clause[1])].append(clause)

    # -- assignment primitives -------------------------------------------------

    @staticmethod
    def _idx(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def _lit_value(self, lit: int) -> int:
        v = self.value[lit] if lit > 0 else -self.value[-lit]
        return v

    def _enqueue(self, lit: int, reason) -> None:
        v = lit if lit > 0 else -lit
        self.value[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _backtrack(self, level: int) -> None:
        if len(self.trail_lim) <= level:
            return
        start = self.trail_lim[level]
        value, reason, phase, activity, heap = self.value, self.reason, self.phase, self.activity, self.heap
        for lit in self.trail[start:]:
            v = lit if lit > 0 else -lit
            phase[v] = value[v]
            value[v] = 0
            reason[v] = None
            heapq.heappush(heap, (-activity[v], v))
        del self.trail[start:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    def _propagate(self):
        value, watches, trail = self.value, self.watches, self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            self.stats.propagations += 1
            false_lit = -p
            ws = watches[2 * false_lit if false_lit > 0 else -2 * false_lit + 1]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                fv = value[first] if first > 0 else -value[-first]
                if fv == 1:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    lv = value[lit] if lit > 0 else -value[-lit]
                    if lv != -1:
                        c[1], c[k] = lit, false_lit
                        watches[2 * lit if lit > 0 else -2 * lit + 1].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if fv == -1:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        return c
                    self._enqueue(first, c)
            del ws[j:]
        return None

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.nvars + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.nvars + 1) if self.value[u] == 0]
            heapq.heapify(self.heap)
        elif self.value[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, conflict: list) -> tuple[list, int]:
        seen, level, reason = self.seen, self.level, self.reason
        current = len(self.trail_lim)
        learnt = [0]
        counter = 0
        clause = conflict
        p = 0
        idx = len(self.trail) - 1
        touched = []
        while True:
            for q in clause:
                if q == p:
                    continue
                v = q if q > 0 else -q
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    touched.append(v)
                    self._bump(v)
                    if level[v] == current:
                        counter += 1
                    else:
                        learnt.append(q)
            while True:
                lit = self.trail[idx]
                idx -= 1
                if seen[lit if lit > 0 else -lit]:
                    break
            p = lit
            counter -= 1
            if counter == 0:
                break
            clause = reason[p if p > 0 else -p]
        learnt[0] = -p
        for v in touched:
            seen[v] = False
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda k: level[abs(learnt[k])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[abs(learnt[1])]

    def _pick_branch(self) -> int:
        heap, value, activity = self.heap, self.value, self.activity
        while heap:
            neg_act, v = heapq.heappop(heap)
            if value[v] == 0 and -neg_act == activity[v]:
                return v
        for v in range(1, self.nvars + 1):
            if value[v] == 0:
                return v
        return 0

    # -- stability ---------------------------------------------------------------

    def _unfounded_loop(self) -> Optional[frozenset]:
        """A loop of true atoms lacking external support, or None if the assignment is stable."""
        value = self.value
        true_atoms = {a for a in range(1, self.n_atoms + 1) if value[a] == 1}
        missing = []
        derived = set()
        queue = [a for a in true_atoms if a in self.parameters]
        for head, pos, neg, _ in self.rules:
            blocked = any(value[a] == 1 for a in neg)
            missing.append(-1 if blocked else len(pos))
            if not blocked and not pos:
                queue.append(head)
        while queue:
            a = queue.pop()
            if a in derived:
                continue
            derived.add(a)
            for idx in self.by_pos.get(a, ()):
                if missing[idx] > 0:
                    missing[idx] -= 1
                    if missing[idx] == 0:
                        queue.append(self.rules[idx][0])
        unfounded = true_atoms - derived
        if not unfounded:
            return None
        graph = nx.DiGraph()
        graph.add_nodes_from(unfounded)
        for a in unfounded:
            for idx in self.by_head.get(a, ()):
                _, pos, neg, _ = self.rules[idx]
                if all(value[p] == 1 for p in pos) and not any(value[n] == 1 for n in neg):
                    graph.add_edges_from((a, p) for p in pos if p in unfounded)
        cond = nx.condensation(graph)
        sinks = [cond.nodes[n]["members"] for n in cond.nodes if cond.out_degree(n) == 0]
        return frozenset(min(sinks, key=min))

    def _loop_clauses(self, loop: frozenset) -> list[list[int]]:
        external = sorted({b for a in loop for idx in self.by_head.get(a, ())
                           for _, pos, _, b in [self.rules[idx]] if not (set(pos) & loop)})
        return [[-a] + external for a in sorted(loop)]

    # -- search --------------------------------------------------------------------

    def _assumption_lits(self, assumptions: Mapping[str, bool]) -> list[int]:
        lits = []
        for name, val in assumptions.items():
            if name not in self.table:
                raise ContractError(f"assumption on atom outside the vocabulary: {name}")
            atom = self.table.id(name)
            lits.append(atom if val else -atom)
        return lits

    def _search(self, assumptions: list[int]) -> Optional[frozenset]:
        if not self.ok:
            return None
        self._backtrack(0)
        if self._propagate() is not None:
            self.ok = False
            return None
        restart_limit = 100.0
        conflicts = 0
        while True:
            conflict = self._propagate()
            if conflict is not None:
                self.stats.conflicts += 1
                conflicts += 1
                if not self.trail_lim:
                    self.ok = False
                    return None
                learnt, back = self._analyze(conflict)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._attach(learnt)
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= self.var_decay
                continue
            if conflicts >= restart_limit:
                self.stats.restarts += 1
                conflicts = 0
                restart_limit *= 1.5
                self._backtrack(0)
                continue
            depth = len(self.trail_lim)
            if depth < len(assumptions):
                lit = assumptions[depth]
                val = self._lit_value(lit)
                if val == -1:
                    self._backtrack(0)
                    return None
                self.trail_lim.append(len(self.trail))
                if val == 0:
                    self._enqueue(lit, None)
                continue
            v = self._pick_branch()
            if v == 0:
                self.stats.candidates += 1
                if not self.tight:
                    loop = self._unfounded_loop()
                    if loop is not None:
                        clauses = self._loop_clauses(loop)
                        self.stats.loop_clauses += len(clauses)
                        for clause in clauses:
                            self.add_clause(clause)
                        if not self.ok:
                            return None
                        conflicts = 0
                        continue
                model = frozenset(self.table.name(a) for a in range(1, self.n_atoms + 1) if self.value[a] == 1)
                self.stats.models += 1
                self._backtrack(0)
                return model
            self.stats.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(v if self.phase[v] == 1 else -v, None)

    # -- public API ------------------------------------------------------------------

    def next_model(self, assumptions: Optional[Mapping[str, bool]] = None) -> Optional[frozenset]:
        """A stable model consistent with ``assumptions`` and not blocked, or None."""
        return self._search(self._assumption_lits(assumptions or {}))

    def has_model_under(self, shared_assignment: Mapping[str, bool]) -> bool:
        return self.next_model(shared_assignment) is not None

    def block(self, assignment: Mapping[str, bool]) -> bool:
        """Exclude every model agreeing with ``assignment``; False once no model remains."""
        return self.add_clause([-lit for lit in self._assumption_lits(assignment)])

    def enumerate(self, limit: Optional[int] = None,
                  projection: Optional[Iterable[str]] = None) -> Iterator[frozenset]:
        """Stable models pairwise distinct on ``projection`` (default: whole vocabulary)."""
        proj = sorted(self.program.vocabulary if projection is None else set(projection))
        if not set(proj) <= self.program.vocabulary:
            raise ContractError("projection must be a subset of the vocabulary")
        count = 0
        while limit is None or count < limit:
            model = self.next_model()
            if model is None:
                return
            count += 1
            yield model
            self.block({a: a in model for a in proj})


def build(program: NormalProgram, seed: int = 0) -> Engine:
    return Engine(program, seed)


def enumerate_models(program: NormalProgram, limit: Optional[int] = None,
                     projection: Optional[Iterable[str]] = None, seed: int = 0) -> list[frozenset]:
    return list(Engine(program, seed).enumerate(limit, projection))
