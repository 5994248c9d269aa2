"""The acceptance suite: nine end-to-end checks with their runtime budgets.

Shared by ``tests/test_acceptance.py`` and ``spandecomp selftest``.  Each
check returns an :class:`Outcome`; ``quick=True`` shrinks the sample sizes and
drops the runtime budgets.
"""
from __future__ import annotations

import os
import random
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from .decomposer import Certificate, decompose_with_certificate, naive_sequential
from .graph import Graph, induced_subgraph, neighbor_set, torso
from .interface import abstraction, boxplus, glue, product
from .io import NameTable, decomposition_to_dict, dump_json
from .pathdec import exact_pathwidth, interval_coloring, make_nice, optimal_path_decomposition, to_interface_word
from .semigroup import evaluate, factorize, verify_factor_tree
from .verification import (brute_force_cmp, connected_graphs, gen_fig1, gen_random_pathdec,
                           validate_suitable)

DENSITIES = (0.1, 0.3, 0.5, 0.7, 1.0)


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} -- {self.detail} ({self.seconds:.1f}s)"


def instance_params(seed: int) -> tuple[int, int, float]:
    """(k, number of bags, density) for the acceptance instance with this seed."""
    rng = random.Random(seed)
    return rng.choice((2, 3)), rng.randint(1, 40), rng.choice(DENSITIES)


@dataclass
class Instance:
    seed: int
    graph: Graph
    certificate: Certificate


@lru_cache(maxsize=None)
def _pipeline_run(count: int) -> tuple[list[Instance], float]:
    start = time.perf_counter()
    out = []
    for seed in range(count):
        k, m, density = instance_params(seed)
        g, p = gen_random_pathdec(k, m, density, seed)
        out.append(Instance(seed, g, decompose_with_certificate(g, p)))
    return out, time.perf_counter() - start


def _is_spanning_tree(g: Graph, f: Graph) -> bool:
    return (f.vertices == g.vertices and f.edges <= g.edges and f.is_connected()
            and len(f.edges) == len(g.vertices) - 1)


def criterion_1(quick: bool = False) -> Outcome:
    count = 30 if quick else 200
    instances, elapsed = _pipeline_run(count)
    bad = []
    for inst in instances:
        d = inst.certificate.decomposition
        report = validate_suitable(inst.graph, d)
        if not report.ok or not _is_spanning_tree(inst.graph, d.forest) or any(
                v not in d.bags[v] for v in inst.graph.vertices):
            bad.append(inst.seed)
    budget_ok = quick or elapsed < 60
    return Outcome(1, "suitable spanning-tree decompositions", not bad and budget_ok,
                   f"{count - len(bad)}/{count} instances valid, failing seeds {bad[:5]}, "
                   f"pipeline {elapsed:.1f}s (budget 60s)", elapsed)


def criterion_2(quick: bool = False) -> Outcome:
    start = time.perf_counter()
    instances, _ = _pipeline_run(30 if quick else 200)
    nodes = 0
    bad = []
    for inst in instances:
        c = inst.certificate
        nodes += len(c.nodes)
        if c.decomposition.width > c.bound or not c.nodes or not all(n.ok for n in c.nodes):
            bad.append(inst.seed)
    return Outcome(2, "width <= 3kh-1 at root and every recursion node", not bad,
                   f"{nodes} node checks over {len(instances)} instances, failing seeds {bad[:5]}",
                   time.perf_counter() - start)


def criterion_3(quick: bool = False) -> Outcome:
    instances, _ = _pipeline_run(30 if quick else 200)
    start = time.perf_counter()
    tables = []
    seen = set()
    for inst in instances:
        t = inst.certificate.table
        if t is not None and id(t) not in seen:
            seen.add(id(t))
            tables.append(t)
    rng = random.Random(3)
    count = 60 if quick else 500
    bad = 0
    worst = 0.0
    for i in range(count):
        t = tables[i % len(tables)]
        word = [rng.randrange(len(t)) for _ in range(rng.randint(1, 200))]
        tree = factorize(word, t)
        worst = max(worst, tree.height / (3 * len(t)))
        if not verify_factor_tree(tree, word, t).ok or tree.value != evaluate(word, t):
            bad += 1
    elapsed = time.perf_counter() - start
    budget_ok = quick or elapsed < 30
    return Outcome(3, "factorization trees verified, height <= 3|S'|", bad == 0 and budget_ok,
                   f"{count - bad}/{count} words over {len(tables)} semigroups, "
                   f"max height/3|S'| = {worst:.4f}", elapsed)


def _split_pairs(rng: random.Random, count: int):
    """Compatible interface-graph pairs cut out of random instances."""
    produced = 0
    seed = 0
    while produced < count:
        seed += 1
        k = rng.randint(1, 3)
        g, p = gen_random_pathdec(k, rng.randint(2, 14), rng.choice(DENSITIES), rng.randrange(10 ** 9))
        nice = make_nice(p, g)
        if len(nice.bags) < 2:
            continue
        word = to_interface_word(g, nice, interval_coloring(g, nice, k), k)
        s, j = sorted(rng.sample(range(len(word)), 2))
        e = rng.randint(j + 1, len(word))
        yield glue(word[s:j]), glue(word[j:e])
        produced += 1


def criterion_4(quick: bool = False) -> Outcome:
    instances, _ = _pipeline_run(30 if quick else 200)
    start = time.perf_counter()
    rng = random.Random(4)
    pools = {}
    for inst in instances:
        t = inst.certificate.table
        if t is not None:
            pools.setdefault(t.elements[0].k, []).append(t.elements)
    count = 200 if quick else 1000
    assoc_bad = 0
    for _ in range(count):
        elements = rng.choice(pools[rng.choice(sorted(pools))])
        x, y, z = (rng.choice(elements) for _ in range(3))
        if boxplus(boxplus(x, y), z) != boxplus(x, boxplus(y, z)):
            assoc_bad += 1
    hom_bad = 0
    for a, b in _split_pairs(rng, count):
        expected = abstraction(glue([a, b]))
        xa, xb = abstraction(a), abstraction(b)
        if boxplus(xa, xb) != expected or product(xa, xb) != expected:
            hom_bad += 1
    elapsed = time.perf_counter() - start
    budget_ok = quick or elapsed < 30
    return Outcome(4, "associativity and homomorphism", assoc_bad == 0 and hom_bad == 0 and budget_ok,
                   f"{count - assoc_bad}/{count} triples associative, {count - hom_bad}/{count} pairs "
                   f"homomorphic", elapsed)


def _random_graph(rng: random.Random, n: int, density: float) -> Graph:
    return Graph(range(n), [e for e in combinations(range(n), 2) if rng.random() < density])


def criterion_5(quick: bool = False) -> Outcome:
    start = time.perf_counter()
    rng = random.Random(5)
    count = 100 if quick else 500
    bad = 0
    for _ in range(count):
        g = _random_graph(rng, rng.randint(0, 12), rng.random())
        x = [v for v in g.vertices if rng.random() < 0.5]
        t = torso(g, x)
        if torso(t, x) != t or not induced_subgraph(g, x).edges <= t.edges:
            bad += 1
    return Outcome(5, "torso idempotence", bad == 0, f"{count - bad}/{count} pairs",
                   time.perf_counter() - start)


def criterion_6(quick: bool = False) -> Outcome:
    start = time.perf_counter()
    naive = {}
    for n in (4, 8, 16):
        g, p = gen_fig1(n)
        naive[n] = naive_sequential(g, p).width
    structured = {}
    for n in (4, 8, 16, 32):
        g, p = gen_fig1(n)
        d = decompose_with_certificate(g, p).decomposition
        if not validate_suitable(g, d).ok:
            structured[n] = None
        else:
            structured[n] = d.width
    elapsed = time.perf_counter() - start
    ok = (all(naive[n] >= n for n in naive) and None not in structured.values()
          and len(set(structured.values())) == 1 and (quick or elapsed < 30))
    return Outcome(6, "naive grows, structured constant on the two-path family", ok,
                   f"naive widths {naive}, structured widths {structured}", elapsed)


def _subsets(vertices):
    vs = sorted(vertices)
    for r in range(len(vs) + 1):
        for combo in combinations(vs, r):
            yield frozenset(combo)


def criterion_7(quick: bool = False) -> Outcome:
    start = time.perf_counter()
    graphs = connected_graphs(5 if quick else 6)
    bad = []
    checks = 0
    for g in graphs:
        c = brute_force_cmp(g)
        for b in _subsets(g.vertices):
            a = g.vertices - b
            bound = max(brute_force_cmp(induced_subgraph(g, a)), brute_force_cmp(induced_subgraph(g, b)))
            checks += 2
            if c > bound + len(neighbor_set(g, b)):
                bad.append((sorted(g.edges), "partition", sorted(b)))
            if c > brute_force_cmp(induced_subgraph(g, g.vertices - b)) + len(b):
                bad.append((sorted(g.edges), "removal", sorted(b)))
        cert = decompose_with_certificate(g, optimal_path_decomposition(g))
        d = cert.decomposition
        checks += 1
        if d.width < c or d.width > cert.bound or not validate_suitable(g, d).ok:
            bad.append((sorted(g.edges), "decompose", d.width))
    elapsed = time.perf_counter() - start
    return Outcome(7, "complexity oracle inequalities and decompose >= cmp",
                   not bad and (quick or elapsed < 600),
                   f"{len(graphs)} graphs, {checks} inequality checks, violations {bad[:3]}", elapsed)


def criterion_8(quick: bool = False) -> Outcome:
    start = time.perf_counter()
    bad = []
    for n in range(1, 11):
        g = Graph(range(n), [(i, i + 1) for i in range(n - 1)])
        expected = 1 if n > 1 else 0
        if exact_pathwidth(g) != expected:
            bad.append(f"P{n}")
    for n in range(4, 9):
        if exact_pathwidth(Graph(range(n), [(i, (i + 1) % n) for i in range(n)])) != 2:
            bad.append(f"C{n}")
    for n in range(1, 7):
        if exact_pathwidth(Graph(range(n), combinations(range(n), 2))) != n - 1:
            bad.append(f"K{n}")
    elapsed = time.perf_counter() - start
    return Outcome(8, "exact pathwidth of paths, cycles, cliques", not bad and (quick or elapsed < 60),
                   f"mismatches {bad}", elapsed)


def _cli(args: list[str], hash_seed: str) -> subprocess.CompletedProcess:
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    src = str(Path(__file__).resolve().parent.parent)
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run([sys.executable, "-m", "spandecomp", *args], env=env,
                          capture_output=True, text=True)


def _cli_outputs(workdir: Path, hash_seed: str, seeds) -> dict[str, bytes]:
    out = {}
    for seed in seeds:
        k, m, density = instance_params(seed)
        base = workdir / f"r{seed}"
        _cli(["gen", "random", "--k", str(k), "--bags", str(m), "--density", str(density), "--seed", str(seed),
              "--out-graph", f"{base}.edges", "--out-pathdec", f"{base}.bags"], hash_seed)
        _cli(["decompose", "--graph", f"{base}.edges", "--pathdec", f"{base}.bags", "--out", f"{base}.json",
              "--dot", f"{base}.dot"], hash_seed)
        for suffix in (".edges", ".bags", ".json", ".dot"):
            path = Path(f"{base}{suffix}")
            out[path.name] = path.read_bytes() if path.exists() else b""
    return out


def criterion_9(quick: bool = False) -> Outcome:
    start = time.perf_counter()
    instances, _ = _pipeline_run(30 if quick else 200)
    # in-process: recompute a slice of the acceptance instances from scratch
    mismatched = []
    for inst in instances[:40 if not quick else 10]:
        k, m, density = instance_params(inst.seed)
        g, p = gen_random_pathdec(k, m, density, inst.seed)
        again = decompose_with_certificate(g, p)
        names = NameTable.identity(g.vertices)
        first = dump_json(decomposition_to_dict(inst.certificate.decomposition, names, inst.certificate.meta()))
        second = dump_json(decomposition_to_dict(again.decomposition, names, again.meta()))
        if first != second:
            mismatched.append(inst.seed)
    # across processes with different hash seeds, through the command line
    seeds = range(3) if quick else range(8)
    with tempfile.TemporaryDirectory() as tmp:
        a_dir, b_dir = Path(tmp, "a"), Path(tmp, "b")
        a_dir.mkdir()
        b_dir.mkdir()
        a = _cli_outputs(a_dir, "1", seeds)
        b = _cli_outputs(b_dir, "2", seeds)
    cli_ok = a == b and all(a.values())
    return Outcome(9, "bit-identical outputs for identical seeds", not mismatched and cli_ok,
                   f"in-process mismatches {mismatched}, {len(a)} CLI files identical across processes: {cli_ok}",
                   time.perf_counter() - start)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9)


def run_all(quick: bool = False, echo=print) -> list[Outcome]:
    results = []
    for check in CRITERIA:
        outcome = check(quick)
        echo(outcome.line())
        results.append(outcome)
    return results
