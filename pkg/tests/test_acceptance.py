"""Acceptance criteria, one test each, each printing a single PASS/FAIL line.

Dataset-dependent criteria look for the benchmark networks in
``$LOCSEP_DATA_DIR`` (default ``./data``) and fail with an explanation when
a network is missing.
"""

import os
import random
import subprocess
import sys
import time
import warnings

import networkx as nx

import oracles
from conftest import ACCEPTANCE_LINES, DATA, ROOT
from locsep.datasets import DATASETS, locate
from locsep.generators import complete_graph, disjoint_union, gnp_random_graph, road_like_graph
from locsep.graph import Graph, articulation_points, duplicate_graph, load_edge_list, preprocess_reduce
from locsep.harness import RunConfig, run
from locsep.metrics import Cover, density, overlapping_modularity, standard_modularity
from locsep.separators import (
    DegenerateDecompositionWarning,
    decompose,
    find_local_1_separators,
    find_local_2_separators,
)


def verdict(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def random_partition(rng, n):
    parts = rng.randint(1, max(1, n // 2))
    groups = {}
    for v in range(n):
        groups.setdefault(rng.randrange(parts), set()).add(v)
    return list(groups.values())


def test_partition_equivalence():
    rng = random.Random(2024)
    start = time.perf_counter()
    worst, graphs = 0.0, 0
    while graphs < 200:
        n = rng.randint(2, 64)
        g = gnp_random_graph(n, rng.uniform(0.1, 0.5), seed=rng.getrandbits(32))
        if g.edge_count == 0:
            continue
        graphs += 1
        cover = Cover.from_sets(g, random_partition(rng, n))
        worst = max(worst, abs(overlapping_modularity(g, cover) - standard_modularity(g, cover)))
    elapsed = time.perf_counter() - start
    verdict(
        "partition-equivalence",
        worst <= 1e-10 and elapsed < 10,
        f"200 graphs, max |Q_ov - Q| = {worst:.3g} (tol 1e-10), {elapsed:.2f}s (limit 10s)",
    )


def test_density_doubling():
    rng = random.Random(77)
    start = time.perf_counter()
    worst, checked = 0.0, 0
    for _ in range(50):
        n = rng.randint(2, 32)
        g = gnp_random_graph(n, rng.uniform(0.1, 0.6), seed=rng.getrandbits(32))
        # unit belonging: disjoint communities, not necessarily covering V
        members = [v for v in range(n) if rng.random() < 0.8] or [0]
        groups = {}
        for v in members:
            groups.setdefault(rng.randrange(1 + n // 4), set()).add(v)
        cover = Cover.from_sets(g, groups.values())
        dup = duplicate_graph(g)
        dup_cover = Cover.from_sets(dup, [c | {v + n for v in c} for c in cover.communities])
        for idx, c in enumerate(cover.communities):
            base = density(g, cover, idx)
            doubled = density(dup, dup_cover, c | {v + n for v in c})
            worst = max(worst, abs(doubled - 2 * base))
            checked += 1
    elapsed = time.perf_counter() - start
    verdict(
        "density-doubling",
        worst <= 1e-12 and elapsed < 5,
        f"50 graphs, {checked} communities, max |beta' - 2 beta| = {worst:.3g} (tol 1e-12), "
        f"{elapsed:.2f}s (limit 5s)",
    )


def _separator_oracle_graphs():
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() and nx.is_connected(h):
            yield Graph.from_edges(h.number_of_nodes(), list(h.edges()))
    rng = random.Random(12)
    made = 0
    while made < 100:
        n = rng.randint(2, 12)
        g = gnp_random_graph(n, rng.uniform(1.2, 2.5) / n, seed=rng.getrandbits(32))
        if nx.is_connected(oracles.to_nx(g)):
            made += 1
            yield g


def test_separator_oracle():
    start = time.perf_counter()
    total, finder_mismatch, limit_fail, sound_fail = 0, [], [], []
    for g in _separator_oracle_graphs():
        total += 1
        n = g.vertex_count
        diameter = nx.diameter(oracles.to_nx(g)) if n > 1 else 0
        cut = articulation_points(g)
        if set(find_local_1_separators(g, max(diameter, 1)).members) != cut:
            limit_fail.append(g)
        if set(find_local_1_separators(g, max(n - 2, 1)).members) != cut:
            sound_fail.append(g)
        for d in (1, 2, 3):
            if (
                list(find_local_1_separators(g, d).members) != oracles.local_1_separators(g, d)
                or list(find_local_2_separators(g, d).members) != oracles.local_2_separators(g, d)
            ):
                finder_mismatch.append((g, d))
    elapsed = time.perf_counter() - start
    example = ""
    if limit_fail:
        g = min(limit_fail, key=lambda x: (x.vertex_count, x.edge_count))
        example = f" (smallest counterexample: n={g.vertex_count}, edges={list(g.edges())})"
    verdict(
        "separator-oracle",
        not finder_mismatch and not limit_fail and elapsed < 60,
        f"{total} connected graphs; brute-force mismatches at d in 1..3: {len(finder_mismatch)}; "
        f"local1 at d = diameter differs from articulation points on {len(limit_fail)} graphs"
        f"{example}; at d = n-2: {len(sound_fail)}; {elapsed:.1f}s (limit 60s)",
    )


def _invariant_inputs():
    """(label, graph or None, reason) for every benchmark network."""
    for ds in DATASETS.values():
        path = locate(ds.name)
        if path is not None:
            g, _ = load_edge_list(path.read_text(encoding="utf-8"))
            if ds.name == "nrw":
                g, _ = preprocess_reduce(g)
            yield ds.name, g, ""
        elif ds.name == "nrw":
            g, _ = preprocess_reduce(road_like_graph())
            yield "nrw (synthetic road substitute)", g, ""
        else:
            yield ds.name, None, f"missing (expected one of {', '.join(ds.filenames)})"


def test_decomposition_invariants():
    start = time.perf_counter()
    checked, broken, missing = [], [], []
    for label, g, reason in _invariant_inputs():
        if g is None:
            missing.append(f"{label} {reason}")
            continue
        for d in range(1, 11):
            s1 = find_local_1_separators(g, d)
            for seps in (s1, find_local_2_separators(g, d, one_separators=s1)):
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", DegenerateDecompositionWarning)
                    problems = decompose(g, seps).violations()
                if problems:
                    broken.append(f"{label} order {seps.order} d={d}: {problems[0]}")
        checked.append(f"{label} ({g.vertex_count}/{g.edge_count})")
    elapsed = time.perf_counter() - start
    verdict(
        "decomposition-invariants",
        not broken and not missing and elapsed < 300,
        f"checked orders 1,2 at d=1..10 on {', '.join(checked) or 'nothing'}; "
        f"violations: {len(broken)}{' e.g. ' + broken[0] if broken else ''}; "
        f"unavailable: {'; '.join(missing) or 'none'}; {elapsed:.0f}s (limit 300s)",
    )


def _reproduction_rows():
    path = ROOT / "REPRODUCTION.md"
    if not path.is_file():
        return set()
    rows = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        cells = [c.strip() for c in line.strip().strip("|").split("|")]
        if len(cells) > 2 and cells[0] in DATASETS and cells[1] in ("local1", "local2"):
            rows.add((cells[0], cells[1]))
    return rows


def test_table2_diagnostic():
    needed = {(name, m) for name in DATASETS for m in ("local1", "local2")}
    covered = needed <= _reproduction_rows()
    path = locate("dolphins")
    if path is None:
        verdict(
            "table2-diagnostic",
            False,
            "dolphins network unavailable, so |B| and Q_ov at local1 d=3 were not computed "
            f"(target |B|=4, Q_ov=0.4632+-0.02); REPRODUCTION.md covers all 10 local rows: {covered}",
        )
        return
    report = run(RunConfig(str(path), "local1", radius=3))
    near = report.bag_count == 4 and abs(report.q_ov - 0.4632) <= 0.02
    verdict(
        "table2-diagnostic",
        covered,
        f"dolphins local1 d=3: |B|={report.bag_count} (target 4), Q_ov={report.q_ov:.4f} "
        f"(target 0.4632+-0.02, {'within' if near else 'outside'} target, diagnostic only); "
        f"REPRODUCTION.md covers all 10 local rows: {covered}",
    )


def test_modularity_pathology():
    rng = random.Random(5)
    worst, graphs = 0.0, 0
    while graphs < 20:
        n = rng.randint(2, 40)
        g = gnp_random_graph(n, rng.uniform(0.1, 0.5), seed=rng.getrandbits(32))
        if g.edge_count == 0:
            continue
        graphs += 1
        worst = max(worst, abs(standard_modularity(g, Cover.from_sets(g, [range(n)]))))
    # two disjoint triangles: merging the two (non-adjacent) communities
    g = disjoint_union(complete_graph(3), complete_graph(3))
    split = standard_modularity(g, Cover.from_sets(g, [range(3), range(3, 6)]))
    merged = standard_modularity(g, Cover.from_sets(g, [range(6)]))
    verdict(
        "modularity-pathology",
        worst <= 1e-12 and merged < split,
        f"max |Q({{V}})| over 20 graphs = {worst:.3g} (formula gives 0, not the maximum 1); "
        f"two triangles: Q split = {split:.4f} > Q merged = {merged:.4f}",
    )


def test_performance_local1_road():
    g, _ = preprocess_reduce(road_like_graph())
    start = time.perf_counter()
    deco = decompose(g, find_local_1_separators(g, 10))
    elapsed = time.perf_counter() - start
    verdict(
        "performance",
        elapsed < 60 and 8000 <= g.vertex_count <= 10000,
        f"local1 + decompose at d=10 on preprocessed road graph n={g.vertex_count}, "
        f"m={g.edge_count}: {len(deco)} bags in {elapsed:.2f}s (limit 60s, {os.cpu_count()} cpu)",
    )


def test_compare_determinism(tmp_path):
    minnesota = DATA / "minnesota_road.edges"
    confs = []
    for i, body in enumerate([
        f"input = {minnesota}\nmethod = local1\nradius = 5\n",
        f"input = {minnesota}\nmethod = local2\nradius = 3\n",
        f"input = {minnesota}\nmethod = lp\nseed = 7\n",
    ]):
        path = tmp_path / f"run{i}.conf"
        path.write_text(body, encoding="utf-8")
        confs += ["--config", str(path)]
    outputs = []
    for attempt in range(2):
        out = tmp_path / f"table{attempt}.csv"
        subprocess.run(
            [sys.executable, "-m", "locsep", "compare", *confs, "--out", str(out)], check=True
        )
        outputs.append(out.read_bytes())
    same = outputs[0] == outputs[1]
    rows = outputs[0].count(b"\n") - 1
    verdict(
        "compare-determinism",
        same and rows == 3,
        f"two compare invocations, {rows} rows, "
        f"byte-identical CSV: {same}",
    )
