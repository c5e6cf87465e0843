"""End-to-end acceptance runs. Each test records one pass/fail line for the terminal summary."""

import json
import os
import random
import subprocess
import sys
import textwrap
import time
from itertools import combinations
from math import ceil, comb, log2

import pytest

from chroma.colorings import TupleColoring
from chroma.edge_coloring import (Poset, build_conflict_graph_J, color_bottomless_edges,
                                  color_disk_edges, color_halfplane_edges, color_rectangle_edges,
                                  hasse_arc_colors, hasse_edge_coloring)
from chroma.families import (Hypergraph, axis_rect_hyperedges_bruteforce, canonical_hyperedges,
                             h_region_reduction, is_shrinkable, members)
from chroma.generate import convex_points, random_points
from chroma.geometry import PointSet
from chroma.kinds import AXIS_RECT, BOTTOMLESS, BOX, DISK, HALFPLANE, HalfspaceSpec, hregion
from chroma.tuple_coloring import (SubsetPalette, box_threshold, color_pairs_boxes,
                                   color_pairs_rectangles_optimal, color_tuples_h_regions,
                                   h_region_threshold, lift_proper_two_coloring, lift_tuples,
                                   polychromatic_tuples_from_vertex_coloring, ramsey_number,
                                   verify_no_local_mapping, vertex_lift_threshold)
from chroma.verify import (check_edge_coloring, check_prefix_property, check_tuple_coloring,
                           exhaustive_impossibility, find_bottomless_counterexample, planarity_check,
                           verify_edge_coloring, verify_tuple_coloring)

from conftest import ACCEPTANCE
from oracles import orthant_oracle


def record(num, desc, ok, detail):
    ACCEPTANCE[num] = (bool(ok), desc, detail)
    assert ok, f"criterion {num} ({desc}): {detail}"


def sizes(count, lo, hi, seed):
    rng = random.Random(seed)
    return [rng.randint(lo, hi) for _ in range(count)]


def test_halfplane_coloring():
    start = time.perf_counter()
    failures = []
    for seed, n in enumerate(sizes(500, 3, 25, 1)):
        S = random_points(n, seed, 2, HALFPLANE)
        if not verify_edge_coloring(S, HALFPLANE, color_halfplane_edges(S), 3, "edges").passed:
            failures.append(seed)
    elapsed = time.perf_counter() - start
    record(1, "halfplane 2-coloring, 500 sets", not failures and elapsed < 30,
           f"failures={failures[:5]} time={elapsed:.1f}s")


def test_halfplane_tightness():
    result = {n: exhaustive_impossibility(convex_points(n), HALFPLANE, 2, 2, "edges", "edges")
              for n in (3, 4, 5)}
    expected = {3: True, 4: False, 5: True}
    record(2, "halfplane tightness on triangle, square, pentagon", result == expected,
           f"impossible: triangle={result[3]} square={result[4]} pentagon={result[5]}")


def test_bottomless_coloring():
    failures, broken = [], []
    for seed, n in enumerate(sizes(500, 1, 25, 3)):
        S = random_points(n, seed, 2, BOTTOMLESS)
        steps = []
        col = color_bottomless_edges(S, on_step=steps.append)
        for step in steps:
            c = step.colors
            if any(c[a] == c[a + 1] == c[a + 2] for a in range(len(c) - 2)):
                broken.append((seed, step.inserted))
        if not verify_edge_coloring(S, BOTTOMLESS, col, 4, "points").passed:
            failures.append(seed)
    record(3, "bottomless 2-coloring, 500 sets, sweep invariant", not failures and not broken,
           f"verification failures={failures[:5]} invariant breaks={broken[:5]}")


def test_bottomless_tightness():
    W = find_bottomless_counterexample()
    impossible = exhaustive_impossibility(W, BOTTOMLESS, 3, 2, "edges", "points")
    record(4, "bottomless tightness witness", len(W) == 5 and impossible,
           f"witness={[tuple(map(int, p)) for p in W.points]} impossible={impossible}")


def random_poset(rng, n):
    if rng.random() < 0.5:
        pts = list(zip(rng.sample(range(10 * n), n), rng.sample(range(10 * n), n)))
        return Poset.dominance(PointSet.of(pts), rng.choice([(1, 1), (1, -1)]))
    perm = list(range(n))
    rng.shuffle(perm)
    p = rng.choice([0.05, 0.2, 0.5])
    return Poset(n, [(perm[a], perm[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def test_hasse_coloring():
    rng = random.Random(5)
    bad = []
    for trial in range(200):
        n = rng.randint(1, 64)
        P = random_poset(rng, n)
        arcs = hasse_arc_colors(P)
        used = hasse_edge_coloring(P).colors_used
        if len(used) > (ceil(log2(n)) if n > 1 else 0):
            bad.append((trial, "palette"))
        out_of = {}
        for (x, y), c in arcs.items():
            out_of.setdefault(x, []).append(c)
        for (x, y), c in arcs.items():
            if c in out_of.get(y, []):
                bad.append((trial, "path", x, y))
                break
    record(5, "Hasse arc coloring, 200 posets", not bad, f"violations={bad[:5]}")


def test_rectangle_coloring():
    bad = []
    brute_checked = 0
    for seed, n in enumerate(sizes(200, 2, 64, 7)):
        S = random_points(n, seed, 2, AXIS_RECT)
        col = color_rectangle_edges(S)
        if len(col.colors_used) > 2 * ceil(log2(n)):
            bad.append((seed, "palette"))
        if not verify_edge_coloring(S, AXIS_RECT, col, 3, "points").passed:
            bad.append((seed, "verify"))
        if n <= 14:
            H = axis_rect_hyperedges_bruteforce(S)
            brute_checked += 1
            if H != canonical_hyperedges(S, AXIS_RECT) or not check_edge_coloring(H, col, 3).passed:
                bad.append((seed, "brute force"))
    record(6, "rectangle Delaunay-edge coloring, 200 sets", not bad,
           f"violations={bad[:5]} brute-force cross-checks={brute_checked}")


def test_disk_coloring():
    bad = []
    for seed, n in enumerate(sizes(200, 1, 15, 11)):
        S = random_points(n, seed, 2, DISK)
        if not planarity_check(build_conflict_graph_J(S)):
            bad.append((seed, "planarity"))
        if not is_shrinkable(canonical_hyperedges(S, DISK))[0]:
            bad.append((seed, "shrinkable"))
        col = color_disk_edges(S)
        if not col.colors_used <= {1, 2, 3, 4}:
            bad.append((seed, "palette"))
        if not verify_edge_coloring(S, DISK, col, 3, "points").passed:
            bad.append((seed, "verify"))
    record(7, "disk 4-coloring, 200 sets", not bad, f"violations={bad[:5]}")


def test_rectangle_pairs():
    failures = []
    for seed, n in enumerate(sizes(500, 1, 30, 13)):
        S = random_points(n, seed, 2, AXIS_RECT)
        if not verify_tuple_coloring(S, AXIS_RECT, color_pairs_rectangles_optimal(S), 3, "proper").passed:
            failures.append(seed)
    two = PointSet.of([(0, 0), (1, 1)])
    impossible = exhaustive_impossibility(two, AXIS_RECT, 2, 2, "pairs", "points")
    record(8, "rectangle pair 2-coloring, 500 sets; m=2 impossible", not failures and impossible,
           f"failures={failures[:5]} two-point impossibility={impossible}")


@pytest.mark.parametrize("d,k", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_box_pairs(d, k):
    bad = []
    m = box_threshold(k, d)
    for seed, n in enumerate(sizes(100, 1, 40, 17 + 10 * d + k)):
        S = random_points(n, seed, d, BOX)
        col = color_pairs_boxes(S, k)
        H = canonical_hyperedges(S, BOX)
        if not check_tuple_coloring(H, col, m, "polychromatic").passed:
            bad.append((seed, "polychromatic"))
        if check_prefix_property(H, col) is not None:
            bad.append((seed, "prefix"))
    key = (d, k)
    prev = ACCEPTANCE.get(9, (True, "", ""))
    parts = [p for p in prev[2].split("; ") if p]
    parts.append(f"(d,k)={key} m={m} violations={bad[:3]}")
    ACCEPTANCE[9] = (prev[0] and not bad, "box pair coloring and prefix property", "; ".join(parts))
    assert not bad, f"criterion 9 at {key}: {bad[:5]}"


def random_normals(rng, h):
    normals = set()
    while len(normals) < h:
        a = (rng.randint(-5, 5), rng.randint(-5, 5))
        if a != (0, 0):
            normals.add(a)
    return sorted(normals)


def test_h_regions():
    rng = random.Random(19)
    bad = []
    checked = 0
    for trial in range(60):
        h = 1 + trial % 3
        A = random_normals(rng, h)
        fam = hregion(*A)
        n = rng.randint(h, 30)
        S = random_points(n, 1000 + trial, 2, fam)
        m = h_region_threshold(2, 2, h)
        col = color_tuples_h_regions(S, fam.halfspaces, 2, 2)
        H = canonical_hyperedges(S, fam)
        if not check_tuple_coloring(H, col, m, "polychromatic").passed:
            bad.append((trial, "polychromatic"))
        image = h_region_reduction(S, fam.halfspaces)
        # each H-region is the preimage of an intersection of axis-parallel halfspaces (y)_i <= beta
        if H.masks != orthant_oracle(image.points):
            bad.append((trial, "orthant identity"))
        if not H.masks <= canonical_hyperedges(image, BOX).masks:
            bad.append((trial, "box containment"))
        # with both orientations of every normal the reduced regions are exactly the boxes
        if n <= 18:
            sym = hregion(*[a for v in A[:2] for a in (v, (-v[0], -v[1]))])
            if canonical_hyperedges(S, sym, check=False).masks != canonical_hyperedges(
                    h_region_reduction(S, [HalfspaceSpec(v) for v in A[:2]]), BOX).masks:
                bad.append((trial, "symmetric box identity"))
        checked += 1
    record(10, "H-region tuple coloring and reduction identity", not bad,
           f"sets={checked} violations={bad[:5]}")


def test_lift_to_triples():
    failures = []
    m = box_threshold(2, 2)
    axis = HalfspaceSpec((1, 0))
    for seed, n in enumerate(sizes(100, 3, 24, 23)):
        S = random_points(n, seed, 2, BOX)
        triples = lift_tuples(color_pairs_boxes(S, 2), S, axis, 3)
        if not verify_tuple_coloring(S, BOX, triples, m + 1, "polychromatic").passed:
            failures.append(seed)
    record(11, "depth-order lift of box pairs to triples", not failures, f"m'={m + 1} failures={failures[:5]}")


def random_hypergraph(rng, n, count, min_size=1):
    edges = set()
    for _ in range(count):
        size = rng.randint(min_size, n)
        edges.add(tuple(sorted(rng.sample(range(n), size))))
    return Hypergraph.from_edges(n, edges)


def smallest_valid_threshold(H, ok):
    """1 + the size of the largest hyperedge the base coloring fails on."""
    return 1 + max((e.bit_count() for e in H.masks if not ok(members(e))), default=0)


def test_vertex_coloring_lift():
    rng = random.Random(29)
    bad = []
    nonvacuous = 0
    for trial in range(100):
        k = 1 + trial % 3
        n = rng.randint(k, 10)
        c = [rng.randint(1, k) for _ in range(n)]
        H = random_hypergraph(rng, n, rng.randint(3, 15))
        m = smallest_valid_threshold(H, lambda e: len({c[v] for v in e}) == k)
        lifted = polychromatic_tuples_from_vertex_coloring(c, 2, k)
        k_prime = comb(k, 2) + 1
        if lifted.k != k_prime or SubsetPalette(k, 2).size != k_prime:
            bad.append((trial, "palette size"))
        mp = vertex_lift_threshold(m, k, 2)
        if not check_tuple_coloring(H, lifted, mp, "polychromatic").passed:
            bad.append((trial, "polychromatic"))
        nonvacuous += any(e.bit_count() >= mp for e in H.masks)
    record(12, "subset-palette lift of vertex colorings, 100 hypergraphs", not bad,
           f"violations={bad[:5]} hypergraphs with a checked hyperedge={nonvacuous}")


def test_no_local_mapping():
    start = time.perf_counter()
    valid = verify_no_local_mapping(8)
    elapsed = time.perf_counter() - start
    record(13, "no multiset rule lifts pair colorings", valid == 0 and elapsed < 60,
           f"{valid} / {3 ** 10} valid, time={elapsed:.2f}s")


def test_ramsey_lift():
    R1, R2 = ramsey_number(1, 2, 2), ramsey_number(2, 2, 3)
    rng = random.Random(31)
    bad = []
    nonvacuous = 0
    for trial in range(100):
        t, tp, R = (1, 2, R1) if trial % 2 == 0 else (2, 3, R2)
        n = rng.randint(tp, 9)
        colors = [rng.randint(1, 2) for _ in range(comb(n, t))]
        base = TupleColoring(n, t, 2, dict(zip(combinations(range(n), t), colors)))
        H = random_hypergraph(rng, n, rng.randint(3, 12))
        m = smallest_valid_threshold(H, lambda e: len({base[T] for T in combinations(e, t)}) >= 2)
        mp = max(m, R)
        if not check_tuple_coloring(H, lift_proper_two_coloring(base, tp), mp, "proper").passed:
            bad.append(trial)
        nonvacuous += any(e.bit_count() >= mp for e in H.masks)
    record(14, "Ramsey numbers and red/blue lift", R1 == 3 and R2 == 6 and not bad,
           f"R(1,2,2)={R1} R(2,2,3)={R2} failures={bad[:5]} hypergraphs with a checked hyperedge={nonvacuous}")


RUN_ALL = textwrap.dedent("""
    import json, sys
    from pathlib import Path
    from chroma.cli import main
    out = Path(sys.argv[1])
    def run(*a):
        code = main([str(x) for x in a])
        shown = [x.name if isinstance(x, Path) else str(x) for x in a]
        with (out / "codes.txt").open("a") as fh:
            fh.write(" ".join(shown) + f" -> {code}\\n")
    run("gen", "random", "--n", 14, "--seed", 42, "--family", "disk", "--out", out / "pts.json")
    run("gen", "random", "--n", 20, "--seed", 42, "--dim", 3, "--out", out / "pts3.json")
    (out / "base.json").write_text(json.dumps({"t": 1, "k": 2, "n": 5,
        "tuples": [[0, 1], [1, 2], [2, 1], [3, 2], [4, 1]]}))
    (out / "h.json").write_text(json.dumps({"n": 5, "edges": [[0, 1, 2], [1, 2, 3, 4], [0, 1, 2, 3, 4]]}))
    jobs = [("thm1", "disk", 3, "points", None, "pts"), ("thm2", "halfplane", 3, "edges", None, "pts"),
            ("thm3", "bottomless", 4, "points", None, "pts"), ("cor-rect", "axisrect", 3, "points", None, "pts"),
            ("thm8", "axisrect", 3, "points", "proper", "pts"), ("thm9", "boxd", 17, "points", None, "pts3"),
            ("thm6", "boxd", 18, "points", None, "pts3")]
    for alg, fam, thr, kind, mode, src in jobs:
        col = out / f"{alg}.json"
        run("color", "--in", out / f"{src}.json", "--alg", alg, "--t", 3 if alg == "thm6" else 2, "--out", col)
        extra = ["--mode", mode] if mode else []
        run("verify", "--in", out / f"{src}.json", "--coloring", col, "--family", fam, "--threshold", thr,
            "--threshold-kind", kind, *extra, "--out", out / f"{alg}.report.json")
        if src == "pts" and alg != "thm8":
            run("svg", "--in", out / "pts.json", "--coloring", col, "--out", out / f"{alg}.svg")
    for alg, mode in (("prop1", "proper"), ("prop2", "polychromatic")):
        col = out / f"{alg}.json"
        run("color", "--alg", alg, "--base", out / "base.json", "--t", 2, "--out", col)
        run("verify", "--hypergraph", out / "h.json", "--coloring", col, "--threshold", 3, "--mode", mode,
            "--out", out / f"{alg}.report.json")
""")


def test_determinism(tmp_path):
    outputs = []
    for hashseed in ("1", "2"):
        d = tmp_path / f"run{hashseed}"
        d.mkdir()
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        subprocess.run([sys.executable, "-c", RUN_ALL, str(d)], check=True, env=env)
        outputs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    a, b = outputs
    differing = sorted(name for name in a if a[name] != b.get(name))
    codes = a["codes.txt"].decode().splitlines()
    nonzero = [line for line in codes if not line.endswith("-> 0")]
    record(15, "byte-identical CLI outputs across runs", a.keys() == b.keys() and not differing and not nonzero,
           f"files={len(a)} differing={differing} nonzero exits={nonzero}")
