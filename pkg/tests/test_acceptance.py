"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; conftest prints them in the pytest
summary. Running this file directly prints the same lines.
"""

from __future__ import annotations

import random
import sys
import time

import pytest

from leavitt.algebra import LeavittPathAlgebra, dimension
from leavitt.catalog import chain_of_roses, clock, infinite_clock_truncation, isolated_vertex, loop_with_tail, rose, single_edge, two_cycle
from leavitt.dualgraph import dual
from leavitt.local_global import build_b, build_ef, membership, verify_decomposition, verify_theta_homomorphism
from leavitt.quiver import has_no_exits, is_cofinal
from leavitt.sampling import (
    random_acyclic_graph,
    random_cyclic_graph,
    random_element,
    random_graph,
    random_homogeneous_element,
    random_no_exit_graph,
)
from leavitt.structure import (
    bezout_lemma_harness,
    directly_finite_decider,
    is_graded_ideal,
    laurent_nonmembership,
    left_ideal_basis,
    matricial_shape,
    principal_generator_search,
    regularity_witness,
    verify_principal,
)
from corpus import element_families, graph_subset_pairs

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, passed: bool, detail: str) -> None:
    RESULTS[n] = (passed, detail)
    print(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}")


def _edges(g):
    return {e.id for e in g.edges}


def criterion_1():
    problems = []
    ef1 = build_ef(rose(3), ["y1"]).graph
    if set(ef1.vertices) != {"y1", "v"} or _edges(ef1) != {"(y1,y1)", "(y1,v)"}:
        problems.append("rose")
    ef2 = build_ef(chain_of_roses(3), ["f1", "g1"]).graph
    if set(ef2.vertices) != {"f1", "g1"} or _edges(ef2) != {"(f1,f1)", "(f1,g1)", "(g1,f1)", "(g1,g1)"}:
        problems.append("chain of roses")
    ef3 = build_ef(infinite_clock_truncation(), ["f"]).graph
    if set(ef3.vertices) != {"f", "w"} or _edges(ef3) != {"(f,w)"}:
        problems.append("clock")
    if not (is_cofinal(rose(3)) and not is_cofinal(ef1)):
        problems.append("rose cofinality")
    if not (not is_cofinal(chain_of_roses(3)) and is_cofinal(ef2)):
        problems.append("chain cofinality")
    return not problems, "rose, chain of roses and clock E_F exact; 2 cofinality verdicts" + (f"; mismatches: {problems}" if problems else "")


def criterion_2():
    cases = [(rose(3), ["y1"]), (chain_of_roses(3), ["f1", "g1"]), (infinite_clock_truncation(), ["f"])]
    cases += list(graph_subset_pairs(200, seed=0))
    failures = []
    for g, F in cases:
        rep = verify_theta_homomorphism(build_ef(g, F))
        if not rep.ok:
            failures.append((g.to_text(), F, [c.name for c in rep.failures]))
    return not failures, f"{len(cases)} (graph, F) cases, {len(failures)} failures" + (f"; first {failures[0]}" if failures else "")


def criterion_3():
    failures = []
    n = 0
    for A, els in element_families(200, seed=0):
        n += 1
        b = build_b(els)
        rep = verify_decomposition(b, 4)
        if not all(u * v == 0 for w, u in b.s4_idempotents.items() for x, v in b.s4_idempotents.items() if w != x):
            rep.add("u_mutually_orthogonal", False)
        for a in els:
            if membership(b, a, a.max_length() + 2) is None:
                rep.add(f"membership {a}", False)
        if not rep.ok:
            failures.append((A.graph.to_text(), [str(a) for a in els], [c.name for c in rep.failures]))
    return not failures, f"{n} families at n = 4, {len(failures)} failures" + (f"; first {failures[0]}" if failures else "")


def criterion_4():
    rng = random.Random(4)
    bad_witness = bad_dim = 0
    for _ in range(100):
        g = random_acyclic_graph(rng, 6, 9)
        A = LeavittPathAlgebra(g)
        if dimension(g) != sum(k * k for k in matricial_shape(g).k_blocks):
            bad_dim += 1
        for _ in range(20):
            x = random_element(A, rng, 4, 3)
            y = regularity_witness(x)
            if y is None or x * y * x != x:
                bad_witness += 1
    not_claimed = 0
    for _ in range(50):
        A = LeavittPathAlgebra(random_cyclic_graph(rng, 6, 9))
        x = A.one() + A.path([A.graph.edges[-1].id])
        try:
            regularity_witness(x)
        except ValueError:
            not_claimed += 1
    ok = bad_witness == 0 and bad_dim == 0 and not_claimed == 50
    return ok, f"100 acyclic graphs x 20 witnesses: {bad_witness} failures, {bad_dim} dimension mismatches; {not_claimed}/50 cyclic graphs refuse non-homogeneous search"


def criterion_5():
    rng = random.Random(5)
    disagree = bad_cert = nos = 0
    for _ in range(200):
        g = random_graph(rng, 6, 9)
        d = directly_finite_decider(LeavittPathAlgebra(g))
        if d.directly_finite != has_no_exits(g):
            disagree += 1
        if not d.directly_finite:
            nos += 1
            if d.x * d.y != d.u or d.y * d.x == d.u:
                bad_cert += 1
    R = LeavittPathAlgebra(rose(2))
    d = directly_finite_decider(R)
    fixture = (
        d.x == R.ghost("y1")
        and d.y == R.edge("y1")
        and d.x * d.y == R.vertex("v")
        and d.y * d.x == R.parse("v - y2 y2*")
    )
    ok = disagree == 0 and bad_cert == 0 and fixture
    return ok, f"200 graphs ({nos} 'no'): {disagree} disagreements, {bad_cert} bad certificates; rose-2 fixture {'ok' if fixture else 'wrong'}"


def criterion_6():
    rng = random.Random(6)
    non_graded = []
    for i in range(100):
        A = LeavittPathAlgebra(random_acyclic_graph(rng, 5, 7))
        gens = [random_element(A, rng, 3, 2) for _ in range(rng.randint(1, 2))]
        side = rng.choice(["left", "right"])
        ok, witness = is_graded_ideal(left_ideal_basis(A, gens, side))
        if not ok:
            non_graded.append((i, side, [str(x) for x in gens], str(witness[0]), witness[1]))
    R = LeavittPathAlgebra(rose(1))
    cert = laurent_nonmembership(R, R.parse("v + y1"), R.vertex("v"), "y1")
    # homogeneous generators always give graded ideals; kept as a control
    homog_bad = 0
    for _ in range(50):
        A = LeavittPathAlgebra(random_acyclic_graph(rng, 5, 7))
        gens = [random_homogeneous_element(A, rng, 3, 2) for _ in range(rng.randint(1, 2))]
        if not is_graded_ideal(left_ideal_basis(A, gens, rng.choice(["left", "right"])))[0]:
            homog_bad += 1
    detail = (
        f"{len(non_graded)}/100 random one-sided ideals not graded"
        + (f" (first: #{non_graded[0][0]} {non_graded[0][1]} ideal of {non_graded[0][2]}, degree {non_graded[0][4]} part of {non_graded[0][3]} outside)" if non_graded else "")
        + f"; homogeneous-generated control {50 - homog_bad}/50 graded; rose-1 certificate {'ok' if cert else 'failed'}"
    )
    return not non_graded and cert and homog_bad == 0, detail


def criterion_7():
    rng = random.Random(7)
    search_fail = harness_fail = 0
    worst = 0
    for _ in range(50):
        A = LeavittPathAlgebra(random_acyclic_graph(rng, 5, 7))
        gens = [random_element(A, rng, 3, 2) for _ in range(rng.randint(2, 3))]
        x, used = principal_generator_search(A, gens, trials=32, seed=0)
        worst = max(worst, used)
        if x is None or not verify_principal(A, gens, x):
            search_fail += 1
        rep, _ = bezout_lemma_harness(A, gens, trials=32, seed=0)
        if not rep.ok:
            harness_fail += 1
    ok = search_fail == 0 and harness_fail == 0
    return ok, f"50 acyclic graphs: {search_fail} search failures (max {worst} trials), {harness_fail} harness failures"


def criterion_8():
    rng = random.Random(8)
    dim_bad = shape_bad = 0
    for _ in range(100):
        g = random_acyclic_graph(rng, 6, 9)
        if dimension(g) != dimension(dual(g)):
            dim_bad += 1
    for _ in range(50):
        g = random_no_exit_graph(rng, 6, 9)
        if matricial_shape(g) != matricial_shape(dual(g)):
            shape_bad += 1
    fixtures = [single_edge(), clock(), rose(1), loop_with_tail(), two_cycle(), isolated_vertex()]
    fix_bad = 0
    for g in fixtures:
        if dimension(g) != dimension(dual(g)):
            fix_bad += 1
        if has_no_exits(g) and matricial_shape(g) != matricial_shape(dual(g)):
            fix_bad += 1
    ok = dim_bad == fix_bad == shape_bad == 0
    return ok, f"dimension: {dim_bad}/100 mismatches; shape: {shape_bad}/50 mismatches; fixtures: {fix_bad} mismatches"


def criterion_9():
    rng = random.Random(9)
    confluence = assoc = invol = grading = 0
    words = 0
    for _ in range(60):
        g = random_graph(rng, 5, 6)
        A = LeavittPathAlgebra(g)
        tokens = list(g.vertices) + [e.id for e in g.edges] + [e.id + "*" for e in g.edges]
        w = [rng.choice(tokens) for _ in range(rng.randint(1, 8))]
        words += 1
        ref = A.reduce(w)
        prod = A.one()
        for t in w:
            prod = prod * A.generator(t)
        if prod != ref:
            confluence += 1
        for k in range(100):
            if A.reduce(w, random.Random(k)) != ref:
                confluence += 1
    for _ in range(200):
        A = LeavittPathAlgebra(random_graph(rng, 5, 6))
        a, b, c = (random_element(A, rng, 4, 2) for _ in range(3))
        if (a * b) * c != a * (b * c):
            assoc += 1
        if a.adjoint().adjoint() != a or (a * b).adjoint() != b.adjoint() * a.adjoint() or (a + b).adjoint() != a.adjoint() + b.adjoint():
            invol += 1
        conv: dict = {}
        for i, x in a.degree_split().items():
            for j, y in b.degree_split().items():
                conv[i + j] = conv.get(i + j, A.zero()) + x * y
        if (a * b).degree_split() != {d: x for d, x in conv.items() if x}:
            grading += 1
    total = confluence + assoc + invol + grading
    return total == 0, (
        f"{words} words x 100 orders: {confluence} confluence discrepancies; 200 triples: "
        f"{assoc} associativity, {invol} involution, {grading} grading discrepancies"
    )


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}

KNOWN_FAILURES = {
    6: "one-sided ideals of a finite-dimensional L_K(E) need not be graded: in M2(K) = L(v -> w), L(v + f) misses v",
}


def _case(n):
    marks = [pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[n])] if n in KNOWN_FAILURES else []
    return pytest.param(n, marks=marks, id=f"criterion_{n}")


@pytest.mark.parametrize("n", [_case(n) for n in CRITERIA])
def test_criterion(n):
    passed, detail = CRITERIA[n]()
    record(n, passed, detail)
    assert passed, detail


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        t = time.time()
        passed, detail = fn()
        record(n, passed, f"{detail} [{time.time() - t:.1f}s]")
        failed += not passed
    sys.exit(1 if failed else 0)
