"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line
(visible even under output capture) before asserting."""

import io
import json
import random
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import conjugate_complex, convolve, random_complex, random_expr, random_extension
from dolbeault.cli import main
from dolbeault.constructions import (Morphism, direct_sum, induced_bc_dims_equal, is_E1_isomorphism,
                                     ses_to_les, shift, tensor)
from dolbeault.double_complex import DoubleComplex, check_ddbar, cohomology
from dolbeault.dsl import evaluate, parse_expr, to_text
from dolbeault.fixtures import (curve, dot, hopf, iwasawa, kodaira_thurston, point,
                                projective_space, square, torus, zigzag_l)
from dolbeault.hodge import (blow_up, gaussian_multinomial, inversion_polynomial, kunneth,
                             lh_consistency, projective_bundle, q_complete_obstruction)
from dolbeault.linalg import Matrix, rank

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            tail = f" ({detail})" if detail else ""
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}{tail}")
        return ok
    return emit


def eval_cli(expr):
    out, err = io.StringIO(), io.StringIO()
    assert main(["eval", expr, "--json"], out, err) == 0
    return {(p, q): h for p, q, h in json.loads(out.getvalue())["coeffs"]}


# 1 -----------------------------------------------------------------------------

def test_blowup_plane_at_point(report):
    got = eval_cli("blowup(P(2), point, 2)")
    ok = got == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    report(1, "blowup(P(2), point, 2) = 1 + 2xy + (xy)^2", ok, f"got {got}")
    assert ok


@pytest.mark.xfail(strict=True, reason=(
    "stated h^{2,1} = h^{1,2} = 2 contradicts the blow-up formula for a genus-1 center: "
    "the correction h(Z)·xy gives h^{2,1} = h^{1,0}(curve(1)) = 1; see the decisions ledger"))
def test_blowup_p3_along_curve(report):
    got = eval_cli("blowup(P(3), curve(1), 2)")
    stated = {(1, 1): 2, (2, 1): 2, (1, 2): 2, (2, 2): 2}
    ok = all(got.get(k, 0) == v for k, v in stated.items())
    report(1, "blowup(P(3), curve(1), 2): h11=2, h21=h12=2, h22=2", ok,
           f"got h11={got.get((1, 1), 0)} h21={got.get((2, 1), 0)} "
           f"h12={got.get((1, 2), 0)} h22={got.get((2, 2), 0)}")
    assert ok


# 2 -----------------------------------------------------------------------------

def test_projective_bundle_equals_kunneth(report):
    a = projective_bundle(projective_space(1), 2)
    b = kunneth(projective_space(1), projective_space(1))
    ok = a.n == b.n and a.coeffs == b.coeffs
    report(2, "projective_bundle(P(1), 2) = kunneth(P(1), P(1))", ok)
    assert ok


# 3 -----------------------------------------------------------------------------

def compositions(n):
    if n == 0:
        yield []
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield [first] + rest


def test_gaussian_multinomial_oracle(report):
    checked, bad = 0, []
    for n in range(1, 7):
        for parts in compositions(n):
            checked += 1
            if gaussian_multinomial(parts) != inversion_polynomial(parts):
                bad.append(parts)
    ok = not bad and checked == 63
    report(3, "closed-form Gaussian multinomial = inversion counts, n <= 6", ok,
           f"{checked} part-lists, mismatches {bad}")
    assert ok


# 4 -----------------------------------------------------------------------------

def test_nilmanifold_dolbeault(report):
    iw = cohomology(iwasawa(), "dolbeault")
    kt = cohomology(kodaira_thurston(), "dolbeault")
    ok = ((iw[0, 0], iw[1, 0], iw[0, 1], iw[3, 0], iw[0, 3]) == (1, 3, 2, 1, 1)
          and iw.euler() == 0 and (kt[1, 0], kt[0, 1]) == (1, 2))
    report(4, "Iwasawa and Kodaira-Thurston Dolbeault numbers", ok,
           f"iwasawa h00,h10,h01,h30,h03 = {iw[0, 0]},{iw[1, 0]},{iw[0, 1]},{iw[3, 0]},{iw[0, 3]}, "
           f"chi = {iw.euler()}; KT h10,h01 = {kt[1, 0]},{kt[0, 1]}")
    assert ok


# 5 -----------------------------------------------------------------------------

def test_ddbar_decisions(report):
    cpn = [check_ddbar(direct_sum([dot(i, i) for i in range(n + 1)])).holds for n in range(5)]
    negatives = {"iwasawa": check_ddbar(iwasawa()), "kodaira_thurston": check_ddbar(kodaira_thurston()),
                 "zigzagL": check_ddbar(zigzag_l())}
    ok = all(cpn) and all(not d.holds and d.witness is not None for d in negatives.values())
    report(5, "ddbar true on CP^n models (n <= 4), false with witnesses", ok,
           ", ".join(f"{k}: {d}" for k, d in negatives.items()))
    assert ok


# 6 -----------------------------------------------------------------------------

def _inclusion(k, extra):
    s = direct_sum([k, extra])
    return Morphism(k, s, {bd: Matrix.identity(k.dim(*bd)).vstack(Matrix.zeros(extra.dim(*bd), k.dim(*bd)))
                           for bd in k.support})


def _shifted(f, u, v):
    return Morphism(shift(f.source, u, v), shift(f.target, u, v),
                    {(p + u, q + v): m for (p, q), m in f.blocks.items()})


def _transport(k, rng):
    k2, T = conjugate_complex(k.without_sigma(), rng)
    return Morphism(k.without_sigma(), k2, T)


def e1_isomorphisms():
    rng = random.Random(5)
    fx = {"dot": dot(), "square": square(), "zigzagL": zigzag_l(), "iwasawa": iwasawa(),
          "kodaira_thurston": kodaira_thurston()}
    out = []
    for name, k in fx.items():
        out.append((f"id {name}", Morphism.identity(k)))
        out.append((f"id shift({name}, 1, 2)", Morphism.identity(shift(k, 1, 2))))
        inc = _inclusion(k, square(1, 0))
        out.append((f"{name} -> {name} + square", inc))
        out.append((f"shift of {name} -> {name} + square", _shifted(inc, 2, 1)))
        second = _inclusion(inc.target, square(0, 1))
        out.append((f"{name} -> {name} + 2 squares", second @ inc))
        if k.total_dim <= 16:
            k0 = k.without_sigma()
            inc0 = _inclusion(k0, square(1, 0))
            out.append((f"basis change after {name} -> {name} + square",
                        _transport(inc0.target, rng) @ inc0))
    return out


def test_e1_isomorphisms_induce_bc_isomorphisms(report):
    cases = e1_isomorphisms()
    e1 = [(name, f) for name, f in cases if is_E1_isomorphism(f)]
    bad = [name for name, f in e1 if not induced_bc_dims_equal(f)]
    ok = len(e1) == len(cases) >= 20 and not bad
    report(6, "E1-isomorphisms induce Bott-Chern isomorphisms", ok,
           f"{len(e1)} E1-isomorphisms of {len(cases)} constructed, failures {bad}")
    assert ok


# 7 -----------------------------------------------------------------------------

def test_chain_level_kunneth(report):
    kt = kodaira_thurston()
    table = cohomology(tensor(kt, kt), "dolbeault").dims
    d = cohomology(kt, "dolbeault").dims
    expect = {k: v for k, v in convolve(d, d).items() if v}
    ok = table == expect
    report(7, "dolbeault(KT x KT) = convolution square", ok, f"{len(expect)} nonzero bidegrees")
    assert ok


# 8 -----------------------------------------------------------------------------

def test_les_exactness(report):
    rng = random.Random(8)
    exact = nonzero = 0
    for _ in range(100):
        a = random_complex(rng, max_dim=6)
        c = random_complex(rng, max_dim=12 - a.total_dim)
        f, g = random_extension(a, c, rng)
        assert f.target.total_dim <= 12
        ok = True
        for direction in ("row", "column"):
            for fixed in range(-1, 5):
                les = ses_to_les(f, g, fixed, direction)
                ok &= les.is_exact()
                nonzero += any(not m.is_zero() for _, m in les.connecting_maps())
        exact += ok
    A = dot(0, 1)
    B = DoubleComplex({(0, 0): 1, (0, 1): 1}, d2={(0, 0): Matrix([[1]])})
    C = dot(0, 0)
    les = ses_to_les(Morphism(A, B, {(0, 1): Matrix([[1]])}), Morphism(B, C, {(0, 0): Matrix([[1]])}), 0)
    (_, delta), = les.connecting_maps()
    iso = delta.shape == (1, 1) and rank(delta) == 1
    ok = exact == 100 and iso and nonzero > 0
    report(8, "LES exact on 100 random SESs; two-dot connecting map is an isomorphism", ok,
           f"{exact}/100 exact, {nonzero} sequences with a nonzero connecting map")
    assert ok


# 9 -----------------------------------------------------------------------------

def test_hopf_counterexample(report):
    d = lh_consistency(hopf(), curve(1), projective_space(1))
    ok = not d.holds and d.witness == (1, 0) and hopf()[1, 0] == 0
    report(9, "Hopf surface fails the Leray-Hirsch dimension identity", ok,
           f"witness {d.witness}: predicted {d.expected}, actual {d.actual}")
    assert ok


# 10 ----------------------------------------------------------------------------

def test_q_completeness(report):
    outputs = []
    for r in (2, 3, 4):
        for base in (point(), projective_space(1), torus(1), curve(2), projective_space(2)):
            outputs.append((r, projective_bundle(base, r)))
        for extra in range(3):
            for make in (projective_space, torus):
                center = make(extra)
                for x in (projective_space(r + extra), torus(r + extra)):
                    outputs.append((r, blow_up(x, center, r)))
        outputs.append((r, blow_up(projective_space(r + 1), curve(3), r)))
    bad = []
    for r, h in outputs:
        rep = q_complete_obstruction(h, r)
        if not (rep.h_top >= 1 and rep.not_strongly_complete_for == tuple(range(1, r))):
            bad.append((r, str(h)))
    ok = not bad
    report(10, "h^{r-1,r-1} >= 1 obstruction for r in {2,3,4}", ok,
           f"{len(outputs)} outputs, failures {bad}")
    assert ok


# 11 ----------------------------------------------------------------------------

def test_sigma_symmetry(report):
    bad = []
    for name, k in (("iwasawa", iwasawa()), ("kodaira_thurston", kodaira_thurston())):
        bc = cohomology(k, "bott-chern")
        dol = cohomology(k, "dolbeault")
        cdol = cohomology(k, "conjugate-dolbeault")
        for p, q in k.hull():
            if bc[p, q] != bc[q, p] or dol[p, q] != cdol[q, p]:
                bad.append((name, p, q))
    ok = not bad
    report(11, "sigma symmetry of Bott-Chern and Dolbeault tables", ok, f"failures {bad}")
    assert ok


# 12 ----------------------------------------------------------------------------

def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "dolbeault", *argv], capture_output=True, cwd=ROOT)


def test_cli_contract(report):
    rng = random.Random(12)
    exprs = [random_expr(rng) for _ in range(50)]
    round_trip = all(parse_expr(to_text(e)) == e for e in exprs)

    stable = True
    for argv in (["eval", "flagbundle(blowup(P(3), curve(2), 2), [1, 2])", "--json"],
                 ["cohomology", "fixtures/iwasawa.json", "--json"],
                 ["check-ddbar", "fixtures/kodaira_thurston.json", "--json"],
                 ["les", "fixtures/ses_two_dots.json", "--json"]):
        one, two = _cli(*argv), _cli(*argv)
        stable &= one.returncode == 0 and one.stdout == two.stdout and bool(one.stdout)
        json.loads(one.stdout)

    table = [
        (["eval", "blowup(P(2), point, 2)"], 0),
        (["check-ddbar", "fixtures/iwasawa.json"], 0),
        (["cohomology", "fixtures/dot.json", "--theory", "all"], 0),
        (["eval", "product(P(1),"], 2),
        (["eval", "blowup(P(3), point, 2)"], 1),
        (["validate", "tests/data/d1_squared.json"], 1),
        (["cohomology", "tests/data/truncated.json"], 2),
    ]
    codes = [(argv, _cli(*argv).returncode, want) for argv, want in table]
    exit_ok = all(got == want for _, got, want in codes)
    ok = round_trip and stable and exit_ok
    report(12, "CLI round trip, JSON byte stability, exit codes", ok,
           f"round trip {round_trip}, stable {stable}, exit codes "
           f"{[got for _, got, _ in codes]}")
    assert ok
