"""The acceptance battery: one function per criterion, each returning a list of
named sub-checks.  A criterion passes when every sub-check passes and it ran
within its time budget."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import config
from .bundles import (CharacterBundle, ZeroBundle, age_wreath, generalized_chi, induced_bundle,
                      product_bundle, verify_wreath_bundle_theorem, wreath_bundle)
from .euler import chi_k_recursive, chi_k_tuples, verify_induction_invariance
from .groups import named_group, wreath_product
from .gsets import (cosets, disjoint_union, point, product, regular, symmetric_power, trivial_gset,
                    wreath_power)
from .isomorphism import find_embedding
from .k0fgr import FgrClass, chi_k_class, class_of
from .lpoly import LPolynomial
from .powerstructures import (effective_power, fgr_lambda_structure, lambda_series_model,
                              macdonald_rhs, verify_tamanoi, zeta_lambda_divergence)
from .series import (FGR, LPOLYNOMIALS, TruncatedSeries, check_power_axioms,
                     configuration_structure_int, power_standard_int, power_via_lambda,
                     series_from_ints, zeta_power_L, zeta_structure_int)

PHI_LIST = ((0,), (1,), (1, 1), (1, 2))
PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22]


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0
    budget: float | None = None

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.seconds < self.budget

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks) and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        failing = [c.name for c in self.checks if not c.passed]
        if not self.within_budget:
            failing.append(f"time {self.seconds:.2f}s over {self.budget}s")
        tail = f" (failing: {'; '.join(failing)})" if failing else ""
        return f"[{status}] criterion {self.number:2d}: {self.title}{tail}"

    def to_json(self) -> dict:
        # timings stay out of the machine report so it is reproducible byte for byte
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "within_budget": self.within_budget,
                "checks": [c.to_json() for c in self.checks]}


def sign_bundle(G=None, element: int = 1, value="1/2"):
    """(pt, character, G): a point with one character, by default the sign of C2."""
    G = G or named_group("C2")
    Z = point(G)
    return Z, CharacterBundle(Z, {0: [{element: value}]})


# -- criteria -----------------------------------------------------------------

def criterion_1() -> list:
    with config.override(max_group_order=50000):
        rep = verify_tamanoi(point(named_group("trivial")), 1, 8)
    return [Check("chi1(pt^n, S_n) = partition numbers, n <= 8", rep.lhs == PARTITIONS, rep.lhs),
            Check("RHS prod (1 - t^r)^-1 expanded", rep.rhs == PARTITIONS, rep.rhs),
            Check("LHS = RHS", rep.passed)]


def criterion_2() -> list:
    C2 = named_group("C2")
    counts = [1] + [len(wreath_product(C2, n).conjugacy_classes()) for n in range(1, 4)]
    rep = verify_tamanoi(point(C2), 1, 3)
    rhs = list(macdonald_rhs(2, 1, 3).coeffs)
    return [Check("conjugacy class counts of C2 wr S_n", counts == [1, 2, 5, 10], counts),
            Check("chi1 recursion agrees with class counts", rep.lhs == counts, rep.lhs),
            Check("prod (1 - t^r)^-2 coefficients", rhs == [1, 2, 5, 10], rhs)]


def criterion_3() -> list:
    pt = point(named_group("trivial"))
    lhs = [1] + [chi_k_tuples(wreath_power(pt, n), 2) for n in range(1, 4)]
    rhs = list(macdonald_rhs(1, 2, 3).coeffs)
    return [Check("commuting triples in S_n / n! against the r_2-weighted product", lhs == rhs,
                  {"lhs": lhs, "rhs": rhs})]


def criterion_4() -> list:
    checks = []
    for size in (2, 3):
        counts = [len(symmetric_power(size, n)) for n in range(7)]
        binom = [math.comb(n + size - 1, n) for n in range(7)]
        series = list(power_standard_int(series_from_ints([1, -1], 6), -size).coeffs)
        checks.append(Check(f"|S^n X| for |X| = {size}", counts == binom == series,
                            {"counts": counts, "series": series}))
    return checks


def battery() -> list:
    """(name, G-set) pairs for the definition-agreement sweep."""
    g = named_group
    S3, C2, C3, C4, V4, D4, Q8 = (g(n) for n in ("S3", "C2", "C3", "C4", "V4", "D4", "Q8"))
    cases = []
    for name in ("trivial", "C2", "C3", "C4", "V4", "S3", "D4", "Q8", "C6"):
        G = g(name)
        cases.append((f"pt/{name}", point(G)))
        cases.append((f"regular/{name}", regular(G)))
    cases += [
        ("two fixed cells/C2", trivial_gset(C2, 2, [0, 1])),
        ("S3/C2 cosets", cosets(S3, S3.subgroup_generated([1]))),
        ("S3/C3 cosets", cosets(S3, S3.subgroup_generated([_order_element(S3, 3)]))),
        ("D4/center cosets", cosets(D4, D4.subgroup_generated([_central_involution(D4)]))),
        ("Q8/center cosets", cosets(Q8, Q8.subgroup_generated([_central_involution(Q8)]))),
        ("pt + regular/C3", disjoint_union(point(C3), regular(C3))),
        ("regular x regular/C2", product(regular(C2), regular(C2))),
        ("pt x regular/C2xC2", product(point(C2), regular(C2))),
        ("pt^2/C2 wreath", wreath_power(point(C2), 2)),
        ("pt^3/C2 wreath", wreath_power(point(C2), 3)),
        ("regular^2/C2 wreath", wreath_power(regular(C2), 2)),
        ("pt^2/C3 wreath", wreath_power(point(C3), 2)),
        ("pt^2/S3 wreath", wreath_power(point(S3), 2)),
        ("pt^3/trivial wreath", wreath_power(point(g("trivial")), 3)),
        ("pt^4/trivial wreath", wreath_power(point(g("trivial")), 4)),
        ("two cells^2/C2 wreath", wreath_power(trivial_gset(C2, 2), 2)),
        ("S3/C2 cosets^2 wreath", wreath_power(cosets(S3, S3.subgroup_generated([1])), 2)),
        ("regular/S3 restricted to C3", regular(S3).restrict(S3.subgroup_generated([_order_element(S3, 3)]))),
        ("pt^2/C4 wreath", wreath_power(point(C4), 2)),
    ]
    return cases


def _order_element(G, n: int) -> int:
    return next(a for a in G.elements() if G.element_order(a) == n)


def _central_involution(G) -> int:
    return next(a for a in G.elements()
                if G.element_order(a) == 2 and all(G.commute(a, b) for b in G.elements()))


def criterion_5() -> list:
    checks = []
    for name, X in battery():
        tuples = [chi_k_tuples(X, k) for k in range(1, 4)]
        rec = [chi_k_recursive(X, k) for k in range(1, 4)]
        checks.append(Check(name, tuples == rec, {"tuples": tuples, "recursive": rec}))
    checks.append(Check("battery has at least 30 cases", len(checks) >= 30, len(checks)))
    return checks


def induction_cases() -> list:
    """(label, G-set over G, H, embedding G -> H)."""
    g = named_group
    out = []
    for sub, sup in (("C2", "S3"), ("C3", "S3"), ("C2", "C4"), ("V4", "D4")):
        G, H = g(sub), g(sup)
        emb = find_embedding(G, H)
        sets = [("pt", point(G)), ("regular", regular(G)), ("two cells", trivial_gset(G, 2, [0, 1]))]
        if sub == "V4":
            sets.append(("V4/C2 cosets", cosets(G, G.subgroup_generated([1]))))
        for label, Z in sets:
            out.append((f"{label} on {sub} in {sup}", Z, H, emb.map))
    return out


def criterion_6() -> list:
    checks = []
    for label, Z, H, emb in induction_cases():
        rep = verify_induction_invariance(Z, H, emb, 3)
        checks.append(Check(label, rep.passed, [row["recursive"][0] for row in rep.values]))
    return checks


def random_fgr_class(rng: random.Random, pool: list) -> FgrClass:
    acc = FgrClass()
    for _ in range(rng.randint(1, 3)):
        G = named_group(rng.choice(pool))
        acc = acc + FgrClass.point(G, rng.randint(0, 2), rng.choice([-3, -2, -1, 1, 2, 3]))
    return acc


def criterion_7(seed: int = 0) -> list:
    rng = random.Random(seed)
    pool = ["trivial", "C2", "C3", "C4", "V4", "S3", "C5", "C6", "D4", "Q8"]
    bad = []
    for trial in range(100):
        a, b = random_fgr_class(rng, pool), random_fgr_class(rng, pool)
        ab = a * b
        for k in range(4):
            if chi_k_class(ab, k) != chi_k_class(a, k) * chi_k_class(b, k):
                bad.append({"trial": trial, "k": k, "a": str(a), "b": str(b)})
    return [Check("chi^(k) multiplicative on 100 random pairs, k <= 3", not bad, bad[:5])]


def _random_int_series(rng: random.Random, N: int) -> TruncatedSeries:
    return series_from_ints([1] + [rng.randint(-3, 3) for _ in range(N)], N)


def _random_lpoly(rng: random.Random, constant: int | None = None) -> LPolynomial:
    terms = {Fraction(rng.choice([0, 1, 2, 3]), 2): rng.randint(-2, 2) for _ in range(rng.randint(0, 2))}
    if constant is not None:
        terms[Fraction(0)] = constant
    return LPolynomial(terms)


def _random_l_series(rng: random.Random, N: int) -> TruncatedSeries:
    return TruncatedSeries(LPOLYNOMIALS, [LPolynomial.const(1)] + [_random_lpoly(rng) for _ in range(N)], N)


def criterion_8(seed: int = 0, trials: int = 100, N: int = 6) -> list:
    rng = random.Random(seed)
    zeta, conf, zl = zeta_structure_int(), configuration_structure_int(), zeta_power_L()
    powers_int = {
        "standard": power_standard_int,
        "zeta": lambda A, m: power_via_lambda(A, m, zeta),
        "configuration": lambda A, m: power_via_lambda(A, m, conf),
    }
    failures: dict[str, list] = {name: [] for name in list(powers_int) + ["zeta_L", "agreement"]}
    for trial in range(trials):
        A, B = _random_int_series(rng, N), _random_int_series(rng, N)
        m, n = rng.randint(-4, 4), rng.randint(-4, 4)
        k = rng.randint(2, 3)
        for name, power in powers_int.items():
            res = check_power_axioms(power, A, B, m, n, k=k)
            failures[name] += [(trial, ax) for ax, ok in res.items() if not ok]
        ref = power_standard_int(A, m)
        if powers_int["zeta"](A, m) != ref or powers_int["configuration"](A, m) != ref:
            failures["agreement"].append(trial)
        AL, BL = _random_l_series(rng, N), _random_l_series(rng, N)
        mL, nL = _random_lpoly(rng, rng.randint(-2, 2)), _random_lpoly(rng, rng.randint(-2, 2))
        res = check_power_axioms(lambda S, e: power_via_lambda(S, e, zl), AL, BL, mL, nL,
                                 zero_exp=LPolynomial(), one_exp=LPolynomial.const(1), k=k)
        failures["zeta_L"] += [(trial, ax) for ax, ok in res.items() if not ok]
    checks = [Check(f"axioms 1-7 over Z, {name} power", not failures[name], failures[name][:5])
              for name in powers_int]
    checks.append(Check("axioms 1-7 over Z[L^Q], zeta_L power", not failures["zeta_L"],
                        failures["zeta_L"][:5]))
    checks.append(Check("zeta and configuration powers over Z equal the standard power",
                        not failures["agreement"], failures["agreement"][:5]))
    return checks


def effective_power_cases() -> list:
    T, C2 = named_group("trivial"), named_group("C2")
    return [
        ("1 cell/trivial", trivial_gset(T, 1)),
        ("2 cells/trivial", trivial_gset(T, 2)),
        ("3 cells/trivial", trivial_gset(T, 3, [0, 1, 1])),
        ("pt/C2", point(C2)),
        ("2 fixed/C2", trivial_gset(C2, 2)),
        ("regular/C2", regular(C2)),
        ("3 fixed/C2", trivial_gset(C2, 3, [0, 0, 1])),
        ("regular + pt/C2", disjoint_union(regular(C2), point(C2))),
    ]


def criterion_9() -> list:
    checks = []
    one = [point(named_group("trivial"))]
    lam = fgr_lambda_structure()
    for label, M in effective_power_cases():
        eff = effective_power(one, M, 3)
        model = lambda_series_model(M, 3)
        via = power_via_lambda(TruncatedSeries(FGR, [FgrClass.one(), FgrClass.one()], 3), class_of(M), lam)
        effective = all(c.is_effective() for c in eff.coeffs)
        checks.append(Check(label, eff == model == via and effective,
                            {"coeffs": [str(c) for c in eff.coeffs], "effective": effective,
                             "matches_model": eff == model, "matches_lambda_power": eff == via}))
    return checks


def criterion_10() -> list:
    C2 = named_group("C2")
    checks = []
    for label, Z in (("regular C2-set", regular(C2)), ("two-point trivial C2-set", trivial_gset(C2, 2))):
        rep = zeta_lambda_divergence(Z)
        checks.append(Check(f"{label}: t^2 classes differ", rep.differ,
                            {"diagonal": str(rep.diagonal), "trivial_s2": str(rep.trivial_s2)}))
    return checks


def _first_principles_k1(n: int, phi) -> LPolynomial:
    """sum over classes [w] of C2 wr S_n of L^(phi age_wreath(w)); pt^n is a single cell."""
    Z, B = sign_bundle()
    P, E = wreath_bundle(Z, B, n)
    acc = LPolynomial()
    for cls in P.group.conjugacy_classes():
        acc = acc + LPolynomial.L(Fraction(phi) * age_wreath(E, 0, cls.representative))
    return acc


def criterion_11() -> list:
    Z, B = sign_bundle()
    checks = []
    for phi in (0, 1):
        rep = verify_wreath_bundle_theorem(Z, B, 1, [phi], 3)
        direct = [LPolynomial.const(1)] + [_first_principles_k1(n, phi) for n in range(1, 4)]
        exponent = rep.exponents.get(1)
        expected = LPolynomial.const(1) + LPolynomial.L(Fraction(phi, 2))
        checks.append(Check(f"k=1, phi=({phi}), n <= 3",
                            rep.passed and direct == rep.lhs and exponent == expected,
                            {"lhs": [str(c) for c in rep.lhs], "rhs": [str(c) for c in rep.rhs]}))
    rep = verify_wreath_bundle_theorem(Z, B, 2, [1, 1], 2)
    checks.append(Check("k=2, phi=(1,1), n <= 2", rep.passed,
                        {"lhs": [str(c) for c in rep.lhs], "rhs": [str(c) for c in rep.rhs]}))
    return checks


def criterion_12() -> list:
    Z = point(named_group("C2"))
    rep = verify_wreath_bundle_theorem(Z, ZeroBundle(Z), 1, [1], 3)
    expected = [LPolynomial.const(c) for c in (1, 2, 5, 10)]
    return [Check("zero bundle gives constants 1, 2, 5, 10", rep.passed and rep.lhs == expected,
                  [str(c) for c in rep.lhs])]


def _numeric_age(chars: list, G, gs, sigma) -> float:
    import numpy as np
    n, r = len(gs), len(chars)
    M = np.zeros((n * r, n * r), dtype=complex)
    for i in range(n):
        j = sigma[i]
        for a, chi in enumerate(chars):
            M[j * r + a, i * r + a] = np.exp(2j * np.pi * float(chi[gs[j]]))
    total = 0.0
    for ev in np.linalg.eigvals(M):
        p = (np.angle(ev) / (2 * np.pi)) % 1.0
        total += 0.0 if p > 1 - 1e-9 else p
    return total


def criterion_13(seed: int = 0, cases: int = 50) -> list:
    rng = random.Random(seed)
    bad = []
    for case in range(cases):
        m = rng.randint(2, 6)
        G = named_group(f"C{m}")
        n = rng.randint(1, 4 if m <= 4 else 3)
        gen = G.gens[0]
        chars = [{gen: Fraction(rng.randrange(m), m)} for _ in range(rng.randint(1, 2))]
        Z = point(G)
        B = CharacterBundle(Z, {0: chars})
        P, E = wreath_bundle(Z, B, n)
        W = P.group
        w = rng.randrange(W.order)
        gs, sigma = W.info["parts"][w]
        exact = age_wreath(E, 0, w)
        numeric = _numeric_age(B.characters(0), G, gs, sigma)
        if abs(float(exact) - numeric) > 1e-9:
            bad.append({"case": case, "m": m, "n": n, "w": w, "exact": str(exact), "numeric": numeric})
    return [Check(f"{cases} random cases within 1e-9", not bad, bad[:5])]


def criterion_14() -> list:
    checks = []
    Z, B = sign_bundle()
    S3 = named_group("S3")
    emb = find_embedding(Z.group, S3).map
    I, IB = induced_bundle(Z, B, S3, emb)
    C3 = named_group("C3")
    Y, BY = sign_bundle(C3, C3.gens[0], "1/3")
    P, PB = product_bundle(Z, B, Y, BY)
    R = regular(named_group("C2"))
    RB = CharacterBundle(R, {0: [{}]})
    Q, QB = product_bundle(Z, B, R, RB)
    for phi in PHI_LIST:
        for k in range(0, min(2, len(phi)) + 1):
            base = generalized_chi(Z, B, k, phi)
            ind = generalized_chi(I, IB, k, phi)
            checks.append(Check(f"ind to S3, k={k}, phi={phi}", base == ind, [str(base), str(ind)]))
            prod = generalized_chi(P, PB, k, phi)
            expect = base * generalized_chi(Y, BY, k, phi)
            checks.append(Check(f"product with (pt, 1/3, C3), k={k}, phi={phi}", prod == expect,
                                [str(prod), str(expect)]))
            prod2 = generalized_chi(Q, QB, k, phi)
            expect2 = base * generalized_chi(R, RB, k, phi)
            checks.append(Check(f"product with regular C2, k={k}, phi={phi}", prod2 == expect2,
                                [str(prod2), str(expect2)]))
    return checks


CRITERIA: dict[int, tuple[str, Callable[[], list], float | None]] = {
    1: ("Tamanoi k=1, trivial group, n <= 8", criterion_1, 5.0),
    2: ("Tamanoi k=1, G=C2, X=pt, n <= 3", criterion_2, 5.0),
    3: ("Tamanoi k=2, X=pt, trivial group, n <= 3", criterion_3, 30.0),
    4: ("classical Macdonald, |X| = 2, 3, n <= 6", criterion_4, 1.0),
    5: ("tuple and recursive definitions agree, k <= 3", criterion_5, 60.0),
    6: ("induction invariance of chi^(k), k <= 3", criterion_6, None),
    7: ("chi^(k) is a ring homomorphism", criterion_7, None),
    8: ("power structure axioms over Z and Z[L^Q]", criterion_8, None),
    9: ("effective power reproduces the configuration series", criterion_9, None),
    10: ("zeta and lambda t^2 classes differ", criterion_10, None),
    11: ("wreath-bundle Macdonald theorem", criterion_11, 60.0),
    12: ("rank-0 degeneration", criterion_12, None),
    13: ("age_wreath against numerical eigenphases", criterion_13, None),
    14: ("generalized chi under induction and products", criterion_14, None),
}


def run_criterion(number: int) -> CriterionResult:
    title, fn, budget = CRITERIA[number]
    start = time.perf_counter()
    checks = fn()
    return CriterionResult(number, title, checks, time.perf_counter() - start, budget)


def run_all(numbers=None) -> list[CriterionResult]:
    return [run_criterion(i) for i in (numbers or sorted(CRITERIA))]
