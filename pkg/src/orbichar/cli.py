"""Command-line entry point.

Reads one JSON document (``--input PATH`` or standard input), runs one
command and writes one JSON document to standard output.  Human-readable
text and timings go to standard error.  Exit status: 0 success, 1 an
identity check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import acceptance, config
from .bundles import (class_of_vect, generalized_chi, induced_bundle, lambda_vect_series,
                      verify_wreath_bundle_theorem, zeta_vect_series)
from .config import SizeBoundError
from .descriptors import (DescriptorError, parse_bundle, parse_fraction, parse_group, parse_gset,
                          parse_lpolynomial, parse_phi)
from .euler import chi_k_recursive, chi_k_tuples, verify_induction_invariance
from .gsets import quotient_class
from .isomorphism import find_embedding
from .k0fgr import class_of
from .lpoly import LPolynomial
from .powerstructures import (effective_power, fgr_zeta_structure,
                              kapranov_zeta_model, lambda_series_model, series_from_gsets,
                              verify_tamanoi, zeta_lambda_divergence)
from .series import (LPOLYNOMIALS, TruncatedSeries, configuration_structure_int, power_standard_int,
                     power_via_lambda, series_from_ints, zeta_power_L, zeta_structure_int)

COMMANDS = ("chi", "class", "zeta-series", "lambda-series", "power", "generalized",
            "verify-tamanoi", "verify-wreath-bundle", "verify-power-axioms", "verify-induction",
            "divergence", "selftest")
NO_INPUT = {"selftest", "verify-power-axioms"}


class InputError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbichar",
                                description="Orbifold Euler characteristics of finite G-sets and bundles.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", default="-", help="JSON document path, '-' for standard input")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--phi", default=None, help="weights q1,q2,... as exact rationals")
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--pretty", dest="format", action="store_const", const="pretty",
                   help="same as --format pretty")
    p.add_argument("--max-group-order", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--definition", choices=("recursive", "tuples", "both"), default="recursive",
                   help="which definition chi uses")
    return p


# -- input helpers --------------------------------------------------------------

def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from None


def _gset(doc):
    if isinstance(doc, dict) and "gset" in doc:
        return parse_gset(doc["gset"], "gset")
    if isinstance(doc, dict) and "group" in doc:
        return parse_gset(doc, "input")
    raise DescriptorError("input", "expected a G-set descriptor or an object with a \"gset\" field")


def _bundle(doc):
    if isinstance(doc, dict) and "bundle" in doc:
        return parse_bundle(doc["bundle"], "bundle")
    if isinstance(doc, dict) and "base" in doc:
        return parse_bundle(doc, "input")
    raise DescriptorError("input", "expected a bundle descriptor or an object with a \"bundle\" field")


def _phi(args, k: int) -> tuple:
    if args.phi is None:
        return (Fraction(1),) * max(k, 1)
    phi = parse_phi(args.phi, "--phi")
    if len(phi) < k:
        raise InputError(f"--phi needs at least k={k} weights")
    return phi


def _texts(coeffs) -> list:
    return [str(c) for c in coeffs]


# -- commands ---------------------------------------------------------------------

def cmd_chi(args, doc):
    X = _gset(doc)
    out = {"k": args.k, "definition": args.definition}
    if args.definition in ("recursive", "both"):
        out["recursive"] = chi_k_recursive(X, args.k)
    if args.definition in ("tuples", "both"):
        out["tuples"] = chi_k_tuples(X, args.k)
    values = [out[key] for key in ("recursive", "tuples") if key in out]
    out["value"] = values[0]
    passed = len(set(values)) == 1
    if args.definition == "both":
        out["passed"] = passed
    return out, passed, [f"chi^({args.k}) = {values[0]}"]


def cmd_class(args, doc):
    if isinstance(doc, dict) and ("bundle" in doc or "base" in doc):
        Z, B = _bundle(doc)
        v = class_of_vect(Z, B)
        return {"vect_class": v.to_json(), "class": v.forget().to_json(), "text": str(v)}, True, [str(v)]
    X = _gset(doc)
    c = class_of(X)
    q = quotient_class(X)
    return ({"class": c.to_json(), "text": str(c), "quotient": q.to_json(), "quotient_text": str(q)},
            True, [f"[(X, G)] = {c}", f"[X/G] = {q}"])


def _series_cmd(model, vect_model):
    def run(args, doc):
        if isinstance(doc, dict) and ("bundle" in doc or "base" in doc):
            Z, B = _bundle(doc)
            s = vect_model(Z, B, args.N)
        else:
            s = model(_gset(doc), args.N)
        texts = _texts(s.coeffs)
        return {"N": args.N, "coeffs": s.to_json()["coeffs"], "text": texts}, True, \
            [f"t^{i}: {t}" for i, t in enumerate(texts)]
    return run


def cmd_power(args, doc):
    if not isinstance(doc, dict):
        raise DescriptorError("input", "expected an object")
    ring = doc.get("ring", "Z")
    structure = doc.get("structure")
    N = args.N
    if "series" not in doc or "exponent" not in doc:
        raise DescriptorError("input", "power needs \"series\" and \"exponent\" fields")
    coeffs = doc["series"]
    if not isinstance(coeffs, list):
        raise DescriptorError("input.series", "expected a list of coefficients")
    if ring == "Z":
        vals = [1] + [int(parse_fraction(c, f"input.series[{i}]")) for i, c in enumerate(coeffs)]
        A = series_from_ints((vals + [0] * N)[:N + 1], N)
        m = parse_fraction(doc["exponent"], "input.exponent")
        if m.denominator != 1:
            raise DescriptorError("input.exponent", "integer exponent expected over Z")
        structure = structure or "standard"
        if structure == "standard":
            P = power_standard_int(A, int(m))
        elif structure == "zeta":
            P = power_via_lambda(A, int(m), zeta_structure_int())
        elif structure == "configuration":
            P = power_via_lambda(A, int(m), configuration_structure_int())
        else:
            raise DescriptorError("input.structure", f"unknown structure {structure!r} over Z")
    elif ring == "L":
        polys = [LPolynomial.const(1)] + [parse_lpolynomial(c, f"input.series[{i}]")
                                          for i, c in enumerate(coeffs)]
        polys = (polys + [LPolynomial()] * N)[:N + 1]
        A = TruncatedSeries(LPOLYNOMIALS, polys, N)
        m = parse_lpolynomial(doc["exponent"], "input.exponent")
        structure = structure or "zeta_L"
        if structure != "zeta_L":
            raise DescriptorError("input.structure", "only zeta_L is available over Z[L^Q]")
        P = power_via_lambda(A, m, zeta_power_L())
    elif ring == "fgr":
        A = [parse_gset(c, f"input.series[{i}]") for i, c in enumerate(coeffs)]
        M = parse_gset(doc["exponent"], "input.exponent")
        structure = structure or "lambda"
        if structure == "lambda":
            P = effective_power(A, M, N)
        elif structure == "zeta":
            P = power_via_lambda(series_from_gsets(A, N), class_of(M), fgr_zeta_structure())
        else:
            raise DescriptorError("input.structure", f"unknown structure {structure!r}")
    else:
        raise DescriptorError("input.ring", f"unknown ring {ring!r}; use Z, L or fgr")
    texts = _texts(P.coeffs)
    out = {"ring": ring, "structure": structure, "N": N, "coeffs": P.to_json()["coeffs"], "text": texts}
    if ring == "fgr":
        out["effective"] = all(c.is_effective() for c in P.coeffs)
    return out, True, [f"t^{i}: {t}" for i, t in enumerate(texts)]


def cmd_generalized(args, doc):
    Z, B = _bundle(doc)
    phi = _phi(args, args.k)
    v = generalized_chi(Z, B, args.k, phi)
    return ({"k": args.k, "phi": [str(p) for p in phi], "value": v.to_json(), "text": str(v)},
            True, [str(v)])


def cmd_verify_tamanoi(args, doc):
    rep = verify_tamanoi(_gset(doc), args.k, args.N)
    return rep.to_json(), rep.passed, [f"lhs {rep.lhs}", f"rhs {rep.rhs}",
                                       "PASS" if rep.passed else "FAIL"]


def cmd_verify_wreath_bundle(args, doc):
    Z, B = _bundle(doc)
    rep = verify_wreath_bundle_theorem(Z.standalone() if not Z.is_standalone else Z, B, args.k,
                                       _phi(args, args.k), args.N)
    lines = [f"n={n}: {a}  |  {b}" for n, (a, b) in enumerate(zip(rep.lhs, rep.rhs))]
    return rep.to_json(), rep.passed, lines + ["PASS" if rep.passed else "FAIL"]


def cmd_verify_power_axioms(args, doc):
    checks = acceptance.criterion_8(seed=args.seed, N=min(args.N, config.limits().max_series_order))
    passed = all(c.passed for c in checks)
    return ({"seed": args.seed, "checks": [c.to_json() for c in checks], "passed": passed}, passed,
            [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}" for c in checks])


def cmd_verify_induction(args, doc):
    if not isinstance(doc, dict) or "supergroup" not in doc:
        raise DescriptorError("input.supergroup", "missing field")
    H = parse_group(doc["supergroup"], "input.supergroup")
    if "bundle" in doc:
        Z, B = _bundle(doc)
    else:
        Z, B = _gset(doc), None
    G = Z.group
    if "embedding" in doc:
        emb = doc["embedding"]
        if not isinstance(emb, list) or len(emb) != G.order:
            raise DescriptorError("input.embedding", f"expected a list of {G.order} element ids")
    else:
        iso = find_embedding(G, H)
        if iso is None:
            raise DescriptorError("input.supergroup", "the group does not embed in the supergroup")
        emb = list(iso.map)
    rep = verify_induction_invariance(Z, H, emb, args.k)
    out = rep.to_json()
    passed = rep.passed
    if B is not None:
        phi = _phi(args, args.k)
        I, IB = induced_bundle(Z, B, H, emb)
        rows = []
        for k in range(args.k + 1):
            a, b = generalized_chi(Z, B, k, phi), generalized_chi(I, IB, k, phi)
            rows.append({"k": k, "base": str(a), "induced": str(b), "passed": a == b})
            passed = passed and a == b
        out["generalized"] = rows
        out["passed"] = passed
    return out, passed, [f"k={row['k']}: {row['recursive']}" for row in rep.values] + \
        ["PASS" if passed else "FAIL"]


def cmd_divergence(args, doc):
    rep = zeta_lambda_divergence(_gset(doc))
    return rep.to_json(), rep.differ, [f"diagonal class {rep.diagonal}",
                                       f"trivial S2 class {rep.trivial_s2}",
                                       "differ" if rep.differ else "coincide"]


def cmd_selftest(args, doc):
    results = []
    for number in sorted(acceptance.CRITERIA):
        r = acceptance.run_criterion(number)
        print(f"{r.line()}  [{r.seconds:.2f}s]", file=sys.stderr)
        results.append(r)
    passed = all(r.passed for r in results)
    return ({"criteria": [r.to_json() for r in results], "passed": passed}, passed,
            [f"{sum(r.passed for r in results)}/{len(results)} criteria pass"])


HANDLERS = {
    "chi": cmd_chi,
    "class": cmd_class,
    "zeta-series": _series_cmd(kapranov_zeta_model, zeta_vect_series),
    "lambda-series": _series_cmd(lambda_series_model, lambda_vect_series),
    "power": cmd_power,
    "generalized": cmd_generalized,
    "verify-tamanoi": cmd_verify_tamanoi,
    "verify-wreath-bundle": cmd_verify_wreath_bundle,
    "verify-power-axioms": cmd_verify_power_axioms,
    "verify-induction": cmd_verify_induction,
    "divergence": cmd_divergence,
    "selftest": cmd_selftest,
}


def _validate(args) -> None:
    lim = config.limits()
    if args.k < 0 or args.k > lim.max_k:
        raise InputError(f"--k must lie in 0..{lim.max_k}")
    if args.N < 0 or args.N > lim.max_series_order:
        raise InputError(f"--N must lie in 0..{lim.max_series_order}")
    if args.max_group_order is not None and args.max_group_order < 1:
        raise InputError("--max-group-order must be positive")


def run(args) -> tuple[dict, int, list]:
    _validate(args)
    bounds = {} if args.max_group_order is None else {"max_group_order": args.max_group_order}
    doc = None if args.command in NO_INPUT else _load(args.input)
    with config.override(**bounds):
        result, passed, lines = HANDLERS[args.command](args, doc)
    report = {"command": args.command,
              "options": {"k": args.k, "N": args.N, "phi": args.phi, "seed": args.seed,
                          "definition": args.definition},
              "result": result}
    return report, 0 if passed else 1, lines


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report, status, lines = run(args)
    except SizeBoundError as exc:
        print(f"error: {exc}; reduce n/N or group size", file=sys.stderr)
        return 2
    except (InputError, DescriptorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(json.dumps(report, sort_keys=False) + "\n")
    if args.format == "pretty":
        for line in lines:
            print(line, file=sys.stderr)
        print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
