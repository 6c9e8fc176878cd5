"""Batch command line front end.

Reads a JSON description of an algebra or complex, runs one named operation,
and prints a structured report.  Reports are fully deterministic: identical
inputs and options produce byte-identical output, every report embeds the
tool version and the exact options used, and randomized panels draw all of
their randomness from the --seed flag.

Exit codes: 0 on success, 1 on a failed verification (the report carries a
witness), 2 on malformed input or an impossible request.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .core import (
    AlgebraError,
    EVEN,
    Element,
    Generator,
    GeneratorTable,
    ODD,
    ParseError,
    parity_name,
    parse,
    render,
)
from .dg import DGAlgebra, Derivation
from .forms import Cylinder, FormsAlgebra, PathObject, berezin, integrate
from . import sampling
from .simplicial import (
    ZERO_ALGEBRA,
    barycentric_table,
    barycentric_whitney,
    cotensor_report,
    degeneracy_tuple,
    dupont_homotopy,
    eliminate,
    face_pullback,
    face_tuple,
    filling_report,
    pullback,
    simplex_forms,
    simplex_integral,
    whitney,
    whitney_projection,
    whitney_tuples,
)
from . import model
from . import linalg


class InputError(Exception):
    """Malformed document or impossible request; maps to exit code 2."""


# -- document loading ---------------------------------------------------------------


def _load_json(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input document: {exc}") from exc


def _parse_parity(value) -> int:
    if value in (0, "0", "even"):
        return EVEN
    if value in (1, "1", "odd"):
        return ODD
    raise InputError(f"parity must be 'even' or 'odd', got {value!r}")


def build_table(doc: dict) -> GeneratorTable:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    gens_doc = doc.get("generators")
    if not isinstance(gens_doc, list):
        raise InputError("document needs a 'generators' list")
    gens = []
    for item in gens_doc:
        if not isinstance(item, dict) or "name" not in item:
            raise InputError("each generator needs at least a 'name'")
        name = item["name"]
        weight = item.get("weight", 0)
        if not isinstance(name, str) or not isinstance(weight, int):
            raise InputError(f"bad generator entry {item!r}")
        gens.append(Generator(name, weight, _parse_parity(item.get("parity", "even"))))
    try:
        return GeneratorTable(gens, even_mode=bool(doc.get("even_mode", False)))
    except AlgebraError as exc:
        raise InputError(str(exc)) from exc


def build_algebra(doc: dict) -> tuple[DGAlgebra | None, dict | None]:
    """Build a dg algebra from a document.

    Returns (dga, None) on success or (None, witness) when the description
    fails a mathematical check (a bidegree violation or d*d != 0); schema
    problems raise InputError instead.
    """
    table = build_table(doc)
    diff_doc = doc.get("differential", {})
    if not isinstance(diff_doc, dict):
        raise InputError("'differential' must map generator names to expressions")
    images: dict[str, Element] = {}
    for name, expr in diff_doc.items():
        if name not in table.index:
            raise InputError(f"differential given for unknown generator {name!r}")
        if not isinstance(expr, str):
            raise InputError(f"differential of {name!r} must be an expression string")
        try:
            images[name] = parse(table, expr)
        except ParseError as exc:
            raise InputError(f"bad expression for d({name}): {exc}") from exc
    for g in table.generators:
        img = images.get(g.name)
        if img is None or img.is_zero():
            continue
        bid = img.bidegree()
        if bid != (g.weight + 1, (g.parity + 1) % 2):
            found = "inhomogeneous" if bid is None else (
                f"({bid[0]}, {parity_name(bid[1])})"
            )
            return None, {
                "valid": False,
                "witness": f"bidegree violation at generator {g.name}",
                "detail": f"d({g.name}) = {render(img)} has bidegree "
                          f"{found}, expected ({g.weight + 1}, "
                          f"{parity_name((g.parity + 1) % 2)})",
            }
    d = Derivation(table, images, 1, ODD)
    dga = DGAlgebra(table, d, check=False)
    bad = dga.square_witnesses()
    if bad:
        name, value = bad[0]
        return None, {
            "valid": False,
            "witness": f"differential does not square to zero at generator {name}",
            "detail": f"d(d({name})) = {render(value)}",
        }
    return dga, None


def _parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"bad rational entry {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational entry {value!r}") from exc
    raise InputError(f"bad rational entry {value!r}")


def _parse_key(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"bidegree keys look like '0,even'; got {text!r}")
    try:
        weight = int(parts[0])
    except ValueError as exc:
        raise InputError(f"bad weight in key {text!r}") from exc
    return weight, _parse_parity(parts[1])


def _key_str(key: tuple[int, int]) -> str:
    return f"{key[0]},{parity_name(key[1])}"


def build_complex(doc: dict) -> model.Complex:
    if not isinstance(doc, dict) or "dims" not in doc:
        raise InputError("complex documents need a 'dims' object")
    dims = {}
    for key, n in doc["dims"].items():
        if not isinstance(n, int) or n < 0:
            raise InputError(f"bad dimension {n!r} at {key!r}")
        dims[_parse_key(key)] = n
    diff = {}
    for key, mat in doc.get("differential", {}).items():
        diff[_parse_key(key)] = [[_parse_fraction(x) for x in row] for row in mat]
    try:
        return model.Complex(dims, diff)
    except AlgebraError as exc:
        if "d^2" in str(exc):
            raise _Verification({"witness": str(exc)}) from exc
        raise InputError(str(exc)) from exc


def build_chain_map(doc: dict) -> model.ChainMap:
    if not isinstance(doc, dict) or "source" not in doc or "target" not in doc:
        raise InputError("chain map documents need 'source', 'target' and 'blocks'")
    source = build_complex(doc["source"])
    target = build_complex(doc["target"])
    blocks = {}
    for key, mat in doc.get("blocks", {}).items():
        blocks[_parse_key(key)] = [[_parse_fraction(x) for x in row] for row in mat]
    return model.ChainMap(source, target, blocks)


def _matrix_json(mat) -> list[list[str]]:
    return [[str(x) for x in row] for row in mat]


def _complex_json(c: model.Complex) -> dict:
    return {
        "dims": {_key_str(k): n for k, n in sorted(c.dims.items())},
        "differential": {_key_str(k): _matrix_json(m) for k, m in sorted(c.diff.items())},
    }


def _blocks_json(f: model.ChainMap) -> dict:
    return {_key_str(k): _matrix_json(m) for k, m in sorted(f.blocks.items())}


# -- shared option handling -----------------------------------------------------------


def _parse_window(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise InputError(f"window looks like '-3:3'; got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InputError(f"bad window {text!r}") from exc
    if lo > hi:
        raise InputError(f"empty window {text!r}")
    return lo, hi


def _require_algebra(args) -> DGAlgebra:
    dga, witness = build_algebra(_load_json(args.input))
    if witness is not None:
        raise _Verification(witness)
    return dga


class _Verification(Exception):
    """A mathematical check failed; carries the report body (exit code 1)."""

    def __init__(self, body: dict):
        super().__init__(body.get("witness", "verification failed"))
        self.body = body


def _cohomology_entries(dga: DGAlgebra, window, cap, nonzero_only=False) -> list[dict]:
    report = dga.cohomology(window[0], window[1], cap)
    entries = []
    for item in report.to_dict()["entries"]:
        if nonzero_only and item["dim"] == 0:
            continue
        entries.append(item)
    return entries


# -- command handlers -----------------------------------------------------------------


def cmd_check(args) -> dict:
    dga, witness = build_algebra(_load_json(args.input))
    if witness is not None:
        raise _Verification(witness)
    window = args.window
    entries = _cohomology_entries(dga, window, args.degcap, nonzero_only=True)
    return {
        "valid": True,
        "cohomology": [
            {"weight": e["weight"], "parity": e["parity"], "dim": e["dim"]}
            for e in entries
        ],
    }


def cmd_cohomology(args) -> dict:
    dga = _require_algebra(args)
    report = dga.cohomology(args.window[0], args.window[1], args.degcap)
    return report.to_dict()


def cmd_forms_omega(args) -> dict:
    doc = _load_json(args.input)
    dga, witness = build_algebra(doc)
    if witness is not None:
        raise _Verification(witness)
    forms = FormsAlgebra(dga.table)
    out: dict = {
        "generators": [
            {"name": g.name, "weight": g.weight, "parity": parity_name(g.parity)}
            for g in forms.table.generators
        ],
        "de_rham": {
            g.name: render(forms.de_rham(Element.generator(forms.table, g.name)))
            for g in forms.table.generators
        },
    }
    if doc.get("differential"):
        total = forms.total_differential(dga)
        out["total_differential"] = {
            g.name: render(total(Element.generator(forms.table, g.name)))
            for g in forms.table.generators
        }
        out["total_square_zero"] = not DGAlgebra(
            forms.table, total, check=False
        ).square_witnesses()
    return out


def cmd_cartan_check(args) -> dict:
    dga = _require_algebra(args)
    forms = FormsAlgebra(dga.table)
    rng = random.Random(args.seed)
    names = ["cartan_formula", "euler_contraction", "euler_lie",
             "contractions_commute", "lie_contraction", "lie_lie"]
    counts = {name: 0 for name in names}
    spot_checks = 0
    all_pass = True
    for _ in range(args.pairs):
        D1 = sampling.random_derivation(rng, dga.table, rng.randint(-1, 2),
                                        rng.randint(0, 1), cap=3)
        D2 = sampling.random_derivation(rng, dga.table, rng.randint(-1, 2),
                                        rng.randint(0, 1), cap=3)
        results = forms.cartan_relations(D1, D2)
        for name in names:
            if results[name]:
                counts[name] += 1
            else:
                all_pass = False
        # spot-check the Cartan formula on sampled low-degree elements:
        # [i, d](a) = i(d a) - (-1)^{|i|} d(i a) since d is odd
        L1 = forms.lie_derivative(D1)
        d = forms.de_rham
        i1 = forms.contraction(D1)
        sign = 1 if i1.parity_shift else -1
        for _ in range(3):
            a = sampling.random_element(rng, forms.table, max_degree=3, terms=3)
            lhs = i1(d(a)) + d(i1(a)) * sign
            if lhs != L1(a):
                all_pass = False
            spot_checks += 1
    return {
        "pairs": args.pairs,
        "seed": args.seed,
        "relation_passes": counts,
        "element_spot_checks": spot_checks,
        "all_pass": all_pass,
    }


def cmd_integrate(args) -> dict:
    dga = _require_algebra(args)
    table = dga.table
    try:
        expr = parse(table, args.expr)
        lower = parse(table, args.lower)
        upper = parse(table, args.upper)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    try:
        value = integrate(expr, args.var, lower, upper)
    except AlgebraError as exc:
        raise InputError(str(exc)) from exc
    return {
        "expression": render(expr),
        "variable": args.var,
        "lower": render(lower),
        "upper": render(upper),
        "integral": render(value),
    }


def cmd_berezin(args) -> dict:
    dga = _require_algebra(args)
    try:
        expr = parse(dga.table, args.expr)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    try:
        value = berezin(expr, args.var)
    except AlgebraError as exc:
        raise InputError(str(exc)) from exc
    return {"expression": render(expr), "variable": args.var,
            "integral": render(value)}


def cmd_cylinder_contract(args) -> dict:
    dga = _require_algebra(args)
    try:
        cyl = Cylinder(dga, var=args.var)
    except AlgebraError as exc:
        raise InputError(str(exc)) from exc
    try:
        expr = parse(cyl.table, args.expr)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    h = cyl.contract(expr)
    defect = cyl.homotopy_defect(expr)
    if not defect.is_zero():
        raise _Verification({
            "witness": "homotopy identity failed",
            "detail": render(defect),
        })
    return {
        "expression": render(expr),
        "contraction": render(h),
        "ends": {"at_0": render(cyl.p0(expr)), "at_1": render(cyl.p1(expr))},
        "homotopy_identity": True,
    }


def _simplicial_expr(args, forms) -> Element:
    try:
        raw = parse(barycentric_table(forms.n), args.form)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    return eliminate(forms, raw)


def _tuple_str(indices) -> str:
    return "w(" + ",".join(str(i) for i in indices) + ")"


def cmd_simplicial_faces(args) -> dict:
    n = args.n
    if n < 0:
        raise InputError("--n must be non-negative")
    faces = []
    source = simplex_forms(n)
    if n >= 1:
        target = simplex_forms(n - 1)
        for i in range(n + 1):
            phi = face_tuple(n, i)
            fmap = face_pullback(n, i)
            images = {}
            for g in source.table.generators:
                images[g.name] = render(fmap(Element.generator(source.table, g.name)))
            faces.append({"index": i, "vertex_map": list(phi), "images": images})
    degeneracies = []
    target_up = simplex_forms(n + 1)
    for i in range(n + 1):
        phi = degeneracy_tuple(n, i)
        smap = pullback(phi, source, target_up)
        images = {}
        for g in source.table.generators:
            images[g.name] = render(smap(Element.generator(source.table, g.name)))
        degeneracies.append({"index": i, "vertex_map": list(phi), "images": images})
    return {"n": n, "faces": faces, "degeneracies": degeneracies}


def cmd_simplicial_whitney(args) -> dict:
    n = args.n
    if n < 0:
        raise InputError("--n must be non-negative")
    degrees = range(n + 1) if args.k is None else [args.k]
    forms = simplex_forms(n)
    entries = []
    for k in degrees:
        if not 0 <= k <= n:
            raise InputError(f"--k must lie in 0..{n}")
        for I in whitney_tuples(n, k):
            entry = {
                "tuple": _tuple_str(I),
                "form": render(whitney(forms, I)),
            }
            if args.barycentric:
                entry["barycentric"] = render(barycentric_whitney(n, I))
            entries.append(entry)
    return {"n": n, "forms": entries}


def cmd_simplicial_project(args) -> dict:
    forms = simplex_forms(args.n)
    element = _simplicial_expr(args, forms)
    image = whitney_projection(forms, element)
    expansion = []
    for k in range(forms.n + 1):
        for I in whitney_tuples(forms.n, k):
            coeff = simplex_integral(forms, I, element)
            if coeff:
                item = {"tuple": _tuple_str(I), "coefficient": str(coeff)}
                if args.barycentric:
                    item["barycentric"] = render(barycentric_whitney(forms.n, I))
                expansion.append(item)
    return {
        "n": args.n,
        "form": render(element),
        "projection": render(image),
        "expansion": expansion,
    }


def cmd_simplicial_dupont(args) -> dict:
    forms = simplex_forms(args.n)
    element = _simplicial_expr(args, forms)
    s_image = dupont_homotopy(forms, element)
    d = forms.d
    identity = (d(s_image) + dupont_homotopy(forms, d(element))
                == element - whitney_projection(forms, element))
    if not identity:
        raise _Verification({
            "witness": "contraction identity failed",
            "detail": render(element),
        })
    return {
        "n": args.n,
        "form": render(element),
        "s_image": render(s_image),
        "identity_check": True,
    }


def cmd_simplicial_duality(args) -> dict:
    n = args.n
    if n < 0:
        raise InputError("--n must be non-negative")
    forms = simplex_forms(n)
    degrees = []
    all_pass = True
    for k in range(n + 1):
        tuples = whitney_tuples(n, k)
        ok = True
        for I in tuples:
            w = whitney(forms, I)
            for J in tuples:
                expected = Fraction(1 if I == J else 0)
                got_d = simplex_integral(forms, J, w, method="dirichlet")
                got_i = simplex_integral(forms, J, w, method="iterated")
                if got_d != expected or got_i != expected:
                    ok = False
        degrees.append({"k": k, "tuples": len(tuples), "dual_basis": ok})
        all_pass = all_pass and ok
    if not all_pass:
        raise _Verification({"witness": "duality failed", "degrees": degrees})
    return {"n": n, "degrees": degrees, "all_pass": True}


def cmd_cotensor(args) -> dict:
    doc = _load_json(args.input)
    if doc.get("zero"):
        coefficients = ZERO_ALGEBRA
    else:
        dga, witness = build_algebra(doc)
        if witness is not None:
            raise _Verification(witness)
        coefficients = dga
    w_min, w_max = args.window
    shape = args.shape
    if shape == "horn" and args.horn_vertex is None:
        raise InputError("--shape horn needs --horn-vertex")
    horn_vertex = args.horn_vertex if shape == "horn" else None
    out = cotensor_report(coefficients, args.n, shape, horn_vertex,
                          w_min, w_max, args.degcap)
    if shape != "simplex" and coefficients != ZERO_ALGEBRA:
        out["filling"] = filling_report(coefficients, args.n, shape, horn_vertex,
                                        w_min, w_max, args.degcap)
    return out


def cmd_path_object(args) -> dict:
    dga = _require_algebra(args)
    path = PathObject(dga, var=args.var)
    cyl = path.cylinder
    rng = random.Random(args.seed)
    t = cyl.t()
    one = Element.one(cyl.table)
    witness_pass = diagonal_pass = homotopy_pass = True
    for _ in range(args.trials):
        a0 = sampling.random_element(rng, dga.table, max_degree=3, terms=3)
        a1 = sampling.random_element(rng, dga.table, max_degree=3, terms=3)
        line = cyl.include(a0) * (one - t) + cyl.include(a1) * t
        if path.q(line) != (a0, a1):
            witness_pass = False
        if not path.factors_diagonal(a0):
            diagonal_pass = False
        w = sampling.random_element(rng, cyl.table, max_degree=3, terms=3)
        if not cyl.homotopy_defect(w).is_zero():
            homotopy_pass = False
    body = {
        "trials": args.trials,
        "seed": args.seed,
        "witness_formula": witness_pass,
        "diagonal_factorization": diagonal_pass,
        "homotopy_identity": homotopy_pass,
        "all_pass": witness_pass and diagonal_pass and homotopy_pass,
    }
    if not body["all_pass"]:
        raise _Verification({"witness": "path object checks failed", **body})
    return body


def cmd_complex_cohomology(args) -> dict:
    c = build_complex(_load_json(args.input))
    dims = model.cohomology_dims(c)
    return {
        "dims": {_key_str(k): v for k, v in sorted(dims.items())},
        "total_dim": sum(dims.values()),
        "acyclic": not dims,
    }


def cmd_complex_classify(args) -> dict:
    try:
        f = build_chain_map(_load_json(args.input))
    except AlgebraError as exc:
        raise _Verification({"witness": str(exc)}) from exc
    fib = model.is_fibration(f)
    cof = model.is_cofibration(f)
    weq = model.is_weak_equivalence(f)
    return {
        "fibration": fib,
        "cofibration": cof,
        "weak_equivalence": weq,
        "acyclic_fibration": fib and weq,
        "acyclic_cofibration": cof and weq,
    }


def cmd_complex_lift(args) -> dict:
    doc = _load_json(args.input)
    try:
        maps = {name: build_chain_map(doc[name])
                for name in ("i", "p", "top", "bottom")}
    except KeyError as exc:
        raise InputError(f"lift documents need maps 'i', 'p', 'top', 'bottom'") from exc
    except AlgebraError as exc:
        raise _Verification({"witness": str(exc)}) from exc
    try:
        h, cert = model.solve_lift(maps["i"], maps["p"],
                                   top=maps["top"], bottom=maps["bottom"])
    except AlgebraError as exc:
        raise _Verification({"witness": str(exc)}) from exc
    out = {"solvable": h is not None, "certificate": cert}
    if h is not None:
        out["lift"] = _blocks_json(h)
    return out


def cmd_complex_factorize(args) -> dict:
    try:
        f = build_chain_map(_load_json(args.input))
    except AlgebraError as exc:
        raise _Verification({"witness": str(exc)}) from exc
    j, q = model.factorize(f, mode=args.mode)
    checks = model.verify_factorization(f, j, q, args.mode)
    if not checks["ok"]:
        raise _Verification({"witness": "factorization checks failed", **checks})
    return {
        "mode": args.mode,
        "middle": _complex_json(j.target),
        "left": _blocks_json(j),
        "right": _blocks_json(q),
        "checks": checks,
    }


def cmd_cells(args) -> dict:
    catalog = model.cell_catalog()
    entries = []
    for name in sorted(catalog):
        c = catalog[name]
        dims = model.cohomology_dims(c)
        entries.append({
            "name": name,
            "complex": _complex_json(c),
            "cohomology": {_key_str(k): v for k, v in sorted(dims.items())},
        })
    return {"cells": entries}


def cmd_sym_kunneth(args) -> dict:
    v = build_complex(_load_json(args.input))
    w_min, w_max = args.window
    out = model.kunneth_report(v, w_min, w_max, args.degcap)
    if not out["all_agree"]:
        raise _Verification({"witness": "dimension mismatch", **out})
    return out


# -- report envelope and entry point ----------------------------------------------


def _option_dict(args) -> dict:
    skip = {"func", "format", "command", "subcommand"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        if key == "window":
            out[key] = f"{value[0]}:{value[1]}"
        else:
            out[key] = value
    out["format"] = args.format
    return out


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
    else:
        lines.append(f"{pad}{_scalar_text(value)}")
    return lines


def _scalar_text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None or value == {} or value == []:
        return "none" if value is None else "(empty)"
    return str(value)


def _emit(envelope: dict, fmt: str) -> None:
    if fmt == "text":
        sys.stdout.write("\n".join(_render_text(envelope)) + "\n")
    else:
        sys.stdout.write(json.dumps(envelope, indent=2, sort_keys=True) + "\n")


def _add_common(parser: argparse.ArgumentParser, needs_input: bool = False) -> None:
    parser.add_argument("--input", default="-" if needs_input else None,
                        help="input JSON document (file path or '-' for stdin)")
    parser.add_argument("--window", default="-3:3",
                        help="weight window W_MIN:W_MAX (default -3:3)")
    parser.add_argument("--degcap", type=int, default=4,
                        help="polynomial degree cap (default 4)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized panels (default 0)")
    parser.add_argument("--barycentric", action="store_true",
                        help="also print simplicial forms in redundant coordinates")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", dest="format", action="store_const", const="json",
                       help="JSON output (default)")
    group.add_argument("--text", dest="format", action="store_const", const="text",
                       help="plain text output")
    parser.set_defaults(format="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdga",
        description="Exact calculator for differential graded-commutative algebras.",
    )
    parser.add_argument("--version", action="version", version=f"sdga {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, needs_input=False, help=None):
        p = sub.add_parser(name, help=help)
        _add_common(p, needs_input=needs_input)
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, needs_input=True,
        help="validate an algebra document and report its cohomology")
    add("cohomology", cmd_cohomology, needs_input=True,
        help="cohomology dimensions, exactness flags and representatives")
    add("forms-omega", cmd_forms_omega, needs_input=True,
        help="the de Rham forms algebra of the input algebra")
    p = add("cartan-check", cmd_cartan_check, needs_input=True,
            help="verify the six contraction/Lie-derivative relations")
    p.add_argument("--pairs", type=int, default=10)
    p = add("integrate", cmd_integrate, needs_input=True,
            help="definite integral in one even variable")
    p.add_argument("--expr", required=True)
    p.add_argument("--var", required=True)
    p.add_argument("--lower", default="0")
    p.add_argument("--upper", default="1")
    p = add("berezin", cmd_berezin, needs_input=True,
            help="Berezin integral in one odd variable")
    p.add_argument("--expr", required=True)
    p.add_argument("--var", required=True)
    p = add("cylinder-contract", cmd_cylinder_contract, needs_input=True,
            help="apply the cylinder contraction and check its identity")
    p.add_argument("--expr", required=True)
    p.add_argument("--var", default="t")

    simp = sub.add_parser("simplicial", help="simplex forms operations")
    simp_sub = simp.add_subparsers(dest="subcommand", required=True)

    def add_simp(name, func, help=None):
        p = simp_sub.add_parser(name, help=help)
        _add_common(p)
        p.add_argument("--n", type=int, required=True)
        p.set_defaults(func=func)
        return p

    add_simp("faces", cmd_simplicial_faces,
             help="cosimplicial structure maps and their pullbacks")
    p = add_simp("whitney", cmd_simplicial_whitney, help="elementary forms")
    p.add_argument("--k", type=int, default=None)
    p = add_simp("project", cmd_simplicial_project,
                 help="projection onto the elementary forms")
    p.add_argument("--form", required=True)
    p = add_simp("dupont", cmd_simplicial_dupont,
                 help="the contraction homotopy and its identity")
    p.add_argument("--form", required=True)
    add_simp("duality", cmd_simplicial_duality,
             help="integrals against elementary forms are a dual basis")

    p = add("cotensor", cmd_cotensor, needs_input=True,
            help="cotensor of an algebra with a simplex, boundary or horn")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shape", choices=["simplex", "boundary", "horn"],
                   default="simplex")
    p.add_argument("--horn-vertex", type=int, default=None)

    p = add("path-object", cmd_path_object, needs_input=True,
            help="path object checks: diagonal factorization and homotopy")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--var", default="t")

    comp = sub.add_parser("complex", help="finite cochain complex operations")
    comp_sub = comp.add_subparsers(dest="subcommand", required=True)

    def add_comp(name, func, help=None):
        p = comp_sub.add_parser(name, help=help)
        _add_common(p, needs_input=True)
        p.set_defaults(func=func)
        return p

    add_comp("cohomology", cmd_complex_cohomology,
             help="exact cohomology dimensions of a complex")
    add_comp("classify", cmd_complex_classify,
             help="fibration/cofibration/weak-equivalence predicates")
    add_comp("lift", cmd_complex_lift,
             help="solve a lifting square, with a solvability certificate")
    p = add_comp("factorize", cmd_complex_factorize,
                 help="factor a chain map through a middle complex")
    p.add_argument("--mode", choices=["acyclic_cofibration_fibration",
                                      "cofibration_acyclic_fibration"],
                   default="acyclic_cofibration_fibration")

    add("cells", cmd_cells, help="the catalog of disk and sphere complexes")
    add("sym-kunneth", cmd_sym_kunneth, needs_input=True,
        help="compare H(Sym V) with the free algebra on H(V)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.window = _parse_window(args.window)
    except InputError as exc:
        _emit({"error": str(exc), "tool": "sdga", "version": __version__}, args.format)
        return 2
    command = args.command
    if getattr(args, "subcommand", None):
        command = f"{command} {args.subcommand}"
    envelope = {
        "tool": "sdga",
        "version": __version__,
        "command": command,
        "options": _option_dict(args),
    }
    try:
        envelope["report"] = args.func(args)
        envelope["ok"] = True
        _emit(envelope, args.format)
        return 0
    except _Verification as exc:
        envelope["report"] = exc.body
        envelope["ok"] = False
        _emit(envelope, args.format)
        return 1
    except (InputError, AlgebraError) as exc:
        envelope["error"] = str(exc)
        envelope["ok"] = False
        _emit(envelope, args.format)
        return 2


if __name__ == "__main__":
    sys.exit(main())
