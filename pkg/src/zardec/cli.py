"""
Command-line interface and the JSON model file format.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
"""

import argparse
import json
import logging
import sys
import time
from importlib import resources
from itertools import product
from pathlib import Path

from .constructions import (
    BoundInput,
    case1_model,
    case1_witness,
    case2_witness,
    negativity_bound,
)
from .errors import DecompositionError, InvalidCurve, InvalidModel, InvalidProximity, ParseError, ZardecError
from .exact_linalg import RatMatrix, format_rational, is_negative_definite, parse_rational
from .lattice import Curve, DivisorClass, Lattice, discriminant, restricted_gram
from .surface_models import (
    BLOWUP,
    K3_GRAM,
    K3_THEOREM_A,
    LATTICE,
    SurfaceModel,
    blowup_model,
    k3_closed_form_decomposition,
    k3_cone_position,
    ConePosition,
    minus_one_curves,
)
from .zariski import Box, Decomposition, Family, decompose, scan_denominators, verify_decomposition

log = logging.getLogger("zardec")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

DEFAULT_CASE1_CURVE = "2,-1,-1,-1,-1,-1,-1"


class UsageError(ZardecError):
    pass


# --------------------------------------------------------------------------
# model files


def _field(doc, key, where, kind=None, required=True, default=None):
    if key not in doc:
        if required:
            raise ParseError(f"{where}: missing field {key!r}")
        return default
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"{where}.{key}: expected {kind.__name__ if isinstance(kind, type) else kind}")
    return value


def _rational_list(values, where):
    if not isinstance(values, list):
        raise ParseError(f"{where}: expected a list")
    out = []
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise ParseError(f"{where}[{i}]: expected an integer or 'p/q' string")
        try:
            out.append(parse_rational(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}[{i}]: {exc}") from None
    return out


def _curves(doc, key, lattice, where):
    raw = _field(doc, key, where, list, required=False, default=[])
    out = []
    for i, c in enumerate(raw):
        loc = f"{where}.{key}[{i}]"
        if not isinstance(c, dict):
            raise ParseError(f"{loc}: expected an object")
        name = _field(c, "name", loc, str)
        cls = _rational_list(_field(c, "class", loc), f"{loc}.class")
        try:
            out.append(Curve(name, DivisorClass(cls), lattice))
        except InvalidCurve as exc:
            raise InvalidModel(f"{loc}: {exc}") from None
    return out


def model_from_dict(doc, where="model"):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    kind = _field(doc, "kind", where, str)
    try:
        if kind == K3_THEOREM_A:
            gram = doc.get("gram", [list(r) for r in K3_GRAM])
            names = doc.get("basis", ["C1", "C2"])
            lat = _lattice(gram, names, where)
            if lat.rank != 2:
                raise InvalidModel(f"{where}.gram: the Theorem A model has rank 2")
            curves = _curves(doc, "curves", lat, where) if "curves" in doc else [
                Curve("C1", DivisorClass((1, 0)), lat),
                Curve("C2", DivisorClass((0, 1)), lat),
            ]
            return SurfaceModel(lat, curves, K3_THEOREM_A)
        if kind == BLOWUP:
            s = _field(doc, "points", where, int)
            if s < 0:
                raise InvalidModel(f"{where}.points: must be non-negative")
            prox = []
            for i, pair in enumerate(_field(doc, "prox", where, list, required=False, default=[])):
                if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair)):
                    raise ParseError(f"{where}.prox[{i}]: expected [j, i]")
                prox.append(tuple(pair))
            extra = []
            for i, c in enumerate(_field(doc, "extra_curves", where, list, required=False, default=[])):
                loc = f"{where}.extra_curves[{i}]"
                if not isinstance(c, dict):
                    raise ParseError(f"{loc}: expected an object")
                extra.append((_field(c, "name", loc, str), _rational_list(_field(c, "class", loc), f"{loc}.class")))
            try:
                return _blowup(s, prox, extra, where)
            except InvalidProximity as exc:
                raise InvalidModel(f"{where}.prox: {exc}") from None
        if kind == LATTICE:
            rank = _field(doc, "rank", where, int)
            lat = _lattice(_field(doc, "gram", where, list), _field(doc, "basis", where, list, required=False), where)
            if lat.rank != rank:
                raise InvalidModel(f"{where}.rank: says {rank}, gram has rank {lat.rank}")
            return SurfaceModel(lat, _curves(doc, "curves", lat, where), LATTICE)
    except InvalidCurve as exc:
        raise InvalidModel(f"{where}: {exc}") from None
    raise ParseError(f"{where}.kind: unknown kind {kind!r}")


def _blowup(s, prox, extra, where):
    bad = []
    for i, (name, cls) in enumerate(extra):
        if len(cls) != s + 1:
            bad.append(f"{where}.extra_curves[{i}].class: expected {s + 1} entries, got {len(cls)}")
    if bad:
        raise InvalidModel(bad[0])
    model = blowup_model(s, frozenset(prox))
    lat = model.lattice
    curves = list(model.curves)
    for i, (name, cls) in enumerate(extra):
        try:
            curves.append(Curve(name, DivisorClass(cls), lat))
        except InvalidCurve as exc:
            raise InvalidModel(f"{where}.extra_curves[{i}]: {exc}") from None
    return SurfaceModel(lat, curves, BLOWUP, model.proximity)


def _lattice(gram, names, where):
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise ParseError(f"{where}.gram: expected a list of rows")
    rows = [_rational_list(r, f"{where}.gram[{i}]") for i, r in enumerate(gram)]
    try:
        return Lattice(RatMatrix(rows), names)
    except ValueError as exc:
        raise InvalidModel(f"{where}.gram: {exc}") from None


def model_to_dict(model):
    """Inverse of :func:`model_from_dict`."""
    lat = model.lattice

    def curve_list(curves):
        return [{"name": c.name, "class": _json_coords(c.cls)} for c in curves]

    if model.kind == K3_THEOREM_A:
        return {
            "kind": K3_THEOREM_A,
            "gram": [[int(x) for x in r] for r in lat.gram.rows],
            "basis": list(lat.basis_names),
            "curves": curve_list(model.curves),
        }
    if model.kind == BLOWUP:
        s = model.proximity.s
        return {
            "kind": BLOWUP,
            "points": s,
            "prox": [list(p) for p in model.proximity.sorted_pairs()],
            "extra_curves": curve_list(model.curves[s:]),
        }
    return {
        "kind": LATTICE,
        "rank": lat.rank,
        "gram": [[int(x) for x in r] for r in lat.gram.rows],
        "basis": list(lat.basis_names),
        "curves": curve_list(model.curves),
    }


def _json_coords(d):
    return [int(c) if c.denominator == 1 else format_rational(c) for c in d.coords]


def load_model_file(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return model_from_dict(doc, where=str(path))


def dump_model_file(model, path):
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def bundled_model_path(name="k3a"):
    return resources.files("zardec") / "data" / f"{name}.json"


def parse_inline_model(text):
    """``blowup:s=<n>[,prox=j<i;...]``"""
    body = text.split(":", 1)[1] if ":" in text else ""
    s = None
    prox = []
    for part in filter(None, body.split(",")):
        key, _, value = part.partition("=")
        key = key.strip()
        if key == "s":
            try:
                s = int(value)
            except ValueError:
                raise ParseError(f"{text!r}: s must be an integer") from None
        elif key == "prox":
            for item in filter(None, value.split(";")):
                j, sep, i = item.partition("<")
                try:
                    prox.append((int(j), int(i)))
                except ValueError:
                    raise ParseError(f"{text!r}: bad proximity {item!r}, expected j<i") from None
        else:
            raise ParseError(f"{text!r}: unknown key {key!r}")
    if s is None:
        raise ParseError(f"{text!r}: missing s=<points>")
    try:
        return blowup_model(s, frozenset(prox))
    except InvalidProximity as exc:
        raise InvalidModel(f"{text!r}: {exc}") from None


def resolve_model(text):
    if text == "k3a":
        with resources.as_file(bundled_model_path("k3a")) as p:
            return load_model_file(p)
    if text.startswith("blowup:"):
        return parse_inline_model(text)
    return load_model_file(text)


def parse_divisor(text, rank=None):
    try:
        coords = [parse_rational(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad divisor {text!r}; expected comma-separated rationals") from None
    if rank is not None and len(coords) != rank:
        raise ParseError(f"divisor {text!r} has {len(coords)} coordinates, model rank is {rank}")
    return DivisorClass(coords)


def parse_box(text, model):
    """``B`` or ``lo:hi,lo:hi,...``.

    A bare B means [0, B] on every coordinate, except on blow-ups where the
    E-coordinates range over [-B, 0] (classes dH - sum a_i E_i, a_i >= 0).
    """
    if ":" not in text:
        try:
            b = int(text)
        except ValueError:
            raise ParseError(f"bad box {text!r}") from None
        if b < 0:
            raise ParseError("box bound must be non-negative")
        if model.kind == BLOWUP:
            return Box([(0, b)] + [(-b, 0)] * (model.rank - 1))
        return Box.cube(model.rank, b)
    ranges = []
    for part in text.split(","):
        lo, _, hi = part.partition(":")
        try:
            ranges.append((int(lo), int(hi)))
        except ValueError:
            raise ParseError(f"bad box range {part!r}") from None
    if len(ranges) != model.rank:
        raise ParseError(f"box has {len(ranges)} ranges, model rank is {model.rank}")
    return Box(ranges)


def parse_family(text, model):
    """``multiples:V:T`` or ``affine:A:C:T``."""
    parts = text.split(":")
    try:
        if parts[0] == "multiples" and len(parts) == 3:
            return Family.multiples(parse_divisor(parts[1], model.rank), int(parts[2]))
        if parts[0] == "affine" and len(parts) == 4:
            return Family.affine(
                parse_divisor(parts[1], model.rank), parse_divisor(parts[2], model.rank), int(parts[3])
            )
    except ValueError:
        pass
    raise ParseError(f"bad family {text!r}; expected multiples:V:T or affine:A:C:T")


# --------------------------------------------------------------------------
# reports


def emit(payload, text, fmt, out):
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _support_text(lat, dec):
    if not dec.support:
        return "0"
    return " + ".join(f"{format_rational(x)}·({c.name})" if "-" in c.name else f"{format_rational(x)}·{c.name}"
                      for c, x in dec.support)


def cmd_decompose(args, out):
    model = resolve_model(args.model)
    D = parse_divisor(args.divisor, model.rank)
    try:
        dec = decompose(model, D)
    except DecompositionError as exc:
        emit({"status": "fail", "error": str(exc)}, f"decomposition failed: {exc}", args.format, out)
        return EXIT_FAIL
    lat = model.lattice
    ver = verify_decomposition(model, D, dec)
    payload = dec.to_dict(lat)
    payload["verified"] = ver.ok
    payload["basis"] = list(lat.basis_names)
    text = (
        f"D = {lat.format_class(D)}\n"
        f"P = {lat.format_class(dec.P)}\n"
        f"N = {lat.format_class(dec.N)}\n"
        f"support: {_support_text(lat, dec)}\n"
        f"denominator {dec.denominator}\n"
        f"N^2 = {format_rational(lat.square(dec.N))}\n"
        f"axioms: {'ok' if ver else ver.message}"
    )
    emit(payload, text, args.format, out)
    return EXIT_OK if ver else EXIT_FAIL


def cmd_scan(args, out):
    model = resolve_model(args.model)
    if args.family:
        region = parse_family(args.family, model)
    elif args.box is not None:
        region = parse_box(args.box, model)
    else:
        raise UsageError("scan needs --box or --family")
    report = scan_denominators(model, region, max_witnesses=args.witnesses)
    payload = report.to_dict()
    hist = ", ".join(f"{k}: {v}" for k, v in sorted(report.histogram.items())) or "empty"
    text = (
        f"attempted {report.attempted}, decomposed {report.decomposed}\n"
        f"max denominator {report.max_denominator}\n"
        f"histogram {{{hist}}}\n"
        f"skipped {payload['skipped'] or 0}"
    )
    emit(payload, text, args.format, out)
    return EXIT_OK


def theorem_a_check(model, box, max_failures=10):
    """Engine vs closed form vs axioms on every pseudoeffective class in [0, box]^2."""
    if model.rank != 2 or sorted(tuple(c.cls) for c in model.curves) != [(0, 1), (1, 0)]:
        raise InvalidModel("theorem-a needs a rank-2 model declaring C1=(1,0), C2=(0,1)")
    failures = []
    nfail = 0
    hist = {}
    checked = 0
    for m, n in product(range(box + 1), repeat=2):
        if k3_cone_position(m, n) is ConePosition.NOT_PSEUDOEFFECTIVE:
            continue
        checked += 1
        D = DivisorClass((m, n))
        problems = []
        P, N = k3_closed_form_decomposition(m, n)
        try:
            dec = decompose(model, D)
        except DecompositionError as exc:
            dec = None
            problems.append({"source": "engine", "clause": None, "message": str(exc)})
        if dec is not None:
            hist[dec.denominator] = hist.get(dec.denominator, 0) + 1
            ver = verify_decomposition(model, D, dec)
            if not ver:
                problems.append({"source": "engine", "clause": ver.clause, "message": ver.message})
            if dec.denominator != 1:
                problems.append({"source": "engine", "clause": None,
                                 "message": f"denominator {dec.denominator} != 1"})
            if (dec.P, dec.N) != (P, N):
                problems.append({"source": "engine", "clause": None,
                                 "message": f"engine P={dec.P.to_strings()} differs from closed form P={P.to_strings()}"})
        support = []
        for c in model.curves:
            coord = N.coords[0] if tuple(c.cls) == (1, 0) else N.coords[1]
            if coord:
                support.append((c, coord))
        closed = Decomposition(D, P, N, tuple(support))
        ver = verify_decomposition(model, D, closed)
        if not ver:
            problems.append({"source": "closed_form", "clause": ver.clause, "message": ver.message})
        if problems:
            nfail += 1
            if len(failures) < max_failures:
                failures.append({"D": [m, n], "problems": problems})
    return {
        "box": box,
        "checked": checked,
        "failed": nfail,
        "failures": failures,
        "histogram": {str(k): v for k, v in sorted(hist.items())},
        "max_denominator": max(hist, default=1),
        "status": "pass" if nfail == 0 else "fail",
    }


def cmd_verify_theorem_a(args, out):
    model = resolve_model(args.model)
    result = theorem_a_check(model, args.box)
    lines = [
        f"theorem-a over 0 <= m, n <= {args.box}: {result['checked']} pseudoeffective classes",
        f"max denominator {result['max_denominator']}",
    ]
    for f in result["failures"]:
        for p in f["problems"]:
            msg = p["message"] if p["clause"] else f"mismatch: {p['message']}"
            lines.append(f"FAIL D=({f['D'][0]},{f['D'][1]}) [{p['source']}] {msg}")
    lines.append("PASS" if result["status"] == "pass" else f"FAIL ({result['failed']} classes)")
    emit(result, "\n".join(lines), args.format, out)
    return EXIT_OK if result["status"] == "pass" else EXIT_FAIL


def cmd_verify_theorem_b(args, out):
    if args.case == 2:
        s = args.points if args.points is not None else 2
        model, D, expected = case2_witness(s)
        dec = decompose(model, D)
        ver = verify_decomposition(model, D, dec)
        n2 = model.lattice.square(dec.N)
        ok = bool(ver) and dec == expected and dec.denominator == 2 and n2 == parse_rational("-1/2")
        payload = {
            "case": 2,
            "points": s,
            "D": D.to_strings(),
            "decomposition": dec.to_dict(model.lattice),
            "matches_expected": dec == expected,
            "verified": ver.ok,
            "status": "pass" if ok else "fail",
        }
        lat = model.lattice
        text = (
            f"case 2 on {s} points (p2 infinitely near p1)\n"
            f"D = {lat.format_class(D)}\n"
            f"P = {lat.format_class(dec.P)}\n"
            f"N = {_support_text(lat, dec)}\n"
            f"denominator {dec.denominator}\n"
            f"N^2 = {format_rational(n2)}\n"
            + ("PASS" if ok else f"FAIL {ver.message if not ver else 'unexpected decomposition'}")
        )
        emit(payload, text, args.format, out)
        return EXIT_OK if ok else EXIT_FAIL

    C = parse_divisor(args.curve or DEFAULT_CASE1_CURVE)
    s = len(C) - 1 if args.points is None else args.points
    if s < len(C) - 1:
        raise UsageError(f"--points {s} is smaller than the curve's {len(C) - 1} points")
    try:
        model = case1_model(C, s)
        w = case1_witness(model, model.curve("C"))
    except InvalidCurve as exc:
        raise InvalidModel(str(exc)) from None
    dec = decompose(model, w.D)
    ver = verify_decomposition(model, w.D, dec)
    support_ok = [c.name for c, _ in dec.support] == ["C"] and dec.support[0][1] == w.a
    ok = bool(ver) and support_ok and dec.denominator > 1 and w.a.denominator != 1
    payload = {
        "case": 1,
        "points": s,
        "witness": w.to_dict(),
        "decomposition": dec.to_dict(model.lattice),
        "verified": ver.ok,
        "status": "pass" if ok else "fail",
    }
    lat = model.lattice
    text = "\n".join(
        [f"case 1: C = {lat.format_class(C.extended(s + 1))}, C^2 = {format_rational(lat.square(C.extended(s + 1)))}"]
        + [f"  {t}" for t in w.adjustment_trace]
        + [
            f"A = {lat.format_class(w.A)}, e = {w.e}",
            f"D = {lat.format_class(w.D)}",
            f"a = {format_rational(w.a)}",
            f"decompose: N = {_support_text(lat, dec)}, denominator {dec.denominator}",
            "PASS" if ok else "FAIL",
        ]
    )
    emit(payload, text, args.format, out)
    return EXIT_OK if ok else EXIT_FAIL


def proposition_family(model, box, max_mult, threshold):
    """dH - sum a_i E_i, 0 <= d <= box, 0 <= a_i <= max_mult, pairing >= -threshold with every curve."""
    s = model.rank - 1
    dmin = -threshold
    for a in product(range(max_mult + 1), repeat=s):
        tail = tuple(-x for x in a)
        for d in range(box + 1):
            D = DivisorClass((d,) + tail)
            if all(v >= dmin for v in model.pairing_numerators(D)):
                yield D


def proposition_check(s, box, max_mult=3, threshold=3, all_minus_one=False):
    extras = minus_one_curves(s) if all_minus_one else ()
    model = blowup_model(s, (), extras)
    for c in model.curves:
        if c.square != -1:
            raise InvalidModel(f"{c.name} has square {c.square}; the proposition needs (-1)-curves only")
    fam = Family(
        proposition_family(model, box, max_mult, threshold),
        f"dH - sum a_i E_i, 0<=d<={box}, 0<=a_i<={max_mult}, D.C>=-{threshold}",
    )
    report = scan_denominators(model, fam)
    out = report.to_dict()
    out["points"] = s
    out["curves"] = len(model.curves)
    out["status"] = "pass" if report.max_denominator == 1 else "fail"
    return out


def cmd_verify_proposition(args, out):
    result = proposition_check(args.points, args.box, args.max_mult, args.threshold, args.all_minus_one)
    text = (
        f"proposition on {args.points} points, {result['curves']} declared (-1)-curves\n"
        f"decomposed {result['decomposed']} of {result['attempted']}, skipped {result['skipped'] or 0}\n"
        f"max denominator {result['max_denominator']}\n"
        + ("PASS" if result["status"] == "pass" else "FAIL")
    )
    emit(result, text, args.format, out)
    return EXIT_OK if result["status"] == "pass" else EXIT_FAIL


def cmd_bound(args, out):
    try:
        value = negativity_bound(BoundInput(args.d, args.delta))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit({"d": args.d, "delta": args.delta, "bound": value},
         f"b(X) <= {args.d} * {args.d}! * {args.delta} = {value}", args.format, out)
    return EXIT_OK


def cmd_info(args, out):
    model = resolve_model(args.model)
    lat = model.lattice
    disc = discriminant(lat)
    curves = []
    for c in model.curves:
        curves.append({
            "name": c.name,
            "class": c.cls.to_strings(),
            "square": format_rational(c.square),
            "negative_definite": is_negative_definite(restricted_gram(lat, [c])),
        })
    full = is_negative_definite(restricted_gram(lat, model.curves))
    payload = {
        "kind": model.kind,
        "rank": lat.rank,
        "basis": list(lat.basis_names),
        "gram": [[format_rational(x) for x in r] for r in lat.gram.rows],
        "discriminant": format_rational(disc),
        "curves": curves,
        "all_curves_negative_definite": full,
    }
    lines = [f"kind {model.kind}, rank {lat.rank}, discriminant {format_rational(disc)}",
             f"basis {', '.join(lat.basis_names)}"]
    for c in curves:
        lines.append(f"  {c['name']}: ({', '.join(c['class'])}), square {c['square']}")
    lines.append(f"Gram of all declared curves negative definite: {full}")
    emit(payload, "\n".join(lines), args.format, out)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text")

    parser = _Parser(prog="zardec", description="Exact Zariski decompositions on surface lattices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[fmt], help="decompose one divisor class")
    p.add_argument("--model", required=True)
    p.add_argument("--divisor", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("scan", parents=[fmt], help="denominator histogram over a box or family")
    p.add_argument("--model", required=True)
    p.add_argument("--box")
    p.add_argument("--family")
    p.add_argument("--witnesses", type=int, default=10)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="reproduce a theorem")
    vsub = p.add_subparsers(dest="target", required=True, parser_class=_Parser)
    v = vsub.add_parser("theorem-a", parents=[fmt])
    v.add_argument("--box", type=int, required=True)
    v.add_argument("--model", default="k3a")
    v.set_defaults(func=cmd_verify_theorem_a)
    v = vsub.add_parser("theorem-b", parents=[fmt])
    v.add_argument("--case", type=int, choices=[1, 2], required=True)
    v.add_argument("--points", type=int)
    v.add_argument("--curve")
    v.set_defaults(func=cmd_verify_theorem_b)
    v = vsub.add_parser("proposition", parents=[fmt])
    v.add_argument("--points", type=int, required=True)
    v.add_argument("--box", type=int, required=True)
    v.add_argument("--max-mult", type=int, default=3)
    v.add_argument("--threshold", type=int, default=3)
    v.add_argument("--all-minus-one", action="store_true",
                   help="also declare every (-1)-class (blow-ups of at most 8 general points)")
    v.set_defaults(func=cmd_verify_proposition)

    p = sub.add_parser("bound", parents=[fmt], help="negativity bound d * d! * |delta|")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("info", parents=[fmt], help="rank, discriminant and curves of a model")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_info)
    return parser


_VALUE_FLAGS = ("--divisor", "--curve", "--box", "--family")


def _glue_values(argv):
    # argparse mistakes "-1,-1" for an option; bind such values with "=".
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None, out=None, err=None):
    """Parse ``argv`` and execute; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    start = time.monotonic()
    try:
        args = build_parser().parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
        code = args.func(args, out)
    except ZardecError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    log.info("finished in %.3fs", time.monotonic() - start)
    return code


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s", stream=sys.stderr)
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
