"""Command-line surface: load arrangements, run any pipeline stage.

Every command accepts --field, --seed, --json and --order, and emits
either human-readable text (Betti diagrams in the fixed-width layout) or
a versioned JSON report.  Exit codes: 0 success, 1 validation or parse
error, 2 internal limit (saturation or reseed caps).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import corpus
from .arrangement import (combinatorial_degrees, generic_section,
                          graphic_arrangement, hypothesis_check,
                          jacobian_ideal, lattice_isomorphic,
                          parse_arrangement, parse_graph, radical_comb,
                          rule_powers, symbolic_intersection, top_comb,
                          triangle_condition, uniform_powers,
                          random_linear_form)
from .errors import InternalLimitError, SingError, ValidationError
from .groebner import saturate_irrelevant
from .homology import (betti_json, betti_of, betti_text, dimensions, hilbert,
                       is_cm, rao_dimensions)
from .liaison import (LiaisonStep, arrangement_product_hypotheses,
                      basic_double_link, construct_lr, construct_lr_radical,
                      liaison_addition, shifted_rao_sum, verify_construction)
from .polyring import GF, QQ, DEFAULT_PRIME, GREVLEX, LEX, parse_linear_expr

_ORDERS = {"grevlex": GREVLEX, "lex": LEX}


def _parse_field(text):
    if text in ("q", "Q", "qq", "QQ"):
        return QQ, "q"
    if text.startswith("p:"):
        text = text[2:]
    try:
        p = int(text)
    except ValueError:
        raise ValidationError(f"bad --field value {text!r}; use 'q' or 'p:<prime>'")
    return GF(p), f"p:{p}"


class Report:
    """Envelope for one command run: echo, field, seed, artifact, timing."""

    def __init__(self, argv, field_label, seed, order="grevlex"):
        self.argv = list(argv)
        self.field_label = field_label
        self.seed = seed
        self.order = order
        self.artifact = {}
        self.lines = []
        self.started = time.monotonic()

    def say(self, text=""):
        self.lines.append(text)

    def emit(self, as_json):
        if as_json:
            payload = {
                "schema": 1,
                "command": self.argv,
                "field": self.field_label,
                "seed": self.seed,
                "order": self.order,
                "artifact": self.artifact,
                "elapsed_seconds": round(time.monotonic() - self.started, 3),
            }
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_arrangement(path, field, report):
    text = _read(path)
    arr = parse_arrangement(text, field=field)
    if field.p is not None:
        try:
            from .arrangement import _check_prime_safety
            _check_prime_safety(arr)
        except ValidationError:
            # characteristic too small for this input: fall back to exact QQ
            report.field_label = "q (fallback)"
            arr = parse_arrangement(text, field=QQ)
    return arr


_IDEAL_CHOICES = ("jacobian", "radical", "top", "saturation")


def _build_ideal(arr, which):
    if which == "jacobian":
        return jacobian_ideal(arr)
    if which == "radical":
        return radical_comb(arr)
    if which == "top":
        return top_comb(arr)
    if which == "saturation":
        return saturate_irrelevant(jacobian_ideal(arr))
    raise ValidationError(f"unknown ideal selector {which!r}")


def _hilbert_payload(h):
    return {
        "hilbert_polynomial": h.hp_string(),
        "dimension": h.dimension,
        "degree": h.degree(),
        "regularity_index": h.regularity_index,
        "series_numerator": list(h.numerator),
    }


def _ideal_report(report, arr, ideal, name, args):
    want_all = not (args.betti or args.hilbert or args.cm or args.rao)
    h = hilbert(ideal)
    krull, codim, pd = dimensions(ideal)
    report.artifact["ideal"] = name
    report.artifact["generators"] = len(ideal.gens)
    report.say(f"{name}: {len(ideal.gens)} generators")
    if args.hilbert or want_all:
        report.artifact["hilbert"] = _hilbert_payload(h)
        report.say(f"Hilbert polynomial: {h.hp_string()}")
        report.say(f"degree: {h.degree()}")
    if args.cm or want_all:
        report.artifact["dimensions"] = {"krull": krull, "codim": codim,
                                         "projective": pd}
        report.artifact["cohen_macaulay"] = is_cm(ideal)
        report.say(f"dimensions: krull {krull}, codim {codim}, pd {pd}")
        report.say(f"Cohen-Macaulay: {is_cm(ideal)}")
    if args.betti:
        table = betti_of(ideal)
        report.artifact["betti"] = betti_json(table)
        report.say(betti_text(table))
    if args.rao:
        table = rao_dimensions(ideal)
        report.artifact["rao"] = {str(k): v for k, v in sorted(table.items())}
        report.say(f"deficiency table: {table if table else '{} (ACM)'}")


def _add_ideal_flags(sub):
    sub.add_argument("--betti", action="store_true")
    sub.add_argument("--hilbert", action="store_true")
    sub.add_argument("--cm", action="store_true")
    sub.add_argument("--rao", action="store_true")


def _rao_text(table):
    return table if table else "{} (ACM)"


# ---------------------------------------------------------------------------
# commands


def _cmd_lattice(args, field, report):
    arr = _load_arrangement(args.file, field, report)
    if args.other:
        other = _load_arrangement(args.other, field, report)
        same = lattice_isomorphic(arr, other)
        report.artifact["isomorphic"] = same
        report.say(f"incidence lattices isomorphic: {same}")
        return
    flats = arr.flats()
    counts = {}
    for f in flats:
        counts[f.multiplicity] = counts.get(f.multiplicity, 0) + 1
    deg_red, deg_top = combinatorial_degrees(arr)
    report.artifact["flats"] = [
        {"multiplicity": f.multiplicity, "members": [m + 1 for m in f.members]}
        for f in flats]
    report.artifact["counts"] = {str(k): v for k, v in sorted(counts.items())}
    report.artifact["degrees"] = {"reduced": deg_red, "top": deg_top}
    report.say(f"{arr.d} hyperplanes, {len(flats)} flats")
    for e in sorted(counts, reverse=True):
        report.say(f"  multiplicity {e}: {counts[e]} flats")
    report.say(f"degrees: reduced {deg_red}, top {deg_top}")


def _cmd_ideal(which):
    def run(args, field, report):
        arr = _load_arrangement(args.file, field, report)
        ideal = _build_ideal(arr, which)
        _ideal_report(report, arr, ideal, which, args)
        if which == "jacobian":
            sat = saturate_irrelevant(ideal)
            top = top_comb(arr)
            report.artifact["saturated"] = sat.equals(ideal)
            report.artifact["unmixed"] = sat.equals(top)
            report.say(f"saturated: {report.artifact['saturated']}")
            report.say(f"unmixed (saturation equals top part): "
                       f"{report.artifact['unmixed']}")
    return run


def _cmd_symbolic(args, field, report):
    arr = _load_arrangement(args.file, field, report)
    if args.uniform is not None:
        powers = uniform_powers(arr, args.uniform)
    else:
        powers = rule_powers(arr, args.rule if args.rule is not None else 2)
    ideal = symbolic_intersection(arr, powers, override=args.override)
    _ideal_report(report, arr, ideal, "symbolic", args)


def _cmd_selector(kind):
    def run(args, field, report):
        arr = _load_arrangement(args.file, field, report)
        ideal = _build_ideal(arr, args.ideal)
        if kind == "betti":
            table = betti_of(ideal)
            report.artifact["betti"] = betti_json(table)
            report.say(betti_text(table))
        elif kind == "hilbert":
            h = hilbert(ideal, order=_ORDERS[args.order])
            report.artifact["hilbert"] = _hilbert_payload(h)
            report.say(f"Hilbert polynomial: {h.hp_string()}")
            report.say(f"degree: {h.degree()}")
            report.say(f"regularity index: {h.regularity_index}")
        elif kind == "cm":
            krull, codim, pd = dimensions(ideal)
            verdict = is_cm(ideal)
            report.artifact["dimensions"] = {"krull": krull, "codim": codim,
                                             "projective": pd}
            report.artifact["cohen_macaulay"] = verdict
            report.say(f"dimensions: krull {krull}, codim {codim}, pd {pd}")
            report.say(f"Cohen-Macaulay: {verdict}")
        elif kind == "rao":
            table = rao_dimensions(ideal)
            report.artifact["rao"] = {str(k): v for k, v in sorted(table.items())}
            report.say(f"deficiency table: {_rao_text(table)}")
    return run


def _cmd_hypothesis(args, field, report):
    arr = _load_arrangement(args.file, field, report)
    holds, witnesses = hypothesis_check(arr)
    report.artifact["holds"] = holds
    report.artifact["witnesses"] = [
        {"plane": i + 1,
         "flats": [sorted(m + 1 for m in f1.members),
                   sorted(m + 1 for m in f2.members)]}
        for i, f1, f2 in witnesses]
    report.say(f"holds: {holds}")
    for i, f1, f2 in witnesses:
        report.say(f"  plane {i + 1} ({arr.forms[i]}) lies in two non-reduced "
                   f"flats: members {sorted(m + 1 for m in f1.members)} and "
                   f"{sorted(m + 1 for m in f2.members)}")


def _arr_to_text(arr):
    lines = [f"vars: {' '.join(arr.ring.names)}"]
    p = arr.ring.field.p
    for form in arr.forms:
        parts = []
        from .polyring import linear_coefficients
        for name, c in zip(arr.ring.names, linear_coefficients(form)):
            if arr.ring.field.is_zero(c):
                continue
            if p is not None:
                c = int(c) if c <= p // 2 else int(c) - p
            parts.append((c, name))
        text = ""
        for c, name in parts:
            c = int(c)
            if not text:
                prefix = "-" if c < 0 else ""
            else:
                prefix = " - " if c < 0 else " + "
            mag = abs(c)
            text += prefix + (name if mag == 1 else f"{mag}{name}")
        lines.append(text)
    return "\n".join(lines) + "\n"


def _cmd_graphic(args, field, report):
    graph = parse_graph(_read(args.file))
    arr = graphic_arrangement(graph, field)
    text = _arr_to_text(arr)
    report.artifact["variables"] = list(arr.ring.names)
    report.artifact["forms"] = arr.d
    report.artifact["arrangement"] = text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.say(f"wrote {arr.d} forms to {args.output}")
    else:
        report.say(text.rstrip("\n"))


def _cmd_triangles(args, field, report):
    graph = parse_graph(_read(args.file))
    holds, witnesses = triangle_condition(graph)
    report.artifact["holds"] = holds
    report.artifact["triangles"] = [list(t) for t in graph.triangles()]
    report.artifact["witnesses"] = [
        {"edge": list(e), "triangles": [list(t1), list(t2)]}
        for e, t1, t2 in witnesses]
    report.say(f"3-cycles: {len(graph.triangles())}")
    report.say(f"no two 3-cycles share an edge: {holds}")
    for e, t1, t2 in witnesses:
        report.say(f"  edge {e} shared by {t1} and {t2}")


def _cmd_section(args, field, report):
    arr = _load_arrangement(args.file, field, report)
    sectioned = generic_section(arr, seed=args.seed)
    text = _arr_to_text(sectioned)
    report.artifact["arrangement"] = text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.say(f"wrote sectioned arrangement to {args.output}")
    else:
        report.say(text.rstrip("\n"))


def _curve_of(arr, which):
    return top_comb(arr) if which == "top" else radical_comb(arr)


def _cmd_liaison_add(args, field, report):
    a = _load_arrangement(args.file1, field, report)
    b = _load_arrangement(args.file2, field, report)
    if a.ring != b.ring:
        raise ValidationError("the two arrangements use different variables")
    ok, witnesses = arrangement_product_hypotheses(a, b)
    report.artifact["hypotheses"] = ok
    if not ok:
        side, j, flat = witnesses[0]
        raise ValidationError(
            f"product hypotheses fail: form {j + 1} of arrangement "
            f"{'B' if side == 'b' else 'A'} lies in a flat of the other")
    ia, ib = _curve_of(a, args.ideal), _curve_of(b, args.ideal)
    fa, fb = a.defining_polynomial(), b.defining_polynomial()
    out = liaison_addition(ia, fa, ib, fb)
    h = hilbert(out)
    report.artifact["degree"] = h.degree()
    report.artifact["hilbert"] = _hilbert_payload(h)
    report.say(f"liaison addition of {args.ideal} curves: degree {h.degree()}, "
               f"HP {h.hp_string()}")
    if args.verify:
        step = LiaisonStep("addition", ia, fa, ib, fb, out)
        from .liaison import hilbert_additivity_holds
        additivity = hilbert_additivity_holds(step)
        predicted = shifted_rao_sum(step)
        computed = rao_dimensions(out)
        report.artifact["verify"] = {
            "hilbert_additivity": additivity,
            "rao_predicted": {str(k): v for k, v in sorted(predicted.items())},
            "rao_computed": {str(k): v for k, v in sorted(computed.items())},
            "rao_ok": predicted == computed,
        }
        report.say(f"Hilbert additivity: {additivity}")
        report.say(f"deficiency table: predicted {_rao_text(predicted)}, "
                   f"computed {_rao_text(computed)}")
        if not (additivity and predicted == computed):
            raise ValidationError("verification failed on a liaison addition")


def _cmd_bdl(args, field, report):
    arr = _load_arrangement(args.file, field, report)
    ideal = _curve_of(arr, args.ideal)
    f1 = arr.defining_polynomial()
    if args.form:
        ell = parse_linear_expr(arr.ring, args.form)
    else:
        import random as _random
        rng = _random.Random(args.seed)
        from .liaison import _fresh_linear
        ell = _fresh_linear(arr, rng)
    out = basic_double_link(ideal, f1, ell)
    h = hilbert(out)
    report.artifact["link_form"] = str(ell)
    report.artifact["degree"] = h.degree()
    report.say(f"basic double link by {ell}: degree {h.degree()}, "
               f"HP {h.hp_string()}")
    if args.verify:
        step = LiaisonStep("bdl", ideal, f1, None, ell, out)
        from .liaison import hilbert_additivity_holds
        additivity = hilbert_additivity_holds(step)
        predicted = shifted_rao_sum(step)
        computed = rao_dimensions(out)
        report.artifact["verify"] = {
            "hilbert_additivity": additivity,
            "rao_predicted": {str(k): v for k, v in sorted(predicted.items())},
            "rao_computed": {str(k): v for k, v in sorted(computed.items())},
            "rao_ok": predicted == computed,
        }
        report.say(f"Hilbert additivity: {additivity}")
        report.say(f"deficiency table: predicted {_rao_text(predicted)}, "
                   f"computed {_rao_text(computed)}")
        if not (additivity and predicted == computed):
            raise ValidationError("verification failed on a basic double link")


def _cmd_construct(radical):
    def run(args, field, report):
        build = construct_lr_radical if radical else construct_lr
        construction = build(args.r, h=args.h, seed=args.seed, field=field)
        report.artifact["planes"] = construction.arrangement.d
        report.artifact["predicted_rao"] = {
            str(k): v for k, v in sorted(construction.predicted_rao.items())}
        report.artifact["predicted_degree"] = construction.predicted_degree
        report.say(f"constructed {construction.arrangement.d}-plane arrangement")
        report.say(f"predicted deficiency table: {construction.predicted_rao}")
        report.say(f"predicted curve degree: {construction.predicted_degree}")
        if args.verify:
            outcome = verify_construction(construction, deep=args.deep)
            report.artifact["verify"] = {
                k: ({str(kk): vv for kk, vv in sorted(v.items())}
                    if isinstance(v, dict) else v)
                for k, v in outcome.items()}
            report.say(f"computed deficiency table: {outcome['rao_computed']}")
            report.say(f"computed degree: {outcome['degree_computed']}")
            report.say(f"verification: {'ok' if outcome['ok'] else 'FAILED'}")
            if not outcome["ok"]:
                raise ValidationError("construction verification failed")
    return run


def _cmd_corpus(args, field, report):
    names = args.entry if args.entry else None
    results = corpus.run_regressions(field=field, names=names,
                                     quick=args.quick)
    failed = [r for r in results if not r.ok]
    report.artifact["results"] = [
        {"entry": r.entry, "check": r.check, "ok": r.ok, "detail": r.detail}
        for r in results]
    report.artifact["passed"] = len(results) - len(failed)
    report.artifact["failed"] = len(failed)
    for r in results:
        report.say(r.line())
    report.say(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        raise ValidationError(f"{len(failed)} corpus checks failed")


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=f"p:{DEFAULT_PRIME}",
                        help="coefficient field: q or p:<prime> "
                             f"(default p:{DEFAULT_PRIME})")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized choice (default 0)")
    common.add_argument("--json", action="store_true",
                        help="emit a JSON report instead of text")
    common.add_argument("--order", choices=sorted(_ORDERS), default="grevlex",
                        help="ambient monomial order (default grevlex)")

    parser = argparse.ArgumentParser(
        prog="sing",
        description="Singular-locus ideals of hyperplane arrangements")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lattice", parents=[common],
                        help="flats of an arrangement, or lattice comparison")
    sp.add_argument("file")
    sp.add_argument("other", nargs="?", default=None)
    sp.set_defaults(run=_cmd_lattice)

    for name in ("jacobian", "radical", "top"):
        sp = sub.add_parser(name, parents=[common],
                            help=f"the {name} ideal of an arrangement")
        sp.add_argument("file")
        _add_ideal_flags(sp)
        sp.set_defaults(run=_cmd_ideal(name))

    sp = sub.add_parser("symbolic", parents=[common],
                        help="intersection of powers of the flat primes")
    sp.add_argument("file")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--rule", type=int, default=None,
                       help="exponent for multiplicity >= 3 flats "
                            "(doubles get 1)")
    group.add_argument("--uniform", type=int, default=None,
                       help="same exponent for every flat")
    sp.add_argument("--override", action="store_true",
                    help="skip the exponent-rule validation")
    _add_ideal_flags(sp)
    sp.set_defaults(run=_cmd_symbolic)

    for kind in ("betti", "hilbert", "cm", "rao"):
        sp = sub.add_parser(kind, parents=[common],
                            help=f"{kind} data for a chosen ideal")
        sp.add_argument("file")
        sp.add_argument("--ideal", choices=_IDEAL_CHOICES, default="jacobian")
        sp.set_defaults(run=_cmd_selector(kind))

    sp = sub.add_parser("hypothesis", parents=[common],
                        help="check the shared-plane hypothesis")
    sp.add_argument("file")
    sp.set_defaults(run=_cmd_hypothesis)

    sp = sub.add_parser("graphic", parents=[common],
                        help="arrangement of a graph")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(run=_cmd_graphic)

    sp = sub.add_parser("triangles", parents=[common],
                        help="3-cycle sharing condition of a graph")
    sp.add_argument("file")
    sp.set_defaults(run=_cmd_triangles)

    sp = sub.add_parser("section", parents=[common],
                        help="generic hyperplane section down to 4 variables")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(run=_cmd_section)

    sp = sub.add_parser("liaison-add", parents=[common],
                        help="liaison addition of two arrangement curves")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--ideal", choices=("top", "radical"), default="top")
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(run=_cmd_liaison_add)

    sp = sub.add_parser("bdl", parents=[common],
                        help="basic double link of an arrangement curve")
    sp.add_argument("file")
    sp.add_argument("--form", default=None,
                    help="linear form to link with (seeded random if absent)")
    sp.add_argument("--ideal", choices=("top", "radical"), default="top")
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(run=_cmd_bdl)

    for name, radical in (("construct-lr", False),
                          ("construct-lr-radical", True)):
        sp = sub.add_parser(name, parents=[common],
                            help="build a curve with prescribed deficiency")
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--h", type=int, default=0)
        sp.add_argument("--verify", action="store_true")
        sp.add_argument("--deep", action="store_true",
                        help="also recheck every intermediate step")
        sp.set_defaults(run=_cmd_construct(radical))

    sp = sub.add_parser("corpus", parents=[common],
                        help="run the regression corpus")
    sp.add_argument("--quick", action="store_true")
    sp.add_argument("--entry", action="append", default=None,
                    help="run a single named entry (repeatable)")
    sp.set_defaults(run=_cmd_corpus)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        field, field_label = _parse_field(args.field)
    except SingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = Report(argv, field_label, args.seed, args.order)
    try:
        args.run(args, field, report)
    except InternalLimitError as exc:
        report.emit(args.json)
        print(f"internal limit: {exc}", file=sys.stderr)
        return 2
    except SingError as exc:
        report.emit(args.json)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report.emit(args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
