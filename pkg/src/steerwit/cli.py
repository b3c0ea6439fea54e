"""Command-line interface.

Exit codes: 0 success, 2 unparseable input or bad arguments, 3 operator fails
validation (not Hermitian, wrong trace, singular marginal for ``mesh``).
"""
import argparse
import json
import sys

import numpy as np

from . import ellipsoid as ell
from .classification import classify_by_determinants
from .documents import DocumentError, dumps_document, load_documents
from .errors import SteerwitError, ValidationError
from .mesh import mesh_document, to_obj
from .report import classification_report, _num, _vec
from .witness import (PHI_PLUS, conjecture_explore, ew4_optimal, flip_witness, is_finer,
                      projector, werner, wp_witness)

EXIT_PARSE = 2
EXIT_INVALID = 3


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def example_operator(name):
    """Operator for an example name: flip, wp:<p>, bell, werner:<w>, ew4opt."""
    key, _, arg = name.partition(":")
    try:
        if key == "flip" and not arg:
            return flip_witness(), "flip"
        if key == "bell" and not arg:
            return projector(PHI_PLUS), "bell"
        if key == "ew4opt" and not arg:
            return ew4_optimal(PHI_PLUS), "ew4opt"
        if key == "wp" and arg:
            return wp_witness(float(arg)), f"wp:{arg}"
        if key == "werner" and arg:
            return werner(float(arg)), f"werner:{arg}"
    except ValueError as exc:
        raise CliError(f"invalid parameter in {name!r}: {exc}", EXIT_PARSE) from exc
    raise CliError(f"unknown example {name!r}", EXIT_PARSE)


def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc


def _load(path, normalize):
    text = _read_input(path)
    try:
        return load_documents(text, normalize)
    except DocumentError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    except ValidationError as exc:
        raise CliError(f"invalid operator: {exc}", EXIT_INVALID) from exc


def _emit_json(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_classify(args):
    docs = _load(args.input, args.normalize)
    reports = [classification_report(R, label, args.tol) for label, R in docs]
    if args.json:
        out = [r.to_dict() for r in reports]
        _emit_json(out[0] if len(out) == 1 else out)
    else:
        sys.stdout.write("\n\n".join(r.table() for r in reports) + "\n")
    return 0


def cmd_witness(args):
    docs = _load(args.input, args.normalize)
    other = _load(args.finer_than, args.normalize)[0][1] if args.finer_than else None
    results = []
    for label, R in docs:
        rep = classification_report(R, label, args.tol)
        entry = {"label": label, "class": rep.operator_class, "summary": rep.summary}
        entry.update(rep.witness)
        if other is not None:
            res = is_finer(R, other, seed=args.seed, n_samples=args.samples,
                           n_mixed=max(1, args.samples // 10))
            entry["finer_than"] = {
                "verdict": res.verdict.value,
                "certificate_t": _num(res.certificate_t),
                "n_checked": res.n_checked,
                "state": None if res.state is None else
                [[[_num(z.real), _num(z.imag)] for z in row] for row in res.state],
            }
        results.append(entry)
    if args.json:
        _emit_json(results[0] if len(results) == 1 else results)
    else:
        for e in results:
            sys.stdout.write(f"{e['label'] or '<unlabelled>'}: {e['summary']}\n")
            for k in ("is_witness", "optimal", "weakly_optimal", "in_EW4", "negative_eigenvalue"):
                sys.stdout.write(f"  {k}: {e[k]}\n")
            if "finer_than" in e:
                sys.stdout.write(f"  finer than reference: {e['finer_than']['verdict']}\n")
    return 0


def cmd_mesh(args):
    label, R = _load(args.input, args.normalize)[0]
    E = ell.ellipsoid_of(R)
    if E.singular_b and not args.allow_point:
        raise CliError("Bob's marginal is singular; ellipsoid is a point (use --allow-point)",
                       EXIT_INVALID)
    lengths, axes = ell.semiaxes(E)
    cls = classify_by_determinants(R, E=E).cls.value
    meta = {"label": label, "class": cls, "chi": int(E.chi), "c": _vec(E.c),
            "semiaxes": _vec(lengths)}
    doc = mesh_document(E, lengths, axes, meta, args.lon, args.lat)
    fmt = args.format or ("obj" if str(args.output).endswith(".obj") else "json")
    text = to_obj(doc) if fmt == "obj" else json.dumps(doc) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0


def cmd_examples(args):
    R, label = example_operator(args.name)
    sys.stdout.write(dumps_document(R, label) + "\n")
    return 0


def _estar(name, normalize=False):
    if name == "bloch":
        return ell.EllipsoidRep.from_canonical(np.zeros(3), np.eye(3))
    if name == "xzdisc":
        return ell.EllipsoidRep.from_canonical(np.zeros(3), np.diag([1.0, 0.0, 1.0]))
    if name.startswith("file:"):
        _, R = _load(name[5:], normalize)[0]
        return ell.ellipsoid_of(R)
    R, _ = example_operator(name)
    return ell.ellipsoid_of(R)


def cmd_conjecture(args):
    E = _estar(args.estar)
    try:
        report = conjecture_explore(E, seed=args.seed, n_witnesses=args.n, n_states=args.states)
    except ValidationError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    report["estar_name"] = args.estar
    _emit_json(report)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="steerwit",
                                description="Ellipsoid classification of two-qubit operators")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tol=True):
        sp.add_argument("input", nargs="?", default="-", help="OperatorDocument JSON (default stdin)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--normalize", action="store_true", help="divide the operator by its trace")
        if tol:
            sp.add_argument("--tol", type=float, default=ell.TOL_CONTACT,
                            help="contact tolerance for touching the Bloch sphere")

    sp = sub.add_parser("classify", help="classify operators into Classes A-D")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("witness", help="witness properties, optionally compared with another")
    common(sp)
    sp.add_argument("--finer-than", metavar="PATH", help="reference witness document")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("mesh", help="export a triangulated ellipsoid")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("-o", "--output", default="-")
    sp.add_argument("--format", choices=["json", "obj"])
    sp.add_argument("--lon", type=int, default=64)
    sp.add_argument("--lat", type=int, default=32)
    sp.add_argument("--normalize", action="store_true")
    sp.add_argument("--allow-point", action="store_true")
    sp.set_defaults(func=cmd_mesh)

    sp = sub.add_parser("examples", help="print a ready-made operator document")
    sp.add_argument("name", help="flip | wp:<p> | bell | werner:<w> | ew4opt")
    sp.set_defaults(func=cmd_examples)

    sp = sub.add_parser("conjecture", help="sample witnesses inside a target ellipsoid")
    sp.add_argument("--estar", default="bloch",
                    help="bloch | xzdisc | example name | file:<path>")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", type=int, default=1000, help="member witnesses to sample")
    sp.add_argument("--states", type=int, default=20_000, help="pure test states")
    sp.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"steerwit: {exc}\n")
        return exc.code
    except ValidationError as exc:
        sys.stderr.write(f"steerwit: invalid operator: {exc}\n")
        return EXIT_INVALID
    except SteerwitError as exc:
        sys.stderr.write(f"steerwit: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
