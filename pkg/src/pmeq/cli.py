"""Command-line interface.

Exit codes: 0 = equivalent/equal/accepted, 1 = not equivalent/rejected,
2 = usage or parse error, 3 = oracle disagreement (--oracle only).
"""

from __future__ import annotations

import argparse
import sys

from .cuts import cut_transpose, minimal_cut
from .dpp import dpp_equivalent
from .errors import NotACut, PmeqError, RankTooHigh
from .io import (
    parse_certificate,
    parse_matrix,
    parse_pencil,
    serialize_certificate,
    serialize_matrix,
)
from .linalg import label_sort_key
from .pit import brute_force_pit, pit_check
from .pme import brute_force_pme, pme_check, verify_certificate


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_matrix(path):
    return parse_matrix(_read(path))


def _say(args, message):
    if not getattr(args, "quiet", False):
        print(message)


def _format_subset(S):
    return "{" + ",".join(str(l) for l in S) + "}"


def _cmd_pme(args):
    A = _load_matrix(args.fileA)
    B = _load_matrix(args.fileB)
    verdict = pme_check(A, B, randomized_shift=args.randomized_shift)
    if args.oracle:
        expected, refuting = brute_force_pme(A, B)
        if expected != verdict.equivalent:
            _say(args, "oracle disagreement")
            return 3
    if verdict.equivalent:
        _say(args, "equivalent")
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(serialize_certificate(verdict.certificate))
        return 0
    reason = verdict.reason or {}
    if "subset" in reason:
        _say(args, f"not equivalent: refuted by S={_format_subset(reason['subset'])}")
    else:
        _say(args, f"not equivalent: {reason.get('branch', 'refuted')}")
    return 1


def _cmd_verify(args):
    A = _load_matrix(args.fileA)
    B = _load_matrix(args.fileB)
    cert = parse_certificate(_read(args.certFile))
    if verify_certificate(A, B, cert):
        _say(args, "certificate accepted")
        return 0
    _say(args, "certificate rejected")
    return 1


def _cmd_pit(args):
    p1 = parse_pencil(_read(args.fileP1))
    p2 = parse_pencil(_read(args.fileP2))
    equal = pit_check(p1, p2, randomized_shift=args.randomized_shift)
    if args.oracle:
        if brute_force_pit(p1, p2) != equal:
            _say(args, "oracle disagreement")
            return 3
    _say(args, "equal" if equal else "not equal")
    return 0 if equal else 1


def _cmd_dpp(args):
    K1 = _load_matrix(args.fileK1)
    K2 = _load_matrix(args.fileK2)
    verdict = dpp_equivalent(K1, K2, randomized_shift=args.randomized_shift)
    _say(args, "equivalent" if verdict.equivalent else "not equivalent")
    return 0 if verdict.equivalent else 1


def _parse_cut_labels(spec, matrix):
    tokens = [t for t in spec.replace("{", "").replace("}", "").split(",") if t]
    known = {str(l): l for l in matrix.row_labels}
    out = []
    for t in tokens:
        t = t.strip()
        if t not in known:
            raise ValueError(f"unknown label {t!r}")
        out.append(known[t])
    return tuple(sorted(out, key=label_sort_key))


def _cmd_cut(args):
    A = _load_matrix(args.fileA)
    if args.transpose:
        X = _parse_cut_labels(args.transpose, A)
        try:
            result = cut_transpose(A, X)
        except NotACut:
            _say(args, f"{_format_subset(X)} is not a cut")
            return 1
        sys.stdout.write(serialize_matrix(result))
        return 0
    cut = minimal_cut(A)
    if cut is None:
        _say(args, "no cut")
        return 1
    _say(args, _format_subset(cut))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pmeq",
        description="Principal minor equivalence testing with cut-transpose "
        "certificates, plus rank-one determinant PIT and DPP kernel "
        "equivalence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--quiet", action="store_true", help="suppress reports")
        p.add_argument(
            "--randomized-shift",
            action="store_true",
            help="try random preprocessing shift points before the "
            "deterministic scan",
        )

    p_pme = sub.add_parser("pme", help="decide principal minor equivalence")
    p_pme.add_argument("mode", choices=["check", "certify"])
    p_pme.add_argument("fileA")
    p_pme.add_argument("fileB")
    p_pme.add_argument("--out", help="write the certificate to this file")
    p_pme.add_argument(
        "--oracle", action="store_true", help="cross-check with brute force"
    )
    common(p_pme)
    p_pme.set_defaults(func=_cmd_pme)

    p_verify = sub.add_parser("verify", help="verify a certificate")
    p_verify.add_argument("fileA")
    p_verify.add_argument("fileB")
    p_verify.add_argument("certFile")
    common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_pit = sub.add_parser("pit", help="compare rank-one determinant pencils")
    p_pit.add_argument("fileP1")
    p_pit.add_argument("fileP2")
    p_pit.add_argument(
        "--oracle", action="store_true", help="cross-check with 0/1 evaluation"
    )
    common(p_pit)
    p_pit.set_defaults(func=_cmd_pit)

    p_dpp = sub.add_parser("dpp", help="compare DPP kernels")
    p_dpp.add_argument("fileK1")
    p_dpp.add_argument("fileK2")
    common(p_dpp)
    p_dpp.set_defaults(func=_cmd_dpp)

    p_cut = sub.add_parser("cut", help="minimal cut or cut-transpose")
    p_cut.add_argument("fileA")
    group = p_cut.add_mutually_exclusive_group()
    group.add_argument(
        "--minimal", action="store_true", help="print a minimal cut (default)"
    )
    group.add_argument(
        "--transpose", metavar="X", help="apply cut-transpose along X, e.g. 1,4"
    )
    common(p_cut)
    p_cut.set_defaults(func=_cmd_cut)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except RankTooHigh as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError, PmeqError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
