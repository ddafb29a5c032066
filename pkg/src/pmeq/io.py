"""File formats: matrices, rank-one pencils, and certificates.

Matrix files:
    line 1: field header (`field rational`, `field gf 7`,
            `field gf 2^3 [1 1 0 1]`)
    line 2: n, optionally followed by `labels a b c ...`
    then n rows of n whitespace-separated entries.

Pencil files share the header, then a line `n m`, n rows of the constant
matrix, then m term lines: either `u: <n entries> v: <n entries>` or
`m: <n*n entries>` (a full matrix term, which must have rank at most 1).

Certificates are JSON.
"""

from __future__ import annotations

import json

from .errors import RankTooHigh
from .fields import parse_field_header
from .linalg import Matrix
from .pit import RankOnePencil, rank_one_decompose
from .pme import Certificate, CertificateBlock
from .structure import DiagonalWitness


def _content_lines(text):
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _parse_label(token):
    try:
        return int(token)
    except ValueError:
        return token


def _parse_size_line(line):
    tokens = line.split()
    n = int(tokens[0])
    if len(tokens) == 1:
        return n, tuple(range(1, n + 1))
    if tokens[1] != "labels" or len(tokens) != n + 2:
        raise ValueError(f"bad size line {line!r}")
    return n, tuple(_parse_label(t) for t in tokens[2:])


def parse_matrix(text):
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ValueError("matrix file needs a field header and a size line")
    field = parse_field_header(lines[0])
    n, labels = _parse_size_line(lines[1])
    if len(lines) != n + 2:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 2}")
    rows = []
    for line in lines[2:]:
        tokens = line.split()
        if len(tokens) != n:
            raise ValueError(f"expected {n} entries per row, got {len(tokens)}")
        rows.append([field.parse_elem(t) for t in tokens])
    return Matrix(field, rows, labels, labels)


def serialize_matrix(M):
    out = [M.field.header()]
    default = tuple(range(1, M.n_rows + 1))
    if M.row_labels == default:
        out.append(str(M.n_rows))
    else:
        out.append(
            f"{M.n_rows} labels " + " ".join(str(l) for l in M.row_labels)
        )
    for r in M.rows:
        out.append(" ".join(M.field.format_elem(x) for x in r))
    return "\n".join(out) + "\n"


def parse_pencil(text):
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ValueError("pencil file needs a field header and a size line")
    field = parse_field_header(lines[0])
    size_tokens = lines[1].split()
    if len(size_tokens) != 2:
        raise ValueError(f"expected 'n m' on the size line, got {lines[1]!r}")
    n, m = int(size_tokens[0]), int(size_tokens[1])
    if len(lines) != 2 + n + m:
        raise ValueError(
            f"expected {n} constant rows and {m} term lines, "
            f"found {len(lines) - 2} content lines"
        )
    a0_rows = []
    for line in lines[2 : 2 + n]:
        tokens = line.split()
        if len(tokens) != n:
            raise ValueError(f"expected {n} entries per constant row")
        a0_rows.append([field.parse_elem(t) for t in tokens])
    A0 = Matrix(field, a0_rows, tuple(range(1, n + 1)), tuple(range(1, n + 1)))
    terms = []
    for idx, line in enumerate(lines[2 + n :]):
        tokens = line.split()
        if tokens[0] == "u:":
            if "v:" not in tokens:
                raise ValueError(f"term {idx + 1}: missing 'v:' part")
            split = tokens.index("v:")
            u = [field.parse_elem(t) for t in tokens[1:split]]
            v = [field.parse_elem(t) for t in tokens[split + 1 :]]
            if len(u) != n or len(v) != n:
                raise ValueError(f"term {idx + 1}: vectors must have length {n}")
            terms.append((u, v))
        elif tokens[0] == "m:":
            entries = [field.parse_elem(t) for t in tokens[1:]]
            if len(entries) != n * n:
                raise ValueError(f"term {idx + 1}: expected {n * n} entries")
            T = Matrix(
                field,
                [entries[i * n : (i + 1) * n] for i in range(n)],
                tuple(range(1, n + 1)),
                tuple(range(1, n + 1)),
            )
            try:
                u, v = rank_one_decompose(T)
            except RankTooHigh:
                raise RankTooHigh(
                    f"term {idx + 1} has rank greater than 1", term_index=idx + 1
                ) from None
            terms.append((u, v))
        else:
            raise ValueError(f"term {idx + 1}: must start with 'u:' or 'm:'")
    return RankOnePencil(field, n, A0, terms)


# ---------------------------------------------------------------------------
# certificates


def _labels_to_json(labels):
    return list(labels)


def _labels_from_json(data):
    return tuple(data)


def serialize_certificate(cert):
    doc = {
        "field": cert.field.header(),
        "blocks": [
            {
                "labels": _labels_to_json(blk.labels),
                "cut_sequence": [_labels_to_json(x) for x in blk.cut_sequence],
                "witness": {
                    "entries": [
                        [l, cert.field.format_elem(blk.witness.D[l])]
                        for l in blk.labels
                    ],
                    "transposed": blk.witness.transposed,
                },
            }
            for blk in cert.blocks
        ],
    }
    if cert.preprocessing_field is not None and cert.preprocessing_shift:
        doc["preprocessing"] = {
            "field": cert.preprocessing_field.header(),
            "shift": [
                [l, cert.preprocessing_field.format_elem(v)]
                for l, v in sorted(
                    cert.preprocessing_shift.items(), key=lambda kv: str(kv[0])
                )
            ],
        }
    else:
        doc["preprocessing"] = None
    return json.dumps(doc, indent=2) + "\n"


def parse_certificate(text):
    doc = json.loads(text)
    field = parse_field_header(doc["field"])
    blocks = []
    for blk in doc["blocks"]:
        labels = _labels_from_json(blk["labels"])
        seq = [tuple(_labels_from_json(x)) for x in blk["cut_sequence"]]
        w = blk["witness"]
        D = {l: field.parse_elem(str(v)) for l, v in w["entries"]}
        witness = DiagonalWitness(D, transposed=bool(w["transposed"]))
        blocks.append(CertificateBlock(labels, seq, witness))
    pre_field = None
    pre_shift = None
    if doc.get("preprocessing"):
        pre_field = parse_field_header(doc["preprocessing"]["field"])
        pre_shift = {
            l: pre_field.parse_elem(str(v))
            for l, v in doc["preprocessing"]["shift"]
        }
    return Certificate(field, blocks, pre_field, pre_shift)
