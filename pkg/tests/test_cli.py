import json
import random

import pytest

from pmeq import Matrix, PrimeField, RankTooHigh, build_extension, pme_check
from pmeq.cli import main
from pmeq.io import (
    parse_certificate,
    parse_matrix,
    parse_pencil,
    serialize_certificate,
    serialize_matrix,
)
from paper_examples import (
    FIVE_A,
    FIVE_B,
    FIVE_SEQUENCE,
    INTRO_A6,
    INTRO_B6,
    INTRO_B6_PRIME,
    Q,
)
from util import GF101, rand_elem, random_matrix


# ---------------------------------------------------------------------------
# file format round trips


def test_matrix_round_trip():
    rng = random.Random(90)
    for field in (Q, PrimeField(7), build_extension(2, 8)):
        M = random_matrix(field, 4, rng)
        assert parse_matrix(serialize_matrix(M)) == M
    labeled = FIVE_A
    assert parse_matrix(serialize_matrix(labeled)) == labeled


def test_matrix_parse_comments_and_errors():
    text = "# a comment\nfield rational\n2  # size\n1 2\n3 4\n"
    M = parse_matrix(text)
    assert M == Matrix(Q, [[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        parse_matrix("field rational\n2\n1 2\n3\n")
    with pytest.raises(ValueError):
        parse_matrix("field bogus\n1\n1\n")


def test_pencil_round_trip():
    text = (
        "field rational\n"
        "2 2\n"
        "1 0\n"
        "0 1\n"
        "u: 1 2 v: 3 4\n"
        "m: 2 4 1 2\n"
    )
    p = parse_pencil(text)
    assert p.n == 2 and p.m == 2
    assert p.terms[0] == ((1, 2), (3, 4))
    u, v = p.terms[1]
    assert [[u[i] * v[j] for j in range(2)] for i in range(2)] == [[2, 4], [1, 2]]


def test_pencil_rank_two_term():
    text = "field rational\n2 1\n0 0\n0 0\nm: 1 0 0 1\n"
    with pytest.raises(RankTooHigh) as info:
        parse_pencil(text)
    assert info.value.term_index == 1


def test_certificate_round_trip():
    cert = pme_check(FIVE_A, FIVE_B).certificate
    text = serialize_certificate(cert)
    back = parse_certificate(text)
    assert serialize_certificate(back) == text
    blk, blk2 = cert.blocks[0], back.blocks[0]
    assert blk.labels == blk2.labels
    assert blk.cut_sequence == blk2.cut_sequence
    assert blk.witness.D == blk2.witness.D
    assert blk.witness.transposed == blk2.witness.transposed


# ---------------------------------------------------------------------------
# CLI


def _write(tmp_path, name, content):
    path = tmp_path / name
    path.write_text(content, encoding="utf-8")
    return str(path)


@pytest.fixture
def intro_files(tmp_path):
    a = _write(tmp_path, "a.mat", serialize_matrix(INTRO_A6))
    b = _write(tmp_path, "b.mat", serialize_matrix(INTRO_B6))
    return a, b


def test_cli_pme_equivalent(intro_files, capsys):
    a, b = intro_files
    assert main(["pme", "check", a, b]) == 0
    assert capsys.readouterr().out.strip() == "equivalent"


def test_cli_pme_not_equivalent(tmp_path, capsys):
    a = _write(tmp_path, "a.mat", serialize_matrix(INTRO_A6))
    perturbed = INTRO_A6.with_entry(1, 1, 5)
    b = _write(tmp_path, "b.mat", serialize_matrix(perturbed))
    assert main(["pme", "check", a, b]) == 1
    assert "S={1}" in capsys.readouterr().out


def test_cli_pme_parse_error(tmp_path, capsys):
    a = _write(tmp_path, "a.mat", "field rational\n2\n1 1/0\n0 1\n")
    b = _write(tmp_path, "b.mat", serialize_matrix(Matrix(Q, [[1, 0], [0, 1]])))
    assert main(["pme", "check", a, b]) == 2


def test_cli_pme_oracle(intro_files):
    a, b = intro_files
    assert main(["pme", "check", a, b, "--oracle", "--quiet"]) == 0


def test_cli_certify_and_verify(tmp_path, capsys):
    a = _write(tmp_path, "a.mat", serialize_matrix(FIVE_A))
    b = _write(tmp_path, "b.mat", serialize_matrix(FIVE_B))
    cert = str(tmp_path / "cert.json")
    assert main(["pme", "certify", a, b, "--out", cert, "--quiet"]) == 0
    assert main(["verify", a, b, cert]) == 0
    assert capsys.readouterr().out.strip() == "certificate accepted"

    # hand-encoded certificate with the published sequence
    doc = {
        "field": "field rational",
        "blocks": [
            {
                "labels": list(FIVE_A.row_labels),
                "cut_sequence": [list(x) for x in FIVE_SEQUENCE],
                "witness": {
                    "entries": [[l, "1"] for l in FIVE_A.row_labels],
                    "transposed": False,
                },
            }
        ],
        "preprocessing": None,
    }
    hand = _write(tmp_path, "hand.json", json.dumps(doc))
    assert main(["verify", a, b, hand, "--quiet"]) == 0

    # tampered cut
    doc["blocks"][0]["cut_sequence"][0] = ["a", "d"]
    tampered = _write(tmp_path, "tampered.json", json.dumps(doc))
    assert main(["verify", a, b, tampered, "--quiet"]) == 1

    # unparseable field header
    doc["blocks"][0]["cut_sequence"][0] = list(FIVE_SEQUENCE[0])
    doc["field"] = "field bogus"
    bad_field = _write(tmp_path, "badfield.json", json.dumps(doc))
    assert main(["verify", a, b, bad_field, "--quiet"]) == 2


def test_cli_pit(tmp_path):
    rng = random.Random(91)
    n, m = 2, 3
    terms = []
    for _ in range(m):
        u = [rand_elem(Q, rng) for _ in range(n)]
        v = [rand_elem(Q, rng) for _ in range(n)]
        terms.append((u, v))
    lines = ["field rational", f"{n} {m}", "0 0", "0 0"]
    for u, v in terms:
        lines.append(
            "u: " + " ".join(str(x) for x in u) + " v: " + " ".join(str(x) for x in v)
        )
    p1 = _write(tmp_path, "p1.pen", "\n".join(lines) + "\n")
    assert main(["pit", p1, p1, "--quiet", "--oracle"]) == 0

    scaled = list(lines)
    u0, v0 = terms[0]
    scaled[4] = (
        "u: " + " ".join(str(2 * x) for x in u0) + " v: " + " ".join(str(x) for x in v0)
    )
    p2 = _write(tmp_path, "p2.pen", "\n".join(scaled) + "\n")
    from pmeq import brute_force_pit

    expected = 0 if brute_force_pit(parse_pencil("\n".join(lines)), parse_pencil("\n".join(scaled))) else 1
    assert main(["pit", p1, p2, "--quiet", "--oracle"]) == expected

    bad = _write(
        tmp_path, "bad.pen", "field rational\n2 1\n0 0\n0 0\nm: 1 0 0 1\n"
    )
    assert main(["pit", p1, bad, "--quiet"]) == 2


def test_cli_dpp(tmp_path):
    rng = random.Random(92)
    K = random_matrix(Q, 3, rng, nonzero=True)
    k1 = _write(tmp_path, "k1.mat", serialize_matrix(K))
    k2 = _write(tmp_path, "k2.mat", serialize_matrix(K.transpose()))
    k3 = _write(
        tmp_path, "k3.mat", serialize_matrix(K.with_entry(1, 1, K.get(1, 1) + 1))
    )
    assert main(["dpp", k1, k2, "--quiet"]) == 0
    assert main(["dpp", k1, k3, "--quiet"]) == 1


def test_cli_cut(intro_files, tmp_path, capsys):
    a, b = intro_files
    assert main(["cut", a, "--minimal"]) == 0
    assert capsys.readouterr().out.strip() == "{1,2}"

    assert main(["cut", b, "--transpose", "1,4"]) == 0
    printed = capsys.readouterr().out
    assert parse_matrix(printed) == INTRO_B6_PRIME

    assert main(["cut", b, "--transpose", "1,2", "--quiet"]) == 1


def test_cli_usage_error():
    assert main(["no-such-command"]) == 2
    assert main([]) == 2
