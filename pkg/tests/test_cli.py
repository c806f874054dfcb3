import json
from fractions import Fraction

from refartin.cli import main
from refartin.cyclotomic import parse_value, from_rational


QUAD_JOB = {
    "version": 1,
    "ramification": {
        "group": {"cyclic": 2},
        "filtration": [[0, 1], [0, 1], [0, 1]],
        "p": 2,
    },
    "reps": {"chi": {"values": ["1", "-1"]}},
}

TAME4_JOB = {
    "version": 1,
    "ramification": {
        "group": {"cyclic": 4},
        "filtration": [[0, 1, 2, 3]],
        "p": 7,
        "tame": {"generator": 1, "exponent": 1},
    },
    "reps": {"chi1": {"values": [{"n": 4, "terms": [[0, "1"]]},
                                 {"n": 4, "terms": [[1, "1"]]},
                                 {"n": 4, "terms": [[2, "1"]]},
                                 {"n": 4, "terms": [[3, "1"]]}]}},
}

QUAD_ORDER = {"p": 2, "f": [-2, 0, 1], "galois": [[0, 1], [0, -1]],
              "module": [[[1]], [[-1]]]}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


# -- validate -------------------------------------------------------------------


def test_validate_ok(tmp_path, capsys):
    path = write(tmp_path, "quad.json", QUAD_JOB)
    assert main(["validate", path]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_validate_invariant_violation(tmp_path, capsys):
    bad = json.loads(json.dumps(QUAD_JOB))
    bad["ramification"]["group"] = {"cyclic": 6}
    bad["ramification"]["filtration"] = [[0, 1, 2, 3, 4, 5], [0, 2, 4]]
    bad["ramification"]["tame"] = {"generator": 1, "exponent": 1}
    path = write(tmp_path, "bad.json", bad)
    assert main(["validate", path]) == 1
    assert "not a power of p" in capsys.readouterr().err


def test_validate_unknown_version(tmp_path, capsys):
    bad = dict(QUAD_JOB, version=99)
    path = write(tmp_path, "v99.json", bad)
    assert main(["validate", path]) == 2
    assert "version" in capsys.readouterr().err


def test_validate_parse_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{nope")
    assert main(["validate", str(path)]) == 2
    err = capsys.readouterr().err
    assert ":" in err  # line/column location


# -- compute --------------------------------------------------------------------


def test_compute_conductor_quad(tmp_path, capsys):
    path = write(tmp_path, "quad.json", QUAD_JOB)
    assert main(["compute", path, "conductor", "chi"]) == 0
    assert capsys.readouterr().out.strip() == "3/2"


def test_compute_bar_tame4(tmp_path, capsys):
    path = write(tmp_path, "t4.json", TAME4_JOB)
    assert main(["compute", path, "bar"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("class 0:")
    v0 = parse_value(json.loads(lines[0].split(": ", 1)[1]))
    assert v0 == from_rational(Fraction(3, 2))


def test_compute_herbrand(tmp_path, capsys):
    path = write(tmp_path, "quad.json", QUAD_JOB)
    assert main(["compute", path, "herbrand", "psi", "5/2"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["compute", path, "herbrand", "phi", "3"]) == 0
    assert capsys.readouterr().out.strip() == "5/2"


def test_compute_disc(tmp_path, capsys):
    path = write(tmp_path, "quad.json", QUAD_JOB)
    assert main(["compute", path, "disc", "0"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_compute_strict_rational_exit_code(tmp_path, capsys):
    job = json.loads(json.dumps(TAME4_JOB))
    job["ramification"]["p"] = 3  # chi1 is not sigma_3-stable, pairing irrational
    path = write(tmp_path, "t4p3.json", job)
    assert main(["compute", path, "conductor", "chi1", "--strict-rational"]) == 3


def test_compute_conductor_with_p_average_matches(tmp_path, capsys):
    path = write(tmp_path, "quad.json", QUAD_JOB)
    main(["compute", path, "conductor", "chi"])
    plain = capsys.readouterr().out
    main(["compute", path, "conductor", "chi", "--p-average"])
    assert capsys.readouterr().out == plain


def test_compute_missing_rep(tmp_path, capsys):
    path = write(tmp_path, "quad.json", QUAD_JOB)
    assert main(["compute", path, "conductor", "nosuch"]) == 2


def test_compute_artin_conductor(tmp_path, capsys):
    path = write(tmp_path, "quad.json", QUAD_JOB)
    assert main(["compute", path, "artin-conductor", "chi"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_compute_bar_avg(tmp_path, capsys):
    path = write(tmp_path, "t4.json", TAME4_JOB)
    assert main(["compute", path, "bar-avg"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4


def test_perm_group_job(tmp_path, capsys):
    job = {
        "version": 1,
        "ramification": {
            "group": {"perm": [[[1, 2]], [[1, 2, 3]]]},
            # lexicographic element order puts the 3-cycles at indices 3, 4
            "filtration": [[0, 3, 4]],
            "p": 2,
            "tame": {"generator": 3, "exponent": 1},
        },
    }
    path = write(tmp_path, "s3.json", job)
    rcode = main(["validate", path])
    out, err = capsys.readouterr()
    assert rcode == 0, err
    assert main(["verify", path]) == 0


def test_outputs_reparse_and_are_deterministic(tmp_path, capsys):
    path = write(tmp_path, "t4.json", TAME4_JOB)
    main(["compute", path, "bar", "--format", "json"])
    out1 = capsys.readouterr().out
    main(["compute", path, "bar", "--format", "json"])
    out2 = capsys.readouterr().out
    assert out1 == out2
    values = [parse_value(v) for v in json.loads(out1)["values"]]
    assert values[1] is not None
    # round-trip: printed canonical encodings parse back to equal values
    for v in values:
        assert parse_value(json.loads(json.dumps(v.encode()))) == v


# -- verify ---------------------------------------------------------------------


def test_verify_quad(tmp_path, capsys):
    path = write(tmp_path, "quad.json", QUAD_JOB)
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    records = [json.loads(line) for line in out.strip().splitlines()]
    assert all(rec["passed"] for rec in records)
    assert any(rec["name"] == "bisection" for rec in records)


def test_verify_tame12(tmp_path, capsys):
    job = {
        "version": 1,
        "ramification": {
            "group": {"cyclic": 12},
            "filtration": [list(range(12))],
            "p": 7,
            "tame": {"generator": 1, "exponent": 1},
        },
    }
    path = write(tmp_path, "t12.json", job)
    assert main(["verify", path]) == 0


def test_verify_corrupted_tame_exponent(tmp_path, capsys):
    job = json.loads(json.dumps(TAME4_JOB))
    job["ramification"]["tame"]["exponent"] = 2  # not injective modulo 4
    path = write(tmp_path, "corrupt.json", job)
    assert main(["verify", path]) == 1
    out = capsys.readouterr().out
    rec = json.loads(out.strip().splitlines()[0])
    assert rec["name"] == "admissibility" and rec["binding"] and not rec["passed"]


def test_verify_advisory_flag(tmp_path, capsys):
    job = {
        "version": 1,
        "ramification": {
            "group": {"cyclic": 6},
            "filtration": [[0, 1, 2, 3, 4, 5], [0, 3], [0, 3]],
            "p": 2,
            "tame": {"generator": 1, "exponent": 1},
        },
    }
    path = write(tmp_path, "abstract.json", job)
    rcode = main(["verify", path, "--advisory"])
    out = capsys.readouterr().out
    records = [json.loads(line) for line in out.strip().splitlines()]
    assert rcode == 0  # binding rows pass; pathological quotient is advisory
    assert any(not rec["binding"] and not rec["passed"] for rec in records)
    assert all(rec["passed"] for rec in records if rec["binding"])


# -- oracle ---------------------------------------------------------------------


def test_oracle_tame(capsys):
    assert main(["oracle", "tame", "5", "2"]) == 0
    assert capsys.readouterr().out.strip() == "3/5"


def test_oracle_monogenic(tmp_path, capsys):
    path = write(tmp_path, "quad_order.json", QUAD_ORDER)
    assert main(["oracle", "monogenic", path, "--module", "regular"]) == 0
    assert capsys.readouterr().out.strip() == "3/2"
    assert main(["oracle", "monogenic", path]) == 0
    assert capsys.readouterr().out.strip() == "1/2"  # file module: the sign character


def test_oracle_derive_fixture_round_trips(tmp_path, capsys):
    src = write(tmp_path, "quad_order.json", QUAD_ORDER)
    out = str(tmp_path / "derived.json")
    assert main(["oracle", "derive-fixture", src, "-o", out]) == 0
    assert main(["validate", out]) == 0
    capsys.readouterr()
    assert main(["verify", out]) == 0


def test_oracle_derive_fixture_with_tame_part(tmp_path, capsys):
    order = {"p": 3, "f": [3, 3, 1], "galois": [[0, 1], [-3, -1]]}
    src = write(tmp_path, "z3.json", order)
    assert main(["oracle", "derive-fixture", src]) == 0
    job = json.loads(capsys.readouterr().out)
    assert job["ramification"]["tame"] == {"generator": 1, "exponent": 1}
    dst = tmp_path / "z3_job.json"
    dst.write_text(json.dumps(job))
    assert main(["validate", str(dst)]) == 0


def test_oracle_errors(tmp_path, capsys):
    assert main(["oracle", "tame", "5"]) == 2
    bad = write(tmp_path, "bad_order.json", {"p": 2, "f": [-3, 0, 1], "galois": [[0, 1], [0, -1]]})
    assert main(["oracle", "monogenic", bad, "--module", "regular"]) == 3


def test_rep_value_count_mismatch(tmp_path, capsys):
    job = json.loads(json.dumps(QUAD_JOB))
    job["reps"]["chi"]["values"] = ["1", "-1", "1"]
    path = write(tmp_path, "badrep.json", job)
    assert main(["compute", path, "conductor", "chi"]) == 2
    assert "conjugacy class" in capsys.readouterr().err


def test_malformed_value_term(tmp_path, capsys):
    job = json.loads(json.dumps(QUAD_JOB))
    job["reps"]["chi"]["values"] = [{"n": 0, "terms": []}, "-1"]
    path = write(tmp_path, "badval.json", job)
    assert main(["compute", path, "conductor", "chi"]) == 2
