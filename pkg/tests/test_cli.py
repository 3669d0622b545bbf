import json

import pytest

from app.cli import build_parser


def lines(out):
    return out.strip().splitlines()


def test_order_sensitive_example(cli):
    code, out, _ = cli("gin-ideal", "--vars", "Z0,Z1,Z2", "--order", "grevlex", "Z0^2; Z1*Z2")
    assert code == 0
    assert out.strip() == "Z0^2, Z0*Z1, Z1^3"
    code, out, _ = cli("gin-ideal", "--vars", "Z0,Z1,Z2", "--order", "grlex", "Z0^2; Z1*Z2")
    assert out.strip() == "Z0^2, Z0*Z1, Z0*Z2^2, Z1^4"


@pytest.mark.parametrize("order", ["grevlex", "grlex"])
def test_same_gin_in_both_orders(cli, order):
    code, out, _ = cli("gin-ideal", "--vars", "Z0,Z1,Z2", "--order", order, "Z0^2; Z1^2")
    assert out.strip() == "Z0^2, Z0*Z1, Z1^3"


def test_gin_ideal_json(cli):
    code, out, _ = cli("gin-ideal", "--vars", "Z0,Z1,Z2", "--json", "--seed", "5", "Z0^2; Z1*Z2")
    doc = json.loads(out)
    assert doc == {
        "order": "grevlex", "seed": 5, "gin": ["Z0^2", "Z0*Z1", "Z1^3"], "borel_fixed": True, "stable": True,
    }


@pytest.mark.slow
def test_gin_ideal_stability_over_five_seeds(cli):
    code, out, _ = cli("gin-ideal", "--vars", "Z0,Z1,Z2", "--stability", "5", "Z0^2; Z1*Z2")
    assert code == 0
    assert lines(out)[-1] == "stability over 5 seeds: stable"


@pytest.mark.parametrize(
    "name, expected",
    [
        ("faran-1", "Z0, Z1, Z2"),
        ("faran-2", "Z0^2, Z0*Z1, Z1^2, Z0*Z2, Z1*Z2^2"),
        ("faran-3", "Z0^2, Z0*Z1, Z1^2, Z0*Z2, Z1*Z2^2, Z2^3"),
        (
            "faran-4",
            "Z0^3, Z0^2*Z1, Z0*Z1^2, Z0^2*Z2, Z1^4, Z1^3*Z2, Z0*Z1*Z2^2, Z1^2*Z2^2, Z0*Z2^4, Z1*Z2^4, Z2^5",
        ),
    ],
)
def test_faran_table(cli, name, expected):
    code, out, _ = cli("map-invariants", "--map", name)
    assert code == 0
    assert f"gin components (grevlex): {expected}" in lines(out)


def test_fhjz_parameter(cli):
    code, out, _ = cli("map-invariants", "--map", "fhjz", "--param", "a=1/2", "--json")
    doc = json.loads(out)
    assert doc["map"] == "fhjz(a=1/2)"
    assert doc["gin_components"][-1] == "Z0*Z2^3"


def test_lebl_rows_collide(cli):
    gins = []
    for name in ("lebl-3", "lebl-4", "lebl-5"):
        code, out, _ = cli("map-invariants", "--map", name, "--json")
        assert code == 0
        gins.append(json.loads(out)["gin_components"])
    assert gins[0] == gins[1] == gins[2] == ["Z0^2", "Z0*Z1", "Z1^2", "Z0*Z2", "Z1*Z2^2"]


FHJZ_COMMON = "Z0^3, Z0^2*Z1, Z0*Z1^2, Z1^3, Z0^2*Z2, Z0*Z1*Z2^2, Z1^2*Z2^2"


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--map", "lebl-1"], "Z0, Z1, Z2"),
        (["--map", "lebl-2"], "Z0^2, Z0*Z1, Z1^2, Z0*Z2, Z1*Z2^2, Z2^3"),
        (
            ["--map", "lebl-6"],
            "Z0^3, Z0^2*Z1, Z0*Z1^2, Z0^2*Z2, Z1^4, Z0*Z1*Z2^2, Z1^2*Z2^2, Z1^3*Z2, Z0*Z2^4, Z1*Z2^4, Z2^5",
        ),
        (["--map", "fhjz", "--param", "a=0"], FHJZ_COMMON + ", Z0*Z2^4"),
        (["--map", "fhjz", "--param", "a=1/2"], FHJZ_COMMON + ", Z0*Z2^3"),
    ],
    ids=["lebl-1", "lebl-2", "lebl-6", "fhjz-0", "fhjz-half"],
)
def test_golden_component_gins(cli, argv, expected):
    code, out, _ = cli("map-invariants", *argv, "--json")
    assert code == 0
    assert set(json.loads(out)["gin_components"]) == set(expected.split(", "))


def test_faran_cubic_json_report(cli):
    code, out, _ = cli("map-invariants", "--map", "faran-4", "--json")
    doc = json.loads(out)
    assert doc["gin_quotient"] == ["Z0^2", "Z0*Z1", "Z1^2", "Z0*Z2", "Z1*Z2", "Z2^2"]
    assert doc["gin_afspan"] == ["1", "z1", "z2", "z1^2"]
    assert doc["afspan_crosscheck"] is True
    assert doc["source"] == [2, 0] and doc["target"] == [3, 0]
    assert doc["degree"] == 3 and doc["side"] == 1


def test_json_is_byte_identical_across_runs(cli):
    first = cli("map-invariants", "--map", "faran-2", "--json")[1]
    second = cli("map-invariants", "--map", "faran-2", "--json")[1]
    assert first == second


def test_custom_map(cli):
    code, out, _ = cli("map-invariants", "--source", "2,0", "--target", "3,0", "--num", "z1; z1*z2; z2^2", "--json")
    assert code == 0
    assert json.loads(out)["map"] == "custom"


def test_invalid_custom_map_exits_with_two(cli):
    code, _, err = cli("map-invariants", "--source", "2,0", "--target", "3,0", "--num", "z1; z1", "--den", "1")
    assert code == 2
    assert "error:" in err


def test_map_that_misses_the_target_exits_with_two(cli):
    code, _, _ = cli("map-invariants", "--source", "2,0", "--target", "2,0", "--num", "z1; z1")
    assert code == 2


def test_compare_faran_quadratics(cli):
    code, out, _ = cli("compare", "--map-a", "faran-2", "--map-b", "faran-3")
    assert code == 0
    assert lines(out)[-1] == "verdict: provably inequivalent"
    assert lines(out)[0].startswith("DIFFERENT")


def test_compare_with_itself(cli):
    code, out, _ = cli("compare", "--map-a", "faran-1", "--map-b", "faran-1", "--json")
    doc = json.loads(out)
    assert doc["verdict"] == "indistinguishable by these invariants"
    assert {c["status"] for c in doc["checks"]} == {"EQUAL"}


def test_compare_signature_mismatch(cli):
    code, _, err = cli("compare", "--map-a", "faran-1", "--map-b", "lebl-1")
    assert code == 1
    assert "error:" in err


def test_quotient_command(cli):
    code, out, _ = cli("quotient", "--map", "faran-4")
    assert code == 0
    assert lines(out)[0].startswith("q = ")
    assert "H(q) basis (6):" in lines(out)
    assert "side: +1" in lines(out)
    assert lines(out)[-1] == "gin (grevlex): Z0^2, Z0*Z1, Z1^2, Z0*Z2, Z1*Z2, Z2^2"


def test_quotient_of_non_transversal_map(cli):
    code, out, _ = cli("quotient", "--map", "lebl-7", "--param", "g=z1^2 + z2")
    assert code == 0
    assert lines(out)[0] == "q = 0"
    assert lines(out)[-1] == "gin (grevlex): 0"


@pytest.mark.parametrize("strategy", ["leading", "trailing", "echelon"])
def test_quotient_strategies_agree(cli, strategy):
    code, out, _ = cli("quotient", "--map", "faran-2", "--strategy", strategy, "--json")
    doc = json.loads(out)
    assert doc["rank"] == len(doc["decomposition_span"])
    assert doc["gin_quotient"] == json.loads(cli("quotient", "--map", "faran-2", "--json")[1])["gin_quotient"]


def test_subspace_gin(cli):
    code, out, _ = cli("subspace-gin", "--vars", "z1,z2", "1; z2")
    assert out.strip() == "1, z1"
    code, out, _ = cli("subspace-gin", "--vars", "z1,z2", "1; z1^3; sqrt(3)*z1*z2; z2^3")
    assert out.strip() == "1, z1, z2, z1^2"


def test_truncated_inputs(cli):
    code, _, err = cli("subspace-gin", "--vars", "z1,z2", "--truncated", "1; z2")
    assert code == 1
    assert "truncated" in err
    code, out, _ = cli("subspace-gin", "--vars", "z1,z2", "--truncated", "--assume-truncation-faithful", "1; z2")
    assert code == 0 and out.strip() == "1, z1"


def test_realform_gin(cli):
    form = "z1^2*w1^2 + z2^2*w2^2 - z1*z2*w1*w2 + z1*w1 + z2*w2 + 1"
    code, out, _ = cli("realform-gin", "--vars", "z1,z2", "--degree", "2", form)
    assert code == 0
    assert out.strip() == "1, z1, z2, z1^2, z1*z2, z2^2"


def test_catalog_commands(cli):
    code, out, _ = cli("catalog", "list")
    assert code == 0
    assert len(lines(out)) == 12
    code, out, _ = cli("catalog", "show", "faran-4")
    assert "F = (z1^3, sqrt(3)*z1*z2, z2^3)" in lines(out)
    assert "homogenized = (Z0^3, Z1^3, sqrt(3)*Z0*Z1*Z2, Z2^3)" in lines(out)


def test_transform_keeps_a_hyperquadric_map(cli):
    code, out, _ = cli("transform", "--map", "lebl-2", "--seed", "3")
    assert code == 0
    assert lines(out)[-1] == "still a hyperquadric map: yes"


@pytest.mark.parametrize(
    "argv",
    [
        ["gin-ideal", "--vars", "Z0,Z1", "Z0^-1"],
        ["gin-ideal", "--vars", "Z0,Z1", "Z0 + W"],
        ["gin-ideal", "--vars", "Z0,Z1", "--order", "lex", "Z0"],
        ["map-invariants", "--map", "nope"],
        ["map-invariants", "--map", "fhjz"],
        ["map-invariants", "--map", "fhjz", "--param", "a=1/1000000007"],
        ["map-invariants"],
        ["no-such-command"],
        ["gin-ideal", "--vars", "Z0,Z1", "--seed", "x", "Z0"],
    ],
)
def test_usage_and_parse_errors_exit_with_one(cli, argv):
    code, out, err = cli(*argv)
    assert code == 1
    assert out == ""
    assert "error:" in err


def test_genericity_failure_exits_with_three(cli, monkeypatch):
    monkeypatch.setattr("app.services.gin.borel_fixed_check", lambda ideal: False)
    code, _, _ = cli("gin-ideal", "--vars", "Z0,Z1,Z2", "Z0^2; Z1*Z2")
    assert code == 3


def test_global_flags_are_accepted_on_every_command():
    parser = build_parser()
    args = parser.parse_args(["catalog", "list", "--seed", "9", "--coeff-bound", "50", "--retries", "2", "--samples", "3"])
    assert (args.seed, args.coeff_bound, args.retries, args.samples) == (9, 50, 2, 3)
