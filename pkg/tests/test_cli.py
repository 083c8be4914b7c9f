import json

import pytest

from pcikit import AlgebraElement, are_orthogonal, is_idempotent, parse_group_spec
from pcikit.cli import RunConfig, build_parser, main, run


def run_json(subcommand, group, **kwargs):
    code, output = run(RunConfig(subcommand, group, **kwargs))
    return code, json.loads(output)


def test_pci_c2():
    code, data = run_json("pci", "2:[1]")
    assert code == 0
    assert data["count"] == 2
    assert data["pcis"][0]["coefficients"] == ["1/2", "1/2"]
    assert data["pcis"][1]["coefficients"] == ["1/2", "-1/2"]
    assert data["dimension_total"] == 2


def test_pci_round_trip_is_sound():
    code, data = run_json("pci", "2:[2];3:[1]")
    assert code == 0
    spec = parse_group_spec(data["group"])
    pcis = [AlgebraElement.from_strings(spec, row["coefficients"]) for row in data["pcis"]]
    total = AlgebraElement.zero(spec)
    for e in pcis:
        assert is_idempotent(e)
        total = total + e
    assert total == AlgebraElement.one(spec)
    for i in range(len(pcis)):
        for j in range(i + 1, len(pcis)):
            assert are_orthogonal(pcis[i], pcis[j])


def test_wedderburn_rows():
    code, data = run_json("wedderburn", "3:[2,1]")
    assert code == 0
    rows = data["parts"][0]["rows"]
    assert [(r["r"], r["census"]) for r in rows] == [(0, 1), (1, 4), (2, 3)]
    assert all(r["agree"] for r in rows)


def test_diagram_dot_c3c3():
    code, output = run(RunConfig("diagram", "3:[1,1]", output_format="dot"))
    assert code == 0
    # 8 nodes across ranks of sizes 1, 2, 5
    assert output.count("label=") == 8
    assert output.count("rank=same") == 3


def test_diagram_json_levels():
    code, data = run_json("diagram", "3:[1,1]")
    assert code == 0
    assert data["parts"][0]["level_sizes"] == [1, 2, 5]


def test_split_c4():
    code, data = run_json("split", "2:[2]")
    assert code == 0
    assert data["modulus"] == 4
    assert data["orbits"] == [[0], [1, 3], [2]]
    assert data["matches_closed_form"] is True
    assert len(data["splitting_pcis"]) == 4
    assert data["rational_pcis"][1] == ["1/2", "0/1", "-1/2", "0/1"]


def test_split_requires_cyclic_prime_power():
    from pcikit import GroupSpecError

    with pytest.raises(GroupSpecError):
        run(RunConfig("split", "2:[1,1]"))
    with pytest.raises(GroupSpecError):
        run(RunConfig("split", "2:[1];3:[1]"))


def test_verify_passes():
    for group in ("2:[2]", "3:[1,1]", "2:[2];3:[1]"):
        code, data = run_json("verify", group)
        assert code == 0
        assert data["status"] == "pass"
        assert all(c["status"] == "pass" for c in data["checks"])


def test_verify_includes_cyclic_checks():
    code, data = run_json("verify", "2:[2]")
    names = [c["name"] for c in data["checks"]]
    assert "cyclic_closed_form" in names
    assert "splitting_field_coherence" in names


def test_verify_alternate_order():
    code, data = run_json("verify", "2:[2,2]", alternate_order=True)
    assert code == 0
    names = [c["name"] for c in data["checks"]]
    assert "alternate_order_soundness" in names


def test_verify_sampled_mode():
    code, data = run_json("verify", "2:[2,1]", check_level="sampled")
    assert code == 0
    assert data["check_level"] == "sampled"


def test_output_determinism():
    for sub, group in (("pci", "2:[2,1]"), ("diagram", "3:[1,1]"), ("wedderburn", "3:[2]")):
        first = run(RunConfig(sub, group))
        second = run(RunConfig(sub, group))
        assert first == second


def test_exit_codes_via_main(capsys):
    assert main(["pci", "--group", "2:[1]"]) == 0
    capsys.readouterr()
    assert main(["pci", "--group", "not-a-group"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["pci", "--group", "2:[13]"]) == 2  # exceeds default cap
    capsys.readouterr()
    assert main(["pci", "--group", "2:[2]", "--max-order", "2"]) == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["unknown-subcommand"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["pci", "--group", "2:[1]", "--format", "dot"])
    assert exc.value.code == 2


def test_dot_rejected_outside_diagram():
    # RunConfig-level guard, independent of argparse choices
    assert main(["verify", "--group", "2:[1]"]) == 0


def test_text_formats_render():
    for sub in ("pci", "diagram", "wedderburn", "verify"):
        code, output = run(RunConfig(sub, "2:[2,1]", output_format="text"))
        assert code == 0
        assert "C_4 x C_2" in output
    code, output = run(RunConfig("split", "3:[1]", output_format="text"))
    assert code == 0
    assert "Q(zeta_3)" in output


def test_parser_defaults():
    ns = build_parser().parse_args(["pci", "--group", "2:[1]"])
    assert ns.format == "json" and ns.max_order == 4096
