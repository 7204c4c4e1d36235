import json

import pytest

from comvar.cli import RunConfig, build_parser, canonical_json, main, run


def _payload(argv, tmp_path, capsys):
    code = main(argv + ["--cache-dir", str(tmp_path / "cache")])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_present_n1(tmp_path, capsys):
    code, doc = _payload(["present", "--n", "1", "--coeff", "Z"],
                         tmp_path, capsys)
    assert code == 0
    rels = [r["text"] for r in doc["payload"]["relations"]]
    assert rels == ["Z1 - X1*Y1"]


def test_present_n0_trivial(tmp_path, capsys):
    code, doc = _payload(["present", "--n", "0", "--coeff", "Z"],
                         tmp_path, capsys)
    assert code == 0
    assert doc["payload"]["relations"] == []
    assert doc["payload"]["generators"] == []


def test_oracle_n1(tmp_path, capsys):
    code, doc = _payload(["oracle", "--n", "1", "--coeff", "Z",
                          "--max-degree", "4"], tmp_path, capsys)
    assert code == 0
    deg2 = doc["payload"]["degrees"]["2"]
    assert deg2["rank"] == 1
    assert deg2["basis"][0]["text"] == "Z1 - X1*Y1"


def test_relations_bad_characteristic(tmp_path, capsys):
    code = main(["relations", "--n", "2", "--coeff", "Fp:2"])
    assert code == 1


def test_relations_n2(tmp_path, capsys):
    code, doc = _payload(["relations", "--n", "2", "--coeff", "Q"],
                         tmp_path, capsys)
    assert code == 0
    payload = doc["payload"]
    assert payload["total_dimension"] == 10
    assert payload["blocks"]["(1,1)"]["dimension"] == 1


def test_hh_table(tmp_path, capsys):
    code, doc = _payload(["hh", "--base", "poly2", "--space", "torus",
                          "--max-degree", "6", "--coeff", "Z"],
                         tmp_path, capsys)
    assert code == 0
    assert doc["payload"]["ranks"] == {
        "0": 1, "1": 0, "2": 1, "3": 2, "4": 2, "5": 2, "6": 3}
    assert doc["payload"]["torsion"] == {}


def test_verify_n2_exit_zero(tmp_path, capsys):
    code, doc = _payload(["verify", "--n", "2", "--coeff", "Q",
                          "--max-degree", "8"], tmp_path, capsys)
    assert code == 0
    assert doc["payload"]["ok"]


def test_invalid_ring_exits_one(capsys):
    assert main(["present", "--n", "1", "--coeff", "GF9"]) == 1
    assert main(["present", "--n", "-1", "--coeff", "Z"]) == 1


def test_cache_roundtrip_and_determinism(tmp_path, capsys):
    cache = str(tmp_path / "c")
    cfgs = [
        RunConfig("present", n=n, coeff=c, max_degree=d, cache_dir=cache)
        for n, c, d in [(0, "Z", None), (1, "Z", 4), (1, "Q", 3),
                        (2, "Z", None), (2, "Fp:5", 4), (1, "Fp:3", 5)]
    ] + [
        RunConfig("oracle", n=n, coeff=c, max_degree=d, cache_dir=cache)
        for n, c, d in [(1, "Z", 3), (1, "Q", 4), (2, "Q", 5), (2, "Z", 4)]
    ] + [
        RunConfig("hh", coeff="Z", max_degree=d, base=b, space=s,
                  cache_dir=cache)
        for b, s, d in [("ext1", "circle", 5), ("poly2", "circle", 6),
                        ("poly2", "torus", 4), ("ext1", "circle", 7),
                        ("poly2", "circle", 4)]
    ] + [
        RunConfig("relations", n=n, coeff=c, cache_dir=cache)
        for n, c in [(1, "Q"), (2, "Q"), (2, "Fp:5"), (1, "Fp:7")]
    ] + [
        RunConfig("verify", n=1, coeff="Q", max_degree=6, cache_dir=cache),
    ]
    assert len(cfgs) == 20
    for cfg in cfgs:
        code1, text1 = run(cfg)
        code2, text2 = run(cfg)    # second run served from cache
        p1 = json.loads(text1)["payload"]
        p2 = json.loads(text2)["payload"]
        assert canonical_json(p1) == canonical_json(p2)
        assert json.loads(text2)["cached"]


def test_cache_hash_validation(tmp_path):
    cfg = RunConfig("present", n=1, coeff="Z",
                    cache_dir=str(tmp_path / "c"))
    run(cfg)
    # corrupt the cached file; the loader must recompute, not crash
    cached = list((tmp_path / "c").glob("*.json"))[0]
    cached.write_text(cached.read_text().replace("Z1", "Q9"), encoding="utf-8")
    code, text = run(cfg)
    assert code == 0
    assert "Z1 - X1*Y1" in text


def test_text_format(tmp_path, capsys):
    code = main(["present", "--n", "1", "--coeff", "Z", "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    assert "Z1 - X1*Y1" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    code = main(["present", "--n", "1", "--coeff", "Z",
                 "--out", str(target)])
    assert code == 0
    assert json.loads(target.read_text())["payload"]["n"] == 1


def test_parser_flags_exist():
    parser = build_parser()
    args = parser.parse_args([
        "relations", "--n", "2", "--coeff", "Q", "--max-degree", "6",
        "--truncation", "3", "--format", "json", "--out", "x.json",
        "--cache-dir", "/tmp/xyz", "--jobs", "2"])
    assert args.jobs == 2 and args.truncation == 3
