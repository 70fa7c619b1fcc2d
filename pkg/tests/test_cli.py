import io
import json
import subprocess
import sys

import pytest

from partsym import cli


def call(command, payload, *flags, capsys):
    """Run the CLI in-process; return (document, raw output, exit status)."""
    stdin = sys.stdin
    try:
        sys.stdin = io.StringIO(json.dumps(payload))
        status = cli.main([command, *flags])
    finally:
        sys.stdin = stdin
    out = capsys.readouterr().out
    return json.loads(out), out, status


def test_compose(capsys):
    doc, out, status = call("compose", {"f": {"entries": [[1, 2]]}, "g": {"entries": [[0, 1]]}},
                            capsys=capsys)
    assert status == 0
    assert out == '{"ok":true,"result":{"entries":[[0,2]]}}\n'


def test_munn_flat(capsys):
    doc, _, status = call("munn", {"size": 3, "meet": [[0, 0, 0], [0, 1, 0], [0, 0, 2]]},
                          capsys=capsys)
    assert status == 0 and doc["result"]["count"] == 5 and len(doc["result"]["elements"]) == 5


def test_census(capsys):
    doc, out, status = call("census", {"depth": 2}, capsys=capsys)
    assert (doc, status) == ({"ok": True, "result": {"count": 16}}, 0)


def test_schema_error_reports_path(capsys):
    doc, _, status = call("compose", {"f": {"entries": [[1, "x"]]}, "g": {"entries": []}},
                          capsys=capsys)
    assert status == 2
    assert doc["ok"] is False and doc["error"]["path"] == "$.f.entries[0][1]"


def test_malformed_values_exit_2(capsys):
    # passes the schema but is not injective
    doc, _, status = call("invert", {"f": {"entries": [[0, 1], [2, 1]]}}, capsys=capsys)
    assert status == 2 and doc["error"]["kind"] == "MalformedQuery"
    _, _, status = call("base", {"depth": 9}, capsys=capsys)
    assert status == 2


def test_refuted_convergence_exits_1(capsys):
    payload = {"terms": [{"entries": [[n, 0]]} for n in range(10)], "limit": {"entries": []},
               "window_bound": 3}
    doc, _, status = call("converge", payload, capsys=capsys)
    assert status == 1
    assert doc["witness"] == {"point": 0, "index": 0, "condition": "ii-inverse"}
    doc, _, status = call("converge", payload, "--strict-inverse", "false", capsys=capsys)
    assert status == 0 and doc["result"]["status"] == "consistent"


def test_metric_is_exact(capsys):
    doc, _, _ = call("metric", {"f": {"entries": [[0, 1]]}, "g": {"entries": [[0, 2]]},
                                "horizon": 8}, capsys=capsys)
    assert doc["result"]["value"] == "7/8"


def test_decode_inconsistency_exits_1(capsys):
    payload = {"depth": 1, "entries": [[{"words": []}, {"words": []}],
                                       [{"words": ["0"]}, {"words": ["0", "10"]}]]}
    doc, _, status = call("decode", payload, capsys=capsys)
    assert status == 1 and doc["witness"] == {"words": ["0"]}


def test_encode_output_feeds_decode(capsys):
    h = {"rules": [["00", "0"], ["01", "10"], ["1", "11"]]}
    window, _, _ = call("encode", {"h": h}, "--depth", "2", capsys=capsys)
    doc, _, status = call("decode", window["result"], capsys=capsys)
    assert status == 0 and doc["result"] == {"rules": [["1", "11"], ["00", "0"], ["01", "10"]]}


def test_pm_commands_round_trip(capsys):
    f = {"rules": [["00", "0"], ["01", "10"], ["1", "11"]]}
    inv, _, _ = call("pm-invert", {"f": f}, capsys=capsys)
    doc, _, _ = call("pm-compose", {"f": f, "g": inv["result"]}, capsys=capsys)
    # f is onto the whole space, so f∘f⁻¹ is the identity, reduced to one rule
    assert doc["result"] == {"rules": [["", ""]]}
    doc, _, _ = call("pm-apply", {"h": f, "x": "0"}, capsys=capsys)
    assert doc["result"] == {"status": "needs_more_input"}


@pytest.mark.parametrize("command, payload, expected", [
    ("invert", {"f": {"entries": [[0, 3], [1, 4]]}}, {"entries": [[3, 0], [4, 1]]}),
    ("idempotent", {"f": {"entries": [[0, 0], [2, 2]]}}, True),
    ("nbhd", {"f": {"entries": [[0, 1]]}, "kind": "w2", "y": 1}, False),
    ("wagner-preston", {"size": 2, "product": [[0, 0], [0, 1]], "inverse": [0, 1]},
     {"images": [{"entries": [[0, 0]]}, {"entries": [[0, 0], [1, 1]]}]}),
    ("ideal", {"meet": [[0, 0, 0], [0, 1, 0], [0, 0, 2]], "x": 1}, [0, 1]),
    ("compat", {"meet": [[0, 0], [0, 1]]}, [[0, 0], [1, 1]]),
    ("munn-member", {"meet": [[0, 0, 0], [0, 1, 0], [0, 0, 2]], "f": {"entries": [[0, 0], [1, 2]]}},
     True),
    ("clopen-op", {"kind": "complement", "a": {"words": ["00"]}}, {"words": ["1", "01"]}),
    ("base", {"depth": 1}, [{"words": []}, {"words": ["0"]}, {"words": ["1"]}, {"words": [""]}]),
    ("tilde", {"V": {"words": ["0"]}, "depth": 2},
     [{"words": []}, {"words": ["0"]}, {"words": ["00"]}, {"words": ["01"]}]),
    ("hereditary", {"family": [{"words": []}, {"words": ["00"]}, {"words": ["01"]}], "depth": 2},
     {"hereditary": False, "carac_c": False}),
    ("fell", {"K": {"words": ["0"]}, "kind": "V_minus", "V": {"words": ["01"]}}, True),
    ("pm-image", {"h": {"rules": [["0", "1"], ["1", "0"]]}, "u": {"words": ["00"]}},
     {"words": ["10"]}),
    ("hco", {"h": {"rules": [["0", "1"], ["1", "0"]]}, "kind": "E", "a": {"words": ["0"]},
             "b": {"words": ["11"]}}, False),
    ("phi-check", {"f": {"rules": [["0", "1"], ["1", "0"]]}, "g": {"rules": [["0", "1"], ["1", "0"]]},
                   "depth": 2}, True),
    ("nbhd-identities", {"o": {"words": ["0"]}, "p": {"words": ["1"]},
                         "sample": [{"rules": [["0", "1"], ["1", "0"]]}], "depth": 1}, True),
])
def test_commands(command, payload, expected, capsys):
    doc, _, status = call(command, payload, capsys=capsys)
    assert status == 0 and doc["result"] == expected


def test_every_command_has_a_schema():
    assert set(cli.SCHEMAS) == set(cli.COMMANDS)
    assert len(cli.COMMANDS) == 27


def test_files_and_determinism(tmp_path):
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"meet": [[0, 0, 0], [0, 1, 0], [0, 0, 2]]}))
    outputs = []
    for i in range(2):
        dst = tmp_path / f"out{i}.json"
        proc = subprocess.run([sys.executable, "-m", "partsym", "munn", "--in", str(src),
                               "--out", str(dst)], capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append(dst.read_bytes())
    assert outputs[0] == outputs[1]


def test_bad_json_exits_2():
    proc = subprocess.run([sys.executable, "-m", "partsym", "compose"], input="{nope",
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["error"]["kind"] == "json"
