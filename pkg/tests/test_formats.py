import pytest

from collector.errors import ParseError
from collector.events import (
    KeystrokeRecord,
    MouseRecord,
    keystroke_envelope,
    mouse_envelope,
    payload_json,
)
from collector.formats import parse_export_text, render_export

KS = [keystroke_envelope(KeystrokeRecord("KeyA", "a", 10, 70, shift=True)),
      keystroke_envelope(KeystrokeRecord("Key,", ",", 90, 150))]  # comma needs CSV quoting
MOUSE = [mouse_envelope(MouseRecord("move", 1.5, 2, 10)),
         mouse_envelope(MouseRecord("wheel_roll", 300, 400, 25))]


@pytest.mark.parametrize("kind,envs", [("keystroke", KS), ("mouse", MOUSE)])
@pytest.mark.parametrize("fmt", ["csv", "jsonl"])
def test_render_parse_roundtrip(kind, envs, fmt):
    body = render_export(envs, kind, fmt)
    assert parse_export_text(body, kind) == envs


def test_csv_header_and_flags():
    body = render_export(KS, "keystroke", "csv")
    lines = body.splitlines()
    assert lines[0] == "code,key,down,up,ctrl,alt,shift,caps"
    assert lines[1] == "KeyA,a,10,70,0,0,1,0"


def test_jsonl_is_canonical_payload_lines():
    body = render_export(MOUSE, "mouse", "jsonl")
    assert body.splitlines() == [payload_json(e) for e in MOUSE]


def test_empty_inputs():
    assert render_export([], "mouse", "jsonl") == ""
    assert render_export([], "mouse", "csv") == "action,x,y,t\n"
    assert parse_export_text("", "mouse") == []
    assert parse_export_text("action,x,y,t\n", "mouse") == []


def test_jsonl_error_names_line_seven():
    good = payload_json(MOUSE[0])
    text = "\n".join([good] * 6 + ["{broken"]) + "\n"
    with pytest.raises(ParseError) as err:
        parse_export_text(text, "mouse")
    assert err.value.line == 7
    assert "line 7" in str(err.value)


def test_jsonl_schema_error_carries_line():
    text = payload_json(MOUSE[0]) + "\n" + '{"action":"move","x":1,"y":2}' + "\n"
    with pytest.raises(ParseError) as err:
        parse_export_text(text, "mouse")
    assert err.value.line == 2


def test_csv_bad_header():
    with pytest.raises(ParseError) as err:
        parse_export_text("wrong,header\n1,2\n", "mouse")
    assert err.value.line == 1


def test_csv_wrong_column_count():
    with pytest.raises(ParseError) as err:
        parse_export_text("action,x,y,t\nmove,1,2\n", "mouse")
    assert err.value.line == 2


def test_csv_non_numeric_cell():
    with pytest.raises(ParseError) as err:
        parse_export_text("action,x,y,t\nmove,1,2,soon\n", "mouse")
    assert err.value.line == 2
    assert "t" in err.value.detail


def test_csv_invariant_error_carries_line():
    text = "code,key,down,up,ctrl,alt,shift,caps\nKeyA,a,100,50,0,0,0,0\n"
    with pytest.raises(ParseError) as err:
        parse_export_text(text, "keystroke")
    assert err.value.line == 2
    assert "up_ms" in err.value.detail
