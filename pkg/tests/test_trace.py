import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from buoyancy import (
    EngineConfig,
    export_series,
    format_series,
    load_graph,
    parse_trace,
    replay,
    replay_files,
    state_digest,
)
from buoyancy.errors import NonMonotoneTime, ParseError, ReplayError, UnknownId

DATA = Path(__file__).parent / "data"


def load_fixture(name):
    graph = load_graph((DATA / f"{name}.graph.jsonl").read_text())
    config = EngineConfig.from_json((DATA / "config.json").read_text())
    events = parse_trace((DATA / f"{name}.trace.jsonl").read_text(), graph)
    return graph, config, events


# -- parsing --------------------------------------------------------------------

def test_parse_empty_file():
    assert parse_trace("") == []


def test_parse_single_access_round_trip():
    events = parse_trace('{"t":1,"kind":"access","thing":"A"}')
    assert len(events) == 1
    ev = events[0]
    assert (ev.seq, ev.t, ev.kind, ev.payload) == (1, 1, "access", {"thing": "A"})


def test_parse_rejects_non_monotone_time():
    text = '{"t":5,"kind":"tick"}\n{"t":3,"kind":"tick"}'
    with pytest.raises(NonMonotoneTime) as err:
        parse_trace(text)
    assert err.value.line == 2


def test_parse_rejects_garbage():
    with pytest.raises(ParseError) as err:
        parse_trace('{"t":1,"kind":"tick"}\nnot json')
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_trace('{"t":1,"kind":"warp"}')
    with pytest.raises(ParseError):
        parse_trace('{"kind":"tick"}')


def test_parse_checks_ids_against_graph():
    graph = load_graph((DATA / "fig1_left.graph.jsonl").read_text())
    with pytest.raises(UnknownId) as err:
        parse_trace('{"t":0,"kind":"access","thing":"nope"}', graph)
    assert err.value.line == 1


# -- replay ----------------------------------------------------------------------

def test_replay_single_access_probe():
    graph = load_graph('{"type":"thing","id":"A","label":"","kind":"other"}')
    config = EngineConfig.from_dict({})
    events = parse_trace(
        '{"t":0,"kind":"access","thing":"A"}\n{"t":0,"kind":"probe","things":["A"]}',
        graph)
    _, records = replay(graph, config, events)
    assert records == [{"type": "probe", "thing_id": "A", "t": 0,
                        "mb_raw": 1.0, "mb_effective": 1.0}]


def test_replay_is_deterministic():
    for name in ("fig1_left", "tasks"):
        d1, r1 = replay(*load_fixture(name))
        d2, r2 = replay(*load_fixture(name))
        assert d1 == d2
        assert r1 == r2


def test_replay_prefix_consistency():
    graph, config, events = load_fixture("tasks")
    _, full = replay(graph, config, events)
    for cut in range(len(events)):
        graph2, config2, events2 = load_fixture("tasks")
        _, partial = replay(graph2, config2, events2[:cut])
        n = len(partial)
        assert partial == full[:n]


def test_replay_error_carries_seq():
    graph = load_graph('{"type":"thing","id":"A","label":"","kind":"task"}')
    config = EngineConfig.from_dict({})
    events = parse_trace(
        '{"t":0,"kind":"access","thing":"A"}\n'
        '{"t":1,"kind":"complete_task","thing":"A","kappa":2.0}', graph)
    with pytest.raises(ReplayError) as err:
        replay(graph, config, events)
    assert err.value.seq == 2


def test_fig1_left_spreading_beats_pure_decay():
    graph, config, events = load_fixture("fig1_left")
    _, records = replay(graph, config, events)
    series = [(r["t"], r["mb_raw"]) for r in records if r["type"] == "probe"]

    # twin without relations: pure decay of A
    twin_graph = load_graph((DATA / "fig1_left.graph.jsonl").read_text())
    twin_graph.adjacency = {tid: {} for tid in twin_graph.things}
    twin_events = parse_trace((DATA / "fig1_left.trace.jsonl").read_text(), twin_graph)
    _, twin_records = replay(twin_graph, config, twin_events)
    twin_series = [(r["t"], r["mb_raw"]) for r in twin_records if r["type"] == "probe"]

    assert [t for t, _ in series] == [t for t, _ in twin_series]
    assert all(a >= b for (_, a), (_, b) in zip(series, twin_series))
    for access_t in (20, 40):
        after = next(v for t, v in series if t >= access_t)
        after_twin = next(v for t, v in twin_series if t >= access_t)
        assert after > after_twin


def test_tasks_trace_emits_switch_suggestion():
    _, records = replay(*load_fixture("tasks"))
    sugs = [r for r in records if r["type"] == "suggestion"]
    assert sugs and sugs[0]["suggestion"] == "switch_to"
    assert sugs[0]["context"] == "travel"


def test_digest_changes_on_state_difference():
    graph, config, events = load_fixture("tasks")
    d1, _ = replay(graph, config, events)
    graph2, config2, events2 = load_fixture("tasks")
    d2, _ = replay(graph2, config2, events2[:-1])
    assert d1 != d2


# -- CSV export --------------------------------------------------------------------

def test_series_header_only_for_no_probes():
    assert format_series([]) == "thing_id,t,mb_raw,mb_effective\n"


def test_series_round_trip(tmp_path):
    _, records = replay(*load_fixture("fig1_left"))
    path = tmp_path / "series.csv"
    export_series(records, path)
    lines = path.read_text().strip().splitlines()
    probes = [r for r in records if r["type"] == "probe"]
    assert lines[0] == "thing_id,t,mb_raw,mb_effective"
    assert len(lines) == len(probes) + 1
    for line, rec in zip(lines[1:], probes):
        tid, t, raw, eff = line.split(",")
        assert tid == rec["thing_id"]
        assert int(t) == rec["t"]
        assert math.isclose(float(raw), rec["mb_raw"], rel_tol=1e-11, abs_tol=0)
        assert math.isclose(float(eff), rec["mb_effective"], rel_tol=1e-11, abs_tol=0)


# -- CLI ------------------------------------------------------------------------------

def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "buoyancy.cli", *args],
                          capture_output=True, text=True)


def test_cli_digest_and_replay(tmp_path):
    args = ["--graph", str(DATA / "tasks.graph.jsonl"),
            "--config", str(DATA / "config.json"),
            "--trace", str(DATA / "tasks.trace.jsonl")]
    first = run_cli("digest", *args)
    second = run_cli("digest", *args)
    assert first.returncode == 0
    assert first.stdout == second.stdout

    out_csv = tmp_path / "out.csv"
    rep = run_cli("replay", *args, "--series-out", str(out_csv))
    assert rep.returncode == 0
    assert out_csv.read_text().startswith("thing_id,t,mb_raw,mb_effective")
    kinds = {json.loads(line)["type"] for line in rep.stdout.strip().splitlines()}
    assert {"probe", "query", "suggestion"} <= kinds


def test_cli_validate_ok():
    res = run_cli("validate",
                  "--graph", str(DATA / "fig1_left.graph.jsonl"),
                  "--config", str(DATA / "config.json"),
                  "--trace", str(DATA / "fig1_left.trace.jsonl"))
    assert res.returncode == 0
    assert "ok:" in res.stdout


def test_cli_exit_codes(tmp_path):
    bad_trace = tmp_path / "bad.jsonl"
    bad_trace.write_text('{"t":5,"kind":"tick"}\n{"t":1,"kind":"tick"}\n')
    res = run_cli("validate",
                  "--graph", str(DATA / "fig1_left.graph.jsonl"),
                  "--config", str(DATA / "config.json"),
                  "--trace", str(bad_trace))
    assert res.returncode == 2

    failing = tmp_path / "fail.jsonl"
    failing.write_text('{"t":0,"kind":"complete_task","thing":"A","kappa":2.0}\n')
    res = run_cli("replay",
                  "--graph", str(DATA / "fig1_left.graph.jsonl"),
                  "--config", str(DATA / "config.json"),
                  "--trace", str(failing))
    assert res.returncode == 3
