"""Out-of-process driver transport: handshake, framing, failure handling."""

import os
import sys

import pytest

from drivensat import SolverConfig, formula_from_ints, solve
from drivensat.drivers import FallbackNowDriver, PigeonholeDriver, \
    ScriptedDriver, pigeonhole_formula
from drivensat.protocol import Choice, ProtocolViolation
from drivensat.wire import (DEFAULT_TIMEOUT, TIMEOUT_ENV, WireDriver,
                            assignment_checksum, fnv1a64, run_child)

import oracles

CHILD = os.path.join(os.path.dirname(__file__), "wirechild.py")


def child(mode, *extra, **kw):
    return run_child([sys.executable, CHILD, mode], extra, **kw)


# --- hashing primitives ---

def test_fnv_known_vectors():
    assert fnv1a64(b"") == 0xCBF29CE484222325
    assert fnv1a64(b"a") == 0xAF63DC4C8601EC8C


def test_checksum_ignores_transmission_order():
    assert assignment_checksum([3, -1, 2]) == assignment_checksum([2, 3, -1])
    assert assignment_checksum([1]) != assignment_checksum([-1])


# --- happy path ---

def test_transcript_of_a_small_solve(ex1, tmp_path):
    log = tmp_path / "wire.log"
    with child("record", log) as drv:
        res = solve(ex1, drv)
    assert res.status == oracles.SAT
    lines = log.read_text().splitlines()
    assert lines == [
        "HELLO 1",
        "REQ FROZEN 4",
        "EVT SEARCH 4 2",
        "CL 3 4 0",
        "CL 3 -4 0",
        "REQ CHOICE",
        "ASG 1 0",
        "ASG -2 0",
        "END",
        "BYE",
    ]


def test_wire_fallback_matches_builtin(rng):
    f = oracles.random_cnf(rng, 10, 42)
    want = solve(f, FallbackNowDriver(), SolverConfig(record_decisions=True))
    with child("fallback") as drv:
        got = solve(f, drv, SolverConfig(record_decisions=True))
    assert got.status == want.status
    assert got.decision_seq == want.decision_seq


def test_wire_refutation_clause_matches_builtin_shortcut():
    f = pigeonhole_formula(4, 3)
    want = solve(f, PigeonholeDriver(f))
    with child("falsum") as drv:
        got = solve(f, drv)
    assert got.status == want.status == oracles.UNSAT
    assert got.stats.decisions == want.stats.decisions == 0
    assert got.stats.conflicts == 0


def test_scripted_twin_behaves_like_the_wire_child(ex1):
    twin = ScriptedDriver([Choice(((3, "n"),))], frozen=range(1, 5))
    want = solve(ex1, twin, SolverConfig(record_decisions=True))
    with child("plan") as drv:
        got = solve(ex1, drv, SolverConfig(record_decisions=True))
    assert got.status == want.status
    assert got.decision_seq == want.decision_seq


# --- subscription filtering ---

def test_unsubscribed_child_receives_no_events(rng, tmp_path):
    log = tmp_path / "quiet.log"
    f = oracles.random_cnf(rng, 9, 38)
    with child("quiet", log) as drv:
        solve(f, drv)
    lines = log.read_text().splitlines()
    assert not any(l.startswith("EVT") or l.startswith("CL") for l in lines)


def test_subscription_is_honored_selectively(rng, tmp_path):
    log = tmp_path / "watch.log"
    f = oracles.random_cnf(rng, 9, 38)
    with child("watch", log, "CONFLICT") as drv:
        res = solve(f, drv)
    lines = log.read_text().splitlines()
    if res.stats.conflicts:
        assert any(l.startswith("EVT CONFLICT") for l in lines)
    assert not any(l.startswith("EVT LEARN") for l in lines)
    assert not any(l.startswith("EVT SEARCH") for l in lines)


# --- checksum mode ---

def test_child_mirror_checksums_agree(rng, tmp_path):
    log = tmp_path / "chk.log"
    f = oracles.random_cnf(rng, 12, 50)
    with child("checksum", log, checksum=True) as drv:
        res = solve(f, drv)
    assert res.status in (oracles.SAT, oracles.UNSAT)
    text = log.read_text().strip()
    fields = dict(kv.split("=") for kv in text.split())
    assert int(fields["mismatches"]) == 0
    assert int(fields["checks"]) >= 3


# --- failure handling ---

def test_garbage_handshake_is_quoted():
    with pytest.raises(ProtocolViolation, match="XYZ"):
        child("garbage-hello")


def test_garbage_choice_response_is_quoted(ex1):
    with child("garbage-choice") as drv:
        with pytest.raises(ProtocolViolation, match="XYZ"):
            solve(ex1, drv)


def test_child_death_is_reported(ex1):
    with child("exit-early") as drv:
        with pytest.raises(ProtocolViolation, match="exited|stopped"):
            solve(ex1, drv)


def test_unresponsive_child_times_out(ex1):
    with child("sleep", timeout=0.5) as drv:
        with pytest.raises(ProtocolViolation, match="within 0.5s"):
            solve(ex1, drv)


def test_env_var_sets_the_default_timeout(ex1, monkeypatch):
    monkeypatch.setenv(TIMEOUT_ENV, "0.4")
    with child("sleep") as drv:
        assert drv.timeout == 0.4
        with pytest.raises(ProtocolViolation, match="within 0.4s"):
            solve(ex1, drv)


@pytest.mark.parametrize("line,frag", [
    ("RSP FREEZE 2 1", "disagrees"),
    ("RSP FREEZE 1 z", "integer"),
    ("RSP CHOICE 1 1 p", "RSP FREEZE"),
    ("XYZ RSP", "RSP FREEZE"),
])
def test_malformed_freeze_responses(ex1, line, frag):
    with child("bad-freeze", line) as drv:
        with pytest.raises(ProtocolViolation, match=frag):
            solve(ex1, drv)


@pytest.mark.parametrize("line,frag", [
    ("RSP CHOICE 2 1 p", "disagrees"),
    ("RSP CHOICE x", "integer"),
    ("RSP BOGUS 1", "unknown response tag"),
    ("RSP UNROLL", "RSP"),
    ("RSP UNROLL 1 2", "malformed"),
    ("RSP FALLBACK 0 0 0 0 7", "trailing"),
    ("RSP FALLBACK 0 0 0", "truncated"),
    ("RSP ADDCLAUSE 1 2", "terminated"),
    ("RSP ADDCLAUSE 0 1 0", "terminated"),
    ("RSP ADDCLAUSE", "terminated"),
    ("RSP FREEZE 0", "unknown response tag"),
    ("RSP", "RSP"),
])
def test_malformed_choice_responses(ex1, line, frag):
    with child("bad-choice", line) as drv:
        with pytest.raises(ProtocolViolation, match=frag):
            solve(ex1, drv)


def test_empty_command_rejected():
    with pytest.raises(ValueError):
        WireDriver("")
    with pytest.raises(ValueError):
        WireDriver([])


def test_unlaunchable_command_rejected():
    with pytest.raises(ProtocolViolation, match="cannot start"):
        WireDriver(["/no/such/binary/anywhere"])


def test_default_timeout_without_env(monkeypatch):
    monkeypatch.delenv(TIMEOUT_ENV, raising=False)
    with child("fallback") as drv:
        assert drv.timeout == DEFAULT_TIMEOUT


def test_close_is_idempotent(ex1):
    drv = child("fallback")
    res = solve(ex1, drv)
    assert res.status == oracles.SAT
    drv.close()
    drv.close()
