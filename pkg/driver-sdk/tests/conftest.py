import os
import shlex
import shutil
import subprocess
import sys

import pytest

HERE = os.path.dirname(os.path.abspath(__file__))
EXAMPLES = os.path.join(os.path.dirname(HERE), "examples")


@pytest.fixture(scope="session")
def solver():
    """Path of the installed solver CLI; everything here drives it as a
    subprocess, the way a foreign tool would."""
    path = shutil.which("drivensat")
    assert path, "the drivensat CLI must be installed to run these tests"
    return path


def example(name):
    return os.path.join(EXAMPLES, name)


def fixture_script(name):
    return os.path.join(HERE, name)


def extern_spec(script, *args):
    parts = [sys.executable, script]
    parts.extend(str(a) for a in args)
    return "extern:" + " ".join(shlex.quote(p) for p in parts)


def run_cli(solver, *args):
    return subprocess.run([solver, *map(str, args)],
                          capture_output=True, text=True, timeout=300)


def stable_lines(stdout):
    """Solve output minus the fields that legitimately differ between
    drivers of identical behavior (name and wall time)."""
    return [ln for ln in stdout.splitlines()
            if not ln.startswith(("c driver", "c wall_ms"))]
