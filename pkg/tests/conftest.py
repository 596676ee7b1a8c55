import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import jsonschema
import pytest

from mzvmoduli.cli import run

ROOT = Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "docs" / "schemas"
GOLDENS = Path(__file__).resolve().parent / "goldens"


def call(*argv: str):
    """Run the CLI in-process; return (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


def validate(subcommand: str, text: str) -> dict:
    schema = json.loads((SCHEMAS / f"{subcommand}.schema.json").read_text())
    doc = json.loads(text)
    jsonschema.validate(doc, schema)
    return doc


@pytest.fixture
def cli():
    return call


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, elapsed, detail = results[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}"
        )
