from pathlib import Path

import pytest

from permcodes.design import PairwiseBalancedDesign
from permcodes.formats import ingest_blocks, ingest_rows

DATA = Path(__file__).parent / "data"

_acceptance_lines: list[str] = []


def _read(name):
    return (DATA / name).read_text()


@pytest.fixture
def ipc6():
    """The 12-word 2-IPC(6,5): left column of the printed array, then right."""
    return ingest_rows(_read("ipc_6_5.txt"))


@pytest.fixture
def ipc10():
    return ingest_rows(_read("ipc_10_9_raw.txt"), "zero-as-n")


@pytest.fixture
def composition_example():
    pbd = ingest_blocks(_read("composition_blocks.txt"), "shift")
    ing3 = ingest_rows(_read("composition_ingredient3.txt"), "letters")
    ing4 = ingest_rows(_read("composition_ingredient4.txt"), "letters")
    result = ingest_rows(_read("composition_result.txt"), "shift")
    return pbd, {3: ing3, 4: ing4}, result


@pytest.fixture
def acceptance_log():
    def record(label, ok, detail=""):
        _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else ""))
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
