"""On-disk formats: permcode v1 (text and JSON), latin v1, pbd v1, plus a
reader for hand-transcribed arrays whose symbols are not yet 1..n.

Symbols are 1-based in every versioned format.
"""

from __future__ import annotations

import json
from pathlib import Path

from .design import PairwiseBalancedDesign
from .errors import FormatError
from .latin import LatinSquare, MolsSet
from .perm import PermutationCode

CODE_HEADER = "# permcode v1"
LATIN_HEADER = "# latin v1"
PBD_HEADER = "# pbd v1"

INGEST_MODES = ("none", "zero-as-n", "shift", "letters")


def _fields(line: str) -> dict[str, str]:
    out = {}
    for tok in line.split():
        if "=" not in tok:
            raise FormatError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _int_rows(lines) -> list[list[int]]:
    try:
        return [[int(x) for x in ln.split()] for ln in lines if ln.strip()]
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_code(code: PermutationCode, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(
            {
                "n": code.n,
                "size": len(code),
                "d": code.claimed_d,
                "r": code.claimed_r,
                "words": [list(w) for w in code.words],
            }
        ) + "\n"
    meta = f"n={code.n} size={len(code)}"
    if code.claimed_d is not None:
        meta += f" d={code.claimed_d}"
    if code.claimed_r is not None:
        meta += f" r={code.claimed_r}"
    body = "".join(" ".join(map(str, w)) + "\n" for w in code.words)
    return f"{CODE_HEADER}\n{meta}\n{body}"


def load_code(text: str) -> PermutationCode:
    """Parse either permcode flavour, picked by the first non-blank character."""
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        words = obj.get("words", [])
        if obj.get("size", len(words)) != len(words):
            raise FormatError("size does not match the number of words")
        return PermutationCode(obj["n"], words, obj.get("d"), obj.get("r"))
    lines = text.splitlines()
    if not lines or lines[0].strip() != CODE_HEADER:
        raise FormatError(f"missing {CODE_HEADER!r} header")
    if len(lines) < 2:
        raise FormatError("missing metadata line")
    meta = _fields(lines[1])
    n, size = int(meta["n"]), int(meta["size"])
    words = _int_rows(lines[2:])
    if len(words) != size:
        raise FormatError(f"header says size={size}, found {len(words)} words")
    d = int(meta["d"]) if "d" in meta else None
    r = int(meta["r"]) if "r" in meta else None
    return PermutationCode(n, words, d, r)


def ingest_rows(text: str, mode: str = "none") -> PermutationCode:
    """Headerless rows of symbols, as transcribed from a printed array.

    ``zero-as-n`` reads symbol 0 as n, ``shift`` adds one to every symbol
    (0-based arrays), ``letters`` maps a, b, c, ... to 1, 2, 3, ...
    """
    if mode not in INGEST_MODES:
        raise FormatError(f"unknown ingest mode {mode!r}")
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise FormatError("no rows")
    n = len(rows[0])
    if mode == "letters":
        words = [[ord(tok.lower()) - ord("a") + 1 for tok in row] for row in rows]
    else:
        words = _int_rows(" ".join(row) for row in rows)
        if mode == "zero-as-n":
            words = [[s or n for s in w] for w in words]
        elif mode == "shift":
            words = [[s + 1 for s in w] for w in words]
    return PermutationCode(n, words)


def dump_latin(mols: MolsSet) -> str:
    head = f"{LATIN_HEADER}\nn={mols.n} count={len(mols)} idempotent={str(mols.idempotent).lower()}\n"
    blocks = [
        "".join(" ".join(map(str, row)) + "\n" for row in sq.cells) for sq in mols.squares
    ]
    return head + "\n".join(blocks)


def load_latin(text: str) -> MolsSet:
    lines = text.splitlines()
    if not lines or lines[0].strip() != LATIN_HEADER:
        raise FormatError(f"missing {LATIN_HEADER!r} header")
    meta = _fields(lines[1])
    n, count = int(meta["n"]), int(meta["count"])
    idem = meta.get("idempotent", "false").lower() == "true"
    rows = _int_rows(lines[2:])
    if len(rows) != n * count:
        raise FormatError(f"expected {count} squares of {n} rows, found {len(rows)} rows")
    squares = [LatinSquare(n, rows[k * n : (k + 1) * n]) for k in range(count)]
    return MolsSet(n, squares, idem)


def dump_pbd(pbd: PairwiseBalancedDesign) -> str:
    body = "".join(" ".join(map(str, b)) + "\n" for b in pbd.blocks)
    return f"{PBD_HEADER}\nn={pbd.n} blocks={len(pbd.blocks)}\n{body}"


def load_pbd(text: str) -> PairwiseBalancedDesign:
    lines = text.splitlines()
    if not lines or lines[0].strip() != PBD_HEADER:
        raise FormatError(f"missing {PBD_HEADER!r} header")
    meta = _fields(lines[1])
    blocks = _int_rows(lines[2:])
    if len(blocks) != int(meta["blocks"]):
        raise FormatError(f"header says blocks={meta['blocks']}, found {len(blocks)}")
    return PairwiseBalancedDesign(int(meta["n"]), blocks)


def read_code(path) -> PermutationCode:
    return load_code(Path(path).read_text())


def read_pbd(path) -> PairwiseBalancedDesign:
    return load_pbd(Path(path).read_text())


def read_latin(path) -> MolsSet:
    return load_latin(Path(path).read_text())


def ingest_blocks(text: str, mode: str = "none") -> PairwiseBalancedDesign:
    """Headerless block list; ``shift`` converts 0-based points. The point
    count is the largest point seen."""
    if mode not in ("none", "shift"):
        raise FormatError(f"unknown block ingest mode {mode!r}")
    blocks = _int_rows(ln for ln in text.splitlines() if not ln.startswith("#"))
    if mode == "shift":
        blocks = [[x + 1 for x in b] for b in blocks]
    n = max((x for b in blocks for x in b), default=0)
    return PairwiseBalancedDesign(n, blocks)
