"""Plain-text module files.

Layout::

    R O p=2 n=2 N=16        ring header (or "R k p=2")
    G Q8                    group spec
    dim 7
    gen i                   one block per group generator, in order
    <row>                   dim rows; entries separated by ';',
    ...                     coefficients of an entry by ','

Blank lines and lines starting with '#' are ignored.
"""

from __future__ import annotations

import io
import os
from typing import Iterable, TextIO, Union

from .coeffring import parse_ring
from .errors import ModuleParseError
from .pgroup import build_group
from .rpmod import RPModule

PathOrFile = Union[str, os.PathLike, TextIO]


def format_module(m: RPModule) -> str:
    ring = m.ring
    lines = [ring.header(), f"G {m.group.name}", f"dim {m.dim}"]
    for name, a in zip(m.group.gen_names, m.gens):
        lines.append(f"gen {name}")
        for row in a:
            lines.append(";".join(ring.format_element(x) for x in row))
    return "\n".join(lines) + "\n"


def write_module(m: RPModule, path: PathOrFile) -> None:
    text = format_module(m)
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _content_lines(lines: Iterable[str]):
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def parse_module(text: str, validate: bool = True) -> RPModule:
    lines = list(_content_lines(io.StringIO(text)))
    pos = 0

    def take(what: str):
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise ModuleParseError(last + 1, f"unexpected end of file, expected {what}")
        item = lines[pos]
        pos += 1
        return item

    no, line = take("ring header")
    try:
        ring = parse_ring(line)
    except (ValueError, KeyError) as exc:
        raise ModuleParseError(no, f"bad ring header: {exc}") from None
    no, line = take("group line")
    if not line.startswith("G "):
        raise ModuleParseError(no, "expected 'G <group spec>'")
    try:
        group = build_group(line[2:].strip())
    except (ValueError, KeyError) as exc:
        raise ModuleParseError(no, f"bad group spec: {exc}") from None
    no, line = take("dim line")
    toks = line.split()
    if len(toks) != 2 or toks[0] != "dim" or not toks[1].isdigit():
        raise ModuleParseError(no, "expected 'dim <d>'")
    d = int(toks[1])
    mats = []
    for name in group.gen_names:
        no, line = take(f"'gen {name}'")
        toks = line.split()
        if toks[0] != "gen" or len(toks) != 2:
            raise ModuleParseError(no, f"expected 'gen {name}'")
        if toks[1] != name:
            raise ModuleParseError(no, f"expected generator {name}, found {toks[1]}")
        mat = ring.zeros((d, d))
        for i in range(d):
            no, line = take(f"row {i + 1} of generator {name}")
            entries = line.split(";")
            if len(entries) != d:
                raise ModuleParseError(no, f"expected {d} entries, found {len(entries)}")
            for j, e in enumerate(entries):
                try:
                    mat[i, j] = ring.parse_element(e)
                except ValueError as exc:
                    raise ModuleParseError(no, f"entry {j + 1}: {exc}") from None
        mats.append(mat)
    if pos != len(lines):
        raise ModuleParseError(lines[pos][0], "trailing content after the last generator")
    m = RPModule(ring, group, tuple(mats), size=d)
    if validate:
        m.validate()
    return m


def read_module(path: PathOrFile, validate: bool = True) -> RPModule:
    if hasattr(path, "read"):
        return parse_module(path.read(), validate)
    with open(path) as fh:
        return parse_module(fh.read(), validate)
