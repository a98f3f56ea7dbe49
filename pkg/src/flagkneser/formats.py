"""Family files, DIMACS export/import, and the line-oriented results cache."""

from __future__ import annotations

import os
import re
from dataclasses import asdict, dataclass, fields
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable

from .setcore import ElementSet, Flag, FlagFamily, FlagType, GraphSpec, OppositionGraph

CACHE_ENV = "FLAGKNESER_CACHE"
DEFAULT_CACHE = "flagkneser-cache.txt"

_PART = re.compile(r"\{([^}]*)\}")
_HEADER = re.compile(r"^flags\s+n=(\d+)\s+type=([\d,]+)\s*$")


class FormatError(ValueError):
    pass


# -- family files ----------------------------------------------------------------

def format_flag(f: Flag) -> str:
    return ",".join("{" + ",".join(map(str, p.members)) + "}" for p in f.parts)


def parse_flag(line: str, n: int) -> Flag:
    parts = _PART.findall(line)
    if not parts:
        raise FormatError(f"no parts in flag line {line!r}")
    try:
        sets = [ElementSet.of(n, [int(x) for x in p.split(",") if x.strip()]) for p in parts]
        return Flag(n, tuple(sorted(sets, key=len)))
    except ValueError as exc:
        raise FormatError(f"bad flag line {line!r}: {exc}") from exc


def dumps_family(family: FlagFamily) -> str:
    lines = [f"flags n={family.n} type={family.flag_type}"]
    lines.extend(format_flag(f) for f in family)
    return "\n".join(lines) + "\n"


def loads_family(text: str) -> FlagFamily:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty family file")
    m = _HEADER.match(lines[0])
    if not m:
        raise FormatError(f"bad header {lines[0]!r}")
    n = int(m.group(1))
    try:
        ftype = FlagType(tuple(int(x) for x in m.group(2).split(",")), n)
        return FlagFamily(n, ftype, frozenset(parse_flag(ln, n) for ln in lines[1:]))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_family(family: FlagFamily, path: str | Path) -> None:
    Path(path).write_text(dumps_family(family))


def read_family(path: str | Path) -> FlagFamily:
    return loads_family(Path(path).read_text())


# -- DIMACS ----------------------------------------------------------------------

def write_dimacs(g: OppositionGraph, out: IO[str]) -> None:
    """``p edge V E`` with 1-based vertices in enumeration order and a ``c`` legend."""
    spec = g.spec
    out.write(f"c flagkneser opposition graph {spec}\n")
    out.write(f"c n={spec.n} type={spec.flag_type}\n")
    for k, f in enumerate(g.flags, start=1):
        out.write(f"c vertex {k} {format_flag(f)}\n")
    out.write(f"p edge {g.size} {g.edge_count()}\n")
    for u, v in g.edges():
        out.write(f"e {u + 1} {v + 1}\n")


@dataclass
class DimacsGraph:
    vertices: int
    edges: list[tuple[int, int]]
    spec: GraphSpec | None = None
    legend: dict[int, Flag] | None = None

    def adjacency(self) -> list[int]:
        adj = [0] * self.vertices
        for u, v in self.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return adj


def read_dimacs(lines: Iterable[str]) -> DimacsGraph:
    vertices = None
    edges = []
    n = sizes = None
    legend: dict[int, Flag] = {}
    pending = []
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "c":
            if len(tok) >= 3 and tok[1].startswith("n=") and tok[2].startswith("type="):
                n = int(tok[1][2:])
                sizes = tuple(int(x) for x in tok[2][5:].split(","))
            elif len(tok) >= 4 and tok[1] == "vertex":
                pending.append((int(tok[2]), tok[3]))
        elif tok[0] == "p":
            if len(tok) < 4 or tok[1] != "edge":
                raise FormatError(f"bad problem line {line!r}")
            vertices, declared = int(tok[2]), int(tok[3])
        elif tok[0] == "e":
            if vertices is None:
                raise FormatError("edge before problem line")
            u, v = int(tok[1]), int(tok[2])
            if not (1 <= u <= vertices and 1 <= v <= vertices):
                raise FormatError(f"edge {u} {v} out of range")
            edges.append((u, v))
        else:
            raise FormatError(f"unknown line {line!r}")
    if vertices is None:
        raise FormatError("missing problem line")
    if len(edges) != declared:
        raise FormatError(f"problem line declares {declared} edges, found {len(edges)}")
    spec = None
    if n is not None:
        spec = GraphSpec.of(n, *sizes)
        legend = {k: parse_flag(text, n) for k, text in pending}
    return DimacsGraph(vertices, edges, spec, legend or None)


# -- results cache ---------------------------------------------------------------

@dataclass
class CacheEntry:
    n: int
    a: int
    b: int
    value: int
    status: str
    source: str
    wall_time: float
    version: str
    timestamp: str

    @property
    def key(self) -> tuple[int, int, int]:
        return self.n, self.a, self.b

    def to_line(self) -> str:
        return " ".join(f"{k}={v}" for k, v in asdict(self).items())

    @classmethod
    def from_line(cls, line: str) -> CacheEntry:
        raw = dict(tok.split("=", 1) for tok in line.split())
        types = {f.name: f.type for f in fields(cls)}
        try:
            kwargs = {}
            for name, typ in types.items():
                val = raw[name]
                kwargs[name] = int(val) if typ == "int" else float(val) if typ == "float" else val
        except (KeyError, ValueError) as exc:
            raise FormatError(f"bad cache line {line!r}") from exc
        return cls(**kwargs)


def now_stamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def cache_path(explicit: str | None = None) -> Path:
    return Path(explicit or os.environ.get(CACHE_ENV) or DEFAULT_CACHE)


class ResultsCache:
    """Alpha results keyed by (n, a, b); an optimal entry is never replaced by a weaker one."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path is not None else None
        self.entries: dict[tuple[int, int, int], CacheEntry] = {}

    @classmethod
    def load(cls, path: str | Path) -> ResultsCache:
        cache = cls(path)
        p = Path(path)
        if p.exists():
            cache.loads(p.read_text())
        return cache

    def loads(self, text: str) -> None:
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                self.put(CacheEntry.from_line(line))

    def dumps(self) -> str:
        return "".join(self.entries[k].to_line() + "\n" for k in sorted(self.entries))

    def save(self) -> None:
        if self.path is None:
            raise ValueError("cache has no path")
        self.path.write_text(self.dumps())

    def get(self, n: int, a: int, b: int) -> CacheEntry | None:
        return self.entries.get((n, a, b))

    def put(self, entry: CacheEntry) -> bool:
        """Store ``entry`` unless it would weaken what is cached; return whether stored."""
        old = self.entries.get(entry.key)
        if old is not None:
            if old.status == "optimal" and entry.status != "optimal":
                return False
            if old.status != "optimal" and entry.status != "optimal" and entry.value < old.value:
                return False
        self.entries[entry.key] = entry
        return True
