"""Cayley-ball enumeration for Gamma_d and the on-disk ball cache format.

Balls are taken with respect to the generators ``t, a_1, ..., a_d`` and their
inverses. Elements are canonicalized by their normal-form coordinates, so the
BFS never hashes words.
"""
from __future__ import annotations

import csv
import io
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterator

from .group import GroupElement

__all__ = [
    "BallCache",
    "BallCacheFormatError",
    "MemoryCapExceeded",
    "DEFAULT_MEMORY_CAP",
    "enumerate_ball",
    "get_ball",
    "ball_cache_path",
    "clear_ball_registry",
]

DEFAULT_MEMORY_CAP = 2 * 1024**3

MAGIC = b"FILBALL\x00"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sHIIQ")

Coords = tuple  # (r, p_1, ..., p_d)


class MemoryCapExceeded(MemoryError):
    def __init__(self, needed: int, cap: int):
        super().__init__(f"ball enumeration needs about {needed} bytes, over the memory cap of {cap}")
        self.needed = needed
        self.cap = cap


class BallCacheFormatError(ValueError):
    pass


def _entry_bytes(dim: int) -> int:
    # dict slot + tuple + small ints, measured on CPython 3.10
    return 120 + 36 * (dim + 1)


def _neighbors(c: Coords) -> list[Coords]:
    r = c[0]
    p = c[1:]
    d = len(p)
    right_t = (r + 1, p[0]) + tuple(p[j] + p[j - 1] for j in range(1, d))
    inv = [p[0]]
    for j in range(1, d):
        inv.append(p[j] - inv[-1])
    out = [right_t, (r - 1,) + tuple(inv)]
    for i in range(1, d + 1):
        out.append(c[:i] + (c[i] + 1,) + c[i + 1:])
        out.append(c[:i] + (c[i] - 1,) + c[i + 1:])
    return out


def _expand_chunk(chunk: list[Coords]) -> list[Coords]:
    out = []
    for c in chunk:
        out.extend(_neighbors(c))
    return out


class BallCache:
    """Exact word lengths of every element within ``radius`` of the identity.

    Entries are kept in canonical order: by distance, then lexicographically
    by normal-form coordinates ``(r, p_1, ..., p_d)``. Immutable once built.
    """

    def __init__(self, dim: int, radius: int, table: dict[Coords, int]):
        self.dim = dim
        self.radius = radius
        self.table = table
        self._order = sorted(table, key=lambda c: (table[c], c))

    def __len__(self) -> int:
        return len(self.table)

    def __contains__(self, g: GroupElement) -> bool:
        return g.coords in self.table

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BallCache):
            return NotImplemented
        return (self.dim, self.radius, self.table) == (other.dim, other.radius, other.table)

    def distance(self, g: GroupElement) -> int | None:
        return self.table.get(g.coords)

    def coords(self, max_dist: int | None = None) -> Iterator[Coords]:
        for c in self._order:
            if max_dist is not None and self.table[c] > max_dist:
                return
            yield c

    def elements(self, max_dist: int | None = None) -> Iterator[tuple[GroupElement, int]]:
        """``(element, distance)`` pairs in canonical order."""
        for c in self.coords(max_dist):
            yield GroupElement.from_coords(c), self.table[c]

    def sphere_sizes(self) -> list[int]:
        sizes = [0] * (self.radius + 1)
        for dist in self.table.values():
            sizes[dist] += 1
        return sizes

    def ball_sizes(self) -> list[int]:
        out, total = [], 0
        for s in self.sphere_sizes():
            total += s
            out.append(total)
        return out

    def restrict(self, radius: int) -> "BallCache":
        if radius >= self.radius:
            return self
        return BallCache(self.dim, radius, {c: k for c, k in self.table.items() if k <= radius})

    # --- persistence ---------------------------------------------------------

    def to_bytes(self) -> bytes:
        buf = io.BytesIO()
        buf.write(_HEADER.pack(MAGIC, FORMAT_VERSION, self.dim, self.radius, len(self)))
        for c in self._order:
            for x in c:
                raw = x.to_bytes((x.bit_length() + 8) // 8, "little", signed=True)
                buf.write(struct.pack("<H", len(raw)))
                buf.write(raw)
            buf.write(struct.pack("<I", self.table[c]))
        return buf.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "BallCache":
        if len(data) < _HEADER.size:
            raise BallCacheFormatError("truncated ball cache header")
        magic, version, dim, radius, count = _HEADER.unpack_from(data, 0)
        if magic != MAGIC:
            raise BallCacheFormatError(f"bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise BallCacheFormatError(f"unsupported ball cache version {version}")
        pos = _HEADER.size
        table: dict[Coords, int] = {}
        try:
            for _ in range(count):
                coords = []
                for _ in range(dim + 1):
                    (n,) = struct.unpack_from("<H", data, pos)
                    pos += 2
                    coords.append(int.from_bytes(data[pos:pos + n], "little", signed=True))
                    pos += n
                (dist,) = struct.unpack_from("<I", data, pos)
                pos += 4
                table[tuple(coords)] = dist
        except struct.error as exc:
            raise BallCacheFormatError("truncated ball cache records") from exc
        if pos != len(data):
            raise BallCacheFormatError("trailing bytes after ball cache records")
        return cls(dim, radius, table)

    def save(self, path: str | os.PathLike) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "BallCache":
        return cls.from_bytes(Path(path).read_bytes())

    def write_csv(self, fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["r"] + [f"p_{i}" for i in range(1, self.dim + 1)] + ["dist"])
        for c in self._order:
            writer.writerow(list(c) + [self.table[c]])


def enumerate_ball(
    dim: int,
    radius: int,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    workers: int = 1,
) -> BallCache:
    """Breadth-first closure of the identity out to ``radius``.

    With ``workers > 1`` each frontier is split across processes; the merged
    table is identical to the sequential one.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    per_entry = _entry_bytes(dim)
    origin = (0,) * (dim + 1)
    table: dict[Coords, int] = {origin: 0}
    frontier = [origin]
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for k in range(1, radius + 1):
            if pool is not None and len(frontier) >= 4 * workers:
                size = -(-len(frontier) // workers)
                chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                candidates = [c for part in pool.map(_expand_chunk, chunks) for c in part]
            else:
                candidates = _expand_chunk(frontier)
            new = []
            for c in candidates:
                if c not in table:
                    table[c] = k
                    new.append(c)
            frontier = new
            needed = len(table) * per_entry
            if needed > memory_cap:
                raise MemoryCapExceeded(needed, memory_cap)
    finally:
        if pool is not None:
            pool.shutdown()
    return BallCache(dim, radius, table)


_REGISTRY: dict[int, BallCache] = {}


def get_ball(
    dim: int,
    radius: int,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    cache_dir: str | os.PathLike | None = None,
    workers: int = 1,
) -> BallCache:
    """Ball of at least ``radius``, reusing the in-process registry and disk cache.

    The returned cache may have a larger radius; restrict it if that matters.
    """
    ball = _REGISTRY.get(dim)
    if ball is not None and ball.radius >= radius:
        return ball
    if cache_dir is not None:
        path = ball_cache_path(cache_dir, dim, radius)
        if path.exists():
            ball = BallCache.load(path)
            if ball.dim != dim or ball.radius != radius:
                raise BallCacheFormatError(f"{path} holds dim={ball.dim} radius={ball.radius}")
    if ball is None or ball.radius < radius:
        ball = enumerate_ball(dim, radius, memory_cap=memory_cap, workers=workers)
        if cache_dir is not None:
            Path(cache_dir).mkdir(parents=True, exist_ok=True)
            ball.save(ball_cache_path(cache_dir, dim, radius))
    _REGISTRY[dim] = ball
    return ball


def ball_cache_path(cache_dir: str | os.PathLike, dim: int, radius: int) -> Path:
    return Path(cache_dir) / f"ball_d{dim}_r{radius}.bin"


def clear_ball_registry() -> None:
    _REGISTRY.clear()
