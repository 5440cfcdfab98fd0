"""Order-type representatives: database ingestion and a sampling fallback.

Conflict verification needs one point set per simple order type of size n.
Two sources are supported: the published binary database layout (n points
per record, two unsigned little-endian coordinates each, 8-bit up to n = 8
and 16-bit beyond), and a rejection-sampling fallback that deduplicates
random general-position grid sets by their canonical sign pattern.  The
fallback serves unlabelled classes, which suffices for placement-searching
verification; it reports what it found and never silently truncates.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from random import Random
from typing import Iterable, Iterator, List, Optional, Tuple

from .geom import LabelledPointSet, is_general_position, orientation, triples

GRID = 1 << 16  # fallback sampling grid: coordinates in [0, 2^16)
FALLBACK_MAX_N = 8  # canonicalization is factorial in n
DEFAULT_STALL = 5_000
ENV_DB_DIR = "PLANARCONFLICT_OTDB_DIR"


@dataclass(frozen=True)
class OrderTypeRecord:
    n: int
    points: LabelledPointSet
    source: str  # "database" or "sampled"


class IncompleteEnumeration(RuntimeError):
    """Sampling stalled before reaching an explicitly requested class count."""

    def __init__(self, n: int, found: int, target: int):
        super().__init__(
            f"fallback sampling for n={n} stalled at {found} classes "
            f"(target {target}); result would be incomplete"
        )
        self.found = found
        self.target = target


def record_size(n: int, coord_width: int) -> int:
    if coord_width not in (8, 16):
        raise ValueError("coordinate width must be 8 or 16 bits")
    return n * 2 * (coord_width // 8)


def read_order_type_file(
    path, n: int, coord_width: int
) -> Iterator[OrderTypeRecord]:
    """Decode consecutive fixed-width point-set records from a database file.

    Each record is n points of two unsigned little-endian coordinates.  The
    file size must be an exact multiple of the record size, and every record
    must be in general position; violations are hard errors carrying the
    record index.
    """
    path = Path(path)
    size = record_size(n, coord_width)
    data = path.read_bytes()
    if len(data) == 0 or len(data) % size != 0:
        raise ValueError(
            f"{path}: size {len(data)} is not a positive multiple of the "
            f"record size {size} (n={n}, {coord_width}-bit)"
        )
    fmt = "<" + ("B" if coord_width == 8 else "H") * 2 * n
    for idx in range(len(data) // size):
        raw = struct.unpack_from(fmt, data, idx * size)
        points = LabelledPointSet(
            (raw[2 * i], raw[2 * i + 1]) for i in range(n)
        )
        if n >= 3 and not is_general_position(points):
            raise ValueError(f"{path}: record {idx} is not in general position")
        yield OrderTypeRecord(n, points, "database")


def probe_format(path) -> List[Tuple[int, int]]:
    """Plausible (n, coord_width) pairs for an unknown database file."""
    size = Path(path).stat().st_size
    candidates = []
    for n in range(3, 16):
        for width in (8, 16):
            rs = record_size(n, width)
            if size > 0 and size % rs == 0:
                candidates.append((n, width))
    return candidates


@lru_cache(maxsize=8)
def _perm_maps(n: int):
    """For every relabelling, how each sign-pattern entry reads off the base.

    Entry t of the relabelled pattern is sign * base[idx]; the sign is the
    parity of sorting the image triple.  Computed once per n (factorial
    blow-up is why the fallback is guarded to small n).
    """
    triple_index = {t: i for i, t in enumerate(triples(n))}
    maps = []
    for perm in permutations(range(1, n + 1)):
        entries = []
        for i, j, k in triples(n):
            im = (perm[i - 1], perm[j - 1], perm[k - 1])
            inversions = sum(
                1 for s in range(3) for t in range(s + 1, 3) if im[s] > im[t]
            )
            idx = triple_index[tuple(sorted(im))]
            entries.append((idx, -1 if inversions % 2 else 1))
        maps.append(tuple(entries))
    return tuple(maps)


def canonical_sign_pattern(P: LabelledPointSet) -> tuple:
    """Minimum sign pattern over all relabellings: an unlabelled order-type key.

    Exponential in n; guarded by the fallback's n <= 8 limit.
    """
    n = P.n
    pts = P.points
    base = [orientation(pts[i - 1], pts[j - 1], pts[k - 1]) for i, j, k in triples(n)]
    return min(
        tuple(sign * base[idx] for idx, sign in entries) for entries in _perm_maps(n)
    )


def generate_representatives(
    n: int,
    seed: int,
    target: Optional[int] = None,
    stall_limit: int = DEFAULT_STALL,
) -> Iterator[OrderTypeRecord]:
    """Sample general-position grid sets and emit one set per unlabelled class.

    Stops when the target class count is reached, or when no new class has
    appeared for stall_limit consecutive samples.  Stalling with an explicit
    unmet target raises IncompleteEnumeration instead of under-delivering.
    """
    if not 3 <= n <= FALLBACK_MAX_N:
        raise ValueError(f"fallback sampling supports 3 <= n <= {FALLBACK_MAX_N}")
    rng = Random(seed)
    seen = set()
    since_new = 0
    while True:
        if target is not None and len(seen) >= target:
            return
        if since_new >= stall_limit:
            if target is not None and len(seen) < target:
                raise IncompleteEnumeration(n, len(seen), target)
            return
        coords = set()
        while len(coords) < n:
            coords.add((rng.randrange(GRID), rng.randrange(GRID)))
        P = LabelledPointSet(sorted(coords))
        since_new += 1
        if not is_general_position(P):
            continue
        key = canonical_sign_pattern(P)
        if key in seen:
            continue
        seen.add(key)
        since_new = 0
        yield OrderTypeRecord(n, P, "sampled")


def database_path(db_dir, n: int) -> Tuple[Path, int]:
    """Expected file path and coordinate width for size n under a directory."""
    width = 8 if n <= 8 else 16
    return Path(db_dir) / f"otypes{n:02d}.b{width:02d}", width


@dataclass
class OtdbConfig:
    """Where representatives come from.

    db_dir falls back to the PLANARCONFLICT_OTDB_DIR environment setting;
    when no database file exists for n, sampling is used if allowed.
    """

    db_dir: Optional[str] = None
    allow_fallback: bool = True
    seed: int = 0
    target: Optional[int] = None
    stall_limit: int = DEFAULT_STALL

    def resolved_db_dir(self) -> Optional[str]:
        return self.db_dir if self.db_dir is not None else os.environ.get(ENV_DB_DIR)


class RepresentativeStream:
    """Iterable of labelled point sets plus which source served them."""

    def __init__(self, source: str, records: Iterable[OrderTypeRecord]):
        self.source = source
        self._records = records

    def __iter__(self) -> Iterator[LabelledPointSet]:
        for rec in self._records:
            yield rec.points


def representatives(n: int, config: Optional[OtdbConfig] = None) -> RepresentativeStream:
    """Unified access: database when available, else the sampling fallback."""
    if n < 3:
        raise ValueError("order types need n >= 3")
    config = config or OtdbConfig()
    db_dir = config.resolved_db_dir()
    if db_dir is not None:
        path, width = database_path(db_dir, n)
        if path.exists():
            return RepresentativeStream(
                "database", read_order_type_file(path, n, width)
            )
    if not config.allow_fallback:
        raise ValueError(
            f"no database file for n={n} and fallback sampling is disabled"
        )
    if n > FALLBACK_MAX_N:
        raise ValueError(
            f"no database file for n={n}, and fallback sampling is limited "
            f"to n <= {FALLBACK_MAX_N}"
        )
    return RepresentativeStream(
        "sampled",
        generate_representatives(
            n, config.seed, target=config.target, stall_limit=config.stall_limit
        ),
    )
