"""In-memory and on-disk store of exact volume polynomials.

File format (text, line oriented)::

    # wpmoduli volume cache
    format 1
    budget 12
    c <g> <n> <a1,a2,...|-> <Q[pi] coefficient>
    ...
    e <g> <n> <number of c-lines for this (g, n)>

Coefficient lines of one (g, n) are followed by an ``e`` line; a block
without a matching ``e`` line, a bad header, or any unparsable line makes
the whole file untrusted: it is discarded with a warning and rebuilt.
Blocks are appended under a file lock, so several processes may share a
file; duplicate blocks are harmless (last one wins, and they agree).
"""

from __future__ import annotations

import logging
import os
import threading
import warnings
from pathlib import Path

from filelock import FileLock

from ..errors import BudgetError, DomainError
from ..exactring import from_text, to_text
from ._common import degree, is_stable
from ._kernel import make_engine
from .polynomial import VolumePoly

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
DEFAULT_BUDGET = 12
ENV_PATH = "WPMODULI_CACHE"
HEADER = "# wpmoduli volume cache"


class CacheCorrupt(ValueError):
    pass


def default_cache_path() -> Path | None:
    """Path from ``$WPMODULI_CACHE``, else a per-user cache directory.

    ``WPMODULI_CACHE=none`` (or an empty value) disables persistence.
    """
    env = os.environ.get(ENV_PATH)
    if env is not None:
        if env.strip().lower() in ("", "none", "off"):
            return None
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "wpmoduli" / f"volumes-v{FORMAT_VERSION}.txt"


class VolumeCache:
    """Exact V_{g,n} polynomials on demand, memoised and optionally persisted.

    ``path=None`` picks :func:`default_cache_path`; ``path=False`` keeps the
    cache in memory only.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, path=None, backend: str | None = None):
        if budget < 3:
            raise ValueError("budget must be at least 3")
        self.budget = budget
        self.backend = backend
        self._engine = make_engine(budget + 1, backend)
        self._polys: dict[tuple[int, int], VolumePoly] = {}
        self._lock = threading.RLock()
        if path is False:
            self.path = None
        elif path is None:
            self.path = default_cache_path()
        else:
            self.path = Path(path)
        self.loaded_from_disk = 0
        if self.path is not None:
            self._load()

    @property
    def engine_backend(self) -> str:
        return self._engine.backend

    def in_budget(self, g: int, n: int) -> bool:
        return degree(g, n) <= self.budget

    def check(self, g: int, n: int) -> None:
        if not is_stable(g, n):
            raise DomainError(f"(g, n) = ({g}, {n}) needs 2g - 2 + n >= 1")
        if not self.in_budget(g, n):
            raise BudgetError(
                f"3g - 3 + n = {degree(g, n)} exceeds the exact budget {self.budget}; use asymptotic mode"
            )

    def get(self, g: int, n: int) -> VolumePoly:
        self.check(g, n)
        with self._lock:
            hit = self._polys.get((g, n))
        if hit is not None:
            return hit
        poly = self.compute(g, n)
        with self._lock:
            self._polys[(g, n)] = poly
        if self.path is not None:
            self._append(poly)
        return poly

    def compute(self, g: int, n: int) -> VolumePoly:
        """Recompute from the recursion, bypassing the store."""
        from . import core

        return core.solve(self._engine, g, n)

    def cached_pairs(self) -> list[tuple[int, int]]:
        with self._lock:
            return sorted(self._polys)

    def all_pairs(self) -> list[tuple[int, int]]:
        """Every hyperbolic (g, n) inside the budget."""
        out = []
        for g in range(0, self.budget // 3 + 2):
            for n in range(0, self.budget + 4):
                if is_stable(g, n) and self.in_budget(g, n):
                    out.append((g, n))
        return out

    def populate(self) -> list[tuple[int, int]]:
        pairs = self.all_pairs()
        for g, n in pairs:
            self.get(g, n)
        return pairs

    # persistence -------------------------------------------------------

    def _lockfile(self) -> FileLock:
        return FileLock(str(self.path) + ".lock")

    def _load(self) -> None:
        if not self.path.exists():
            return
        try:
            with self._lockfile():
                text = self.path.read_text(encoding="utf-8")
            polys = parse_cache(text)
        except (OSError, CacheCorrupt, ValueError) as exc:
            warnings.warn(f"discarding volume cache {self.path}: {exc}", RuntimeWarning, stacklevel=3)
            self._reset_file()
            return
        with self._lock:
            self._polys.update(polys)
        self.loaded_from_disk = len(polys)

    def _reset_file(self) -> None:
        try:
            with self._lockfile():
                self.path.unlink(missing_ok=True)
        except OSError as exc:  # pragma: no cover - permissions
            log.warning("could not remove corrupt cache %s: %s", self.path, exc)

    def _append(self, poly: VolumePoly) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self._lockfile():
                fresh = not self.path.exists() or self.path.stat().st_size == 0
                with open(self.path, "a", encoding="utf-8") as fh:
                    if fresh:
                        fh.write(f"{HEADER}\nformat {FORMAT_VERSION}\nbudget {self.budget}\n")
                    fh.write(format_block(poly))
        except OSError as exc:
            log.warning("volume cache %s not written: %s", self.path, exc)


def format_block(poly: VolumePoly) -> str:
    lines = []
    for alpha, c in poly.coeffs.items():
        idx = ",".join(str(a) for a in alpha) if alpha else "-"
        lines.append(f"c {poly.g} {poly.n} {idx} {to_text(c)}")
    lines.append(f"e {poly.g} {poly.n} {len(lines)}")
    return "\n".join(lines) + "\n"


def format_cache(polys, budget: int = DEFAULT_BUDGET) -> str:
    body = "".join(format_block(p) for p in polys)
    return f"{HEADER}\nformat {FORMAT_VERSION}\nbudget {budget}\n{body}"


def parse_cache(text: str) -> dict[tuple[int, int], VolumePoly]:
    lines = text.splitlines()
    if len(lines) < 3 or lines[0] != HEADER:
        raise CacheCorrupt("missing header")
    if lines[1] != f"format {FORMAT_VERSION}":
        raise CacheCorrupt(f"unsupported format line {lines[1]!r}")
    if not lines[2].startswith("budget ") or not lines[2][7:].isdigit():
        raise CacheCorrupt(f"bad budget line {lines[2]!r}")
    out: dict[tuple[int, int], VolumePoly] = {}
    pending: dict[tuple[int, int], dict] = {}
    for lineno, line in enumerate(lines[3:], start=4):
        if not line.strip():
            continue
        fields = line.split()
        try:
            if fields[0] == "c" and len(fields) == 5:
                g, n = int(fields[1]), int(fields[2])
                alpha = () if fields[3] == "-" else tuple(int(a) for a in fields[3].split(","))
                if len(alpha) != n:
                    raise CacheCorrupt(f"line {lineno}: index length")
                pending.setdefault((g, n), {})[alpha] = from_text(fields[4])
            elif fields[0] == "e" and len(fields) == 4:
                g, n, count = int(fields[1]), int(fields[2]), int(fields[3])
                block = pending.pop((g, n), {})
                if len(block) != count:
                    raise CacheCorrupt(f"line {lineno}: block for ({g},{n}) has {len(block)} of {count} records")
                poly = VolumePoly.from_coefficients(g, n, block)
                poly.check_invariants()
                out[(g, n)] = poly
            else:
                raise CacheCorrupt(f"line {lineno}: unrecognised record")
        except CacheCorrupt:
            raise
        except Exception as exc:
            raise CacheCorrupt(f"line {lineno}: {exc}") from exc
    if pending:
        raise CacheCorrupt(f"unterminated blocks {sorted(pending)}")
    return out
