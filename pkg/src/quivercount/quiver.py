"""Quivers, dimension vectors and the Euler form.

Vertices are labelled ``1..n``; dimension vectors are plain tuples of
non-negative ints indexed from 0 (entry ``i - 1`` belongs to vertex ``i``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Sequence

DimVector = tuple[int, ...]


class QuiverParseError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[tuple[int, int], ...]
    # vertex count of the original quiver when this one is its extension
    extended_from: Optional[int] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"a quiver needs at least one vertex, got n={self.n}")
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        for s, t in arrows:
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise ValueError(f"arrow {s}->{t} has an endpoint outside 1..{self.n}")
        object.__setattr__(self, "arrows", arrows)
        if not self.is_connected():
            warnings.warn(f"quiver {self.name or self.arrows} is not connected", stacklevel=3)

    # -- named quivers ------------------------------------------------------

    @classmethod
    def loops(cls, m: int) -> "Quiver":
        return cls(1, ((1, 1),) * m, name=f"{m}-loop")

    @classmethod
    def jordan(cls) -> "Quiver":
        return cls(1, ((1, 1),), name="jordan")

    @classmethod
    def a2(cls) -> "Quiver":
        return cls(2, ((1, 2),), name="A2")

    @classmethod
    def kronecker(cls) -> "Quiver":
        return cls(2, ((1, 2), (1, 2)), name="kronecker")

    # -- parsing ------------------------------------------------------------

    @classmethod
    def parse(cls, text: str, name: str = "") -> "Quiver":
        """Parse the line format ``vertices <n>`` / ``arrow <src> <dst>``.

        ``#`` starts a comment; ``/`` is accepted as a line separator so
        one-liners such as ``"vertices 1 / arrow 1 1"`` work.
        """
        n = None
        arrows = []
        lines = text.replace("/", "\n").splitlines()
        for lineno, raw in enumerate(lines, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            key = parts[0].lower()
            try:
                if key == "vertices" and len(parts) == 2:
                    if n is not None:
                        raise QuiverParseError(f"line {lineno}: duplicate 'vertices'")
                    n = int(parts[1])
                elif key == "arrow" and len(parts) == 3:
                    arrows.append((int(parts[1]), int(parts[2])))
                else:
                    raise QuiverParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
            except ValueError as exc:
                if isinstance(exc, QuiverParseError):
                    raise
                raise QuiverParseError(f"line {lineno}: bad integer in {raw.strip()!r}") from exc
        if n is None:
            raise QuiverParseError("missing 'vertices <n>' line")
        if n < 1:
            raise QuiverParseError(f"vertex count must be >= 1, got {n}")
        for s, t in arrows:
            if not (1 <= s <= n and 1 <= t <= n):
                raise QuiverParseError(f"arrow {s} {t} out of range 1..{n}")
        return cls(n, tuple(arrows), name=name)

    @classmethod
    def load(cls, path) -> "Quiver":
        path = Path(path)
        return cls.parse(path.read_text(), name=path.stem)

    def to_text(self) -> str:
        lines = [f"vertices {self.n}"]
        lines += [f"arrow {s} {t}" for s, t in self.arrows]
        return "\n".join(lines) + "\n"

    # -- structure ----------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def out_arrows(self, i: int) -> list[int]:
        """Indices of arrows with source ``i``."""
        return [k for k, (s, _) in enumerate(self.arrows) if s == i]

    def in_arrows(self, i: int) -> list[int]:
        return [k for k, (_, t) in enumerate(self.arrows) if t == i]

    @property
    def sources(self) -> tuple[int, ...]:
        """Vertices that are not the target of any arrow."""
        targets = {t for _, t in self.arrows}
        return tuple(i for i in self.vertices if i not in targets)

    @property
    def sinks(self) -> tuple[int, ...]:
        """Vertices that are not the source of any arrow."""
        srcs = {s for s, _ in self.arrows}
        return tuple(i for i in self.vertices if i not in srcs)

    def needs_extension(self) -> bool:
        return bool(self.sources or self.sinks)

    def is_connected(self) -> bool:
        adj = {i: set() for i in self.vertices}
        for s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen = {1}
        stack = [1]
        while stack:
            for j in adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n

    def extend(self) -> "Quiver":
        """Add vertex ``n+1`` with arrows into every source and out of every sink."""
        if not self.needs_extension():
            return self
        new = self.n + 1
        arrows = list(self.arrows)
        arrows += [(new, s) for s in self.sources]
        arrows += [(t, new) for t in self.sinks]
        if not (self.sources and self.sinks):
            # otherwise the new vertex would itself be a source or a sink;
            # a loop there is invisible once v_{n+1} = 0
            arrows.append((new, new))
        name = f"{self.name}-bar" if self.name else ""
        return Quiver(new, tuple(arrows), extended_from=self.n, name=name)

    def base(self) -> "Quiver":
        """The quiver this one extends (drop vertex ``n`` and its arrows)."""
        if self.extended_from is None:
            raise ValueError("not an extended quiver")
        m = self.extended_from
        arrows = tuple((s, t) for s, t in self.arrows if s <= m and t <= m)
        return Quiver(m, arrows, name=self.name.removesuffix("-bar"))

    # -- linear data --------------------------------------------------------

    def check_dim(self, v: Sequence[int]) -> DimVector:
        v = tuple(int(x) for x in v)
        if len(v) != self.n:
            raise ValueError(f"dimension vector {v} has length {len(v)}, quiver has {self.n} vertices")
        if any(x < 0 for x in v):
            raise ValueError(f"dimension vector {v} has a negative entry")
        return v

    def euler(self, v: Sequence[int], w: Sequence[int]) -> int:
        """``sum_i v_i w_i - sum_h v_{h'} w_{h''}``."""
        self._len(v)
        self._len(w)
        val = sum(a * b for a, b in zip(v, w))
        for s, t in self.arrows:
            val -= v[s - 1] * w[t - 1]
        return val

    def dot_out(self, v: Sequence[int]) -> DimVector:
        """Entry ``i``: sum of ``v`` at the targets of the arrows leaving ``i``."""
        self._len(v)
        out = [0] * self.n
        for s, t in self.arrows:
            out[s - 1] += v[t - 1]
        return tuple(out)

    def dot_in(self, v: Sequence[int]) -> DimVector:
        """Entry ``i``: sum of ``v`` at the sources of the arrows entering ``i``."""
        self._len(v)
        out = [0] * self.n
        for s, t in self.arrows:
            out[t - 1] += v[s - 1]
        return tuple(out)

    def rep_dim(self, v: Sequence[int]) -> int:
        """Dimension of the representation space, ``sum_h v_{h'} v_{h''}``."""
        self._len(v)
        return sum(v[s - 1] * v[t - 1] for s, t in self.arrows)

    def _len(self, v):
        if len(v) != self.n:
            raise ValueError(f"dimension vector {tuple(v)} has wrong length for {self.n} vertices")

    def __str__(self):
        arrows = ", ".join(f"{s}->{t}" for s, t in self.arrows)
        return f"Quiver({self.name or '?'}: n={self.n}; {arrows})"


def parse_quiver(text: str) -> Quiver:
    return Quiver.parse(text)


def euler_form(q: Quiver, v, w) -> int:
    return q.euler(v, w)


def extend_quiver(q: Quiver) -> Quiver:
    return q.extend()


def dim_vectors(n: int, maxdeg: int, mindeg: int = 0) -> Iterator[DimVector]:
    """All length-``n`` vectors with ``mindeg <= sum <= maxdeg``, by degree then lexicographically."""
    def rec(k, total):
        if k == 1:
            yield (total,)
            return
        for a in range(total, -1, -1):
            for rest in rec(k - 1, total - a):
                yield (a,) + rest

    for d in range(mindeg, maxdeg + 1):
        yield from sorted(rec(n, d))


def add(v: Sequence[int], w: Sequence[int]) -> DimVector:
    return tuple(a + b for a, b in zip(v, w))


def sub(v: Sequence[int], w: Sequence[int]) -> DimVector:
    return tuple(a - b for a, b in zip(v, w))


def leq(v: Sequence[int], w: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(v, w))


def dot(v: Sequence[int], w: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(v, w))
