"""Representations of a quiver over a prime field, by brute force.

A representation stores one matrix per arrow, shape ``(dim target, dim source)``,
acting on column vectors. Subrepresentations store one canonical RREF basis per
vertex, so equal subrepresentations compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import fp
from .quiver import DimVector, Quiver

DEFAULT_BUDGET = 2**24


class BudgetExceeded(RuntimeError):
    pass


class ClosureError(ValueError):
    """The given subspaces are not closed under the arrow maps."""


@dataclass(frozen=True, eq=False)
class FFRep:
    quiver: Quiver
    p: int
    dims: DimVector
    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        dims = self.quiver.check_dim(self.dims)
        object.__setattr__(self, "dims", dims)
        if not fp.is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if len(self.mats) != len(self.quiver.arrows):
            raise ValueError(f"expected {len(self.quiver.arrows)} matrices, got {len(self.mats)}")
        mats = []
        for (s, t), m in zip(self.quiver.arrows, self.mats):
            m = np.array(m, dtype=np.int64).reshape(dims[t - 1], dims[s - 1]) % self.p
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "mats", tuple(mats))

    @classmethod
    def zero(cls, quiver: Quiver, dims: Sequence[int], p: int) -> "FFRep":
        dims = tuple(dims)
        mats = tuple(np.zeros((dims[t - 1], dims[s - 1]), dtype=np.int64) for s, t in quiver.arrows)
        return cls(quiver, p, dims, mats)

    def __eq__(self, other):
        if not isinstance(other, FFRep):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.p == other.p
            and self.dims == other.dims
            and all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats))
        )

    def __hash__(self):
        return hash((self.quiver, self.p, self.dims, tuple(m.tobytes() for m in self.mats)))

    def sigma(self, i: int) -> np.ndarray:
        """Stacked outgoing map ``V_i -> sum_{h'=i} V_{h''}``."""
        blocks = [self.mats[k] for k in self.quiver.out_arrows(i)]
        if not blocks:
            return np.zeros((0, self.dims[i - 1]), dtype=np.int64)
        return np.vstack(blocks)

    def tau(self, i: int) -> np.ndarray:
        """Concatenated incoming map ``sum_{h''=i} V_{h'} -> V_i``."""
        blocks = [self.mats[k] for k in self.quiver.in_arrows(i)]
        if not blocks:
            return np.zeros((self.dims[i - 1], 0), dtype=np.int64)
        return np.hstack(blocks)

    def __repr__(self):
        mats = ", ".join(m.tolist().__repr__() for m in self.mats)
        return f"FFRep(p={self.p}, dims={self.dims}, mats=[{mats}])"


@dataclass(frozen=True)
class SubRep:
    p: int
    dims: DimVector
    bases: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def from_rows(cls, p: int, dims: Sequence[int], rows: Sequence) -> "SubRep":
        dims = tuple(dims)
        bases = []
        for d, r in zip(dims, rows):
            r = np.asarray(r, dtype=np.int64)
            b = fp.row_basis(r.reshape(-1, d) if d else np.zeros((0, 0), dtype=np.int64), p, d)
            bases.append(tuple(tuple(int(x) for x in row) for row in b))
        return cls(p, dims, tuple(bases))

    @classmethod
    def zero(cls, p: int, dims: Sequence[int]) -> "SubRep":
        return cls(p, tuple(dims), tuple(() for _ in dims))

    @classmethod
    def full(cls, p: int, dims: Sequence[int]) -> "SubRep":
        return cls.from_rows(p, dims, [np.eye(d, dtype=np.int64) for d in dims])

    def basis(self, i: int) -> np.ndarray:
        """Basis rows at vertex ``i`` (1-based)."""
        d = self.dims[i - 1]
        b = self.bases[i - 1]
        return np.array(b, dtype=np.int64).reshape(len(b), d)

    @property
    def sub_dims(self) -> DimVector:
        return tuple(len(b) for b in self.bases)

    def is_zero(self) -> bool:
        return not any(self.bases)

    def is_full(self) -> bool:
        return self.sub_dims == self.dims

    def __le__(self, other: "SubRep") -> bool:
        """Containment, vertex by vertex."""
        return all(
            fp.contains(other.basis(i), self.basis(i), self.p) for i in range(1, len(self.dims) + 1)
        )

    def __repr__(self):
        return f"SubRep(dims={self.sub_dims} in {self.dims}, bases={self.bases})"


def _annihilator(basis: np.ndarray, d: int, p: int) -> np.ndarray:
    # rows c with c . w = 0 for all w in the span
    if basis.shape[0] == 0:
        return np.eye(d, dtype=np.int64)
    return fp.nullspace(basis, p, d)


def check_closed(m: FFRep, n: SubRep) -> None:
    if n.p != m.p or n.dims != m.dims:
        raise ClosureError("subspace data does not match the representation")
    for k, (s, t) in enumerate(m.quiver.arrows):
        images = n.basis(s) @ m.mats[k].T % m.p
        if not fp.contains(n.basis(t), images, m.p):
            raise ClosureError(f"arrow {s}->{t} does not map the subspace at {s} into the one at {t}")


def is_monomorphic(m: FFRep) -> bool:
    """Every stacked outgoing map is injective."""
    return all(fp.rank(m.sigma(i), m.p) == m.dims[i - 1] for i in m.quiver.vertices if m.dims[i - 1])


def is_epimorphic(m: FFRep) -> bool:
    """Every concatenated incoming map is surjective."""
    return all(fp.rank(m.tau(i), m.p) == m.dims[i - 1] for i in m.quiver.vertices if m.dims[i - 1])


def is_conservative(m: FFRep) -> bool:
    return is_monomorphic(m) and is_epimorphic(m)


def im_minus(m: FFRep, n: SubRep, check: bool = True) -> SubRep:
    """``U_i = intersection over arrows h out of i of f_h^{-1}(W_{h''})``."""
    if check:
        check_closed(m, n)
    q, p = m.quiver, m.p
    rows = []
    for i in q.vertices:
        d = m.dims[i - 1]
        constraints = []
        for k in q.out_arrows(i):
            t = q.arrows[k][1]
            ann = _annihilator(n.basis(t), m.dims[t - 1], p)
            if ann.shape[0]:
                constraints.append(ann @ m.mats[k] % p)
        if constraints:
            rows.append(fp.nullspace(np.vstack(constraints), p, d))
        else:
            rows.append(np.eye(d, dtype=np.int64))
    return SubRep.from_rows(p, m.dims, rows)


def im_plus(m: FFRep, n: SubRep, check: bool = True) -> SubRep:
    """``U_i = sum over arrows h into i of f_h(W_{h'})``."""
    if check:
        check_closed(m, n)
    q, p = m.quiver, m.p
    rows = []
    for i in q.vertices:
        d = m.dims[i - 1]
        images = [n.basis(q.arrows[k][0]) @ m.mats[k].T % p for k in q.in_arrows(i)]
        images = [x for x in images if x.shape[0]]
        rows.append(np.vstack(images) if images else np.zeros((0, d), dtype=np.int64))
    return SubRep.from_rows(p, m.dims, rows)


def _fixpoint(step, start: SubRep) -> SubRep:
    cur = start
    while True:
        nxt = step(cur)
        if nxt == cur:
            return cur
        cur = nxt


def max_nilpotent_subrep(m: FFRep) -> SubRep:
    """Limit of ``0 c im-(0) c im-(im-(0)) c ...``."""
    return _fixpoint(lambda n: im_minus(m, n, check=False), SubRep.zero(m.p, m.dims))


def max_epimorphic_subrep(m: FFRep) -> SubRep:
    """Limit of ``M > im+(M) > im+(im+(M)) > ...``."""
    return _fixpoint(lambda n: im_plus(m, n, check=False), SubRep.full(m.p, m.dims))


def is_nilpotent(m: FFRep) -> bool:
    """The ``im-`` chain started at 0 reaches all of ``m``."""
    return max_nilpotent_subrep(m).is_full()


def is_nilpotent_plus(m: FFRep) -> bool:
    """The ``im+`` chain started at ``m`` reaches 0."""
    return max_epimorphic_subrep(m).is_zero()


def restrict(m: FFRep, n: SubRep) -> FFRep:
    """``n`` viewed as a representation, in the coordinates of its RREF bases."""
    check_closed(m, n)
    p = m.p
    mats = []
    for k, (s, t) in enumerate(m.quiver.arrows):
        images = n.basis(s) @ m.mats[k].T % p  # rows: images of the source basis
        piv = fp.pivots_of(n.basis(t))
        mats.append(images[:, piv].T if piv else np.zeros((0, images.shape[0]), dtype=np.int64))
    return FFRep(m.quiver, p, n.sub_dims, tuple(mats))


def quotient(m: FFRep, n: SubRep) -> FFRep:
    """``m / n`` on the coordinates that are not pivots of ``n``'s bases."""
    check_closed(m, n)
    p, q = m.p, m.quiver
    comp = {}
    for i in q.vertices:
        piv = set(fp.pivots_of(n.basis(i)))
        comp[i] = [j for j in range(m.dims[i - 1]) if j not in piv]
    mats = []
    for k, (s, t) in enumerate(q.arrows):
        cols = m.mats[k][:, comp[s]].T  # rows: images of the complement basis vectors
        basis = n.basis(t)
        reduced = fp.reduce_mod(basis, fp.pivots_of(basis), cols, p) if cols.size else cols
        mats.append(reduced[:, comp[t]].T.reshape(len(comp[t]), len(comp[s])))
    dims = tuple(len(comp[i]) for i in q.vertices)
    return FFRep(q, p, dims, tuple(mats))


def direct_sum(a: FFRep, b: FFRep) -> FFRep:
    if a.quiver != b.quiver or a.p != b.p:
        raise ValueError("direct sum needs the same quiver and field")
    mats = []
    for x, y in zip(a.mats, b.mats):
        z = np.zeros((x.shape[0] + y.shape[0], x.shape[1] + y.shape[1]), dtype=np.int64)
        z[: x.shape[0], : x.shape[1]] = x
        z[x.shape[0]:, x.shape[1]:] = y
        mats.append(z)
    return FFRep(a.quiver, a.p, tuple(x + y for x, y in zip(a.dims, b.dims)), tuple(mats))


# -- enumeration ----------------------------------------------------------


def _arrow_shapes(q: Quiver, v: DimVector) -> list[tuple[int, int]]:
    return [(v[t - 1], v[s - 1]) for s, t in q.arrows]


def iter_reps(q: Quiver, v: Sequence[int], p: int, budget: int = DEFAULT_BUDGET) -> Iterator[FFRep]:
    """Every representation of dimension ``v`` over F_p, one object at a time."""
    v = q.check_dim(v)
    shapes = _arrow_shapes(q, v)
    total_entries = sum(a * b for a, b in shapes)
    if p**total_entries > budget:
        raise BudgetExceeded(f"{p}^{total_entries} representations exceed the budget {budget}")
    for entries in itertools.product(range(p), repeat=total_entries):
        mats, pos = [], 0
        for a, b in shapes:
            mats.append(np.array(entries[pos: pos + a * b], dtype=np.int64).reshape(a, b))
            pos += a * b
        yield FFRep(q, p, v, tuple(mats))


@lru_cache(maxsize=None)
def _subspaces(d: int, p: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    out = []
    for k in range(d + 1):
        for pivots in itertools.combinations(range(d), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * d for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), x in zip(free, vals):
                    rows[r][c] = x
                out.append(tuple(tuple(row) for row in rows))
    return tuple(out)


def enumerate_subspaces(d: int, p: int) -> list[np.ndarray]:
    """All subspaces of F_p^d as canonical RREF basis arrays."""
    return [np.array(b, dtype=np.int64).reshape(len(b), d) for b in _subspaces(d, p)]


def enumerate_subreps(m: FFRep, budget: int = 2**16) -> list[SubRep]:
    """All subrepresentations of ``m``."""
    per_vertex = [_subspaces(d, m.p) for d in m.dims]
    size = 1
    for opts in per_vertex:
        size *= len(opts)
    if size > budget:
        raise BudgetExceeded(f"{size} candidate subspace tuples exceed the budget {budget}")
    out = []
    for bases in itertools.product(*per_vertex):
        cand = SubRep(m.p, m.dims, tuple(bases))
        try:
            check_closed(m, cand)
        except ClosureError:
            continue
        out.append(cand)
    return out


@dataclass
class FactorizationCheck:
    """Representation-level content of the two Hall-algebra factorizations."""

    n_subreps: int
    # subreps U with U nilpotent and M/U monomorphic
    nil_mono: list[SubRep]
    # subreps E with E epimorphic and M/E nilpotent
    epi_nil: list[SubRep]
    max_nilpotent: SubRep
    max_epimorphic: SubRep
    max_nilpotent_contains_all: bool
    max_epimorphic_contains_all: bool
    quotient_mono: bool
    quotient_nil: bool

    @property
    def ok(self) -> bool:
        return (
            len(self.nil_mono) == 1
            and len(self.epi_nil) == 1
            and self.nil_mono[0] == self.max_nilpotent
            and self.epi_nil[0] == self.max_epimorphic
            and self.max_nilpotent_contains_all
            and self.max_epimorphic_contains_all
            and self.quotient_mono
            and self.quotient_nil
        )

    def to_json(self) -> dict:
        return {
            "subreps": self.n_subreps,
            "nil_mono_count": len(self.nil_mono),
            "epi_nil_count": len(self.epi_nil),
            "max_nilpotent_dims": list(self.max_nilpotent.sub_dims),
            "max_epimorphic_dims": list(self.max_epimorphic.sub_dims),
            "ok": self.ok,
        }


def verify_unique_factorization(m: FFRep, budget: int = 2**16) -> FactorizationCheck:
    subs = enumerate_subreps(m, budget)
    maxnil = max_nilpotent_subrep(m)
    maxepi = max_epimorphic_subrep(m)
    nil_mono, epi_nil = [], []
    nil_all, epi_all = True, True
    for u in subs:
        as_rep = restrict(m, u)
        quot = quotient(m, u)
        nil = is_nilpotent(as_rep)
        epi = is_epimorphic(as_rep)
        if nil and is_monomorphic(quot):
            nil_mono.append(u)
        if epi and is_nilpotent(quot):
            epi_nil.append(u)
        if nil and not u <= maxnil:
            nil_all = False
        if epi and not u <= maxepi:
            epi_all = False
    return FactorizationCheck(
        n_subreps=len(subs),
        nil_mono=nil_mono,
        epi_nil=epi_nil,
        max_nilpotent=maxnil,
        max_epimorphic=maxepi,
        max_nilpotent_contains_all=nil_all,
        max_epimorphic_contains_all=epi_all,
        quotient_mono=is_monomorphic(quotient(m, maxnil)),
        quotient_nil=is_nilpotent(quotient(m, maxepi)),
    )


# -- batched classification -------------------------------------------------


@dataclass
class ClassCounts:
    p: int
    dims: DimVector
    total: int = 0
    nilpotent: int = 0
    monomorphic: int = 0
    epimorphic: int = 0
    conservative: int = 0

    def __add__(self, other: "ClassCounts") -> "ClassCounts":
        return ClassCounts(
            self.p,
            self.dims,
            self.total + other.total,
            self.nilpotent + other.nilpotent,
            self.monomorphic + other.monomorphic,
            self.epimorphic + other.epimorphic,
            self.conservative + other.conservative,
        )

    def to_json(self) -> dict:
        return {
            "q": self.p,
            "dim": list(self.dims),
            "total": self.total,
            "nilpotent": self.nilpotent,
            "monomorphic": self.monomorphic,
            "epimorphic": self.epimorphic,
            "conservative": self.conservative,
        }


def _batch_mono_epi(q: Quiver, v: DimVector, p: int, mats: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    bsz = mats[0].shape[0] if mats else 1
    mono = np.ones(bsz, dtype=bool)
    epi = np.ones(bsz, dtype=bool)
    for i in q.vertices:
        d = v[i - 1]
        if d == 0:
            continue
        outs = [mats[k] for k in q.out_arrows(i) if mats[k].shape[1] > 0]
        if outs:
            mono &= fp.batched_rank(np.concatenate(outs, axis=1), p) == d
        else:
            mono[:] = False
        ins = [mats[k] for k in q.in_arrows(i) if mats[k].shape[2] > 0]
        if ins:
            epi &= fp.batched_rank(np.concatenate(ins, axis=2), p) == d
        else:
            epi[:] = False
    return mono, epi


def _batch_nilpotent(q: Quiver, v: DimVector, p: int, mats: list[np.ndarray]) -> np.ndarray:
    # im+ chain from the whole representation; spans kept as padded column blocks
    bsz = mats[0].shape[0] if mats else 1
    spans = {i: np.broadcast_to(np.eye(v[i - 1], dtype=np.int64), (bsz, v[i - 1], v[i - 1])) for i in q.vertices}
    for _ in range(sum(v)):
        new = {}
        for j in q.vertices:
            d = v[j - 1]
            blocks = []
            for k in q.in_arrows(j):
                s = q.arrows[k][0]
                if d and v[s - 1]:
                    blocks.append(np.matmul(mats[k], spans[s]) % p)
            if not blocks or d == 0:
                new[j] = np.zeros((bsz, d, d), dtype=np.int64)
                continue
            cols = np.concatenate(blocks, axis=2)  # (B, d, c)
            red, _ = fp.batched_rref(np.swapaxes(cols, 1, 2), p)  # rows span the image
            top = red[:, :d, :]
            if top.shape[1] < d:
                top = np.concatenate([top, np.zeros((bsz, d - top.shape[1], d), dtype=np.int64)], axis=1)
            new[j] = np.swapaxes(top, 1, 2)
        spans = new
    nil = np.ones(bsz, dtype=bool)
    for i in q.vertices:
        if v[i - 1]:
            nil &= ~spans[i].any(axis=(1, 2))
    return nil


def _digits(start: int, stop: int, p: int, width: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    powers = p ** np.arange(width, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % p


def _split(entries: np.ndarray, shapes: list[tuple[int, int]]) -> list[np.ndarray]:
    mats, pos = [], 0
    bsz = entries.shape[0]
    for a, b in shapes:
        mats.append(entries[:, pos: pos + a * b].reshape(bsz, a, b))
        pos += a * b
    return mats


def enumerate_and_classify(
    q: Quiver, v: Sequence[int], p: int, budget: int = DEFAULT_BUDGET, chunk: int = 1 << 15
) -> ClassCounts:
    """Exact counts of all / nilpotent / monomorphic / epimorphic / conservative representations."""
    v = q.check_dim(v)
    if not fp.is_prime(p):
        raise ValueError(f"{p} is not prime")
    shapes = _arrow_shapes(q, v)
    width = sum(a * b for a, b in shapes)
    total = p**width
    if total > budget:
        raise BudgetExceeded(f"{p}^{width} = {total} representations exceed the budget {budget}")
    counts = ClassCounts(p, v)
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        mats = _split(_digits(start, stop, p, width), shapes)
        mono, epi = _batch_mono_epi(q, v, p, mats)
        nil = _batch_nilpotent(q, v, p, mats)
        counts = counts + ClassCounts(
            p, v, stop - start, int(nil.sum()), int(mono.sum()), int(epi.sum()), int((mono & epi).sum())
        )
    return counts


def count_conservative(
    q: Quiver, v: Sequence[int], p: int, budget: int = DEFAULT_BUDGET, chunk: int = 1 << 15
) -> int:
    """Number of conservative representations, enumerating one arrow by rank only.

    Injectivity of the stacked out-maps and surjectivity of the in-maps are
    preserved by ``f_h -> k_{h''} f_h g_{h'}^{-1}`` for independent invertible
    ``g`` (source side) and ``k`` (target side); this moves one chosen arrow to
    the canonical matrix of its rank while permuting the other arrows bijectively.
    """
    v = q.check_dim(v)
    shapes = _arrow_shapes(q, v)
    if not shapes:
        return 1 if not any(v) else 0
    pick = max(range(len(shapes)), key=lambda k: shapes[k][0] * shapes[k][1])
    rows, cols = shapes[pick]
    rest = [s for k, s in enumerate(shapes) if k != pick]
    width = sum(a * b for a, b in rest)
    ranks = range(min(rows, cols) + 1)
    work = len(ranks) * p**width
    if work > budget:
        raise BudgetExceeded(f"{work} reduced representations exceed the budget {budget}")
    total = 0
    for r in ranks:
        canon = np.zeros((rows, cols), dtype=np.int64)
        canon[range(r), range(r)] = 1
        hits = 0
        for start in range(0, p**width, chunk):
            stop = min(p**width, start + chunk)
            others = _split(_digits(start, stop, p, width), rest)
            bsz = stop - start
            mats = others[:pick] + [np.broadcast_to(canon, (bsz, rows, cols))] + others[pick:]
            mono, epi = _batch_mono_epi(q, v, p, mats)
            hits += int((mono & epi).sum())
        total += fp.count_rank(rows, cols, r, p) * hits
    return total
