"""Partitions of a finite carrier and congruences of finite algebras.

Canonical form everywhere: a partition of {0..n-1} is stored as the tuple
class_id where class_id[e] is the LEAST element of e's class.  Two
partitions are equal iff their class_id tuples are equal, class_id[e] <= e,
and class_id[class_id[e]] == class_id[e].

The text form is JSON: "[[0,1],[2]]" with blocks sorted by least element
and elements ascending, no spaces.

A congruence is a partition compatible with every operation of an algebra;
compatibility is checked one argument position at a time, which is
equivalent to the full simultaneous-substitution property.
"""

import json
from functools import lru_cache

import numpy as np

from .algebra import DEFAULT_SIZE_GUARD, Algebra
from .errors import SizeGuardError, ValidationError


class Partition:
    """An equivalence relation on {0..size-1} in least-member canonical form.

    The constructor accepts any labelling (each equal label = one class)
    and canonicalizes it, so Partition(p.class_id) == p always holds.
    """

    __slots__ = ("size", "class_id", "_hash")

    def __init__(self, labels):
        labels = tuple(labels)
        least = {}
        cid = []
        for e, lab in enumerate(labels):
            if lab not in least:
                least[lab] = e
            cid.append(least[lab])
        self.size = len(labels)
        self.class_id = tuple(cid)
        self._hash = None

    @classmethod
    def identity(cls, size: int) -> "Partition":
        """Every element alone: the diagonal relation."""
        return cls(range(size))

    @classmethod
    def full(cls, size: int) -> "Partition":
        """One class containing everything."""
        if size < 1:
            raise ValidationError("a partition needs a non-empty carrier")
        return cls([0] * size)

    @classmethod
    def from_blocks(cls, size: int, blocks) -> "Partition":
        """Build from explicit blocks; they must partition 0..size-1 exactly."""
        labels = [None] * size
        for block in blocks:
            block = list(block)
            if not block:
                raise ValidationError("empty block in partition")
            for e in block:
                if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < size:
                    raise ValidationError(f"block element {e!r} is outside the carrier 0..{size - 1}")
                if labels[e] is not None:
                    raise ValidationError(f"element {e} appears in two blocks")
                labels[e] = min(block)
        missing = [e for e in range(size) if labels[e] is None]
        if missing:
            raise ValidationError(f"blocks do not cover the carrier; missing {missing}")
        return cls(labels)

    @classmethod
    def from_pairs(cls, size: int, pairs) -> "Partition":
        """Finest partition relating every given pair (transitive closure)."""
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            for e in (a, b):
                if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < size:
                    raise ValidationError(f"pair element {e!r} is outside the carrier 0..{size - 1}")
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return cls([find(e) for e in range(size)])

    @classmethod
    def from_matrix(cls, matrix) -> "Partition":
        """Build from a boolean relation matrix; must be an equivalence.

        Raises ValidationError naming the first broken property
        (reflexivity, symmetry, or transitivity) with a witness.
        """
        rel = np.asarray(matrix, dtype=bool)
        if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
            raise ValidationError(f"relation matrix must be square, got shape {rel.shape}")
        n = rel.shape[0]
        if not rel.diagonal().all():
            e = int(np.flatnonzero(~rel.diagonal())[0])
            raise ValidationError(f"relation is not reflexive: ({e},{e}) missing")
        if not np.array_equal(rel, rel.T):
            a, b = map(int, np.argwhere(rel != rel.T)[0])
            raise ValidationError(f"relation is not symmetric at ({a},{b})")
        # For an equivalence, each row's first True is the least related
        # element; the relation must then coincide with that grouping.
        least = np.argmax(rel, axis=1)
        if not np.array_equal(rel, least[:, None] == least[None, :]):
            bad = np.argwhere(rel != (least[:, None] == least[None, :]))[0]
            a, b = map(int, bad)
            raise ValidationError(f"relation is not transitive: closure disagrees at ({a},{b})")
        return cls(least.tolist())

    def relates(self, a: int, b: int) -> bool:
        return self.class_id[a] == self.class_id[b]

    def blocks(self) -> tuple:
        """Classes as tuples of ascending elements, sorted by least member."""
        out = {}
        for e, r in enumerate(self.class_id):
            out.setdefault(r, []).append(e)
        return tuple(tuple(out[r]) for r in sorted(out))

    @property
    def num_classes(self) -> int:
        return len(set(self.class_id))

    def refines(self, other: "Partition") -> bool:
        """Is every class of self inside a class of other?"""
        if self.size != other.size:
            raise ValidationError(f"partition sizes differ: {self.size} vs {other.size}")
        return all(other.class_id[e] == other.class_id[self.class_id[e]] for e in range(self.size))

    def to_matrix(self) -> np.ndarray:
        cid = np.asarray(self.class_id, dtype=np.int64)
        return cid[:, None] == cid[None, :]

    def meet(self, other: "Partition") -> "Partition":
        """Common refinement: relate a pair iff both partitions relate it."""
        if self.size != other.size:
            raise ValidationError(f"partition sizes differ: {self.size} vs {other.size}")
        return Partition(list(zip(self.class_id, other.class_id)))

    def join(self, other: "Partition") -> "Partition":
        """Finest common coarsening: transitive closure of the union."""
        if self.size != other.size:
            raise ValidationError(f"partition sizes differ: {self.size} vs {other.size}")
        pairs = [(e, self.class_id[e]) for e in range(self.size)]
        pairs += [(e, other.class_id[e]) for e in range(self.size)]
        return Partition.from_pairs(self.size, pairs)

    __and__ = meet
    __or__ = join

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.class_id == other.class_id

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.class_id)
        return self._hash

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)})"


def format_partition(p: Partition) -> str:
    """Canonical text form: '[[0,1],[2]]', sorted, no spaces."""
    return json.dumps([list(b) for b in p.blocks()], separators=(",", ":"))


def parse_partition(text: str, size: int) -> Partition:
    """Parse the '[[0,1],[2]]' text form; blocks must partition 0..size-1."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"partition text is not valid JSON: {text!r} ({exc})") from exc
    if not isinstance(data, list) or not all(isinstance(b, list) for b in data):
        raise ValidationError(f"partition text must be a list of blocks, got {text!r}")
    return Partition.from_blocks(size, data)


def all_partitions(size: int):
    """Yield every partition of {0..size-1}, Bell(size) of them.

    Enumerates restricted growth strings; first-occurrence labelling makes
    each result canonical already.
    """
    if size < 1:
        raise ValidationError("a partition needs a non-empty carrier")
    labels = [0] * size
    maxes = [0] * size

    def rec(pos, used):
        if pos == size:
            yield Partition(labels)
            return
        for lab in range(used + 1):
            labels[pos] = lab
            yield from rec(pos + 1, used + (lab == used))

    yield from rec(1, 1) if size > 1 else iter((Partition([0]),))


def _congruence_violation(algebra: Algebra, p: Partition):
    """First one-coordinate compatibility failure, or None.

    Returns (symbol, position, a, b, index) meaning: substituting b for a
    at `position` in the argument tuple decoded from flat `index` changes
    the result's class.
    """
    if p.size != algebra.size:
        raise ValidationError(f"partition is over {p.size} elements, algebra has {algebra.size}")
    n = algebra.size
    cid = np.asarray(p.class_id, dtype=np.int64)
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            continue
        classes = cid[algebra.table_array(sym)].reshape((n,) * arity)
        for pos in range(arity):
            rows = np.moveaxis(classes, pos, 0).reshape(n, -1)
            # each element's row must match its class representative's row
            mism = rows != rows[cid]
            if mism.any():
                a, rest = map(int, np.argwhere(mism)[0])
                b = int(cid[a])
                # rebuild the flat index of the offending argument tuple
                before = rest // (n ** (arity - 1 - pos))
                after = rest % (n ** (arity - 1 - pos))
                flat = (before * n + a) * (n ** (arity - 1 - pos)) + after
                return (sym, pos, a, b, flat)
    return None


def is_congruence(algebra: Algebra, p: Partition) -> bool:
    """Is p compatible with every operation of the algebra?"""
    return _congruence_violation(algebra, p) is None


class Congruence(Partition):
    """A partition verified to be compatible with an algebra's operations."""

    __slots__ = ("algebra",)

    def __init__(self, algebra: Algebra, partition):
        labels = partition.class_id if isinstance(partition, Partition) else tuple(partition)
        super().__init__(labels)
        if self.size != algebra.size:
            raise ValidationError(f"partition is over {self.size} elements, algebra has {algebra.size}")
        witness = _congruence_violation(algebra, self)
        if witness is not None:
            sym, pos, a, b, flat = witness
            raise ValidationError(
                f"not a congruence of {algebra.name or 'the algebra'}: {sym!r} at argument {pos} "
                f"separates related elements {a}~{b} (argument index {flat})"
            )
        self.algebra = algebra

    def __repr__(self) -> str:
        return f"Congruence({self.algebra.name or self.algebra.size}, {format_partition(self)})"


def principal_congruence(algebra: Algebra, a: int, b: int) -> Congruence:
    """Smallest congruence relating a and b.

    Worklist closure: union the pair, then push its images under every
    one-argument translation of every operation until stable.  Polynomial
    in the carrier size for a fixed signature.
    """
    n = algebra.size
    for e in (a, b):
        if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < n:
            raise ValidationError(f"generator {e!r} is outside the carrier 0..{n - 1}")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # one-argument translations: (table, step, base indices with 0 at the slot)
    translations = []
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            continue
        table = algebra.table(sym)
        for pos in range(arity):
            step = n ** (arity - 1 - pos)
            bases = tuple(flat for flat in range(n**arity) if (flat // step) % n == 0)
            translations.append((table, step, bases))

    pending = [(a, b)]
    while pending:
        x, y = pending.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for table, step, bases in translations:
            xoff = x * step
            yoff = y * step
            for base in bases:
                u = table[base + xoff]
                v = table[base + yoff]
                if find(u) != find(v):
                    pending.append((u, v))
    return Congruence(algebra, Partition([find(e) for e in range(n)]))


class ConLattice:
    """All congruences of an algebra in canonical order.

    Order: ascending number of classes, then lexicographic class_id; so the
    full relation comes first and the identity relation last.
    """

    __slots__ = ("algebra", "congruences", "_index", "_meet", "_join")

    def __init__(self, algebra: Algebra, congruences):
        self.algebra = algebra
        self.congruences = tuple(sorted(congruences, key=lambda c: (c.num_classes, c.class_id)))
        self._index = {c.class_id: i for i, c in enumerate(self.congruences)}
        self._meet = None
        self._join = None

    def index(self, p: Partition) -> int:
        try:
            return self._index[p.class_id]
        except KeyError:
            raise ValidationError(f"{format_partition(p)} is not a congruence of this algebra") from None

    def __len__(self) -> int:
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __getitem__(self, i: int) -> Congruence:
        return self.congruences[i]

    def __contains__(self, p) -> bool:
        return isinstance(p, Partition) and p.class_id in self._index

    @property
    def bottom(self) -> Congruence:
        """The identity congruence (finest)."""
        return self.congruences[-1]

    @property
    def top(self) -> Congruence:
        """The full congruence (coarsest)."""
        return self.congruences[0]

    def meet_table(self) -> np.ndarray:
        if self._meet is None:
            k = len(self.congruences)
            tbl = np.zeros((k, k), dtype=np.int64)
            for i in range(k):
                for j in range(i, k):
                    tbl[i, j] = tbl[j, i] = self.index(self.congruences[i].meet(self.congruences[j]))
            self._meet = tbl
        return self._meet

    def join_table(self) -> np.ndarray:
        if self._join is None:
            k = len(self.congruences)
            tbl = np.zeros((k, k), dtype=np.int64)
            for i in range(k):
                for j in range(i, k):
                    tbl[i, j] = tbl[j, i] = self.index(self.congruences[i].join(self.congruences[j]))
            self._join = tbl
        return self._join

    def leq(self, i: int, j: int) -> bool:
        """Is congruence i below (finer than or equal to) congruence j?"""
        return self.congruences[i].refines(self.congruences[j])

    def cover_pairs(self) -> list:
        """Hasse diagram edges (lower, upper) by index."""
        k = len(self.congruences)
        below = [[self.leq(i, j) and i != j for j in range(k)] for i in range(k)]
        covers = []
        for i in range(k):
            for j in range(k):
                if below[i][j] and not any(below[i][m] and below[m][j] for m in range(k)):
                    covers.append((i, j))
        return covers

    def __repr__(self) -> str:
        return f"<ConLattice of {self.algebra.name or self.algebra.size}: {len(self)} congruences>"


def con_lattice(algebra: Algebra, max_size: int = DEFAULT_SIZE_GUARD) -> ConLattice:
    """Every congruence: principal congruences closed under join.

    Join-irreducible congruences are principal, so closing the principal
    ones (plus the identity) under binary join reaches the whole lattice
    without touching all Bell(n) partitions.
    """
    if algebra.size > max_size:
        raise SizeGuardError(f"carrier has {algebra.size} elements, guard is {max_size}")
    n = algebra.size
    seen = {}
    start = [Partition.identity(n)]
    for a in range(n):
        for b in range(a + 1, n):
            start.append(principal_congruence(algebra, a, b))
    queue = []
    for p in start:
        if p.class_id not in seen:
            seen[p.class_id] = p
            queue.append(p)
    while queue:
        p = queue.pop()
        for q in list(seen.values()):
            j = p.join(q)
            if j.class_id not in seen:
                seen[j.class_id] = j
                queue.append(j)
    return ConLattice(algebra, [Congruence(algebra, p) for p in seen.values()])


def con_lattice_bruteforce(algebra: Algebra, max_size: int = 8) -> ConLattice:
    """Oracle: filter all Bell(n) partitions by is_congruence.  n <= 8."""
    if algebra.size > max_size:
        raise SizeGuardError(
            f"brute force enumerates Bell({algebra.size}) partitions; guard is {max_size}"
        )
    found = [Congruence(algebra, p) for p in all_partitions(algebra.size) if is_congruence(algebra, p)]
    return ConLattice(algebra, found)


@lru_cache(maxsize=256)
def _con_lattice_cached(algebra, max_size):
    return con_lattice(algebra, max_size)


def con_lattice_of(algebra: Algebra, max_size: int = DEFAULT_SIZE_GUARD) -> ConLattice:
    """Cached con_lattice; safe because algebras and lattices are immutable."""
    return _con_lattice_cached(algebra, max_size)


def con_as_algebra(lattice: ConLattice, symbol: str = "meet") -> Algebra:
    """The congruence lattice as a meet-semilattice algebra.

    Carrier = lattice indices in canonical order; one binary operation,
    the congruence meet.
    """
    table = tuple(int(v) for v in lattice.meet_table().ravel())
    name = f"Con({lattice.algebra.name})" if lattice.algebra.name else "Con"
    return Algebra([(symbol, 2)], len(lattice), {symbol: table}, name=name)


def con_lattice_dot(lattice: ConLattice) -> str:
    """Hasse diagram in DOT format, nodes labelled by partition text."""
    lines = ["digraph con_lattice {", "  rankdir=BT;"]
    for i, c in enumerate(lattice):
        lines.append(f'  n{i} [label="{format_partition(c)}"];')
    for low, high in lattice.cover_pairs():
        lines.append(f"  n{low} -> n{high};")
    lines.append("}")
    return "\n".join(lines)
