"""Finite algebras as flat operation tables.

An algebra here is a carrier {0, ..., size-1} together with one total
operation table per symbol of its signature.  Tables are flat tuples in
row-major order with the FIRST argument most significant: the table index
of (a1, ..., ak) on a carrier of size n is sum(aj * n**(k-j)).

Direct products use the same mixed-radix convention over the factor sizes,
coordinate 0 most significant: in a product with sizes (2, 3), element 5
decodes to (1, 2).  Quotient carriers are numbered by ascending least
member of the congruence classes.
"""

import json
from functools import lru_cache

import numpy as np

from .errors import SizeGuardError, ValidationError

# Products, quotients and derived carriers larger than this are rejected
# instead of exhausting memory.  Callers can pass a smaller guard.
DEFAULT_SIZE_GUARD = 10_000


class Signature:
    """An ordered list of (symbol name, arity) pairs with unique names."""

    __slots__ = ("symbols", "_arities")

    def __init__(self, symbols):
        syms = []
        for entry in symbols:
            name, arity = entry
            if not isinstance(name, str) or not name:
                raise ValidationError(f"symbol name must be a non-empty string, got {name!r}")
            if not isinstance(arity, int) or isinstance(arity, bool) or arity < 0:
                raise ValidationError(f"arity of {name!r} must be a non-negative int, got {arity!r}")
            syms.append((name, arity))
        names = [n for n, _ in syms]
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate symbol names in signature: {names}")
        self.symbols = tuple(syms)
        self._arities = dict(self.symbols)

    def arity(self, name: str) -> int:
        try:
            return self._arities[name]
        except KeyError:
            raise ValidationError(f"unknown symbol {name!r}; signature has {sorted(self._arities)}") from None

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.symbols)

    def __contains__(self, name) -> bool:
        return name in self._arities

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}/{k}" for n, k in self.symbols)
        return f"Signature({inner})"


class Algebra:
    """A finite algebra: carrier {0..size-1} plus one flat table per symbol.

    Immutable after construction; the constructor checks that every table
    has length size**arity and every entry lies in the carrier.
    """

    __slots__ = ("signature", "size", "tables", "name", "_hash", "_arrays")

    def __init__(self, signature, size, tables, name: str = ""):
        if not isinstance(signature, Signature):
            signature = Signature(signature)
        if not isinstance(size, int) or isinstance(size, bool) or size < 1:
            raise ValidationError(f"carrier size must be a positive int, got {size!r}")
        if set(tables) != set(signature.names):
            missing = set(signature.names) - set(tables)
            extra = set(tables) - set(signature.names)
            raise ValidationError(
                f"tables do not match signature (missing {sorted(missing)}, extra {sorted(extra)})"
            )
        clean = {}
        for sym, arity in signature.symbols:
            table = tuple(tables[sym])
            want = size**arity
            if len(table) != want:
                raise ValidationError(
                    f"table for {sym!r} has {len(table)} entries, expected {size}**{arity} = {want}"
                )
            for idx, value in enumerate(table):
                if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < size:
                    raise ValidationError(
                        f"table entry {sym!r}[{idx}] = {value!r} is outside the carrier 0..{size - 1}"
                    )
            clean[sym] = table
        self.signature = signature
        self.size = size
        self.tables = clean
        self.name = name
        self._hash = None
        self._arrays = {}

    @property
    def elements(self) -> range:
        return range(self.size)

    def table(self, symbol: str) -> tuple:
        self.signature.arity(symbol)
        return self.tables[symbol]

    def table_array(self, symbol: str) -> np.ndarray:
        """Flat table as a read-only int64 array, cached per symbol."""
        arr = self._arrays.get(symbol)
        if arr is None:
            arr = np.asarray(self.table(symbol), dtype=np.int64)
            arr.setflags(write=False)
            self._arrays[symbol] = arr
        return arr

    def apply(self, symbol: str, args) -> int:
        args = tuple(args)
        arity = self.signature.arity(symbol)
        if len(args) != arity:
            raise ValidationError(f"{symbol!r} takes {arity} arguments, got {len(args)}")
        idx = 0
        for a in args:
            if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.size:
                raise ValidationError(f"argument {a!r} is outside the carrier 0..{self.size - 1}")
            idx = idx * self.size + a
        return self.tables[symbol][idx]

    def rename(self, name: str) -> "Algebra":
        """Same algebra under a different display name."""
        return Algebra(self.signature, self.size, self.tables, name)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Algebra)
            and self.size == other.size
            and self.signature == other.signature
            and self.tables == other.tables
        )

    def __hash__(self) -> int:
        if self._hash is None:
            items = tuple(self.tables[n] for n in self.signature.names)
            self._hash = hash((self.signature, self.size, items))
        return self._hash

    def __repr__(self) -> str:
        ops = ", ".join(f"{n}/{k}" for n, k in self.signature.symbols)
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebra{label} size={self.size} ops=[{ops}]>"


def make_algebra(signature, size, tables, name: str = "") -> Algebra:
    """Validating factory; accepts a Signature or an iterable of (name, arity)."""
    return Algebra(signature, size, tables, name)


class ElemMap:
    """A total map between two carriers, stored as its image tuple."""

    __slots__ = ("source_size", "target_size", "image")

    def __init__(self, source_size: int, target_size: int, image):
        image = tuple(image)
        if len(image) != source_size:
            raise ValidationError(f"image has {len(image)} entries, expected {source_size}")
        for x, y in enumerate(image):
            if not isinstance(y, int) or isinstance(y, bool) or not 0 <= y < target_size:
                raise ValidationError(f"image[{x}] = {y!r} is outside the target carrier 0..{target_size - 1}")
        self.source_size = source_size
        self.target_size = target_size
        self.image = image

    @classmethod
    def identity(cls, size: int) -> "ElemMap":
        return cls(size, size, range(size))

    def __getitem__(self, x: int) -> int:
        return self.image[x]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def then(self, other: "ElemMap") -> "ElemMap":
        """Composition: first self, then other."""
        if other.source_size != self.target_size:
            raise ValidationError(
                f"cannot compose: target size {self.target_size} != next source size {other.source_size}"
            )
        return ElemMap(self.source_size, other.target_size, tuple(other.image[y] for y in self.image))

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.source_size

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target_size

    def is_bijective(self) -> bool:
        return self.source_size == self.target_size and self.is_injective()

    def inverse(self) -> "ElemMap":
        if not self.is_bijective():
            raise ValidationError("only bijective maps can be inverted")
        inv = [0] * self.target_size
        for x, y in enumerate(self.image):
            inv[y] = x
        return ElemMap(self.target_size, self.source_size, inv)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElemMap)
            and self.source_size == other.source_size
            and self.target_size == other.target_size
            and self.image == other.image
        )

    def __hash__(self) -> int:
        return hash((self.source_size, self.target_size, self.image))

    def __repr__(self) -> str:
        return f"ElemMap({self.source_size}->{self.target_size}, {self.image})"


def _coordinate_vectors(sizes, strides, total):
    """Per-factor coordinate of every product element, as int64 vectors."""
    base = np.arange(total, dtype=np.int64)
    return [(base // strides[i]) % sizes[i] for i in range(len(sizes))]


class ProductAlgebra(Algebra):
    """Direct product of same-signature algebras, carrier mixed-radix encoded.

    Coordinate 0 is most significant: strides[i] is the product of the
    sizes of all later factors, encode(coords) = sum(c_i * strides[i]).
    """

    __slots__ = ("factors", "strides")

    def __init__(self, factors, max_size: int = DEFAULT_SIZE_GUARD):
        factors = tuple(factors)
        if not factors:
            raise ValidationError("a direct product needs at least one factor")
        sig = factors[0].signature
        for i, f in enumerate(factors):
            if f.signature != sig:
                raise ValidationError(
                    f"factor {i} has signature {f.signature!r}, expected {sig!r}; "
                    "all factors of a product must share one signature"
                )
        size = 1
        for f in factors:
            size *= f.size
        if size > max_size:
            raise SizeGuardError(f"product carrier would have {size} elements, guard is {max_size}")
        strides = [1] * len(factors)
        for i in range(len(factors) - 2, -1, -1):
            strides[i] = strides[i + 1] * factors[i + 1].size
        self.factors = factors
        self.strides = tuple(strides)
        tables = _product_tables(factors, size, self.strides)
        name = " x ".join(f.name or f"A{i}" for i, f in enumerate(factors))
        super().__init__(sig, size, tables, name=name)

    def encode(self, coords) -> int:
        coords = tuple(coords)
        if len(coords) != len(self.factors):
            raise ValidationError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        out = 0
        for c, f, s in zip(coords, self.factors, self.strides):
            if not 0 <= c < f.size:
                raise ValidationError(f"coordinate {c!r} is outside the factor carrier 0..{f.size - 1}")
            out += c * s
        return out

    def decode(self, element: int) -> tuple:
        if not 0 <= element < self.size:
            raise ValidationError(f"element {element!r} is outside the carrier 0..{self.size - 1}")
        return tuple((element // s) % f.size for f, s in zip(self.factors, self.strides))


def _product_tables(factors, size, strides):
    sizes = [f.size for f in factors]
    coords = _coordinate_vectors(sizes, strides, size)
    tables = {}
    for sym, arity in factors[0].signature.symbols:
        if arity == 0:
            value = sum(s * f.table(sym)[0] for f, s in zip(factors, strides))
            tables[sym] = (value,)
            continue
        acc = np.zeros((size,) * arity, dtype=np.int64)
        for i, f in enumerate(factors):
            local = f.table_array(sym).reshape((f.size,) * arity)
            acc += strides[i] * local[np.ix_(*([coords[i]] * arity))]
        tables[sym] = tuple(acc.ravel().tolist())
    return tables


@lru_cache(maxsize=512)
def _direct_product_cached(factors, max_size):
    return ProductAlgebra(factors, max_size)


def direct_product(factors, max_size: int = DEFAULT_SIZE_GUARD) -> ProductAlgebra:
    """Direct product of same-signature algebras; repeated calls are cached."""
    return _direct_product_cached(tuple(factors), max_size)


class QuotientAlgebra(Algebra):
    """Quotient of an algebra by a congruence.

    Classes are numbered by ascending least member; class_reps[c] is that
    least member and projection maps each parent element to its class.
    """

    __slots__ = ("parent", "congruence", "projection", "class_reps")

    def __init__(self, parent: Algebra, congruence, max_size: int = DEFAULT_SIZE_GUARD):
        from .congruence import Congruence

        if not isinstance(congruence, Congruence) or congruence.algebra != parent:
            congruence = Congruence(parent, congruence)
        reps = sorted(set(congruence.class_id))
        if len(reps) > max_size:
            raise SizeGuardError(f"quotient carrier would have {len(reps)} elements, guard is {max_size}")
        rank = {r: c for c, r in enumerate(reps)}
        proj = tuple(rank[congruence.class_id[e]] for e in range(parent.size))
        reps_arr = np.asarray(reps, dtype=np.int64)
        proj_arr = np.asarray(proj, dtype=np.int64)
        tables = {}
        for sym, arity in parent.signature.symbols:
            if arity == 0:
                tables[sym] = (proj[parent.table(sym)[0]],)
                continue
            full = parent.table_array(sym).reshape((parent.size,) * arity)
            picked = full[np.ix_(*([reps_arr] * arity))]
            tables[sym] = tuple(proj_arr[picked].ravel().tolist())
        name = f"{parent.name}/~" if parent.name else ""
        super().__init__(parent.signature, len(reps), tables, name=name)
        self.parent = parent
        self.congruence = congruence
        self.projection = ElemMap(parent.size, len(reps), proj)
        self.class_reps = tuple(reps)


@lru_cache(maxsize=2048)
def _quotient_cached(parent, congruence, max_size):
    return QuotientAlgebra(parent, congruence, max_size)


def quotient(algebra: Algebra, congruence, max_size: int = DEFAULT_SIZE_GUARD) -> QuotientAlgebra:
    """Quotient algebra A/theta; theta must be (or validate as) a congruence of A."""
    from .congruence import Congruence

    if not isinstance(congruence, Congruence) or congruence.algebra != algebra:
        congruence = Congruence(algebra, congruence)
    return _quotient_cached(algebra, congruence, max_size)


def kernel(h: ElemMap):
    """Partition of the source identifying elements with equal image."""
    from .congruence import Partition

    first = {}
    cid = []
    for x, y in enumerate(h.image):
        first.setdefault(y, x)
        cid.append(first[y])
    return Partition(cid)


def is_homomorphism(h: ElemMap, source: Algebra, target: Algebra) -> bool:
    """Does h carry every source operation onto the target operation?"""
    if source.signature != target.signature:
        raise ValidationError("source and target must share a signature")
    if h.source_size != source.size or h.target_size != target.size:
        raise ValidationError(
            f"map is {h.source_size}->{h.target_size}, algebras are {source.size}->{target.size}"
        )
    img = np.asarray(h.image, dtype=np.int64)
    for sym, arity in source.signature.symbols:
        src_table = source.table_array(sym)
        tgt_table = target.table_array(sym)
        if arity == 0:
            if h.image[src_table[0]] != tgt_table[0]:
                return False
            continue
        lhs = img[src_table]
        idx = np.zeros((source.size,) * arity, dtype=np.int64)
        for pos in range(arity):
            shape = [1] * arity
            shape[pos] = source.size
            idx = idx * target.size + img.reshape(shape)
        if not np.array_equal(lhs, tgt_table[idx.ravel()]):
            return False
    return True


def algebra_to_dict(algebra: Algebra, provenance: dict | None = None) -> dict:
    """JSON-ready description: name, size, signature, flat tables."""
    data = {
        "name": algebra.name,
        "size": algebra.size,
        "signature": [{"name": n, "arity": k} for n, k in algebra.signature.symbols],
        "tables": {n: list(algebra.tables[n]) for n in algebra.signature.names},
    }
    if provenance is not None:
        data["provenance"] = provenance
    return data


def algebra_from_dict(data) -> Algebra:
    if not isinstance(data, dict):
        raise ValidationError(f"algebra description must be an object, got {type(data).__name__}")
    for key in ("size", "signature", "tables"):
        if key not in data:
            raise ValidationError(f"algebra description is missing the {key!r} field")
    raw_sig = data["signature"]
    if not isinstance(raw_sig, list):
        raise ValidationError("'signature' must be a list of {name, arity} objects")
    symbols = []
    for entry in raw_sig:
        if not isinstance(entry, dict) or "name" not in entry or "arity" not in entry:
            raise ValidationError(f"bad signature entry {entry!r}; expected {{'name': ..., 'arity': ...}}")
        symbols.append((entry["name"], entry["arity"]))
    tables = data["tables"]
    if not isinstance(tables, dict):
        raise ValidationError("'tables' must be an object mapping symbol name to a flat list")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ValidationError(f"'name' must be a string, got {name!r}")
    return Algebra(Signature(symbols), data["size"], tables, name=name)


def load_algebra(path) -> Algebra:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    try:
        return algebra_from_dict(data)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def save_algebra(algebra: Algebra, path, provenance: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_dict(algebra, provenance), fh, indent=2, sort_keys=True)
        fh.write("\n")
