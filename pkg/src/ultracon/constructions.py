"""Products modulo an ultrafilter.

Given same-signature factors A_i and an ultrafilter over the index set,
two product elements are "almost everywhere equal" when the set of
coordinates where they agree is in the ultrafilter; that agreement
relation is a congruence of the direct product, and the ultraproduct is
the quotient by it.  A family of per-factor congruences sigma(i) induces
the coarser relation "the set of coordinates where the pair is
sigma(i)-related is in the ultrafilter".
"""

from functools import lru_cache

import numpy as np

from .algebra import (
    DEFAULT_SIZE_GUARD,
    ProductAlgebra,
    QuotientAlgebra,
    direct_product,
)
from .congruence import Congruence, Partition, format_partition
from .errors import ValidationError
from .ultrafilter import UltrafilterD


class CongruenceFamily:
    """One congruence per factor of a would-be product."""

    __slots__ = ("factors", "choice")

    def __init__(self, factors, choice):
        factors = tuple(factors)
        choice = tuple(choice)
        if len(factors) != len(choice):
            raise ValidationError(f"{len(choice)} congruences for {len(factors)} factors")
        if not factors:
            raise ValidationError("a congruence family needs at least one factor")
        checked = []
        for i, (f, c) in enumerate(zip(factors, choice)):
            if not isinstance(c, Congruence) or c.algebra != f:
                c = Congruence(f, c)  # validates against the right factor
            checked.append(c)
        self.factors = factors
        self.choice = tuple(checked)

    @classmethod
    def identities(cls, factors) -> "CongruenceFamily":
        return cls(factors, [Partition.identity(f.size) for f in factors])

    @classmethod
    def fulls(cls, factors) -> "CongruenceFamily":
        return cls(factors, [Partition.full(f.size) for f in factors])

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.choice)

    def __getitem__(self, i: int) -> Congruence:
        return self.choice[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CongruenceFamily)
            and self.factors == other.factors
            and tuple(c.class_id for c in self.choice) == tuple(c.class_id for c in other.choice)
        )

    def __hash__(self) -> int:
        return hash((self.factors, tuple(c.class_id for c in self.choice)))

    def __repr__(self) -> str:
        shown = ", ".join(format_partition(c) for c in self.choice)
        return f"CongruenceFamily({shown})"


def _check_index_match(count: int, ultra: UltrafilterD) -> None:
    if ultra.n != count:
        raise ValidationError(
            f"ultrafilter is over a {ultra.n}-element index set but there are {count} factors"
        )


def _relation_from_factor_matrices(product: ProductAlgebra, matrices, ultra: UltrafilterD) -> np.ndarray:
    """Pairs of product elements whose per-factor agreement mask is a member.

    matrices[i] is a boolean relation matrix on factor i; the result is the
    boolean matrix of pairs (x, y) with {i : matrices[i][x_i, y_i]} in the
    ultrafilter.
    """
    size = product.size
    base = np.arange(size, dtype=np.int64)
    masks = np.zeros((size, size), dtype=np.int64)
    for i, (factor, stride) in enumerate(zip(product.factors, product.strides)):
        coords = (base // stride) % factor.size
        rel = np.asarray(matrices[i], dtype=bool)
        masks |= rel[np.ix_(coords, coords)].astype(np.int64) << i
    lookup = np.zeros(1 << ultra.n, dtype=bool)
    lookup[list(ultra.members)] = True
    return lookup[masks]


def dstar(factors, ultra: UltrafilterD, max_size: int = DEFAULT_SIZE_GUARD) -> Congruence:
    """Almost-everywhere-equal congruence on the direct product.

    Relates x and y iff the set of coordinates where they agree is in the
    ultrafilter.  Same as the product congruence of the identity family.
    """
    product = direct_product(factors, max_size)
    _check_index_match(len(product.factors), ultra)
    matrices = [np.eye(f.size, dtype=bool) for f in product.factors]
    rel = _relation_from_factor_matrices(product, matrices, ultra)
    return Congruence(product, Partition.from_matrix(rel))


def product_congruence(family: CongruenceFamily, ultra: UltrafilterD,
                       max_size: int = DEFAULT_SIZE_GUARD) -> Congruence:
    """Relate x, y iff {i : x_i and y_i are family[i]-related} is a member.

    Always contains the almost-everywhere-equal congruence of the same
    ultrafilter.
    """
    product = direct_product(family.factors, max_size)
    _check_index_match(len(product.factors), ultra)
    matrices = [c.to_matrix() for c in family.choice]
    rel = _relation_from_factor_matrices(product, matrices, ultra)
    return Congruence(product, Partition.from_matrix(rel))


class UltraproductAlgebra(QuotientAlgebra):
    """Direct product of the factors modulo almost-everywhere equality."""

    __slots__ = ("factors", "ultrafilter")

    def __init__(self, factors, ultra: UltrafilterD, max_size: int = DEFAULT_SIZE_GUARD):
        product = direct_product(factors, max_size)
        _check_index_match(len(product.factors), ultra)
        agreement = dstar(product.factors, ultra, max_size)
        super().__init__(product, agreement, max_size)
        self.factors = product.factors
        self.ultrafilter = ultra
        names = ", ".join(f.name or f"A{i}" for i, f in enumerate(self.factors))
        self.name = f"[{names}] mod {ultra!r}"

    @property
    def product(self) -> ProductAlgebra:
        return self.parent


@lru_cache(maxsize=1024)
def _ultraproduct_cached(factors, ultra, max_size):
    return UltraproductAlgebra(factors, ultra, max_size)


def ultraproduct(factors, ultra: UltrafilterD, max_size: int = DEFAULT_SIZE_GUARD) -> UltraproductAlgebra:
    """Ultraproduct of same-signature factors; repeated calls are cached."""
    return _ultraproduct_cached(tuple(factors), ultra, max_size)


def induced_congruence(theta: Congruence, base: Congruence, quotient_algebra: QuotientAlgebra | None = None) -> Congruence:
    """Carry theta down to the quotient by base.

    Requires base to refine theta (every base class inside a theta class);
    relates two quotient elements iff their representatives are
    theta-related.  Raises ValidationError with a witness pair otherwise.
    """
    from .algebra import quotient as make_quotient

    if theta.size != base.size:
        raise ValidationError(f"congruence sizes differ: {theta.size} vs {base.size}")
    if theta.algebra != base.algebra:
        raise ValidationError("theta and base are congruences of different algebras")
    for e in range(base.size):
        if theta.class_id[e] != theta.class_id[base.class_id[e]]:
            raise ValidationError(
                f"base does not refine theta: {e} and {base.class_id[e]} share a base class "
                "but not a theta class"
            )
    if quotient_algebra is None:
        quotient_algebra = make_quotient(theta.algebra, base)
    else:
        if quotient_algebra.parent != theta.algebra or quotient_algebra.congruence != base:
            raise ValidationError("supplied quotient was not built from this algebra and base")
    labels = [theta.class_id[rep] for rep in quotient_algebra.class_reps]
    return Congruence(quotient_algebra, Partition(labels))
