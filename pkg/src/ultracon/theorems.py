"""Machine verification of three facts about congruences on ultraproducts.

Theorem 1 (embedding): sending a family of per-factor congruences to its
product congruence, viewed on the ultraproduct, is well defined on
almost-everywhere-equal families, injective there, and meet-preserving;
so the ultraproduct of the factor congruence semilattices embeds into the
congruence lattice of the ultraproduct.

Theorem 2 (quotient transfer): mapping each product element to the class
of its coordinatewise congruence classes is a surjective homomorphism
onto the ultraproduct of the factor quotients, its kernel is exactly the
product congruence, and therefore the ultraproduct modulo the transferred
congruence is isomorphic to the ultraproduct of the quotients.

Theorem 3 (ultrapower restriction): for an ultrapower of a single algebra
with one congruence per coordinate, the product congruence restricted to
the diagonal copy of the base is a finite union of finite meets of the
chosen congruences (one meet per ultrafilter member), and that union is
already transitive, hence equal to the corresponding join of meets.

Every verifier returns a VerificationReport of named checks with
witnesses; the report passes iff every check passed.
"""

import json
import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_SIZE_GUARD,
    Algebra,
    ElemMap,
    direct_product,
    is_homomorphism,
    kernel,
    quotient,
)
from .congruence import (
    Congruence,
    Partition,
    con_as_algebra,
    con_lattice_of,
    format_partition,
)
from .constructions import (
    CongruenceFamily,
    UltraproductAlgebra,
    induced_congruence,
    product_congruence,
    ultraproduct,
)
from .errors import ValidationError
from .iso import find_isomorphism
from .ultrafilter import UltrafilterD, mask_elements

EXHAUSTIVE_LIMIT = 4096  # sweep every family when the family count is at most this
SAMPLE_SIZE = 500


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    instance: dict
    checks: tuple
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "checks": [c.to_dict() for c in self.checks],
            "info": self.info,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary_lines(self) -> list:
        lines = [f"{self.theorem}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}")
            if not c.passed and c.witness:
                lines.append(f"        witness: {json.dumps(c.witness, sort_keys=True)}")
        return lines


def _family_text(family: CongruenceFamily) -> list:
    return [format_partition(c) for c in family.choice]


def _ultra_text(ultra: UltrafilterD) -> list:
    return [list(s) for s in ultra.members_as_sets()]


def congruence_on_ultraproduct(family: CongruenceFamily, ultra: UltrafilterD,
                               ultra_alg: UltraproductAlgebra | None = None,
                               max_size: int = DEFAULT_SIZE_GUARD) -> Congruence:
    """The family's product congruence carried down to the ultraproduct.

    The product congruence always contains almost-everywhere equality, so
    it induces a congruence on the quotient by it; this is the embedding
    of theorem 1, evaluated at one family.
    """
    if ultra_alg is None:
        ultra_alg = ultraproduct(family.factors, ultra, max_size)
    theta = product_congruence(family, ultra, max_size)
    return induced_congruence(theta, ultra_alg.congruence, quotient_algebra=ultra_alg)


def coordinatewise_quotient_map(family: CongruenceFamily, ultra: UltrafilterD,
                                max_size: int = DEFAULT_SIZE_GUARD) -> ElemMap:
    """Product element -> class of its tuple of per-factor congruence classes.

    Maps the direct product of the factors onto the ultraproduct of the
    factor quotients (theorem 2's homomorphism).
    """
    factors = family.factors
    prod = direct_product(factors, max_size)
    quots = tuple(quotient(f, c, max_size) for f, c in zip(factors, family.choice))
    quot_prod = direct_product(quots, max_size)
    quot_ultra = ultraproduct(quots, ultra, max_size)
    base = np.arange(prod.size, dtype=np.int64)
    index = np.zeros(prod.size, dtype=np.int64)
    for i, (factor, q) in enumerate(zip(factors, quots)):
        coords = (base // prod.strides[i]) % factor.size
        proj = np.asarray(q.projection.image, dtype=np.int64)
        index += proj[coords] * quot_prod.strides[i]
    final = np.asarray(quot_ultra.projection.image, dtype=np.int64)[index]
    return ElemMap(prod.size, quot_ultra.size, final.tolist())


def natural_embedding(algebra: Algebra, ultra: UltrafilterD,
                      ultra_alg: UltraproductAlgebra | None = None,
                      max_size: int = DEFAULT_SIZE_GUARD) -> ElemMap:
    """a -> class of the constant tuple (a, ..., a) in the ultrapower."""
    if ultra_alg is None:
        ultra_alg = ultraproduct((algebra,) * ultra.n, ultra, max_size)
    if ultra_alg.factors != (algebra,) * ultra.n:
        raise ValidationError("supplied ultraproduct is not an ultrapower of this algebra")
    image = [ultra_alg.projection[ultra_alg.product.encode((a,) * ultra.n)] for a in algebra.elements]
    return ElemMap(algebra.size, ultra_alg.size, image)


def _validated_sigmas(algebra: Algebra, sigmas) -> tuple:
    out = []
    for s in sigmas:
        if not isinstance(s, Congruence) or s.algebra != algebra:
            s = Congruence(algebra, s)
        out.append(s)
    return tuple(out)


def diagonal_restriction(algebra: Algebra, sigmas, ultra: UltrafilterD) -> Congruence:
    """Relate a, b in the base iff {i : (a,b) in sigmas[i]} is a member.

    This is the product congruence of the family pulled back along the
    diagonal a -> (a, ..., a); one congruence per ultrafilter index.
    """
    sigmas = _validated_sigmas(algebra, sigmas)
    if len(sigmas) != ultra.n:
        raise ValidationError(f"{len(sigmas)} congruences for a {ultra.n}-element index set")
    rel = _diagonal_restriction_matrix(algebra, sigmas, ultra)
    return Congruence(algebra, Partition.from_matrix(rel))


def _diagonal_restriction_matrix(algebra: Algebra, sigmas, ultra: UltrafilterD) -> np.ndarray:
    masks = np.zeros((algebra.size, algebra.size), dtype=np.int64)
    for i, s in enumerate(sigmas):
        masks |= s.to_matrix().astype(np.int64) << i
    lookup = np.zeros(1 << ultra.n, dtype=bool)
    lookup[list(ultra.members)] = True
    return lookup[masks]


def _union_of_meets_matrix(algebra: Algebra, sigmas, ultra: UltrafilterD) -> np.ndarray:
    rel = np.zeros((algebra.size, algebra.size), dtype=bool)
    for member in ultra.members:
        meet = np.ones((algebra.size, algebra.size), dtype=bool)
        for k in mask_elements(member):
            meet &= sigmas[k].to_matrix()
        rel |= meet
    return rel


def union_of_meets(algebra: Algebra, sigmas, ultra: UltrafilterD) -> Partition:
    """Union over ultrafilter members K of the meet of {sigmas[k] : k in K}.

    Returned as a partition, which silently asserts the union is an
    equivalence; if it is not (it always is, that is theorem 3's content),
    ValidationError escapes from the matrix conversion.
    """
    sigmas = _validated_sigmas(algebra, sigmas)
    if len(sigmas) != ultra.n:
        raise ValidationError(f"{len(sigmas)} congruences for a {ultra.n}-element index set")
    return Partition.from_matrix(_union_of_meets_matrix(algebra, sigmas, ultra))


def join_of_meets(algebra: Algebra, sigmas, ultra: UltrafilterD) -> Congruence:
    """Congruence join over ultrafilter members of the member-wise meets."""
    sigmas = _validated_sigmas(algebra, sigmas)
    if len(sigmas) != ultra.n:
        raise ValidationError(f"{len(sigmas)} congruences for a {ultra.n}-element index set")
    parts = []
    for member in ultra.members:
        meet = None
        for k in mask_elements(member):
            meet = sigmas[k] if meet is None else meet.meet(sigmas[k])
        parts.append(meet)
    out = parts[0]
    for p in parts[1:]:
        out = out.join(p)
    return Congruence(algebra, out)


def verify_thm1(factors, ultra: UltrafilterD, *, seed: int = 0,
                exhaustive_limit: int = EXHAUSTIVE_LIMIT, sample_size: int = SAMPLE_SIZE,
                max_size: int = DEFAULT_SIZE_GUARD) -> VerificationReport:
    """Check the embedding theorem on one instance.

    Families of per-factor congruences are identified with elements of the
    direct product of the factor congruence semilattices; the ultraproduct
    of those semilattices supplies the almost-everywhere-equal classes.
    Exhaustive over all families when there are at most exhaustive_limit,
    otherwise a seeded sample.
    """
    factors = tuple(factors)
    ultra_alg = ultraproduct(factors, ultra, max_size)
    lattices = [con_lattice_of(f, max_size) for f in factors]
    con_algs = tuple(con_as_algebra(lat) for lat in lattices)
    fam_prod = direct_product(con_algs, max_size)
    fam_ultra = ultraproduct(con_algs, ultra, max_size)
    total = fam_prod.size
    exhaustive = total <= exhaustive_limit
    rng = random.Random(seed)

    def family_of(fid: int) -> CongruenceFamily:
        coords = fam_prod.decode(fid)
        return CongruenceFamily(factors, [lattices[i][c] for i, c in enumerate(coords)])

    image_cache: dict = {}

    def image_of(fid: int) -> Congruence:
        got = image_cache.get(fid)
        if got is None:
            got = congruence_on_ultraproduct(family_of(fid), ultra, ultra_alg=ultra_alg, max_size=max_size)
            image_cache[fid] = got
        return got

    if exhaustive:
        fam_ids = list(range(total))
    else:
        fam_ids = sorted(rng.sample(range(total), min(sample_size, total)))
        # make sure each sampled family can be compared with its class twin
        fam_ids = sorted(set(fam_ids) | {fam_ultra.class_reps[fam_ultra.projection[s]] for s in fam_ids})
    for fid in fam_ids:
        image_of(fid)

    checks = []

    # well-definedness: families in one almost-everywhere class share an image
    wd_witness = None
    by_class: dict = {}
    for fid in fam_ids:
        by_class.setdefault(fam_ultra.projection[fid], []).append(fid)
    for cls, members in by_class.items():
        rep = members[0]
        for fid in members[1:]:
            if image_of(fid) != image_of(rep):
                wd_witness = {
                    "family_a": _family_text(family_of(rep)),
                    "family_b": _family_text(family_of(fid)),
                    "image_a": format_partition(image_of(rep)),
                    "image_b": format_partition(image_of(fid)),
                }
                break
        if wd_witness:
            break
    checks.append(Check("well-defined-on-classes", wd_witness is None, wd_witness))

    # injectivity: distinct classes get distinct images
    inj_witness = None
    seen_image: dict = {}
    for cls, members in sorted(by_class.items()):
        img = image_of(members[0]).class_id
        if img in seen_image and seen_image[img] != cls:
            other = by_class[seen_image[img]][0]
            inj_witness = {
                "family_a": _family_text(family_of(other)),
                "family_b": _family_text(family_of(members[0])),
                "shared_image": format_partition(image_of(members[0])),
            }
            break
        seen_image.setdefault(img, cls)
    checks.append(Check("injective-on-classes", inj_witness is None, inj_witness))

    # meet preservation: image of the coordinatewise meet is the meet of images
    meet_witness = None
    if exhaustive:
        distinct: dict = {}
        parts = []
        key = np.empty(total, dtype=np.int64)
        for fid in range(total):
            img = image_of(fid)
            idx = distinct.get(img.class_id)
            if idx is None:
                idx = len(parts)
                distinct[img.class_id] = idx
                parts.append(img)
            key[fid] = idx
        r = len(parts)
        meet_of_images = np.full((r, r), -1, dtype=np.int64)
        for i in range(r):
            for j in range(i, r):
                m = parts[i].meet(parts[j])
                meet_of_images[i, j] = meet_of_images[j, i] = distinct.get(m.class_id, -1)
        fam_meet = fam_prod.table_array(con_algs[0].signature.names[0])
        expected = key[fam_meet]
        actual = meet_of_images[np.ix_(key, key)].ravel()
        bad = np.flatnonzero(expected != actual)
        if bad.size:
            flat = int(bad[0])
            s, t = divmod(flat, total)
            meet_witness = {
                "family_a": _family_text(family_of(s)),
                "family_b": _family_text(family_of(t)),
                "image_of_meet": format_partition(image_of(int(fam_meet[flat]))),
                "meet_of_images": format_partition(image_of(s).meet(image_of(t))),
            }
    else:
        op = con_algs[0].signature.names[0]
        for _ in range(sample_size):
            s = rng.choice(fam_ids)
            t = rng.choice(fam_ids)
            mid = fam_prod.apply(op, (s, t))
            if image_of(mid) != image_of(s).meet(image_of(t)):
                meet_witness = {
                    "family_a": _family_text(family_of(s)),
                    "family_b": _family_text(family_of(t)),
                    "image_of_meet": format_partition(image_of(mid)),
                    "meet_of_images": format_partition(image_of(s).meet(image_of(t))),
                }
                break
    checks.append(Check("preserves-meets", meet_witness is None, meet_witness))

    # joins are not asserted by the theorem; report them as information
    join_ok = True
    join_bad = 0
    reps = sorted(members[0] for members in by_class.values())[:64]
    for i, s in enumerate(reps):
        for t in reps[i:]:
            jid = 0
            cs, ct = fam_prod.decode(s), fam_prod.decode(t)
            for pos in range(len(factors)):
                jid += int(lattices[pos].join_table()[cs[pos], ct[pos]]) * fam_prod.strides[pos]
            if image_of(jid) != image_of(s).join(image_of(t)):
                join_ok = False
                join_bad += 1

    instance = {
        "factors": [{"name": f.name, "size": f.size} for f in factors],
        "ultrafilter": _ultra_text(ultra),
        "family_count": total,
        "mode": "exhaustive" if exhaustive else "sampled",
        "seed": seed,
    }
    info = {
        "ultraproduct_size": ultra_alg.size,
        "lattice_sizes": [len(lat) for lat in lattices],
        "families_checked": len(fam_ids),
        "classes_seen": len(by_class),
        "image_size": len({image_of(f).class_id for f in fam_ids}),
        "joins_preserved": join_ok,
        "join_counterexamples": join_bad,
    }
    return VerificationReport("thm1", instance, tuple(checks), info)


def verify_thm2(family: CongruenceFamily, ultra: UltrafilterD, *,
                max_size: int = DEFAULT_SIZE_GUARD) -> VerificationReport:
    """Check the quotient-transfer theorem on one family."""
    factors = family.factors
    prod = direct_product(factors, max_size)
    ultra_alg = ultraproduct(factors, ultra, max_size)
    quots = tuple(quotient(f, c, max_size) for f, c in zip(factors, family.choice))
    quot_ultra = ultraproduct(quots, ultra, max_size)
    cmap = coordinatewise_quotient_map(family, ultra, max_size)

    checks = []

    hom_ok = is_homomorphism(cmap, prod, quot_ultra)
    checks.append(Check("coordinatewise-map-is-homomorphism", hom_ok))
    surj_ok = cmap.is_surjective()
    checks.append(Check("coordinatewise-map-is-surjective", surj_ok))

    ker = kernel(cmap)
    theta = product_congruence(family, ultra, max_size)
    ker_witness = None
    if ker.class_id != theta.class_id:
        for a in range(prod.size):
            for b in range(prod.size):
                if ker.relates(a, b) != theta.relates(a, b):
                    ker_witness = {
                        "pair": [list(prod.decode(a)), list(prod.decode(b))],
                        "kernel_relates": ker.relates(a, b),
                        "product_congruence_relates": theta.relates(a, b),
                    }
                    break
            if ker_witness:
                break
    checks.append(Check("kernel-is-product-congruence", ker_witness is None, ker_witness))

    # factor the map through ultraproduct / transferred congruence
    transferred = congruence_on_ultraproduct(family, ultra, ultra_alg=ultra_alg, max_size=max_size)
    inner = quotient(ultra_alg, transferred, max_size)
    induced = [-1] * inner.size
    factor_witness = None
    for p in range(prod.size):
        t = inner.projection[ultra_alg.projection[p]]
        if induced[t] < 0:
            induced[t] = cmap[p]
        elif induced[t] != cmap[p]:
            factor_witness = {"quotient_element": t, "values": [induced[t], cmap[p]]}
            break
    checks.append(Check("map-factors-through-transferred-congruence", factor_witness is None, factor_witness))

    iso_ok = False
    if factor_witness is None and min(induced) >= 0:
        candidate = ElemMap(inner.size, quot_ultra.size, induced)
        iso_ok = (
            candidate.is_bijective()
            and is_homomorphism(candidate, inner, quot_ultra)
            and is_homomorphism(candidate.inverse(), quot_ultra, inner)
        )
    checks.append(Check("induced-map-is-isomorphism", iso_ok))

    search = find_isomorphism(inner, quot_ultra)
    checks.append(Check("independent-isomorphism-search", search.found))

    instance = {
        "factors": [{"name": f.name, "size": f.size} for f in factors],
        "sigma": _family_text(family),
        "ultrafilter": _ultra_text(ultra),
    }
    info = {
        "product_size": prod.size,
        "ultraproduct_size": ultra_alg.size,
        "quotient_ultraproduct_size": quot_ultra.size,
        "transferred_congruence": format_partition(transferred),
    }
    return VerificationReport("thm2", instance, tuple(checks), info)


def verify_thm3(algebra: Algebra, sigmas, ultra: UltrafilterD, *,
                max_size: int = DEFAULT_SIZE_GUARD) -> VerificationReport:
    """Check the ultrapower-restriction theorem on one family."""
    sigmas = _validated_sigmas(algebra, sigmas)
    if len(sigmas) != ultra.n:
        raise ValidationError(f"{len(sigmas)} congruences for a {ultra.n}-element index set")
    checks = []

    restr_matrix = _diagonal_restriction_matrix(algebra, sigmas, ultra)
    union_matrix = _union_of_meets_matrix(algebra, sigmas, ultra)

    eq_witness = None
    if not np.array_equal(restr_matrix, union_matrix):
        a, b = map(int, np.argwhere(restr_matrix != union_matrix)[0])
        eq_witness = {
            "pair": [a, b],
            "in_restriction": bool(restr_matrix[a, b]),
            "in_union_of_meets": bool(union_matrix[a, b]),
        }
    checks.append(Check("union-of-meets-equals-restriction", eq_witness is None, eq_witness))

    # the union being transitive (an equivalence at all) is the hard half
    union_part = None
    trans_witness = None
    try:
        union_part = Partition.from_matrix(union_matrix)
    except ValidationError as exc:
        trans_witness = {"reason": str(exc)}
    checks.append(Check("union-of-meets-is-equivalence", trans_witness is None, trans_witness))

    cong_witness = None
    if union_part is not None:
        try:
            Congruence(algebra, union_part)
        except ValidationError as exc:
            cong_witness = {"reason": str(exc)}
    else:
        cong_witness = {"reason": "union is not even an equivalence"}
    checks.append(Check("union-of-meets-is-congruence", cong_witness is None, cong_witness))

    join_witness = None
    joined = join_of_meets(algebra, sigmas, ultra)
    if union_part is None or joined.class_id != union_part.class_id:
        join_witness = {
            "join_of_meets": format_partition(joined),
            "union_of_meets": format_partition(union_part) if union_part else None,
        }
    checks.append(Check("join-of-meets-equals-union", join_witness is None, join_witness))

    # pull the transferred congruence back along the natural embedding
    power = ultraproduct((algebra,) * ultra.n, ultra, max_size)
    embed = natural_embedding(algebra, ultra, ultra_alg=power, max_size=max_size)
    embed_ok = embed.is_injective() and is_homomorphism(embed, algebra, power)
    checks.append(Check("natural-embedding-is-injective-homomorphism", embed_ok))

    family = CongruenceFamily((algebra,) * ultra.n, sigmas)
    transferred = congruence_on_ultraproduct(family, ultra, ultra_alg=power, max_size=max_size)
    pulled = Partition([transferred.class_id[embed[a]] for a in algebra.elements])
    pull_witness = None
    if not np.array_equal(pulled.to_matrix(), restr_matrix):
        a, b = map(int, np.argwhere(pulled.to_matrix() != restr_matrix)[0])
        pull_witness = {
            "pair": [a, b],
            "pullback_relates": bool(pulled.to_matrix()[a, b]),
            "restriction_relates": bool(restr_matrix[a, b]),
        }
    checks.append(Check("pullback-along-embedding-equals-restriction", pull_witness is None, pull_witness))

    instance = {
        "algebra": {"name": algebra.name, "size": algebra.size},
        "sigma": [format_partition(s) for s in sigmas],
        "ultrafilter": _ultra_text(ultra),
    }
    info = {
        "ultrapower_size": power.size,
        "restriction": format_partition(Partition.from_matrix(restr_matrix)),
        "members_used": len(ultra.members),
    }
    return VerificationReport("thm3", instance, tuple(checks), info)
