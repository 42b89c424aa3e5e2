"""Relation sets for the cyclic graded module presentations.

Every presentation here is a quotient of the universal highest-weight module:
the generator is killed by n+[t] and by (h@t^s) for s >= 1, carries Cartan
eigenvalues <lam, h>, and the listed relation elements annihilate it.  The
lowering-power relations define the maximal finite-dimensional quotient; the
extra sets cut out Demazure-type quotients, the tensor-quotient family
V_{i,k}, the partition-tuple (Garland-element) quotients, and the truncated
quotients.
"""

from dataclasses import dataclass, field

from . import current, uea
from .rational import QQ
from .uea import UElement, apply_element, garland_element


@dataclass
class Relation:
    label: str
    element: UElement
    defining: bool = True


@dataclass
class Presentation:
    alg: object
    lam: tuple
    relations: list = field(default_factory=list)

    def defining_relations(self):
        return [r for r in self.relations if r.defining]

    def validate_homogeneous(self):
        for r in self.relations:
            r.element.grade()
            r.element.weight(self.alg)
        return True


@dataclass
class PartitionTuple:
    """A tuple of partitions, one per positive root, compatible with lam."""

    alg: object
    lam: tuple
    parts: dict  # positive root -> weakly decreasing tuple of positive ints

    def __post_init__(self):
        rs = self.alg.rs
        for root in rs.positive_roots:
            p = tuple(x for x in self.parts.get(root, ()) if x != 0)
            if any(p[i] < p[i + 1] for i in range(len(p) - 1)) or any(x < 0 for x in p):
                raise ValueError("partition for %s is not weakly decreasing" % (root,))
            if sum(p) != rs.pairing(self.lam, root):
                raise ValueError(
                    "partition size %d does not match <lam, %s^vee> = %d"
                    % (sum(p), root, rs.pairing(self.lam, root))
                )
            self.parts[root] = p


def _require_dominant(alg, lam):
    if not alg.rs.is_dominant(lam):
        raise ValueError("weight %s is not dominant" % (lam,))


def _fname(alg, root):
    return alg.root_name(root)


def weyl_presentation(alg, lam):
    """Lowering powers (F_a@1)^(<lam,a^vee>+1); the t-power consequences
    (F_a@t^<lam,a^vee>) are recorded as derived, not defining."""
    _require_dominant(alg, lam)
    rels = []
    for root in alg.rs.positive_roots:
        m = alg.rs.pairing(lam, root)
        f = alg.f_index(root)
        rels.append(Relation("F[%s]^(%d)" % (_fname(alg, root), m + 1), UElement.gen(f, 0, m + 1)))
        rels.append(
            Relation("F[%s]@t^%d" % (_fname(alg, root), m), UElement.gen(f, m, 1), defining=False)
        )
    return Presentation(alg, tuple(lam), rels)


def demazure_sm(alg, lam, root):
    """(s_a, m_a) with <lam,a^vee> = (s_a-1)d_a + m_a, 0 < m_a <= d_a."""
    pairing = alg.rs.pairing(lam, root)
    if pairing == 0:
        return 0, 0
    d = alg.rs.d_alpha(root)
    s = (pairing + d - 1) // d
    m = pairing - (s - 1) * d
    return s, m


def demazure_presentation(alg, lam):
    """Level-one quotient: the Weyl relations plus (F_a@t^{s_a}) on the
    higher-multiplicity roots, and (F_a@t^{s_a-1})^2 when d_a = 3, m_a = 1."""
    pres = weyl_presentation(alg, lam)
    for root in alg.rs.positive_roots:
        d = alg.rs.d_alpha(root)
        if d <= 1:
            continue
        s, m = demazure_sm(alg, lam, root)
        if s == 0:
            continue  # pairing zero: coincides with the exponent-one Weyl relation
        f = alg.f_index(root)
        pres.relations.append(
            Relation("F[%s]@t^%d" % (_fname(alg, root), s), UElement.gen(f, s, 1))
        )
        if d == 3 and m == 1:
            pres.relations.append(
                Relation(
                    "(F[%s]@t^%d)^2" % (_fname(alg, root), s - 1), UElement.gen(f, s - 1, 2)
                )
            )
    return pres


def vik_presentation(alg, i, k):
    """The quotient family between the level-one module and the evaluation
    power: lowering relations by pairing with theta, plus (F_theta@t^{2k-i})."""
    if k < 1 or not 0 <= i <= k:
        raise ValueError("need k >= 1 and 0 <= i <= k")
    rs = alg.rs
    theta = rs.highest_root
    lam = tuple(k * c for c in rs.theta_fund)
    rels = []
    for root in rs.positive_roots:
        f = alg.f_index(root)
        name = _fname(alg, root)
        if root == theta:
            rels.append(Relation("F[theta]^(%d)" % (2 * k + 1), UElement.gen(f, 0, 2 * k + 1)))
            rels.append(Relation("F[theta]@t^%d" % (2 * k - i), UElement.gen(f, 2 * k - i, 1)))
        elif rs.form(theta, root) == 0:
            rels.append(Relation("F[%s]" % name, UElement.gen(f, 0, 1)))
        else:
            d = rs.d_alpha(root)
            rels.append(Relation("F[%s]^(%d)" % (name, k * d + 1), UElement.gen(f, 0, k * d + 1)))
            rels.append(Relation("F[%s]@t^%d" % (name, k), UElement.gen(f, k, 1)))
    return Presentation(alg, lam, rels)


def cv_relations(alg, xi):
    """Garland-element relations of a compatible partition tuple.

    The quantifier over all (r, s, k) is reduced to a finite generating set:
    r < xi(a)_1 (larger r already die in the maximal quotient), k up to the
    partition length, and per (r, k) only the minimal s; the larger-s elements
    are consequences under the bounded grading.
    """
    pres = weyl_presentation(alg, xi.lam)
    for root in alg.rs.positive_roots:
        part = xi.parts[root]
        if not part:
            continue
        seen = set()
        for r in range(1, part[0]):
            for k in range(1, len(part) + 1):
                tail = sum(part[k:])
                s = max(1, 1 + r * k + tail - r)
                if (r, s) in seen:
                    continue
                seen.add((r, s))
                el = garland_element(alg, root, r, s)
                if el.is_zero():
                    continue
                pres.relations.append(
                    Relation("x-[%s](%d,%d)" % (_fname(alg, root), r, s), el)
                )
    return pres


def truncated_presentation(alg, k, n):
    """Weyl relations for k*theta plus the truncation (F_theta@t^n)."""
    if k < 1 or n < 1:
        raise ValueError("need k, n >= 1")
    rs = alg.rs
    lam = tuple(k * c for c in rs.theta_fund)
    pres = weyl_presentation(alg, lam)
    f = alg.f_index(rs.highest_root)
    pres.relations.append(Relation("F[theta]@t^%d" % n, UElement.gen(f, n, 1)))
    return pres


# -- the distinguished partition tuples -----------------------------------------


def singleton_tuple(alg, lam):
    """One part <lam,a^vee> per root; the evaluation-module tuple."""
    rs = alg.rs
    parts = {}
    for root in rs.positive_roots:
        p = rs.pairing(lam, root)
        parts[root] = (p,) if p else ()
    return PartitionTuple(alg, tuple(lam), parts)


def unit_tuple(alg, lam):
    """All parts equal to one; the maximal-quotient tuple."""
    rs = alg.rs
    parts = {root: (1,) * rs.pairing(lam, root) for root in rs.positive_roots}
    return PartitionTuple(alg, tuple(lam), parts)


def ses_tuples(alg, i, k):
    """The three partition tuples whose quotients form the short exact
    sequence at parameters (i, k): (lower term, middle term, upper term)."""
    if k < 1 or not 0 <= i <= k:
        raise ValueError("need k >= 1 and 0 <= i <= k")
    rs = alg.rs
    theta = rs.highest_root
    lam_k = tuple(k * c for c in rs.theta_fund)
    lam_k1 = tuple((k + 1) * c for c in rs.theta_fund)

    def build(lam, theta_part):
        parts = {}
        for root in rs.positive_roots:
            if root == theta:
                parts[root] = theta_part
            else:
                parts[root] = (1,) * rs.pairing(lam, root)
        return PartitionTuple(alg, lam, parts)

    lower = build(lam_k, (2,) * i + (1,) * (2 * (k - i)))
    middle = build(lam_k1, (2,) * i + (1,) * (2 * (k + 1 - i)))
    upper = build(lam_k1, (2,) * (i + 1) + (1,) * (2 * (k - i)))
    return lower, middle, upper


# -- checking presentations against concrete models ------------------------------


@dataclass
class PresentationReport:
    lam: tuple
    highest_weight_ok: bool
    eigenvalue_ok: bool
    relation_results: list  # (label, holds, defining)
    cyclic: bool

    @property
    def ok(self):
        return (
            self.highest_weight_ok
            and self.eigenvalue_ok
            and self.cyclic
            and all(h for _, h, _ in self.relation_results)
        )

    def failures(self):
        out = []
        if not self.highest_weight_ok:
            out.append("highest-weight relations")
        if not self.eigenvalue_ok:
            out.append("Cartan eigenvalues")
        if not self.cyclic:
            out.append("cyclicity")
        out.extend(label for label, h, _ in self.relation_results if not h)
        return out


def check_presentation(model, pres, gen=None):
    """Does the model's generator satisfy every relation, and generate?"""
    alg = model.alg
    v = gen if gen is not None else model.generator
    if v is None:
        raise ValueError("model carries no generator")
    hw_ok = not uea.highest_weight_violations(model, v)
    eig_ok = True
    for idx in range(alg.rs.rank):
        img = model.apply(alg.h_index(idx), 0, v)
        expect = {j: QQ(pres.lam[idx]) * c for j, c in v.items() if pres.lam[idx] != 0}
        if img != expect:
            eig_ok = False
            break
    results = []
    for rel in pres.relations:
        img = apply_element(rel.element, model, v)
        results.append((rel.label, not img, rel.defining))
    cyclic = current.closure_echelon(model, [v]).rank == model.dim
    return PresentationReport(tuple(pres.lam), hw_ok, eig_ok, results, cyclic)


def membership_check(model, vec, seed):
    """Exact test: vec in <seed>."""
    ech = current.closure_echelon(model, [seed] if seed else [])
    return ech.contains(vec)
