"""Finite-dimensional g-modules with exact rational action matrices.

A GModule is a weight-labelled basis plus one sparse matrix per Chevalley
basis element.  Everything downstream (adjoint module, tensor products,
cyclic spans, the irreducibles V(k*theta)) is built from these.
"""

from . import linalg
from .linalg import Basis, Echelon, mat_apply
from .rational import QQ
from .chevalley import CLASS_E, CLASS_H


class GModule:
    def __init__(self, alg, weights, ops, highest=None):
        self.alg = alg
        self.weights = list(weights)
        self.ops = ops  # list indexed by algebra basis element, column-major mats
        self.highest = highest

    @property
    def dim(self):
        return len(self.weights)

    def act(self, x, vec):
        return mat_apply(self.ops[x], vec)

    def weight_of(self, vec):
        """Common weight of the support, or None if mixed or zero."""
        wts = {self.weights[j] for j in vec}
        return wts.pop() if len(wts) == 1 else None

    def __repr__(self):
        return "GModule(%s, dim=%d)" % (self.alg.type_label, self.dim)


def trivial_gmodule(alg):
    zero = tuple(0 for _ in range(alg.rs.rank))
    return GModule(alg, [zero], [{} for _ in range(alg.dim)], highest={0: QQ(1)})


def adjoint_module(alg):
    """The algebra acting on itself; highest vector is E_theta."""
    ops = []
    for i in alg.basis_indices():
        col = {}
        for j in alg.basis_indices():
            combo = alg.bracket(i, j)
            if combo:
                col[j] = {k: QQ(v) for k, v in combo.items()}
        ops.append(col)
    highest = {alg.e_index(alg.rs.highest_root): QQ(1)}
    return GModule(alg, list(alg.weights), ops, highest=highest)


def tensor(m, n):
    """Tensor product with the coproduct action; weights add."""
    if m.alg is not n.alg:
        raise ValueError("tensor factors live over different algebras")
    dm, dn = m.dim, n.dim
    weights = []
    for a in range(dm):
        wa = m.weights[a]
        for b in range(dn):
            weights.append(tuple(x + y for x, y in zip(wa, n.weights[b])))
    ops = []
    for x in m.alg.basis_indices():
        col = {}
        for a in range(dm):
            ma = m.ops[x].get(a, {})
            for b in range(dn):
                j = a * dn + b
                out = {}
                for r, v in ma.items():
                    out[r * dn + b] = v
                for r, v in n.ops[x].get(b, {}).items():
                    linalg.vec_iadd(out, {a * dn + r: v})
                if out:
                    col[j] = out
        ops.append(col)
    highest = None
    if m.highest is not None and n.highest is not None:
        highest = {}
        for a, va in m.highest.items():
            for b, vb in n.highest.items():
                highest[a * dn + b] = va * vb
    return GModule(m.alg, weights, ops, highest=highest)


def _submodule_from_echelon(m, ech, seed=None):
    rows = [ech.rows[p] for p in ech.pivots()]
    weights = []
    for r in rows:
        w = m.weight_of(r)
        if w is None:
            raise ValueError("submodule basis row mixes weights")
        weights.append(w)
    basis = Basis(rows)
    ops = []
    for x in m.alg.basis_indices():
        col = {}
        for j, r in enumerate(rows):
            img = m.act(x, r)
            if not img:
                continue
            coords = basis.coords(img)
            if coords is None:
                raise AssertionError("closure is not action stable")
            col[j] = coords
        ops.append(col)
    highest = basis.coords(seed) if seed else None
    return GModule(m.alg, weights, ops, highest=highest)


def cyclic_span(m, vec):
    """Smallest U(g)-stable subspace containing vec, as a GModule."""
    operators = [lambda v, x=x: m.act(x, v) for x in m.alg.basis_indices()]
    ech = linalg.closure([dict(vec)], operators)
    return _submodule_from_echelon(m, ech, seed=vec)


def irreducible_ktheta(alg, k):
    """V(k*theta) realized as the cyclic span of v_theta^(tensor k).

    The construction is certified on the spot: the generator satisfies the
    highest-weight relations (raising operators kill it, Cartan eigenvalues
    are <k*theta, h>, and the lowering powers <k*theta,a^vee>+1 annihilate).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    adj = adjoint_module(alg)
    big = adj
    for _ in range(k - 1):
        big = tensor(big, adj)
    mod = cyclic_span(big, big.highest)
    _assert_highest_weight(mod, tuple(k * c for c in alg.rs.theta_fund))
    return mod


def _assert_highest_weight(mod, lam):
    alg, v = mod.alg, mod.highest
    rs = alg.rs
    for r in rs.positive_roots:
        if mod.act(alg.e_index(r), v):
            raise AssertionError("raising operator does not kill the generator")
        low = dict(v)
        for _ in range(rs.pairing(lam, r) + 1):
            low = mod.act(alg.f_index(r), low)
        if low:
            raise AssertionError("lowering power fails to annihilate the generator")
    for i in range(rs.rank):
        img = mod.act(alg.h_index(i), v)
        if linalg.vec_sub(img, linalg.vec_scale(v, QQ(lam[i]))):
            raise AssertionError("wrong Cartan eigenvalue on the generator")


def quotient_gmodule(m, sub_ech, marked=None):
    """Quotient by an action-stable subspace given as an Echelon.

    Returns (module, image of marked vector).  The quotient basis keeps the
    ambient coordinates that are not pivots of the subspace.
    """
    pivots = set(sub_ech.pivots())
    keep = [j for j in range(m.dim) if j not in pivots]
    pos = {j: a for a, j in enumerate(keep)}

    def project(vec):
        red = sub_ech.reduce(vec)
        return {pos[j]: v for j, v in red.items()}

    weights = [m.weights[j] for j in keep]
    ops = []
    for x in m.alg.basis_indices():
        col = {}
        for a, j in enumerate(keep):
            img = project(m.act(x, {j: QQ(1)}))
            if img:
                col[a] = img
        ops.append(col)
    image = project(marked) if marked else None
    return GModule(m.alg, weights, ops, highest=image), image


def check_weight_compat(m):
    """Cartan operators diagonal with the labelled eigenvalues."""
    for i in range(m.alg.rs.rank):
        h = m.alg.h_index(i)
        for j in range(m.dim):
            expect = {j: QQ(m.weights[j][i])} if m.weights[j][i] != 0 else {}
            if m.ops[h].get(j, {}) != expect:
                return False
    return True


def check_bracket_compat(m):
    """action([a,b]) == [action(a), action(b)] for all basis pairs."""
    for i in m.alg.basis_indices():
        for j in m.alg.basis_indices():
            if i >= j:
                continue
            lhs = {}
            for k, c in m.alg.bracket(i, j).items():
                lhs = linalg.mat_add(lhs, linalg.mat_scale(m.ops[k], QQ(c)))
            rhs = linalg.mat_add(
                linalg.mat_mul(m.ops[i], m.ops[j]),
                linalg.mat_scale(linalg.mat_mul(m.ops[j], m.ops[i]), QQ(-1)),
            )
            if not linalg.mat_eq(lhs, rhs):
                return False
    return True


def weight_character(m):
    """Multiset of weights as {weight: multiplicity}."""
    out = {}
    for w in m.weights:
        out[w] = out.get(w, 0) + 1
    return out
