"""Graded modules over the current algebra g[t].

CurrentModule stores one sparse matrix per (algebra basis element, t-power s)
with 0 <= s <= span; bounded grading forces x@t^s to act as zero beyond the
span, so "for all s" statements are finite.  Evaluation shifts t -> t+z and
tensor products of shifted modules are lazy wrappers exposing the same
apply/op interface; they are not graded (the filtration machinery in fusion
re-grades them).
"""

from math import comb

from . import linalg
from .linalg import Basis, Echelon, mat_apply
from .character import GradedCharacter
from .rational import QQ


class CurrentModule:
    """Finite-dimensional graded g[t]-module with explicit matrices."""

    def __init__(self, alg, grades, weights, ops, generator=None, graded=True):
        self.alg = alg
        self.grades = list(grades)
        self.weights = list(weights)
        self.ops = dict(ops)  # (x, s) -> column-major sparse matrix
        self.generator = generator
        self.graded = graded

    @property
    def dim(self):
        return len(self.weights)

    @property
    def span(self):
        """Largest t-power that can act nonzero (max grade - min grade)."""
        if not self.graded or not self.grades:
            return max((s for (_, s) in self.ops), default=0)
        return max(self.grades) - min(self.grades)

    def op(self, x, s):
        return self.ops.get((x, s), {})

    def apply(self, x, s, vec):
        mat = self.ops.get((x, s))
        return mat_apply(mat, vec) if mat else {}

    def op_keys(self):
        """All (x, s) pairs that may act nonzero."""
        n = self.span
        return [(x, s) for x in self.alg.basis_indices() for s in range(n + 1)]

    def weight_of(self, vec):
        wts = {self.weights[j] for j in vec}
        return wts.pop() if len(wts) == 1 else None

    def grade_of(self, vec):
        gs = {self.grades[j] for j in vec}
        return gs.pop() if len(gs) == 1 else None

    def __repr__(self):
        return "CurrentModule(%s, dim=%d)" % (self.alg.type_label, self.dim)


def trivial_current(alg):
    zero = tuple(0 for _ in range(alg.rs.rank))
    return CurrentModule(alg, [0], [zero], {}, generator={0: QQ(1)})


def ev0(gm):
    """Evaluation at zero: everything in grade 0, g@tC[t] acts as zero."""
    ops = {(x, 0): gm.ops[x] for x in gm.alg.basis_indices() if gm.ops[x]}
    return CurrentModule(
        gm.alg, [0] * gm.dim, list(gm.weights), ops, generator=dict(gm.highest) if gm.highest else None
    )


def grade_shift(m, r):
    """tau_r: shift all grades by r, action unchanged."""
    return CurrentModule(
        m.alg, [g + r for g in m.grades], list(m.weights), m.ops,
        generator=m.generator, graded=m.graded,
    )


class EvalShifted:
    """Module action twisted by t -> t+z; grading is forgotten."""

    def __init__(self, base, z):
        self.base = base
        self.z = QQ(z)
        self.alg = base.alg
        self.weights = list(base.weights)
        self.generator = base.generator
        self.graded = False
        self._cache = {}

    @property
    def dim(self):
        return self.base.dim

    def op(self, x, s):
        key = (x, s)
        if key not in self._cache:
            out = {}
            for j in range(min(s, self.base.span) + 1):
                mat = self.base.ops.get((x, j))
                if not mat:
                    continue
                c = comb(s, j) * self.z ** (s - j)
                if c != 0:
                    out = linalg.mat_add(out, linalg.mat_scale(mat, QQ(c)))
            self._cache[key] = out
        return self._cache[key]

    def apply(self, x, s, vec):
        return mat_apply(self.op(x, s), vec)

    def weight_of(self, vec):
        wts = {self.weights[j] for j in vec}
        return wts.pop() if len(wts) == 1 else None


def eval_shift(m, z):
    """V^z: same space, x@t^s acting as x@(t+z)^s."""
    return EvalShifted(m, z)


class TensorCurrent:
    """Tensor product of current modules with the coproduct action per t-power."""

    def __init__(self, factors):
        algs = {id(f.alg) for f in factors}
        if len(algs) != 1:
            raise ValueError("tensor factors live over different algebras")
        self.factors = list(factors)
        self.alg = factors[0].alg
        self.graded = False
        dims = [f.dim for f in factors]
        self._dims = dims
        self._strides = []
        acc = 1
        for d in reversed(dims):
            self._strides.append(acc)
            acc *= d
        self._strides.reverse()
        self.dim_ = acc
        self.weights = []
        for j in range(acc):
            digits = self._digits(j)
            w = None
            for f, a in zip(self.factors, digits):
                wf = f.weights[a]
                w = wf if w is None else tuple(x + y for x, y in zip(w, wf))
            self.weights.append(w)
        self.generator = None
        if all(f.generator for f in factors):
            gen = {0: QQ(1)}
            offset = {}
            for f, stride in zip(factors, self._strides):
                new = {}
                for j, c in gen.items():
                    for a, v in f.generator.items():
                        new[j + a * stride] = c * v
                gen = new
            self.generator = gen

    @property
    def dim(self):
        return self.dim_

    def _digits(self, j):
        out = []
        for d in reversed(self._dims):
            out.append(j % d)
            j //= d
        out.reverse()
        return out

    def apply(self, x, s, vec):
        out = {}
        for j, c in vec.items():
            digits = self._digits(j)
            for f_idx, (f, stride) in enumerate(zip(self.factors, self._strides)):
                col = f.op(x, s).get(digits[f_idx])
                if not col:
                    continue
                rest = j - digits[f_idx] * stride
                for r, v in col.items():
                    linalg.vec_iadd(out, {rest + r * stride: c * v})
        return out

    def op(self, x, s):
        cols = {}
        for j in range(self.dim_):
            img = self.apply(x, s, {j: QQ(1)})
            if img:
                cols[j] = img
        return cols

    def weight_of(self, vec):
        wts = {self.weights[j] for j in vec}
        return wts.pop() if len(wts) == 1 else None


def tensor_current(factors):
    """Tensor product of g[t]-modules (x@t^s acts factorwise and sums)."""
    return TensorCurrent(factors)


def _op_callables(m, smax=None):
    if smax is None:
        smax = m.span
    ops = []
    for x in m.alg.basis_indices():
        for s in range(smax + 1):
            ops.append(lambda v, x=x, s=s: m.apply(x, s, v))
    return ops


def closure_echelon(m, seeds, smax=None):
    """Echelon basis of the g[t]-submodule generated by the seed vectors."""
    return linalg.closure([dict(s) for s in seeds], _op_callables(m, smax))


def submodule_generated(m, vec):
    """<vec>: the submodule generated by one vector, as a CurrentModule.

    The sub-basis keeps the induced grading and weights when the seed is
    homogeneous (echelon rows stay homogeneous because the ambient basis is
    labelled and the operators are homogeneous).
    """
    ech = closure_echelon(m, [vec] if vec else [])
    rows = [ech.rows[p] for p in ech.pivots()]
    grades, weights = [], []
    homogeneous = True
    for r in rows:
        g, w = m.grade_of(r), m.weight_of(r)
        if g is None or w is None:
            homogeneous = False
            break
        grades.append(g)
        weights.append(w)
    if not homogeneous:
        raise ValueError("submodule seed is not homogeneous; no graded basis exists")
    sub = _module_from_rows(m, rows, grades, weights, generator=vec)
    sub.ambient_echelon = ech
    sub.ambient_rows = rows
    return sub


def _module_from_rows(m, rows, grades, weights, generator=None):
    if not rows:
        mod = CurrentModule(m.alg, [], [], {})
        mod.ambient_echelon = Echelon()
        mod.ambient_rows = []
        return mod
    basis = Basis(rows)
    span = max(grades) - min(grades)
    ops = {}
    for x in m.alg.basis_indices():
        for s in range(span + 1):
            col = {}
            for j, r in enumerate(rows):
                img = m.apply(x, s, r)
                if not img:
                    continue
                coords = basis.coords(img)
                if coords is None:
                    raise ValueError("row space is not action stable")
                col[j] = coords
            if col:
                ops[(x, s)] = col
    gen = basis.coords(generator) if generator else None
    return CurrentModule(m.alg, grades, weights, ops, generator=gen)


def quotient(m, sub):
    """Quotient of a graded module by an action-stable graded submodule.

    `sub` is a CurrentModule returned by submodule_generated (its ambient
    echelon is reused), or an Echelon of ambient row vectors.  The quotient
    basis keeps the ambient labels whose columns are not pivots, i.e. the
    lexicographically earliest labels survive.
    """
    ech = sub if isinstance(sub, Echelon) else sub.ambient_echelon
    for row in list(ech.rows.values()):
        for x, s in m.op_keys():
            img = m.apply(x, s, row)
            if img and ech.reduce(img):
                raise ValueError("submodule is not action stable")
    pivots = set(ech.pivots())
    keep = [j for j in range(m.dim) if j not in pivots]
    pos = {j: a for a, j in enumerate(keep)}

    def project(vec):
        red = ech.reduce(vec)
        return {pos[j]: v for j, v in red.items()}

    grades = [m.grades[j] for j in keep]
    weights = [m.weights[j] for j in keep]
    span = (max(grades) - min(grades)) if grades else 0
    ops = {}
    for x in m.alg.basis_indices():
        for s in range(span + 1):
            mat = m.ops.get((x, s))
            if not mat:
                continue
            col = {}
            for j in keep:
                src = mat.get(j)
                if not src:
                    continue
                img = project(src)
                if img:
                    col[pos[j]] = img
            if col:
                ops[(x, s)] = col
    gen = project(m.generator) if m.generator else None
    return CurrentModule(m.alg, grades, weights, ops, generator=gen)


def graded_character(m):
    if not m.graded:
        raise ValueError("module carries no grading")
    out = {}
    for g, w in zip(m.grades, m.weights):
        out[(g, w)] = out.get((g, w), 0) + 1
    return GradedCharacter(out)


def submodule_character(m, vec):
    """Graded character of <vec> without building the induced action."""
    ech = closure_echelon(m, [vec] if vec else [])
    out = {}
    for p in ech.pivots():
        row = ech.rows[p]
        g, w = m.grade_of(row), m.weight_of(row)
        if g is None or w is None:
            raise ValueError("submodule seed is not homogeneous")
        out[(g, w)] = out.get((g, w), 0) + 1
    return GradedCharacter(out)


# -- structural scans (used by the test suites) --------------------------------


def check_grading(m):
    """x@t^s maps grade r into grade r+s."""
    for (x, s), mat in m.ops.items():
        for j, col in mat.items():
            for i in col:
                if m.grades[i] != m.grades[j] + s:
                    return False
    return True


def check_weights(m):
    for i in range(m.alg.rs.rank):
        h = m.alg.h_index(i)
        mat = m.ops.get((h, 0), {})
        for j in range(m.dim):
            expect = {j: QQ(m.weights[j][i])} if m.weights[j][i] != 0 else {}
            if mat.get(j, {}) != expect:
                return False
    return True


def check_bracket_compat(m, smax=None, xs=None):
    """action([a,b], r+s) == [action(a,r), action(b,s)] wherever r+s fits."""
    n = m.span if smax is None else smax
    indices = list(m.alg.basis_indices()) if xs is None else list(xs)
    for a in indices:
        for b in indices:
            if a >= b:
                continue
            combo = m.alg.bracket(a, b)
            for r in range(n + 1):
                for s in range(n + 1 - r):
                    lhs = {}
                    for k, c in combo.items():
                        lhs = linalg.mat_add(lhs, linalg.mat_scale(m.op(k, r + s), QQ(c)))
                    rhs = linalg.mat_add(
                        linalg.mat_mul(m.op(a, r), m.op(b, s)),
                        linalg.mat_scale(linalg.mat_mul(m.op(b, s), m.op(a, r)), QQ(-1)),
                    )
                    if not linalg.mat_eq(lhs, rhs):
                        return False
    return True
