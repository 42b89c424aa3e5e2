"""Independent oracle: build a cyclic graded module directly from relations.

The solver works grade by grade.  Grade 0 is the irreducible module for the
highest weight (quotiented further if the presentation has extra grade-zero
relations).  For d >= 1 the grade-d piece is presented on the free space

    Free(d) = span{ m ox w : m an ordered monomial in (x@t^s), s >= 1,
                    of total t-degree d; w a grade-0 basis vector }

which realizes U(g[t])[d] modulo the grade-0 annihilator.  The kernel K_d of
Free(d) -> M[d] is generated by (y@t^s) K_{d-s} for 1 <= s <= d together with
the degree-d relation elements applied to the generator, closed under the
degree-zero action; only the relation seeds need the closure pass because the
propagated span is already U(g)-stable.

Completion is declared after `window` consecutive empty grades.  With
window >= 2 this is a proof, not a heuristic: if M[e] = 0 for T < e <= T+2
then every (x@t^s) with s > T - e kills M[e] for all e <= T, by downward
induction on e and upward induction on s via x_b@t^(s+1) = [h@t, x_b@t^s]/c
and h@t^(s+1) = [e@t^s, f@t]; hence all grades above T vanish.
"""

from dataclasses import dataclass, field
from math import factorial

from . import current, gmodule, uea
from .linalg import Echelon, vec_iadd
from .rational import QQ


@dataclass
class SolveConfig:
    grade_cutoff: int = 16
    t_cutoff: int = None  # defaults to grade_cutoff; smaller values forfeit the certificate
    window: int = 2

    def __post_init__(self):
        if self.grade_cutoff < 0 or self.window < 1:
            raise ValueError("bad solver configuration")
        if self.t_cutoff is None:
            self.t_cutoff = self.grade_cutoff


@dataclass
class SolveCertificate:
    completed: bool
    top_grade: int
    grades_computed: int
    graded_dims: dict = field(default_factory=dict)
    note: str = ""


class _GradeZero:
    """Adapter exposing the grade-0 module through the t-power interface."""

    def __init__(self, gm):
        self.gm = gm
        self.alg = gm.alg
        self.span = 0

    def apply(self, x, s, vec):
        return self.gm.act(x, vec) if s == 0 else {}


def _monomials(alg, d, t_cutoff):
    """Ordered monomials of total t-degree d with all factors of positive
    t-power, as tuples of (x, s, exponent) in the solver's canonical order."""
    alphabet = []
    for s in range(1, min(d, t_cutoff) + 1):
        for x in alg.basis_indices():
            alphabet.append((x, s))
    alphabet.sort(key=lambda f: (-f[1], alg.class_of(f[0]), f[0]))
    out = []

    def rec(pos, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(pos, len(alphabet)):
            x, s = alphabet[p]
            if s > remaining:
                continue
            top = remaining // s
            for b in range(1, top + 1):
                acc.append((x, s, b))
                rec(p + 1, remaining - s * b, acc)
                acc.pop()

    rec(0, d, [])
    out.sort()
    return out


class PresentationSolver:
    def __init__(self, alg, pres, config=None):
        self.alg = alg
        self.pres = pres
        self.config = config or SolveConfig()
        self.st = uea.get_straightener(alg, "split")
        k = alg.rs.theta_multiple(pres.lam)
        if k is None:
            raise ValueError("explicit models are built only for multiples of theta")
        self._build_grade_zero(k)
        # per grade: symbol list, index map, kernel echelon, kernel rows, quotient basis
        self.symbols = {0: [((), w) for w in range(self.m0.dim)]}
        self.symbol_index = {0: {sym: i for i, sym in enumerate(self.symbols[0])}}
        self.kernels = {0: Echelon()}
        self.kernel_rows = {0: []}
        self.quotient_cols = {0: list(range(self.m0.dim))}
        self._tail_cache = {}
        self._shift_cache = {}

    # -- grade zero -----------------------------------------------------------

    def _build_grade_zero(self, k):
        alg = self.alg
        base = gmodule.trivial_gmodule(alg) if k == 0 else gmodule.irreducible_ktheta(alg, k)
        v = dict(base.highest)
        wrapper = _GradeZero(base)
        extra = []
        for rel in self.pres.defining_relations():
            if rel.element.grade() == 0:
                img = uea.apply_element(rel.element, wrapper, v)
                if img:
                    extra.append(img)
        if extra:
            ops = [lambda vec, x=x: base.act(x, vec) for x in alg.basis_indices()]
            from .linalg import closure

            ech = closure(extra, ops)
            base, v = gmodule.quotient_gmodule(base, ech, marked=v)
        self.m0 = base
        self.v0 = v

    # -- straightening helpers --------------------------------------------------

    def _split(self, factors):
        """Straighten single factors and split each monomial into its positive
        t-power head (regrouped with divided powers) and its t^0 tail."""
        result = []
        for mono, c in self.st.straighten(tuple(factors)).items():
            cut = len(mono)
            for i, (_, s) in enumerate(mono):
                if s == 0:
                    cut = i
                    break
            head, tail = mono[:cut], mono[cut:]
            grouped, mult = uea._regroup(head)
            result.append((grouped, tail, c * mult))
        return result

    def _tail_apply(self, tail, vec):
        """Product of t^0 factors acting on a grade-0 vector, rightmost first."""
        out = dict(vec)
        for x, _ in reversed(tail):
            out = self.m0.act(x, out)
            if not out:
                break
        return out

    def _expand_symbol(self, mono):
        flat = []
        denom = 1
        for x, s, b in mono:
            denom *= factorial(b)
            flat.extend([(x, s)] * b)
        return flat, denom

    def _emit(self, grade, head, tailvec, coeff, out):
        index = self.symbol_index[grade]
        for w, cw in tailvec.items():
            col = index.get((head, w))
            if col is None:
                raise AssertionError("straightened symbol missing from Free(%d)" % grade)
            v = out.get(col, QQ(0)) + coeff * cw
            if v == 0:
                out.pop(col, None)
            else:
                out[col] = v

    def _shift_templates(self, y, s, mono):
        key = (y, s, mono)
        hit = self._shift_cache.get(key)
        if hit is None:
            flat, denom = self._expand_symbol(mono)
            hit = [(head, tail, QQ(c, denom)) for head, tail, c in self._split([(y, s)] + flat)]
            self._shift_cache[key] = hit
        return hit

    def shift_apply(self, y, s, grade, vec):
        """(y@t^s): Free(grade) -> Free(grade+s), exact."""
        target = grade + s
        out = {}
        src_symbols = self.symbols[grade]
        for col, c in vec.items():
            mono, w = src_symbols[col]
            for head, tail, coeff in self._shift_templates(y, s, mono):
                tkey = (tail, w)
                tv = self._tail_cache.get(tkey)
                if tv is None:
                    tv = self._tail_apply(tail, {w: QQ(1)})
                    self._tail_cache[tkey] = tv
                if tv:
                    self._emit(target, head, tv, c * coeff, out)
        return out

    def element_to_free(self, element, grade):
        """rho_d(element . v): the relation element applied to the generator,
        written in Free(grade) coordinates."""
        out = {}
        for mono, coeff in element.terms.items():
            flat, denom = self._expand_symbol(mono)
            for head, tail, c in self._split(flat):
                tv = self._tail_apply(tail, self.v0)
                if tv:
                    self._emit(grade, head, tv, coeff * QQ(c, denom), out)
        return out

    # -- the grade-by-grade loop --------------------------------------------------

    def _prepare_grade(self, d):
        monos = _monomials(self.alg, d, self.config.t_cutoff)
        syms = [(m, w) for m in monos for w in range(self.m0.dim)]
        self.symbols[d] = syms
        self.symbol_index[d] = {sym: i for i, sym in enumerate(syms)}

    def _relation_seeds(self, d):
        seeds = []
        for rel in self.pres.defining_relations():
            if rel.element.grade() == d:
                img = self.element_to_free(rel.element, d)
                if img:
                    seeds.append(img)
        alg = self.alg
        # implicit highest-weight relations in grade d
        if d <= self.config.t_cutoff:
            for root in alg.rs.positive_roots:
                e = alg.e_index(root)
                seeds.append({self.symbol_index[d][(((e, d, 1),), w)]: c for w, c in self.v0.items()})
            for i in range(alg.rs.rank):
                h = alg.h_index(i)
                seeds.append({self.symbol_index[d][(((h, d, 1),), w)]: c for w, c in self.v0.items()})
        return seeds

    def solve_grade(self, d):
        self._prepare_grade(d)
        ech = Echelon()
        rows = []
        for s in range(1, d + 1):
            lower = self.kernel_rows.get(d - s, [])
            for row_grade_vec in lower:
                for y in self.alg.basis_indices():
                    img = self.shift_apply(y, s, d - s, row_grade_vec)
                    if img:
                        new = ech.insert(img)
                        if new is not None:
                            rows.append(new)
        # relation seeds need the degree-zero closure; the propagated span is
        # already stable under the degree-zero action
        work = []
        for seed in self._relation_seeds(d):
            new = ech.insert(seed)
            if new is not None:
                rows.append(new)
                work.append(new)
        while work:
            vec = work.pop()
            for y in self.alg.basis_indices():
                img = self.shift_apply(y, 0, d, vec)
                if img:
                    new = ech.insert(img)
                    if new is not None:
                        rows.append(new)
                        work.append(new)
        self.kernels[d] = ech
        self.kernel_rows[d] = rows
        pivots = set(ech.rows)
        self.quotient_cols[d] = [i for i in range(len(self.symbols[d])) if i not in pivots]
        return len(self.quotient_cols[d])

    def run(self):
        cfg = self.config
        dims = {0: self.m0.dim}
        zeros = 0
        top = 0
        d = 0
        completed = False
        while d < cfg.grade_cutoff:
            d += 1
            n = self.solve_grade(d)
            dims[d] = n
            if n == 0:
                zeros += 1
                if zeros >= cfg.window:
                    completed = True
                    break
            else:
                zeros = 0
                top = d
        if completed and cfg.t_cutoff < d:
            completed = False  # symbol space was truncated; cannot certify
        note = "" if completed else "grade cutoff %d exhausted" % cfg.grade_cutoff
        cert = SolveCertificate(completed, top, d, {g: n for g, n in dims.items() if n}, note)
        return self._assemble(top, d, completed), cert

    # -- assembling the explicit module -------------------------------------------

    def _assemble(self, top, computed, completed):
        alg = self.alg
        grades, weights, offsets = [], [], {}
        pos = 0
        for d in range(0, top + 1):
            offsets[d] = pos
            cols = self.quotient_cols.get(d, [])
            for col in cols:
                mono, w = self.symbols[d][col]
                mu = list(self.m0.weights[w])
                for x, _, b in mono:
                    wx = alg.weight(x)
                    mu = [a + b * c for a, c in zip(mu, wx)]
                grades.append(d)
                weights.append(tuple(mu))
                pos += 1
        total = pos

        col_pos = {}
        for d in range(0, top + 1):
            col_pos[d] = {col: offsets[d] + i for i, col in enumerate(self.quotient_cols.get(d, []))}

        def project(d, vec):
            red = self.kernels[d].reduce(vec)
            return {col_pos[d][j]: c for j, c in red.items()}

        ops = {}
        for x in alg.basis_indices():
            for s in range(0, top + 1):
                col = {}
                for d in range(0, top + 1):
                    target = d + s
                    if s == 0 and d == 0:
                        # grade-0 block is the grade-0 module itself
                        for j, c0 in enumerate(self.quotient_cols[0]):
                            img = self.m0.act(x, {c0: QQ(1)})
                            if img:
                                col[offsets[0] + j] = {col_pos[0][i]: v for i, v in img.items()}
                        continue
                    if target > top:
                        if target <= computed:
                            # computed-empty grade: image must reduce to zero
                            for j, c0 in enumerate(self.quotient_cols[d]):
                                img = self.shift_apply(x, s, d, {c0: QQ(1)})
                                if img and self.kernels[target].reduce(img):
                                    raise AssertionError("action escapes the computed module")
                        elif not completed:
                            raise AssertionError("cannot bound the action without a certificate")
                        continue
                    for j, c0 in enumerate(self.quotient_cols[d]):
                        img = self.shift_apply(x, s, d, {c0: QQ(1)})
                        if not img:
                            continue
                        out = project(target, img)
                        if out:
                            col[offsets[d] + j] = out
                if col:
                    ops[(x, s)] = col
        gen = {col_pos[0][w]: c for w, c in self.v0.items()}
        mod = current.CurrentModule(alg, grades, weights, ops, generator=gen)
        assert mod.dim == total
        return mod


def module_from_presentation(alg, pres, config=None):
    """Solve a presentation into an explicit graded module plus certificate."""
    solver = PresentationSolver(alg, pres, config)
    return solver.run()
