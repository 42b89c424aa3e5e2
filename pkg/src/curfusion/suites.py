"""Named verification suites over the module identities.

Every suite builds its modules exactly, compares graded characters (exact
equality, no tolerances) and returns a SuiteReport whose cases name the
parameters they cover.  Reports are deterministic given (algebra, parameters,
seed).
"""

import random
import time
from dataclasses import dataclass, field

from . import current, fusion, gmodule, presolve, uea
from .chevalley import build_algebra
from .current import graded_character, submodule_character
from .linalg import vec_iadd, vec_sub
from .presentations import (
    check_presentation,
    cv_relations,
    demazure_presentation,
    membership_check,
    ses_tuples,
    singleton_tuple,
    unit_tuple,
    vik_presentation,
    weyl_presentation,
)
from .rational import QQ
from .uea import apply_element, garland_congruence_check


@dataclass
class CaseResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    algebra: str
    params: dict
    cases: list = field(default_factory=list)
    seed: int = None
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.cases)

    def add(self, name, passed, detail=""):
        self.cases.append(CaseResult(name, bool(passed), detail))

    def to_dict(self):
        return {
            "suite": self.suite,
            "algebra": self.algebra,
            "params": dict(sorted(self.params.items())),
            "seed": self.seed,
            "passed": self.passed,
            "wall_time": round(self.wall_time, 3),
            "cases": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.cases
            ],
        }

    def to_markdown(self):
        lines = [
            "### %s [%s] %s" % (self.suite, self.algebra, "PASS" if self.passed else "FAIL"),
            "",
        ]
        if self.params:
            lines.append(
                "parameters: "
                + ", ".join("%s=%s" % (k, v) for k, v in sorted(self.params.items()))
                + (", seed=%s" % self.seed if self.seed is not None else "")
            )
        lines.append("%d cases, %.2fs" % (len(self.cases), self.wall_time))
        lines.append("")
        for c in self.cases:
            mark = "x" if c.passed else " "
            detail = " -- %s" % c.detail if c.detail and not c.passed else ""
            lines.append("- [%s] %s%s" % (mark, c.name, detail))
        lines.append("")
        return "\n".join(lines)


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.time()
        report = fn(*args, **kwargs)
        report.wall_time = time.time() - t0
        return report

    return wrapper


def _char_detail(lhs, rhs):
    return "lhs=%r rhs=%r" % (lhs, rhs)


def _build(alg, spec):
    return fusion.build_model(alg, spec)


# -- structural suite ------------------------------------------------------------


@_timed
def suite_core(algebra):
    """Structure constants, the level-one model, presentation generation."""
    report = SuiteReport("core", algebra, {})
    alg = build_algebra(algebra)
    rs = alg.rs
    report.add("jacobi-scan", alg.jacobi_scan(), "dim %d" % alg.dim)
    theta = rs.highest_root
    vals = {rs.form(theta, a) for a in rs.positive_roots if a != theta}
    report.add("theta-pairings", vals <= {QQ(0), QQ(1)}, "values %s" % sorted(map(str, vals)))
    # Cartan matrix recoverable from the bracket table
    ok = True
    for i in range(rs.rank):
        for j in range(rs.rank):
            simple = tuple(1 if t == j else 0 for t in range(rs.rank))
            combo = alg.bracket(alg.h_index(i), alg.e_index(simple))
            if combo.get(alg.e_index(simple), 0) != rs.cartan[i][j]:
                ok = False
    report.add("cartan-recovery", ok)
    adj = gmodule.adjoint_module(alg)
    report.add(
        "adjoint-scans",
        gmodule.check_weight_compat(adj) and gmodule.check_bracket_compat(adj),
        "dim %d" % adj.dim,
    )
    d1 = fusion.demazure_one_theta(alg)
    report.add(
        "level-one-dimension",
        d1.dim == adj.dim + 1,
        "dim %d expected %d" % (d1.dim, adj.dim + 1),
    )
    rep = check_presentation(d1, demazure_presentation(alg, rs.theta_fund))
    report.add("level-one-presentation", rep.ok, ", ".join(rep.failures()))
    # presentation generation invariants at lambda = k*theta
    for k in (1, 2):
        lam = tuple(k * c for c in rs.theta_fund)
        dem = demazure_presentation(alg, lam)
        weyl = weyl_presentation(alg, lam)
        extra = [r.label for r in dem.relations[len(weyl.relations):]]
        want = sorted(
            "F[%s]@t^%d" % (alg.root_name(a), k)
            for a in rs.positive_roots
            if rs.d_alpha(a) > 1 and rs.form(theta, a) == 1
        )
        report.add(
            "demazure-extra-relations-k%d" % k,
            sorted(extra) == want,
            "got %s want %s" % (sorted(extra), want),
        )
        ones = cv_relations(alg, unit_tuple(alg, lam))
        report.add(
            "cv-unit-tuple-is-weyl-k%d" % k,
            len(ones.relations) == len(weyl.relations),
        )
        single = cv_relations(alg, singleton_tuple(alg, lam))
        labels = {r.label for r in single.relations}
        want_single = {
            "x-[%s](1,1)" % alg.root_name(a)
            for a in rs.positive_roots
            if rs.pairing(lam, a) > 1
        }
        report.add(
            "cv-singleton-has-t-kill-k%d" % k,
            want_single <= labels,
        )
    return report


# -- exact-sequence suite -----------------------------------------------------------


@_timed
def suite_ses(algebra, k_max):
    """Character identity and kernel character of the quotient family maps.

    Case k relates the quotients at k and k+1, so models up to k_max+1 are
    built."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    report = SuiteReport("ses", algebra, {"k_max": k_max})
    alg = build_algebra(algebra)
    f_theta = alg.f_index(alg.rs.highest_root)
    for k in range(1, k_max + 1):
        for i in range(0, k + 1):
            mid = _build(alg, "Vik:i=%d,k=%d" % (i, k + 1))
            low = _build(alg, "Vik:i=%d,k=%d" % (i, k))
            up = _build(alg, "Vik:i=%d,k=%d" % (i + 1, k + 1))
            shift = 2 * k + 1 - i
            lhs = graded_character(mid)
            rhs = graded_character(low).shift(shift) + graded_character(up)
            report.add("character k=%d,i=%d" % (k, i), lhs == rhs, _char_detail(lhs, rhs))
            seed = mid.apply(f_theta, shift, mid.generator)
            ker = submodule_character(mid, seed)
            want = graded_character(low).shift(shift)
            report.add("kernel k=%d,i=%d" % (k, i), ker == want, _char_detail(ker, want))
    return report


# -- fusion isomorphism suite ---------------------------------------------------------


@_timed
def suite_fusion_iso(algebra, mn_max):
    """Fusion of level-one and evaluation factors versus the quotient route."""
    report = SuiteReport("fusion-iso", algebra, {"mn_max": mn_max})
    alg = build_algebra(algebra)
    d1 = fusion.demazure_one_theta(alg)
    ev_dim = d1.dim - 1
    for total in range(1, mn_max + 1):
        for m in range(0, total + 1):
            n = total - m
            fus = _build(alg, "Fusion:m=%d,n=%d" % (m, n))
            expect_dim = (d1.dim ** m) * (ev_dim ** n)
            report.add(
                "dimension m=%d,n=%d" % (m, n),
                fus.dim == expect_dim,
                "dim %d expected %d" % (fus.dim, expect_dim),
            )
            quot = _build(alg, "Vik:i=%d,k=%d" % (n, m + n))
            lhs, rhs = graded_character(fus), graded_character(quot)
            report.add("character m=%d,n=%d" % (m, n), lhs == rhs, _char_detail(lhs, rhs))
            rep = check_presentation(fus, vik_presentation(alg, n, m + n))
            report.add(
                "relations m=%d,n=%d" % (m, n), rep.ok, ", ".join(rep.failures())
            )
    return report


# -- evaluation-power suite (the k-fold evaluation quotient) ---------------------------


@_timed
def suite_evpower(algebra, k_max):
    """ch(ev power k) == ch(level-one model / (F_theta@t^k))."""
    report = SuiteReport("evpower", algebra, {"k_max": k_max})
    alg = build_algebra(algebra)
    for k in range(1, k_max + 1):
        ev = _build(alg, "Ev:k=%d" % k)
        quot = _build(alg, "Vik:i=%d,k=%d" % (k, k))
        lhs, rhs = graded_character(ev), graded_character(quot)
        report.add("k=%d" % k, lhs == rhs, _char_detail(lhs, rhs))
    return report


# -- lemma suite ------------------------------------------------------------------


def _fusion_ambient(alg, m, n, params=None):
    factors = [fusion.demazure_one_theta(alg)] * m + [
        current.ev0(gmodule.adjoint_module(alg))
    ] * n
    if params is None:
        params = list(range(m + n))
    shifted = [current.eval_shift(f, z) for f, z in zip(factors, params)]
    big = current.tensor_current(shifted)
    return factors, big, fusion.filtration(big, big.generator)


@_timed
def suite_lemmas(algebra, k_max, seed=0):
    """Garland congruences, the annihilation and membership relations in the
    level-one models, and the two filtration lemmas."""
    report = SuiteReport("lemmas", algebra, {"k_max": k_max}, seed=seed)
    alg = build_algebra(algebra)
    rs = alg.rs
    theta = rs.highest_root
    f_theta = alg.f_index(theta)
    rng = random.Random(seed)

    models = [("ev0", current.ev0(gmodule.adjoint_module(alg)))]
    for k in range(1, k_max + 1):
        models.append(("D1:k=%d" % k, _build(alg, "D1:k=%d" % k)))
    for name, mod in models:
        ok = True
        bad = ""
        for root in rs.positive_roots:
            for s in range(0, 7):
                for r in range(0, 7 - s):
                    if not garland_congruence_check(mod, root, r, s):
                        ok = False
                        bad = "%s (r=%d,s=%d) on %s" % (alg.root_name(root), r, s, name)
        report.add("garland %s" % name, ok, bad)

    laced = fusion.simply_laced(alg)
    for k in range(1, k_max):
        d1 = _build(alg, "D1:k=%d" % (k + 1))
        gen = d1.generator
        for i in range(0, k + 1):
            seed_vec = d1.apply(f_theta, 2 * k + 1 - i, gen)
            if laced:
                img = dict(seed_vec)
                for _ in range(2 * k + 1):
                    img = d1.apply(f_theta, 0, img)
                report.add("lowering-power-annihilation k=%d,i=%d" % (k, i), not img)
            target = d1.apply(f_theta, 2 * k + 2 - i, gen)
            for root in rs.positive_roots:
                if root == theta or rs.form(theta, root) != 1:
                    continue
                fa = alg.f_index(root)
                img = dict(seed_vec)
                for _ in range(k * rs.d_alpha(root) + 1):
                    img = d1.apply(fa, 0, img)
                report.add(
                    "short-power-annihilation k=%d,i=%d,%s" % (k, i, alg.root_name(root)),
                    not img,
                )
                member = membership_check(d1, d1.apply(fa, k, seed_vec), target)
                report.add(
                    "membership-short k=%d,i=%d,%s" % (k, i, alg.root_name(root)), member
                )
            member = membership_check(d1, d1.apply(f_theta, 2 * k - i, seed_vec), target)
            report.add("membership-theta k=%d,i=%d" % (k, i), member)
            if laced:
                # membership in the maximal quotient for m >= k
                for m in (k, k + 1):
                    v = d1.apply(f_theta, m + 1, d1.apply(f_theta, m, gen))
                    member = membership_check(d1, v, d1.apply(f_theta, m + 2, gen))
                    report.add("membership-adjacent k=%d,m=%d" % (k, m), member)

    if k_max >= 1:
        factors, big, filt = _fusion_ambient(alg, 1, 1)
        # replacement identity: x@t^s equals x@prod(t - a_i) on layer quotients
        ok = True
        rows = [row for layer in filt.layer_rows for row in layer]
        sample = rng.sample(rows, min(6, len(rows)))
        for row in sample:
            r = next(
                lvl for lvl, layer in enumerate(filt.layer_rows) if any(row is x for x in layer)
            )
            for x in (f_theta, alg.e_index(theta), alg.h_index(0)):
                for s in (1, 2):
                    coeffs = [rng.randint(-4, 4) for _ in range(s)]
                    # expand prod (t - a_i) = sum c_j t^j exactly
                    poly = [QQ(1)]
                    for a in coeffs:
                        poly = [QQ(0)] + poly
                        for idx in range(len(poly) - 1):
                            poly[idx] -= QQ(a) * poly[idx + 1]
                    direct = big.apply(x, s, row)
                    replaced = {}
                    for j, cj in enumerate(poly):
                        if cj:
                            from .linalg import vec_iadd

                            vec_iadd(replaced, big.apply(x, j, row), cj)
                    from .linalg import vec_sub

                    if not filt.contains(vec_sub(direct, replaced), r + s - 1):
                        ok = False
        report.add("filtration-replacement", ok)

        # product of per-factor kill powers annihilates the fused generator
        ok = True
        for x in alg.basis_indices():
            s_total = sum(fusion.factor_min_killing_power(f, x) for f in factors)
            img = big.apply(x, s_total, big.generator)
            if not filt.contains(img, s_total - 1):
                ok = False
        report.add("fused-generator-kill", ok)
    return report


# -- CV family suite ------------------------------------------------------------------


@_timed
def suite_cv(algebra, k_max, seed=0):
    """Partition-tuple quotients: exact sequence characters, certification of
    the Garland relations on the models, and the two degenerate identities."""
    report = SuiteReport("cv", algebra, {"k_max": k_max}, seed=seed)
    alg = build_algebra(algebra)
    if not fusion.simply_laced(alg):
        raise ValueError("CV suite requires a simply-laced algebra")
    rng = random.Random(seed)
    for k in range(1, k_max + 1):
        for i in range(0, k + 1):
            lower_t, middle_t, upper_t = ses_tuples(alg, i, k)
            lower = _build(alg, "Vik:i=%d,k=%d" % (i, k))
            middle = _build(alg, "Vik:i=%d,k=%d" % (i, k + 1))
            upper = _build(alg, "Vik:i=%d,k=%d" % (i + 1, k + 1))
            shift = 2 * k + 1 - i
            lhs = graded_character(middle)
            rhs = graded_character(lower).shift(shift) + graded_character(upper)
            report.add("character k=%d,i=%d" % (k, i), lhs == rhs, _char_detail(lhs, rhs))
            for tag, tup, mod in (
                ("lower", lower_t, lower),
                ("middle", middle_t, middle),
                ("upper", upper_t, upper),
            ):
                rep = check_presentation(mod, cv_relations(alg, tup))
                report.add(
                    "relations k=%d,i=%d,%s" % (k, i, tag), rep.ok, ", ".join(rep.failures())
                )
            # non-minimal Garland elements must also annihilate the generator
            tup = middle_t
            root = alg.rs.highest_root
            part = tup.parts[root]
            ok = True
            for _ in range(3):
                r = rng.randint(1, max(1, part[0] - 1))
                kk = rng.randint(1, len(part))
                tail = sum(part[kk:])
                s = max(1, 1 + r * kk + tail - r) + rng.randint(1, 2)
                el = uea.garland_element(alg, root, r, s)
                if apply_element(el, middle, middle.generator):
                    ok = False
            report.add("nonminimal-garland k=%d,i=%d" % (k, i), ok)
    theta_w = alg.rs.theta_fund
    mod, cert = presolve.module_from_presentation(
        alg, cv_relations(alg, singleton_tuple(alg, theta_w))
    )
    ev_char = graded_character(current.ev0(gmodule.adjoint_module(alg)))
    report.add(
        "singleton-tuple-is-evaluation",
        cert.completed and graded_character(mod) == ev_char,
        _char_detail(graded_character(mod), ev_char),
    )
    mod, cert = presolve.module_from_presentation(alg, cv_relations(alg, unit_tuple(alg, theta_w)))
    w_char = graded_character(_build(alg, "Weyl:k=1"))
    report.add(
        "unit-tuple-is-maximal",
        cert.completed and graded_character(mod) == w_char,
        _char_detail(graded_character(mod), w_char),
    )
    return report


# -- truncated suite ------------------------------------------------------------------


@_timed
def suite_truncated(algebra, k_max):
    """Truncated quotients against the fusion case split."""
    report = SuiteReport("truncated", algebra, {"k_max": k_max})
    alg = build_algebra(algebra)
    if not fusion.simply_laced(alg):
        raise ValueError("truncated suite requires a simply-laced algebra")
    for k in range(1, k_max + 1):
        for n in range(k, 2 * k + 2):
            tr = _build(alg, "Trunc:k=%d,n=%d" % (k, n))
            if n >= 2 * k:
                ref = _build(alg, "Weyl:k=%d" % k)
                tag = "weyl"
            else:
                ref = _build(alg, "Fusion:m=%d,n=%d" % (n - k, 2 * k - n))
                tag = "fusion(m=%d,n=%d)" % (n - k, 2 * k - n)
            lhs, rhs = graded_character(tr), graded_character(ref)
            report.add(
                "k=%d,n=%d vs %s" % (k, n, tag), lhs == rhs, _char_detail(lhs, rhs)
            )
    return report


# -- parameter independence suite -------------------------------------------------------


def _fusion_factors(alg, spec):
    kind, params = fusion.parse_model_spec(spec) if isinstance(spec, str) else spec
    if kind == "D1":
        m, n = params["k"], 0
    elif kind == "Ev":
        m, n = 0, params["k"]
    elif kind == "Fusion":
        m, n = params["m"], params["n"]
    else:
        raise ValueError("parameter independence applies to fusion specs, not %r" % kind)
    if m + n < 1:
        raise ValueError("need at least one fusion factor")
    return [fusion.demazure_one_theta(alg)] * m + [
        current.ev0(gmodule.adjoint_module(alg))
    ] * n


@_timed
def suite_param_independence(algebra, spec, trials=3, seed=0):
    """Fusion characters agree across random pairwise-distinct parameters."""
    if trials < 2:
        raise ValueError("need at least two trials")
    report = SuiteReport(
        "param-independence", algebra, {"spec": str(spec), "trials": trials}, seed=seed
    )
    alg = build_algebra(algebra)
    factors = _fusion_factors(alg, spec)
    rng = random.Random(seed)
    reference = graded_character(fusion.fusion_product(factors))
    for t in range(trials):
        params = rng.sample(range(-10, 11), len(factors))
        ch = graded_character(fusion.fusion_product(factors, params))
        report.add(
            "trial %d params=%s" % (t, params),
            ch == reference,
            _char_detail(ch, reference),
        )
    return report


# -- oracle suite -----------------------------------------------------------------------


@_timed
def suite_oracle(algebra, k_max=2):
    """Presentation-solver characters match the fusion route, with certificates."""
    report = SuiteReport("oracle", algebra, {"k_max": k_max})
    alg = build_algebra(algebra)
    theta_w = alg.rs.theta_fund
    cases = [("weyl k=1", weyl_presentation(alg, theta_w), "Weyl:k=1")]
    if k_max >= 2:
        lam2 = tuple(2 * c for c in theta_w)
        cases.append(("weyl k=2", weyl_presentation(alg, lam2), "Weyl:k=2"))
    cases.append(
        ("cv singleton", cv_relations(alg, singleton_tuple(alg, theta_w)), "Ev:k=1")
    )
    for k in range(1, k_max + 1):
        for i in range(0, k + 1):
            cases.append(
                ("vik i=%d,k=%d" % (i, k), vik_presentation(alg, i, k), "Vik:i=%d,k=%d" % (i, k))
            )
    for name, pres, refspec in cases:
        mod, cert = presolve.module_from_presentation(alg, pres)
        ref = graded_character(_build(alg, refspec))
        got = graded_character(mod)
        rep = check_presentation(mod, pres)
        report.add(
            name,
            cert.completed and got == ref and rep.ok,
            "certified=%s %s" % (cert.completed, _char_detail(got, ref)),
        )
    return report


# -- the full battery ---------------------------------------------------------------------


DESK_SCALE = {
    "A1": dict(ses=3, fusion=4, evpower=4, lemmas=3, cv=3, truncated=3, params="Fusion:m=2,n=1", oracle=2),
    "A2": dict(ses=2, fusion=3, evpower=3, lemmas=2, cv=2, truncated=2, params="Fusion:m=1,n=1", oracle=1),
    "A3": dict(),
    "B2": dict(lemmas=1),
    "G2": dict(lemmas=1),
}


def run_report(algebras=None, seed=0):
    """The full desk-scale battery; returns the list of SuiteReports."""
    reports = []
    for algebra in algebras or sorted(DESK_SCALE):
        scale = DESK_SCALE.get(algebra, {})
        reports.append(suite_core(algebra))
        if "ses" in scale:
            reports.append(suite_ses(algebra, scale["ses"]))
        if "fusion" in scale:
            reports.append(suite_fusion_iso(algebra, scale["fusion"]))
        if "evpower" in scale:
            reports.append(suite_evpower(algebra, scale["evpower"]))
        if "lemmas" in scale:
            reports.append(suite_lemmas(algebra, scale["lemmas"], seed=seed))
        if "cv" in scale:
            reports.append(suite_cv(algebra, scale["cv"], seed=seed))
        if "truncated" in scale:
            reports.append(suite_truncated(algebra, scale["truncated"]))
        if "params" in scale:
            reports.append(suite_param_independence(algebra, scale["params"], seed=seed))
        if "oracle" in scale:
            reports.append(suite_oracle(algebra, scale["oracle"]))
    return reports
