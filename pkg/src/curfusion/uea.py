"""Formal elements of U(g[t]) and their action on modules.

A monomial is a tuple of factors (x, s, b) read left to right, where x is an
algebra basis index, s the t-power and b a divided-power exponent:
(x@t^s)^(b) means (x@t^s)^b / b!.  UElements are rational combinations of
monomials; application to a module vector works factor by factor from the
right, so all coefficients stay exact.

Straightening rewrites products with [a@t^r, b@t^s] = [a,b]@t^(r+s) to a fixed
total order on (t-power, generator) pairs.  The default order sorts by
ascending t-power with Cartan and raising generators to the right, which puts
annihilating operators next to highest-weight vectors; an alternative
descending-t order (trailing t^0 block) backs the presentation solver.
"""

from math import factorial

from . import linalg
from .rational import QQ


def _apply_order(alg):
    def key(factor):
        x, s = factor
        return (s, alg.class_of(x), x)

    return key


def _split_order(alg):
    def key(factor):
        x, s = factor
        return (-s, alg.class_of(x), x)

    return key


class UElement:
    """Rational combination of ordered monomials in g[t] generators."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in dict(terms).items():
                c = QQ(c)
                if c != 0:
                    self.terms[tuple(mono)] = c

    @classmethod
    def one(cls):
        return cls({(): QQ(1)})

    @classmethod
    def gen(cls, x, s, b=1):
        """The divided power (x@t^s)^(b)."""
        if b == 0:
            return cls.one()
        return cls({((x, s, b),): QQ(1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, QQ(0)) + c
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return UElement(out)

    def __neg__(self):
        return UElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UElement):
            return UElement({m: c * QQ(other) for m, c in self.terms.items()})
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = ma + mb
                v = out.get(m, QQ(0)) + ca * cb
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
        return UElement(out)

    def __rmul__(self, other):
        return UElement({m: QQ(other) * c for m, c in self.terms.items()})

    def grade(self):
        """Common t-grade of all terms; raises on mixed grades."""
        grades = {sum(s * b for (_, s, b) in m) for m in self.terms}
        if not grades:
            return 0
        if len(grades) > 1:
            raise ValueError("element is not grade homogeneous")
        return grades.pop()

    def weight(self, alg):
        """Common weight of all terms; raises on mixed weights."""
        wts = set()
        for m in self.terms:
            w = tuple(0 for _ in range(alg.rs.rank))
            for x, _, b in m:
                wx = alg.weight(x)
                w = tuple(a + b * c for a, c in zip(w, wx))
            wts.add(w)
        if not wts:
            return tuple(0 for _ in range(alg.rs.rank))
        if len(wts) > 1:
            raise ValueError("element is not weight homogeneous")
        return wts.pop()

    def __eq__(self, other):
        return isinstance(other, UElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "UElement(0)"
        return "UElement(%d terms)" % len(self.terms)


def apply_element(u, module, vec):
    """u acting on a vector; t-powers beyond the module span act as zero."""
    out = {}
    for mono, coeff in u.terms.items():
        w = dict(vec)
        denom = 1
        for x, s, b in reversed(mono):
            denom *= factorial(b)
            for _ in range(b):
                w = module.apply(x, s, w)
                if not w:
                    break
            if not w:
                break
        if w:
            linalg.vec_iadd(out, w, coeff / QQ(denom))
    return out


def garland_element(alg, root, r, s):
    """Sum over (b_p) with sum b_p = r, sum p*b_p = s of prod (F_root@t^p)^(b_p)."""
    f = alg.f_index(root)
    solutions = []

    def rec(p, rem_r, rem_s, acc):
        if p > s:
            if rem_r == 0 and rem_s == 0:
                solutions.append(tuple(acc))
            return
        top = rem_r if p == 0 else min(rem_r, rem_s // p)
        for b in range(top + 1):
            rec(p + 1, rem_r - b, rem_s - p * b, acc + ([(p, b)] if b else []))

    rec(0, r, s, [])
    terms = {}
    for sol in solutions:
        mono = tuple((f, p, b) for p, b in sol if b > 0)
        terms[mono] = terms.get(mono, QQ(0)) + 1
    return UElement(terms)


class Straightener:
    """PBW rewriting engine for one algebra and one factor order."""

    def __init__(self, alg, key):
        self.alg = alg
        self.key = key
        self._memo = {}

    def straighten(self, factors):
        """Normal form of a product of single factors (x, s).

        Returns {ordered factor tuple: integer coefficient}.
        """
        factors = tuple(factors)
        if len(factors) < 2:
            return {factors: 1}
        hit = self._memo.get(factors)
        if hit is not None:
            return hit
        key = self.key
        bad = None
        for i in range(len(factors) - 1):
            if key(factors[i]) > key(factors[i + 1]):
                bad = i
                break
        if bad is None:
            out = {factors: 1}
            self._memo[factors] = out
            return out
        i = bad
        out = {}
        swapped = factors[:i] + (factors[i + 1], factors[i]) + factors[i + 2:]
        for m, c in self.straighten(swapped).items():
            out[m] = out.get(m, 0) + c
        (xa, sa), (xb, sb) = factors[i], factors[i + 1]
        for k, c in self.alg.bracket(xa, xb).items():
            sub = factors[:i] + ((k, sa + sb),) + factors[i + 2:]
            for m, c2 in self.straighten(sub).items():
                v = out.get(m, 0) + c * c2
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
        out = {m: c for m, c in out.items() if c != 0}
        self._memo[factors] = out
        return out


_straighteners = {}


def get_straightener(alg, order="apply"):
    key = (id(alg), order)
    if key not in _straighteners:
        fn = _apply_order(alg) if order == "apply" else _split_order(alg)
        _straighteners[key] = Straightener(alg, fn)
    return _straighteners[key]


def _expand(mono):
    """Divided-power monomial -> (single factor tuple, 1/denominator)."""
    flat = []
    denom = 1
    for x, s, b in mono:
        denom *= factorial(b)
        flat.extend([(x, s)] * b)
    return tuple(flat), denom


def _regroup(factors):
    """Single factors -> divided-power monomial and the b! overcount."""
    mono = []
    mult = 1
    for x, s in factors:
        if mono and mono[-1][0] == x and mono[-1][1] == s:
            b = mono[-1][2] + 1
            mono[-1] = (x, s, b)
            mult *= b
        else:
            mono.append((x, s, 1))
    return tuple(mono), mult


def normal_form(u, alg, order="apply"):
    """Rewrite to the fixed PBW order; idempotent, grade and weight preserving."""
    st = get_straightener(alg, order)
    out = {}
    for mono, coeff in u.terms.items():
        flat, denom = _expand(mono)
        for m, c in st.straighten(flat).items():
            gm, mult = _regroup(m)
            v = out.get(gm, QQ(0)) + coeff * QQ(c * mult, denom)
            if v == 0:
                out.pop(gm, None)
            else:
                out[gm] = v
    return UElement(out)


def highest_weight_violations(module, gen=None, smax=None):
    """Defects of the relations n+[t] w = 0 and (h@t^s) w = 0 for s >= 1."""
    alg = module.alg
    v = gen if gen is not None else module.generator
    if v is None:
        raise ValueError("module carries no generator")
    n = module.span if smax is None else smax
    bad = []
    for root in alg.rs.positive_roots:
        e = alg.e_index(root)
        for s in range(n + 1):
            if module.apply(e, s, v):
                bad.append(("E[%s]@t^%d" % (alg.root_name(root), s)))
    for i in range(alg.rs.rank):
        h = alg.h_index(i)
        for s in range(1, n + 1):
            if module.apply(h, s, v):
                bad.append(("H[alpha%d]@t^%d" % (i + 1, s)))
    return bad


def garland_congruence_check(module, root, r, s, gen=None):
    """(E_a@t)^(s)(F_a@1)^(s+r) w == (-1)^s x_a^-(r,s) w on a highest-weight w."""
    alg = module.alg
    v = gen if gen is not None else module.generator
    bad = highest_weight_violations(module, v)
    if bad:
        raise ValueError("generator fails highest-weight relations: %s" % ", ".join(bad))
    lhs_el = UElement.gen(alg.e_index(root), 1, s) * UElement.gen(alg.f_index(root), 0, s + r)
    lhs = apply_element(lhs_el, module, v)
    rhs = apply_element(garland_element(alg, root, r, s), module, v)
    if s % 2 == 1:
        rhs = linalg.vec_scale(rhs, QQ(-1))
    return lhs == rhs


# -- textual element syntax -----------------------------------------------------


def _root_lookup(alg):
    table = {}
    for root in alg.rs.positive_roots:
        table[alg.root_name(root)] = root
    table["theta"] = alg.rs.highest_root
    return table


def parse_element(alg, text):
    """Parse e.g. 'F[theta]@t^2 ^(3)' or '2*F[alpha1]@t E[theta]' into a UElement.

    Terms are separated by '+', factors by whitespace; '@t' and '@t^k' give the
    t-power, '^(b)' a divided-power exponent, and a leading 'c*' a rational
    coefficient.
    """
    roots = _root_lookup(alg)
    result = UElement()
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            raise ValueError("empty term in %r" % text)
        coeff = QQ(1)
        tokens = raw.split()
        first = tokens[0]
        if "*" in first and first[0] not in "EFH":
            cstr, rest = first.split("*", 1)
            from .rational import rat_parse

            coeff = rat_parse(cstr)
            tokens[0] = rest
        element = UElement.one() * coeff
        factors = []
        for tok in tokens:
            if not tok:
                continue
            if tok.startswith("^("):
                # standalone divided power applies to the preceding factor
                if not factors or not tok.endswith(")"):
                    raise ValueError("dangling divided power in %r" % raw)
                factors[-1][2] *= int(tok[2:-1])
                continue
            body = tok
            b = 1
            if "^(" in body:
                body, bpart = body.split("^(", 1)
                if not bpart.endswith(")"):
                    raise ValueError("malformed divided power in %r" % tok)
                b = int(bpart[:-1])
            s = 0
            if "@t" in body:
                body, spart = body.split("@t", 1)
                s = int(spart[1:]) if spart.startswith("^") else 1
            if len(body) < 4 or body[1] != "[" or not body.endswith("]"):
                raise ValueError("malformed generator in %r" % tok)
            cls, name = body[0], body[2:-1]
            if cls == "H":
                if not name.startswith("alpha"):
                    raise ValueError("H expects a simple root label, got %r" % name)
                i = int(name[5:]) - 1
                if not 0 <= i < alg.rs.rank:
                    raise ValueError("simple root index out of range in %r" % tok)
                idx = alg.h_index(i)
            elif cls in ("E", "F"):
                if name not in roots:
                    raise ValueError("unknown root label %r" % name)
                idx = alg.e_index(roots[name]) if cls == "E" else alg.f_index(roots[name])
            else:
                raise ValueError("generator class must be E, F or H, got %r" % cls)
            factors.append([idx, s, b])
        for idx, s, b in factors:
            element = element * UElement.gen(idx, s, b)
        result = result + element
    return result
