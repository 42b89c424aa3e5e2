"""Chevalley bases with integer structure constants.

Basis layout is [F_beta for beta in R+] + [H_i simple] + [E_beta for beta in R+]
with [E_beta, F_beta] = beta^vee.  Signs follow the extraspecial-pair
convention: for each composite positive root the minimal special pair gets
N = +(p+1); the remaining special-pair signs are the unique assignment that
survives a full Jacobi scan, and the full table is derived from the special
pairs through antisymmetry, N_{-a,-b} = -N_{a,b} and the invariant-form
cyclic identity N_{a,b}/(c|c) = N_{b,c}/(a|a) for a+b+c = 0.
"""

import itertools

from .rational import QQ
from .roots import build_root_system

CLASS_F, CLASS_H, CLASS_E = 0, 1, 2


class ChevalleyAlgebra:
    """Simple Lie algebra on a Chevalley basis, fully tabulated brackets."""

    def __init__(self, rs, special_constants):
        self.rs = rs
        self.type_label = rs.type_label
        npos = len(rs.positive_roots)
        self.dim = 2 * npos + rs.rank
        self._npos = npos
        self._special = special_constants  # (alpha, beta) sorted pair -> int
        self._root_index = {r: i for i, r in enumerate(rs.positive_roots)}

        self.labels = (
            ["F[%s]" % self.root_name(r) for r in rs.positive_roots]
            + ["H[alpha%d]" % (i + 1) for i in range(rs.rank)]
            + ["E[%s]" % self.root_name(r) for r in rs.positive_roots]
        )
        self.weights = (
            [tuple(-c for c in rs.root_to_fund(r)) for r in rs.positive_roots]
            + [tuple(0 for _ in range(rs.rank))] * rs.rank
            + [rs.root_to_fund(r) for r in rs.positive_roots]
        )
        self.bracket_table = self._build_table()
        self.theta = rs.highest_root

    # -- indexing -------------------------------------------------------------

    def root_name(self, root):
        if root == self.rs.highest_root:
            return "theta"
        parts = []
        for i, c in enumerate(root):
            if c == 0:
                continue
            parts.append(("%d*" % c if c != 1 else "") + "alpha%d" % (i + 1))
        return "+".join(parts)

    def f_index(self, root):
        return self._root_index[root]

    def h_index(self, i):
        return self._npos + i

    def e_index(self, root):
        return self._npos + self.rs.rank + self._root_index[root]

    def class_of(self, idx):
        if idx < self._npos:
            return CLASS_F
        if idx < self._npos + self.rs.rank:
            return CLASS_H
        return CLASS_E

    def root_of(self, idx):
        """Signed root of a root-vector basis element, None for Cartan."""
        c = self.class_of(idx)
        if c == CLASS_F:
            return tuple(-x for x in self.rs.positive_roots[idx])
        if c == CLASS_E:
            return self.rs.positive_roots[idx - self._npos - self.rs.rank]
        return None

    def basis_indices(self):
        return range(self.dim)

    def weight(self, idx):
        return self.weights[idx]

    # -- structure constants ---------------------------------------------------

    def _nconst(self, a, b):
        """N_{a,b} with [x_a, x_b] = N_{a,b} x_{a+b}, for roots a,b, a+b a root."""
        rs = self.rs
        apos, bpos = rs.is_positive_root(a), rs.is_positive_root(b)
        if apos and bpos:
            if a < b:
                return self._special[(a, b)]
            return -self._special[(b, a)]
        if not apos and not bpos:
            na, nb = tuple(-x for x in a), tuple(-x for x in b)
            return -self._nconst(na, nb)
        if not apos:
            return -self._nconst(b, a)
        # a positive, b negative; rotate a+b+c = 0 to a pair of equal signs
        c = tuple(-(x + y) for x, y in zip(a, b))
        if rs.is_positive_root(c):
            # (c, a) both positive: N_{a,b} = (c|c)/(b|b) * N_{c,a}
            val = rs.form(c, c) / rs.form(b, b) * self._nconst(c, a)
        else:
            # (b, c) both negative: N_{a,b} = (c|c)/(a|a) * N_{b,c}
            val = rs.form(c, c) / rs.form(a, a) * self._nconst(b, c)
        assert val.denominator == 1
        return int(val)

    def _build_table(self):
        rs = self.rs
        table = {}

        def put(i, j, combo):
            combo = {k: v for k, v in combo.items() if v != 0}
            if combo:
                table[(i, j)] = combo
                table[(j, i)] = {k: -v for k, v in combo.items()}

        npos, rank = self._npos, rs.rank
        # [H_i, root vectors]
        for i in range(rank):
            hi = self.h_index(i)
            for r in rs.positive_roots:
                n = sum(rs.cartan[i][j] * r[j] for j in range(rank))
                put(hi, self.e_index(r), {self.e_index(r): n})
                put(hi, self.f_index(r), {self.f_index(r): -n})
        # [E_a, F_a] = a^vee
        for r in rs.positive_roots:
            cv = rs.coroot(r)
            put(self.e_index(r), self.f_index(r),
                {self.h_index(i): cv[i] for i in range(rank)})
        # root-root brackets through the structure constants
        signed = [(r, +1) for r in rs.positive_roots] + [(r, -1) for r in rs.positive_roots]

        def vec_index(root, sign):
            return self.e_index(root) if sign > 0 else self.f_index(root)

        for (ra, sa), (rb, sb) in itertools.combinations(signed, 2):
            a = tuple(sa * x for x in ra)
            b = tuple(sb * x for x in rb)
            s = tuple(x + y for x, y in zip(a, b))
            if all(x == 0 for x in s):
                continue  # already handled as [E_a, F_a]
            if not rs.is_root(s):
                continue
            n = self._nconst(a, b)
            if rs.is_positive_root(s):
                target = self.e_index(s)
            else:
                target = self.f_index(tuple(-x for x in s))
            put(vec_index(ra, sa), vec_index(rb, sb), {target: n})
        return table

    def bracket(self, i, j):
        """[x_i, x_j] as a sparse integer combination {index: coefficient}."""
        return self.bracket_table.get((i, j), {})

    def bracket_combo(self, ci, cj):
        """Bracket of two sparse combinations."""
        out = {}
        for i, a in ci.items():
            for j, b in cj.items():
                for k, v in self.bracket(i, j).items():
                    w = out.get(k, 0) + a * b * v
                    if w == 0:
                        out.pop(k, None)
                    else:
                        out[k] = w
        return out

    def jacobi_defect(self, i, j, k):
        d = self.bracket_combo({i: 1}, self.bracket(j, k))
        for t, v in self.bracket_combo({j: 1}, self.bracket(k, i)).items():
            w = d.get(t, 0) + v
            if w == 0:
                d.pop(t, None)
            else:
                d[t] = w
        for t, v in self.bracket_combo({k: 1}, self.bracket(i, j)).items():
            w = d.get(t, 0) + v
            if w == 0:
                d.pop(t, None)
            else:
                d[t] = w
        return d

    def jacobi_scan(self):
        """True iff the Jacobi identity holds on all basis triples."""
        for i, j, k in itertools.combinations(range(self.dim), 3):
            if self.jacobi_defect(i, j, k):
                return False
        return True

    # -- normalized invariant form ---------------------------------------------

    def invariant_pairing(self, i, j):
        """(x_i|x_j) for the form with (theta|theta) = 2 on weights."""
        rs = self.rs
        ci, cj = self.class_of(i), self.class_of(j)
        if ci == CLASS_H and cj == CLASS_H:
            a, b = i - self._npos, j - self._npos
            v = 4 * rs.form_matrix[a][b] / (rs.form_matrix[a][a] * rs.form_matrix[b][b])
            assert v.denominator == 1
            return int(v)
        if {ci, cj} == {CLASS_E, CLASS_F}:
            ra = self.root_of(i)
            rb = self.root_of(j)
            if tuple(-x for x in ra) == rb:
                return rs.d_alpha(ra if rs.is_positive_root(ra) else rb)
        return 0

    def __repr__(self):
        return "ChevalleyAlgebra(%s, dim=%d)" % (self.type_label, self.dim)


def _root_string_down(rs, alpha, beta):
    """Largest p >= 0 with beta - p*alpha a root."""
    p = 0
    cur = tuple(b - a for a, b in zip(alpha, beta))
    while rs.is_root(cur):
        p += 1
        cur = tuple(c - a for a, c in zip(alpha, cur))
    return p


def _special_pairs(rs):
    """All (alpha, beta) with alpha < beta positive and alpha+beta a positive root."""
    pairs = []
    pos = rs.positive_roots
    for a, b in itertools.combinations(pos, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if rs.is_positive_root(s):
            pairs.append((a, b) if a < b else (b, a))
    pairs.sort()
    return pairs


def chevalley_constants(rs_or_label):
    """Construct the Chevalley algebra for a root system (or its type label).

    The extraspecial pairs carry positive constants; any remaining special-pair
    sign is fixed by requiring the Jacobi identity, which has exactly one
    solution.  The full scan certifies the output.
    """
    rs = build_root_system(rs_or_label) if isinstance(rs_or_label, str) else rs_or_label
    pairs = _special_pairs(rs)
    extraspecial = {}
    for a, b in pairs:
        s = tuple(x + y for x, y in zip(a, b))
        if s not in extraspecial or a < extraspecial[s][0]:
            extraspecial[s] = (a, b)
    extra = set(extraspecial.values())
    free = [p for p in pairs if p not in extra]
    magnitude = {p: _root_string_down(rs, p[0], p[1]) + 1 for p in pairs}

    winner = None
    for signs in itertools.product((1, -1), repeat=len(free)):
        consts = {}
        for p in pairs:
            if p in extra:
                consts[p] = magnitude[p]
        for p, sgn in zip(free, signs):
            consts[p] = sgn * magnitude[p]
        alg = ChevalleyAlgebra(rs, consts)
        if alg.jacobi_scan():
            winner = alg
            break
    if winner is None:
        raise AssertionError("no consistent Chevalley sign assignment found for %s" % rs.type_label)
    return winner


_cache = {}


def build_algebra(type_label):
    """Cached Chevalley algebra per type label."""
    if type_label not in _cache:
        _cache[type_label] = chevalley_constants(type_label)
    return _cache[type_label]
