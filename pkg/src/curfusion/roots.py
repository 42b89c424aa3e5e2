"""Finite root systems of types A1, A2, A3, B2, G2.

Roots live in the simple-root integer basis; weights in the fundamental-weight
integer basis.  The symmetric form is normalized so long roots have square
length two, hence d_alpha = 2/(alpha|alpha) is 1 on long roots and the highest
root theta is long.
"""

from .rational import QQ

# Cartan matrix C[i][j] = <alpha_j, alpha_i^vee> and half square lengths
# eps_i = (alpha_i|alpha_i)/2 for each supported type.
_TYPES = {
    "A1": ([[2]], [(1, 1)]),
    "A2": ([[2, -1], [-1, 2]], [(1, 1), (1, 1)]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [(1, 1), (1, 1), (1, 1)]),
    "B2": ([[2, -1], [-2, 2]], [(1, 1), (1, 2)]),
    "G2": ([[2, -1], [-3, 2]], [(1, 1), (1, 3)]),
}

SUPPORTED_TYPES = tuple(sorted(_TYPES))


def _invert(matrix):
    """Exact inverse of a small rational matrix given as row lists."""
    n = len(matrix)
    aug = [[QQ(matrix[i][j]) for j in range(n)] + [QQ(1 if k == i else 0) for k in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class RootSystem:
    """Immutable root-system data for one finite type."""

    def __init__(self, type_label):
        if type_label not in _TYPES:
            raise ValueError(
                "unknown type label %r (supported: %s)" % (type_label, ", ".join(SUPPORTED_TYPES))
            )
        cartan, eps = _TYPES[type_label]
        self.type_label = type_label
        self.rank = len(cartan)
        self.cartan = tuple(tuple(row) for row in cartan)
        self.eps = tuple(QQ(p, q) for p, q in eps)
        # (alpha_i|alpha_j) = eps_i * C[i][j]; symmetric by construction
        self.form_matrix = tuple(
            tuple(self.eps[i] * self.cartan[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )
        for i in range(self.rank):
            for j in range(self.rank):
                assert self.form_matrix[i][j] == self.form_matrix[j][i]
        self.positive_roots = self._generate_positive_roots()
        self._pos_set = set(self.positive_roots)
        heights = [sum(r) for r in self.positive_roots]
        self.highest_root = self.positive_roots[heights.index(max(heights))]
        # fund coords of a root-lattice vector are fund_j = sum_i C[j][i]*root_i,
        # i.e. fund = C*root with C as stored; cache the exact inverse
        self._fund_to_root = _invert([list(row) for row in self.cartan])
        self.theta_fund = self.root_to_fund(self.highest_root)
        assert self.d_alpha(self.highest_root) == 1

    # -- basic root arithmetic ------------------------------------------------

    def _pairing_root(self, beta, i):
        """<beta, alpha_i^vee> for beta in root coordinates."""
        return sum(self.cartan[i][j] * beta[j] for j in range(self.rank))

    def _generate_positive_roots(self):
        roots = {tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)}
        frontier = set(roots)
        while frontier:
            nxt = set()
            for beta in frontier:
                for i in range(self.rank):
                    n = self._pairing_root(beta, i)
                    refl = list(beta)
                    refl[i] -= n
                    refl = tuple(refl)
                    if refl not in roots:
                        roots.add(refl)
                        nxt.add(refl)
            frontier = nxt
        pos = []
        for beta in roots:
            nz = [c for c in beta if c != 0]
            assert all(c > 0 for c in nz) or all(c < 0 for c in nz)
            if nz[0] > 0:
                pos.append(beta)
        pos.sort(key=lambda r: (sum(r), r))
        return tuple(pos)

    def is_root(self, beta):
        return beta in self._pos_set or tuple(-c for c in beta) in self._pos_set

    def is_positive_root(self, beta):
        return beta in self._pos_set

    def form(self, beta, gamma):
        """(beta|gamma) for root-lattice vectors, exact rational."""
        total = QQ(0)
        for i, b in enumerate(beta):
            if b == 0:
                continue
            for j, c in enumerate(gamma):
                if c != 0:
                    total += b * c * self.form_matrix[i][j]
        return total

    def d_alpha(self, beta):
        d = 2 / self.form(beta, beta)
        assert d.denominator == 1 and int(d) in (1, 2, 3)
        return int(d)

    def coroot(self, beta):
        """alpha^vee in simple-coroot coordinates (always integral)."""
        d = self.d_alpha(beta)
        out = []
        for i, c in enumerate(beta):
            x = c * d * self.eps[i]
            assert x.denominator == 1
            out.append(int(x))
        return tuple(out)

    def pairing(self, lam, beta):
        """<lam, beta^vee> for lam in fundamental coordinates, beta a root."""
        cv = self.coroot(beta)
        return sum(l * c for l, c in zip(lam, cv))

    def root_to_fund(self, beta):
        """Fundamental coordinates of a root-lattice vector."""
        return tuple(self._pairing_root(beta, i) for i in range(self.rank))

    def fund_to_root(self, lam):
        """Root coordinates of a weight; entries may be non-integral rationals."""
        return tuple(
            sum(self._fund_to_root[i][j] * QQ(lam[j]) for j in range(self.rank))
            for i in range(self.rank)
        )

    def is_dominant(self, lam):
        return all(c >= 0 for c in lam)

    def weight_form(self, lam, mu):
        """(lam|mu) for weights in fundamental coordinates."""
        return self.form(self.fund_to_root(lam), self.fund_to_root(mu))

    def theta_multiple(self, lam):
        """k with lam == k*theta in fundamental coordinates, else None."""
        tf = self.theta_fund
        k = None
        for a, b in zip(lam, tf):
            if b == 0:
                if a != 0:
                    return None
                continue
            q, r = divmod(a, b)
            if r != 0 or (k is not None and q != k):
                return None
            k = q
        if k is None or k < 0:
            return None
        if tuple(k * b for b in tf) != tuple(lam):
            return None
        return k

    def __repr__(self):
        return "RootSystem(%s)" % self.type_label


_cache = {}


def build_root_system(type_label):
    """Root system for one of the supported finite types (cached)."""
    if type_label not in _cache:
        _cache[type_label] = RootSystem(type_label)
    return _cache[type_label]
