"""Graded characters: the comparison currency for every module identity.

A GradedCharacter maps (grade, weight) to a multiplicity.  Equality is exact;
addition and the grade shift q^r are the only arithmetic the verification
suites need.
"""


class GradedCharacter:
    def __init__(self, entries=None):
        self.entries = {}
        if entries:
            for key, mult in dict(entries).items():
                if mult < 0:
                    raise ValueError("negative multiplicity")
                if mult:
                    grade, weight = key
                    self.entries[(int(grade), tuple(weight))] = int(mult)

    @property
    def total_dimension(self):
        return sum(self.entries.values())

    def __eq__(self, other):
        return isinstance(other, GradedCharacter) and self.entries == other.entries

    def __ne__(self, other):
        return not self.__eq__(other)

    def __add__(self, other):
        out = dict(self.entries)
        for key, mult in other.entries.items():
            out[key] = out.get(key, 0) + mult
        return GradedCharacter(out)

    def shift(self, r):
        """Multiply by q^r: shift every grade by r."""
        return GradedCharacter({(g + r, w): m for (g, w), m in self.entries.items()})

    def weight_character(self):
        """Specialization q = 1: plain weight multiplicities."""
        out = {}
        for (_, w), m in self.entries.items():
            out[w] = out.get(w, 0) + m
        return out

    def grades(self):
        return sorted({g for g, _ in self.entries})

    def graded_dimensions(self):
        """{grade: dimension of the graded piece}."""
        out = {}
        for (g, _), m in self.entries.items():
            out[g] = out.get(g, 0) + m
        return out

    def rows(self):
        """Sorted [grade, list(weight), mult] rows, canonical for JSON."""
        return [[g, list(w), m] for (g, w), m in sorted(self.entries.items())]

    @classmethod
    def from_rows(cls, rows):
        return cls({(g, tuple(w)): m for g, w, m in rows})

    def __repr__(self):
        dims = self.graded_dimensions()
        body = " + ".join("%d*q^%d" % (dims[g], g) for g in sorted(dims))
        return "GradedCharacter(%s, total=%d)" % (body or "0", self.total_dimension)
