"""Finite-dimensional complex exterior (Grassmann) algebra.

Elements are sparse sums of monomials in up to 64 anticommuting generators.
A monomial is a subset of generators, stored as a bitmask over the generator
indices of a registry; nilpotency is structural (a bit is set at most once)
and the anticommutation sign of a product is the parity of the number of
transpositions needed to interleave the two index sets.

Coefficients are double-precision complex.  All identities handled here are
exact, so canonicalization only prunes true round-off: terms with magnitude
below 1e-14 of the element norm.
"""

from __future__ import annotations

import math
from functools import lru_cache

PRUNE_REL = 1e-14

PARITY_ZERO = "zero"
PARITY_EVEN = "even"
PARITY_ODD = "odd"
PARITY_MIXED = "mixed"


class GrassmannError(ValueError):
    pass


class GeneratorRegistry:
    """Ordered, write-once set of generator labels.

    The index of a label is stable for the registry's lifetime; elements
    created from different registries never mix.
    """

    def __init__(self, labels=()):
        self._labels = []
        self._index = {}
        for lab in labels:
            self.add(lab)

    def add(self, label):
        """Register a new generator, returning its index."""
        if label in self._index:
            raise GrassmannError(f"generator {label!r} already registered")
        if len(self._labels) >= 64:
            raise GrassmannError("registry limited to 64 generators")
        idx = len(self._labels)
        self._labels.append(label)
        self._index[label] = idx
        return idx

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise GrassmannError(f"unregistered generator {label!r}") from None

    @property
    def labels(self):
        return tuple(self._labels)

    @property
    def count(self):
        return len(self._labels)

    def __repr__(self):
        return f"GeneratorRegistry({list(self._labels)!r})"


@lru_cache(maxsize=1 << 16)
def merge_sign(mask_a, mask_b):
    """Sign of theta^A * theta^B for disjoint sorted monomials A, B.

    Counts the pairs (i, j) with i in A, j in B and i > j, i.e. the
    transpositions needed to interleave the two ascending index lists.
    """
    swaps = 0
    t = mask_b
    while t:
        low = t & -t
        swaps += (mask_a >> low.bit_length()).bit_count()
        t ^= low
    return -1 if swaps & 1 else 1


def _check_same_registry(a, b):
    if a.registry is not b.registry and a.registry is not None and b.registry is not None:
        raise GrassmannError("registry mismatch")


class GrassmannElement:
    """Sparse element of the exterior algebra over a registry.

    ``terms`` maps a generator bitmask to a nonzero complex coefficient.
    Instances are immutable values; all operations return new elements.
    A ``registry`` of None marks a purely scalar element, compatible with
    any registry.
    """

    __slots__ = ("registry", "terms")

    def __init__(self, registry, terms=None, _canonical=False):
        self.registry = registry
        if terms is None:
            terms = {}
        if not _canonical:
            terms = _canonicalize(terms)
        self.terms = terms

    # -- constructors ------------------------------------------------

    @staticmethod
    def scalar(value, registry=None):
        value = complex(value)
        if value == 0:
            return GrassmannElement(registry, {}, _canonical=True)
        return GrassmannElement(registry, {0: value}, _canonical=True)

    @staticmethod
    def zero(registry=None):
        return GrassmannElement(registry, {}, _canonical=True)

    # -- algebra -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(other, self.registry)
        _check_same_registry(self, other)
        terms = dict(self.terms)
        for mask, c in other.terms.items():
            terms[mask] = terms.get(mask, 0j) + c
        return GrassmannElement(self.registry or other.registry, terms)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(
            self.registry, {m: -c for m, c in self.terms.items()}, _canonical=True
        )

    def __sub__(self, other):
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(other, self.registry)
        return self + (-other)

    def __rsub__(self, other):
        return GrassmannElement.scalar(other, self.registry) + (-self)

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            return self.scale(other)
        _check_same_registry(self, other)
        terms = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue  # repeated generator: nilpotent
                m = ma | mb
                c = merge_sign(ma, mb) * ca * cb
                terms[m] = terms.get(m, 0j) + c
        return GrassmannElement(self.registry or other.registry, terms)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scale(other)

    def scale(self, c):
        c = complex(c)
        if c == 0:
            return GrassmannElement.zero(self.registry)
        return GrassmannElement(
            self.registry, {m: c * v for m, v in self.terms.items()}
        )

    # -- queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def norm(self):
        """Euclidean norm of the coefficient vector."""
        return math.sqrt(sum(abs(c) ** 2 for c in self.terms.values()))

    def parity(self):
        """'even', 'odd', 'mixed' or 'zero' by monomial degree."""
        if not self.terms:
            return PARITY_ZERO
        degs = {mask.bit_count() & 1 for mask in self.terms}
        if degs == {0}:
            return PARITY_EVEN
        if degs == {1}:
            return PARITY_ODD
        return PARITY_MIXED

    def degree(self):
        """Maximal monomial degree, -1 for the zero element."""
        if not self.terms:
            return -1
        return max(mask.bit_count() for mask in self.terms)

    def coefficient(self, mask):
        return self.terms.get(mask, 0j)

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "<0>"
        bits = []
        for mask in sorted(self.terms):
            c = self.terms[mask]
            if mask == 0:
                bits.append(f"{c:.6g}")
            else:
                names = ".".join(self._gen_name(i) for i in _bit_indices(mask))
                bits.append(f"{c:.6g}*{names}")
        return "<" + " + ".join(bits) + ">"

    def _gen_name(self, i):
        if self.registry is not None and i < self.registry.count:
            return self.registry.labels[i]
        return f"theta{i}"

    # -- JSON term encoding -------------------------------------------

    def to_terms_json(self):
        """List of {'gens': [...], 're': x, 'im': y}, sorted by mask."""
        out = []
        for mask in sorted(self.terms):
            c = self.terms[mask]
            out.append({"gens": _bit_indices(mask), "re": c.real, "im": c.imag})
        return out

    @staticmethod
    def from_terms_json(data, registry=None):
        terms = {}
        for item in data:
            mask = 0
            for i in item["gens"]:
                bit = 1 << int(i)
                if mask & bit:
                    raise GrassmannError("repeated generator index in JSON term")
                mask |= bit
            terms[mask] = terms.get(mask, 0j) + complex(item["re"], item["im"])
        return GrassmannElement(registry, terms)


def _canonicalize(terms):
    norm2 = sum(abs(c) ** 2 for c in terms.values())
    if norm2 == 0.0:
        return {}
    cutoff = PRUNE_REL * math.sqrt(norm2)
    return {m: c for m, c in terms.items() if abs(c) > cutoff}


def _bit_indices(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# -- module-level operation names ------------------------------------


def gen(registry, label):
    """Degree-1 monomial for a registered generator, coefficient 1."""
    if registry.count == 0:
        raise GrassmannError("unregistered generator (empty registry)")
    idx = registry.index(label)
    return GrassmannElement(registry, {1 << idx: 1.0 + 0j}, _canonical=True)


def gmul(a, b):
    return a * b


def gadd(a, b):
    return a + b


def gscale(a, c):
    return a.scale(c)


def gparity(a):
    return a.parity()


def gnorm(a):
    return a.norm()
