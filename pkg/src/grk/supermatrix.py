"""Z2-graded matrix algebra over Grassmann-valued entries.

A ``SuperMatrix`` of order k acts on the k-fold graded tensor power of the
(m+n)-dimensional space.  Composite row/column indices are linearized
row-major: (A, C) -> A*(m+n) + C with 0-based digits.

Representation: grading signs live entirely in the construction of graded
tensor products (``gkron``) and supertransposes; ``matmul`` is the plain
row-column product with left-to-right entry order, which together give a
faithful matrix model of the graded tensor algebra

    (e_AB (x) e_CD)(e_IJ (x) e_KL)
        = (-1)^{[p(C)+p(D)][p(I)+p(J)]} e_AB e_IJ (x) e_CD e_KL .

Internally a matrix is a dict {generator-bitmask: dense complex ndarray}:
the coefficient matrix of each Grassmann monomial.  This keeps the hot
operations (products of 25x25 .. 216x216 matrices) inside numpy while the
per-entry view remains an exact sparse GrassmannElement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grassmann import GrassmannElement, GrassmannError, merge_sign


@dataclass(frozen=True)
class GradingProfile:
    """Bosonic/fermionic dimensions (m, n) with the distinguished parity."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ValueError("need m, n >= 0 and m + n >= 1")

    @property
    def dim(self):
        return self.m + self.n

    @property
    def delta(self):
        return self.m - self.n

    def parity(self, A):
        """p(A) for a 1-based index: 0 on the first m slots, 1 after."""
        if not 1 <= A <= self.dim:
            raise IndexError(f"index {A} out of range 1..{self.dim}")
        return 0 if A <= self.m else 1

    def parity_vector(self):
        p = np.zeros(self.dim, dtype=np.int64)
        p[self.m:] = 1
        return p

    def composite_parities(self, order):
        """Parity (mod 2) of each composite index of the order-fold space."""
        p = self.parity_vector()
        out = np.zeros(1, dtype=np.int64)
        for _ in range(order):
            out = (out[:, None] + p[None, :]).reshape(-1)
        return out % 2

    def is_bosonic(self, A):
        return self.parity(A) == 0


class SuperMatrix:
    """Square matrix of GrassmannElement entries on a graded tensor space."""

    __slots__ = ("profile", "order", "registry", "terms")

    def __init__(self, profile, order, registry=None, terms=None):
        self.profile = profile
        self.order = order
        self.registry = registry
        self.terms = {}
        if terms:
            dim = self.dim
            for mask, arr in terms.items():
                arr = np.asarray(arr, dtype=complex)
                if arr.shape != (dim, dim):
                    raise ValueError("coefficient matrix has wrong shape")
                if np.any(arr):
                    self.terms[mask] = arr

    @property
    def dim(self):
        return self.profile.dim ** self.order

    # -- constructors --------------------------------------------------

    @staticmethod
    def zeros(profile, order, registry=None):
        return SuperMatrix(profile, order, registry)

    @staticmethod
    def identity(profile, order, registry=None):
        d = profile.dim ** order
        return SuperMatrix(profile, order, registry, {0: np.eye(d, dtype=complex)})

    @staticmethod
    def from_scalar_array(profile, order, arr, registry=None):
        return SuperMatrix(profile, order, registry, {0: np.asarray(arr, dtype=complex)})

    @staticmethod
    def from_entries(profile, order, entries, registry=None):
        """Build from a dict {(row, col): GrassmannElement | complex}, 0-based."""
        d = profile.dim ** order
        terms = {}
        for (i, j), val in entries.items():
            if not (0 <= i < d and 0 <= j < d):
                raise IndexError("entry index out of range")
            if isinstance(val, GrassmannElement):
                if registry is None:
                    registry = val.registry
                elif val.registry is not None and val.registry is not registry:
                    raise GrassmannError("registry mismatch")
                items = val.terms.items()
            else:
                items = ((0, complex(val)),) if val else ()
            for mask, c in items:
                if mask not in terms:
                    terms[mask] = np.zeros((d, d), dtype=complex)
                terms[mask][i, j] += c
        return SuperMatrix(profile, order, registry, terms)

    # -- entry access ----------------------------------------------------

    def entry(self, i, j):
        """Entry (i, j) (0-based composite indices) as a GrassmannElement."""
        terms = {}
        for mask, arr in self.terms.items():
            c = arr[i, j]
            if c != 0:
                terms[mask] = c
        return GrassmannElement(self.registry, terms)

    def entries(self):
        """Iterate (i, j, GrassmannElement) over structurally nonzero slots."""
        d = self.dim
        if not self.terms:
            return
        support = np.zeros((d, d), dtype=bool)
        for arr in self.terms.values():
            support |= arr != 0
        for i, j in zip(*np.nonzero(support)):
            yield int(i), int(j), self.entry(int(i), int(j))

    def scalar_array(self):
        """The mask-0 coefficient matrix (body) as a copy."""
        d = self.dim
        arr = self.terms.get(0)
        return np.array(arr, dtype=complex) if arr is not None else np.zeros((d, d), dtype=complex)

    def is_scalar(self):
        return all(mask == 0 for mask in self.terms)

    # -- ring operations ---------------------------------------------

    def _merge_registry(self, other):
        if self.registry is None:
            return other.registry
        if other.registry is None or other.registry is self.registry:
            return self.registry
        raise GrassmannError("registry mismatch")

    def _check_compat(self, other):
        if self.profile != other.profile:
            raise ValueError("profile mismatch")
        if self.order != other.order:
            raise ValueError("order mismatch")

    def __add__(self, other):
        self._check_compat(other)
        reg = self._merge_registry(other)
        terms = {m: a.copy() for m, a in self.terms.items()}
        for m, a in other.terms.items():
            if m in terms:
                terms[m] = terms[m] + a
            else:
                terms[m] = a
        return SuperMatrix(self.profile, self.order, reg, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = complex(c)
        if c == 0:
            return SuperMatrix(self.profile, self.order, self.registry)
        return SuperMatrix(
            self.profile, self.order, self.registry,
            {m: c * a for m, a in self.terms.items()},
        )

    def __matmul__(self, other):
        self._check_compat(other)
        reg = self._merge_registry(other)
        out = {}
        for ma, A in self.terms.items():
            for mb, B in other.terms.items():
                if ma & mb:
                    continue
                m = ma | mb
                prod = A @ B
                if merge_sign(ma, mb) < 0:
                    prod = -prod
                if m in out:
                    out[m] += prod
                else:
                    out[m] = prod
        return SuperMatrix(self.profile, self.order, reg, out)

    def norm(self):
        """Max over entries of the entry's coefficient-vector norm."""
        if not self.terms:
            return 0.0
        acc = None
        for arr in self.terms.values():
            a2 = np.abs(arr) ** 2
            acc = a2 if acc is None else acc + a2
        return float(np.sqrt(acc.max()))

    def supertrace(self):
        """Graded trace: sum of (-1)^p(A) times the diagonal entries."""
        signs = 1.0 - 2.0 * self.profile.composite_parities(self.order)
        terms = {}
        for mask, arr in self.terms.items():
            c = complex(np.sum(signs * np.diag(arr)))
            if c != 0:
                terms[mask] = c
        return GrassmannElement(self.registry, terms)

    def __repr__(self):
        kind = "scalar" if self.is_scalar() else f"{len(self.terms)} monomials"
        return (f"SuperMatrix(m={self.profile.m}, n={self.profile.n}, "
                f"order={self.order}, {kind})")

    # -- JSON ------------------------------------------------------------

    def to_json_dict(self):
        entries = []
        for i, j, el in sorted(self.entries(), key=lambda t: (t[0], t[1])):
            entries.append({"row": i, "col": j, "terms": el.to_terms_json()})
        return {
            "m": self.profile.m,
            "n": self.profile.n,
            "order": self.order,
            "entries": entries,
        }

    @staticmethod
    def from_json_dict(data, registry=None):
        profile = GradingProfile(int(data["m"]), int(data["n"]))
        order = int(data["order"])
        entries = {}
        for item in data["entries"]:
            el = GrassmannElement.from_terms_json(item["terms"], registry)
            entries[(int(item["row"]), int(item["col"]))] = el
        return SuperMatrix.from_entries(profile, order, entries, registry)


# -- basis elements and graded structure maps --------------------------


def unit(profile, A, B, registry=None):
    """Order-1 matrix unit e_AB (1-based indices)."""
    d = profile.dim
    if not (1 <= A <= d and 1 <= B <= d):
        raise IndexError(f"index out of range 1..{d}")
    arr = np.zeros((d, d), dtype=complex)
    arr[A - 1, B - 1] = 1.0
    return SuperMatrix(profile, 1, registry, {0: arr})


def gkron(X, Y):
    """Graded tensor product.

    Entrywise (X (x) Y)_{(A,C),(B,D)} = (-1)^{p(C)[p(A)+p(B)]} X_AB Y_CD,
    with Grassmann entry products taken in the written order.
    """
    if X.profile != Y.profile:
        raise ValueError("profile mismatch")
    reg = X._merge_registry(Y)
    p_row_x = X.profile.composite_parities(X.order)
    p_row_y = Y.profile.composite_parities(Y.order)
    d1 = X.dim
    d2 = Y.dim
    # sign[(A,C),(B,D)] depends on (A, B, C) only
    s_x = (p_row_x[:, None] + p_row_x[None, :]) % 2          # (A, B)
    sign = 1.0 - 2.0 * (p_row_y[None, :, None] * s_x[:, None, :])  # (A, C, B)
    sign4 = np.broadcast_to(sign[:, :, :, None], (d1, d2, d1, d2))
    sign_flat = sign4.reshape(d1 * d2, d1 * d2)
    out = {}
    for mx, Ax in X.terms.items():
        for my, Ay in Y.terms.items():
            if mx & my:
                continue
            m = mx | my
            block = np.kron(Ax, Ay) * sign_flat
            if merge_sign(mx, my) < 0:
                block = -block
            if m in out:
                out[m] += block
            else:
                out[m] = block
    return SuperMatrix(X.profile, X.order + Y.order, reg, out)


def graded_permutation(profile, registry=None):
    """P = sum_AB (-1)^p(B) e_AB (x) e_BA; as a plain matrix
    P_{(A,B),(B,A)} = (-1)^{p(A) p(B)}."""
    d = profile.dim
    p = profile.parity_vector()
    arr = np.zeros((d * d, d * d), dtype=complex)
    for a in range(d):
        for b in range(d):
            arr[a * d + b, b * d + a] = (-1.0) ** (p[a] * p[b])
    return SuperMatrix(profile, 2, registry, {0: arr})


def supertranspose(X):
    """Order-1 supertranspose: (X^st)_{CB} = (-1)^{p(B)+p(B)p(C)} X_{BC}."""
    if X.order != 1:
        raise ValueError("supertranspose is defined on order-1 matrices; "
                         "use st1/st2 for order-2 factors")
    p = X.profile.parity_vector()
    # sign at result slot (C, B)
    sign = (-1.0) ** (p[None, :] * (1 + p[:, None]))
    return SuperMatrix(
        X.profile, 1, X.registry,
        {m: sign * arr.T for m, arr in X.terms.items()},
    )


def st1(X):
    """Partial supertranspose on the first factor of an order-2 matrix,
    fixed by (X (x) Y)^st1 = X^st (x) Y on the graded tensor product."""
    return _partial_st(X, 0)


def st2(X):
    """Partial supertranspose on the second factor of an order-2 matrix,
    fixed by (X (x) Y)^st2 = X (x) Y^st.

    Transposing the inner factor of a graded tensor product picks up an
    extra (-1)^{[p(K)+p(L)][p(A)+p(B)]} relative to the naive index swap;
    together with st1 this gives R^{st1 st2} = P R P (PT-symmetry)."""
    return _partial_st(X, 1)


def _partial_st(X, which):
    if X.order != 2:
        raise ValueError("partial supertranspose needs an order-2 matrix")
    d = X.profile.dim
    p = X.profile.parity_vector()
    sign = (-1.0) ** (p[None, :] * (1 + p[:, None]))  # sign[C, B]
    out = {}
    for m, arr in X.terms.items():
        t = arr.reshape(d, d, d, d)
        if which == 0:
            # result[c,k,b,l] = sign[c,b] * X[b,k,c,l]
            r = np.einsum("bkcl->ckbl", t) * sign[:, None, :, None]
        else:
            # result[a,k,b,l] = sign[l,k] * (-1)^{(p_k+p_l)(p_a+p_b)}
            #                   * X[a,l,b,k]
            r = np.einsum("albk->akbl", t) * sign[None, :, None, :]
            outer = (-1.0) ** (
                (p[None, :, None, None] + p[None, None, None, :])
                * (p[:, None, None, None] + p[None, None, :, None]))
            r = r * outer
        out[m] = r.reshape(d * d, d * d)
    return SuperMatrix(X.profile, 2, X.registry, out)


def matmul(X, Y):
    return X @ Y


def madd(X, Y):
    return X + Y


def msub(X, Y):
    return X - Y


def mnorm(X):
    return X.norm()
