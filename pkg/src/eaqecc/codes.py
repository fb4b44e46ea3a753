"""Classical linear codes over GF(q) and GF(q^2).

A LinearCode is defined by a full-row-rank generator matrix, kept in
reduced row echelon form so equality means equality of row spaces.
Duals, Hermitian duals, hulls, and distance facts are computed lazily
and cached; codes themselves are immutable.
"""

from __future__ import annotations

import numpy as np

from . import distance as dist
from .distance import DistanceFact
from .errors import InvalidFieldError, PreconditionError
from .fields import FieldSpec
from .matrix import MatrixFq, gf_matmul


class LinearCode:
    """An [n, k] linear code given by a generator matrix."""

    def __init__(self, field: FieldSpec, G, name: str | None = None):
        if isinstance(G, MatrixFq):
            if G.field != field:
                raise InvalidFieldError("generator matrix field mismatch")
            M = G
        else:
            M = MatrixFq(field, G)
        R, rank, pivots = M.rref()
        if rank < M.rows:
            raise PreconditionError(
                f"generator matrix is rank-deficient: {M.rows} rows, rank {rank}"
            )
        self.field = field
        self.name = name
        self.G = MatrixFq(field, R.array[:rank]) if rank < R.rows else R
        self._pivots = pivots
        self._cache = {}

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"LinearCode[{self.n},{self.k}]_{self.field.order}{tag}"

    def __eq__(self, other):
        return isinstance(other, LinearCode) and self.field == other.field and self.G == other.G

    def __hash__(self):
        return hash((self.field, self.G))

    # -- membership -----------------------------------------------------------

    def reduce_vector(self, v: np.ndarray) -> np.ndarray:
        """Residue of v after elimination against the generator rows."""
        f = self.field
        v = np.array(v, dtype=np.uint8)
        Ga = self.G.array
        for i, p in enumerate(self._pivots):
            if v[p]:
                v = f.ADD[v, f.MUL[f.NEG[v[p]], Ga[i]]]
        return v

    def contains_vector(self, v) -> bool:
        return not self.reduce_vector(v).any()

    def contains_code(self, other: "LinearCode") -> bool:
        if other.field != self.field or other.n != self.n:
            return False
        return all(self.contains_vector(other.G.array[i]) for i in range(other.k))

    # -- duals and hulls ---------------------------------------------------------

    def euclidean_dual(self) -> "LinearCode":
        if "dual" not in self._cache:
            self._cache["dual"] = LinearCode(self.field, self.G.kernel())
        return self._cache["dual"]

    def hermitian_dual(self) -> "LinearCode":
        """Vectors x with sum_i x_i c_i^q = 0 for every codeword c."""
        if "hdual" not in self._cache:
            self.field._require_square()
            ker = self.G.conj().kernel()
            self._cache["hdual"] = LinearCode(self.field, ker)
        return self._cache["hdual"]

    def hermitian_hull(self):
        """(basis matrix, dimension) of the intersection with the Hermitian dual.

        The dimension always equals k - rank(G G^dagger); the basis rows
        are u G for u spanning the left kernel of G G^dagger.
        """
        if "hull" not in self._cache:
            self.field._require_square()
            gram = self.G @ self.G.hermitian_transpose()
            left = gram.transpose().kernel()  # u with u (G G^dagger) = 0
            basis = MatrixFq(self.field, gf_matmul(left.array, self.G.array, self.field))
            R, rank, _ = basis.rref()
            assert rank == basis.rows
            self._cache["hull"] = (R, rank)
        return self._cache["hull"]

    @property
    def hull_dim(self) -> int:
        return self.hermitian_hull()[1]

    def hull_code(self) -> "LinearCode":
        basis, ell = self.hermitian_hull()
        if ell == 0:
            return LinearCode(self.field, MatrixFq.zeros(self.field, 0, self.n))
        return LinearCode(self.field, basis)

    def gram_hermitian(self) -> MatrixFq:
        return self.G @ self.G.hermitian_transpose()

    # -- transformations ----------------------------------------------------------

    def scale_columns(self, scalars) -> "LinearCode":
        scalars = list(scalars)
        if len(scalars) != self.n:
            raise PreconditionError("need one scalar per column")
        if any(a == 0 for a in scalars):
            raise PreconditionError("column scalars must be nonzero")
        return LinearCode(self.field, self.G.scale_cols(scalars))

    def permute_columns(self, perm) -> "LinearCode":
        return LinearCode(self.field, self.G.permute_cols(perm))

    # -- distances ------------------------------------------------------------------

    def min_distance(
        self,
        enum_cap: int = dist.DEFAULT_ENUM_CAP,
        work_budget: int = dist.DEFAULT_WORK_BUDGET,
        target: int | None = None,
    ) -> DistanceFact:
        """Exact minimum distance when affordable, honest bounds otherwise.

        Full scalar-class enumeration while q^k <= enum_cap; beyond that
        the information-set loop runs until exact, the optional target
        lower bound is certified, or the work budget expires.  The zero
        code gets the conventional value n + 1.
        """
        exact = self._cache.get("exact_d")
        if exact is not None:
            return exact
        key = ("d", enum_cap, work_budget, target)
        if key in self._cache:
            return self._cache[key]
        if self.k == 0:
            fact = DistanceFact(self.n + 1, "exact", "convention")
        elif self.field.order**self.k <= enum_cap:
            scan = dist.span_weight_scan(self.field, self.G.array, cap=enum_cap)
            fact = DistanceFact(scan.min_weight, "exact", "enumeration", scan.witness)
        else:
            fact = dist.information_set_bounds(
                self.field, self.G.array, target=target, work_budget=work_budget
            ).fact
        if fact.exact:
            self._cache["exact_d"] = fact
        else:
            self._cache[key] = fact
        return fact

    def distance_lower_bound(self, target: int, work_budget: int = dist.DEFAULT_WORK_BUDGET):
        """Certify d >= target if possible within the budget."""
        if self.k == 0:
            return DistanceFact(self.n + 1, "exact", "convention")
        return dist.information_set_bounds(
            self.field, self.G.array, target=target, work_budget=work_budget
        ).fact

    def codewords(self):
        """All q^k codewords as tuples (small codes only; test-scale helper)."""
        import itertools

        f = self.field
        rows = self.G.array
        for combo in itertools.product(range(f.order), repeat=self.k):
            word = np.zeros(self.n, dtype=np.uint8)
            for c, row in zip(combo, rows):
                word = f.ADD[word, f.MUL[c, row]]
            yield tuple(int(v) for v in word)

    # -- files --------------------------------------------------------------------

    def to_text(self) -> str:
        return self.G.to_text(kind="generator", name=self.name)

    @classmethod
    def from_text(cls, text: str) -> "LinearCode":
        M, extra = MatrixFq.from_text(text)
        kind = extra.get("kind", "generator")
        if kind != "generator":
            raise PreconditionError(f"expected a generator matrix file, got kind={kind}")
        return cls(M.field, M, name=extra.get("name"))


def relative_distance(
    big: LinearCode,
    sub: LinearCode,
    enum_cap: int = dist.DEFAULT_ENUM_CAP,
    work_budget: int = dist.DEFAULT_WORK_BUDGET,
):
    """(min weight of big \\ sub, min weight of big) as two facts.

    sub must be a proper subcode of big.  One enumeration pass computes
    both quantities when affordable; otherwise the information-set loop
    reports honest bounds for each.
    """
    if big.field != sub.field or big.n != sub.n:
        raise PreconditionError("codes live in different spaces")
    if not big.contains_code(sub):
        raise PreconditionError("second code is not contained in the first")
    if sub.k == big.k:
        raise PreconditionError("difference set is empty: the codes coincide")
    field = big.field
    if big.k == 0:
        raise PreconditionError("the zero code has no nonzero words")
    rows = _adapted_rows(big, sub)
    if field.order**big.k <= enum_cap:
        scan = dist.span_weight_scan(field, rows, sub_rows=sub.k, cap=enum_cap)
        out = DistanceFact(scan.outside_min, "exact", "enumeration", scan.outside_witness)
        allf = DistanceFact(scan.min_weight, "exact", "enumeration", scan.witness)
        return out, allf
    res = dist.information_set_bounds(
        field, big.G.array, work_budget=work_budget, sub_checker=sub.contains_vector
    )
    return res.outside_fact, res.fact


def min_weight_outside(big: LinearCode, sub: LinearCode, **kw) -> DistanceFact:
    """Minimum weight over codewords of big that are not in sub."""
    return relative_distance(big, sub, **kw)[0]


def _adapted_rows(big: LinearCode, sub: LinearCode) -> np.ndarray:
    """Rows spanning big with the first sub.k rows spanning sub."""
    taken = [sub.G.array[i] for i in range(sub.k)]
    for i in range(big.k):
        if len(taken) == big.k:
            break
        cand = big.G.array[i]
        trial = MatrixFq(big.field, np.array(taken + [cand], dtype=np.uint8))
        if trial.rank() == len(taken) + 1:
            taken.append(cand)
    assert len(taken) == big.k
    return np.array(taken, dtype=np.uint8)


def random_code(field: FieldSpec, n: int, k: int, rng) -> LinearCode:
    """Uniform-ish random [n, k] code (resamples until full rank)."""
    if not 0 <= k <= n:
        raise PreconditionError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        return LinearCode(field, MatrixFq.zeros(field, 0, n))
    while True:
        G = rng.integers(0, field.order, size=(k, n), dtype=np.uint8)
        if MatrixFq(field, G).rank() == k:
            return LinearCode(field, G)
