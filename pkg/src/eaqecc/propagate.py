"""Propagation machinery: hull manipulation and derived quantum codes.

Classical layer: equivalence transforms that move the Hermitian hull
dimension down (column scaling) or up (length extensions), a search for
the diagonal equivalence minimizing the ebit count, and the solution
space of the self-orthogonality-equivalence system.

Quantum layer: the three entanglement rules (more / same / less) that
lift those transforms through the Hermitian construction, plus the
eight single-step parameter rules used to expand and compress tables.
Every quantum step carries a replayable certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import distance as dist
from .codes import LinearCode
from .construct import CONSTRUCT_WORK_BUDGET, EaqeccParams, hermitian_construct
from .distance import DistanceFact
from .errors import (
    BudgetError,
    EaqeccError,
    InvalidFieldError,
    PreconditionError,
    RuleNotApplicableError,
)
from .fields import GF
from .matrix import MatrixFq, gf_matmul, hermitian_congruence_diagonalize

DEFAULT_SEARCH_BUDGET = 10**4
DEFAULT_SPACE_CAP = 2**20


# --------------------------------------------------------------------------
# classical transforms
# --------------------------------------------------------------------------


def _norm_not_one_scalar(field) -> int:
    """Smallest nonzero a with a^(q+1) != 1; exists only for q > 2."""
    for a in field.nonzero_elements():
        if field.norm(a) != 1:
            return a
    raise InvalidFieldError(
        f"GF({field.order}): every nonzero element has norm 1 (base field too small)"
    )


def hull_reduce_scalars(C: LinearCode, ell_target: int):
    """Column scalars realizing a hull of dimension ell_target.

    Returns (scalars tuple, scaled code).  The scaling multiplies
    ell - ell_target of the hull's pivot columns by a fixed element of
    non-unit norm, which peels exactly that many dimensions off the
    hull while preserving [n, k, d].
    """
    field = C.field
    field._require_square()
    if field.subfield_order <= 2:
        raise InvalidFieldError("hull reduction needs base field size q > 2")
    hull_basis, ell = C.hermitian_hull()
    if not 0 <= ell_target <= ell:
        raise PreconditionError(f"target hull dimension {ell_target} not in [0, {ell}]")
    scalars = [1] * C.n
    if ell_target < ell:
        a = _norm_not_one_scalar(field)
        _, _, hull_pivots = hull_basis.rref()
        for col in hull_pivots[: ell - ell_target]:
            scalars[col] = a
    scaled = C.scale_columns(scalars)
    assert scaled.hull_dim == ell_target
    return tuple(scalars), scaled


def hull_reduce(C: LinearCode, ell_target: int) -> LinearCode:
    """Equivalent [n, k, d] code whose Hermitian hull has the target dimension."""
    return hull_reduce_scalars(C, ell_target)[1]


def _check_extend_precondition(C: LinearCode):
    ell = C.hull_dim
    if not ell < min(C.k, C.n - C.k):
        raise PreconditionError(
            f"extension needs hull dim < min(k, n-k); got hull {ell}, k={C.k}, n-k={C.n - C.k}"
        )
    return ell


def extend_with_column(C: LinearCode, column) -> LinearCode:
    """Append one explicit column; the hull dimension must go up by one."""
    ell = _check_extend_precondition(C)
    col = np.asarray(column, dtype=np.uint8).reshape(-1, 1)
    if col.shape[0] != C.k:
        raise PreconditionError(f"column must have {C.k} entries")
    G2 = C.G.hstack(MatrixFq(C.field, col))
    out = LinearCode(C.field, G2)
    if out.hull_dim != ell + 1:
        raise PreconditionError("column does not raise the hull dimension by one")
    return out


def extend_column(
    C: LinearCode,
    column=None,
    position: int = 0,
    alpha: int | None = None,
    rng=None,
) -> LinearCode:
    """[n+1, k, d'] code with hull dimension ell+1, d <= d' <= d+1.

    Default construction: congruence-diagonalize the Gram matrix G
    G^dagger, append the column alpha * e_position (alpha of norm -1) to
    the transformed generator, and read the code off that basis.  A
    caller-supplied column is appended verbatim instead and checked
    against the hull contract.
    """
    return _extend_column_with_cert(C, column, position, alpha, rng)[0]


def _extend_column_with_cert(C, column, position, alpha, rng):
    """(extended code, appended column expressed in the original basis)."""
    if column is not None:
        col = np.asarray(column, dtype=np.uint8)
        return extend_with_column(C, col), col
    field = C.field
    ell = _check_extend_precondition(C)
    s = C.k - ell
    gram = C.gram_hermitian()
    D, rank = hermitian_congruence_diagonalize(gram, rng=rng)
    assert rank == s
    if not 0 <= position < s:
        raise PreconditionError(f"column position must lie in [0, {s})")
    if alpha is None:
        alpha = field.solve_norm(field.neg(1))
    elif field.norm(alpha) != field.neg(1):
        raise PreconditionError("alpha must have norm -1")
    DG = gf_matmul(D.array, C.G.array, field)
    col = np.zeros((C.k, 1), dtype=np.uint8)
    col[position, 0] = alpha
    out = LinearCode(field, np.hstack([DG, col]))
    assert out.hull_dim == ell + 1 and out.k == C.k
    # same code in the original basis: G' = [G | D^{-1} col]
    col_orig = gf_matmul(D.inverse().array, col, field)[:, 0]
    return out, col_orig


def extend_column_search(
    C: LinearCode,
    seed: int = 0,
    gram_samples: int = 8,
    enum_cap: int = 10**6,
    class_cap: int = 10**5,
) -> LinearCode:
    """Best extension by minimum distance over the available choices.

    While the column space is small enough, every hull-raising column is
    tried (one representative per scalar class, lexicographic order, so
    the result is deterministic and the search is complete).  Larger
    codes fall back to scanning positions, alpha values, and a seeded
    sample of congruence transforms.  Distances come from full
    enumeration, so q^k must stay below enum_cap.
    """
    return _extend_column_search_with_cert(C, seed, gram_samples, enum_cap, class_cap)[0]


def _extend_column_search_with_cert(C, seed, gram_samples, enum_cap, class_cap):
    field = C.field
    ell = _check_extend_precondition(C)
    s = C.k - ell
    if field.order**C.k > enum_cap:
        raise BudgetError("extension search needs enumerable distances")
    base_d = C.min_distance(enum_cap=enum_cap).value
    best = None

    def offer(cand, col):
        nonlocal best
        d2 = cand.min_distance(enum_cap=enum_cap).value
        assert base_d <= d2 <= base_d + 1
        if best is None or d2 > best[0]:
            best = (d2, cand, col)
        return best[0] == base_d + 1

    # scaling the new column by lambda multiplies its Gram contribution by
    # norm(lambda): distance is scale-invariant but the hull is not, so scan
    # one representative per norm value on top of each scalar class
    norm_reps = [field.solve_norm(t) for t in range(1, field.subfield_order)]
    classes = (field.order**C.k - 1) // (field.order - 1) * len(norm_reps)
    done = False
    if classes <= class_cap:
        for base_col in _scalar_class_columns(field, C.k):
            for mu in norm_reps:
                col = field.MUL[mu, base_col]
                try:
                    cand = extend_with_column(C, col)
                except PreconditionError:
                    continue
                if offer(cand, col):
                    done = True
                    break
            if done:
                break
    else:
        alphas = [a for a in field.elements() if field.norm(a) == field.neg(1)]
        rng = np.random.default_rng(seed)
        grams = [None] + [rng for _ in range(max(0, gram_samples - 1))]
        for g in grams:
            for position in range(s):
                for alpha in alphas:
                    cand, col = _extend_column_with_cert(C, None, position, alpha, g)
                    if offer(cand, col):
                        done = True
                        break
                if done:
                    break
            if done:
                break
    if best is None:
        raise RuleNotApplicableError("no hull-raising column exists")
    return best[1], best[2]


def _scalar_class_columns(field, k):
    """Column candidates, one per scalar class, lexicographic order."""
    for lead in range(k):
        for tail in itertools.product(range(field.order), repeat=k - lead - 1):
            col = np.zeros(k, dtype=np.uint8)
            col[lead] = 1
            col[lead + 1 :] = tail
            yield col


def extend_row_column(C: LinearCode, word) -> LinearCode:
    """[n+1, k+1] code with hull dimension ell+1 from a chosen dual word.

    word must lie in the Hermitian dual but outside the hull and have
    nonzero Hermitian self-product gamma; the new row is (word | beta)
    with beta^(q+1) = -gamma, the old rows get a zero column.
    """
    field = C.field
    ell = _check_extend_precondition(C)
    w = np.asarray(word, dtype=np.uint8)
    if w.shape != (C.n,):
        raise PreconditionError(f"word must have length {C.n}")
    if not C.hermitian_dual().contains_vector(w):
        raise PreconditionError("word is not in the Hermitian dual")
    if C.hull_code().contains_vector(w):
        raise PreconditionError("word lies in the hull")
    gamma = hermitian_self_product(field, w)
    if gamma == 0:
        raise PreconditionError("word has zero Hermitian self-product")
    beta = field.solve_norm(field.neg(gamma))
    top = np.hstack([C.G.array, np.zeros((C.k, 1), dtype=np.uint8)])
    bottom = np.concatenate([w, [beta]]).astype(np.uint8)
    out = LinearCode(field, np.vstack([top, bottom[None, :]]))
    assert out.hull_dim == ell + 1 and out.k == C.k + 1
    return out


def hermitian_self_product(field, w) -> int:
    """w . w^dagger = sum of the coordinate norms; lands in GF(q)."""
    acc = 0
    for v in w:
        acc = field.add(acc, field.norm(int(v)))
    return acc


# --------------------------------------------------------------------------
# entanglement searches
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MinEntanglementResult:
    c_min: int
    diagonal: tuple
    exhaustive: bool  # False means c_min is only an upper bound


def _rank_with_diagonal(C: LinearCode, diag) -> int:
    field = C.field
    scaled = field.MUL[C.G.array, np.asarray(diag, dtype=np.uint8)[None, :]]
    gram = gf_matmul(scaled, field.CONJ[C.G.array].T, field)
    return MatrixFq(field, gram).rank()


def min_entanglement_search(
    C: LinearCode,
    mode: str = "exhaustive",
    seed: int = 0,
    budget: int = DEFAULT_SEARCH_BUDGET,
    cap: int = DEFAULT_SPACE_CAP,
) -> MinEntanglementResult:
    """Minimize rank(G Diag(b) G^dagger) over diagonals b in (GF(q)*)^n.

    Exhaustive mode scans all (q-1)^n diagonals in ascending order (cap
    guarded) and returns the true minimum with its first witness;
    randomized mode samples `budget` diagonals and returns an upper
    bound flagged as such.
    """
    field = C.field
    field._require_square()
    nonzero = list(range(1, field.subfield_order))
    if mode == "exhaustive":
        total = len(nonzero) ** C.n
        if total > cap:
            raise BudgetError(f"(q-1)^n = {total} exceeds cap {cap}; use randomized mode")
        best = None
        for diag in itertools.product(nonzero, repeat=C.n):
            r = _rank_with_diagonal(C, diag)
            if best is None or r < best[0]:
                best = (r, diag)
                if r == 0:
                    break
        return MinEntanglementResult(best[0], best[1], True)
    if mode != "randomized":
        raise PreconditionError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    # the all-ones diagonal is the do-nothing baseline; always include it so a
    # sampled bound never exceeds rank(G G^dagger)
    trials = [tuple([1] * C.n)]
    trials += [tuple(int(nonzero[i]) for i in rng.integers(0, len(nonzero), size=C.n))
               for _ in range(budget)]
    best = None
    for diag in trials:
        r = _rank_with_diagonal(C, diag)
        if best is None or r < best[0] or (r == best[0] and diag < best[1]):
            best = (r, diag)
            if r == 0:
                break
    return MinEntanglementResult(best[0], best[1], False)


def puncture_space(C: LinearCode) -> MatrixFq:
    """Solution space of sum_i b_i x_i y_i^q = 0 over all codeword pairs.

    The unknowns b live in the base subfield; each GF(q^2) equation on
    a pair of generator rows splits into prime-field components.  The
    code is equivalent to a Hermitian self-orthogonal code exactly when
    this space contains a vector with every coordinate nonzero.
    """
    field = C.field
    field._require_square()
    if field.s != 2:
        raise InvalidFieldError("puncture space implemented for GF(p^2) fields")
    base = field.base_subfield()
    rows = []
    G = C.G.array
    for r in range(C.k):
        for t in range(C.k):
            coeff = field.MUL[G[r], field.CONJ[G[t]]]
            digits = field.DIGITS[coeff]  # (n, 2) base-p components
            rows.append(digits[:, 0])
            rows.append(digits[:, 1])
    if not rows:
        return MatrixFq.identity(base, C.n)
    M = MatrixFq(base, np.array(rows, dtype=np.uint8))
    return M.kernel()


def find_all_nonzero_vector(
    space: MatrixFq,
    cap: int = DEFAULT_SPACE_CAP,
    seed: int = 0,
    budget: int = DEFAULT_SEARCH_BUDGET,
):
    """(found, vector, exhaustive) for an all-nonzero vector in a row space.

    Exhaustive scan while p^dim fits under the cap; otherwise a seeded
    sample, whose failure leaves the question open (found=False,
    exhaustive=False).
    """
    field = space.field
    dim, n = space.rows, space.cols
    if dim == 0:
        return False, None, True
    total = field.order**dim
    rows = space.array
    if total <= cap:
        for combo in itertools.product(range(field.order), repeat=dim):
            v = np.zeros(n, dtype=np.uint8)
            for cf, row in zip(combo, rows):
                v = field.ADD[v, field.MUL[cf, row]]
            if np.all(v != 0):
                return True, tuple(int(x) for x in v), True
        return False, None, True
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        combo = rng.integers(0, field.order, size=dim)
        v = np.zeros(n, dtype=np.uint8)
        for cf, row in zip(combo, rows):
            v = field.ADD[v, field.MUL[int(cf), row]]
        if np.all(v != 0):
            return True, tuple(int(x) for x in v), False
    return False, None, False


# --------------------------------------------------------------------------
# quantum-level rules
# --------------------------------------------------------------------------


@dataclass
class PropagationStep:
    """One derivation step with enough certificate data to replay it."""

    rule_id: str
    input_params: EaqeccParams | None
    output_params: EaqeccParams
    certificate: dict


def hull_reduce_step(C: LinearCode, ell_target: int) -> PropagationStep:
    scalars, out = hull_reduce_scalars(C, ell_target)
    return PropagationStep(
        "hull_reduce", None, None, {"input": C, "scalars": scalars, "output": out}
    )


def extend_column_step(
    C: LinearCode,
    column=None,
    position: int = 0,
    alpha=None,
    rng=None,
    search: bool = False,
    seed: int = 0,
) -> PropagationStep:
    if search:
        out, col = _extend_column_search_with_cert(C, seed, 8, 10**6, 10**5)
    else:
        out, col = _extend_column_with_cert(C, column, position, alpha, rng)
    cert = {"input": C, "column": tuple(int(v) for v in col), "output": out}
    return PropagationStep("extend_column", None, None, cert)


def extend_row_column_step(C: LinearCode, word) -> PropagationStep:
    out = extend_row_column(C, word)
    cert = {"input": C, "word": tuple(int(v) for v in word), "output": out}
    return PropagationStep("extend_row_column", None, None, cert)


def min_entanglement_search_step(C: LinearCode, **kw) -> PropagationStep:
    res = min_entanglement_search(C, **kw)
    cert = {
        "input": C,
        "diagonal": res.diagonal,
        "c_min": res.c_min,
        "mode": kw.get("mode", "exhaustive"),
        "seed": kw.get("seed", 0),
        "budget": kw.get("budget", DEFAULT_SEARCH_BUDGET),
        "cap": kw.get("cap", DEFAULT_SPACE_CAP),
    }
    return PropagationStep("min_ent_search", None, None, cert)


def _require_hermitian_ingredient(Q: EaqeccParams) -> LinearCode:
    if Q.route != "hermitian" or not isinstance(Q.ingredient, LinearCode):
        raise PreconditionError("this rule needs a Hermitian-construction input with its code")
    return Q.ingredient


def _require_pure(Q: EaqeccParams):
    if not Q.is_pure_at_delta():
        raise PreconditionError("this rule needs a pure input code")


def more_entanglement_step(Q: EaqeccParams, i: int, verify_cap: int = 10**6) -> PropagationStep:
    """[[n, kappa+i, delta; c+i]], pure to distance delta, for 1 <= i <= hull dim.

    Trades hull dimensions of the ingredient for extra ebits via column
    scaling; n, delta and the net rate are untouched.
    """
    C = _require_hermitian_ingredient(Q)
    _require_pure(Q)
    if C.field.subfield_order <= 2:
        raise InvalidFieldError("more-entanglement rule needs q > 2")
    ell = C.hull_dim
    if not 1 <= i <= ell:
        raise PreconditionError(f"shift i={i} not in [1, {ell}]")
    scalars, C2 = hull_reduce_scalars(C, ell - i)
    out = EaqeccParams(
        q=Q.q,
        n=Q.n,
        kappa=Q.kappa + i,
        delta=Q.delta,
        c=Q.c + i,
        purity=f"pure_to:{Q.delta.value}",
        provenance=Q.provenance + (f"more_ent(i={i})",),
        route="hermitian",
        ingredient=C2,
    )
    if C.field.order ** C2.hermitian_dual().k <= verify_cap:
        fresh = hermitian_construct(C2)
        assert (fresh.n, fresh.kappa, fresh.c) == (out.n, out.kappa, out.c)
        assert fresh.delta.value >= Q.delta.value
    _gate(out)
    return PropagationStep("more_ent", Q, out, {"i": i, "scalars": scalars, "code": C2})


def same_entanglement_step(
    Q: EaqeccParams,
    search: bool = False,
    seed: int = 0,
    enum_cap: int = dist.DEFAULT_ENUM_CAP,
    work_budget: int = CONSTRUCT_WORK_BUDGET,
) -> PropagationStep:
    """[[n+1, kappa-1, delta'; c]] with delta <= delta' <= delta + 1.

    Applies the column extension to the Hermitian dual of the ingredient
    and reconstructs; the ebit count survives unchanged.
    """
    C = _require_hermitian_ingredient(Q)
    _require_pure(Q)
    if Q.kappa <= 0 or Q.c <= 0:
        raise PreconditionError("same-entanglement rule needs kappa > 0 and c > 0")
    E = C.hermitian_dual()
    if not E.hull_dim < min(E.k, E.n - E.k):
        raise RuleNotApplicableError("dual code sits at the hull boundary; extension undefined")
    E2 = extend_column_search(E, seed=seed) if search else extend_column(E)
    C2 = E2.hermitian_dual()
    out = hermitian_construct(C2, enum_cap=enum_cap, work_budget=work_budget)
    out = _rechain(out, Q, f"same_ent(search={search}, seed={seed})", C2)
    assert (out.n, out.kappa, out.c) == (Q.n + 1, Q.kappa - 1, Q.c)
    if out.delta.exact and Q.delta.exact:
        assert Q.delta.value <= out.delta.value <= Q.delta.value + 1
    cert = {"code": E2, "search": int(search), "seed": seed,
            "enum_cap": enum_cap, "work_budget": work_budget}
    return PropagationStep("same_ent", Q, out, cert)


def less_entanglement_step(
    Q: EaqeccParams,
    word=None,
    strategy: str = "exhaustive",
    seed: int = 0,
    budget: int = DEFAULT_SEARCH_BUDGET,
    enum_cap: int = dist.DEFAULT_ENUM_CAP,
    work_budget: int = CONSTRUCT_WORK_BUDGET,
) -> PropagationStep:
    """[[n+1, kappa, delta'; c-1]] with delta' <= delta.

    Extends the dual side by one row and column built on a codeword of
    the ingredient outside its hull with nonzero self-product.  With no
    explicit word, candidates are scanned (exhaustively or by seeded
    sampling) to maximize the resulting distance.
    """
    C = _require_hermitian_ingredient(Q)
    _require_pure(Q)
    if Q.c < 1:
        raise PreconditionError("less-entanglement rule needs c >= 1")
    E = C.hermitian_dual()
    if not E.hull_dim < min(E.k, E.n - E.k):
        raise RuleNotApplicableError("dual code sits at the hull boundary; extension undefined")
    if word is None:
        word = _pick_extension_word(C, E, strategy, seed, budget, enum_cap)
    word = np.asarray(word, dtype=np.uint8)
    E2 = extend_row_column(E, word)
    C2 = E2.hermitian_dual()
    out = hermitian_construct(C2, enum_cap=enum_cap, work_budget=work_budget)
    out = _rechain(out, Q, f"less_ent(strategy={strategy})", C2)
    assert (out.n, out.kappa, out.c) == (Q.n + 1, Q.kappa, Q.c - 1)
    if out.delta.exact and Q.delta.exact:
        assert out.delta.value <= Q.delta.value
    cert = {"word": tuple(int(v) for v in word), "code": E2,
            "enum_cap": enum_cap, "work_budget": work_budget}
    return PropagationStep("less_ent", Q, out, cert)


def _pick_extension_word(C, E, strategy, seed, budget, enum_cap):
    """Qualifying word of C \\ hull maximizing min(d(E), d0 + 1)."""
    field = C.field
    hull = C.hull_code()
    d_e = E.min_distance(enum_cap=enum_cap).value

    def score(w):
        stacked = LinearCode(field, np.vstack([E.G.array, w[None, :]]))
        d0 = stacked.min_distance(enum_cap=enum_cap).value
        return min(d_e, d0 + 1)

    def qualifies(w):
        return (
            not hull.contains_vector(w)
            and hermitian_self_product(field, w) != 0
        )

    best = None
    if strategy == "exhaustive":
        if field.order**C.k > budget * (field.order - 1):
            raise BudgetError("exhaustive word scan exceeds budget; use strategy='sampled'")
        for w in _scalar_class_words(field, C.G.array):
            if not qualifies(w):
                continue
            sc = score(w)
            if best is None or sc > best[0]:
                best = (sc, w)
                if sc == d_e:
                    break
    elif strategy == "sampled":
        rng = np.random.default_rng(seed)
        for _ in range(budget):
            msg = rng.integers(0, field.order, size=C.k, dtype=np.uint8)
            if not msg.any():
                continue
            w = gf_matmul(msg[None, :], C.G.array, field)[0]
            if not qualifies(w):
                continue
            sc = score(w)
            if best is None or sc > best[0]:
                best = (sc, w)
                if sc == d_e:
                    break
    else:
        raise PreconditionError(f"unknown strategy {strategy!r}")
    if best is None:
        raise RuleNotApplicableError("no qualifying codeword found")
    return best[1]


def _scalar_class_words(field, rows):
    """One representative per scalar class of the span, lexicographic messages."""
    k = rows.shape[0]
    for lead in range(k):
        free = range(lead + 1, k)
        for combo in itertools.product(range(field.order), repeat=k - lead - 1):
            w = rows[lead].copy()
            for cf, r in zip(combo, free):
                w = field.ADD[w, field.MUL[cf, rows[r]]]
            yield w


def _rechain(out: EaqeccParams, Q: EaqeccParams, label: str, ingredient) -> EaqeccParams:
    return EaqeccParams(
        q=out.q,
        n=out.n,
        kappa=out.kappa,
        delta=out.delta,
        c=out.c,
        purity=out.purity,
        provenance=Q.provenance + (label,),
        route=out.route,
        ingredient=ingredient if isinstance(ingredient, LinearCode) else out.ingredient,
    )


def more_entanglement(Q: EaqeccParams, i: int, **kw) -> EaqeccParams:
    return more_entanglement_step(Q, i, **kw).output_params


def same_entanglement(Q: EaqeccParams, **kw) -> EaqeccParams:
    return same_entanglement_step(Q, **kw).output_params


def less_entanglement(Q: EaqeccParams, **kw) -> EaqeccParams:
    return less_entanglement_step(Q, **kw).output_params


# --------------------------------------------------------------------------
# the eight single-step parameter rules
# --------------------------------------------------------------------------

SIMPLE_RULE_NAMES = {
    1: "length extension",
    2: "subcode",
    3: "smaller distance",
    4: "more entanglement",
    5: "puncturing",
    6: "dimension up via extra entanglement",
    7: "length down via extra entanglement",
    8: "shortening a pure code",
}

RULES_NEEDING_PURITY = frozenset({6, 8})


def simple_rule_applicable(rule, q, n, kappa, delta, c, pure):
    """(ok, reason) for one rule on plain parameters."""
    if rule == 1:
        return True, ""
    if rule == 2:
        return (kappa >= 1, "needs kappa >= 1")
    if rule == 3:
        return (delta >= 2, "needs delta >= 2")
    if rule == 4:
        return (c + 1 <= n - kappa, "needs c + 1 <= n - kappa")
    if rule == 5:
        if delta < 2:
            return False, "needs delta > 1"
        return (c < n - kappa, "needs c < n - kappa")
    if rule == 6:
        if not pure:
            return False, "needs a pure input"
        if q <= 2:
            return False, "needs q > 2"
        return (c <= n - kappa - 2, "needs c <= n - kappa - 2")
    if rule == 7:
        return (c <= n - kappa - 2, "needs c <= n - kappa - 2")
    if rule == 8:
        if not pure:
            return False, "needs a pure input"
        if delta < 2:
            return False, "needs delta >= 2"
        return (c <= n - kappa - 2, "output needs c <= (n-1) - (kappa+1)")
    raise PreconditionError(f"unknown rule {rule}")


def simple_rule_transform(rule, n, kappa, delta, c):
    if rule == 1:
        return n + 1, kappa, delta, c
    if rule == 2:
        return n, kappa - 1, delta, c
    if rule == 3:
        return n, kappa, delta - 1, c
    if rule == 4:
        return n, kappa, delta, c + 1
    if rule == 5:
        return n - 1, kappa, delta - 1, c
    if rule == 6:
        return n, kappa + 1, delta, c + 1
    if rule == 7:
        return n - 1, kappa, delta, c + 1
    if rule == 8:
        return n - 1, kappa + 1, delta - 1, c
    raise PreconditionError(f"unknown rule {rule}")


def simple_rule_output_purity(rule, delta):
    return f"pure_to:{delta}" if rule == 6 else "unknown"


def apply_simple_rule(Q: EaqeccParams, rule: int) -> EaqeccParams:
    """The printed single-step transform, with its side conditions enforced."""
    ok, reason = simple_rule_applicable(
        rule, Q.q, Q.n, Q.kappa, Q.delta.value, Q.c, Q.is_pure_at_delta()
    )
    if not ok:
        raise RuleNotApplicableError(f"rule {rule} ({SIMPLE_RULE_NAMES[rule]}): {reason}")
    n2, k2, d2, c2 = simple_rule_transform(rule, Q.n, Q.kappa, Q.delta.value, Q.c)
    out = EaqeccParams(
        q=Q.q,
        n=n2,
        kappa=k2,
        delta=DistanceFact(d2, "exact", "propagation"),
        c=c2,
        purity=simple_rule_output_purity(rule, d2),
        provenance=Q.provenance + (f"rule{rule}",),
    )
    _gate(out)
    return out


def apply_simple_rule_step(Q: EaqeccParams, rule: int) -> PropagationStep:
    out = apply_simple_rule(Q, rule)
    return PropagationStep(f"simple_{rule}", Q, out, {"rule": rule})


def _gate(params: EaqeccParams):
    from . import bounds

    report = bounds.check_all(params)
    if not report.ok:
        raise EaqeccError(
            f"derived parameters {params} violate bounds: "
            + "; ".join(e.bound_id for e in report.violations)
        )


# --------------------------------------------------------------------------
# step replay and serialization
# --------------------------------------------------------------------------


def replay_step(step: PropagationStep):
    """Re-derive the output from the certificate; raises on any mismatch.

    Quantum steps return the recomputed EaqeccParams, classical steps
    the recomputed LinearCode.
    """
    rid = step.rule_id
    if rid in ("hull_reduce", "extend_column", "extend_row_column"):
        cert = step.certificate
        C = cert["input"]
        if rid == "hull_reduce":
            got = C.scale_columns(cert["scalars"])
        elif rid == "extend_column":
            got = extend_with_column(C, np.asarray(cert["column"], dtype=np.uint8))
        else:
            got = extend_row_column(C, np.asarray(cert["word"], dtype=np.uint8))
        if got != cert["output"]:
            raise EaqeccError(f"replay mismatch for {rid}: derived code differs")
        return got
    if rid == "min_ent_search":
        cert = step.certificate
        res = min_entanglement_search(
            cert["input"], mode=cert["mode"], seed=cert["seed"],
            budget=cert["budget"], cap=cert["cap"],
        )
        if (res.c_min, res.diagonal) != (cert["c_min"], tuple(cert["diagonal"])):
            raise EaqeccError("replay mismatch for min_ent_search")
        return res
    if rid.startswith("simple_"):
        out = apply_simple_rule(step.input_params, step.certificate["rule"])
    elif rid == "more_ent":
        C2 = step.certificate["code"]
        Q = step.input_params
        i = step.certificate["i"]
        # ingredient shape recoverable from the recorded parameters alone
        k_in = (Q.n - Q.kappa + Q.c) // 2
        ell_in = k_in - Q.c
        if (C2.n, C2.k) != (Q.n, k_in) or C2.hull_dim != ell_in - i:
            raise EaqeccError("certificate code does not match the recorded step")
        out = EaqeccParams(
            q=Q.q,
            n=Q.n,
            kappa=Q.kappa + i,
            delta=Q.delta,
            c=Q.c + i,
            purity=f"pure_to:{Q.delta.value}",
            provenance=Q.provenance + (f"more_ent(i={i})",),
            route="hermitian",
            ingredient=C2,
        )
    elif rid in ("same_ent", "less_ent"):
        E2 = step.certificate["code"]
        out = hermitian_construct(
            E2.hermitian_dual(),
            enum_cap=step.certificate.get("enum_cap", dist.DEFAULT_ENUM_CAP),
            work_budget=step.certificate.get("work_budget", CONSTRUCT_WORK_BUDGET),
        )
        out = _rechain(out, step.input_params, rid, E2.hermitian_dual())
    else:
        raise PreconditionError(f"cannot replay rule {rid}")
    got = _step_values(out)
    want = _step_values(step.output_params)
    if got != want:
        raise EaqeccError(f"replay mismatch: recomputed {got}, recorded {want}")
    return out


def _step_values(p: EaqeccParams):
    return (p.q, p.n, p.kappa, p.delta.value, p.c, p.purity)


def step_to_text(step: PropagationStep) -> str:
    lines = [f"#v1 step rule={step.rule_id}"]
    for tag, params in (("input", step.input_params), ("output", step.output_params)):
        if params is None:
            lines.append(f"{tag} none")
        else:
            lines.append(f"{tag} {params.record_line()}")
    for name, val in sorted(step.certificate.items()):
        if isinstance(val, LinearCode):
            flat = " ".join(str(int(v)) for v in val.G.array.ravel())
            lines.append(
                f"cert {name} code {val.field.order} {val.k} {val.n} {flat}".rstrip()
            )
        elif isinstance(val, MatrixFq):
            flat = " ".join(str(int(v)) for v in val.array.ravel())
            lines.append(
                f"cert {name} matrix {val.field.order} {val.rows} {val.cols} {flat}".rstrip()
            )
        elif isinstance(val, tuple):
            lines.append(f"cert {name} vector " + " ".join(str(int(v)) for v in val))
        elif isinstance(val, (int, np.integer)):
            lines.append(f"cert {name} int {int(val)}")
        else:
            lines.append(f"cert {name} str {val}")
    return "\n".join(lines) + "\n"


def step_from_text(text: str, field_hint=None) -> PropagationStep:
    from .errors import RecordParseError
    from .tables import CodeRecord

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#v1 step rule="):
        raise RecordParseError("missing step header", 1)
    rule_id = lines[0].split("rule=", 1)[1]

    def parse_params(ln, no):
        body = ln.split(None, 1)[1]
        if body == "none":
            return None
        rec = CodeRecord.from_line(body, no)
        return rec.to_params()

    input_params = parse_params(lines[1], 2)
    output_params = parse_params(lines[2], 3)
    cert = {}
    for no, ln in enumerate(lines[3:], start=4):
        parts = ln.split()
        if parts[0] != "cert":
            raise RecordParseError(f"expected cert line, got {ln!r}", no)
        name, kind = parts[1], parts[2]
        if kind in ("code", "matrix"):
            q, rows, cols = int(parts[3]), int(parts[4]), int(parts[5])
            vals = np.array([int(v) for v in parts[6:]], dtype=np.uint8).reshape(rows, cols)
            M = MatrixFq(GF(q), vals)
            cert[name] = LinearCode(GF(q), M) if kind == "code" else M
        elif kind == "vector":
            cert[name] = tuple(int(v) for v in parts[3:])
        elif kind == "int":
            cert[name] = int(parts[3])
        else:
            cert[name] = " ".join(parts[3:])
    return PropagationStep(rule_id, input_params, output_params, cert)
