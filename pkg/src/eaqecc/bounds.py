"""Singleton- and Griesmer-type upper bounds on [[n, kappa, delta; c]]_q.

All comparisons are exact integer arithmetic (rational bounds get
cross-multiplied, halves get doubled away).  Each check reports
applicability with a reason, a satisfied flag, an integer slack, and
whether the bound is met with equality.

Bound ids:
    S1  kappa <= c + max(0, n - 2*delta + 2)
    S2  kappa <= n - delta + 1
    S3  kappa <= (n-delta+1)(c+2*delta-2-n) / (3*delta-3-n),
        evaluated only when delta - 1 >= n/2 and the denominator is positive
    P   2*delta <= n + c - kappa + 2   (pure codes; also both construction routes)
    GH  (n+kappa+c)/2 >= sum_{i<kappa} ceil(delta / q^(2i))   (Hermitian route)
    GC  (n+kappa+c)/2 >= sum_{i<kappa} ceil(delta / q^i)      (CSS route)
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BoundCheck:
    bound_id: str
    applicable: bool
    reason: str
    satisfied: bool | None = None
    slack: int | None = None

    @property
    def tight(self) -> bool:
        return bool(self.satisfied) and self.slack == 0

    def line(self) -> str:
        if not self.applicable:
            return f"{self.bound_id}: not applicable ({self.reason})"
        mark = "ok" if self.satisfied else "VIOLATED"
        extra = " tight" if self.tight else ""
        return f"{self.bound_id}: {mark} slack={self.slack}{extra}"


@dataclass(frozen=True)
class BoundReport:
    entries: tuple

    @property
    def ok(self) -> bool:
        return all(e.satisfied for e in self.entries if e.applicable)

    @property
    def violations(self):
        return [e for e in self.entries if e.applicable and e.satisfied is False]

    def entry(self, bound_id: str) -> BoundCheck:
        for e in self.entries:
            if e.bound_id == bound_id:
                return e
        raise KeyError(bound_id)

    def lines(self):
        return [e.line() for e in self.entries]


def _fields(params):
    return params.q, params.n, params.kappa, params.delta.value, params.c


def check_singleton(params) -> list:
    """S1 and S2 always; S3 only in its stated large-distance regime."""
    _, n, kappa, delta, c = _fields(params)
    rhs1 = c + max(0, n - 2 * delta + 2)
    s1 = BoundCheck("S1", True, "", kappa <= rhs1, rhs1 - kappa)
    rhs2 = n - delta + 1
    s2 = BoundCheck("S2", True, "", kappa <= rhs2, rhs2 - kappa)
    den = 3 * delta - 3 - n
    if 2 * (delta - 1) < n:
        s3 = BoundCheck("S3", False, "needs delta-1 >= n/2")
    elif den <= 0:
        s3 = BoundCheck("S3", False, "denominator 3*delta-3-n not positive")
    else:
        num = (n - delta + 1) * (c + 2 * delta - 2 - n)
        ok = kappa * den <= num
        slack = num // den - kappa
        s3 = BoundCheck("S3", True, "", ok, slack)
    return [s1, s2, s3]


def check_pure_bound(params, assume_route=None) -> list:
    """2*delta <= n + c - kappa + 2 for pure codes and both routes."""
    _, n, kappa, delta, c = _fields(params)
    route = params.route or assume_route
    if params.is_pure_at_delta():
        reason = ""
    elif route in ("hermitian", "css"):
        reason = "" if params.route else "route assumed"
    else:
        return [BoundCheck("P", False, "needs purity or a construction route")]
    slack = n + c - kappa + 2 - 2 * delta
    return [BoundCheck("P", True, reason, slack >= 0, slack)]


def check_griesmer(params, assume_route=None) -> list:
    """Route-specific Griesmer sum; doubled to stay in integers."""
    q, n, kappa, delta, c = _fields(params)
    route = params.route or assume_route
    if route == "hermitian":
        bound_id, step = "GH", 2
    elif route == "css":
        bound_id, step = "GC", 1
    else:
        return [BoundCheck("GH", False, "no construction route known")]
    reason = "" if params.route else "route assumed"
    total = 0
    for i in range(kappa):
        m = q ** (step * i)
        total += -(-delta // m)
    slack = (n + kappa + c) - 2 * total
    return [BoundCheck(bound_id, True, reason, slack >= 0, slack)]


def check_all(params, assume_route=None) -> BoundReport:
    """Aggregate report; a record is bound-consistent iff report.ok."""
    entries = (
        check_singleton(params)
        + check_pure_bound(params, assume_route)
        + check_griesmer(params, assume_route)
    )
    return BoundReport(tuple(entries))
