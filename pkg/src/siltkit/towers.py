"""Triangle towers against add(T), with per-step membership certificates.

A co-resolving tower starts at X_0 and extends by triangles

    X_i --f--> M_i --> X_{i+1} --> X_i[1],      M_i in add(T),

where f is a left add(T)-approximation and X_{i+1} = cone(f).  A
resolving tower is the mirror: X_{i+1} -> M_i --f--> X_i with f a right
approximation and X_{i+1} = cone(f)[-1].  Every recorded term carries a
certificate: the orthogonality conditions against T that were actually
computed (with the exact range when the computation is provably
complete), and containment of its cohomology in a prescribed interval.

The builder is canonical but greedy: terms are minimized, summands
already in add(T) are split off and dropped (sound, since the classes
in play are closed under direct summands), and the tower halts when a
term vanishes or lands in add(T) outright.  A certificate that cannot
be established stops the tower; deciding what that means for the
membership question is the caller's job, not ours.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .approx import AddTarget, left_approximation, right_approximation
from .complexes import (ProjComplex, WindowError, cone, direct_sum, shift)
from .decompose import indecomposable_summands
from .homs import hom_dim
from .minimize import is_isomorphic, minimize

CORESOLVING = "coresolving"
RESOLVING = "resolving"


def homology_range(X: ProjComplex):
    """(hmin, hmax) of the full object, or None when it is acyclic."""
    if not X.window_ok:
        raise WindowError("homology range needs a window-complete complex")
    hmax = X.max_homology_degree()
    if hmax is None:
        return None
    return X.min_homology_degree(), hmax


@dataclass
class OrthCert:
    """Hom(X, T[k]) = 0 (or Hom(T, X[k]) = 0) over the checked k."""

    ok: bool
    checked: list
    skipped: list
    exact: bool
    witness: tuple | None = None  # (k, dim) of a nonzero hom space


@dataclass
class WindowCert:
    """Cohomology containment in a closed interval."""

    ok: bool
    interval: tuple
    exact: bool
    witness: int | None = None  # an offending degree


@dataclass
class TermCert:
    orth: OrthCert | None
    window: WindowCert | None

    @property
    def ok(self) -> bool:
        return ((self.orth is None or self.orth.ok)
                and (self.window is None or self.window.ok))

    @property
    def exact(self) -> bool:
        return ((self.orth is None or self.orth.exact)
                and (self.window is None or self.window.exact))


@dataclass
class TowerStep:
    index: int
    term: ProjComplex
    cert: TermCert | None
    discarded: int          # summands split off into add(T)
    used: list | None       # target part index per approximation component
    halt: str | None        # "zero" | "add-target" | None


@dataclass
class Tower:
    side: str
    interval: tuple | None
    depth: int
    steps: list = field(default_factory=list)
    outcome: str = "exhausted"   # "terminated" | "exhausted" | "failed"
    fail_step: int | None = None

    @property
    def all_exact(self) -> bool:
        return all(s.cert is None or s.cert.exact for s in self.steps)

    @property
    def halt_step(self) -> int | None:
        for s in self.steps:
            if s.halt is not None:
                return s.index
        return None


def orth_certificate(X: ProjComplex, T: ProjComplex, side: str,
                     bound: int) -> OrthCert:
    """Certify the positive-shift orthogonality of a tower term.

    Co-resolving towers need Hom(X, T[k]) = 0 for all k > 0, resolving
    towers Hom(T, X[k]) = 0.  Degrees where both homology windows make
    the space vanish for free are not computed.  The certificate is
    exact when the computed degrees provably cover everything nonzero;
    with a truncated complex on either side only k <= bound is
    attempted and the result stays a bounded statement.
    """
    if side == CORESOLVING:
        src, tgt = X, T
    else:
        src, tgt = T, X
    hr_src = homology_range(src)
    hr_tgt = homology_range(tgt)
    if hr_src is None or hr_tgt is None:
        # a contractible end makes every hom space vanish
        return OrthCert(True, [], [], True)
    # Hom(src, tgt[k]) = 0 outright when the target's lowest cohomology
    # sits above the source's highest: k < hmin(tgt) - hmax(src).
    kmin = max(1, hr_tgt[0] - hr_src[1])
    if src.genuine and tgt.genuine:
        kmax = tgt.hi - src.lo   # no chain maps or homotopies past this
        exact = True
    else:
        kmax = bound
        exact = False
    checked, skipped = [], []
    for k in range(kmin, kmax + 1):
        try:
            d = hom_dim(src, tgt, k)
        except WindowError:
            skipped.append(k)
            exact = False
            continue
        checked.append(k)
        if d:
            return OrthCert(False, checked, skipped, exact, witness=(k, d))
    return OrthCert(True, checked, skipped, exact)


def window_certificate(X: ProjComplex, interval) -> WindowCert:
    """Certify H^j(X) = 0 outside [a, b]; exact for window-complete X."""
    a, b = interval
    if not X.window_ok:
        return WindowCert(False, (a, b), False)
    for j in X.computable_homology_degrees():
        if a <= j <= b:
            continue
        if any(X.homology(j)):
            return WindowCert(False, (a, b), True, witness=j)
    # below the computable range the window promise already gives zero,
    # so for a window-complete complex this check is complete
    return WindowCert(True, (a, b), True)


def _certify(X: ProjComplex, target: AddTarget, side: str, interval,
             bound: int) -> TermCert:
    orth = orth_certificate(X, target.total, side, bound)
    window = window_certificate(X, interval) if interval is not None else None
    return TermCert(orth, window)


def _discard_add_summands(X: ProjComplex, target: AddTarget, seed: int):
    """Split off summands isomorphic to target parts.

    Returns (residual or None, count dropped).  Only meaningful when
    both sides are genuine; the caller guards that.
    """
    groups, _ = indecomposable_summands(X, seed=seed)
    kept, dropped = [], 0
    for g, cnt in groups:
        if any(p.genuine and is_isomorphic(g, p, seed=seed)[0]
               for p in target.parts):
            dropped += cnt
        else:
            kept.extend([g] * cnt)
    if not kept:
        return None, dropped
    if dropped == 0:
        return X, 0
    return direct_sum(kept), dropped


def build_tower(X0: ProjComplex, target: AddTarget, side: str,
                interval, depth: int, certify: bool = True,
                seed: int = 0) -> Tower:
    """Extend the canonical tower from X0 for up to ``depth`` triangles."""
    if side not in (CORESOLVING, RESOLVING):
        raise ValueError(f"unknown tower side {side!r}")
    tower = Tower(side, tuple(interval) if interval is not None else None,
                  depth)
    X = X0
    for i in range(depth + 1):
        X = minimize(X)
        if X.is_structurally_zero() and X.window_ok:
            tower.steps.append(TowerStep(i, X, None, 0, None, "zero"))
            tower.outcome = "terminated"
            return tower
        cert = None
        if certify:
            cert = _certify(X, target, side, interval, depth)
            if not cert.ok:
                tower.steps.append(TowerStep(i, X, cert, 0, None, None))
                tower.outcome = "failed"
                tower.fail_step = i
                return tower
        work = X
        dropped = 0
        if X.genuine and target.parts and all(p.genuine for p in target.parts):
            work, dropped = _discard_add_summands(X, target, seed)
            if work is None:
                tower.steps.append(TowerStep(i, X, cert, dropped, None,
                                             "add-target"))
                tower.outcome = "terminated"
                return tower
        if i == depth:
            tower.steps.append(TowerStep(i, X, cert, dropped, None, None))
            return tower
        if side == CORESOLVING:
            _, f, used = left_approximation(work, target)
            nxt = cone(f)
        else:
            _, f, used = right_approximation(work, target)
            nxt = shift(cone(f), -1)
        tower.steps.append(TowerStep(i, X, cert, dropped, used, None))
        X = nxt
    return tower
