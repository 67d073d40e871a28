"""The level-zero weight poset on the affine orbit of a dominant weight.

Elements w(lambda) + n*delta are stored as (coset id, n).  The order is the
transitive closure of mu < r_beta(mu) whenever the positive affine root beta
pairs positively with mu; ascending chains never increase n, so reachability
inside an n-window is exact for pairs inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .affine import AffineRoot
from .qbg import BRUHAT, QUANTUM, GraphInvariantError, QbgGraph, build_qbg
from .root_system import Coroot, Root, is_positive_vec, neg_vec
from .weyl import WeylElement, WeylGroup


class InconclusiveWindow(RuntimeError):
    """The requested query cannot be certified inside the given window."""


@dataclass(frozen=True)
class LevelZeroWeight:
    """The orbit element w(lambda) + n*delta, by coset id and delta part."""

    w: int
    n: int


@dataclass(frozen=True)
class PosetCover:
    lower: LevelZeroWeight
    upper: LevelZeroWeight
    label: AffineRoot
    kind: str


class LevelZeroPoset:
    """Order queries and cover relations for one weight orbit.

    ``lam`` is given over the fundamental weights; it must be dominant
    (all entries >= 0) or antidominant (all <= 0) and nonzero.  Cover
    computation through the graph is only offered for dominant ``lam``.
    """

    def __init__(self, W: WeylGroup, lam: tuple[int, ...]):
        rs = W.rs
        if len(lam) != rs.rank:
            raise ValueError("lambda has the wrong rank")
        if all(c == 0 for c in lam):
            raise ValueError("lambda must be nonzero (stabilizer would be all of W)")
        if not (all(c >= 0 for c in lam) or all(c <= 0 for c in lam)):
            raise ValueError("lambda must be dominant or antidominant")
        self.W = W
        self.rs = rs
        self.lam = tuple(lam)
        self.dominant = all(c >= 0 for c in lam)
        self.J = rs.parabolic(i + 1 for i, c in enumerate(lam) if c == 0)
        self.d = gcd(*(abs(c) for c in lam))
        self.graph: QbgGraph = build_qbg(W, self.J)
        self._closure_cache: dict[int, dict[LevelZeroWeight, set[LevelZeroWeight]]] = {}
        self._hasse_cache: dict[int, dict[LevelZeroWeight, list[PosetCover]]] = {}

    # -- pairings ------------------------------------------------------------

    def pair(self, coroot: Coroot, w: int) -> int:
        """<coroot, w(lambda)>, computed through w^{-1}."""
        moved = self.W.element(w).inverse().act_coroot(coroot)
        return sum(c * v for c, v in zip(moved, self.lam))

    def cl(self, mu: LevelZeroWeight) -> WeylElement:
        return self.W.element(mu.w)

    def weight_coordinates(self, mu: LevelZeroWeight) -> tuple[int, ...]:
        """Coefficients of cl(mu) over the fundamental weights."""
        return tuple(
            self.pair(self.rs.simple_coroot(i), mu.w) for i in range(1, self.rs.rank + 1)
        )

    # -- generating steps -----------------------------------------------------

    def raising_steps(self, mu: LevelZeroWeight, n_min: int):
        """All r_beta(mu) > mu with the new delta part at least n_min.

        beta runs over the positive affine roots with positive pairing
        against mu; ascending steps have n' <= n so the bound is exhaustive.
        """
        rs = self.rs
        out = []
        for alpha in rs.positive_roots:
            for root in (alpha, neg_vec(alpha)):
                p = self.pair(rs.coroot(root), mu.w)
                if p <= 0:
                    continue
                target_w = self.W.min_coset_rep(
                    self.W.reflection(root) * self.cl(mu), self.J
                ).index
                k = 0 if is_positive_vec(root) else 1
                while mu.n - k * p >= n_min:
                    out.append(
                        (LevelZeroWeight(target_w, mu.n - k * p), AffineRoot(root, k))
                    )
                    k += 1
        return out

    # -- reachability inside a window ------------------------------------------

    def margin(self) -> int:
        """Window margin reserved for intermediate chain elements."""
        maxpair = max(
            abs(self.pair(self.rs.coroot(a), 0)) for a in self.rs.positive_roots
        )
        return len(self.rs.positive_roots) * maxpair

    def slice_elements(self, window: int) -> tuple[LevelZeroWeight, ...]:
        """All orbit elements with |n| <= window, in display order."""
        d = self.d
        return tuple(
            LevelZeroWeight(w, n)
            for w in self.graph.vertices
            for n in range(-(window // d) * d, window + 1, d)
        )

    def _closure(self, window: int) -> dict[LevelZeroWeight, set[LevelZeroWeight]]:
        cached = self._closure_cache.get(window)
        if cached is not None:
            return cached
        elems = self.slice_elements(window)
        succ = {
            mu: {nu for nu, _ in self.raising_steps(mu, -window)} for mu in elems
        }
        reach: dict[LevelZeroWeight, set[LevelZeroWeight]] = {}

        def visit(mu: LevelZeroWeight) -> set[LevelZeroWeight]:
            done = reach.get(mu)
            if done is not None:
                return done
            acc = set(succ[mu])
            reach[mu] = acc  # steps strictly decrease (n, length-order); no cycles
            for nu in succ[mu]:
                acc |= visit(nu)
            return acc

        for mu in elems:
            visit(mu)
        self._closure_cache[window] = reach
        return reach

    def certified(self, mu: LevelZeroWeight, window: int) -> bool:
        return abs(mu.n) <= window - self.margin()

    def leq(self, mu: LevelZeroWeight, nu: LevelZeroWeight, window: int) -> bool:
        """Brute-force order test; raises if the window cannot certify it."""
        if mu == nu:
            return True
        if not (self.certified(mu, window) and self.certified(nu, window)):
            raise InconclusiveWindow(
                f"window {window} too small (margin {self.margin()})"
            )
        return nu in self._closure(window)[mu]

    def hasse_covers(self, window: int) -> dict[LevelZeroWeight, list[PosetCover]]:
        """Covers of the brute-force order, for certified lower elements.

        A relation is a cover when no third element sits strictly between;
        every intermediate has its delta part between the endpoints', so the
        computation inside the window is exact.
        """
        cached = self._hasse_cache.get(window)
        if cached is not None:
            return cached
        reach = self._closure(window)
        out: dict[LevelZeroWeight, list[PosetCover]] = {}
        for mu in self.slice_elements(window):
            if not self.certified(mu, window):
                continue
            ups = reach[mu]
            covers = []
            for nu in ups:
                if any(nu in reach[rho] for rho in ups if rho != nu):
                    continue
                labels = [
                    beta for tgt, beta in self.raising_steps(mu, -window) if tgt == nu
                ]
                good = [
                    b
                    for b in labels
                    if (b.k == 0 and is_positive_vec(b.alpha))
                    or (b.k == 1 and not is_positive_vec(b.alpha))
                ]
                if not good:
                    raise GraphInvariantError(
                        f"cover {mu} < {nu} has no admissible label"
                    )
                for b in good:
                    kind = BRUHAT if b.k == 0 else QUANTUM
                    covers.append(PosetCover(mu, nu, b, kind))
            out[mu] = sorted(
                covers, key=lambda c: (c.upper.w, c.upper.n, c.label.k, c.label.alpha)
            )
        self._hasse_cache[window] = out
        return out

    # -- covers through the graph ------------------------------------------------

    def covers(self, mu: LevelZeroWeight) -> list[PosetCover]:
        """Graph-derived covers: one per graph edge out of cl(mu).

        A Bruhat edge with label gamma gives the cover by w(gamma) at the
        same delta part; a quantum edge gives the cover by w(gamma) + delta
        with the delta part dropped by <gamma^vee, lambda>.
        """
        if not self.dominant:
            raise ValueError("covers through the graph need a dominant weight")
        rs = self.rs
        w = self.cl(mu)
        out = []
        for edge in self.graph.out[mu.w]:
            wgamma = w.act(edge.label)
            if edge.kind == BRUHAT:
                if not is_positive_vec(wgamma):
                    raise GraphInvariantError("Bruhat edge moved the label negative")
                nu = LevelZeroWeight(edge.target, mu.n)
                label = AffineRoot(wgamma, 0)
            else:
                if is_positive_vec(wgamma):
                    raise GraphInvariantError("quantum edge kept the label positive")
                drop = sum(c * v for c, v in zip(rs.coroot(edge.label), self.lam))
                nu = LevelZeroWeight(edge.target, mu.n - drop)
                label = AffineRoot(wgamma, 1)
            out.append(PosetCover(mu, nu, label, edge.kind))
        return sorted(out, key=lambda c: (c.upper.w, c.upper.n, c.label.k))

    def reflect(self, mu: LevelZeroWeight, beta: AffineRoot) -> LevelZeroWeight:
        """r_beta applied to the orbit element."""
        p = self.pair(self.rs.coroot(beta.alpha), mu.w)
        target_w = self.W.min_coset_rep(
            self.W.reflection(beta.alpha) * self.cl(mu), self.J
        ).index
        return LevelZeroWeight(target_w, mu.n - beta.k * p)

    def affine_simple_pairing(self, i: int, mu: LevelZeroWeight) -> int:
        """<alpha_i^vee, mu> for an affine simple root index in 0..rank."""
        if i == 0:
            return -self.pair(self.rs.coroot(self.rs.theta), mu.w)
        return self.pair(self.rs.simple_coroot(i), mu.w)

    def affine_simple_root(self, i: int) -> AffineRoot:
        if i == 0:
            return AffineRoot(neg_vec(self.rs.theta), 1)
        n = self.rs.rank
        return AffineRoot(tuple(1 if j == i - 1 else 0 for j in range(n)), 0)

    # -- distance ----------------------------------------------------------------

    def dist(self, mu: LevelZeroWeight, nu: LevelZeroWeight, window: int) -> int:
        """Maximum chain length from mu to nu, over the certified window."""
        if not self.leq(mu, nu, window):
            raise ValueError("dist requires mu <= nu")
        reach = self._closure(window)
        interval = {nu} | {rho for rho in reach[mu] if nu in reach[rho] or rho == nu}
        interval.add(mu)
        covers = self.hasse_covers(window)
        memo: dict[LevelZeroWeight, int] = {nu: 0}

        def longest(rho: LevelZeroWeight) -> int:
            got = memo.get(rho)
            if got is not None:
                return got
            uppers = {c.upper for c in covers[rho] if c.upper in interval}
            best = max(longest(up) + 1 for up in uppers)
            memo[rho] = best
            return best

        return longest(mu)
