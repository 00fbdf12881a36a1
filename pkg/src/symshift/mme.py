"""Measures of maximal entropy: Parry models and the S-gap recursion.

Two independent routes exist for S-gap shifts: a memoized recursion driven
by the synchronization identity mu(1 z 1) = mu(1) t^(|z|+1), which also
produces an integer certificate (k, f) with mu(w) = k + mu(1) f(t), and a
Parry model on the gap-counter Markov chain.  The two must agree; the test
suite enforces it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import subshifts as S
from . import words as W
from .errors import InvalidWordError, ReduciblePresentationError

# ---------------------------------------------------------------------------
# Parry model for irreducible block presentations


@dataclass(frozen=True, eq=False)
class ParryModel:
    automaton: S.Automaton
    lam: float
    right_vec: np.ndarray
    left_vec: np.ndarray
    stationary: np.ndarray
    transition: np.ndarray

    def state_probability(self, state_word) -> float:
        i = self.automaton.index.get(state_word)
        return 0.0 if i is None else float(self.stationary[i])


def parry(spec) -> ParryModel:
    """Markov measure of maximal entropy from Perron eigen-data."""
    aut = S.build_automaton(spec)
    if not aut.irreducible:
        raise ReduciblePresentationError(f"{S.describe(spec)}: presentation is reducible")
    A = aut.adjacency()
    lam, r = S.perron_value(A)
    _, l = S.perron_value(A.T)
    stationary = l * r
    stationary /= stationary.sum()
    n = len(r)
    P = np.zeros_like(A)
    for i in range(n):
        for j in range(n):
            if A[i, j] > 0:
                P[i, j] = A[i, j] * r[j] / (lam * r[i])
    if abs(stationary.sum() - 1.0) > 1e-12:
        raise ArithmeticError("stationary vector does not normalize")
    if np.max(np.abs(stationary @ P - stationary)) > 1e-12:
        raise ArithmeticError("stationary vector is not invariant")
    return ParryModel(
        automaton=aut,
        lam=lam,
        right_vec=r,
        left_vec=l,
        stationary=stationary,
        transition=P,
    )


def mu_parry(model: ParryModel, w) -> float:
    """Cylinder measure of a word under the Parry model; 0 off the language."""
    aut = model.automaton
    m = aut.memory
    n = len(w)
    if n <= m:
        return float(
            sum(model.stationary[i] for i, q in enumerate(aut.states) if q[:n] == w)
        )
    i = aut.index.get(w[:m])
    if i is None:
        return 0.0
    prob = float(model.stationary[i])
    for k in range(m, n):
        j = aut.delta(i, w[k])
        if j is None:
            return 0.0
        prob *= float(model.transition[i, j])
        i = j
    return prob


# ---------------------------------------------------------------------------
# Gap-counter Parry chain (independent oracle for the S-gap MME)


@dataclass(frozen=True, eq=False)
class GapChain:
    """Markov chain on 'zeros seen since the last 1', capped for cofinite sets."""

    gaps: S.SGapSet
    lam: float
    stationary: np.ndarray
    transition: dict  # (state, symbol) -> (target, probability)
    n_states: int


def gap_chain(gaps: S.SGapSet) -> GapChain:
    if gaps.finite:
        top = max(gaps.extra)
        states = list(range(top + 1))
        succ0 = {i: i + 1 for i in states if i + 1 <= top}
    else:
        top = gaps.cofinite_from
        states = list(range(top + 1))
        succ0 = {i: min(i + 1, top) for i in states}
    n = len(states)
    A = np.zeros((n, n))
    edges = []
    for i in states:
        if i in succ0:
            A[i, succ0[i]] += 1
            edges.append((i, "0", succ0[i]))
        if i in gaps or (not gaps.finite and i == top):
            A[i, 0] += 1
            edges.append((i, "1", 0))
    if not S._strongly_connected(n, [(q, a, r) for q, a, r in edges]):
        raise ReduciblePresentationError("gap-counter chain is reducible")
    lam, r = S.perron_value(A)
    _, l = S.perron_value(A.T)
    stationary = l * r
    stationary /= stationary.sum()
    transition = {}
    for i, a, j in edges:
        transition[(i, a)] = (j, float(r[j] / (lam * r[i])))
    return GapChain(gaps=gaps, lam=lam, stationary=stationary, transition=transition, n_states=n)


def sgap_mu_oracle(gaps: S.SGapSet, w) -> float:
    """mu(w) from the gap-counter Parry chain (independent of the recursion)."""
    if gaps.finite and len(gaps.extra) == 1 and gaps.extra[0] == 0:
        return 1.0 if all(c == "1" for c in w) else 0.0
    chain = gap_chain(gaps)
    vec = np.array(chain.stationary, dtype=float)
    for a in w:
        new = np.zeros_like(vec)
        for i in range(chain.n_states):
            if vec[i] == 0.0:
                continue
            hop = chain.transition.get((i, a))
            if hop is not None:
                j, p = hop
                new[j] += vec[i] * p
        vec = new
    return float(vec.sum())


# ---------------------------------------------------------------------------
# S-gap value recursion with integer certificates


def sgap_mu1(gaps: S.SGapSet) -> float:
    """mu(1) = 1 / sum over S of (n+1) t^(n+1), with closed-form cofinite tails."""
    t = 1.0 / S.sgap_lambda(gaps)
    total = 0.0
    for n in gaps.extra:
        total += (n + 1) * t ** (n + 1)
    if gaps.cofinite_from is not None:
        J = gaps.cofinite_from + 1
        total += weighted_tail(t, J)
    return 1.0 / total


def geometric_tail(t: float, J: int) -> float:
    """sum_{j>=J} t^j."""
    return t**J / (1.0 - t)


def weighted_tail(t: float, J: int) -> float:
    """sum_{j>=J} j t^j = t^J (J - (J-1) t) / (1-t)^2."""
    return t**J * (J - (J - 1) * t) / (1.0 - t) ** 2


@dataclass(frozen=True)
class MeasureCertificate:
    """mu(w) = offset + mu1 * poly(t) with integer offset and coefficients."""

    word: str
    offset: int
    coeffs: tuple[int, ...]

    def evaluate(self, mu1: float, t: float) -> float:
        poly = 0.0
        for c in reversed(self.coeffs):
            poly = poly * t + c
        return self.offset + mu1 * poly


def _poly_add(p: tuple, q: tuple, sign: int = 1) -> tuple:
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += sign * c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _monomial(k: int) -> tuple:
    return (0,) * k + (1,)


@dataclass
class SGapMME:
    """Unique MME of an S-gap shift, via the synchronization recursion."""

    gaps: S.SGapSet
    lam: float = field(init=False)
    t: float = field(init=False)
    mu1: float = field(init=False)

    def __post_init__(self):
        self.lam = S.sgap_lambda(self.gaps)
        self.t = 1.0 / self.lam
        self.mu1 = sgap_mu1(self.gaps)
        self._memo: dict[str, MeasureCertificate] = {}

    def certificate(self, w: str) -> MeasureCertificate:
        for c in w:
            if c not in "01":
                raise InvalidWordError(f"symbol {c!r} not binary")
        cached = self._memo.get(w)
        if cached is None:
            cached = self._build(w)
            self._memo[w] = cached
        return cached

    def mu(self, w: str) -> float:
        return self.certificate(w).evaluate(self.mu1, self.t)

    def _build(self, w: str) -> MeasureCertificate:
        n = len(w)
        if n == 0:
            return MeasureCertificate("", 1, ())
        if n == 1:
            if w == "1":
                return MeasureCertificate("1", 0, (1,))
            return MeasureCertificate("0", 1, (-1,))
        z = w[1:-1]
        one_z_one = self._pinned("1" + z + "1")
        if w[0] == "1" and w[-1] == "1":
            return one_z_one
        cz1 = self.certificate(z + "1")
        c1z = self.certificate("1" + z)
        if w[0] == "1":  # 1 z 0
            return MeasureCertificate(
                w, c1z.offset - one_z_one.offset, _poly_add(c1z.coeffs, one_z_one.coeffs, -1)
            )
        if w[-1] == "1":  # 0 z 1
            return MeasureCertificate(
                w, cz1.offset - one_z_one.offset, _poly_add(cz1.coeffs, one_z_one.coeffs, -1)
            )
        # 0 z 0: mu(z) minus the three sibling extensions of the z-cylinder
        cz = self.certificate(z)
        offset = cz.offset - c1z.offset - cz1.offset + one_z_one.offset
        coeffs = _poly_add(
            _poly_add(cz.coeffs, _poly_add(c1z.coeffs, cz1.coeffs), -1), one_z_one.coeffs
        )
        return MeasureCertificate(w, offset, coeffs)

    def _pinned(self, w: str) -> MeasureCertificate:
        """Certificate for a word starting and ending with 1: mu(1) t^(|w|-1)
        when legal (its extender set matches that of the synchronizing 1)."""
        if self._legal_pinned(w):
            return MeasureCertificate(w, 0, _monomial(len(w) - 1))
        return MeasureCertificate(w, 0, ())

    def _legal_pinned(self, w: str) -> bool:
        gap = None
        seen_one = False
        for c in w:
            if c == "1":
                if seen_one and gap not in self.gaps:
                    return False
                seen_one = True
                gap = 0
            else:
                if gap is not None:
                    gap += 1
        if self.gaps.finite and not seen_one:
            return False
        return True


from functools import lru_cache


@lru_cache(maxsize=None)
def sgap_model(gaps: S.SGapSet) -> SGapMME:
    return SGapMME(gaps)


def sgap_mu(gaps: S.SGapSet, w: str) -> tuple[float, MeasureCertificate]:
    model = sgap_model(gaps)
    cert = model.certificate(w)
    return cert.evaluate(model.mu1, model.t), cert


def entropy_of_measure_check(gaps: S.SGapSet) -> float:
    """Residual of the gap-distribution normalization sum over S of t^(n+1) = 1."""
    t = 1.0 / S.sgap_lambda(gaps)
    total = sum(t ** (n + 1) for n in gaps.extra)
    if gaps.cofinite_from is not None:
        total += geometric_tail(t, gaps.cofinite_from + 1)
    return abs(total - 1.0)
