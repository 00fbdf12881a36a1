"""Desk-scale two-dimensional support: finite patterns, sparse replacement,
and strip transfer-matrix approximations of the measure of maximal entropy.

The plane shift is approximated by strips of finite width with vertical
periodicity: legal columns become the alphabet of a one-step 1D shift whose
Parry measure assigns cylinder probabilities to finite patterns.  The
same-shape measure inequality (if every context of v also admits w then
mu(v) <= mu(w)) is checked on those strip approximations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import subshifts as S
from . import words as W
from .errors import (
    InvalidPositionError,
    InvalidWordError,
    ReduciblePresentationError,
    ResourceLimitError,
    SpecFormatError,
)

_HALO_BUDGET = 1 << 22
_MAX_STRIP_WIDTH = 16


@dataclass(frozen=True)
class Pattern2D:
    """Finite assignment of symbols to cells of the plane.

    ``cells`` is stored in canonical row-major order (by y, then x), which
    makes equality and hashing positional, not presentational.
    """

    cells: tuple[tuple[tuple[int, int], str], ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.cells, key=lambda kv: (kv[0][1], kv[0][0])))
        if len({c for c, _ in ordered}) != len(ordered):
            raise InvalidWordError("pattern assigns a cell twice")
        object.__setattr__(self, "cells", ordered)

    @property
    def shape(self) -> frozenset:
        return frozenset(c for c, _ in self.cells)

    @property
    def mapping(self) -> dict:
        return dict(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def bounding_box(self) -> tuple[int, int, int, int]:
        """(xmin, ymin, xmax, ymax); raises on the empty pattern."""
        if not self.cells:
            raise InvalidWordError("empty pattern has no bounding box")
        xs = [x for (x, _), _ in self.cells]
        ys = [y for (_, y), _ in self.cells]
        return min(xs), min(ys), max(xs), max(ys)

    def translate(self, dx: int, dy: int) -> "Pattern2D":
        return Pattern2D(tuple(((x + dx, y + dy), s) for (x, y), s in self.cells))

    def normalized(self) -> "Pattern2D":
        """Translate so the bounding box corner sits at the origin."""
        xmin, ymin, _, _ = self.bounding_box()
        return self.translate(-xmin, -ymin)

    def to_dict(self) -> dict:
        return {"cells": [[x, y, s] for (x, y), s in self.cells]}


def pattern_from_dict(data: dict) -> Pattern2D:
    if not isinstance(data, dict) or set(data) != {"cells"}:
        raise SpecFormatError("pattern file must be an object with a single 'cells' key")
    cells = []
    for entry in data["cells"]:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise SpecFormatError(f"pattern cell {entry!r} is not [x, y, symbol]")
        x, y, s = entry
        if not isinstance(x, int) or not isinstance(y, int) or not isinstance(s, str):
            raise SpecFormatError(f"pattern cell {entry!r} has wrong field types")
        cells.append(((x, y), s))
    return Pattern2D(tuple(cells))


def pattern_from_grid(rows: list[str]) -> Pattern2D:
    """Convenience: dense rectangle from strings, row y=0 first."""
    cells = []
    for y, row in enumerate(rows):
        for x, s in enumerate(row):
            cells.append(((x, y), s))
    return Pattern2D(tuple(cells))


@dataclass(frozen=True)
class Grid2dSpec:
    """Plane SFT given by an alphabet and finitely many forbidden patterns."""

    alphabet: W.Alphabet
    forbidden: tuple[Pattern2D, ...]

    def __post_init__(self):
        symbols = set(self.alphabet.symbols)
        for p in self.forbidden:
            if not p.cells:
                raise SpecFormatError("forbidden patterns must be nonempty")
            for _, s in p.cells:
                if s not in symbols:
                    raise SpecFormatError(f"forbidden pattern symbol {s!r} not in alphabet")

    @property
    def interaction_range(self) -> int:
        r = 0
        for p in self.forbidden:
            xmin, ymin, xmax, ymax = p.bounding_box()
            r = max(r, xmax - xmin, ymax - ymin)
        return r

    def to_dict(self) -> dict:
        return {
            "type": "grid2d",
            "alphabet": list(self.alphabet.symbols),
            "forbidden": [p.to_dict() for p in self.forbidden],
        }


def grid_spec_from_dict(data: dict) -> Grid2dSpec:
    keys = set(data)
    if keys != {"type", "alphabet", "forbidden"}:
        raise SpecFormatError(f"grid2d spec has unexpected keys {sorted(keys - {'type'})}")
    alphabet = W.Alphabet(tuple(data["alphabet"]))
    forbidden = tuple(pattern_from_dict(p) for p in data["forbidden"])
    return Grid2dSpec(alphabet=alphabet, forbidden=forbidden)


def hard_square() -> Grid2dSpec:
    """Binary plane shift forbidding horizontally or vertically adjacent 1s."""
    horiz = Pattern2D((((0, 0), "1"), ((1, 0), "1")))
    vert = Pattern2D((((0, 0), "1"), ((0, 1), "1")))
    return Grid2dSpec(alphabet=W.BINARY, forbidden=(horiz, vert))


# ---------------------------------------------------------------------------
# Sparse replacement

def _translated_shape(shape, g):
    gx, gy = g
    return {(x + gx, y + gy) for x, y in shape}


def lemma_one_period(F) -> tuple[int, int]:
    """Minimal (N1, N2) whose nonzero multiples translate F off itself.

    Scanned in lexicographic order; for rectangles this returns the
    bounding-box dimensions.
    """
    F = set(F)
    if not F:
        raise InvalidWordError("shape must be nonempty")
    xs = [x for x, _ in F]
    ys = [y for _, y in F]
    width = max(xs) - min(xs) + 1
    height = max(ys) - min(ys) + 1

    def ok(n1: int, n2: int) -> bool:
        for a in range(-(width // n1) - 1, width // n1 + 2):
            for b in range(-(height // n2) - 1, height // n2 + 2):
                if (a, b) == (0, 0):
                    continue
                if _translated_shape(F, (a * n1, b * n2)) & F:
                    return False
        return True

    for n1 in range(1, width + 1):
        for n2 in range(1, height + 1):
            if ok(n1, n2):
                return n1, n2
    return width, height  # bounding box always works


def f_sparse_check(sites, F) -> bool:
    """Pairwise disjointness of the F-translates at the given sites."""
    F = set(F)
    sites = list(sites)
    for i, g in enumerate(sites):
        tg = _translated_shape(F, g)
        for h in sites[i + 1 :]:
            if tg & _translated_shape(F, h):
                return False
    return True


def occurrences_2d(u: Pattern2D, v: Pattern2D) -> list[tuple[int, int]]:
    """Translates g with the shifted copy of v appearing inside u."""
    if not v.cells:
        raise InvalidWordError("occurrence pattern must be nonempty")
    um = u.mapping
    vc = v.cells
    (x0, y0), s0 = vc[0]
    out = []
    for (x, y), s in u.cells:
        if s != s0:
            continue
        g = (x - x0, y - y0)
        if all(um.get((cx + g[0], cy + g[1])) == cs for (cx, cy), cs in vc):
            out.append(g)
    return sorted(out)


def replace_sparse(u: Pattern2D, v: Pattern2D, w: Pattern2D, sites) -> Pattern2D:
    """Simultaneously replace the copies of v at the given F-sparse sites by w."""
    if v.shape != w.shape:
        raise InvalidWordError("replacement patterns must share a shape")
    sites = sorted(sites)
    occ = set(occurrences_2d(u, v))
    for g in sites:
        if g not in occ:
            raise InvalidPositionError(f"site {g} is not an occurrence of the pattern")
    if not f_sparse_check(sites, v.shape):
        raise InvalidPositionError("replacement sites are not F-sparse")
    out = u.mapping
    for gx, gy in sites:
        for (x, y), s in w.cells:
            out[(x + gx, y + gy)] = s
    return Pattern2D(tuple(out.items()))


# ---------------------------------------------------------------------------
# Strip transfer-matrix MME approximation

def _check_two_column(spec: Grid2dSpec):
    """Split forbidden patterns into single-column and two-column families."""
    singles, pairs = [], []
    for p in spec.forbidden:
        q = p.normalized()
        xmin, _, xmax, _ = q.bounding_box()
        if xmax - xmin == 0:
            singles.append(q)
        elif xmax - xmin == 1:
            pairs.append(q)
        else:
            raise ResourceLimitError(
                "strip transfer matrix supports forbidden patterns spanning at most two columns"
            )
    return singles, pairs


def _column_matches(col, cells, offset: int, width: int, torus: bool) -> bool:
    for (_, y), s in cells:
        yy = y + offset
        if torus:
            yy %= width
        elif not 0 <= yy < width:
            return False
        if col[yy] != s:
            return False
    return True


def _legal_columns(spec: Grid2dSpec, width: int, torus: bool):
    singles, _ = _check_two_column(spec)
    cols = []
    for col in itertools.product(spec.alphabet.symbols, repeat=width):
        bad = False
        for p in singles:
            height = p.bounding_box()[3] + 1
            offsets = range(width) if torus else range(width - height + 1)
            if any(_column_matches(col, p.cells, o, width, torus) for o in offsets):
                bad = True
                break
        if not bad:
            cols.append(col)
    return cols


def _edge_allowed(spec, c1, c2, width: int, torus: bool) -> bool:
    _, pairs = _check_two_column(spec)
    for p in pairs:
        left = [cell for cell in p.cells if cell[0][0] == 0]
        right = [cell for cell in p.cells if cell[0][0] == 1]
        height = p.bounding_box()[3] + 1
        offsets = range(width) if torus else range(width - height + 1)
        for o in offsets:
            if _column_matches(c1, left, o, width, torus) and _column_matches(
                c2, right, o, width, torus
            ):
                return False
    return True


@dataclass(frozen=True)
class StripMME:
    """Parry model of the width-W column shift."""

    spec: Grid2dSpec
    width: int
    torus: bool
    columns: tuple
    lam: float
    stationary: np.ndarray
    transition: np.ndarray


def strip_mme(spec: Grid2dSpec, width: int, torus: bool = True) -> StripMME:
    if width > _MAX_STRIP_WIDTH:
        raise ResourceLimitError(f"strip width {width} exceeds cap {_MAX_STRIP_WIDTH}")
    cols = _legal_columns(spec, width, torus)
    if not cols:
        raise ReduciblePresentationError("no legal columns at this width")
    n = len(cols)
    A = np.zeros((n, n))
    edges = []
    for i, c1 in enumerate(cols):
        for j, c2 in enumerate(cols):
            if _edge_allowed(spec, c1, c2, width, torus):
                A[i, j] = 1.0
                edges.append((i, "e", j))
    if not S._strongly_connected(n, edges):
        raise ReduciblePresentationError("column transition graph is reducible")
    lam, r = S.perron_value(A)
    _, l = S.perron_value(A.T)
    stationary = l * r
    stationary /= stationary.sum()
    P = np.zeros_like(A)
    for i in range(n):
        for j in range(n):
            if A[i, j] > 0:
                P[i, j] = r[j] / (lam * r[i])
    return StripMME(
        spec=spec,
        width=width,
        torus=torus,
        columns=tuple(cols),
        lam=lam,
        stationary=stationary,
        transition=P,
    )


@dataclass(frozen=True)
class StripValue:
    value: float
    width: int
    torus: bool


def strip_mme_mu(
    spec: Grid2dSpec, width: int, pattern: Pattern2D, torus: bool = True
) -> StripValue:
    """Approximate cylinder probability of the pattern on a width-W strip."""
    r = spec.interaction_range
    p = pattern.normalized()
    _, _, xmax, ymax = p.bounding_box()
    if ymax + 1 + 2 * r > width:
        raise InvalidWordError(
            f"pattern of height {ymax + 1} does not fit the interior of a width-{width} strip"
        )
    model = strip_mme(spec, width, torus)
    yoff = (width - (ymax + 1)) // 2  # centered; irrelevant on the torus
    wanted = [dict() for _ in range(xmax + 1)]
    for (x, y), s in p.cells:
        wanted[x][y + yoff] = s

    def consistent(col, col_idx: int) -> bool:
        return all(col[y] == s for y, s in wanted[col_idx].items())

    vec = np.array(
        [
            model.stationary[i] if consistent(c, 0) else 0.0
            for i, c in enumerate(model.columns)
        ]
    )
    for x in range(1, xmax + 1):
        mask = np.array([1.0 if consistent(c, x) else 0.0 for c in model.columns])
        vec = (vec @ model.transition) * mask
    return StripValue(value=float(vec.sum()), width=width, torus=torus)


# ---------------------------------------------------------------------------
# Windowed replaceability and the same-shape measure inequality

def _locally_legal(spec: Grid2dSpec, assignment: dict) -> bool:
    domain = set(assignment)
    for p in spec.forbidden:
        q = p.normalized()
        shape = q.shape
        xs = [x for x, _ in domain]
        ys = [y for _, y in domain]
        _, _, pxmax, pymax = q.bounding_box()
        for gx in range(min(xs), max(xs) - pxmax + 1):
            for gy in range(min(ys), max(ys) - pymax + 1):
                if all(
                    assignment.get((x + gx, y + gy)) == s
                    for (x, y), s in q.cells
                ):
                    if all((x + gx, y + gy) in domain for x, y in shape):
                        return False
    return True


def halo_cells(F, L: int) -> list:
    F = set(F)
    out = set()
    for x, y in F:
        for dx in range(-L, L + 1):
            for dy in range(-L, L + 1):
                c = (x + dx, y + dy)
                if c not in F:
                    out.add(c)
    return sorted(out, key=lambda c: (c[1], c[0]))


def replaceability_windowed(spec: Grid2dSpec, v: Pattern2D, w: Pattern2D, L: int) -> bool:
    """Sufficient check for extender containment: every locally-legal L-halo
    around v stays legal after swapping in w."""
    if v.shape != w.shape:
        raise InvalidWordError("patterns must share a shape")
    if L < spec.interaction_range:
        raise InvalidWordError("window must cover the interaction range")
    halo = halo_cells(v.shape, L)
    count = len(spec.alphabet.symbols) ** len(halo)
    if count > _HALO_BUDGET:
        raise ResourceLimitError(f"halo sweep of {count} assignments exceeds budget")
    vmap, wmap = v.mapping, w.mapping
    for combo in itertools.product(spec.alphabet.symbols, repeat=len(halo)):
        ctx = dict(zip(halo, combo))
        if not _locally_legal(spec, {**ctx, **vmap}):
            continue
        if not _locally_legal(spec, {**ctx, **wmap}):
            return False
    return True


def check_gtheorem(spec: Grid2dSpec, v: Pattern2D, w: Pattern2D, widths, tol: float) -> dict:
    """Same-shape inequality on strips: certified replaceability implies
    mu_W(v) <= mu_W(w) at every width."""
    record = {
        "name": "gtheorem-strips",
        "spec": "grid2d",
        "params": {"widths": list(widths), "tol": tol},
        "tolerance": tol,
        "residuals": {},
        "series": {"strip": []},
        "witnesses": [],
        "status": "pass",
        "reason": "",
    }
    try:
        certified = replaceability_windowed(spec, v, w, spec.interaction_range)
    except InvalidWordError as exc:
        record["status"] = "skipped"
        record["reason"] = str(exc)
        return record
    if not certified:
        record["status"] = "skipped"
        record["reason"] = "replaceability precondition not certified at this window"
        return record
    worst = -float("inf")
    for width in widths:
        mu_v = strip_mme_mu(spec, width, v).value
        mu_w = strip_mme_mu(spec, width, w).value
        record["series"]["strip"].append([width, mu_v, mu_w])
        worst = max(worst, mu_v - mu_w)
        if mu_v > mu_w + tol:
            record["status"] = "fail"
            record["witnesses"].append({"width": width, "mu_v": mu_v, "mu_w": mu_w})
    record["residuals"]["max(mu_v - mu_w)"] = worst
    return record
