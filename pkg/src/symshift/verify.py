"""Executable theorem suite: every quantitative statement becomes a check.

Each check pairs two independently computed quantities (formula vs oracle,
root vs eigenvalue, exact count vs scaled DP) and records the residual
against a stated tolerance.  Failures always carry a minimal witness; checks
never abort the suite.
"""

from __future__ import annotations

import itertools
import json
import math
import re
import time
from dataclasses import dataclass, field

from . import extender as E
from . import grid2d as G
from . import mme as M
from . import subshifts as S
from . import words as W
from .errors import SpecFormatError, SymshiftError


@dataclass
class CheckRecord:
    name: str
    spec: str
    params: dict
    tolerance: dict
    residuals: dict = field(default_factory=dict)
    status: str = "pass"
    reason: str = ""
    witnesses: list = field(default_factory=list)
    series: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "spec": self.spec,
            "params": self.params,
            "tolerance": self.tolerance,
            "residuals": self.residuals,
            "status": self.status,
            "reason": self.reason,
            "witnesses": self.witnesses,
            "series": self.series,
        }


@dataclass
class VerificationReport:
    records: list
    meta: dict

    @property
    def passed(self) -> bool:
        return all(r.status in ("pass", "skipped") for r in self.records)

    def to_dict(self) -> dict:
        return {
            "meta": self.meta,
            "passed": self.passed,
            "checks": [r.to_dict() for r in sorted(self.records, key=lambda r: r.name)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _fail(record: CheckRecord, witness) -> None:
    record.status = "fail"
    if witness not in record.witnesses:
        record.witnesses.append(witness)


# ---------------------------------------------------------------------------
# Measure inequality / equality under extender containment


def _language_upto(spec, maxlen: int) -> list:
    out = []
    for n in range(1, maxlen + 1):
        out.extend(S.enumerate_words(spec, n))
    return out


def check_main_inequality(spec, maxlen: int, tol: float) -> CheckRecord:
    record = CheckRecord(
        name=f"main-inequality[{S.describe(spec)}]",
        spec=S.describe(spec),
        params={"maxlen": maxlen},
        tolerance={"inequality": tol},
    )
    h = S.entropy(spec)
    if h <= 1e-12:
        record.status = "skipped"
        record.reason = "positive-entropy hypothesis fails"
        return record
    model = M.parry(spec)
    language = _language_upto(spec, maxlen)
    mu = {w: M.mu_parry(model, w) for w in language}
    worst = 0.0
    pairs = 0
    for v, w in itertools.product(language, repeat=2):
        rel = E.extender_compare(spec, v, w)
        if rel not in (E.PROPER_SUBSET, E.EQUAL):
            continue
        pairs += 1
        excess = mu[v] - mu[w] * math.exp(h * (len(w) - len(v)))
        if excess > worst:
            worst = excess
            if excess > tol:
                _fail(record, {"v": W.format_word(v), "w": W.format_word(w), "excess": excess})
    record.params["pairs"] = pairs
    record.residuals["max excess"] = worst
    return record


def check_equality_corollary(spec, maxlen: int, tol: float) -> CheckRecord:
    record = CheckRecord(
        name=f"equality-corollary[{S.describe(spec)}]",
        spec=S.describe(spec),
        params={"maxlen": maxlen},
        tolerance={"equality": tol},
    )
    h = S.entropy(spec)
    if h <= 1e-12:
        record.status = "skipped"
        record.reason = "positive-entropy hypothesis fails"
        return record
    model = M.parry(spec)
    language = _language_upto(spec, maxlen)
    mu = {w: M.mu_parry(model, w) for w in language}
    worst = 0.0
    pairs = 0
    for v, w in itertools.product(language, repeat=2):
        if E.extender_compare(spec, v, w) != E.EQUAL:
            continue
        pairs += 1
        gap = abs(mu[v] - mu[w] * math.exp(h * (len(w) - len(v))))
        if gap > worst:
            worst = gap
            if gap > tol:
                _fail(record, {"v": W.format_word(v), "w": W.format_word(w), "gap": gap})
    record.params["pairs"] = pairs
    record.residuals["max gap"] = worst
    return record


# ---------------------------------------------------------------------------
# S-gap entropy, counting limit, and measure values


def _root_equation_residual(gaps: S.SGapSet, lam: float) -> float:
    if lam <= 1.0:
        total = float(len(gaps.extra) == 1)
    else:
        total = sum(lam ** (-n - 1) for n in gaps.extra)
        if gaps.cofinite_from is not None:
            total += M.geometric_tail(1.0 / lam, gaps.cofinite_from + 1)
    return abs(total - 1.0)


def check_entropy_root(gaps: S.SGapSet, tol_root: float, tol_cross: float) -> CheckRecord:
    record = CheckRecord(
        name=f"entropy-root[S={gaps.describe()}]",
        spec=S.describe(S.SGapShift(gaps)),
        params={},
        tolerance={"root": tol_root, "cross": tol_cross},
    )
    lam = S.sgap_lambda(gaps)
    record.residuals["root equation"] = _root_equation_residual(gaps, lam)
    h_graph = math.log(S.perron_eigenvalue(S.SGapShift(gaps)))
    record.residuals["log-lambda vs graph entropy"] = abs(math.log(lam) - h_graph)
    if record.residuals["root equation"] > tol_root:
        _fail(record, {"lambda": lam})
    if record.residuals["log-lambda vs graph entropy"] > tol_cross:
        _fail(record, {"lambda": lam, "h_graph": h_graph})
    return record


def limit_closed_form(gaps: S.SGapSet) -> float:
    """Limit of |L_n| / lambda^n for mixing S-gap shifts."""
    lam = S.sgap_lambda(gaps)
    mu1 = M.sgap_mu1(gaps)
    base = mu1 * lam / (lam - 1.0) ** 2
    if gaps.finite:
        base *= (1.0 - lam ** (-max(gaps.extra) - 1)) ** 2
    return base


def check_limit(
    gaps: S.SGapSet, N: int, exact_n: int, tol: float, rel_tol: float
) -> CheckRecord:
    record = CheckRecord(
        name=f"counting-limit[S={gaps.describe()}]",
        spec=S.describe(S.SGapShift(gaps)),
        params={"N": N, "exact_n": exact_n},
        tolerance={"limit": tol, "cauchy": tol, "exact-vs-scaled (relative)": rel_tol},
    )
    if gaps.gcd_shifted() != 1:
        record.status = "skipped"
        record.reason = f"mixing hypothesis fails: gcd(S+1) = {gaps.gcd_shifted()}"
        return record
    spec = S.SGapShift(gaps)
    lam = S.sgap_lambda(gaps)
    a_prev = S.count_words_scaled(spec, N - 1, lam)
    a_N = S.count_words_scaled(spec, N, lam)
    cf = limit_closed_form(gaps)
    record.residuals["|a_N - closed form|"] = abs(a_N - cf)
    record.residuals["|a_N - a_{N-1}|"] = abs(a_N - a_prev)
    rows = []
    worst_rel = 0.0
    for n in range(1, exact_n + 1):
        exact = S.count_words(spec, n)
        scaled = S.count_words_scaled(spec, n, lam)
        rows.append([n, exact, scaled])
        worst_rel = max(worst_rel, abs(exact / lam**n - scaled) / scaled)
    record.residuals["exact vs scaled (relative)"] = worst_rel
    record.series["growth"] = {"columns": ["n", "count", "count_over_lambda_n"], "rows": rows}
    if record.residuals["|a_N - closed form|"] > tol:
        _fail(record, {"a_N": a_N, "closed_form": cf})
    if record.residuals["|a_N - a_{N-1}|"] > tol:
        _fail(record, {"a_N": a_N, "a_prev": a_prev})
    if worst_rel > rel_tol:
        _fail(record, {"worst_relative": worst_rel})
    return record


def check_value_theorem(gaps: S.SGapSet, maxlen: int, tol: float) -> CheckRecord:
    record = CheckRecord(
        name=f"value-theorem[S={gaps.describe()}]",
        spec=S.describe(S.SGapShift(gaps)),
        params={"maxlen": maxlen},
        tolerance={"value": tol},
    )
    record.residuals["mu(1) formula vs oracle"] = abs(
        M.sgap_mu1(gaps) - M.sgap_mu_oracle(gaps, "1")
    )
    if record.residuals["mu(1) formula vs oracle"] > tol:
        _fail(record, {"word": "1"})
    worst = 0.0
    integral = True
    for n in range(1, maxlen + 1):
        for w in W.BINARY.words(n):
            value, cert = M.sgap_mu(gaps, w)
            gap = abs(value - M.sgap_mu_oracle(gaps, w))
            if gap > worst:
                worst = gap
                if gap > tol:
                    _fail(record, {"word": w, "gap": gap})
            if not (
                isinstance(cert.offset, int)
                and all(isinstance(c, int) for c in cert.coeffs)
            ):
                integral = False
                _fail(record, {"word": w, "certificate": "non-integral"})
    record.residuals["max |recursion - oracle|"] = worst
    record.params["certificates integral"] = integral
    return record


def check_synch_formula(gaps: S.SGapSet, u: str, maxgap: int, tol: float) -> CheckRecord:
    record = CheckRecord(
        name=f"synchronized-formula[S={gaps.describe()},u={u}]",
        spec=S.describe(S.SGapShift(gaps)),
        params={"u": u, "maxgap": maxgap},
        tolerance={"truncation": tol},
    )
    spec = S.SGapShift(gaps)
    if not S.member(spec, u):
        record.status = "error"
        record.reason = f"{u!r} is not in the language"
        return record
    model = M.sgap_model(gaps)
    mu1, t = model.mu1, model.t
    contrib = {}
    for a in range(maxgap + 1):
        for b in range(maxgap + 1):
            word = "1" + "0" * a + u + "0" * b + "1"
            if S.member(spec, word):
                contrib[(a, b)] = mu1 * t ** (a + b + len(u) + 1)
    partial = []
    for g in range(maxgap + 1):
        total = sum(val for (a, b), val in contrib.items() if a <= g and b <= g)
        partial.append(total)
    rows = [[g, total] for g, total in enumerate(partial)]
    record.series["truncation"] = {"columns": ["maxgap", "partial_sum"], "rows": rows}
    if any(b < a - 1e-15 for a, b in zip(partial, partial[1:])):
        _fail(record, {"monotonicity": "violated"})
    target, _ = M.sgap_mu(gaps, u)
    record.residuals["|T(maxgap) - mu(u)|"] = abs(partial[-1] - target)
    if record.residuals["|T(maxgap) - mu(u)|"] > tol:
        _fail(record, {"T": partial[-1], "mu": target})
    return record


# ---------------------------------------------------------------------------
# Hereditary entropy bounds


def check_hereditary_entropy(spec, n_max: int, dist: int, tol: float) -> CheckRecord:
    record = CheckRecord(
        name=f"hereditary-entropy[{S.describe(spec)}]",
        spec=S.describe(spec),
        params={"n_max": n_max, "specification_distance": dist},
        tolerance={"bound": tol},
    )
    if not S.is_i_hereditary_bounded(spec, max_len=6):
        record.status = "skipped"
        record.reason = "insertion-hereditary sweep fails"
        return record
    h = S.entropy(spec)
    model = M.parry(spec)
    zero = "0" if spec.alphabet.single_char else ("0",)
    one = "1" if spec.alphabet.single_char else ("1",)
    worst = 0.0
    for n in range(1, n_max + 1):
        ratio = math.log(M.mu_parry(model, zero * n) / M.mu_parry(model, zero * (n + 1)))
        excess = ratio - h
        if excess > worst:
            worst = excess
            if excess > tol:
                _fail(record, {"n": n, "log ratio": ratio, "h": h})
    record.residuals["max(log ratio - h)"] = worst
    if S.specification_distance_holds(spec, dist):
        ratio = math.log(
            M.mu_parry(model, zero * dist) / M.mu_parry(model, zero * (dist + 1))
        )
        record.residuals["|h - log ratio| at specification distance"] = abs(h - ratio)
        if record.residuals["|h - log ratio| at specification distance"] > tol:
            _fail(record, {"N": dist, "log ratio": ratio, "h": h})
    else:
        record.params["specification_holds"] = False
    drop = M.mu_parry(model, one) - M.mu_parry(model, zero)
    record.residuals["mu(1) - mu(0)"] = drop
    if drop > tol:
        _fail(record, {"mu(1)": M.mu_parry(model, one), "mu(0)": M.mu_parry(model, zero)})
    return record


# ---------------------------------------------------------------------------
# Replacement calculus lemmas


def _subset_sweep(record, v, w, u_maxlen: int, alphabet: W.Alphabet, check_inj: bool):
    """One pass over all (u, S): persistence, survival, injectivity, preimage."""
    shift = len(w) - len(v)
    violations = 0
    preimages = {}  # (u', m) -> count
    for L in range(len(v), u_maxlen + 1):
        for u in alphabet.words(L):
            occ = W.occurrences(u, v)
            if not occ:
                continue
            images = {}
            for size in range(1, len(occ) + 1):
                for sub in itertools.combinations(occ, size):
                    img = W.replace_seq(u, v, w, sub)
                    # persistence: every replaced site now carries w
                    for i, s in enumerate(sub):
                        p = s + i * shift
                        if img[p : p + len(w)] != w:
                            violations += 1
                            _fail(record, {"lemma": "persistence", "u": u, "S": list(sub)})
                    # survival: unreplaced occurrences shift predictably
                    for s in occ:
                        if s in sub:
                            continue
                        i = sum(1 for x in sub if x < s)
                        p = s + i * shift
                        if not (0 <= p and img[p : p + len(v)] == v):
                            violations += 1
                            _fail(record, {"lemma": "survival", "u": u, "S": list(sub), "m": s})
                    if check_inj:
                        key = (size, img)
                        if key in images:
                            violations += 1
                            _fail(
                                record,
                                {"lemma": "injectivity", "u": u, "S": list(sub), "S'": images[key]},
                            )
                        images[key] = list(sub)
                        pk = (img, size)
                        preimages[pk] = preimages.get(pk, 0) + 1
    if check_inj:
        for (img, m), count in preimages.items():
            bound = math.comb(len(W.occurrences(img, w)), m)
            if count > bound:
                violations += 1
                _fail(record, {"lemma": "preimage", "u'": img, "m": m, "count": count, "bound": bound})
    return violations


def check_replacement_lemmas(
    alphabet: W.Alphabet, v_maxlen: int, u_maxlen: int
) -> CheckRecord:
    record = CheckRecord(
        name="replacement-lemmas",
        spec=f"free words over {len(alphabet.symbols)} symbols",
        params={"v_maxlen": v_maxlen, "u_maxlen": u_maxlen},
        tolerance={},
    )
    pool = [u for n in range(1, v_maxlen + 1) for u in alphabet.words(n)]
    disagreements = 0
    respecting = []
    for v, w in itertools.product(pool, repeat=2):
        if v == w:
            continue
        ok_exact, _ = W.respects_transition_exact(v, w)
        ok_oracle, _ = W.respects_transition_bounded(
            v, w, 2 * len(v) + len(w) + 2, alphabet
        )
        if ok_exact != ok_oracle:
            disagreements += 1
            _fail(record, {"lemma": "decider-vs-oracle", "v": v, "w": w})
        if ok_exact:
            respecting.append((v, w))
    record.params["respecting pairs"] = len(respecting)
    record.residuals["decider vs oracle disagreements"] = disagreements
    total_violations = 0
    for v, w in respecting:
        suf, pref = W.affix_flags(v, w)
        total_violations += _subset_sweep(
            record, v, w, u_maxlen, alphabet, check_inj=not suf and not pref
        )
    record.residuals["lemma violations"] = total_violations
    return record


# ---------------------------------------------------------------------------
# Suite driver


DEFAULT_CONFIG = {
    "seed": 0,
    "maxlen_pairs": 5,
    "maxlen_value": 8,
    "limit_n": 200,
    "limit_exact_n": 40,
    "synch_maxgap": 40,
    "synch_words": ["0", "01", "1"],
    "hereditary_nmax": 8,
    "replacement_v_maxlen": 2,
    "replacement_u_maxlen": 8,
    "strip_widths": [4, 6],
    "tolerances": {
        "inequality": 1e-12,
        "equality": 1e-9,
        "root": 1e-12,
        "entropy_cross": 1e-10,
        "limit": 1e-3,
        "limit_relative": 1e-9,
        "value": 1e-9,
        "synch": 1e-6,
        "hereditary": 1e-9,
        "gtheorem": 1e-12,
    },
    "sgap_specs": [
        {"type": "sgap", "finite": [0, 1]},
        {"type": "sgap", "finite": [1, 3]},
        {"type": "sgap", "finite": [0, 2, 3]},
        {"type": "sgap", "extra": [], "from": 1},
        {"type": "sgap", "extra": [2], "from": 5},
    ],
    "pair_specs": [
        {"type": "sft", "alphabet": ["0", "1"], "forbidden": ["11"]},
        {"type": "sgap", "finite": [0, 1]},
    ],
    "hereditary_specs": [
        {"type": "sft", "alphabet": ["0", "1"], "forbidden": ["11"]},
        {"type": "full", "alphabet": ["0", "1"]},
    ],
}


def merge_config(overrides: dict | None) -> dict:
    config = json.loads(json.dumps(DEFAULT_CONFIG))
    if overrides:
        unknown = set(overrides) - set(DEFAULT_CONFIG)
        if unknown:
            raise SpecFormatError(f"unknown config fields: {sorted(unknown)}")
        for key, value in overrides.items():
            if key == "tolerances":
                bad = set(value) - set(config["tolerances"])
                if bad:
                    raise SpecFormatError(f"unknown tolerance fields: {sorted(bad)}")
                config["tolerances"].update(value)
            else:
                config[key] = value
    return config


def run_all(config: dict | None = None) -> VerificationReport:
    cfg = merge_config(config)
    tol = cfg["tolerances"]
    records = []
    timings = {}

    def run(label, fn, *args):
        t0 = time.monotonic()
        try:
            rec = fn(*args)
        except SymshiftError as exc:
            rec = CheckRecord(
                name=label,
                spec="",
                params={},
                tolerance={},
                status="error",
                reason=f"{type(exc).__name__}: {exc}",
            )
        timings[rec.name] = round(time.monotonic() - t0, 3)
        records.append(rec)

    for doc in cfg["pair_specs"]:
        spec = S.spec_from_dict(doc)
        run("main-inequality", check_main_inequality, spec, cfg["maxlen_pairs"], tol["inequality"])
        run("equality-corollary", check_equality_corollary, spec, cfg["maxlen_pairs"], tol["equality"])

    for doc in cfg["sgap_specs"]:
        gaps = S.spec_from_dict(doc).gaps
        run("entropy-root", check_entropy_root, gaps, tol["root"], tol["entropy_cross"])
        run(
            "counting-limit",
            check_limit,
            gaps,
            cfg["limit_n"],
            cfg["limit_exact_n"],
            tol["limit"],
            tol["limit_relative"],
        )
        run("value-theorem", check_value_theorem, gaps, cfg["maxlen_value"], tol["value"])

    for doc in cfg["sgap_specs"][:2]:
        gaps = S.spec_from_dict(doc).gaps
        for u in cfg["synch_words"]:
            if S.member(S.SGapShift(gaps), u):
                run("synchronized-formula", check_synch_formula, gaps, u, cfg["synch_maxgap"], tol["synch"])

    for doc in cfg["hereditary_specs"]:
        spec = S.spec_from_dict(doc)
        run("hereditary-entropy", check_hereditary_entropy, spec, cfg["hereditary_nmax"], 1, tol["hereditary"])

    run(
        "replacement-lemmas",
        check_replacement_lemmas,
        W.BINARY,
        cfg["replacement_v_maxlen"],
        cfg["replacement_u_maxlen"],
    )

    hs = G.hard_square()
    one = G.Pattern2D((((0, 0), "1"),))
    zero = G.Pattern2D((((0, 0), "0"),))
    t0 = time.monotonic()
    gt = G.check_gtheorem(hs, one, zero, cfg["strip_widths"], tol["gtheorem"])
    gt_record = CheckRecord(
        name=gt["name"],
        spec=gt["spec"],
        params=gt["params"],
        tolerance={"inequality": gt["tolerance"]},
        residuals=gt["residuals"],
        status=gt["status"],
        reason=gt["reason"],
        witnesses=gt["witnesses"],
        series={
            "strip": {"columns": ["width", "mu_v", "mu_w"], "rows": gt["series"]["strip"]}
        },
    )
    timings[gt_record.name] = round(time.monotonic() - t0, 3)
    records.append(gt_record)

    meta = {
        "seed": cfg["seed"],
        "config": cfg,
        "timestamps": {
            "finished": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            "elapsed_s": timings,
        },
    }
    return VerificationReport(records=records, meta=meta)


def write_csv(report: VerificationReport, directory) -> list:
    """One CSV per (check, series); returns the paths written."""
    import os

    os.makedirs(directory, exist_ok=True)
    written = []
    for rec in sorted(report.records, key=lambda r: r.name):
        for series_name, series in sorted(rec.series.items()):
            slug = re.sub(r"[^A-Za-z0-9._-]+", "_", f"{rec.name}.{series_name}")
            path = os.path.join(directory, slug + ".csv")
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(",".join(series["columns"]) + "\n")
                for row in series["rows"]:
                    fh.write(",".join(repr(x) if isinstance(x, float) else str(x) for x in row) + "\n")
            written.append(path)
    return written
