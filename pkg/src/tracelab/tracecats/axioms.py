"""Randomized verification of the partial-trace axioms.

Axioms come in three strengths and the checker enforces exactly these:

  * directed (Naturality, Superposing, Strength): whenever the left side is
    defined, the right side must be defined and equal.  Samples are drawn by
    rejection until the inner trace is defined.
  * bidirectional (Dinaturality, VanishingI, Yanking): the two sides must be
    defined together or undefined together, and equal when defined.
  * conditional (VanishingII): whenever the single-step trace over V is
    defined, the iterated trace and the one-shot trace over U (x) V must be
    defined together or undefined together, and equal when defined.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..matcore import Tol, DEFAULT_TOL
from .core import AxiomId, CategoryId, TraceOutcome
from .categories import Category, NoConvergenceError, get_category

REJECTION_CAP = 1000

DIRECTED = {AxiomId.Naturality, AxiomId.Superposing, AxiomId.Strength}
BIDIRECTIONAL = {AxiomId.Dinaturality, AxiomId.VanishingI, AxiomId.Yanking}


def sample_seed(seed: int, category: str, axiom: str, idx: int) -> int:
    digest = hashlib.sha256(f"{seed}|{category}|{axiom}|{idx}".encode()).hexdigest()
    return int(digest[:8], 16)


@dataclass
class EvalResult:
    pattern: str
    ok: bool
    deviation: float = 0.0
    margins: list = field(default_factory=list)
    note: str = ""


@dataclass
class CheckReport:
    category: str
    axiom: str
    samples: int
    skipped: int
    patterns: dict
    max_deviation: float
    min_abs_margin: float
    failures: int
    passed: bool
    witness: Optional[dict] = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "category": self.category,
            "axiom": self.axiom,
            "samples": self.samples,
            "skipped": self.skipped,
            "patterns": dict(sorted(self.patterns.items())),
            "max_deviation": self.max_deviation,
            "min_abs_margin": self.min_abs_margin,
            "failures": self.failures,
            "passed": self.passed,
            "witness": self.witness,
            "notes": list(self.notes),
        }


# --------------------------------------------------------------------------
# sample generation
# --------------------------------------------------------------------------


def _inner_trace_defined(cat: Category, f, x, y, u, tol: Tol) -> bool:
    try:
        member, _, _ = cat.in_trace_class(f, x, y, u, tol)
    except NoConvergenceError:
        return False
    return member


def generate_sample(cat_id, axiom, rng, dim_max: Optional[int] = None, tol: Tol = DEFAULT_TOL):
    """Draws one sample for (category, axiom).

    Returns (sample dict, note).  The sample is None when rejection sampling
    for a directed axiom exhausted its cap; the note says so.
    """
    cat = get_category(cat_id)
    axiom = AxiomId(axiom)
    dmax = dim_max if dim_max is not None else cat.default_dim_max

    def obj():
        return cat.random_object(rng, dmax)

    if axiom == AxiomId.Yanking:
        return {"u": obj()}, ""

    if axiom == AxiomId.Dinaturality:
        x, y, u, up = obj(), obj(), obj(), obj()
        f = cat.random_morphism(rng, cat.tensor_obj(x, u), cat.tensor_obj(y, up))
        g = cat.random_morphism(rng, up, u)
        return {"x": x, "y": y, "u": u, "up": up, "f": f, "g": g}, ""

    if axiom == AxiomId.VanishingI:
        x, y = obj(), obj()
        f = cat.random_morphism(rng, x, y)
        return {"x": x, "y": y, "f": f}, ""

    if axiom == AxiomId.VanishingII:
        x, y, u, v = obj(), obj(), obj(), obj()
        contract = bool(rng.integers(0, 2))
        dom = cat.tensor_obj(x, cat.tensor_obj(u, v))
        cod = cat.tensor_obj(y, cat.tensor_obj(u, v))
        f = cat.random_morphism(rng, dom, cod, contract=contract)
        return {"x": x, "y": y, "u": u, "v": v, "f": f}, ""

    # directed axioms: reject until the inner trace over u is defined
    x, y, u = obj(), obj(), obj()
    f = None
    for attempt in range(REJECTION_CAP):
        cand = cat.random_morphism(
            rng, cat.tensor_obj(x, u), cat.tensor_obj(y, u), contract=True
        )
        if _inner_trace_defined(cat, cand, x, y, u, tol):
            f = cand
            break
    if f is None:
        return None, f"rejection cap {REJECTION_CAP} hit for {axiom.value}"

    if axiom == AxiomId.Naturality:
        xp, yp = obj(), obj()
        g = cat.random_morphism(rng, xp, x)
        h = cat.random_morphism(rng, y, yp)
        return {"x": x, "y": y, "u": u, "xp": xp, "yp": yp, "f": f, "g": g, "h": h}, ""
    if axiom == AxiomId.Superposing:
        w, z = obj(), obj()
        g = cat.random_morphism(rng, w, z)
        return {"x": x, "y": y, "u": u, "w": w, "z": z, "f": f, "g": g}, ""
    if axiom == AxiomId.Strength:
        c, d = obj(), obj()
        g = cat.random_morphism(rng, c, d)
        return {"x": x, "y": y, "u": u, "c": c, "d": d, "f": f, "g": g}, ""

    raise ValueError(f"unknown axiom {axiom!r}")


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def _safe_trace(cat: Category, f, x, y, u, tol: Tol):
    try:
        return cat.trace(f, x, y, u, tol), ""
    except NoConvergenceError as exc:
        return TraceOutcome(False), str(exc)


def _margins(*outcomes):
    return [o.margin for o in outcomes if o is not None and o.margin is not None]


def _directed(cat, lhs_value, rhs: TraceOutcome, margins, tol: Tol, note="") -> EvalResult:
    if not rhs.defined:
        return EvalResult("lhs_defined", False, note=note or "rhs undefined with lhs defined",
                          margins=margins)
    dev = cat.deviation(lhs_value, rhs.value)
    return EvalResult("lhs_defined", dev <= tol.eq_tol, deviation=dev, margins=margins,
                      note=note)


def check_axiom(cat_id, axiom, sample: dict, tol: Tol = DEFAULT_TOL) -> EvalResult:
    cat = get_category(cat_id)
    axiom = AxiomId(axiom)

    if axiom == AxiomId.Yanking:
        u = sample["u"]
        sym = cat.symmetry(u, u)
        out, note = _safe_trace(cat, sym, u, u, u, tol)
        if not out.defined:
            return EvalResult("undefined", False, note=note or "yanking trace undefined",
                              margins=_margins(out))
        dev = cat.deviation(out.value, cat.identity(u))
        return EvalResult("defined", dev <= tol.eq_tol, deviation=dev, margins=_margins(out))

    if axiom == AxiomId.Naturality:
        x, y, u = sample["x"], sample["y"], sample["u"]
        f, g, h = sample["f"], sample["g"], sample["h"]
        inner, n1 = _safe_trace(cat, f, x, y, u, tol)
        if not inner.defined:
            return EvalResult("lhs_undefined", True, note=n1, margins=_margins(inner))
        lhs = cat.compose(h, cat.compose(inner.value, g))
        iu = cat.identity(u)
        conj = cat.compose(cat.tensor(h, iu), cat.compose(f, cat.tensor(g, iu)))
        rhs, n2 = _safe_trace(cat, conj, sample["xp"], sample["yp"], u, tol)
        return _directed(cat, lhs, rhs, _margins(inner, rhs), tol, note=n2)

    if axiom == AxiomId.Dinaturality:
        x, y, u, up = sample["x"], sample["y"], sample["u"], sample["up"]
        f, g = sample["f"], sample["g"]
        left_arg = cat.compose(cat.tensor(cat.identity(y), g), f)
        right_arg = cat.compose(f, cat.tensor(cat.identity(x), g))
        lhs, n1 = _safe_trace(cat, left_arg, x, y, u, tol)
        rhs, n2 = _safe_trace(cat, right_arg, x, y, up, tol)
        return _bidirectional(cat, lhs, rhs, tol, note=n1 or n2)

    if axiom == AxiomId.VanishingI:
        x, y, f = sample["x"], sample["y"], sample["f"]
        out, note = _safe_trace(cat, f, x, y, cat.unit(), tol)
        if not out.defined:
            return EvalResult("rhs_only", False, note=note or "trace over unit undefined",
                              margins=_margins(out))
        dev = cat.deviation(out.value, f)
        return EvalResult("both_defined", dev <= tol.eq_tol, deviation=dev,
                          margins=_margins(out))

    if axiom == AxiomId.VanishingII:
        x, y, u, v, f = sample["x"], sample["y"], sample["u"], sample["v"], sample["f"]
        uv = cat.tensor_obj(u, v)
        xu, yu = cat.tensor_obj(x, u), cat.tensor_obj(y, u)
        step, n1 = _safe_trace(cat, f, xu, yu, v, tol)
        if not step.defined:
            return EvalResult("premise_false", True, note=n1, margins=_margins(step))
        iter_out, n2 = _safe_trace(cat, step.value, x, y, u, tol)
        once, n3 = _safe_trace(cat, f, x, y, uv, tol)
        res = _bidirectional(cat, once, iter_out, tol, note=n2 or n3)
        res.margins.extend(_margins(step))
        return res

    if axiom == AxiomId.Superposing:
        x, y, u, w, z = sample["x"], sample["y"], sample["u"], sample["w"], sample["z"]
        f, g = sample["f"], sample["g"]
        inner, n1 = _safe_trace(cat, f, x, y, u, tol)
        if not inner.defined:
            return EvalResult("lhs_undefined", True, note=n1, margins=_margins(inner))
        lhs = cat.tensor(g, inner.value)
        rhs, n2 = _safe_trace(
            cat, cat.tensor(g, f), cat.tensor_obj(w, x), cat.tensor_obj(z, y), u, tol
        )
        return _directed(cat, lhs, rhs, _margins(inner, rhs), tol, note=n2)

    if axiom == AxiomId.Strength:
        x, y, u, c, d = sample["x"], sample["y"], sample["u"], sample["c"], sample["d"]
        f, g = sample["f"], sample["g"]
        inner, n1 = _safe_trace(cat, f, x, y, u, tol)
        if not inner.defined:
            return EvalResult("lhs_undefined", True, note=n1, margins=_margins(inner))
        lhs = cat.tensor(inner.value, g)
        pre = cat.tensor(cat.identity(x), cat.symmetry(c, u))
        post = cat.tensor(cat.identity(y), cat.symmetry(u, d))
        arg = cat.compose(post, cat.compose(cat.tensor(f, g), pre))
        rhs, n2 = _safe_trace(
            cat, arg, cat.tensor_obj(x, c), cat.tensor_obj(y, d), u, tol
        )
        return _directed(cat, lhs, rhs, _margins(inner, rhs), tol, note=n2)

    raise ValueError(f"unknown axiom {axiom!r}")


def _bidirectional(cat, lhs: TraceOutcome, rhs: TraceOutcome, tol: Tol, note="") -> EvalResult:
    margins = _margins(lhs, rhs)
    if lhs.defined and rhs.defined:
        dev = cat.deviation(lhs.value, rhs.value)
        return EvalResult("both_defined", dev <= tol.eq_tol, deviation=dev,
                          margins=margins, note=note)
    if not lhs.defined and not rhs.defined:
        return EvalResult("both_undefined", True, margins=margins, note=note)
    pattern = "lhs_only" if lhs.defined else "rhs_only"
    return EvalResult(pattern, False, margins=margins,
                      note=note or "definedness mismatch")


# --------------------------------------------------------------------------
# driver
# --------------------------------------------------------------------------


def run_axiom_samples(
    cat_id,
    axiom,
    n_samples: int,
    seed: int = 0,
    dim_max: Optional[int] = None,
    tol: Tol = DEFAULT_TOL,
) -> CheckReport:
    cat_id = CategoryId(cat_id)
    axiom = AxiomId(axiom)
    cat = get_category(cat_id)
    patterns: dict = {}
    skipped = 0
    failures = 0
    max_dev = 0.0
    min_margin = float("inf")
    witness = None
    notes: list = []

    for idx in range(n_samples):
        rng = np.random.default_rng(sample_seed(seed, cat_id.value, axiom.value, idx))
        sample, note = generate_sample(cat_id, axiom, rng, dim_max, tol)
        if sample is None:
            skipped += 1
            if note and note not in notes:
                notes.append(note)
            continue
        res = check_axiom(cat_id, axiom, sample, tol)
        patterns[res.pattern] = patterns.get(res.pattern, 0) + 1
        max_dev = max(max_dev, res.deviation)
        for m in res.margins:
            if np.isfinite(m):
                min_margin = min(min_margin, abs(m))
        if not res.ok:
            failures += 1
            if witness is None:
                witness = {
                    "sample_index": idx,
                    "pattern": res.pattern,
                    "deviation": res.deviation,
                    "note": res.note,
                    "objects": {
                        k: (list(v) if isinstance(v, tuple) else v)
                        for k, v in sample.items()
                        if isinstance(v, (int, tuple))
                    },
                }
                if "f" in sample:
                    witness["f"] = cat.serialize(sample["f"])
        if res.note and res.note not in notes:
            notes.append(res.note)

    passed = failures == 0 and skipped <= n_samples // 2
    if skipped > n_samples // 2:
        notes.append("skip rate above 50%")
    return CheckReport(
        category=cat_id.value,
        axiom=axiom.value,
        samples=n_samples,
        skipped=skipped,
        patterns=patterns,
        max_deviation=max_dev,
        min_abs_margin=min_margin if np.isfinite(min_margin) else float("inf"),
        failures=failures,
        passed=passed,
        witness=witness,
        notes=notes,
    )
