"""Command-line verification harness.

Subcommands bundle the checks of each layer into reproducible suites:
`axioms` runs the randomized trace-axiom grid, `intp` the paracategory and
compact-closure checks, `completions` the functor-level checks, `presheaf`
the Day/Kan/comonad checks, and `all` everything.  Reports are JSON with
sorted keys and deterministic content for a fixed configuration.
"""
from __future__ import annotations

import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import completions as comp
from . import intp
from .finpresheaf import (
    BangComonad,
    Bifunctor,
    Functor,
    Presheaf,
    check_lan_strong_monoidal,
    coend,
    day_alpha,
    day_lambda,
    day_rho,
    day_sigma,
    day_tensor,
    day_unit,
    enumerate_nat_trans,
    identity_functor,
    lan_along,
    lan_counit,
    lan_on_nattrans,
    lan_unit,
    load_base,
    precompose,
    representable,
)
from .matcore import Tol, DEFAULT_TOL, max_abs_diff
from .tracecats import AxiomId, CategoryId, run_axiom_samples
from .tracecats.categories import get_category, trace_preserving_defect

SCHEMA = "tracelab/1"

INT_BASES = (
    CategoryId.VECT_OPLUS_INV,
    CategoryId.SREL_TENSOR,
    CategoryId.CPMS_TENSOR,
    CategoryId.FHILB_TENSOR,
)
TOTAL_INT_BASES = (CategoryId.CPMS_TENSOR, CategoryId.FHILB_TENSOR)


def _tol_from(tol_value):
    if tol_value is None:
        tol_value = os.environ.get("TRACELAB_TOL")
    if tol_value is None:
        return DEFAULT_TOL
    return Tol(eq_tol=float(tol_value))


def _seed_rng(seed, *parts):
    text = "|".join([str(seed)] + [str(p) for p in parts])
    return np.random.default_rng(int(hashlib.sha256(text.encode()).hexdigest()[:8], 16))


def _entry(suite, name, category, passed, samples=1, skipped=0, max_deviation=0.0,
           patterns=None, notes=None, witness=None, wall_time_s=0.0):
    return {
        "suite": suite,
        "name": name,
        "category": category,
        "passed": bool(passed),
        "samples": int(samples),
        "skipped": int(skipped),
        "max_deviation": float(max_deviation),
        "patterns": patterns or {},
        "notes": notes or [],
        "witness": witness,
        "wall_time_s": wall_time_s,
    }


def _timed(fn):
    t0 = time.perf_counter()
    e = fn()
    e["wall_time_s"] = time.perf_counter() - t0
    return e


# ==========================================================================
# suite: axioms
# ==========================================================================


def axioms_tasks(seed, samples, dim_max, tol, categories, axioms):
    tasks = []
    for cid in categories:
        for ax in axioms:
            def task(cid=cid, ax=ax):
                rep = run_axiom_samples(cid, ax, samples, seed=seed, dim_max=dim_max, tol=tol)
                d = rep.to_dict()
                return _entry(
                    "axioms", d["axiom"], d["category"], d["passed"],
                    samples=d["samples"], skipped=d["skipped"],
                    max_deviation=d["max_deviation"], patterns=d["patterns"],
                    notes=d["notes"], witness=d["witness"],
                )
            tasks.append(task)
    return tasks


# ==========================================================================
# suite: intp
# ==========================================================================


def _random_int_arrow(cat, cid, rng, dom, cod, contract=True):
    base = cat.random_morphism(
        rng, cat.tensor_obj(dom.plus, cod.minus), cat.tensor_obj(cod.plus, dom.minus),
        contract=contract,
    )
    return intp.IntArrow(dom, cod, base)


def _random_int_obj(cat, rng, dmax=2):
    return intp.IntObject(cat.random_object(rng, dmax), cat.random_object(rng, dmax))


def _intp_paracategory(cid, seed, samples, tol):
    cat = get_category(cid)
    patterns = {}
    failures, max_dev, skipped = 0, 0.0, 0
    for idx in range(samples):
        rng = _seed_rng(seed, cid.value, "intp.paracategory_c", idx)
        objs = [_random_int_obj(cat, rng) for _ in range(5)]
        r = _random_int_arrow(cat, cid, rng, objs[0], objs[1])
        g1 = _random_int_arrow(cat, cid, rng, objs[1], objs[2])
        g2 = _random_int_arrow(cat, cid, rng, objs[2], objs[3])
        s = _random_int_arrow(cat, cid, rng, objs[3], objs[4])
        mid = intp.path_compose(cid, [g1, g2], tol)
        if not mid.defined:
            patterns["premise_false"] = patterns.get("premise_false", 0) + 1
            continue
        lhs = intp.path_compose(cid, [r, mid.value, s], tol)
        rhs = intp.path_compose(cid, [r, g1, g2, s], tol)
        if lhs.defined != rhs.defined:
            failures += 1
            patterns["definedness_mismatch"] = patterns.get("definedness_mismatch", 0) + 1
            continue
        if lhs.defined:
            dev = cat.deviation(lhs.value.base, rhs.value.base)
            max_dev = max(max_dev, dev)
            key = "both_defined"
            if dev > tol.eq_tol:
                failures += 1
        else:
            key = "both_undefined"
        patterns[key] = patterns.get(key, 0) + 1
    return _entry("intp", "paracategory_c", cid.value, failures == 0,
                  samples=samples, skipped=skipped, max_deviation=max_dev,
                  patterns=patterns)


def _intp_compact(cid, seed, samples, tol):
    cat = get_category(cid)
    failures, max_dev = 0, 0.0
    for idx in range(samples):
        rng = _seed_rng(seed, cid.value, "intp.compact", idx)
        a = _random_int_obj(cat, rng)
        b = _random_int_obj(cat, rng)
        eta, eps = intp.int_unit_counit(cid, a)
        ia = intp.int_identity(cat, a)
        ias = intp.int_identity(cat, intp.int_dual(a))
        snake = intp.path_compose(cid, [intp.int_tensor(cid, eta, ia),
                                        intp.int_tensor(cid, ia, eps)], tol)
        cosnake = intp.path_compose(cid, [intp.int_tensor(cid, ias, eta),
                                          intp.int_tensor(cid, eps, ias)], tol)
        s1 = intp.int_symmetry(cid, a, b)
        s2 = intp.int_symmetry(cid, b, a)
        round_trip = intp.path_compose(cid, [s1, s2], tol)
        iab = intp.int_identity(cat, intp.int_tensor_obj(cat, a, b))
        ok = snake.defined and cosnake.defined and round_trip.defined
        if ok:
            dev = max(
                cat.deviation(snake.value.base, ia.base),
                cat.deviation(cosnake.value.base, ias.base),
                cat.deviation(round_trip.value.base, iab.base),
            )
            max_dev = max(max_dev, dev)
            ok = dev <= tol.eq_tol
        if not ok:
            failures += 1
    return _entry("intp", "compact_closure", cid.value, failures == 0,
                  samples=samples, max_deviation=max_dev)


def _intp_n_preservation(cid, seed, samples, tol):
    cat = get_category(cid)
    failures, max_dev, skipped = 0, 0.0, 0
    patterns = {}
    for idx in range(samples):
        rng = _seed_rng(seed, cid.value, "intp.n_preservation", idx)
        x, y, u = (cat.random_object(rng, 2) for _ in range(3))
        f = None
        for _ in range(200):
            cand = cat.random_morphism(rng, cat.tensor_obj(x, u), cat.tensor_obj(y, u),
                                       contract=True)
            if cat.in_trace_class(cand, x, y, u, tol)[0]:
                f = cand
                break
        if f is None:
            skipped += 1
            continue
        rep = intp.check_N_trace_preservation(cid, f, x, y, u, tol)
        for k, v in rep.patterns.items():
            patterns[k] = patterns.get(k, 0) + v
        max_dev = max(max_dev, rep.max_deviation)
        if not rep.passed:
            failures += 1
    return _entry("intp", "n_trace_preservation", cid.value, failures == 0,
                  samples=samples, skipped=skipped, max_deviation=max_dev,
                  patterns=patterns)


def _intp_interchange(cid, seed, samples, tol):
    cat = get_category(cid)
    failures, max_dev = 0, 0.0
    for idx in range(samples):
        rng = _seed_rng(seed, cid.value, "intp.interchange", idx)
        a, b, c = (_random_int_obj(cat, rng) for _ in range(3))
        a2, b2, c2 = (_random_int_obj(cat, rng) for _ in range(3))
        f = _random_int_arrow(cat, cid, rng, a, b)
        g = _random_int_arrow(cat, cid, rng, b, c)
        f2 = _random_int_arrow(cat, cid, rng, a2, b2)
        g2 = _random_int_arrow(cat, cid, rng, b2, c2)
        lhs = intp.int_tensor(
            cid,
            intp.path_compose(cid, [f, g], tol).value,
            intp.path_compose(cid, [f2, g2], tol).value,
        )
        rhs = intp.path_compose(
            cid, [intp.int_tensor(cid, f, f2), intp.int_tensor(cid, g, g2)], tol
        ).value
        dev = cat.deviation(lhs.base, rhs.base)
        max_dev = max(max_dev, dev)
        if dev > tol.eq_tol:
            failures += 1
    return _entry("intp", "tensor_interchange", cid.value, failures == 0,
                  samples=samples, max_deviation=max_dev)


def intp_tasks(seed, samples, dim_max, tol, categories=None):
    cats = categories or INT_BASES
    tasks = []
    for cid in cats:
        tasks.append(lambda cid=cid: _intp_paracategory(cid, seed, samples, tol))
        tasks.append(lambda cid=cid: _intp_compact(cid, seed, samples, tol))
        tasks.append(lambda cid=cid: _intp_n_preservation(cid, seed, samples, tol))
        if cid in TOTAL_INT_BASES:
            tasks.append(lambda cid=cid: _intp_interchange(cid, seed, samples, tol))
    return tasks


# ==========================================================================
# suite: completions
# ==========================================================================


def _completions_laws(seed, samples, tol):
    failures, max_dev = 0, 0.0
    notes = []
    q = get_category(CategoryId.Q_OPLUS_TOTAL)
    for idx in range(samples):
        rng = _seed_rng(seed, "completions.laws", idx)
        v = comp.random_family(rng)
        m1 = comp.random_family_morphism(rng, v)
        m2 = comp.random_family_morphism(rng, m1.cod)
        m3 = comp.random_family_morphism(rng, m2.cod)
        lhs = comp.cplus_compose(m3, comp.cplus_compose(m2, m1))
        rhs = comp.cplus_compose(comp.cplus_compose(m3, m2), m1)
        if lhs != rhs:
            failures += 1
            notes.append("composition not associative")
        ident = comp.cplus_identity(v)
        if comp.cplus_compose(m1, ident) != m1:
            failures += 1
            notes.append("identity law broke")
        psi_lhs = comp.psi_map(comp.cplus_compose(m2, m1))
        psi_rhs = q.compose(comp.psi_map(m2), comp.psi_map(m1))
        dev = max_abs_diff(psi_lhs.data, psi_rhs.data)
        defect = trace_preserving_defect(comp.psi_map(m1))
        max_dev = max(max_dev, dev, defect)
        if dev > tol.eq_tol or defect > tol.eq_tol:
            failures += 1
            notes.append("psi functoriality or trace preservation broke")
    return _entry("completions", "cplus_psi_laws", "QPP", failures == 0,
                  samples=samples, max_deviation=max_dev, notes=sorted(set(notes)))


def _completions_hatf(seed, samples, tol):
    failures, max_dev = 0, 0.0
    for idx in range(samples):
        rng = _seed_rng(seed, "completions.hatf", idx)
        dom = comp.random_seq(rng, max_len=3)
        f1 = comp.random_inj_into(rng, dom)
        f2 = comp.random_inj_into(rng, f1.cod)
        lhs = comp.hatF_superop(comp.fwm_compose(f2, f1)).transfer
        rhs = comp.hatF_superop(f2).transfer @ comp.hatF_superop(f1).transfer
        dev = max(max_abs_diff(lhs, rhs),
                  trace_preserving_defect(comp.hatF_superop(f1)))
        max_dev = max(max_dev, dev)
        if dev > tol.eq_tol:
            failures += 1
    return _entry("completions", "hatF_functorial", "Fwm", failures == 0,
                  samples=samples, max_deviation=max_dev)


def _completions_phi(seed, samples, tol):
    failures = 0
    notes = []
    for a in range(0, 4):
        for b in range(0, 4):
            homs = comp.cplus_homs(comp.phi_embed(a), comp.phi_embed(b))
            expect = b ** a if (a, b) != (0, 0) else 1
            if a == 0:
                expect = 1
            if len(homs) != expect:
                failures += 1
                notes.append(f"hom count mismatch at |A|={a}, |B|={b}")
    return _entry("completions", "phi_fully_faithful_counts", "QPP", failures == 0,
                  samples=16, notes=notes)


def _completions_kernel(seed, samples, tol):
    failures = 0
    patterns = {}
    for idx in range(samples):
        rng = _seed_rng(seed, "completions.kernel", idx)
        def small(rng):
            n = int(rng.integers(1, 4))
            seqs = [(), (2,), (3,), (2, 2)]
            return comp.FamilyObject(tuple(seqs[i] for i in rng.integers(0, 4, size=n)))
        b = int(rng.integers(0, 3))
        rep = comp.kernel_bijection_check(b, small(rng), small(rng), rng=rng,
                                          n_naturality=5)
        for k, v in rep.patterns.items():
            patterns[k] = patterns.get(k, 0) + v
        if not rep.passed:
            failures += 1
    return _entry("completions", "multiplicative_kernel", "QPP", failures == 0,
                  samples=samples, patterns=patterns)


def completions_tasks(seed, samples, dim_max, tol):
    n = max(5, samples // 4)
    return [
        lambda: _completions_laws(seed, n, tol),
        lambda: _completions_hatf(seed, samples, tol),
        lambda: _completions_phi(seed, samples, tol),
        lambda: _completions_kernel(seed, min(n, 20), tol),
    ]


# ==========================================================================
# suite: presheaf
# ==========================================================================


def _random_presheaf(mon, rng, max_size=3):
    cat = mon.cat
    sets = {a: [f"{a}.{i}" for i in range(int(rng.integers(1, max_size + 1)))]
            for a in cat.objects}
    maps = {}
    for f in sorted(cat.arrows):
        a, b = cat.arrows[f]
        if f == cat.identities.get(b) and a == b:
            maps[f] = {x: x for x in sets[a]}
        else:
            maps[f] = {x: sets[a][int(rng.integers(len(sets[a])))] for x in sets[b]}
    # the shipped non-discrete base is a poset, so any choice is functorial
    return Presheaf(cat, sets, maps).validate()


def _presheaf_day(seed, samples, tol):
    failures = 0
    notes = []
    count = 0
    for base_name in ("z2", "z3", "affine2"):
        mon = load_base(base_name)
        for idx in range(max(2, samples // 10)):
            rng = _seed_rng(seed, "presheaf.day", base_name, idx)
            f = _random_presheaf(mon, rng)
            g = _random_presheaf(mon, rng)
            h = _random_presheaf(mon, rng, max_size=2)
            unit = day_unit(mon)
            fg = day_tensor(f, g, mon)
            gf = day_tensor(g, f, mon)
            checks = [
                day_lambda(mon, f, day_tensor(unit, f, mon)),
                day_rho(mon, f, day_tensor(f, unit, mon)),
                day_sigma(mon, fg, gf),
                day_alpha(mon, day_tensor(fg, h, mon),
                          day_tensor(f, day_tensor(g, h, mon), mon),
                          day_tensor(g, h, mon)),
            ]
            count += len(checks)
            for t in checks:
                try:
                    t.validate()
                except Exception as exc:
                    failures += 1
                    notes.append(f"{base_name}: {exc}")
                    continue
                if not t.is_iso():
                    failures += 1
                    notes.append(f"{base_name}: structural map not a bijection")
    return _entry("presheaf", "day_structural_isos", "finpresheaf", failures == 0,
                  samples=count, notes=sorted(set(notes)))


def _presheaf_lan(seed, samples, tol):
    failures = 0
    notes = []
    z2 = load_base("z2")
    term = load_base("terminal")
    phi = Functor(term.cat, z2.cat, {"*": "0"}, {"id*": "id0"}).validate()
    psi = Functor(z2.cat, term.cat, {"0": "*", "1": "*"},
                  {"id0": "id*", "id1": "id*"}).validate()
    rng = _seed_rng(seed, "presheaf.lan")
    f = _random_presheaf(term, rng)
    g = _random_presheaf(z2, rng)

    lan_f = lan_along(phi, f)
    t1_first = lan_on_nattrans(phi, lan_unit(phi, f, lan_f), lan_f,
                               lan_along(phi, precompose(phi, lan_f)))
    t1_second = lan_counit(phi, lan_f)
    for b in z2.cat.objects:
        for e in lan_f.sets[b]:
            if t1_second.components[b][t1_first.components[b][e]] != e:
                failures += 1
                notes.append("first triangle identity broke")
    pg = precompose(phi, g)
    eta = lan_unit(phi, pg)
    eps = lan_counit(phi, g)
    for a in term.cat.objects:
        for x in pg.sets[a]:
            if eps.components[phi.on_obj[a]][eta.components[a][x]] != x:
                failures += 1
                notes.append("second triangle identity broke")

    bang_ff = BangComonad(phi)
    if not bang_ff.check_idempotent(g):
        failures += 1
        notes.append("fully faithful base: delta should be iso")
    bang_collapse = BangComonad(psi)
    if bang_collapse.check_idempotent(f):
        failures += 1
        notes.append("collapsing functor: delta should fail to be iso")

    for mono, phi2, src, dst in [
        ("terminal->z2", phi, term, z2),
        ("id z2", identity_functor(z2.cat), z2, z2),
    ]:
        f2 = _random_presheaf(src, _seed_rng(seed, "presheaf.lan.sm", mono, 0))
        g2 = _random_presheaf(src, _seed_rng(seed, "presheaf.lan.sm", mono, 1))
        rep = check_lan_strong_monoidal(phi2, src, dst, f2, g2)
        if not rep.passed:
            failures += 1
            notes.append(f"Lan not strong monoidal for {mono}: {rep.notes}")

    # affine base: the Day unit is terminal
    aff = load_base("affine2")
    f3 = _random_presheaf(aff, _seed_rng(seed, "presheaf.lan.affine"))
    if len(enumerate_nat_trans(f3, day_unit(aff))) != 1:
        failures += 1
        notes.append("Day unit of the affine base is not terminal")
    return _entry("presheaf", "kan_and_comonad", "finpresheaf", failures == 0,
                  samples=8, notes=sorted(set(notes)))


def _presheaf_coend(seed, samples, tol):
    """Density: the coend of S(a) x Hom(b, a') collapses to S(b)."""
    failures = 0
    notes = []
    for base_name in ("z2", "affine2"):
        mon = load_base(base_name)
        cat = mon.cat
        rng = _seed_rng(seed, "presheaf.coend", base_name)
        s = _random_presheaf(mon, rng)
        for b in cat.objects:
            sets = {(am, ap): [(x, h) for x in s.sets[am] for h in cat.hom(b, ap)]
                    for am in cat.objects for ap in cat.objects}
            h = Bifunctor(
                cat, sets,
                left=lambda f, c, e: (s.maps[f][e[0]], e[1]),
                right=lambda c, f, e: (e[0], cat.comp[(f, e[1])]),
            ).validate()
            r = coend(h)
            if len(r.classes) != len(s.sets[b]):
                failures += 1
                notes.append(f"density coend size mismatch on {base_name} at {b}")
    return _entry("presheaf", "coend_density", "finpresheaf", failures == 0,
                  samples=4, notes=notes)


def presheaf_tasks(seed, samples, dim_max, tol):
    return [
        lambda: _presheaf_day(seed, samples, tol),
        lambda: _presheaf_lan(seed, samples, tol),
        lambda: _presheaf_coend(seed, samples, tol),
    ]


# ==========================================================================
# report plumbing
# ==========================================================================


def _json_scalar(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return json.dumps(x)
    if isinstance(x, float):
        if x != x:
            return '"NaN"'
        if x == float("inf"):
            return '"Infinity"'
        if x == float("-inf"):
            return '"-Infinity"'
        return "%.17g" % x
    raise TypeError(f"not a scalar: {type(x)!r}")


def _json_dump(obj):
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: str(kv[0]))
        return "{" + ",".join(json.dumps(str(k)) + ":" + _json_dump(v) for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_json_dump(v) for v in obj) + "]"
    if isinstance(obj, (np.floating,)):
        return _json_scalar(float(obj))
    if isinstance(obj, (np.integer,)):
        return _json_scalar(int(obj))
    return _json_scalar(obj)


def emit_report(report: dict, path) -> None:
    """Sorted-key UTF-8 JSON with floats at 17 significant digits."""
    text = _json_dump(report)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise click.ClickException(f"cannot write report to {path}: {exc}")


def _run_tasks(tasks, jobs):
    if jobs <= 1:
        entries = [_timed(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_timed, tasks))
    entries.sort(key=lambda e: (e["suite"], e["category"], e["name"]))
    return entries


def _finish(entries, config, report_path, t0):
    passed = all(e["passed"] for e in entries)
    report = {
        "schema": SCHEMA,
        "config": config,
        "passed": passed,
        "entries": entries,
        "wall_time_s": time.perf_counter() - t0,
    }
    if report_path:
        emit_report(report, report_path)
    for e in entries:
        status = "pass" if e["passed"] else "FAIL"
        click.echo(f"[{status}] {e['suite']}/{e['category']}/{e['name']} "
                   f"samples={e['samples']} skipped={e['skipped']} "
                   f"max_dev={e['max_deviation']:.3e}")
    click.echo("PASS" if passed else "FAIL")
    return 0 if passed else 1


def _common(fn):
    fn = click.option("--seed", default=0, type=int, show_default=True)(fn)
    fn = click.option("--samples", default=50, type=int, show_default=True)(fn)
    fn = click.option("--dim-max", default=None, type=int)(fn)
    fn = click.option("--tol", default=None, type=float)(fn)
    fn = click.option("--report", "report_path", default=None, type=click.Path())(fn)
    fn = click.option("--jobs", default=1, type=int, show_default=True)(fn)
    return fn


def _validate(samples, jobs):
    if samples < 1:
        raise click.UsageError("--samples must be >= 1")
    if jobs < 1:
        raise click.UsageError("--jobs must be >= 1")


@click.group()
def main():
    """Numerical verification suites for traced categories and friends."""


@main.command("axioms")
@_common
@click.option("--category", "categories", multiple=True,
              type=click.Choice([c.value for c in CategoryId]))
@click.option("--axioms", "axioms", multiple=True,
              type=click.Choice([a.value for a in AxiomId]))
def cmd_axioms(seed, samples, dim_max, tol, report_path, jobs, categories, axioms):
    """Randomized checks of the seven partial-trace axioms."""
    _validate(samples, jobs)
    t0 = time.perf_counter()
    tolv = _tol_from(tol)
    cats = [CategoryId(c) for c in categories] or list(CategoryId)
    axs = [AxiomId(a) for a in axioms] or list(AxiomId)
    tasks = axioms_tasks(seed, samples, dim_max, tolv, cats, axs)
    entries = _run_tasks(tasks, jobs)
    config = {"command": "axioms", "seed": seed, "samples": samples,
              "dim_max": dim_max, "tol": tolv.eq_tol,
              "categories": [c.value for c in cats], "axioms": [a.value for a in axs]}
    sys.exit(_finish(entries, config, report_path, t0))


def _simple_command(name, task_fn, doc):
    @main.command(name)
    @_common
    def cmd(seed, samples, dim_max, tol, report_path, jobs):
        _validate(samples, jobs)
        t0 = time.perf_counter()
        tolv = _tol_from(tol)
        tasks = task_fn(seed, samples, dim_max, tolv)
        entries = _run_tasks(tasks, jobs)
        config = {"command": name, "seed": seed, "samples": samples,
                  "dim_max": dim_max, "tol": tolv.eq_tol}
        sys.exit(_finish(entries, config, report_path, t0))

    cmd.__doc__ = doc
    return cmd


_simple_command("intp", intp_tasks,
                "Paracategory, compact closure and embedding checks.")
_simple_command("completions", completions_tasks,
                "Family/injection completions and the functors out of them.")
_simple_command("presheaf", presheaf_tasks,
                "Day convolution, Kan extension and comonad checks.")


@main.command("all")
@_common
def cmd_all(seed, samples, dim_max, tol, report_path, jobs):
    """Every suite with one shared configuration."""
    _validate(samples, jobs)
    t0 = time.perf_counter()
    tolv = _tol_from(tol)
    tasks = (
        axioms_tasks(seed, samples, dim_max, tolv, list(CategoryId), list(AxiomId))
        + intp_tasks(seed, max(5, samples // 5), dim_max, tolv)
        + completions_tasks(seed, samples, dim_max, tolv)
        + presheaf_tasks(seed, samples, dim_max, tolv)
    )
    entries = _run_tasks(tasks, jobs)
    config = {"command": "all", "seed": seed, "samples": samples,
              "dim_max": dim_max, "tol": tolv.eq_tol}
    sys.exit(_finish(entries, config, report_path, t0))


def run(argv) -> int:
    """Programmatic entry point; returns the process exit code."""
    try:
        main(args=list(argv), standalone_mode=False)
        return 0
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1


if __name__ == "__main__":
    main()
