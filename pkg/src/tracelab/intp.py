"""The partial Int construction over any traced base category.

Objects are pairs (plus, minus) of base objects.  An arrow a -> b is carried
by a single base morphism of type plus(a) (x) minus(b) -> plus(b) (x) minus(a).
Composition is not binary but n-ary and partial: a whole path of arrows is
collapsed in one shot by feeding all intermediate minus-wires back through a
single base trace.  Everything else (tensor, symmetry, duals) is pure wire
bookkeeping realized with factor permutations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .matcore import Tol, DEFAULT_TOL
from .tracecats.core import CategoryId, ObjectMismatchError, TraceOutcome
from .tracecats.categories import Category, get_category
from .tracecats.axioms import CheckReport


@dataclass(frozen=True)
class IntObject:
    plus: object
    minus: object


@dataclass(frozen=True)
class IntArrow:
    dom: IntObject
    cod: IntObject
    base: object


def int_unit(cat: Category) -> IntObject:
    return IntObject(cat.unit(), cat.unit())


def int_tensor_obj(cat: Category, a: IntObject, b: IntObject) -> IntObject:
    # (A+, A-) (x) (B+, B-) = (A+ (x) B+, B- (x) A-)
    return IntObject(cat.tensor_obj(a.plus, b.plus), cat.tensor_obj(b.minus, a.minus))


def int_dual(a: IntObject) -> IntObject:
    return IntObject(a.minus, a.plus)


def int_identity(cat: Category, a: IntObject) -> IntArrow:
    return IntArrow(a, a, cat.identity(cat.tensor_obj(a.plus, a.minus)))


def int_arrow(cat: Category, dom: IntObject, cod: IntObject, base) -> IntArrow:
    want_dom = cat.tensor_obj(dom.plus, cod.minus)
    want_cod = cat.tensor_obj(cod.plus, dom.minus)
    if base.dom != want_dom or base.cod != want_cod:
        raise ObjectMismatchError(
            f"base has type {base.dom} -> {base.cod}, expected {want_dom} -> {want_cod}"
        )
    return IntArrow(dom, cod, base)


class _Wiring:
    """A growing base-category composite tracked by labelled wires."""

    def __init__(self, cat: Category, wires):
        self.cat = cat
        self.wires = list(wires)  # list of (label, base object)
        self.dom = cat.tensor_obj_list([o for _, o in self.wires])
        self.morph = cat.identity(self.dom)

    def _apply_perm(self, perm):
        p = self.cat.permute([o for _, o in self.wires], perm)
        self.morph = self.cat.compose(p, self.morph)
        self.wires = [self.wires[i] for i in perm]

    def bring_front(self, la, lb):
        """Move the two labelled wires to the front, keeping the rest in order."""
        idx = {lab: i for i, (lab, _) in enumerate(self.wires)}
        a, b = idx[la], idx[lb]
        perm = [a, b] + [i for i in range(len(self.wires)) if i not in (a, b)]
        self._apply_perm(perm)

    def apply_box(self, base, consumed: int, produced):
        """Compose base (x) id(rest) where base eats the first `consumed` wires."""
        rest = [o for _, o in self.wires[consumed:]]
        box = self.cat.tensor(base, self.cat.identity(self.cat.tensor_obj_list(rest)))
        self.morph = self.cat.compose(box, self.morph)
        self.wires = list(produced) + self.wires[consumed:]

    def finish(self, order):
        idx = {lab: i for i, (lab, _) in enumerate(self.wires)}
        self._apply_perm([idx[lab] for lab in order])
        return self.morph


def _check_path(path: Sequence[IntArrow]):
    for a, b in zip(path, path[1:]):
        if a.cod != b.dom:
            raise ObjectMismatchError(f"path not composable at {a.cod} vs {b.dom}")


def _wired(cat: Category, path: Sequence[IntArrow]):
    """The full feedback composite before tracing.

    Domain wires: X_1+, X_{n+1}-, then the feedback copies X_n-, ..., X_2- in
    descending stage order; codomain wires end up as X_{n+1}+, X_1-, then the
    produced minus-wires X_n-, ..., X_2- in the same descending order.
    """
    n = len(path)
    objs = [path[0].dom] + [a.cod for a in path]
    wires = [(("plus", 1), objs[0].plus), (("minus", n + 1), objs[n].minus)]
    wires += [(("fb", j), objs[j - 1].minus) for j in range(n, 1, -1)]
    w = _Wiring(cat, wires)
    for i in range(1, n + 1):
        need = ("fb", i + 1) if i < n else ("minus", n + 1)
        w.bring_front(("plus", i), need)
        w.apply_box(
            path[i - 1].base,
            2,
            [(("plus", i + 1), objs[i].plus), (("out", i), objs[i - 1].minus)],
        )
    order = [("plus", n + 1), ("out", 1)] + [("out", j) for j in range(n, 1, -1)]
    morph = w.finish(order)
    x_pair = cat.tensor_obj(objs[0].plus, objs[n].minus)
    y_pair = cat.tensor_obj(objs[n].plus, objs[0].minus)
    fb_obj = cat.tensor_obj_list([objs[j - 1].minus for j in range(n, 1, -1)])
    return morph, x_pair, y_pair, fb_obj, objs


def epsilon_wiring(cat_id, path: Sequence[IntArrow]):
    """The pyramid composite, with the feedback wires in ascending order.

    Its global domain is X_1+ (x) X_{n+1}- (x) X_2- (x) ... (x) X_n-; the
    one-shot path composition below first reverses the feedback block and
    then traces it out.
    """
    cat = get_category(cat_id)
    if not path:
        raise ObjectMismatchError("epsilon_wiring needs a path of length >= 1")
    _check_path(path)
    morph, x_pair, _, _, objs = _wired(cat, path)
    n = len(path)
    if n == 1:
        return morph
    ascending = [objs[j - 1].minus for j in range(2, n + 1)]
    rev = list(range(n - 2, -1, -1))
    pre = cat.tensor(cat.identity(x_pair), cat.permute(ascending, rev))
    # morph = epsilon o pre, and the reversal is self-inverse
    return cat.compose(morph, pre)


def path_compose(
    cat_id,
    path: Sequence[IntArrow],
    tol: Tol = DEFAULT_TOL,
    anchor: Optional[IntObject] = None,
) -> TraceOutcome:
    """One-shot n-ary composition [f_1, ..., f_n]; partial for n >= 2."""
    cat = get_category(cat_id)
    path = list(path)
    if not path:
        if anchor is None:
            raise ObjectMismatchError("empty path needs an anchor object")
        return TraceOutcome.ok(int_identity(cat, anchor))
    _check_path(path)
    if len(path) == 1:
        return TraceOutcome.ok(path[0])
    morph, x_pair, y_pair, fb_obj, objs = _wired(cat, path)
    out = cat.trace(morph, x_pair, y_pair, fb_obj, tol)
    if not out.defined:
        return out
    return TraceOutcome.ok(IntArrow(objs[0], objs[-1], out.value), out.margin)


def int_tensor(cat_id, f: IntArrow, g: IntArrow) -> IntArrow:
    """f (x) g, built by routing each base morphism past the other's wires."""
    cat = get_category(cat_id)
    dom = int_tensor_obj(cat, f.dom, g.dom)
    cod = int_tensor_obj(cat, f.cod, g.cod)
    wires = [
        ("A+", f.dom.plus),
        ("B+", g.dom.plus),
        ("D-", g.cod.minus),
        ("C-", f.cod.minus),
    ]
    w = _Wiring(cat, wires)
    w.bring_front("A+", "C-")
    w.apply_box(f.base, 2, [("C+", f.cod.plus), ("A-", f.dom.minus)])
    w.bring_front("B+", "D-")
    w.apply_box(g.base, 2, [("D+", g.cod.plus), ("B-", g.dom.minus)])
    base = w.finish(["C+", "D+", "B-", "A-"])
    return IntArrow(dom, cod, base)


def int_symmetry(cat_id, a: IntObject, b: IntObject) -> IntArrow:
    """sigma_{a,b} = s_{A+,B+} (x) s_{A-,B-} on the base."""
    cat = get_category(cat_id)
    dom = int_tensor_obj(cat, a, b)
    cod = int_tensor_obj(cat, b, a)
    base = cat.tensor(cat.symmetry(a.plus, b.plus), cat.symmetry(a.minus, b.minus))
    return int_arrow(cat, dom, cod, base)


def int_unit_counit(cat_id, a: IntObject):
    """eta: I -> a (x) a* and eps: a* (x) a -> I, both identity bases."""
    cat = get_category(cat_id)
    unit = int_unit(cat)
    astar = int_dual(a)
    aa = int_tensor_obj(cat, a, astar)
    eta = int_arrow(
        cat, unit, aa, cat.identity(cat.tensor_obj(cat.unit(), aa.minus))
    )
    sa = int_tensor_obj(cat, astar, a)
    eps = int_arrow(
        cat, sa, unit, cat.identity(cat.tensor_obj(sa.plus, cat.unit()))
    )
    return eta, eps


def embed_N(cat_id, f) -> IntArrow:
    """The faithful embedding x |-> (x, I), f |-> f of the base category."""
    cat = get_category(cat_id)
    return IntArrow(IntObject(f.dom, cat.unit()), IntObject(f.cod, cat.unit()), f)


def check_N_trace_preservation(
    cat_id, f, x, y, u, tol: Tol = DEFAULT_TOL
) -> CheckReport:
    """N(Tr^U f) against the path [1 (x) eta; f (x) 1; 1 (x) sigma; 1 (x) eps].

    When the base trace is undefined the path composite must be undefined
    too; that counts as a consistent sample, not a failure.
    """
    cat = get_category(cat_id)
    cat_id = CategoryId(cat_id)
    nu = IntObject(u, cat.unit())
    nx, ny = IntObject(x, cat.unit()), IntObject(y, cat.unit())
    eta, eps = int_unit_counit(cat_id, nu)
    nf = int_arrow(
        cat,
        int_tensor_obj(cat, nx, nu),
        int_tensor_obj(cat, ny, nu),
        f,
    )
    sigma = int_symmetry(cat_id, nu, int_dual(nu))
    path = [
        int_tensor(cat_id, int_identity(cat, nx), eta),
        int_tensor(cat_id, nf, int_identity(cat, int_dual(nu))),
        int_tensor(cat_id, int_identity(cat, ny), sigma),
        int_tensor(cat_id, int_identity(cat, ny), eps),
    ]
    base_out = cat.trace(f, x, y, u, tol)
    path_out = path_compose(cat_id, path, tol)

    if not base_out.defined:
        consistent = not path_out.defined
        pattern = "both_undefined" if consistent else "rhs_only"
        return CheckReport(
            category=cat_id.value,
            axiom="NTracePreservation",
            samples=1,
            skipped=0,
            patterns={pattern: 1},
            max_deviation=0.0,
            min_abs_margin=float("inf"),
            failures=0 if consistent else 1,
            passed=consistent,
        )
    if not path_out.defined:
        return CheckReport(
            category=cat_id.value,
            axiom="NTracePreservation",
            samples=1,
            skipped=0,
            patterns={"lhs_only": 1},
            max_deviation=float("inf"),
            min_abs_margin=float("inf"),
            failures=1,
            passed=False,
        )
    dev = cat.deviation(base_out.value, path_out.value.base)
    ok = dev <= tol.eq_tol
    return CheckReport(
        category=cat_id.value,
        axiom="NTracePreservation",
        samples=1,
        skipped=0,
        patterns={"both_defined": 1},
        max_deviation=dev,
        min_abs_margin=float("inf"),
        failures=0 if ok else 1,
        passed=ok,
    )
