"""Finite categories, presheaves and natural transformations as tables.

Everything is a dictionary: a category is its composition table, a presheaf
its function tables, and all laws are validated exhaustively at load time.
Object and arrow ids are strings; presheaf elements are arbitrary hashable
labels.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional


class TableError(Exception):
    """A table fails a law that is supposed to hold exhaustively."""


@dataclass
class FiniteCategory:
    objects: list
    arrows: dict  # arrow id -> (dom, cod)
    identities: dict  # object -> arrow id
    comp: dict  # (g, f) -> arrow id, meaning g after f

    def dom(self, f):
        return self.arrows[f][0]

    def cod(self, f):
        return self.arrows[f][1]

    def identity(self, a):
        return self.identities[a]

    def compose(self, g, f):
        if self.cod(f) != self.dom(g):
            raise TableError(f"{g} after {f}: not composable")
        return self.comp[(g, f)]

    def hom(self, a, b):
        return [f for f in sorted(self.arrows) if self.arrows[f] == (a, b)]

    def obj_index(self, a):
        return self.objects.index(a)

    def validate(self):
        for a in self.objects:
            i = self.identities[a]
            if self.arrows[i] != (a, a):
                raise TableError(f"identity of {a} has wrong type")
        for f, (a, b) in self.arrows.items():
            if self.comp[(f, self.identities[a])] != f:
                raise TableError(f"{f} . id != {f}")
            if self.comp[(self.identities[b], f)] != f:
                raise TableError(f"id . {f} != {f}")
        for f, (a, b) in self.arrows.items():
            for g, (b2, c) in self.arrows.items():
                if b2 != b:
                    continue
                for h, (c2, d) in self.arrows.items():
                    if c2 != c:
                        continue
                    if self.comp[(self.comp[(h, g)], f)] != self.comp[(h, self.comp[(g, f)])]:
                        raise TableError(f"associativity broke on {h},{g},{f}")
        return self


@dataclass
class FiniteMonoidalCategory:
    cat: FiniteCategory
    unit: str
    tobj: dict  # (a, b) -> object
    tarr: dict  # (f, g) -> arrow id
    sym: dict  # (a, b) -> arrow id, a (x) b -> b (x) a

    def tensor_obj(self, a, b):
        return self.tobj[(a, b)]

    def tensor_arr(self, f, g):
        return self.tarr[(f, g)]

    def symmetry(self, a, b):
        return self.sym[(a, b)]

    def validate(self):
        c = self.cat
        for a in c.objects:
            if self.tobj[(a, self.unit)] != a or self.tobj[(self.unit, a)] != a:
                raise TableError("unit is not strict")
            for b in c.objects:
                for d in c.objects:
                    if self.tobj[(self.tobj[(a, b)], d)] != self.tobj[(a, self.tobj[(b, d)])]:
                        raise TableError("tensor is not strictly associative")
        for f, (a, b) in c.arrows.items():
            for g, (x, y) in c.arrows.items():
                fg = self.tarr[(f, g)]
                if c.arrows[fg] != (self.tobj[(a, x)], self.tobj[(b, y)]):
                    raise TableError(f"tensor_arr type broke on {f},{g}")
        # bifunctoriality
        for f, (a, b) in c.arrows.items():
            for f2, (b2, e) in c.arrows.items():
                if b2 != b:
                    continue
                for g, (x, y) in c.arrows.items():
                    for g2, (y2, z) in c.arrows.items():
                        if y2 != y:
                            continue
                        lhs = self.tarr[(c.comp[(f2, f)], c.comp[(g2, g)])]
                        rhs = c.comp[(self.tarr[(f2, g2)], self.tarr[(f, g)])]
                        if lhs != rhs:
                            raise TableError("tensor is not bifunctorial")
        # symmetry: involutive and correctly typed
        for a in c.objects:
            for b in c.objects:
                s = self.sym[(a, b)]
                if c.arrows[s] != (self.tobj[(a, b)], self.tobj[(b, a)]):
                    raise TableError("symmetry has wrong type")
                if c.comp[(self.sym[(b, a)], s)] != c.identities[self.tobj[(a, b)]]:
                    raise TableError("symmetry is not involutive")
        return self


@dataclass
class Functor:
    src: FiniteCategory
    dst: FiniteCategory
    on_obj: dict
    on_arr: dict

    def validate(self):
        for a in self.src.objects:
            if self.on_arr[self.src.identities[a]] != self.dst.identities[self.on_obj[a]]:
                raise TableError("functor breaks identities")
        for f, (a, b) in self.src.arrows.items():
            if self.dst.arrows[self.on_arr[f]] != (self.on_obj[a], self.on_obj[b]):
                raise TableError("functor breaks typing")
            for g, (b2, c) in self.src.arrows.items():
                if b2 != b:
                    continue
                lhs = self.on_arr[self.src.comp[(g, f)]]
                rhs = self.dst.comp[(self.on_arr[g], self.on_arr[f])]
                if lhs != rhs:
                    raise TableError("functor breaks composition")
        return self

    def is_fully_faithful(self):
        for a in self.src.objects:
            for b in self.src.objects:
                image = [self.on_arr[f] for f in self.src.hom(a, b)]
                target = self.dst.hom(self.on_obj[a], self.on_obj[b])
                if sorted(image) != sorted(target) or len(set(image)) != len(image):
                    return False
        return True


@dataclass
class Presheaf:
    """A contravariant set-valued functor: maps[f] sends F(cod f) to F(dom f)."""

    cat: FiniteCategory
    sets: dict  # object -> list of hashable labels
    maps: dict  # arrow -> dict
    rep: Optional[dict] = None  # raw element -> canonical label, per object

    def apply(self, f, x):
        return self.maps[f][x]

    def validate(self):
        c = self.cat
        for f, (a, b) in c.arrows.items():
            tab = self.maps[f]
            if sorted(map(repr, tab.keys())) != sorted(map(repr, self.sets[b])):
                raise TableError(f"map of {f} has wrong domain")
            for x in self.sets[b]:
                if tab[x] not in self.sets[a]:
                    raise TableError(f"map of {f} leaves the target set")
        for a in c.objects:
            i = c.identities[a]
            for x in self.sets[a]:
                if self.maps[i][x] != x:
                    raise TableError("presheaf breaks identities")
        for f, (a, b) in c.arrows.items():
            for g, (b2, d) in c.arrows.items():
                if b2 != b:
                    continue
                gf = c.comp[(g, f)]
                for x in self.sets[d]:
                    if self.maps[gf][x] != self.maps[f][self.maps[g][x]]:
                        raise TableError("presheaf breaks composition")
        return self


@dataclass
class NatTrans:
    src: Presheaf
    dst: Presheaf
    components: dict  # object -> dict

    def validate(self):
        c = self.src.cat
        for f, (a, b) in c.arrows.items():
            for x in self.src.sets[b]:
                lhs = self.dst.maps[f][self.components[b][x]]
                rhs = self.components[a][self.src.maps[f][x]]
                if lhs != rhs:
                    raise TableError(f"naturality breaks at {f}")
        return self

    def is_iso(self):
        for a, tab in self.components.items():
            vals = list(tab.values())
            if len(set(map(repr, vals))) != len(vals) or len(vals) != len(self.dst.sets[a]):
                return False
        return True


def representable(cat: FiniteCategory, a) -> Presheaf:
    """The presheaf Hom(-, a), with precomposition as the arrow action."""
    sets = {c: cat.hom(c, a) for c in cat.objects}
    maps = {}
    for f, (c, d) in cat.arrows.items():
        maps[f] = {h: cat.comp[(h, f)] for h in sets[d]}
    return Presheaf(cat, sets, maps)


def identity_functor(cat: FiniteCategory) -> Functor:
    return Functor(cat, cat, {a: a for a in cat.objects}, {f: f for f in cat.arrows})


# --------------------------------------------------------------------------
# JSON loading
# --------------------------------------------------------------------------


def _category_from_dict(doc: dict) -> FiniteCategory:
    arrows = {k: (v["dom"], v["cod"]) for k, v in doc["arrows"].items()}
    comp = {tuple(k.split("|")): v for k, v in doc["compose"].items()}
    return FiniteCategory(list(doc["objects"]), arrows, dict(doc["identities"]), comp).validate()


def _monoidal_from_dict(doc: dict) -> FiniteMonoidalCategory:
    cat = _category_from_dict(doc)
    m = doc["monoidal"]
    tobj = {tuple(k.split("|")): v for k, v in m["tensor_obj"].items()}
    tarr = {tuple(k.split("|")): v for k, v in m["tensor_arr"].items()}
    sym = {tuple(k.split("|")): v for k, v in m["symmetry"].items()}
    return FiniteMonoidalCategory(cat, m["unit"], tobj, tarr, sym).validate()


def load_base(name: str) -> FiniteMonoidalCategory:
    """Load one of the shipped finite monoidal bases by file stem."""
    text = resources.files("tracelab.finpresheaf.data").joinpath(f"{name}.json").read_text()
    return _monoidal_from_dict(json.loads(text))


def builtin_base_names():
    return ["affine2", "terminal", "z2", "z3"]
