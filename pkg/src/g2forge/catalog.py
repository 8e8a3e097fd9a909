"""Named Lie algebras with parameter domains, sweep grids and reference data.

Names resolve in this order: exact catalog name, composite ``A ⊕ B``
(also ``A (+) B``), abelian ``R<n>``, then ``stem_v1_..._vk`` where the
trailing parts are rational parameter values for a family with that stem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .exactmath.poly import render_rational
from .lie import (
    LieAlgebra,
    LieAlgebraError,
    abelian,
    center,
    direct_sum,
    instantiate,
    is_semisimple,
    is_solvable,
    parse_structure_equations,
    unimodular_conditions,
)

COMPOSITE_SEPARATORS = ("⊕", "(+)")
TAGS = ("unimodular", "nonunimodular", "solvable", "nonsolvable", "semisimple", "nontrivial-center", "centerless")


class CatalogError(LookupError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Domain:
    """A rational interval with optional open ends and excluded points."""

    min: Fraction | None = None
    max: Fraction | None = None
    min_open: bool = False
    max_open: bool = False
    exclude: tuple[Fraction, ...] = ()

    @classmethod
    def from_json(cls, d: Mapping) -> "Domain":
        f = lambda k: Fraction(d[k]) if k in d else None  # noqa: E731
        return cls(f("min"), f("max"), bool(d.get("min_open")), bool(d.get("max_open")),
                   tuple(Fraction(x) for x in d.get("exclude", ())))

    def contains(self, x: Fraction) -> bool:
        if self.min is not None and (x < self.min or (self.min_open and x == self.min)):
            return False
        if self.max is not None and (x > self.max or (self.max_open and x == self.max)):
            return False
        return x not in self.exclude

    def __str__(self) -> str:
        lo = "(" if self.min_open else "["
        hi = ")" if self.max_open else "]"
        a = render_rational(self.min) if self.min is not None else "-inf"
        b = render_rational(self.max) if self.max is not None else "inf"
        text = f"{lo}{a}, {b}{hi}"
        if self.exclude:
            text += " minus {" + ", ".join(render_rational(x) for x in self.exclude) + "}"
        return text


def _r4_mu_lambda_domain(v: Mapping[str, Fraction]) -> bool:
    mu, lam = v["mu"], v["lambda"]
    if lam * mu == 0:
        return False
    return (-1 < mu <= lam <= 1) or (mu == -1 and mu <= lam < 0)


JOINT_DOMAINS = {"r4_mu_lambda": (_r4_mu_lambda_domain, "lambda*mu != 0 and (-1 < mu <= lambda <= 1 or -1 = mu <= lambda < 0)")}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    equations: tuple[str, ...]
    group: str
    source: str = ""
    stem: str = ""
    params: tuple[tuple[str, Domain], ...] = ()
    joint_domain: str = ""
    sweep: tuple = ()
    equals: str = ""
    tags: Mapping[str, object] = field(default_factory=dict, hash=False, compare=False)

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.params)

    @property
    def dim(self) -> int:
        return len(self.equations)

    def structure_text(self) -> str:
        return "(" + ",".join(self.equations) + ")"

    def algebra(self) -> LieAlgebra:
        return parse_structure_equations(self.structure_text(), self.param_names, self.name)

    def check_domain(self, values: Mapping[str, Fraction]) -> None:
        for p, dom in self.params:
            if p in values and not dom.contains(values[p]):
                raise DomainError(f"{self.name}: {p} = {render_rational(values[p])} outside {dom}")
        if self.joint_domain and all(p in values for p in self.param_names):
            ok, text = JOINT_DOMAINS[self.joint_domain]
            if not ok(values):
                raise DomainError(f"{self.name}: parameters outside the domain {text}")

    def instance_name(self, values: Mapping[str, Fraction]) -> str:
        stem = self.stem or self.name
        return stem + "".join("_" + render_rational(values[p]) for p in self.param_names)

    def instantiate(self, values: Mapping[str, object]) -> LieAlgebra:
        vals = {k: Fraction(v) for k, v in values.items()}
        unknown = set(vals) - set(self.param_names)
        if unknown:
            raise DomainError(f"{self.name} has no parameter(s) {sorted(unknown)}")
        self.check_domain(vals)
        g = self.algebra()
        label = self.instance_name(vals) if set(vals) == set(self.param_names) else self.name
        return instantiate(g, vals, label)

    def expected_tags(self, values: Mapping[str, Fraction] | None = None) -> dict[str, bool]:
        """Stored tags at a parameter point.

        A family tag is either a boolean for the whole family or the list of
        points (in parameter order) where it holds.
        """
        values = values or {}
        point = [Fraction(values[p]) for p in self.param_names] if values else None
        out = {}
        for k, v in self.tags.items():
            if isinstance(v, bool):
                out[k] = v
            elif point is not None:
                out[k] = any([Fraction(x) for x in pt] == point for pt in v)
        return out

    def sweep_points(self) -> list[dict[str, Fraction]]:
        out = []
        for key, values in self.sweep:
            names = key.split(",")
            for v in values:
                v = v if isinstance(v, (list, tuple)) else [v]
                out.append({n: Fraction(x) for n, x in zip(names, v)})
        return out

    def to_json(self) -> dict:
        d = {"name": self.name, "group": self.group, "equations": list(self.equations), "source": self.source}
        if self.params:
            d["params"] = {p: _domain_json(dom) for p, dom in self.params}
        if self.stem:
            d["stem"] = self.stem
        if self.joint_domain:
            d["domain"] = self.joint_domain
        if self.sweep:
            d["sweep"] = {k: [list(x) if isinstance(x, (list, tuple)) else x for x in v] for k, v in self.sweep}
        if self.equals:
            d["equals"] = self.equals
        if self.tags:
            d["tags"] = dict(self.tags)
        return d


def _domain_json(dom: Domain) -> dict:
    d = {}
    if dom.min is not None:
        d["min"] = render_rational(dom.min)
    if dom.max is not None:
        d["max"] = render_rational(dom.max)
    if dom.min_open:
        d["min_open"] = True
    if dom.max_open:
        d["max_open"] = True
    if dom.exclude:
        d["exclude"] = [render_rational(x) for x in dom.exclude]
    return d


def _entry_from_json(d: Mapping) -> CatalogEntry:
    params = tuple((p, Domain.from_json(dom)) for p, dom in d.get("params", {}).items())
    sweep = tuple((k, tuple(tuple(x) if isinstance(x, list) else x for x in v)) for k, v in d.get("sweep", {}).items())
    return CatalogEntry(
        d["name"],
        tuple(d["equations"]),
        d.get("group", ""),
        d.get("source", ""),
        d.get("stem", ""),
        params,
        d.get("domain", ""),
        sweep,
        d.get("equals", ""),
        dict(d.get("tags", {})),
    )


@dataclass
class Catalog:
    entries: list[CatalogEntry]
    forms: dict[str, str] = field(default_factory=dict)
    gram: dict[str, list] = field(default_factory=dict)
    expected: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: Mapping) -> "Catalog":
        return cls(
            [_entry_from_json(e) for e in data["entries"]],
            dict(data.get("forms", {})),
            dict(data.get("gram", {})),
            dict(data.get("expected", {})),
        )

    @classmethod
    def load(cls, path) -> "Catalog":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def by_name(self, name: str) -> CatalogEntry | None:
        return next((e for e in self.entries if e.name == name), None)

    def family(self, stem: str, nparams: int) -> CatalogEntry | None:
        return next(
            (e for e in self.entries if (e.stem or e.name) == stem and len(e.params) == nparams), None
        )

    # -- resolution ----------------------------------------------------------

    def get(self, name: str, bindings: Mapping[str, object] | None = None) -> LieAlgebra:
        name = name.strip()
        entry = self.by_name(name)
        if entry is not None:
            return entry.instantiate(bindings) if bindings else entry.algebra()
        for sep in COMPOSITE_SEPARATORS:
            if sep in name:
                parts = [p.strip() for p in name.split(sep)]
                if any(not p for p in parts):
                    raise CatalogError(f"empty summand in {name!r}")
                g = self.get(parts[0], bindings)
                for p in parts[1:]:
                    g = direct_sum(g, self.get(p, bindings))
                return _relabel(g, name)
        if name.startswith("R") and name[1:].isdigit():
            n = int(name[1:])
            if not 1 <= n <= 9:
                raise CatalogError(f"abelian dimension out of range in {name!r}")
            return abelian(n)
        pieces = name.split("_")
        for k in range(1, len(pieces)):
            stem, tail = "_".join(pieces[:-k]), pieces[-k:]
            try:
                values = [Fraction(t) for t in tail]
            except (ValueError, ZeroDivisionError):
                continue
            fam = self.family(stem, k)
            if fam is not None:
                return fam.instantiate(dict(zip(fam.param_names, values)))
        raise CatalogError(f"unknown algebra {name!r}")

    def entry_for(self, name: str) -> tuple[CatalogEntry, dict[str, Fraction]] | None:
        """The catalog entry and parameter values a simple (non-composite) name refers to."""
        entry = self.by_name(name)
        if entry is not None:
            return entry, {}
        pieces = name.split("_")
        for k in range(1, len(pieces)):
            stem, tail = "_".join(pieces[:-k]), pieces[-k:]
            try:
                values = [Fraction(t) for t in tail]
            except (ValueError, ZeroDivisionError):
                continue
            fam = self.family(stem, k)
            if fam is not None:
                return fam, dict(zip(fam.param_names, values))
        return None

    # -- listing -------------------------------------------------------------

    def members(self, group: str | None = None) -> list[tuple[str, CatalogEntry, dict]]:
        """(instance name, entry, values): fixed entries, and families on their sweep grids."""
        out = []
        for e in self.entries:
            if group is not None and e.group != group:
                continue
            if not e.params:
                out.append((e.name, e, {}))
                continue
            for v in e.sweep_points():
                out.append((e.instance_name(v), e, v))
        return out

    def list(self, tags: Iterable[str] = (), group: str | None = None) -> list[tuple[str, CatalogEntry, dict]]:
        tags = list(tags)
        bad = [t for t in tags if t not in TAGS]
        if bad:
            raise CatalogError(f"unknown tag(s) {bad}; known: {', '.join(TAGS)}")
        out = []
        for name, e, v in self.members(group):
            if tags:
                have = compute_tags(e.instantiate(v) if v else e.algebra())
                if not all(have[t] for t in tags):
                    continue
            out.append((name, e, v))
        return out


def _relabel(g: LieAlgebra, label: str) -> LieAlgebra:
    return LieAlgebra(g.dim, g.constants, g.params, label)


def compute_tags(g: LieAlgebra) -> dict[str, bool]:
    if g.is_symbolic:
        raise CatalogError("tags are computed on instantiated algebras")
    uni = not unimodular_conditions(g)
    solv = is_solvable(g)
    semi = is_semisimple(g)
    cen = center(g).dim > 0
    return {
        "unimodular": uni,
        "nonunimodular": not uni,
        "solvable": solv,
        "nonsolvable": not solv,
        "semisimple": semi,
        "nontrivial-center": cen,
        "centerless": not cen,
    }


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    data = resources.files("g2forge").joinpath("data/catalog.json").read_text(encoding="utf-8")
    return Catalog.from_json(json.loads(data))


def catalog_get(name: str, bindings: Mapping[str, object] | None = None) -> LieAlgebra:
    try:
        return default_catalog().get(name, bindings)
    except LieAlgebraError as exc:
        raise DomainError(str(exc)) from exc


def catalog_list(tags: Sequence[str] = (), group: str | None = None) -> list[str]:
    return [name for name, _, _ in default_catalog().list(tags, group)]


def parse_param(text: str) -> tuple[str, Fraction]:
    """Parse ``name=value`` with a rational value."""
    if "=" not in text:
        raise ValueError(f"expected name=value, got {text!r}")
    k, v = text.split("=", 1)
    k = {"μ": "mu", "λ": "lambda"}.get(k.strip(), k.strip())
    try:
        return k, Fraction(v.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational value {v!r} for {k}") from exc


__all__ = [
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "Domain",
    "DomainError",
    "TAGS",
    "catalog_get",
    "catalog_list",
    "compute_tags",
    "default_catalog",
    "parse_param",
]
