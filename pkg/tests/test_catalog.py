from __future__ import annotations

import json
from fractions import Fraction

import pytest

from g2forge.catalog import (
    Catalog,
    CatalogError,
    DomainError,
    catalog_get,
    catalog_list,
    compute_tags,
    default_catalog,
)
from g2forge.lie import center, direct_sum, is_unimodular, jacobi_check
from g2forge.obstruction import obstruct

CAT = default_catalog()


def _members():
    for name, e, v in CAT.members():
        yield pytest.param(e, v, id=name)


@pytest.mark.parametrize("entry,values", list(_members()))
def test_entries_satisfy_jacobi(entry, values):
    g = entry.instantiate(values) if values else entry.algebra()
    assert not jacobi_check(g)


@pytest.mark.parametrize("entry,values", list(_members()))
def test_stored_tags_match_computed(entry, values):
    g = entry.instantiate(values) if values else entry.algebra()
    have = compute_tags(g)
    for k, v in entry.expected_tags(values).items():
        if k != "existence":
            assert have[k] == v, k


def test_examples():
    assert catalog_get("L7_3", {"a": -2}).constants == catalog_get("MT4").constants
    g = catalog_get("r4_mu_lambda", {"mu": Fraction(-3, 4), "lambda": Fraction(-1, 4)})
    assert is_unimodular(g)
    assert catalog_get("sl2 ⊕ r4_-1/2").constants == direct_sum(catalog_get("sl2"), catalog_get("r4_-1/2")).constants
    so31 = catalog_get("so31")
    assert so31.dim == 6 and not jacobi_check(so31)


def test_domain_errors():
    with pytest.raises(DomainError):
        catalog_get("L7_3", {"a": 0})
    with pytest.raises(DomainError):
        catalog_get("L7_3_0")
    with pytest.raises(DomainError):
        catalog_get("r4u_-1/4")
    with pytest.raises(CatalogError):
        catalog_get("nosuchalgebra")
    with pytest.raises(CatalogError):
        catalog_get("sl2 ⊕ ")


def test_lists():
    assert catalog_list(["unimodular"], "levi-irreducible") == ["L7_2", "L7_3_-2", "L7_6", "L7_7"]
    assert catalog_list(["unimodular"], "levi-irreducible") == CAT.expected["unimodular-table1"]
    centered = [n for n in catalog_list(["nontrivial-center"], "radical4")]
    families = {CAT.entry_for(n)[0].name for n in centered}
    expected = {CAT.entry_for(n)[0].name if CAT.entry_for(n) else n for n in CAT.expected["center-radical4"]}
    assert families == expected and len(expected) == 9
    assert len(catalog_list()) == len(CAT.members())
    with pytest.raises(CatalogError):
        catalog_list(["nosuchtag"])


def test_main_theorem_entries_equal_constructions():
    for name, e, v in CAT.members("main-theorem"):
        g = e.instantiate(v) if v else e.algebra()
        other = e.equals
        for p, x in v.items():
            other = other.replace("{" + p + "}", str(x))
        assert g.constants == catalog_get(other).constants, name


def test_existence_tags_consistent():
    for name, e, v in CAT.members():
        tags = e.expected_tags(v)
        if tags.get("existence") is False:
            g = e.instantiate(v) if v else e.algebra()
            ruled_out = tags.get("nontrivial-center") or not tags.get("unimodular", is_unimodular(g))
            assert ruled_out or obstruct(g) is not None, name
        if tags.get("existence"):
            g = e.instantiate(v) if v else e.algebra()
            assert center(g).dim == 0 and is_unimodular(g)


def test_json_round_trip():
    data = json.loads(json.dumps({"format": "g2forge-catalog/1", "entries": [e.to_json() for e in CAT.entries],
                                  "forms": CAT.forms, "gram": CAT.gram, "expected": CAT.expected}))
    again = Catalog.from_json(data)
    assert [e.to_json() for e in again.entries] == [e.to_json() for e in CAT.entries]
    assert again.get("MT3_2").constants == catalog_get("MT3_2").constants
