import pytest

from superyangian.relations.catalog import (
    GROUPS, catalog, families, load_catalog, parse_catalog, parse_catalog_line, select,
)
from superyangian.relations.dsl import parse_relation, print_relation
from superyangian.superdata import SuperSize

S = SuperSize(2, 3)


def test_minimalistic_has_nine_families():
    assert families(catalog("minimalistic")) == [f"2.{k}" for k in range(1, 10)]


def test_odd_square_relation_present():
    (spec,) = [s for s in catalog("minimalistic") if s.rid == "2.8+"]
    assert print_relation(spec.ast) == print_relation(parse_relation("[x+_{i,0}, x+_{i,0}]"))
    assert [e["i"] for e in spec.instances(S)] == [0, 2]


def test_groups_and_families():
    assert families(catalog("evaluation")) == ["rel4", "rel5", "rel6", "rel7"]
    assert families(catalog("yangian")) == [f"1.{k}" for k in range(1, 9)]
    assert families(catalog("j")) == ["3.3.1", "3.3.2", "3.3.3", "3.3.4"]
    with pytest.raises(KeyError):
        catalog("nope")


def test_yangian_ranges():
    (s11,) = [s for s in catalog("yangian") if s.rid == "1.1"]
    pairs = {(e["r"], e["s"]) for e in s11.instances(S)}
    assert max(r + s for r, s in pairs) == 3
    assert (3, 0) in pairs and (0, 3) in pairs


@pytest.mark.parametrize("group", sorted(GROUPS))
def test_every_line_round_trips(group):
    for spec in catalog(group):
        again = parse_catalog_line(spec.text, group)
        assert print_relation(again.ast) == print_relation(spec.ast)
        assert again.ranges == spec.ranges


def test_undeclared_index_rejected():
    with pytest.raises(ValueError, match="undeclared"):
        parse_catalog_line("bad :: i in nodes :: [h_{i,0}, h_{j,0}]")


def test_condition_filters_instances():
    spec = parse_catalog_line("t :: i in nodes, j in nodes where i != j :: [h_{i,0}, h_{j,0}]")
    assert len(spec.instances(S)) == 20


def test_file_loading(tmp_path):
    path = tmp_path / "mine.rel"
    path.write_text("# comment\n\nx1 :: i in 1..2 :: [h_{i,0}, x+_{i,0}] - a_{i,i} x+_{i,0}\n")
    (spec,) = load_catalog(path)
    assert spec.group == "mine" and len(spec.instances(S)) == 2
    assert parse_catalog("") == []


def test_select():
    specs = catalog("minimalistic")
    assert {s.rid for s in select(specs, ["2.5"])} == {"2.5+", "2.5-"}
    assert [s.rid for s in select(specs, ["2.3a"])] == ["2.3a"]
    assert select(specs, []) == specs
