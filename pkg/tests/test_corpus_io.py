from __future__ import annotations

import json
import tempfile
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from fixlab.actions import coset_action
from fixlab.corpus import instance_from_dict, load_instance, sample, save_instance
from fixlab.errors import ParseError

from support import corpus, inversion


@given(st.sampled_from(corpus(32, "nilpotent")))
def test_round_trip_byte_identical(inst):
    with tempfile.TemporaryDirectory() as tmp:
        d = Path(tmp)
        save_instance(inst, d / "a.json")
        again = load_instance(d / "a.json")
        save_instance(again, d / "b.json")
        assert (d / "a.json").read_bytes() == (d / "b.json").read_bytes()
    assert again.id == inst.id and again.labels == inst.labels


def test_round_trip_with_action(tmp_path):
    inst = inversion(4)
    inst.gaction = coset_action(inst.G, inst.J_sub).to_dict()
    save_instance(inst, tmp_path / "a.json")
    again = load_instance(tmp_path / "a.json")
    save_instance(again, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_text() == (tmp_path / "b.json").read_text()
    assert again.gaction == inst.gaction


def _data():
    return json.loads(inversion(3).dumps())


def test_missing_action_field():
    data = _data()
    del data["action"]
    with pytest.raises(ParseError, match="'action'"):
        instance_from_dict(data)


def test_missing_nested_field():
    data = _data()
    del data["N"]["degree"]
    with pytest.raises(ParseError, match="N: missing field 'degree'"):
        instance_from_dict(data)


def test_unknown_label_rejected():
    data = _data()
    data["labels"]["perfect"] = False
    with pytest.raises(ParseError, match="unknown label 'perfect'"):
        instance_from_dict(data)


def test_unknown_field_rejected():
    data = _data()
    data["comment"] = "x"
    with pytest.raises(ParseError, match="unknown field 'comment'"):
        instance_from_dict(data)


def test_wrong_label_value_rejected():
    data = _data()
    data["labels"]["n_abelian"] = False
    with pytest.raises(ParseError, match="labels.n_abelian"):
        instance_from_dict(data)


def test_tampered_id_rejected():
    data = _data()
    data["id"] = "0" * 16
    with pytest.raises(ParseError, match="id"):
        instance_from_dict(data)


def test_bad_cycles_rejected():
    data = _data()
    data["action"] = [["(0 9)"]]
    with pytest.raises(ParseError, match="action"):
        instance_from_dict(data)


def test_bad_gaction_rejected():
    data = _data()
    data["gaction"] = {"points": 2, "generator_rows": [[0, 0]]}
    with pytest.raises(ParseError, match="gaction"):
        instance_from_dict(data)


def test_malformed_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"id": "x",\n  "N": }\n')
    with pytest.raises(ParseError, match="line 2"):
        load_instance(p)


def test_id_depends_on_content():
    a, b = inversion(4), inversion(4)
    assert a.id == b.id
    ids = {i.id for i in corpus(24, "nilpotent")}
    assert len(ids) == len(corpus(24, "nilpotent"))


def test_sample_is_seeded():
    items = corpus(24, "nilpotent")
    from fixlab.corpus import Corpus, CorpusConfig

    c = Corpus(CorpusConfig(max_order=24, family="nilpotent"), list(items))
    assert [i.id for i in sample(c, 10, 1)] == [i.id for i in sample(c, 10, 1)]
    assert len(sample(c, 10, 1)) == 10
    assert len(sample(c, 10 ** 6, 1)) == len(items)
