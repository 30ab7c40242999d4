import json

import numpy as np
import pytest

from zagreb.common import WitnessError
from zagreb.dp_solver import attached_broom, reconstruct_witness
from zagreb.families import star
from zagreb.indices import M2
from zagreb.io import write_graph6
from zagreb.report import Record, json_lines, validate_attached_witness, validate_witness


def test_record_to_json(d434):
    record = Record(b=np.int64(3), a=1 / 3, tree=d434, flags=[np.bool_(True), None])
    text = record.to_json()
    assert text.index('"a"') < text.index('"b"')
    data = json.loads(text)
    assert data["a"] == pytest.approx(0.333333333333)
    assert data["b"] == 3
    assert data["tree"] == write_graph6(d434)
    assert data["flags"] == [True, None]
    assert record.b == 3


def test_record_non_finite():
    assert json.loads(Record(x=float("inf"), y=np.nan).to_json()) == {"x": None, "y": None}


def test_record_save(tmp_path):
    fname = tmp_path / "result.json"
    Record(n=9, min=72).save(fname)
    assert json.loads(fname.read_text()) == {"min": 72, "n": 9}


def test_json_lines():
    text = json_lines([{"step": 0}, {"step": 1}])
    assert [json.loads(line)["step"] for line in text.splitlines()] == [0, 1]


def test_validate_witness():
    validate_witness(star(5), 5, 25, M2)
    with pytest.raises(WitnessError, match="pendants"):
        validate_witness(star(5), 4, 25, M2)
    with pytest.raises(WitnessError, match="m2"):
        validate_witness(star(5), 5, 24, M2)


def test_validate_attached_witness():
    w = reconstruct_witness(4, 5)
    validate_attached_witness(w.tree, w.root, 5, 4, 40, M2)
    validate_attached_witness(attached_broom(1, 6).tree, 0, 6, 1, 18, M2)
    with pytest.raises(WitnessError, match="pendants"):
        validate_attached_witness(w.tree, w.root, 5, 3, 40, M2)
    with pytest.raises(WitnessError, match="cost"):
        validate_attached_witness(w.tree, w.root, 5, 4, 39, M2)
