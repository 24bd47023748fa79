import json
from pathlib import Path

import numpy as np
import pytest

from memkern.base import Container
from memkern.kernel import KernelSpec, SystemParams
from memkern.serializer.json import ExtendedJsonEncoder, dump_meta, dumps_meta


class SomeRecord:
    def asdict(self) -> dict:
        return {"tau_c": 1.0, "kind": "ou"}


class Plain:
    def __init__(self):
        self.n_max = 12


def test_json_encoder_numpy():
    record = {
        "samples": np.array([1.0, 0.5]),
        "complex": np.array([1 + 0j, 0.5 - 0.25j]),
        "count": np.int64(3),
        "rate": np.float32(0.5),
        "ok": np.bool_(True),
    }
    result = json.loads(json.dumps(record, cls=ExtendedJsonEncoder))
    assert result["samples"] == [1.0, 0.5]
    assert result["complex"] == [{"re": 1.0, "im": 0.0}, {"re": 0.5, "im": -0.25}]
    assert result["count"] == 3
    assert result["rate"] == 0.5
    assert result["ok"] is True


def test_json_encoder_objects():
    record = {
        "c0": 0.5 + 0.1j,
        "params": SystemParams(D=2.0),
        "record": SomeRecord(),
        "plain": Plain(),
        "source": Path("/tmp/curve.csv"),
        "tags": {"b"},
        "meta": Container({"backend": "functional"}),
    }
    result = json.loads(json.dumps(record, cls=ExtendedJsonEncoder))
    assert result["c0"] == {"re": 0.5, "im": 0.1}
    assert result["params"] == {"a": 1.0, "hbar": 1.0, "D": 2.0}
    assert result["record"] == {"tau_c": 1.0, "kind": "ou"}
    assert result["plain"] == {"n_max": 12}
    assert result["source"] == "/tmp/curve.csv"
    assert result["tags"] == ["b"]
    assert result["meta"] == {"backend": "functional"}


def test_json_encoder_unsupported():
    with pytest.raises(RuntimeError):
        json.dumps({"x": object()}, cls=ExtendedJsonEncoder)


def test_dumps_meta():
    meta = Container({"kernel": KernelSpec.ou(2.0), "backend": "ou-closure", "max_abserr": float("inf")})
    text = dumps_meta(meta)
    assert text.endswith("}\n")
    result = json.loads(text)
    assert list(result.keys()) == ["backend", "kernel", "max_abserr"]
    assert result["kernel"] == {"kind": "ou", "tau_c": 2.0, "p": None}
    assert result["max_abserr"] is None
    assert "Infinity" not in text
    # stable text for equal input
    assert dumps_meta(meta) == text


def test_dump_meta(tmp_path):
    target = dump_meta({"seed": 42}, tmp_path / "curve.csv")
    assert target == tmp_path / "curve.csv.meta.json"
    assert json.loads(target.read_text()) == {"seed": 42}
