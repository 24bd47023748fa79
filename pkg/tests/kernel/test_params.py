import math

import pytest

from memkern.kernel import SystemParams


class TestSystemParams:
    def test_defaults(self):
        params = SystemParams()
        assert params.a == 1.0
        assert params.hbar == 1.0
        assert params.D == 1.0
        assert params.coupling == 1.0

    def test_coupling(self):
        params = SystemParams(a=2.0, hbar=4.0, D=3.0)
        assert params.coupling == pytest.approx(0.25)

    @pytest.mark.parametrize(
        "kwargs", [{"a": 0.0}, {"hbar": -1.0}, {"D": math.inf}, {"D": math.nan}, {"a": True}, {"a": "1"}]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SystemParams(**kwargs)

    def test_int_converted(self):
        params = SystemParams(a=2, hbar=1, D=3)
        assert isinstance(params.a, float)
        assert params.asdict() == {"a": 2.0, "hbar": 1.0, "D": 3.0}

    def test_replace(self):
        params = SystemParams().replace(D=4.0)
        assert params == SystemParams(D=4.0)
        with pytest.raises(ValueError):
            SystemParams().replace(D=-1.0)
