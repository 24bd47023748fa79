import pytest

from memkern.resource.config import kv_file


def write(tmp_path, text):
    path = tmp_path / "run.conf"
    path.write_text(text)
    return str(path)


def test_kv_file(tmp_path):
    cfg = kv_file(
        write(
            tmp_path,
            "# sweep settings\ncommand=sweep\n\nbackend = functional\ntau_c_list=1,2,4\n"
            "  title = long memory = slow  \n",
        )
    )
    assert cfg.asdict() == {
        "command": "sweep",
        "backend": "functional",
        "tau_c_list": "1,2,4",
        "title": "long memory = slow",
    }


def test_kv_file_empty(tmp_path):
    assert len(kv_file(write(tmp_path, "\n# nothing\n"))) == 0


@pytest.mark.parametrize(
    "text,message",
    [
        ["command=sweep\nnot a pair\n", "line 2: expected key=value"],
        ["=1\n", "line 1: expected key=value"],
        ["dt=0.1\ndt=0.2\n", "line 2: duplicate key 'dt'"],
    ],
)
def test_kv_file_invalid(tmp_path, text, message):
    with pytest.raises(ValueError) as e:
        kv_file(write(tmp_path, text))
    assert message in str(e.value)


def test_kv_file_missing(tmp_path):
    with pytest.raises(OSError):
        kv_file(str(tmp_path / "missing.conf"))

