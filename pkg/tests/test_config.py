import pytest

from grothfock_lib import config, constants
from grothfock_lib.errors import ParseError
from grothfock_lib.symfunc import Partition, TruncationCaps


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.setattr(constants, "CONF_FILE", str(tmp_path / "grothfock.conf"))
    monkeypatch.delenv(constants.CAPS_ENV_VAR, raising=False)


def test_parse_caps():
    assert config.parse_caps("5,7") == TruncationCaps(5, 7)
    for bad in ("5", "a,b", "1,2,3", "0,3", "2,-1"):
        with pytest.raises(ParseError):
            config.parse_caps(bad)


def test_save_load_reset():
    assert config.load_conf() is None
    config.save_conf(TruncationCaps(4, 9))
    assert config.load_conf() == TruncationCaps(4, 9)
    assert config.reset_conf()
    assert config.load_conf() is None
    assert not config.reset_conf()


def test_unreadable_file_is_ignored():
    with open(constants.CONF_FILE, "w", encoding="utf-8") as f:
        f.write("not caps\n")
    assert config.load_conf() is None


def test_shape_default():
    assert config.resolve_caps(Partition((2, 1))) == TruncationCaps(6, 7)


def test_precedence(monkeypatch):
    lam = Partition((1,))
    config.save_conf(TruncationCaps(3, 3))
    assert config.resolve_caps(lam) == TruncationCaps(3, 3)
    monkeypatch.setenv(constants.CAPS_ENV_VAR, "8,10")
    assert config.resolve_caps(lam) == TruncationCaps(8, 10)
    assert config.resolve_caps(lam, n_vars=2) == TruncationCaps(2, 10)
    assert config.resolve_caps(lam, n_vars=2, max_degree=4) == TruncationCaps(2, 4)


def test_bad_environment(monkeypatch):
    monkeypatch.setenv(constants.CAPS_ENV_VAR, "nope")
    with pytest.raises(ParseError):
        config.resolve_caps(Partition())
