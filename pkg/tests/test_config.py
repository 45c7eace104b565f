import json
from fractions import Fraction

import pytest

from kummerlab.codec import (
    dumps,
    format_rational,
    interval_to_dict,
    parse_interval,
    parse_logmag,
    parse_rational,
)
from kummerlab.config import Config, Settings
from kummerlab.errors import InputError, NotInvertible
from kummerlab.valnum import NEG_INF, POS_INF, LogInterval


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for name in ("KUMMERLAB_N_MAX", "KUMMERLAB_MAX_ITER", "KUMMERLAB_I_MAX", "KUMMERLAB_LOG_LEVEL"):
        # recorded so that values loaded from .env are removed afterwards
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)
    return monkeypatch


def document(**fields):
    base = {"schema": 1, "p": 3}
    base.update(fields)
    return base


class TestSettings:
    def test_defaults(self, clean_env):
        assert Settings.from_env() == Settings()

    def test_environment_overrides(self, clean_env):
        clean_env.setenv("KUMMERLAB_N_MAX", "64")
        clean_env.setenv("KUMMERLAB_LOG_LEVEL", "debug")
        settings = Settings.from_env()
        assert settings.n_max == 64 and settings.log_level == "DEBUG"

    def test_dotenv_file(self, clean_env, tmp_path):
        (tmp_path / ".env").write_text("KUMMERLAB_I_MAX=12\n", encoding="utf-8")
        assert Settings.from_env().i_max == 12

    @pytest.mark.parametrize(
        "name, value",
        [
            ("KUMMERLAB_N_MAX", "0"),
            ("KUMMERLAB_MAX_ITER", "many"),
            ("KUMMERLAB_LOG_LEVEL", "LOUD"),
        ],
    )
    def test_invalid_values(self, clean_env, name, value):
        clean_env.setenv(name, value)
        with pytest.raises(ValueError):
            Settings.from_env()


class TestConfig:
    def test_torsor_class_prefers_laurent(self):
        config = Config(
            config_dict=document(
                annulus={"lo": "-3", "hi": "0"},
                newton=[[0, "0"]],
                laurent=[[-1, "27"], [0, "1"], [1, "1"]],
            )
        )
        tc = config.torsor_class()
        assert tc.laurent is not None
        assert tc.newton.as_dict() == {-1: -3, 0: 0, 1: 0}
        assert config.newton().as_dict() == {0: 0}

    def test_newton_from_laurent(self):
        config = Config(config_dict=document(laurent=[[0, "1"], [1, "9"]]))
        assert config.newton().as_dict() == {0: 0, 1: -2}

    def test_unicode_minus_and_infinite_ends(self):
        config = Config(config_dict=document(annulus={"lo": "−inf", "hi": "−1/2"}))
        interval = config.annulus().interval
        assert (interval.lo, interval.hi) == (NEG_INF, Fraction(-1, 2))

    def test_text_and_file(self, tmp_path):
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(document(params={"h": 2})), encoding="utf-8")
        assert Config(config_path=str(path)).param("h") == 2
        assert Config(text=json.dumps(document())).param("h", 1) == 1

    def test_graph(self):
        config = Config(
            config_dict=document(
                semigraph={
                    "vertices": ["a"],
                    "edges": [{"name": "e", "tail": "a", "head": "a"}, {"name": "o", "tail": "a"}],
                }
            )
        )
        assert config.semigraph().edge_names() == ("e", "o")

    @pytest.mark.parametrize(
        "fields",
        [
            {"schema": 2},
            {"p": 4},
            {"p": "3"},
            {"newton": [[0, "0.5"]]},
            {"newton": [[0, "1"], [0, "2"]]},
            {"newton": []},
            {"annulus": {"lo": "0", "hi": "1", "orientation": 2}},
            {"colour": "blue"},
        ],
    )
    def test_rejects_invalid_documents(self, fields):
        with pytest.raises(InputError):
            Config(config_dict=document(**fields))

    def test_missing_pieces(self):
        config = Config(config_dict=document())
        with pytest.raises(InputError):
            config.annulus()
        with pytest.raises(InputError):
            config.newton()
        with pytest.raises(InputError):
            config.semigraph()
        with pytest.raises(InputError):
            config.param("lambda")

    def test_unreadable_input(self, tmp_path):
        with pytest.raises(InputError):
            Config(config_path=str(tmp_path / "missing.json"))
        with pytest.raises(InputError):
            Config(text="{")
        with pytest.raises(InputError):
            Config(text="[1, 2]")

    def test_domain_errors_pass_through(self):
        config = Config(
            config_dict=document(annulus={"lo": "-1", "hi": "1"}, newton=[[0, "0"], [1, "0"]])
        )
        with pytest.raises(NotInvertible):
            config.torsor_class()


class TestCodec:
    def test_rationals(self):
        assert parse_rational("−3/6") == Fraction(-1, 2)
        assert parse_rational(4) == 4
        assert format_rational(Fraction(-1, 2)) == "-1/2"
        assert format_rational(Fraction(4)) == "4"
        assert format_rational(POS_INF) == "+inf"
        with pytest.raises(InputError):
            parse_rational("1/0")
        with pytest.raises(InputError):
            parse_rational("half")

    def test_logmag(self):
        assert parse_logmag("inf") == POS_INF
        assert parse_logmag(" -inf ") == NEG_INF
        assert parse_logmag("2") == 2

    def test_interval(self):
        assert parse_interval("-1", "+inf") == LogInterval(-1, POS_INF)
        assert interval_to_dict(LogInterval.open(0, 0))["empty"]
        with pytest.raises(InputError):
            parse_interval("1", "0")
        with pytest.raises(InputError):
            parse_interval("-inf", "0", lo_closed=True)

    def test_dumps_is_canonical(self):
        assert dumps({"b": Fraction(1, 2), "a": [NEG_INF]}) == (
            '{\n  "a": [\n    "-inf"\n  ],\n  "b": "1/2"\n}\n'
        )
