import math

import numpy as np
import pytest

from source import channels
from source.channel_spec import (
    describe_channel_spec,
    has_placeholder,
    parse_channel_spec,
    parse_number,
    substitute,
)
from source.channels import BidirectionalChannel
from source.errors import ChannelSpecError


def test_simple_spec_builds_family():
    ch = parse_channel_spec("kind=gad gamma=0.3 N=0.5")
    np.testing.assert_allclose(ch.choi, channels.gad(0.3, 0.5).choi)


def test_defaults_fill_missing_keys():
    assert parse_channel_spec("kind=identity").dims == (2, 2)
    assert parse_channel_spec("kind=erasure p=0.2").dims == (2, 3)
    assert parse_channel_spec("kind=depolarizing d=3 p=0.1").dims == (3, 3)


def test_nested_compose():
    ch = parse_channel_spec("kind=compose first=(kind=gad gamma=0.2 N=0) second=(kind=dephasing p=0.2)")
    expected = channels.compose(channels.dephasing(0.2), channels.gad(0.2, 0.0))
    np.testing.assert_allclose(ch.choi, expected.choi, atol=1e-12)


def test_nested_tensor():
    ch = parse_channel_spec("kind=tensor left=(kind=identity d=3) right=(kind=identity d=3)")
    assert ch.dims == (9, 9)


def test_pi_multiples():
    assert parse_number("pi") == pytest.approx(math.pi)
    assert parse_number("0.5pi") == pytest.approx(math.pi / 2)
    assert parse_number("2*pi") == pytest.approx(2 * math.pi)
    assert parse_number("-pi") == pytest.approx(-math.pi)
    assert parse_number("1e-3") == pytest.approx(1e-3)


def test_swap_dephase_is_bidirectional():
    ch = parse_channel_spec("kind=swap_dephase p=0.5 phi=pi")
    assert isinstance(ch, BidirectionalChannel)


def test_replacer_states():
    zero = parse_channel_spec("kind=replacer d=3 state=zero")
    assert zero.dims == (3, 3)
    out = zero(np.eye(3) / 3)
    assert out[0, 0].real == pytest.approx(1.0)


def test_placeholders():
    text = "kind=gad gamma={p} N=0.3"
    assert has_placeholder(text, "p")
    assert not has_placeholder(text, "q")
    filled = substitute(text, {"p": 0.25})
    np.testing.assert_allclose(parse_channel_spec(filled).choi, channels.gad(0.25, 0.3).choi)


def test_overrides_replace_top_level_keys():
    ch = parse_channel_spec("kind=erasure p=0", overrides={"p": 0.75})
    np.testing.assert_allclose(ch.choi, channels.erasure(0.75).choi)


def test_describe_is_canonical():
    assert describe_channel_spec("N=0.5 kind=gad gamma=0.3") == "kind=gad gamma=0.3 N=0.5"
    assert describe_channel_spec("kind=identity") == "kind=identity d=2"


@pytest.mark.parametrize(
    "text",
    [
        "gamma=0.3",
        "kind=warp p=0.1",
        "kind=gad gamma=0.3 gamma=0.4",
        "kind=gad gamma=0.3 colour=red",
        "kind=dephasing",
        "kind=gad gamma=abc",
        "kind=depolarizing d=2.5 p=0.1",
        "kind=compose first=(kind=identity second=(kind=identity)",
        "kind=compose first=kind second=(kind=identity)",
        "kind=gad gamma={p}",
        "kind=gad gamma=1.5",
        "kind=replacer state=plus",
        "kind=compose first=(kind=swap_dephase p=0.5 phi=pi) second=(kind=identity d=4)",
    ],
)
def test_malformed_specs_raise(text):
    with pytest.raises(ChannelSpecError):
        parse_channel_spec(text)
