import os

import pytest

from lottietok.fixtures import make_corpus
from lottietok.model import parse_lottie
from lottietok.texttok import ByteTextTokenizer
from lottietok.vocab import default_vocab

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA, name)


def read_data(name: str) -> str:
    with open(data_path(name), "r", encoding="utf-8") as f:
        return f.read()


@pytest.fixture(scope="session")
def vocab():
    return default_vocab()


@pytest.fixture(scope="session")
def byte_tt(vocab):
    return ByteTextTokenizer(vocab.text_base)


@pytest.fixture(scope="session")
def corpus():
    return make_corpus(200)


@pytest.fixture(scope="session")
def small_corpus():
    return make_corpus(45)


@pytest.fixture()
def empty_layers_json():
    return read_data("empty_layers.json")


@pytest.fixture()
def empty_layers_anim(empty_layers_json):
    return parse_lottie(empty_layers_json)


@pytest.fixture()
def two_layer_json():
    return read_data("two_layer.json")


@pytest.fixture()
def two_layer_anim(two_layer_json):
    return parse_lottie(two_layer_json)
