"""
測試共用的小工具：讀取 fixtures/ 下的系統與文法
"""
import os

from core.formats import parse_grammar, parse_system
from core.words import parse_word

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def load_system(name):
    with open(fixture_path(name), encoding='utf-8') as f:
        return parse_system(f.read(), name)


def load_grammar(name, validate=True):
    with open(fixture_path(name), encoding='utf-8') as f:
        return parse_grammar(f.read(), name, validate=validate)[0]


def words(*texts):
    """'a b' 形式的字串轉成字詞集合，'eps' 為空字詞"""
    return {parse_word(t) for t in texts}
