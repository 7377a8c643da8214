import io

import pytest

import config.settings as settings
from main import run
from core.errors import SearchAbortedError
from core.splicing import closure_language_upto
from utils.compression import load_json, read_text, save_json, write_text
from utils.helpers import iter_content_lines, source_name, write_output
from utils.logging import _get_display_width, pad_to_width, wrap_text_with_cjk_support
from utils.memory import check_memory_limit
from tests.helpers import fixture_path, load_system


@pytest.mark.parametrize("suffix", ['', '.gz', '.lz4', '.zst'])
def test_compressed_inputs_are_read_transparently(tmp_path, suffix):
    with open(fixture_path('ex2.fss'), encoding='utf-8') as f:
        text = f.read()
    path = str(tmp_path / f"ex2.fss{suffix}")
    write_text(path, text)
    assert read_text(path) == text
    out = io.StringIO()
    assert run(['type', path], out) == 0
    assert out.getvalue() == "(1,2)\n"


def test_json_round_trip_through_zstd(tmp_path):
    path = str(tmp_path / 'nested' / 'prov.json.zst')
    save_json(path, {'target': 'cnf-sz', 'rules': ['[r1]^1']})
    assert load_json(path) == {'target': 'cnf-sz', 'rules': ['[r1]^1']}


def test_write_output_adds_trailing_newline(tmp_path):
    path = str(tmp_path / 'out.hom')
    write_output(path, "a -> a")
    assert read_text(path) == "a -> a\n"


def test_iter_content_lines_strips_comments_and_reports_columns():
    text = "# header\n\n  axiom a b   # trailing\nrule p : a | eps - eps | b\n"
    assert list(iter_content_lines(text)) == [
        (3, 3, 'axiom a b'),
        (4, 1, 'rule p : a | eps - eps | b'),
    ]


def test_source_name():
    assert source_name('/tmp/x/ex5.fss') == 'ex5.fss'
    assert source_name(None) == '<text>'


def test_display_width_counts_wide_characters():
    assert _get_display_width('ab') == 2
    assert _get_display_width('規則') == 4
    assert pad_to_width('規則', 6) == '規則  '
    assert pad_to_width('abcdef', 3) == 'abcdef'
    assert wrap_text_with_cjk_support('規則規則', 5) == ['規則', '規則']
    assert wrap_text_with_cjk_support('', 5) == ['']


def test_force_stop_aborts_search():
    settings.MEMORY_CHECK_INTERVAL = 1
    settings.force_stop = True
    with pytest.raises(SearchAbortedError):
        closure_language_upto(load_system('ex2.fss').system, 6)


def test_memory_limit(monkeypatch):
    monkeypatch.setattr(settings, 'MEMORY_LIMIT_MB', 0)
    assert check_memory_limit() is True
    monkeypatch.setattr(settings, 'ENABLE_MEMORY_MONITOR', False)
    assert check_memory_limit() is False


@pytest.mark.parametrize("suffix, magic", [
    ('.gz', b'\x1f\x8b'),
    ('.lz4', b'\x04"M\x18'),
    ('.zst', b'(\xb5/\xfd'),
    ('', b'{'),
])
def test_json_format_follows_extension(tmp_path, suffix, magic):
    path = str(tmp_path / f"prov.json{suffix}")
    save_json(path, {'target': 'reg-sz'})
    with open(path, 'rb') as f:
        assert f.read().startswith(magic)
    assert load_json(path) == {'target': 'reg-sz'}
