import pytest

from core.errors import EmptyPolicy
from policy.loader import PolicyFormat, load_policy, load_policy_file
from utils.text_cleaner import (
    html_to_blocks,
    normalize_whitespace,
    split_sentences,
    text_to_blocks,
    truncate_text,
)

YR_EXCERPT = "We use different tools to track the use on our app and website."


def test_normalize_whitespace():
    assert normalize_whitespace("  a \n\t b  ") == "a b"


def test_truncate_text():
    assert truncate_text("abc", 5) == "abc"
    assert truncate_text("abcdef", 3) == "abc..."


def test_html_blocks_drop_scripts_and_comments():
    html = (
        "<html><head><style>p{}</style></head><body>"
        "<script>track()</script><p>First block.</p><!-- hidden --><div>Second <b>bold</b> block</div>"
        "</body></html>"
    )
    assert html_to_blocks(html) == ["First block.", "Second bold block"]


def test_text_blocks_split_on_blank_lines():
    assert text_to_blocks("one\nline\n\n  \ntwo") == ["one line", "two"]


def test_split_sentences_keeps_quoted_text_verbatim():
    block = f"{YR_EXCERPT} The analytics tools record which pages you visit."
    assert split_sentences(block) == [
        YR_EXCERPT,
        "The analytics tools record which pages you visit.",
    ]


@pytest.mark.parametrize("block, expected", [
    ("Contact Dr. Smith today. Thanks!", ["Contact Dr. Smith today.", "Thanks!"]),
    ("We log taps, e.g. Buttons and links. Done.", ["We log taps, e.g. Buttons and links.", "Done."]),
    ("Written by J. R. Tolkien. Next.", ["Written by J. R. Tolkien.", "Next."]),
    ('He said "Stop." Then left.', ['He said "Stop."', "Then left."]),
    ("version 2.0 is out. 3 apps use it.", ["version 2.0 is out.", "3 apps use it."]),
    ("no terminal punctuation", ["no terminal punctuation"]),
])
def test_split_sentences_boundaries(block, expected):
    assert split_sentences(block) == expected


def test_load_html_policy(fixtures_dir):
    doc = load_policy_file(fixtures_dir / "policies" / "yr_policy.html")
    assert doc.doc_id == "yr_policy"
    assert [s.text for s in doc.sentences] == [
        "Privacy statement for Yr",
        YR_EXCERPT,
        "The analytics tools record which pages you visit and how often you open the forecast.",
        "Usage statistics are stored for 13 months.",
        "We never sell personal data.",
    ]
    assert [s.index for s in doc.sentences] == list(range(5))


def test_html_and_text_twins_produce_same_sentences(fixtures_dir):
    html = load_policy_file(fixtures_dir / "policies" / "yr_policy.html")
    text = load_policy_file(fixtures_dir / "policies" / "yr_policy.txt")
    assert html == text


def test_format_from_path():
    assert PolicyFormat.from_path("a/policy.HTM") is PolicyFormat.HTML
    assert PolicyFormat.from_path("policy.xhtml") is PolicyFormat.HTML
    assert PolicyFormat.from_path("policy.txt") is PolicyFormat.PLAIN_TEXT
    assert PolicyFormat.from_path("policy") is PolicyFormat.PLAIN_TEXT


def test_empty_policy_is_rejected(fixtures_dir):
    with pytest.raises(EmptyPolicy):
        load_policy_file(fixtures_dir / "policies" / "empty_policy.html")
    with pytest.raises(EmptyPolicy):
        load_policy(b"   \n\n ", PolicyFormat.PLAIN_TEXT, "blank")


def test_invalid_utf8_is_replaced():
    doc = load_policy(b"We collect usage data \xff here.", PolicyFormat.PLAIN_TEXT, "bad")
    assert doc.sentence(0) == "We collect usage data \ufffd here."
