"""
Unit Tests: Instance Documents
Parsing, canonical printing, validation errors and seeded generation.
"""

import hashlib
from pathlib import Path

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from exceptions import (
    DuplicateNameError,
    EmptyUniverseError,
    InputError,
    InstanceSyntaxError,
    InvalidParameterError,
    SemanticError,
)
from instances import (
    default_names,
    document_to_partition,
    instance_digest,
    load_instance,
    parse_instance,
    partition_to_document,
    print_instance,
    random_instance,
    random_partition,
)
from schemas import InstanceDocument

FIXTURES = Path(__file__).resolve().parent / "fixtures"
CANONICAL_FIXTURES = ("example2.json", "example1_partition.json", "singleton.json")


def _read(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


# ============ PARSE / PRINT ============


def test_parse_example2():
    doc = parse_instance(_read("example2.json"))
    assert doc.universe == ["a", "b", "c", "d", "e"]
    assert doc.blocks == [["a", "b"], ["c", "d", "e"]]


def test_fixtures_print_back_byte_for_byte():
    """Canonical fixtures survive parse then print unchanged."""
    for name in CANONICAL_FIXTURES:
        text = _read(name)
        print(f"[TEST] Round-tripping {name}...")
        assert print_instance(parse_instance(text)) == text
        assert parse_instance(print_instance(parse_instance(text))) == parse_instance(text)


def test_printing_canonicalizes_block_order():
    doc = parse_instance('{"universe": ["a", "b", "c"], "blocks": [["c", "b"], ["a"]]}')
    canonical = partition_to_document(document_to_partition(doc))
    assert canonical.blocks == [["a"], ["b", "c"]]


def test_digest_is_sha256_of_canonical_text():
    doc = parse_instance(_read("example2.json"))
    expected = hashlib.sha256(_read("example2.json").encode("utf-8")).hexdigest()
    assert instance_digest(doc) == expected


# ============ ERRORS ============


def test_malformed_json_carries_position():
    with pytest.raises(InstanceSyntaxError) as info:
        parse_instance(_read("malformed.json"))
    assert info.value.line == 2
    assert info.value.exit_code == 2


def test_non_utf8_file_is_a_syntax_error_with_position(tmp_path):
    """A stray 0xff byte is an input error at its line and column, not a crash."""
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{\n  "universe": ["\xff"],\n  "blocks": [["a"]]\n}\n')
    with pytest.raises(InstanceSyntaxError) as info:
        load_instance(path)
    print(f"[TEST] Non-UTF-8 instance: {info.value}")
    assert info.value.line == 2
    assert info.value.column == 17
    assert info.value.exit_code == 2
    assert "0xff" in str(info.value)


def test_non_object_document_is_a_syntax_error():
    with pytest.raises(InstanceSyntaxError):
        parse_instance('["a", "b"]')


def test_overlapping_blocks_are_a_semantic_error():
    with pytest.raises(SemanticError) as info:
        parse_instance(_read("overlapping_blocks.json"))
    assert "element b in two blocks" in str(info.value)


def test_semantic_errors():
    cases = [
        '{"universe": ["a", "b"], "blocks": [["a"], ["z"]]}',
        '{"universe": ["a", "b"], "blocks": [["a", "a"], ["b"]]}',
        '{"universe": ["a", "b"], "blocks": [["a"]]}',
        '{"universe": ["a", "b"], "blocks": [["a", "b"], []]}',
        '{"universe": "ab", "blocks": [["a", "b"]]}',
        '{"universe": ["a"], "blocks": [["a"]], "extra": 1}',
        '{"universe": ["a"]}',
    ]
    for text in cases:
        with pytest.raises(SemanticError):
            parse_instance(text)


def test_duplicate_names_and_empty_universe():
    with pytest.raises(DuplicateNameError):
        parse_instance('{"universe": ["a", "a"], "blocks": [["a"]]}')
    with pytest.raises(EmptyUniverseError):
        parse_instance('{"universe": [], "blocks": []}')


def test_singleton_document_is_valid():
    doc = parse_instance('{"universe": ["a"], "blocks": [["a"]]}')
    assert document_to_partition(doc).size == 1


# ============ RANDOM INSTANCES ============


def test_generation_is_deterministic():
    first = print_instance(random_instance(5, 2, 7))
    second = print_instance(random_instance(5, 2, 7))
    assert first == second
    doc = parse_instance(first)
    assert doc.universe == ["a", "b", "c", "d", "e"]
    assert len(doc.blocks) == 2


def test_generation_edge_cases():
    assert random_instance(1, 1, 99) == InstanceDocument(universe=["a"], blocks=[["a"]])
    with pytest.raises(InvalidParameterError):
        random_instance(4, 5, 0)
    with pytest.raises(InvalidParameterError):
        random_instance(0, 1, 0)
    with pytest.raises(InputError):
        random_partition(21, 0)


def test_default_names():
    assert default_names(3) == ("a", "b", "c")
    assert default_names(27)[:2] == ("u0", "u1")


@hyp_settings(max_examples=50, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=12),
    seed=st.integers(min_value=0, max_value=2**32),
    data=st.data(),
)
def test_random_documents_round_trip(n, seed, data):
    blocks = data.draw(st.integers(min_value=1, max_value=n))
    doc = random_instance(n, blocks, seed)
    assert len(doc.blocks) == blocks
    assert sorted(name for block in doc.blocks for name in block) == sorted(doc.universe)
    assert parse_instance(print_instance(doc)) == doc


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
