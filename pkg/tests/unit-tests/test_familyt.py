# SPDX-License-Identifier: Apache-2.0

"""Families, covers, and the family file format."""

from fractions import Fraction
import itertools
import json

from hypothesis import given
import pytest

from threshold_lab import familyt
from threshold_lab import subsets
from threshold_lab.errors import CapExceeded, ParseError
from threshold_lab.familyt import Cover, GroundSet, MinimalFamily

from oracles import all_families, families, members_oracle

def minimal_lists(family):
    return [list(subsets.elements(bits)) for bits in family.minimal]

################################################################
# Parsing

def test_parse_three_pairs():
    family = familyt.parse_family("n=3\n1 2\n2 3\n1 3")
    assert family.n == 3
    assert minimal_lists(family) == [[1, 2], [1, 3], [2, 3]]

def test_parse_drops_supersets():
    family = familyt.parse_family("n=3\n1\n1 2")
    assert minimal_lists(family) == [[1]]

def test_parse_empty_family():
    family = familyt.parse_family("n=2")
    assert family.is_empty()
    assert len(family) == 0

def test_parse_comments_and_blank_lines():
    family = familyt.parse_family("# a pair\n\nn=2   # header\n\n1 2  # the set\n")
    assert minimal_lists(family) == [[1, 2]]

def test_parse_empty_set_token():
    family = familyt.parse_family("n=2\n{}\n1")
    assert family.is_full()
    assert familyt.serialize(family) == "n=2\n{}\n"

@pytest.mark.parametrize('text, line', [
    ("n=3\n1 2\n9", ':3:'),
    ("n=3\n2 1", ':2:'),
    ("n=3\n1 1", ':2:'),
    ("n=3\n1 x", ':2:'),
    ("n=-1", ':1:'),
    ("m=3", ':1:'),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as error:
        familyt.parse_family(text, 'family.fam')
    assert f'family.fam{line}' in str(error.value)

def test_parse_ground_set_cap():
    familyt.parse_family(f"n={familyt.MAX_GROUND}\n1")
    with pytest.raises(CapExceeded) as error:
        familyt.parse_family("n=25\n1 2", 'big.fam')
    assert 'big.fam:1:' in str(error.value)

def test_parse_missing_header():
    with pytest.raises(ParseError):
        familyt.parse_family("# nothing here\n")

def test_load_missing_file(tmp_path):
    with pytest.raises(ParseError):
        familyt.load_family(str(tmp_path / 'missing.fam'))

def test_dump_and_load(tmp_path, pairs3):
    pairs3.dump('pairs.fam', str(tmp_path))
    assert (tmp_path / 'pairs.fam').read_text() == "n=3\n1 2\n1 3\n2 3\n"
    assert familyt.load_family(str(tmp_path / 'pairs.fam')) == pairs3

@given(families(max_n=6, max_sets=6))
def test_serialize_round_trip(family):
    assert familyt.parse_family(familyt.serialize(family)) == family

################################################################
# Construction

def test_ground_set_cap():
    GroundSet(familyt.MAX_GROUND)
    with pytest.raises(CapExceeded):
        GroundSet(familyt.MAX_GROUND + 1)
    with pytest.raises(ValueError):
        GroundSet(-1)

def test_sets_must_fit_the_ground_set():
    with pytest.raises(ValueError):
        MinimalFamily(2, [[3]])

def test_add_and_embed(pair):
    bigger = pair.add([1])
    assert minimal_lists(bigger) == [[1]]
    embedded = pair.embed(4)
    assert embedded.n == 4 and embedded.minimal == pair.minimal
    with pytest.raises(ValueError):
        pair.embed(1)

def test_json_representation(pairs3):
    data = json.loads(str(pairs3))
    assert data[familyt.JSON_TAG] == {'n': 3, 'minimal': [[1, 2], [1, 3], [2, 3]]}

@given(families(max_n=6, max_sets=8))
def test_minimal_elements_form_an_antichain(family):
    for first, second in itertools.permutations(family.minimal, 2):
        assert not subsets.is_subset(first, second)
    assert list(family.minimal) == sorted(family.minimal, key=subsets.key)

################################################################
# Membership

def test_contains():
    family = MinimalFamily(3, [[1, 2]])
    assert familyt.contains(family, subsets.mask([1, 2, 3]))
    assert not familyt.contains(family, subsets.mask([1]))
    assert not familyt.contains(MinimalFamily(3), subsets.mask([1, 2, 3]))

def test_enumerate_members_examples(pairs3):
    assert familyt.enumerate_members(MinimalFamily(2, [[1]])) == (0b01, 0b11)
    members = familyt.enumerate_members(pairs3)
    assert set(members) == {0b011, 0b101, 0b110, 0b111}
    assert familyt.enumerate_members(MinimalFamily(3)) == ()

@given(families(max_n=7, max_sets=5))
def test_enumerate_members_matches_brute_force(family):
    assert set(familyt.enumerate_members(family)) == members_oracle(family)

@pytest.mark.parametrize('n', [0, 1, 2, 3])
def test_membership_is_monotone(n):
    for family in all_families(n):
        for small in range(1 << n):
            if familyt.contains(family, small):
                for extra in range(1 << n):
                    assert familyt.contains(family, small | extra)

def test_from_members(pairs3):
    members = familyt.enumerate_members(pairs3)
    assert familyt.from_members(3, members) == pairs3
    assert familyt.is_increasing(3, members)
    assert not familyt.is_increasing(2, [[1]])
    with pytest.raises(ValueError):
        familyt.from_members(2, [[1]])

################################################################
# Covers

def test_cover_weight_and_covering(pairs3):
    cover = Cover([[1], [2], [1]])
    assert len(cover) == 2
    assert cover.weight(Fraction(1, 2)) == 1
    assert cover.covers(pairs3)
    assert not Cover([[1]]).covers(pairs3)
    assert Cover([subsets.EMPTY]).covers(pairs3)