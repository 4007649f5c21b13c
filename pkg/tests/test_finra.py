import pytest

from branchalg.finra import (
    AtomStructureError,
    TABLE_TOTALS,
    UnsupportedSignatureError,
    enumerate_integral,
    format_structure,
    from_cycles,
    make_proper_ra,
    normalize_signature,
    parse_structure,
    verify_axioms,
)
from branchalg.finra.atoms import AtomStructure
from branchalg.finra.enumeration import (
    atom_symmetries,
    canonical_key,
    signature_spec,
)


def test_one_atom_algebra():
    s = from_cycles(("1'",), (0,), {0}, [(0, 0, 0)])
    assert verify_axioms(s)
    assert s.n_elements == 2 and s.ident == 1 and s.top == 1


def test_cycle_closure_enforced():
    # a triple set that is not closed under the cycle transforms is not a
    # legal structure
    with pytest.raises(AtomStructureError):
        AtomStructure(("1'", "a", "b"), (0, 1, 2), frozenset({0}),
                      frozenset({(0, 0, 0), (1, 2, 1)}))


def test_assoc_filter_agrees_with_full_axiom_check():
    # every orbit subset over the two-symmetric-atom signature: the fast
    # associativity filter must keep exactly the candidates that satisfy the
    # full axiom battery
    from branchalg.finra import kernels
    from branchalg.finra.enumeration import diversity_orbits, forced_triples

    _, names, conv = signature_spec("1'ab")
    forced = forced_triples(conv)
    orbits = diversity_orbits(conv)
    survivors = {
        frozenset(t) for t in kernels.associative_candidates(len(conv), forced, orbits)
    }
    import itertools

    seen_bad = 0
    for k in range(len(orbits) + 1):
        for combo in itertools.combinations(range(len(orbits)), k):
            triples = set(forced)
            for i in combo:
                triples.update(orbits[i])
            s = AtomStructure(names, conv, frozenset({0}), frozenset(triples))
            ok = verify_axioms(s)
            assert ok == (frozenset(triples) in survivors)
            seen_bad += not ok
    assert seen_bad > 0


def test_make_proper_ra():
    assert make_proper_ra(1).n_atoms == 1
    re2 = make_proper_ra(2)
    assert re2.n_atoms == 4
    assert verify_axioms(re2)
    with pytest.raises(ValueError):
        make_proper_ra(0)
    with pytest.raises(ValueError):
        make_proper_ra(5)


def test_element_formatting_and_parsing():
    s = enumerate_integral("1'abb~")[0]
    assert s.format_element(0) == "0"
    assert s.format_element(0b0110) == "a+b"
    assert s.parse_element("a+b") == 0b0110
    assert s.parse_element("a,b~") == 0b1010
    assert s.parse_element("5") == 5
    assert s.parse_element("0") == 0
    with pytest.raises(AtomStructureError):
        s.parse_element("zz")
    with pytest.raises(AtomStructureError):
        s.parse_element("99")


def test_structure_file_round_trip(tmp_path):
    s = enumerate_integral("1'abc")[10]
    text = format_structure(s)
    back = parse_structure(text)
    assert back.triples == s.triples
    assert back.conv == s.conv
    assert back.identity == s.identity


def test_parse_structure_applies_cycle_closure():
    text = "atoms=2 identity=0 converse=0,1\ncycle 0 0 0\ncycle 0 1 1\ncycle 1 1 1\n"
    s = parse_structure(text)
    # one representative per cycle implies its whole orbit
    assert (1, 0, 1) in s.triples and (1, 1, 0) in s.triples
    assert verify_axioms(s)


def test_parse_structure_errors():
    with pytest.raises(AtomStructureError):
        parse_structure("no header")
    with pytest.raises(AtomStructureError):
        parse_structure("atoms=2 identity=0 converse=0,1\nbad line here\n")


def test_model_handle_operations():
    s = make_proper_ra(2)
    m = s.handle()
    assert m.comp(m.ident, s.top) == s.top
    assert m.join(1, 2) == 3
    assert m.compl(0) == s.top
    assert m.leq(1, 3) and not m.leq(3, 1)
    assert list(m.elements()) == list(range(16))


def test_signature_normalization():
    assert normalize_signature("1'ab b̄") == "1'abb~"
    assert normalize_signature("1'aā") == "1'aa~"
    assert normalize_signature("1'abb~") == "1'abb~"


@pytest.mark.parametrize(
    "signature", ["1'", "1'a", "1'aa~", "1'ab", "1'abb~", "1'abc", "1'aa~bb~"]
)
def test_enumeration_counts(enumerated, signature):
    structures = enumerated(signature)
    assert len(structures) == TABLE_TOTALS[signature]


def test_enumerated_structures_verify_axioms(enumerated):
    for sig in ("1'ab", "1'abb~", "1'abc"):
        for s in enumerated(sig):
            assert verify_axioms(s), s.label


def test_enumeration_is_deterministic():
    once = enumerate_integral("1'ab")
    twice = enumerate_integral("1'ab")
    assert [s.triples for s in once] == [s.triples for s in twice]
    assert [s.label for s in once] == ["1'ab#" + str(i) for i in range(7)]


def test_enumeration_pairwise_nonisomorphic(enumerated):
    _, names, conv = signature_spec("1'abb~")
    perms = atom_symmetries(conv)
    keys = {canonical_key(s.triples, perms) for s in enumerated("1'abb~")}
    assert len(keys) == 37


def test_unsupported_and_stretch_signatures():
    with pytest.raises(UnsupportedSignatureError):
        enumerate_integral("1'xyz")
    with pytest.raises(UnsupportedSignatureError):
        enumerate_integral("1'abcd")  # stretch target needs the flag


@pytest.mark.slow
def test_stretch_row_counts():
    assert len(enumerate_integral("1'abcc~", stretch=True)) == TABLE_TOTALS["1'abcc~"]
    assert len(enumerate_integral("1'abcd", stretch=True)) == TABLE_TOTALS["1'abcd"]
