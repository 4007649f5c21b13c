import pytest

from branchalg.finra import (
    NotTabular,
    build_stage_rep,
    enumerate_integral,
    functional_elements,
    hat,
    is_tabular,
    lemma_properties_hold,
    tabular_witness,
)
from branchalg.finra.represent import (
    PartialRep,
    extend_comp,
    extend_join,
    generated_subalgebra,
)


def _strict_pairs(s):
    return [
        (v, w)
        for w in range(1, s.n_elements)
        for v in range(s.n_elements)
        if v != w and s.leq(v, w)
    ]


def test_re2_is_tabular_with_witnesses(re2):
    assert is_tabular(re2)
    comp, conv = re2.tables
    for v, w in _strict_pairs(re2):
        p, q = tabular_witness(re2, v, w)
        t = comp[conv[p], q]
        assert t != 0 and (t & w) == t and (t & v) == 0


def test_exactly_one_two_atom_structure_is_tabular():
    structures = enumerate_integral("1'a")
    flags = sorted(is_tabular(s) for s in structures)
    assert flags == [False, True]
    bad = [s for s in structures if not is_tabular(s)][0]
    with pytest.raises(NotTabular):
        tabular_witness(bad, bad.ident, bad.top)


def test_witness_requires_strict_pair(re2):
    with pytest.raises(ValueError):
        tabular_witness(re2, 3, 3)
    with pytest.raises(ValueError):
        tabular_witness(re2, re2.top, re2.ident)


def _diag_rep(re2):
    # two copies of a point relation: nonzero, functional, common domain
    comp, conv = re2.tables
    e = None
    for x in functional_elements(re2):
        if x and re2.leq(x, re2.ident) and bin(x).count("1") == 1:
            e = x
            break
    return PartialRep(re2, (e, e))


def test_partial_rep_validation(re2):
    with pytest.raises(ValueError):
        PartialRep(re2, (0, re2.ident))
    with pytest.raises(ValueError):
        PartialRep(re2, (re2.top,))  # not functional
    rep = _diag_rep(re2)
    assert len(rep) == 2


def test_hat_basics(re2):
    rep = _diag_rep(re2)
    diag = {(i, i) for i in range(len(rep))}
    assert diag <= hat(rep, re2.ident)
    assert hat(rep, 0) == frozenset()
    comp, conv = re2.tables
    for x in range(re2.n_elements):
        assert hat(rep, int(conv[x])) == frozenset(
            (j, i) for i, j in hat(rep, x)
        )


def test_lemma_properties_on_re2_and_enumerated(re2, enumerated):
    rep = _diag_rep(re2)
    assert lemma_properties_hold(rep)
    for s in enumerated("1'abb~")[:3]:
        fns = [x for x in functional_elements(s) if x]
        comp, _ = s.tables
        f0 = fns[0]
        dom = int(comp[f0, s.top])
        seq = [f for f in fns if int(comp[f, s.top]) == dom][:3]
        rep = PartialRep(s, tuple(seq))
        assert lemma_properties_hold(rep)


def test_extend_join_postconditions(re2):
    comp, conv = re2.tables
    rep = _diag_rep(re2)
    x, y = rep.f[0], int(comp[rep.f[0], re2.top])
    targets = hat(rep, x | y)
    assert targets
    i, j = sorted(targets)[0]
    g = extend_join(re2, rep, i, j, x, y)
    assert (i, j) in hat(g, x) | hat(g, y)
    # when the first branch has a nonzero seed it is the one selected
    if comp[rep.f[i], x] & rep.f[j]:
        assert (i, j) in hat(g, x)
    for z in range(re2.n_elements):
        assert hat(rep, z) <= hat(g, z)
        for k in range(len(rep)):
            for l in range(len(rep)):
                if (comp[rep.f[k], z] & rep.f[l]) == 0:
                    assert (comp[g.f[k], z] & g.f[l]) == 0
    # degenerate join: x joined with itself restricts the domain only
    g2 = extend_join(re2, rep, i, j, x, x)
    assert (i, j) in hat(g2, x)


def test_extend_join_precondition(re2):
    rep = _diag_rep(re2)
    with pytest.raises(ValueError):
        extend_join(re2, rep, 0, 1, 0, 0)


def test_extend_comp_on_re2(re2):
    comp, conv = re2.tables
    rep = _diag_rep(re2)
    x = y = re2.top
    assert (0, 1) in hat(rep, int(comp[x, y]))
    g = extend_comp(re2, rep, 0, 1, x, y)
    m = len(g) - 1
    assert m == len(rep)
    assert (0, m) in hat(g, x) and (m, 1) in hat(g, y)
    assert (0, 1) in {
        (i, j) for i, k in hat(g, x) for k2, j in hat(g, y) if k == k2
    }
    for z in range(re2.n_elements):
        assert hat(rep, z) <= hat(g, z)


def test_generated_subalgebra_cap(re2):
    xs = generated_subalgebra(re2, [3, 7], cap=16)
    assert len(xs) <= 16
    assert 0 in xs and re2.ident in xs and re2.top in xs


def test_build_stage_rep_separates(re2):
    report = build_stage_rep(re2, 0, 0b0010, stages=50, seed=0)
    assert len(report.stages) == 50
    assert report.all_conditions_hold
    assert report.separates
    # separation is achieved at stage 0 already
    assert report.stages[0].separated and report.stages[0].zero_kept


def test_build_stage_rep_many_pairs(re2):
    for v, w in _strict_pairs(re2)[:8]:
        report = build_stage_rep(re2, v, w, stages=12, seed=1)
        assert report.all_conditions_hold and report.separates, (v, w)


def test_build_stage_rep_composition_witnesses(re2):
    report = build_stage_rep(re2, 0, 0b0010, stages=60, seed=0)
    assert any(st.step == "comp" and st.length > 2 for st in report.stages)


def test_build_stage_rep_errors(re2):
    with pytest.raises(ValueError):
        build_stage_rep(re2, 0, 1, stages=0)
    with pytest.raises(ValueError):
        build_stage_rep(re2, 1, 1, stages=5)
    bad = [s for s in enumerate_integral("1'a") if not is_tabular(s)][0]
    with pytest.raises(NotTabular):
        build_stage_rep(bad, bad.ident, bad.top, stages=5)
