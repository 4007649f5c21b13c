import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from branchalg import branchrel as br
from branchalg import laws, model

A = br.gen_a()
B = br.gen_b()
CA = br.converse(A)
CB = br.converse(B)
ID = br.ident()
TOP = br.top()
ZERO = br.zero()


def c(spec: str):
    """Constraint from `L.u=R.v` notation with ^ for the empty address."""
    lhs, rhs = spec.split("=")

    def ep(s):
        side, addr = s.split(".")
        return (side, "" if addr == "^" else addr)

    return (ep(lhs), ep(rhs))


def test_generators_and_text_form():
    assert br.format_relation(A) == "{R.^=L.0}"
    assert br.format_relation(B) == "{R.^=L.1}"
    assert br.format_relation(ID) == "{L.^=R.^}"
    assert br.format_relation(TOP) == "1"
    assert br.format_relation(ZERO) == "0"
    assert br.format_relation(br.converse(A)) == "{L.^=R.0}"


def test_meet_basics():
    r = br.meet(A, B)
    assert br.equal(br.meet(TOP, r), r)
    assert br.meet(r, ZERO).is_zero
    # forces both subtrees of the input to equal the output
    assert br.entails_bfs(r, c("L.0=L.1"), bound=6)
    assert br.entails(r, c("L.0=L.1"))


def test_converse():
    pool = [A, B, br.meet(A, B), br.compose(A, B)]
    for r in pool:
        assert br.converse(br.converse(r)) == r
    assert br.equal(br.converse(TOP), TOP)


def test_compose_spec_cases():
    assert br.equal(br.compose(CA, A), ID)
    assert br.equal(br.compose(CA, B), TOP)
    for r in (A, B, br.meet(A, B)):
        assert br.equal(br.compose(ID, r), r)
        assert br.equal(br.compose(r, ID), r)
    u = br.meet(CA, CB)
    assert br.equal(br.compose(u, A), ID)
    assert br.equal(br.compose(u, B), ID)
    p = br.meet(br.compose(A, CB), br.compose(B, CA))
    assert br.equal(br.compose(p, A), B)
    assert br.equal(br.compose(p, B), A)
    assert br.compose(ZERO, A).is_zero
    assert br.compose(A, ZERO).is_zero


def test_unicity_meet_is_identity():
    lhs = br.meet(br.compose(A, CA), br.compose(B, CB))
    assert br.equal(lhs, ID)


def test_entails_examples():
    r1 = br.BranchRelation(False, frozenset([c("R.^=L.0")]))
    assert br.entails(r1, c("R.1=L.01"))
    assert br.entails_bfs(r1, c("R.1=L.01"), bound=6)
    r2 = br.BranchRelation(False, frozenset([c("L.0=L.^")]))
    assert br.entails(r2, c("L.00=L.^"))
    assert br.entails_bfs(r2, c("L.00=L.^"), bound=6)
    assert not br.entails(A, c("R.^=L.1"))
    assert not br.entails_bfs(A, c("R.^=L.1"), bound=6)
    with pytest.raises(ValueError):
        br.entails(ZERO, c("L.^=R.^"))


def test_leq_equal():
    assert br.leq(ZERO, A)
    assert not br.leq(TOP, A)
    assert br.leq(A, TOP)
    assert not br.equal(ZERO, TOP)
    assert br.equal(ZERO, ZERO)


def test_qu_suite_passes():
    reports = br.qu_suite()
    assert len(reports) == 6
    assert all(r.passed for r in reports)
    assert reports[0].line() == "LAW qu1 pass tested=1"


def _pool40():
    pool = [r for r in br.paths_pool() if not r.is_zero]
    return pool[:40]


def test_meet_semilattice_on_sample():
    pool = _pool40()
    for x in pool[:12]:
        assert br.equal(br.meet(x, x), x)
    rng = random.Random(1)
    for _ in range(300):
        x, y, z = (rng.choice(pool) for _ in range(3))
        assert br.equal(br.meet(x, y), br.meet(y, x))
        assert br.equal(br.meet(br.meet(x, y), z), br.meet(x, br.meet(y, z)))


def test_compose_associative_on_sample():
    pool = _pool40()
    rng = random.Random(2)
    for _ in range(250):
        x, y, z = (rng.choice(pool) for _ in range(3))
        lhs = br.compose(br.compose(x, y), z)
        rhs = br.compose(x, br.compose(y, z))
        assert br.equal(lhs, rhs), (
            br.format_relation(x),
            br.format_relation(y),
            br.format_relation(z),
        )


def test_all_axioms_hold_on_sample():
    m = br.model_handle()
    axioms = [l for l in laws.law_catalog() if l.id.startswith("jax-")]
    assert len(axioms) == 13
    for law in axioms:
        report = model.check_law(m, law, model.Sample(n=150, seed=3))
        assert report.passed, report.line()


def test_no_constraint_set_is_empty():
    # the all-zero tree pair satisfies every non-zero value
    pool = _pool40()
    zero_trees = {"L": [0] * 256, "R": [0] * 256}
    for r in pool:
        for con in r.constraints:
            assert br.constraint_holds_on(con, zero_trees, 256)


def test_semantic_soundness_spot_check():
    rng = random.Random(5)
    pool = [r for r in _pool40() if r.constraints]
    for r in pool[:20]:
        eng = br._engine_for(r)
        # collect some entailed constraints among short addresses
        entailed = []
        addrs = [""] + ["0", "1", "00", "01", "10", "11", "010", "101"]
        for (s1, a1), (s2, a2) in itertools.product(
            itertools.product("LR", addrs), repeat=2
        ):
            if (s1, a1) < (s2, a2) and eng.same((s1, a1), (s2, a2)):
                entailed.append(((s1, a1), (s2, a2)))
        for _ in range(5):
            trees = br.sample_tree_pair(r, rng)
            for con in r.constraints:
                assert br.constraint_holds_on(con, trees, 256)
            for con in entailed[:30]:
                assert br.constraint_holds_on(con, trees, 256), (
                    br.format_relation(r),
                    con,
                )


def test_oracle_agreement_on_real_relations():
    rng = random.Random(11)
    pool = [r for r in _pool40() if r.constraints]
    addrs = ["", "0", "1", "00", "01", "110", "0101", "10110", "010101"]
    checked = 0
    for _ in range(150):
        r = rng.choice(pool)
        con = (
            (rng.choice("LR"), rng.choice(addrs)),
            (rng.choice("LR"), rng.choice(addrs)),
        )
        if con[0] == con[1]:
            continue
        assert br.entails(r, con) == br.entails_bfs(r, con, bound=8)
        checked += 1
    assert checked > 100


def test_compose_never_raises_projection_incomplete_on_pool():
    pool = _pool40()
    rng = random.Random(13)
    for _ in range(200):
        x, y = rng.choice(pool), rng.choice(pool)
        br.compose(x, y)  # must not raise


def test_projection_incomplete_carries_partial_set():
    exc = br.ProjectionIncomplete(frozenset([c("L.^=R.^")]))
    assert exc.partial == frozenset([c("L.^=R.^")])


def test_paths_pool_is_deterministic():
    assert br.paths_pool() == br.paths_pool()
    assert len(br.paths_pool()) >= 40


_ep_strategy = st.tuples(
    st.sampled_from("LR"), st.text(alphabet="01", min_size=0, max_size=4)
)
_con_strategy = st.tuples(_ep_strategy, _ep_strategy).filter(lambda c: c[0] != c[1])


@settings(max_examples=300, deadline=None)
@given(
    st.frozensets(_con_strategy, min_size=1, max_size=4),
    _con_strategy,
)
def test_engine_matches_oracle_property(cons, query):
    r = br.BranchRelation(False, cons)
    assert br.entails(r, query) == br.entails_bfs(r, query, bound=6)


def _random_constraint_rel(rng):
    def ep():
        return (
            rng.choice("LR"),
            "".join(rng.choice("01") for _ in range(rng.randint(0, 4))),
        )

    cons = [(ep(), ep()) for _ in range(rng.randint(1, 4))]
    cons = [c for c in cons if c[0] != c[1]]
    return br.BranchRelation(False, frozenset(cons)) if cons else TOP


def test_engine_laws_beyond_the_generated_carrier():
    # arbitrary constraint systems, including cyclic self-referential ones,
    # still compose associatively and respect converse and rotation
    rng = random.Random(99)
    for _ in range(800):
        x, y, z = (_random_constraint_rel(rng) for _ in range(3))
        assert br.equal(
            br.compose(br.compose(x, y), z), br.compose(x, br.compose(y, z))
        )
        assert br.equal(
            br.converse(br.compose(x, y)),
            br.compose(br.converse(y), br.converse(x)),
        )
        lhs = br.meet(br.compose(x, y), z)
        rhs = br.meet(
            br.compose(
                br.meet(br.compose(z, br.converse(y)), x),
                br.meet(y, br.compose(br.converse(x), z)),
            ),
            z,
        )
        assert br.equal(lhs, rhs)
