"""Binary relations on infinite binary trees, decided exactly.

A relation is either the empty relation or a finite set of subtree-equality
constraints between addressed subtrees of the input tree (side L) and output
tree (side R).  The generator a relates a tree to its left subtree, b to its
right subtree.  Meet is union of constraints, converse swaps the sides, and
composition projects the middle tree out of the combined constraint system.

Entailment between constraint systems is decided by a congruence-closure
engine over configurations (side, address).  The closure rules are

  * symmetry and transitivity,
  * right append: equal subtrees have equal subtrees at every deeper address,
  * pair reconstruction: a tree is determined by its two immediate subtrees,
    so configurations whose 0-children and 1-children are both identified are
    themselves identified.

The last rule is the constraint-level form of the law that pairing the two
projections of a point recovers the point; without it the two projections
would not satisfy the unicity identity.  A slow bounded breadth-first
implementation of the same rule system serves as an independent oracle.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass

Endpoint = tuple[str, str]  # (side, address), sides "L"/"R", address over "01"
Constraint = tuple[Endpoint, Endpoint]


class ProjectionIncomplete(Exception):
    """Composition failed to close its projection onto a finite generator set.

    Carries the partial generator set for diagnosis.  The repair loop makes
    this a loud error instead of a silent wrong answer.
    """

    def __init__(self, partial: frozenset[Constraint]):
        super().__init__(
            f"projection repair loop exceeded its iteration cap "
            f"({len(partial)} partial constraints)"
        )
        self.partial = partial


def _orient(c: Constraint) -> Constraint:
    p, q = c
    return (p, q) if _ep_key(p) <= _ep_key(q) else (q, p)


def _ep_key(e: Endpoint):
    side, addr = e
    return (len(addr), addr, side)


@dataclass(frozen=True, slots=True)
class BranchRelation:
    """Zero, or a finite set of subtree-equality constraints.

    The empty constraint set is the universal relation; structural equality
    of values is incidental, semantic equality is decided by `equal`.
    """

    is_zero: bool
    constraints: frozenset[Constraint]

    def __repr__(self):
        return f"BranchRelation({format_relation(self)!r})"


def _rel(cons) -> BranchRelation:
    return BranchRelation(False, frozenset(_orient(c) for c in cons))


ZERO = BranchRelation(True, frozenset())
TOP = _rel([])
IDENT = _rel([(("L", ""), ("R", ""))])


def zero() -> BranchRelation:
    return ZERO


def top() -> BranchRelation:
    return TOP


def ident() -> BranchRelation:
    return IDENT


def gen_a() -> BranchRelation:
    """Output equals the left subtree of the input."""
    return _rel([(("R", ""), ("L", "0"))])


def gen_b() -> BranchRelation:
    return _rel([(("R", ""), ("L", "1"))])


def format_relation(r: BranchRelation) -> str:
    """Text form: `0`, `1` for the unconstrained relation, otherwise
    `{L.u=R.v; ...}` with the empty address printed as `^`."""
    if r.is_zero:
        return "0"
    if not r.constraints:
        return "1"
    body = "; ".join(
        f"{_fmt_ep(p)}={_fmt_ep(q)}"
        for p, q in sorted(r.constraints, key=lambda c: (_ep_key(c[0]), _ep_key(c[1])))
    )
    return "{" + body + "}"


def _fmt_ep(e: Endpoint) -> str:
    return f"{e[0]}.{e[1] or '^'}"


# --- the closure engine ---------------------------------------------------


class ClosureEngine:
    """Union-find congruence closure over (tag, address) configurations.

    Children links are created on demand and kept per class; merging two
    classes merges their children pairwise (right append), and saturation
    repeatedly merges classes whose child pairs coincide (pair
    reconstruction).  The result is the least fixpoint of the rule system.
    """

    __slots__ = ("_parent", "_child", "_roots")

    def __init__(self):
        self._parent: list[int] = []
        self._child: list[list[int]] = []
        self._roots: dict[str, int] = {}

    def _new(self) -> int:
        i = len(self._parent)
        self._parent.append(i)
        self._child.append([-1, -1])
        return i

    def find(self, i: int) -> int:
        p = self._parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def node(self, tag: str, addr: str) -> int:
        n = self._roots.get(tag)
        if n is None:
            n = self._roots[tag] = self._new()
        for ch in addr:
            n = self.find(n)
            d = 1 if ch == "1" else 0
            c = self._child[n][d]
            if c == -1:
                c = self._child[n][d] = self._new()
            n = c
        return self.find(n)

    def union(self, a: int, b: int):
        stack = [(a, b)]
        child = self._child
        while stack:
            x, y = stack.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            self._parent[y] = x
            cx, cy = child[x], child[y]
            for d in (0, 1):
                if cx[d] != -1 and cy[d] != -1:
                    stack.append((cx[d], cy[d]))
                elif cy[d] != -1:
                    cx[d] = cy[d]

    def add_constraint(self, c: Constraint, tag_map: dict[str, str]):
        (t1, a1), (t2, a2) = c
        self.union(self.node(tag_map[t1], a1), self.node(tag_map[t2], a2))

    def saturate(self):
        child = self._child
        while True:
            merged = False
            buckets: dict[tuple[int, int], int] = {}
            for i in range(len(self._parent)):
                if self.find(i) != i:
                    continue
                c0, c1 = child[i]
                if c0 == -1 or c1 == -1:
                    continue
                key = (self.find(c0), self.find(c1))
                other = buckets.get(key)
                if other is None:
                    buckets[key] = i
                elif self.find(other) != self.find(i):
                    self.union(other, i)
                    merged = True
            if not merged:
                return

    def same(self, e1: tuple[str, str], e2: tuple[str, str]) -> bool:
        return self.find(self.node(*e1)) == self.find(self.node(*e2))


_LR = {"L": "L", "R": "R"}


def _engine_for(r: BranchRelation) -> ClosureEngine:
    eng = ClosureEngine()
    for c in r.constraints:
        eng.add_constraint(c, _LR)
    eng.saturate()
    return eng


def entails(r: BranchRelation, c: Constraint) -> bool:
    """Is the constraint derivable from r under the closure rules?"""
    if r.is_zero:
        raise ValueError("entails is undefined on the zero relation")
    eng = _engine_for(r)
    return eng.same(c[0], c[1])


def _pack_ep(ep: Endpoint) -> int:
    """Endpoint as an int: 1-prefixed address bits, tag in the low bit."""
    code = 1
    for ch in ep[1]:
        code = code << 1 | (ch == "1")
    return code << 1 | (ep[0] == "R")


def entails_bfs(r: BranchRelation, c: Constraint, bound: int) -> bool:
    """Independent oracle: closure restricted to addresses of length <= bound.

    Plain worklist saturation over an explicit set of derived pairs, with no
    lazy node creation and no union-find; sound, and complete for derivations
    that stay within the address bound.
    """
    if r.is_zero:
        raise ValueError("entails_bfs is undefined on the zero relation")
    goal_p, goal_q = _pack_ep(c[0]), _pack_ep(c[1])
    if goal_p == goal_q:
        return True
    goal = (min(goal_p, goal_q), max(goal_p, goal_q))
    known: set[tuple[int, int]] = set()
    adj: dict[int, list[int]] = {}
    queue: deque[tuple[int, int]] = deque()
    # a packed endpoint has address length bit_length(ep >> 1) - 1
    applim = 1 << (bound + 1)  # appendable while (ep >> 1) < applim / 2

    def push(p: int, q: int):
        if p == q:
            return
        key = (p, q) if p < q else (q, p)
        if key in known:
            return
        known.add(key)
        adj.setdefault(p, []).append(q)
        adj.setdefault(q, []).append(p)
        queue.append(key)

    for ep1, ep2 in r.constraints:
        push(_pack_ep(ep1), _pack_ep(ep2))
    while queue:
        p, q = queue.popleft()
        # transitivity through shared endpoints
        for x, other in ((p, q), (q, p)):
            for mate in list(adj.get(x, ())):
                push(other, mate)
        # right append within the bound
        pa, qa = p >> 1, q >> 1
        if pa < applim // 2 and qa < applim // 2:
            for d in (0, 1):
                push(
                    (pa << 1 | d) << 1 | (p & 1),
                    (qa << 1 | d) << 1 | (q & 1),
                )
        # pair reconstruction: merged siblings force the parents
        if pa > 1 and qa > 1 and (pa & 1) == (qa & 1):
            sp = (pa ^ 1) << 1 | (p & 1)
            sq = (qa ^ 1) << 1 | (q & 1)
            if (min(sp, sq), max(sp, sq)) in known:
                push((pa >> 1) << 1 | (p & 1), (qa >> 1) << 1 | (q & 1))
    return goal in known


def leq(r1: BranchRelation, r2: BranchRelation) -> bool:
    if r1.is_zero:
        return True
    if r2.is_zero:
        return False
    eng = _engine_for(r1)
    return all(eng.same(p, q) for p, q in r2.constraints)


def equal(r1: BranchRelation, r2: BranchRelation) -> bool:
    if r1.is_zero or r2.is_zero:
        return r1.is_zero and r2.is_zero
    return leq(r1, r2) and leq(r2, r1)


def meet(r1: BranchRelation, r2: BranchRelation) -> BranchRelation:
    if r1.is_zero or r2.is_zero:
        return ZERO
    return BranchRelation(False, r1.constraints | r2.constraints)


def converse(r: BranchRelation) -> BranchRelation:
    if r.is_zero:
        return ZERO
    swap = {"L": "R", "R": "L"}
    return _rel(
        [((swap[t1], a1), (swap[t2], a2)) for (t1, a1), (t2, a2) in r.constraints]
    )


_REPAIR_CAP = 64


def compose(r1: BranchRelation, r2: BranchRelation) -> BranchRelation:
    """Relative product: project the shared middle tree out of r1 and r2.

    The combined three-tag constraint system is saturated; a breadth-first
    walk of its class graph from the two outer roots yields a finite
    generating set for the projected relation (canonical names along a BFS
    tree, one constraint per cross edge).  A verification loop re-derives the
    directly-observed outer constraints from the result and repairs any gap,
    giving up loudly after a fixed number of rounds.
    """
    if r1.is_zero or r2.is_zero:
        return ZERO
    eng = ClosureEngine()
    for c in r1.constraints:
        eng.add_constraint(c, {"L": "s", "R": "m"})
    for c in r2.constraints:
        eng.add_constraint(c, {"L": "m", "R": "t"})
    eng.saturate()

    out: list[Constraint] = []
    name: dict[int, Endpoint] = {}
    rs = eng.find(eng.node("s", ""))
    rt = eng.find(eng.node("t", ""))
    queue: deque[int] = deque()
    name[rs] = ("L", "")
    queue.append(rs)
    if rt == rs:
        out.append((("L", ""), ("R", "")))
    else:
        name[rt] = ("R", "")
        queue.append(rt)
    while queue:
        n = queue.popleft()
        side, addr = name[n]
        for d in (0, 1):
            c = eng._child[n][d]
            if c == -1:
                continue
            c = eng.find(c)
            nm = (side, addr + str(d))
            if c in name:
                if name[c] != nm:
                    out.append((nm, name[c]))
            else:
                name[c] = nm
                queue.append(c)

    result = _rel(out)
    # verification / repair: every outer-config identification visible in the
    # three-tag closure must be recoverable from the projected system alone
    direct = _direct_outer_pairs(eng, r1, r2)
    for _ in range(_REPAIR_CAP):
        check = _engine_for(result)
        missing = [c for c in direct if not check.same(c[0], c[1])]
        if not missing:
            return result
        result = BranchRelation(
            False, result.constraints | frozenset(_orient(c) for c in missing)
        )
    raise ProjectionIncomplete(result.constraints)


def _direct_outer_pairs(eng: ClosureEngine, r1, r2) -> list[Constraint]:
    side_of = {"s": "L", "t": "R"}
    configs: list[tuple[str, str]] = []
    for c in r1.constraints:
        for tag, addr in c:
            if tag == "L":
                configs.append(("s", addr))
    for c in r2.constraints:
        for tag, addr in c:
            if tag == "R":
                configs.append(("t", addr))
    configs = sorted(set(configs))
    reps = [(eng.find(eng.node(t, a)), t, a) for t, a in configs]
    pairs = []
    for (ra, ta, aa), (rb, tb, ab) in itertools.combinations(reps, 2):
        if ra == rb:
            pairs.append(((side_of[ta], aa), (side_of[tb], ab)))
    return pairs


# --- finite semantic model ------------------------------------------------
#
# Trees are modeled concretely as binary label sequences indexed by the
# natural numbers, with the two subtrees of a sequence being its even- and
# odd-indexed halves.  The subtree at address u is then the subsequence at
# positions congruent to rev(u) modulo 2**len(u); every constraint speaks of
# equality of such subsequences.  This realizes all four closure rules, and
# the all-zero sequence satisfies every constraint set.


def _addr_stride(addr: str) -> tuple[int, int]:
    stride = 1 << len(addr)
    off = 0
    for ch in reversed(addr):
        off = off * 2 + (1 if ch == "1" else 0)
    return stride, off


def constraint_holds_on(
    c: Constraint, trees: dict[str, list[int]], length: int
) -> bool:
    (t1, a1), (t2, a2) = c
    s1, o1 = _addr_stride(a1)
    s2, o2 = _addr_stride(a2)
    i = 0
    while o1 + i * s1 < length and o2 + i * s2 < length:
        if trees[t1][o1 + i * s1] != trees[t2][o2 + i * s2]:
            return False
        i += 1
    return True


def sample_tree_pair(
    r: BranchRelation, rng: random.Random, length: int = 256
) -> dict[str, list[int]]:
    """Random labeled tree pair consistent with the constraints of r.

    Builds a union-find over the label positions touched by the constraints,
    then labels each class with one random bit.
    """
    if r.is_zero:
        raise ValueError("the zero relation has no satisfying pairs")
    parent = list(range(2 * length))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        i, j = find(i), find(j)
        if i != j:
            parent[j] = i

    base = {"L": 0, "R": length}
    for (t1, a1), (t2, a2) in r.constraints:
        s1, o1 = _addr_stride(a1)
        s2, o2 = _addr_stride(a2)
        i = 0
        while o1 + i * s1 < length and o2 + i * s2 < length:
            union(base[t1] + o1 + i * s1, base[t2] + o2 + i * s2)
            i += 1
    labels = {}
    out = {"L": [0] * length, "R": [0] * length}
    for tag in ("L", "R"):
        for i in range(length):
            rep = find(base[tag] + i)
            if rep not in labels:
                labels[rep] = rng.randint(0, 1)
            out[tag][i] = labels[rep]
    return out


# --- the verification suite for the generator pair ------------------------


def qu_suite():
    """Check the six defining identities of the generator pair exactly."""
    from .model import LawReport

    a, b = gen_a(), gen_b()
    ca, cb = converse(a), converse(b)
    one = TOP
    cases = [
        ("qu1", "conv(a);a = id", compose(ca, a), IDENT),
        ("qu2", "conv(b);b = id", compose(cb, b), IDENT),
        ("qu3", "a;conv(a) & b;conv(b) = id", meet(compose(a, ca), compose(b, cb)), IDENT),
        ("qu4", "conv(a);b = 1", compose(ca, b), one),
        ("qu5", "a;1 = 1", compose(a, one), one),
        ("qu6", "b;1 = 1", compose(b, one), one),
    ]
    reports = []
    for law_id, desc, lhs, rhs in cases:
        ok = equal(lhs, rhs)
        reports.append(
            LawReport(
                law_id=law_id,
                strategy="direct",
                tested=1,
                passed=ok,
                counterexample=None if ok else {"lhs": format_relation(lhs)},
                note=desc,
            )
        )
    return reports


# --- model handle and sampling -------------------------------------------


def paths_pool(depth: int = 4) -> list[BranchRelation]:
    """Deterministic sample pool: compositions of the generators up to the
    given length, their pairwise meets at length <= 2, converses of all of
    those, and the constants."""
    a, b = gen_a(), gen_b()
    words: list[BranchRelation] = [IDENT]
    frontier = [IDENT]
    for _ in range(depth):
        frontier = [compose(w, g) for w in frontier for g in (a, b)]
        words.extend(frontier)
    short = [w for w in words if len(w.constraints) and _max_addr(w) <= 2]
    meets = [meet(x, y) for x, y in itertools.combinations(short, 2)]
    pool = words + meets
    pool = pool + [converse(r) for r in pool]
    pool.append(TOP)
    pool.append(ZERO)
    seen = set()
    out = []
    for r in pool:
        key = (r.is_zero, r.constraints)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def _max_addr(r: BranchRelation) -> int:
    return max((max(len(p[1]), len(q[1])) for p, q in r.constraints), default=0)


def model_handle():
    from .model import ModelHandle

    return ModelHandle(
        name="branchrel",
        meet=meet,
        comp=compose,
        conv=converse,
        zero=ZERO,
        top=TOP,
        ident=IDENT,
        equal=equal,
        leq=leq,
        gen_a=gen_a(),
        gen_b=gen_b(),
        elements=None,
        sample_pool=paths_pool,
        format_element=format_relation,
    )
