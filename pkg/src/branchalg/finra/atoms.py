"""Finite relation algebras presented by atom structures.

An atom structure lists the atoms, an involutive converse pairing, the set of
identity atoms, and the allowed composition triples (x, y, z) meaning atom z
sits below atom x ; atom y.  Elements of the induced algebra are atom sets,
stored as bitmasks; all operations are unions over the atom tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

Triple = tuple[int, int, int]


class AtomStructureError(Exception):
    pass


def peirce_orbit(t: Triple, conv: tuple[int, ...]) -> frozenset[Triple]:
    """Orbit of a triple under the two cycle transforms."""
    seen: set[Triple] = set()
    stack = [t]
    while stack:
        x, y, z = stack.pop()
        if (x, y, z) in seen:
            continue
        seen.add((x, y, z))
        stack.append((conv[x], z, y))
        stack.append((z, conv[y], x))
    return frozenset(seen)


@dataclass(frozen=True)
class AtomStructure:
    atom_names: tuple[str, ...]
    conv: tuple[int, ...]
    identity: frozenset[int]
    triples: frozenset[Triple]
    label: str = ""

    def __post_init__(self):
        n = self.n_atoms
        if sorted(self.conv) != list(range(n)):
            raise AtomStructureError("converse is not a permutation")
        if any(self.conv[self.conv[i]] != i for i in range(n)):
            raise AtomStructureError("converse is not involutive")
        if not self.identity or not all(0 <= e < n for e in self.identity):
            raise AtomStructureError("bad identity atom set")
        for t in self.triples:
            if not all(0 <= i < n for i in t):
                raise AtomStructureError(f"triple out of range: {t}")
            if not peirce_orbit(t, self.conv) <= self.triples:
                raise AtomStructureError(f"triples not cycle-closed at {t}")

    @property
    def n_atoms(self) -> int:
        return len(self.atom_names)

    @property
    def n_elements(self) -> int:
        return 1 << self.n_atoms

    @property
    def top(self) -> int:
        return self.n_elements - 1

    @property
    def ident(self) -> int:
        return sum(1 << e for e in self.identity)

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Element-level composition and converse tables (bitmask indexed)."""
        n, nel = self.n_atoms, self.n_elements
        if n > 12:
            raise AtomStructureError(
                f"dense element tables need 4**{n} entries; {n} atoms is too many"
            )
        atom_comp = np.zeros((n, n), dtype=np.int64)
        for x, y, z in self.triples:
            atom_comp[x, y] |= 1 << z
        comp = np.zeros((nel, nel), dtype=np.int64)
        for xm in range(1, nel):
            xl = xm & -xm
            xr = xm ^ xl
            xi = xl.bit_length() - 1
            for ym in range(1, nel):
                yl = ym & -ym
                yr = ym ^ yl
                if xr:
                    comp[xm, ym] = comp[xr, ym] | comp[xl, ym]
                elif yr:
                    comp[xm, ym] = comp[xm, yr] | comp[xm, yl]
                else:
                    comp[xm, ym] = atom_comp[xi, yl.bit_length() - 1]
        cv = np.zeros(nel, dtype=np.int64)
        for xm in range(nel):
            acc = 0
            for i in range(n):
                if xm >> i & 1:
                    acc |= 1 << self.conv[i]
            cv[xm] = acc
        return comp, cv

    # element operations (elements are ints)

    def comp(self, x: int, y: int) -> int:
        return int(self.tables[0][x, y])

    def cnv(self, x: int) -> int:
        return int(self.tables[1][x])

    def meet(self, x: int, y: int) -> int:
        return x & y

    def join(self, x: int, y: int) -> int:
        return x | y

    def compl(self, x: int) -> int:
        return x ^ self.top

    def leq(self, x: int, y: int) -> bool:
        return (x & y) == x

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.n_atoms)]

    def elements(self) -> list[int]:
        return list(range(self.n_elements))

    def format_element(self, x: int) -> str:
        if x == 0:
            return "0"
        return "+".join(self.atom_names[i] for i in range(self.n_atoms) if x >> i & 1)

    def parse_element(self, text: str) -> int:
        """Accept an atom-name sum like `a+b~`, a list of atom indices like
        `1,3`, or a bare bitmask integer."""
        text = text.strip()
        if text == "0":
            return 0
        if text.isdigit():
            v = int(text)
            if v >= self.n_elements:
                raise AtomStructureError(f"bitmask {v} out of range")
            return v
        mask = 0
        for part in text.replace("+", ",").split(","):
            part = part.strip()
            if part.isdigit():
                i = int(part)
                if i >= self.n_atoms:
                    raise AtomStructureError(f"atom index {i} out of range")
            else:
                try:
                    i = self.atom_names.index(part)
                except ValueError:
                    raise AtomStructureError(f"unknown atom {part!r}") from None
            mask |= 1 << i
        return mask

    def handle(self):
        from ..model import ModelHandle

        return ModelHandle(
            name=self.label or "finra",
            meet=self.meet,
            comp=self.comp,
            conv=self.cnv,
            zero=0,
            top=self.top,
            ident=self.ident,
            equal=lambda x, y: x == y,
            leq=self.leq,
            join=self.join,
            compl=self.compl,
            elements=self.elements,
            sample_pool=self.elements,
            format_element=self.format_element,
        )


def from_cycles(
    atom_names, conv, identity, cycles, label: str = ""
) -> AtomStructure:
    """Build a structure from representative triples, closing under the cycle
    transforms."""
    conv = tuple(conv)
    triples: set[Triple] = set()
    for t in cycles:
        triples |= peirce_orbit(tuple(t), conv)
    return AtomStructure(
        atom_names=tuple(atom_names),
        conv=conv,
        identity=frozenset(identity),
        triples=frozenset(triples),
        label=label,
    )


def verify_axioms(s: AtomStructure) -> bool:
    """Exhaustive check of the relation algebra axioms on the induced
    finite algebra (Boolean axioms on sampled triples, the relative-product
    and converse axioms over every element pair/triple at atom resolution)."""
    comp, cnv = s.tables
    nel = s.n_elements
    e = s.ident
    els = range(nel)
    # identity and converse axioms over all elements
    for x in els:
        if comp[x, e] != x or comp[e, x] != x:
            return False
        if cnv[cnv[x]] != x:
            return False
    # converse over joins and products; cycle law
    for x in els:
        for y in els:
            if cnv[x | y] != (cnv[x] | cnv[y]):
                return False
            if cnv[comp[x, y]] != comp[cnv[y], cnv[x]]:
                return False
            # cycle law at element level: conv(x);-(x;y) misses y
            if comp[cnv[x], s.compl(int(comp[x, y]))] & y:
                return False
    # distribution over joins (atom level suffices by additivity, checked
    # on elements against single atoms)
    for x in els:
        for a in s.atoms():
            for b in s.atoms():
                if comp[a | b, x] != (comp[a, x] | comp[b, x]):
                    return False
    # associativity at atom resolution (composition is additive)
    n = s.n_atoms
    atom = s.atoms()
    for x in atom:
        for y in atom:
            for z in atom:
                lhs = 0
                m = int(comp[x, y])
                for w in range(n):
                    if m >> w & 1:
                        lhs |= int(comp[1 << w, z])
                rhs = 0
                m = int(comp[y, z])
                for w in range(n):
                    if m >> w & 1:
                        rhs |= int(comp[x, 1 << w])
                if lhs != rhs:
                    return False
    return True


def make_proper_ra(n: int) -> AtomStructure:
    """The algebra of all relations on an n-point set, as an atom structure
    whose atoms are the ordered pairs."""
    if not 1 <= n <= 4:
        raise ValueError("point count out of range (1..4)")
    pairs = list(itertools.product(range(n), repeat=2))
    index = {p: i for i, p in enumerate(pairs)}
    names = tuple(f"p{i}{j}" for i, j in pairs)
    conv = tuple(index[(j, i)] for i, j in pairs)
    identity = frozenset(index[(i, i)] for i in range(n))
    triples = frozenset(
        (index[(i, j)], index[(j, k)], index[(i, k)])
        for i in range(n)
        for j in range(n)
        for k in range(n)
    )
    return AtomStructure(names, conv, identity, triples, label=f"Re({n})")


# --- text file format -----------------------------------------------------


def format_structure(s: AtomStructure) -> str:
    lines = [
        f"atoms={s.n_atoms} "
        f"identity={','.join(str(i) for i in sorted(s.identity))} "
        f"converse={','.join(str(c) for c in s.conv)}"
    ]
    done: set[Triple] = set()
    for t in sorted(s.triples):
        if t in done:
            continue
        done |= peirce_orbit(t, s.conv)
        lines.append(f"cycle {t[0]} {t[1]} {t[2]}")
    return "\n".join(lines) + "\n"


def parse_structure(text: str, label: str = "") -> AtomStructure:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("atoms="):
        raise AtomStructureError("missing atoms= header line")
    header: dict[str, str] = {}
    for fieldspec in lines[0].split():
        key, _, value = fieldspec.partition("=")
        header[key] = value
    try:
        n = int(header["atoms"])
        identity = frozenset(int(i) for i in header["identity"].split(","))
        conv = tuple(int(c) for c in header["converse"].split(","))
    except (KeyError, ValueError) as exc:
        raise AtomStructureError(f"bad header: {exc}") from None
    cycles = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] != "cycle" or len(parts) != 4:
            raise AtomStructureError(f"bad cycle line: {ln!r}")
        cycles.append(tuple(int(p) for p in parts[1:]))
    names = tuple(_default_names(n, conv, identity))
    return from_cycles(names, conv, identity, cycles, label=label)


def _default_names(n, conv, identity):
    names = [""] * n
    letters = iter("abcdefgh")
    for i in range(n):
        if i in identity:
            names[i] = "1'" if len(identity) == 1 else f"e{i}"
        elif not names[i]:
            ch = next(letters)
            names[i] = ch
            if conv[i] != i:
                names[conv[i]] = ch + "~"
    return names
