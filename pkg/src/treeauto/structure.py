"""Group-level structure: cycle graphs, kneading, generalized basilica and
abelian wreath type recognition, orbits, and self-replication certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .classify import is_odometer
from .core import (IDENTITY, Perm, Presentation, TreeWord, Word, act, decode, first_level,
                   level_perm, perm_group_closure, section)
from .errors import BudgetExceeded, PreconditionError
from .solver import (DEFAULT_BUDGET, DEFAULT_RADIUS, Decision, TrivialityCache, are_equal,
                     evaluate_product, is_trivial, member_search)
from .transform import classify_sections, directed_core, is_reduced_form

# ---------------------------------------------------------------------------
# Cycle graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleGraph:
    """Bipartite graph joining each letter to the cycles containing it.

    Cycle vertex ``(i, j)`` is the ``j``-th cycle (trivial cycles included,
    ordered by least letter) of the ``i``-th permutation.
    """

    degree: int
    cycles: dict[tuple[int, int], tuple[int, ...]]

    @property
    def letter_vertices(self) -> list[int]:
        return list(range(self.degree))

    @property
    def cycle_vertices(self) -> list[tuple[int, int]]:
        return list(self.cycles)

    @property
    def edges(self) -> list[tuple[tuple[int, int], int]]:
        return [(c, x) for c, letters in self.cycles.items() for x in letters]

    @property
    def n_vertices(self) -> int:
        return self.degree + len(self.cycles)

    @property
    def n_edges(self) -> int:
        return sum(len(c) for c in self.cycles.values())

    def components(self) -> int:
        parent = list(range(self.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for letters in self.cycles.values():
            root = find(letters[0])
            for x in letters[1:]:
                parent[find(x)] = root
        # every cycle vertex hangs off a letter, so letter classes are the components
        return len({find(x) for x in range(self.degree)})

    def is_connected(self) -> bool:
        return self.components() == 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.n_vertices - self.n_edges == 1

    def to_dot(self) -> str:
        lines = ["graph cycle_graph {"]
        for x in range(self.degree):
            lines.append(f'  x{x} [shape=circle, label="{x}"];')
        for (i, j), letters in self.cycles.items():
            label = "(" + " ".join(map(str, letters)) + ")"
            lines.append(f'  c{i}_{j} [shape=box, label="{label} of {i}"];')
        for (i, j), x in self.edges:
            lines.append(f"  c{i}_{j} -- x{x};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "letters": self.letter_vertices,
            "cycles": [{"id": f"c{i}_{j}", "perm": i, "index": j, "letters": list(c)}
                       for (i, j), c in self.cycles.items()],
            "edges": [[f"c{i}_{j}", f"x{x}"] for (i, j), x in self.edges],
            "vertices": self.n_vertices,
            "edge_count": self.n_edges,
            "tree": self.is_tree(),
        }
        return json.dumps(doc, sort_keys=True)


def cycle_graph(perms: Sequence[Perm]) -> CycleGraph:
    perms = list(perms)
    if not perms:
        raise ValueError("cycle graph needs at least one permutation")
    d = perms[0].degree
    if any(p.degree != d for p in perms):
        raise ValueError("permutations act on alphabets of different sizes")
    cycles = {(i, j): c for i, p in enumerate(perms) for j, c in enumerate(p.cycles(complete=True))}
    return CycleGraph(d, cycles)


def is_tree_like(perms: Sequence[Perm]) -> bool:
    return cycle_graph(perms).is_tree()


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _names(P: Presentation, Y: Iterable[str] | None) -> list[str]:
    names = P.names if Y is None else list(Y)
    for n in names:
        P[n]
    return names


def _transition_closed(P: Presentation, Y: Sequence[str]) -> bool:
    ys = set(Y)
    return all(t.names() <= ys for n in Y for t in P[n].transitions)


def _nontrivial(P: Presentation, Y: Sequence[str], budget: int,
                memo: TrivialityCache) -> list[str]:
    out = []
    for n in Y:
        dec = is_trivial(P, Word.gen(n), budget, memo)
        if dec.is_unknown:
            raise BudgetExceeded(f"triviality of {n} undecided")
        if dec.is_false:
            out.append(n)
    return out


def _find_equal(P: Presentation, w: Word, candidates: Sequence[str], budget: int,
                memo: TrivialityCache) -> list[str]:
    return [c for c in candidates if are_equal(P, w, Word.gen(c), budget, memo).is_true]


# ---------------------------------------------------------------------------
# Kneading automata
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KneadingResult:
    ok: bool
    failed: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def is_kneading(P: Presentation, Y: Iterable[str] | None = None,
                budget: int = DEFAULT_BUDGET) -> KneadingResult:
    """Check the three kneading conditions; ``failed`` lists the violations."""
    Y = _names(P, Y)
    if not _transition_closed(P, Y):
        raise PreconditionError("kneading check needs a transition-closed generating set")
    memo: TrivialityCache = {}
    nontriv = _nontrivial(P, Y, budget, memo)
    failed = []
    for h in nontriv:
        hits = 0
        for g in Y:
            for s in P[g].transitions:
                if are_equal(P, s, Word.gen(h), budget, memo).is_true:
                    hits += 1
        if hits != 1:
            failed.append(f"(1) {h} occurs as a section {hits} times")
    for h in Y:
        perm, secs = first_level(P, h)
        for cyc in perm.cycles(complete=True):
            active = [x for x in cyc if not is_trivial(P, secs[x], budget, memo).is_true]
            if len(active) > 1:
                failed.append(f"(2) {h} has nontrivial sections at {active} in one cycle")
    perms = [P[h].perm for h in nontriv]
    if perms and not is_tree_like(perms):
        failed.append("(3) root permutations are not tree-like")
    elif not perms:
        failed.append("(3) no nontrivial generators")
    return KneadingResult(not failed, failed)


@dataclass(frozen=True)
class OrbitCountTable:
    """``l[g][i-1]`` = number of <g>-orbits on X^i and ``sections[g][i-1]`` =
    the distinct nontrivial level-i sections of ``g`` (as state names)."""

    degree: int
    l: dict[str, list[int]]
    sections: dict[str, list[list[str]]]

    def total(self, i: int) -> int:
        return sum(v[i - 1] for v in self.l.values())

    def recursion_rhs(self, g: str, i: int) -> int:
        """``|X| (l_i(g) - |Y_{g,i}|) + sum over h in Y_{g,i} of l_1(h)``."""
        ys = self.sections[g][i - 1]
        return self.degree * (self.l[g][i - 1] - len(ys)) + sum(self.l[h][0] for h in ys)


def kneading_orbit_counts(P: Presentation, Y: Iterable[str] | None = None, max_i: int = 3,
                          budget: int = DEFAULT_BUDGET) -> OrbitCountTable:
    Y = _names(P, Y)
    memo: TrivialityCache = {}
    Z = _nontrivial(P, Y, budget, memo)
    d = P.degree
    ls: dict[str, list[int]] = {}
    secs: dict[str, list[list[str]]] = {}
    for g in Z:
        ls[g] = [len(level_perm(P, g, i).cycles(complete=True)) for i in range(1, max_i + 1)]
        per_level = []
        frontier = {Word.gen(g)}
        for _ in range(max_i):
            frontier = {P.step(w, x)[1] for w in frontier for x in range(d)}
            names = []
            for w in frontier:
                if is_trivial(P, w, budget, memo).is_true:
                    continue
                match = _find_equal(P, w, Z, budget, memo)
                if not match:
                    raise PreconditionError(f"section {w} of {g} is not a generator")
                if match[0] not in names:
                    names.append(match[0])
            per_level.append(sorted(names, key=Z.index))
        secs[g] = per_level
    return OrbitCountTable(d, ls, secs)


# ---------------------------------------------------------------------------
# Generalized basilica, balanced, abelian wreath type
# ---------------------------------------------------------------------------


def is_generalized_basilica(P: Presentation, Y: Iterable[str] | None = None,
                            budget: int = DEFAULT_BUDGET) -> bool:
    Y = _names(P, Y)
    memo: TrivialityCache = {}
    return all(classify_sections(P, n, Y, "trivial", budget, memo) is None for n in Y)


def _self_letter(P: Presentation, name: str, budget: int, memo: TrivialityCache) -> int | None:
    g = Word.gen(name)
    for x, s in enumerate(first_level(P, g)[1]):
        if are_equal(P, s, g, budget, memo).is_true:
            return x
    return None


def is_balanced(P: Presentation, Y: Iterable[str] | None = None,
                budget: int = DEFAULT_BUDGET) -> bool:
    """For every directed generator, the return time of its active letter
    equals the order of its root permutation."""
    Y = _names(P, Y)
    if not is_generalized_basilica(P, Y, budget):
        raise PreconditionError("balance is only defined for generalized basilica generating sets")
    memo: TrivialityCache = {}
    for name in Y:
        x = _self_letter(P, name, budget, memo)
        if x is None:
            continue
        perm = P[name].perm
        n, y = 1, perm(x)
        while y != x:
            y = perm(y)
            n += 1
        if not (perm ** n).is_identity():
            return False
    return True


def is_abelian_wreath_type(P: Presentation, Y: Iterable[str] | None = None,
                           budget: int = DEFAULT_BUDGET, cap: int = 10**6) -> bool:
    Y = _names(P, Y)
    if not _transition_closed(P, Y):
        raise PreconditionError("abelian wreath type needs a transition-closed generating set")
    perms = [P[n].perm for n in Y]
    group = perm_group_closure(perms, cap)
    if any(p * q != q * p for p in perms for q in perms):
        return False
    memo: TrivialityCache = {}
    cache = {"group": group}
    return all(classify_sections(P, n, Y, "group", budget, memo, cache) is None for n in Y)


# ---------------------------------------------------------------------------
# Orbits and transporters
# ---------------------------------------------------------------------------


def orbits_on_level(P: Presentation, gens: Iterable[Word | str], n: int) -> list[list[TreeWord]]:
    """Orbit partition of X^n; classes sorted, ordered by least element."""
    d = P.degree
    perms = [level_perm(P, g, n) for g in gens]
    size = d ** n
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x in range(size):
            a, b = find(x), find(p(x))
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, list[TreeWord]] = {}
    for x in range(size):
        classes.setdefault(find(x), []).append(decode(x, d, n))
    return [classes[r] for r in sorted(classes)]


def is_level_transitive(P: Presentation, gens: Iterable[Word | str], N: int) -> list[bool]:
    gens = list(gens)
    return [len(orbits_on_level(P, gens, n)) == 1 for n in range(1, N + 1)]


def find_clean_transporter(P: Presentation, h: Word | str, v: int, w: int,
                           budget: int = DEFAULT_BUDGET) -> int:
    """Exponent ``i`` with ``|i| < d``, ``h^i(v) = w`` and trivial ``(h^i)_v``."""
    h = P.word(h) if isinstance(h, str) else Word(h)
    memo: TrivialityCache = {}
    _, secs = first_level(P, h)
    selves = 0
    for s in secs:
        if is_trivial(P, s, budget, memo).is_true:
            continue
        if not are_equal(P, s, h, budget, memo).is_true:
            raise PreconditionError(f"section {s} of {h} is neither 1 nor {h}")
        selves += 1
    if selves > 1:
        raise PreconditionError(f"{h} has {selves} self-sections")
    d = P.degree
    for k in range(d):
        for i in ((k,) if k == 0 else (k, -k)):
            p = h ** i
            if act(P, p, (v,)) == (w,) and is_trivial(P, section(P, p, (v,)), budget, memo).is_true:
                return i
    raise PreconditionError(f"{v} and {w} are not in the same orbit of <{h}>")


def section_group_generators(P: Presentation, Y: Iterable[str] | None, orbit: Iterable[int],
                             budget: int = DEFAULT_BUDGET) -> list[str]:
    """Directed members of ``Y`` whose active letter lies in ``orbit``."""
    Y = _names(P, Y)
    if not is_generalized_basilica(P, Y, budget):
        raise PreconditionError("section generators are defined for generalized basilica sets")
    orbit = set(orbit)
    memo: TrivialityCache = {}
    return [n for n in Y if _self_letter(P, n, budget, memo) in orbit]


# ---------------------------------------------------------------------------
# Self-replication
# ---------------------------------------------------------------------------

ROUTES = ("directed-generators", "odometer+membership", "stabilizer-sections")


@dataclass(frozen=True)
class Certificate:
    """Evidence for self-replication that :func:`check_certificate` re-verifies.

    * ``directed-generators``: a generalized basilica set, transitive on X,
      whose non-directed members are products of the directed ones
      (``words`` maps each generator to a product over ``directed``).
    * ``odometer+membership``: a reduced-form set containing the odometer
      ``odometer``, with every generator a product over the directed core ``Z``.
    * ``stabilizer-sections``: a transition-closed set, transitive on X,
      where each generator ``y`` is the section at ``letter`` of an element
      ``words[y]`` fixing ``letter``.
    """

    kind: str
    generators: tuple[str, ...]
    directed: tuple[Word, ...] = ()
    words: dict[str, object] = field(default_factory=dict)
    odometer: Word | None = None
    letter: int = 0

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "generators": list(self.generators)}
        if self.kind == "stabilizer-sections":
            out["letter"] = self.letter
            out["words"] = {k: str(v) for k, v in self.words.items()}
        else:
            out["basis"] = [str(z) for z in self.directed]
            out["words"] = {k: str(evaluate_product(self.directed, v)) for k, v in self.words.items()}
        if self.odometer is not None:
            out["odometer"] = str(self.odometer)
        return out


@dataclass(frozen=True)
class SelfReplication:
    decision: Decision
    certificates: list[Certificate]

    @property
    def certificate(self) -> Certificate | None:
        return self.certificates[0] if self.certificates else None

    @property
    def kind(self) -> str:
        return self.certificate.kind if self.certificate else "unknown"


def _transitive_level1(P: Presentation, Y: Sequence[str]) -> bool:
    return len(orbits_on_level(P, [Word.gen(n) for n in Y], 1)) == 1


def _ball(names: Sequence[str], radius: int) -> Iterable[Word]:
    letters = [Word.gen(n, s) for n in names for s in (1, -1)]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for a in letters:
                u = w * a
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    yield u
        frontier = nxt


def _express(P: Presentation, Y: Sequence[str], basis: Sequence[Word], radius: int,
             budget: int) -> dict[str, list] | None:
    words = {}
    for n in Y:
        found = member_search(P, Word.gen(n), basis, radius, budget)
        if found is None:
            return None
        words[n] = found
    return words


def _route_directed(P, Y, radius, budget) -> Certificate | None:
    if not is_generalized_basilica(P, Y, budget) or not _transitive_level1(P, Y):
        return None
    memo: TrivialityCache = {}
    directed = tuple(Word.gen(n) for n in Y if _self_letter(P, n, budget, memo) is not None)
    if not directed:
        return None
    words = _express(P, Y, directed, radius, budget)
    if words is None:
        return None
    return Certificate("directed-generators", tuple(Y), directed, words)


def _route_odometer(P, Y, odometer_radius, radius, budget) -> Certificate | None:
    if not is_reduced_form(P, Y, budget):
        return None
    odo = None
    for w in _ball(Y, odometer_radius):
        try:
            if is_odometer(P, w, budget):
                odo = w
                break
        except BudgetExceeded:
            continue
    if odo is None:
        return None
    Z = tuple(directed_core(P, Y, budget=budget).Z)
    if not Z:
        return None
    words = _express(P, Y, Z, radius, budget)
    if words is None:
        return None
    return Certificate("odometer+membership", tuple(Y), Z, words, odometer=odo)


def _route_stabilizer(P, Y, radius, budget, letter: int = 0) -> Certificate | None:
    if not _transition_closed(P, Y) or not _transitive_level1(P, Y):
        return None
    memo: TrivialityCache = {}
    remaining = {n: Word.gen(n) for n in Y}
    words: dict[str, object] = {}
    for w in _ball(Y, radius):
        if not remaining:
            break
        if act(P, w, (letter,)) != (letter,):
            continue
        s = section(P, w, (letter,))
        for n, y in list(remaining.items()):
            if are_equal(P, s, y, budget, memo).is_true:
                words[n] = w
                del remaining[n]
    if remaining:
        return None
    return Certificate("stabilizer-sections", tuple(Y), words=words, letter=letter)


def self_replicating(P: Presentation, Y: Iterable[str] | None = None,
                     routes: Sequence[str] = ROUTES, odometer_radius: int = 3,
                     radius: int = DEFAULT_RADIUS, stabilizer_radius: int = 4,
                     budget: int = DEFAULT_BUDGET) -> SelfReplication:
    """Try each certificate route in order; True when any succeeds, else unknown.

    A False verdict is never returned: failing to find a certificate
    does not show the group is not self-replicating.
    """
    Y = _names(P, Y)
    certs = []
    for route in routes:
        if route == "directed-generators":
            cert = _route_directed(P, Y, radius, budget)
        elif route == "odometer+membership":
            cert = _route_odometer(P, Y, odometer_radius, radius, budget)
        elif route == "stabilizer-sections":
            cert = _route_stabilizer(P, Y, stabilizer_radius, budget)
        else:
            raise ValueError(f"unknown route {route!r}")
        if cert is not None:
            certs.append(cert)
    return SelfReplication(Decision(True if certs else None, witness=certs[:1] or None), certs)


def check_certificate(P: Presentation, cert: Certificate, budget: int = DEFAULT_BUDGET) -> bool:
    """Independently re-verify every claim a certificate makes."""
    Y = list(cert.generators)
    memo: TrivialityCache = {}

    def products_ok() -> bool:
        for n in Y:
            if n not in cert.words:
                return False
            w = evaluate_product(cert.directed, cert.words[n])  # type: ignore[arg-type]
            if not are_equal(P, w, Word.gen(n), budget, memo).is_true:
                return False
        return True

    if cert.kind == "directed-generators":
        if not is_generalized_basilica(P, Y, budget) or not _transitive_level1(P, Y):
            return False
        if any(len(z) != 1 or z[0][1] != 1 or z[0][0] not in Y
               or _self_letter(P, z[0][0], budget, memo) is None for z in cert.directed):
            return False
        return products_ok()
    if cert.kind == "odometer+membership":
        if cert.odometer is None or not cert.odometer.names() <= set(Y):
            return False
        if not is_reduced_form(P, Y, budget) or not is_odometer(P, cert.odometer, budget):
            return False
        core = directed_core(P, Y, budget=budget).Z
        if any(not any(are_equal(P, z, c, budget, memo).is_true for c in core)
               for z in cert.directed):
            return False
        return products_ok()
    if cert.kind == "stabilizer-sections":
        if not _transition_closed(P, Y) or not _transitive_level1(P, Y):
            return False
        x = cert.letter
        for n in Y:
            w = cert.words.get(n)
            if not isinstance(w, Word) or not w.names() <= set(Y):
                return False
            if act(P, w, (x,)) != (x,):
                return False
            if not are_equal(P, section(P, w, (x,)), Word.gen(n), budget, memo).is_true:
                return False
        return True
    return False


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupClassReport:
    reduced_form: bool
    kneading: bool | None
    kneading_failed: list[str]
    generalized_basilica: bool
    balanced: bool
    abelian_wreath_type: bool | None
    self_replicating: SelfReplication
    level_transitive_up_to: int


def group_report(P: Presentation, Y: Iterable[str] | None = None, max_level: int = 3,
                 budget: int = DEFAULT_BUDGET) -> GroupClassReport:
    Y = _names(P, Y)
    closed = _transition_closed(P, Y)
    if closed:
        kn = is_kneading(P, Y, budget)
        kneading, failed = kn.ok, kn.failed
        try:
            aws: bool | None = is_abelian_wreath_type(P, Y, budget)
        except BudgetExceeded:
            aws = None
    else:
        kneading, failed, aws = None, ["generating set is not transition-closed"], None
    gb = is_generalized_basilica(P, Y, budget)
    gens = [Word.gen(n) for n in Y]
    level = 0
    while level < max_level and P.degree ** (level + 1) <= 1 << 16 and \
            len(orbits_on_level(P, gens, level + 1)) == 1:
        level += 1
    return GroupClassReport(
        reduced_form=is_reduced_form(P, Y, budget).ok,
        kneading=kneading,
        kneading_failed=failed,
        generalized_basilica=gb,
        balanced=gb and is_balanced(P, Y, budget),
        abelian_wreath_type=aws,
        self_replicating=self_replicating(P, Y, budget=budget),
        level_transitive_up_to=level,
    )


__all__ = [
    "CycleGraph", "cycle_graph", "is_tree_like", "KneadingResult", "is_kneading",
    "OrbitCountTable", "kneading_orbit_counts", "is_generalized_basilica", "is_balanced",
    "is_abelian_wreath_type", "orbits_on_level", "is_level_transitive",
    "find_clean_transporter", "section_group_generators", "Certificate", "SelfReplication",
    "self_replicating", "check_certificate", "GroupClassReport", "group_report", "ROUTES",
]
