"""Interval bounds on topological complexity and related invariants.

Every known inequality is compiled into linear constraints of the form

    c0 * q0  <=  sum_j c_j * floor(q_j / d_j)  +  const

between integer-valued quantities (TC of a space, TC of a group, cd, dim, LS
category, the equivariant variants). Propagation runs each constraint both
forward (upper bound on the left side) and backward (lower bounds on the right
side terms) until nothing changes. Every derived bound is written to the trace
together with a snapshot of the intervals it was computed from, so the whole
derivation can be replayed.

All counts follow the reduced convention (TC of a contractible space is 0).

Rules:
    R0   aspherical X:   TC(X) = TC(pi),  cat(X) = cat(K(pi,1))
    R1   cd(pi) <= TC(pi) <= 2 cd(pi)
    R2   abelian pi:        TC(pi) = cd(pi)
    R3   free nonabelian:   TC(pi) = 2 cd(pi)
    R4   cat(K(pi,1)) = cd(pi)
    R5   TC(X) <= 2 cd(pi) + dim X
    R6   TC(X) <= TC(pi) + dim X
    R7   X = B x F:             TC(X) <= TC(B) + TC(F)
    R8   X twisted over B, fiber F, group G:   TC(X) <= TC(B) + TC*_G(F)
    R9   TC_G(F) <= TC*_G(F)
    R10  free, proper action on simply connected F:  TC*_G(F) <= dim F
    R11  TC(X) >= zero-divisor cup length of H*(X; Z/2)   (needs a complex)
    R12  for n <= k <= 2n some group has cd = n and TC = k (catalog fact only)
    R13  cat(X) <= cd(pi) + floor(dim X / 2)
    R14  free action on simply connected F:  TC*_G(F) <= STC_G(F)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .complexes import SimplicialComplex, cohomology_ring_z2, dimension, zero_divisor_cup_length
from .errors import Inconsistency, InputError

INF = math.inf

KINDS = ("TC_space", "cat_space", "TC_group", "cd_group", "dim_space", "TCG", "TCGstar", "STCG")
GROUP_CLASSES = ("abelian", "free_nonabelian", "trivial", "custom")
RULES = tuple(f"R{i}" for i in range(15) if i != 12)

_NAME = re.compile(r"^[A-Za-z0-9_.^\-]+$")


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not _NAME.match(name):
        raise InputError(f"invalid name {name!r}: use letters, digits and _ . ^ -")


# -- descriptors --------------------------------------------------------------


@dataclass(frozen=True)
class GroupDescriptor:
    name: str
    kind: str = "custom"
    cd: int | None = None

    def __post_init__(self) -> None:
        _check_name(self.name)
        if self.kind not in GROUP_CLASSES:
            raise InputError(f"group class must be one of {GROUP_CLASSES}, got {self.kind!r}")
        if self.cd is not None and (not isinstance(self.cd, int) or self.cd < 0):
            raise InputError(f"cd of {self.name} must be a nonnegative integer")
        if self.kind == "trivial":
            if self.cd not in (None, 0):
                raise InputError(f"trivial group {self.name} must have cd 0")
            object.__setattr__(self, "cd", 0)
        if self.kind == "free_nonabelian" and self.cd not in (None, 1):
            raise InputError(f"free nonabelian group {self.name} has cd 1, got {self.cd}")


@dataclass(frozen=True)
class EquivariantFlags:
    """Declared properties of a group action on a space; never inferred."""

    free_action: bool = False
    proper_action: bool = False
    simply_connected_total: bool = False


@dataclass(frozen=True)
class Structure:
    """``product`` (X = base x fiber) or ``twisted`` (bundle over base, fiber, structure group)."""

    kind: str
    base: SpaceDescriptor
    fiber: SpaceDescriptor
    group: GroupDescriptor | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("product", "twisted"):
            raise InputError(f"structure must be 'product' or 'twisted', got {self.kind!r}")
        if self.kind == "twisted" and self.group is None:
            raise InputError("a twisted structure needs a structure group")


@dataclass(frozen=True)
class SpaceDescriptor:
    name: str
    group: GroupDescriptor
    aspherical: bool = False
    dim: int | None = None
    complex: SimplicialComplex | None = None
    structure: Structure | None = None
    equivariant_flags: EquivariantFlags | None = None

    def __post_init__(self) -> None:
        _check_name(self.name)
        if self.dim is not None and (not isinstance(self.dim, int) or self.dim < 0):
            raise InputError(f"dim of {self.name} must be a nonnegative integer")
        if self.complex is not None:
            d = dimension(self.complex)
            if self.dim is None:
                object.__setattr__(self, "dim", d)
            elif self.dim != d:
                raise InputError(f"{self.name}: declared dim {self.dim} but the complex has dimension {d}")


# -- quantities, intervals, constraints ---------------------------------------


@dataclass(frozen=True, order=True)
class Quantity:
    kind: str
    subject: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InputError(f"unknown quantity kind {self.kind!r}")

    @property
    def key(self) -> str:
        return f"{self.kind}({self.subject})"

    @classmethod
    def parse(cls, key: str) -> Quantity:
        m = re.match(r"^(\w+)\((.+)\)$", key)
        if not m:
            raise InputError(f"malformed quantity key {key!r}")
        return cls(m.group(1), m.group(2))

    def __str__(self) -> str:
        return self.key


def space_q(kind: str, space: str) -> Quantity:
    return Quantity(kind, space)


def kpi1(group: str) -> str:
    """Subject name standing for the Eilenberg-MacLane space of ``group``."""
    return f"K({group},1)"


def equivariant_subject(space: str, group: str) -> str:
    return f"{space}|{group}"


@dataclass(frozen=True)
class Interval:
    lo: int = 0
    hi: int | float = INF

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def __and__(self, other: Interval) -> Interval:
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": "inf" if self.hi == INF else self.hi}

    @classmethod
    def from_json(cls, data: dict) -> Interval:
        hi = data.get("hi", "inf")
        return cls(int(data.get("lo", 0)), INF if hi == "inf" else int(hi))

    def __str__(self) -> str:
        return f"[{self.lo}, {'inf' if self.hi == INF else self.hi}]"


def _check_interval(iv: Interval) -> None:
    if not isinstance(iv.lo, int) or iv.lo < 0:
        raise InputError(f"interval lower end must be a nonnegative integer: {iv}")
    if iv.hi != INF and not isinstance(iv.hi, int):
        raise InputError(f"interval upper end must be an integer or inf: {iv}")
    if iv.empty:
        raise InputError(f"interval {iv} is empty")


@dataclass(frozen=True)
class Term:
    quantity: Quantity
    coeff: int = 1
    divisor: int = 1

    def hi(self, iv: Interval):
        return INF if iv.hi == INF else self.coeff * (iv.hi // self.divisor)

    def __str__(self) -> str:
        s = self.quantity.key if self.divisor == 1 else f"floor({self.quantity.key}/{self.divisor})"
        return s if self.coeff == 1 else f"{self.coeff}*{s}"

    @classmethod
    def parse(cls, text: str) -> Term:
        m = re.match(r"^(?:(\d+)\*)?(?:floor\((.+)/(\d+)\)|(.+))$", text)
        if not m:
            raise InputError(f"malformed term {text!r}")
        coeff = int(m.group(1) or 1)
        if m.group(2) is not None:
            return cls(Quantity.parse(m.group(2)), coeff, int(m.group(3)))
        return cls(Quantity.parse(m.group(4)), coeff)


@dataclass(frozen=True)
class Constraint:
    """``small <= sum(big) + const``; ``small`` may be absent (read as 0)."""

    rule: str
    small: Term | None
    big: tuple[Term, ...]
    const: int = 0

    def __str__(self) -> str:
        rhs = " + ".join(str(t) for t in self.big)
        if self.const > 0:
            rhs += f" + {self.const}"
        elif self.const < 0:
            rhs += f" - {-self.const}"
        return f"{self.small if self.small else '0'} <= {rhs}"

    @classmethod
    def parse(cls, rule: str, text: str) -> Constraint:
        try:
            left, right = text.split(" <= ")
        except ValueError:
            raise InputError(f"malformed constraint {text!r}") from None
        small = None if left == "0" else Term.parse(left)
        tokens = re.split(r" ([+-]) ", right)
        big, const = [], 0
        signs = ["+"] + tokens[1::2]
        for sign, tok in zip(signs, tokens[0::2]):
            if tok.isdigit():
                const += int(tok) if sign == "+" else -int(tok)
            elif sign == "+":
                big.append(Term.parse(tok))
            else:
                raise InputError(f"malformed constraint {text!r}")
        return cls(rule, small, tuple(big), const)

    @property
    def quantities(self) -> list[Quantity]:
        qs = [self.small.quantity] if self.small else []
        return qs + [t.quantity for t in self.big]

    def shape(self) -> tuple:
        return (
            (self.small.quantity.kind, self.small.coeff) if self.small else None,
            tuple((t.quantity.kind, t.coeff, t.divisor) for t in self.big),
            (self.const > 0) - (self.const < 0),
        )

    def derive(self, facts: dict[Quantity, Interval]) -> list[tuple[Quantity, str, int, tuple[Quantity, ...]]]:
        """Bounds implied by the current facts: (target, 'lo'|'hi', value, inputs).

        Only informative bounds are returned (finite upper ends, positive lower ends).
        """
        get = lambda q: facts.get(q, Interval())  # noqa: E731
        out = []
        if self.small is not None:
            total = sum(t.hi(get(t.quantity)) for t in self.big) + self.const
            if total != INF:
                out.append((self.small.quantity, "hi", total // self.small.coeff,
                            tuple(t.quantity for t in self.big)))
        small_lo = self.small.coeff * get(self.small.quantity).lo if self.small else 0
        for j, t in enumerate(self.big):
            others = [u for i, u in enumerate(self.big) if i != j]
            rest = sum(u.hi(get(u.quantity)) for u in others)
            if rest == INF:
                continue
            need = small_lo - self.const - rest
            value = t.divisor * -(-need // t.coeff)
            if value > 0:
                inputs = ([self.small.quantity] if self.small else []) + [u.quantity for u in others]
                out.append((t.quantity, "lo", value, tuple(inputs)))
        return out


# -- trace and fact base ------------------------------------------------------


@dataclass(frozen=True)
class TraceEntry:
    """One derivation: ``target`` is bounded by [lo, hi] because of ``rule``.

    ``via`` is the constraint text for rule entries and a provenance note for
    ``assert`` entries. ``inputs`` are the intervals the rule read.
    """

    rule: str
    target: Quantity
    lo: int
    hi: int | float
    via: str
    inputs: tuple[tuple[Quantity, Interval], ...] = ()
    tightened: bool = True

    @property
    def result(self) -> Interval:
        return Interval(self.lo, self.hi)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "inputs": [{"quantity": q.key, **iv.to_json()} for q, iv in self.inputs],
            "result": {
                "quantity": self.target.key,
                **self.result.to_json(),
                "via": self.via,
                "tightened": self.tightened,
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> TraceEntry:
        res = data["result"]
        iv = Interval.from_json(res)
        return cls(
            data["rule"],
            Quantity.parse(res["quantity"]),
            iv.lo,
            iv.hi,
            res["via"],
            tuple((Quantity.parse(i["quantity"]), Interval.from_json(i)) for i in data.get("inputs", ())),
            bool(res.get("tightened", True)),
        )


@dataclass
class FactBase:
    """Interval facts plus the derivation trace that produced them.

    ``bounds_for`` returns one of these as its report. ``constraints`` are the
    rule instances available to ``propagate``.
    """

    facts: dict[Quantity, Interval] = field(default_factory=dict)
    trace: list[TraceEntry] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)
    constraints: tuple[Constraint, ...] = field(default=(), compare=False)

    def copy(self) -> FactBase:
        return FactBase(dict(self.facts), list(self.trace), list(self.assumptions), self.constraints)

    def interval(self, q: Quantity | str) -> Interval:
        if isinstance(q, str):
            q = Quantity.parse(q)
        return self.facts.get(q, Interval())

    def entries_for(self, q: Quantity) -> list[TraceEntry]:
        return [e for e in self.trace if e.target == q]

    def to_json(self) -> dict:
        return {
            "facts": {q.key: self.facts[q].to_json() for q in sorted(self.facts, key=lambda q: q.key)},
            "trace": [e.to_json() for e in self.trace],
            "assumptions": list(self.assumptions),
        }

    @classmethod
    def from_json(cls, data: dict) -> FactBase:
        trace = [TraceEntry.from_json(e) for e in data.get("trace", ())]
        constraints = []
        for e in trace:
            if e.rule != "assert":
                c = Constraint.parse(e.rule, e.via)
                if c not in constraints:
                    constraints.append(c)
        return cls(
            {Quantity.parse(k): Interval.from_json(v) for k, v in data.get("facts", {}).items()},
            trace,
            list(data.get("assumptions", ())),
            tuple(constraints),
        )


Report = FactBase


def _source(base: FactBase, q: Quantity, side: str) -> str:
    """Describe the latest trace entry responsible for the current ``side`` of ``q``."""
    current = getattr(base.interval(q), side)
    for e in reversed(base.trace):
        if e.target == q and getattr(e, side) == current:
            return f"{e.rule}: {e.via}"
    return "default"


def _tighten(base: FactBase, entry: TraceEntry) -> bool:
    """Intersect ``entry`` into ``base`` in place; raise on an empty result."""
    q = entry.target
    old = base.interval(q)
    new = old & entry.result
    changed = new != old
    if new.empty:
        lo_src = f"{entry.rule}: {entry.via}" if entry.lo > old.lo else _source(base, q, "lo")
        hi_src = f"{entry.rule}: {entry.via}" if entry.hi < old.hi else _source(base, q, "hi")
        raise Inconsistency(
            f"{q.key}: lower bound {new.lo} ({lo_src}) exceeds upper bound {new.hi} ({hi_src})",
            (lo_src, hi_src),
        )
    base.facts[q] = new
    base.trace.append(replace(entry, tightened=changed))
    return changed


def assert_fact(base: FactBase, quantity: Quantity, interval: Interval, note: str) -> FactBase:
    """Intersect ``interval`` into the fact for ``quantity``; returns a new base."""
    _check_interval(interval)
    out = base.copy()
    _tighten(out, TraceEntry("assert", quantity, interval.lo, interval.hi, note))
    return out


def propagate(base: FactBase, rule_order: Sequence[str] | None = None, max_passes: int = 10_000) -> FactBase:
    """Apply every constraint until no interval changes; returns a new base.

    ``rule_order`` fixes the order in which rules are tried within a pass
    (default R0, R1, ..., R14). The fixpoint does not depend on it.
    """
    order = list(rule_order) if rule_order is not None else list(RULES)
    rank = {r: i for i, r in enumerate(order)}
    constraints = sorted(base.constraints, key=lambda c: rank.get(c.rule, len(rank)))
    out = base.copy()
    for q in (q for c in constraints for q in c.quantities):
        out.facts.setdefault(q, Interval())
    seen = {(e.rule, e.via, e.target, e.lo, e.hi) for e in out.trace}
    for _ in range(max_passes):
        changed = False
        for c in constraints:
            before = dict(out.facts)
            for target, side, value, inputs in c.derive(before):
                lo, hi = (value, INF) if side == "lo" else (0, value)
                key = (c.rule, str(c), target, lo, hi)
                if key in seen:
                    continue
                seen.add(key)
                snap = tuple((q, before.get(q, Interval())) for q in inputs)
                changed |= _tighten(out, TraceEntry(c.rule, target, lo, hi, str(c), snap))
        if not changed:
            return out
    raise RuntimeError(f"propagation did not settle within {max_passes} passes")


def _replay(c: Constraint, entry: TraceEntry) -> bool:
    facts = dict(entry.inputs)
    side = "lo" if entry.hi == INF else "hi"
    for target, s, value, inputs in c.derive(facts):
        if target == entry.target and s == side and set(inputs) == set(facts):
            return value == (entry.lo if side == "lo" else entry.hi)
    return False


def check_consistency(base: FactBase) -> None:
    """Validate intervals and replay the trace.

    Raises:
        Inconsistency: on an empty interval, a trace entry its rule does not
            reproduce (or whose rule id does not match its constraint), a fact
            that is not the intersection of its trace results, or a non-default
            endpoint with no trace entry behind it.
    """
    by_key = {(c.rule, str(c)): c for c in base.constraints}
    for i, e in enumerate(base.trace):
        if e.rule == "assert":
            continue
        c = by_key.get((e.rule, e.via))
        if c is None or c.shape() not in RULE_SHAPES.get(e.rule, ()):
            raise Inconsistency(f"trace entry {i}: no rule {e.rule} with constraint {e.via!r}", (e,))
        if not _replay(c, e):
            raise Inconsistency(f"trace entry {i}: rule {e.rule} does not reproduce {e.target.key} {e.result}", (e,))
    for q, iv in base.facts.items():
        if iv.empty:
            raise Inconsistency(f"{q.key} has empty interval {iv}")
        acc = Interval()
        for e in base.entries_for(q):
            acc = acc & e.result
        if acc != iv:
            raise Inconsistency(f"{q.key}: stored {iv} but the trace implies {acc}")


def _shapes(*constraints: Constraint) -> set:
    return {c.shape() for c in constraints}


def _sq(kind: str) -> Quantity:
    return Quantity(kind, "_")


# admissible constraint shapes per rule; used to catch mislabelled trace entries
RULE_SHAPES: dict[str, set] = {
    "R0": _shapes(
        Constraint("R0", Term(_sq("TC_space")), (Term(_sq("TC_group")),)),
        Constraint("R0", Term(_sq("TC_group")), (Term(_sq("TC_space")),)),
        Constraint("R0", Term(_sq("cat_space")), (Term(_sq("cat_space")),)),
    ),
    "R1": _shapes(
        Constraint("R1", Term(_sq("cd_group")), (Term(_sq("TC_group")),)),
        Constraint("R1", Term(_sq("TC_group")), (Term(_sq("cd_group"), 2),)),
    ),
    "R2": _shapes(
        Constraint("R2", Term(_sq("TC_group")), (Term(_sq("cd_group")),)),
        Constraint("R2", Term(_sq("cd_group")), (Term(_sq("TC_group")),)),
    ),
    "R3": _shapes(
        Constraint("R3", Term(_sq("TC_group")), (Term(_sq("cd_group"), 2),)),
        Constraint("R3", Term(_sq("cd_group"), 2), (Term(_sq("TC_group")),)),
    ),
    "R4": _shapes(
        Constraint("R4", Term(_sq("cat_space")), (Term(_sq("cd_group")),)),
        Constraint("R4", Term(_sq("cd_group")), (Term(_sq("cat_space")),)),
    ),
    "R5": _shapes(Constraint("R5", Term(_sq("TC_space")), (Term(_sq("cd_group"), 2), Term(_sq("dim_space"))))),
    "R6": _shapes(Constraint("R6", Term(_sq("TC_space")), (Term(_sq("TC_group")), Term(_sq("dim_space"))))),
    "R7": _shapes(Constraint("R7", Term(_sq("TC_space")), (Term(_sq("TC_space")), Term(_sq("TC_space"))))),
    "R8": _shapes(Constraint("R8", Term(_sq("TC_space")), (Term(_sq("TC_space")), Term(_sq("TCGstar"))))),
    "R9": _shapes(Constraint("R9", Term(_sq("TCG")), (Term(_sq("TCGstar")),))),
    "R10": _shapes(Constraint("R10", Term(_sq("TCGstar")), (Term(_sq("dim_space")),))),
    "R11": _shapes(Constraint("R11", None, (Term(_sq("TC_space")),), -1)),
    "R13": _shapes(
        Constraint("R13", Term(_sq("cat_space")), (Term(_sq("cd_group")), Term(_sq("dim_space"), 1, 2)))
    ),
    "R14": _shapes(Constraint("R14", Term(_sq("TCGstar")), (Term(_sq("STCG")),))),
}


def realizable_tc_values(cd: int) -> range:
    """TC values realized by some group of cohomological dimension ``cd`` (catalog fact, R12).

    Every k with cd <= k <= 2 cd occurs, so the R1 interval is sharp over all groups.
    """
    if not isinstance(cd, int) or cd < 0:
        raise InputError("cd must be a nonnegative integer")
    return range(cd, 2 * cd + 1)


# -- compiling descriptors into facts and constraints -------------------------


def _collect(desc: SpaceDescriptor, spaces: dict, groups: dict) -> None:
    def add(table, obj, what):
        prev = table.setdefault(obj.name, obj)
        if prev != obj:
            raise InputError(f"two different {what} descriptors are both named {obj.name!r}")

    add(spaces, desc, "space")
    add(groups, desc.group, "group")
    if desc.structure is not None:
        _collect(desc.structure.base, spaces, groups)
        _collect(desc.structure.fiber, spaces, groups)
        if desc.structure.group is not None:
            add(groups, desc.structure.group, "group")


def _eq(rule: str, a: Term, b: Term) -> list[Constraint]:
    return [Constraint(rule, a, (b,)), Constraint(rule, b, (a,))]


def compile_descriptor(desc: SpaceDescriptor) -> tuple[list[tuple[Quantity, Interval, str]], list[Constraint], list[str]]:
    """Declared facts, rule instances and echoed assumptions for a descriptor tree."""
    spaces: dict[str, SpaceDescriptor] = {}
    groups: dict[str, GroupDescriptor] = {}
    _collect(desc, spaces, groups)

    facts: list[tuple[Quantity, Interval, str]] = []
    cons: list[Constraint] = []
    notes: list[str] = []

    for g in groups.values():
        if g.cd is None:
            notes.append(f"cd({g.name}) unknown: rules R1-R5 and R13 for it are skipped")
            continue
        cd = Quantity("cd_group", g.name)
        tcg = Term(Quantity("TC_group", g.name))
        facts.append((cd, Interval(g.cd, g.cd), f"declared cd of {g.name} ({g.kind})"))
        cons += [Constraint("R1", Term(cd), (tcg,)), Constraint("R1", tcg, (Term(cd, 2),))]
        if g.kind == "abelian":
            cons += _eq("R2", tcg, Term(cd))
        if g.kind == "free_nonabelian":
            cons += [Constraint("R3", tcg, (Term(cd, 2),)), Constraint("R3", Term(cd, 2), (tcg,))]
        cons += _eq("R4", Term(Quantity("cat_space", kpi1(g.name))), Term(cd))

    for s in spaces.values():
        tc = Term(space_q("TC_space", s.name))
        cat = Term(space_q("cat_space", s.name))
        dim = Quantity("dim_space", s.name)
        pi = s.group.name
        if s.dim is not None:
            src = "dimension of the given complex" if s.complex is not None else "declared dim"
            facts.append((dim, Interval(s.dim, s.dim), f"{src} of {s.name}"))
        if s.aspherical:
            notes.append(f"{s.name} is aspherical with fundamental group {pi}")
            cons += [Constraint("R0", tc, (Term(Quantity("TC_group", pi)),)),
                     Constraint("R0", Term(Quantity("TC_group", pi)), (tc,))]
            cons += _eq("R0", cat, Term(Quantity("cat_space", kpi1(pi))))
        if s.dim is not None:
            if s.group.cd is not None:
                cons.append(Constraint("R5", tc, (Term(Quantity("cd_group", pi), 2), Term(dim))))
                cons.append(Constraint("R13", cat, (Term(Quantity("cd_group", pi)), Term(dim, 1, 2))))
            cons.append(Constraint("R6", tc, (Term(Quantity("TC_group", pi)), Term(dim))))
        st = s.structure
        if st is not None and st.kind == "product":
            notes.append(f"{s.name} = {st.base.name} x {st.fiber.name}")
            cons.append(Constraint("R7", tc, (Term(space_q("TC_space", st.base.name)),
                                              Term(space_q("TC_space", st.fiber.name)))))
        if st is not None and st.kind == "twisted":
            g = st.group.name
            subj = equivariant_subject(st.fiber.name, g)
            notes.append(f"{s.name} is a twisted product over {st.base.name} with fiber "
                         f"{st.fiber.name} and structure group {g}")
            star = Term(Quantity("TCGstar", subj))
            cons.append(Constraint("R8", tc, (Term(space_q("TC_space", st.base.name)), star)))
            cons.append(Constraint("R9", Term(Quantity("TCG", subj)), (star,)))
            flags = st.fiber.equivariant_flags or EquivariantFlags()
            declared = [n for n, v in (("free", flags.free_action), ("proper", flags.proper_action),
                                       ("simply connected", flags.simply_connected_total)) if v]
            notes.append(f"action of {g} on {st.fiber.name}: "
                         f"{', '.join(declared) if declared else 'no flags declared'}")
            if flags.free_action and flags.proper_action and flags.simply_connected_total and st.fiber.dim is not None:
                cons.append(Constraint("R10", star, (Term(space_q("dim_space", st.fiber.name)),)))
            if flags.free_action and flags.simply_connected_total:
                cons.append(Constraint("R14", star, (Term(Quantity("STCG", subj)),)))
        if s.complex is not None:
            zcl = zero_divisor_cup_length(cohomology_ring_z2(s.complex))
            notes.append(f"{s.name}: zero-divisor cup length over Z/2 of the given complex is {zcl}")
            if zcl > 0:
                cons.append(Constraint("R11", None, (tc,), -zcl))

    unique: list[Constraint] = []
    for c in cons:
        if c not in unique:
            unique.append(c)
    return facts, unique, notes


def bounds_for(desc: SpaceDescriptor, rule_order: Sequence[str] | None = None) -> FactBase:
    """Assert the descriptor's declared facts, then propagate all applicable rules."""
    facts, cons, notes = compile_descriptor(desc)
    base = FactBase(assumptions=notes, constraints=tuple(cons))
    for q, iv, note in facts:
        base = assert_fact(base, q, iv, note)
    return propagate(base, rule_order)


def upper_bounds_from(base: FactBase, q: Quantity, rules: Iterable[str] | None = None) -> list[TraceEntry]:
    """Trace entries giving finite upper bounds on ``q``, optionally filtered by rule."""
    wanted = set(rules) if rules is not None else None
    return [e for e in base.entries_for(q)
            if e.hi != INF and (wanted is None or e.rule in wanted)]
