"""Constructive hardness toolkit.

Three SAT-to-bribery instance generators, a weighted-majority-graph
realizer, and witness builders that turn satisfying assignments into
verifier-checkable bribed profiles.  The SAT side is (3,B2)-SAT: 3-CNF
where every literal occurs in exactly two clauses.

All constructions are deterministic: identical inputs produce identical
instances byte for byte.  Every generator asserts its intended score
pattern on the emitted instance before returning, and every witness is
distance-checked against the original profile.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    KAPPROVAL,
    BORDA,
    AlternativeSet,
    Preference,
    Profile,
    VotingRule,
    approval_vector,
    borda_vector,
    is_unique_winner,
    positional_scores,
    weighted_majority_graph,
)
from .metrics import FOOTRULE, MAXDISP, SWAP, distance
from .problem import BriberyInstance


class GadgetError(ValueError):
    pass


class Sat3B2Error(ValueError):
    pass


# ---------------------------------------------------------------------------
# (3,B2)-SAT instances
# ---------------------------------------------------------------------------


def _lit_name(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


@dataclass(frozen=True)
class Sat3B2Instance:
    """3-CNF with every literal occurring in exactly two clauses.

    Literals use DIMACS convention: variable i is ``i`` positive, ``-i``
    negated.  The occurrence balance forces 3m = 4n.
    """

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = self.num_vars
        if n <= 0:
            raise Sat3B2Error("variable count must be positive")
        counts: dict[int, int] = {}
        for ci, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise Sat3B2Error(
                    f"clause {ci + 1} has arity {len(clause)}, expected 3"
                )
            seen_vars = set()
            for lit in clause:
                if lit == 0 or abs(lit) > n:
                    raise Sat3B2Error(
                        f"clause {ci + 1} references invalid literal {lit}"
                    )
                if abs(lit) in seen_vars:
                    raise Sat3B2Error(
                        f"clause {ci + 1} uses variable x{abs(lit)} twice "
                        "(duplicate or tautological)"
                    )
                seen_vars.add(abs(lit))
                counts[lit] = counts.get(lit, 0) + 1
        for v in range(1, n + 1):
            for lit in (v, -v):
                got = counts.get(lit, 0)
                if got != 2:
                    raise Sat3B2Error(
                        f"literal {_lit_name(lit)} occurs {got} times, "
                        "expected exactly 2"
                    )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def occurrence_index(self, lit: int, clause_index: int) -> int:
        """0 if clause_index is the first clause containing lit, 1 if the
        second."""
        hits = [j for j, cl in enumerate(self.clauses) if lit in cl]
        return hits.index(clause_index)

    def satisfies(self, assignment) -> bool:
        a = tuple(assignment)
        if len(a) != self.num_vars or any(v not in (0, 1) for v in a):
            raise Sat3B2Error("assignment must map every variable to 0/1")
        return all(
            any((lit > 0) == bool(a[abs(lit) - 1]) for lit in cl)
            for cl in self.clauses
        )

    def self_union(self) -> "Sat3B2Instance":
        """Disjoint union with a fresh copy of itself (doubles n and m)."""
        n = self.num_vars
        shift = lambda lit: lit + n if lit > 0 else lit - n  # noqa: E731
        extra = tuple(tuple(shift(lit) for lit in cl) for cl in self.clauses)
        return Sat3B2Instance(2 * n, self.clauses + extra)


def parse_and_validate_3b2(text: str) -> Sat3B2Instance:
    """Parse DIMACS CNF text and validate the occurrence balance."""
    num_vars = None
    num_clauses = None
    clauses: list[tuple[int, int, int]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise Sat3B2Error(f"line {lineno}: malformed problem line")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise Sat3B2Error(f"line {lineno}: malformed problem line")
            continue
        if num_vars is None:
            raise Sat3B2Error(f"line {lineno}: clause before 'p cnf' header")
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError:
            raise Sat3B2Error(f"line {lineno}: non-integer literal")
        for lit in lits:
            if lit == 0:
                if len(pending) != 3:
                    raise Sat3B2Error(
                        f"line {lineno}: clause has arity {len(pending)}, "
                        "expected 3"
                    )
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise Sat3B2Error("unterminated clause at end of input")
    if num_vars is None:
        raise Sat3B2Error("missing 'p cnf' header")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise Sat3B2Error(
            f"header announces {num_clauses} clauses, found {len(clauses)}"
        )
    return Sat3B2Instance(num_vars, tuple(clauses))


def render_3b2(sat: Sat3B2Instance) -> str:
    lines = [f"p cnf {sat.num_vars} {sat.num_clauses}"]
    lines.extend(" ".join(str(lit) for lit in cl) + " 0" for cl in sat.clauses)
    return "\n".join(lines) + "\n"


_BRUTE_FORCE_LIMIT = 20


def satisfying_assignments(sat: Sat3B2Instance) -> list[tuple[int, ...]]:
    """All satisfying assignments, by brute force (small instances only)."""
    if sat.num_vars > _BRUTE_FORCE_LIMIT:
        raise GadgetError(
            f"brute-force search limited to {_BRUTE_FORCE_LIMIT} variables"
        )
    return [
        a for a in product((0, 1), repeat=sat.num_vars) if sat.satisfies(a)
    ]


# ---------------------------------------------------------------------------
# Weighted-majority-graph realizer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WmgTarget:
    """Desired pairwise margins on a core set, padded by filler alternatives.

    ``margins[i][j]`` is the target margin of core alternative i over j;
    the matrix must be antisymmetric with all absolute values of the same
    parity.  ``spacing`` controls how many fillers must separate core
    alternatives in every emitted preference.
    """

    core_names: tuple[str, ...]
    margins: tuple[tuple[int, ...], ...]
    spacing: int
    num_fillers: int | None = None

    def __post_init__(self):
        ell = len(self.core_names)
        if ell == 0 or len(set(self.core_names)) != ell:
            raise GadgetError("core names must be distinct and non-empty")
        if len(self.margins) != ell or any(
            len(row) != ell for row in self.margins
        ):
            raise GadgetError("margin matrix shape must match the core set")
        for i in range(ell):
            if self.margins[i][i] != 0:
                raise GadgetError("diagonal margins must be zero")
            for j in range(ell):
                if self.margins[i][j] != -self.margins[j][i]:
                    raise GadgetError("margin matrix must be antisymmetric")
        parities = {
            abs(self.margins[i][j]) % 2
            for i in range(ell)
            for j in range(ell)
            if i != j
        }
        if len(parities) > 1:
            raise GadgetError(
                "all margins must share parity (all even or all odd)"
            )
        if self.spacing < 2:
            raise GadgetError("spacing must be at least 2")

    @property
    def total_margin_mass(self) -> int:
        return sum(
            abs(self.margins[i][j])
            for i in range(len(self.core_names))
            for j in range(len(self.core_names))
            if i != j
        )

    def lemma_filler_bound(self) -> int:
        """The (loose) sufficient filler count from the source analysis."""
        ell = len(self.core_names)
        return 10 * self.spacing**2 * ell**2 * self.total_margin_mass + 1


def _wmg_core_sequences(
    margins: list[list[int]], ell: int, anchor_first: bool
) -> list[list[int]]:
    """Core-alternative orderings (one list per preference) realizing the
    even-parity margin matrix, plus two cancelling ascending/descending
    pairs that push fillers below the core everywhere."""
    seqs: list[list[int]] = []
    if anchor_first:
        seqs.append(list(range(ell)))
    for a in range(ell):
        for b in range(ell):
            z = margins[a][b]
            if a == b or z <= 0:
                continue
            assert z % 2 == 0
            rest = [x for x in range(ell) if x not in (a, b)]
            for _ in range(z // 2):
                seqs.append([a, b] + rest)
                seqs.append(list(reversed(rest)) + [a, b])
    for _ in range(2):
        seqs.append(list(range(ell)))
        seqs.append(list(range(ell - 1, -1, -1)))
    return seqs


def realize_wmg(target: WmgTarget) -> Profile:
    """Profile whose weighted majority graph restricted to the core equals
    the target margins, with every core alternative beating every filler
    and core alternatives kept ``spacing``/2 apart by fresh filler windows.
    """
    ell = len(target.core_names)
    margins = [list(row) for row in target.margins]
    odd = any(
        margins[i][j] % 2 for i in range(ell) for j in range(ell) if i != j
    )
    if odd:
        # Shift to an even matrix; a single anchor preference (core in
        # index order) restores the odd margins.
        adjusted = [
            [
                margins[i][j] + (1 if i > j else -1) if i != j else 0
                for j in range(ell)
            ]
            for i in range(ell)
        ]
        seqs = _wmg_core_sequences(adjusted, ell, anchor_first=True)
    else:
        seqs = _wmg_core_sequences(margins, ell, anchor_first=False)

    wsize = (target.spacing + 1) // 2
    windows_needed = len(seqs) * ell
    fillers_needed = windows_needed * wsize
    num_fillers = target.num_fillers
    if num_fillers is None:
        num_fillers = fillers_needed
    if num_fillers < fillers_needed:
        raise GadgetError(
            f"num_fillers={num_fillers} too small; this target needs "
            f"{fillers_needed}"
        )
    names = target.core_names + tuple(f"f{i}" for i in range(num_fillers))
    alts = AlternativeSet(names)
    cursor = 0
    prefs = []
    for seq in seqs:
        order: list[int] = []
        used_low = cursor
        for core in seq:
            order.append(core)
            order.extend(ell + cursor + w for w in range(wsize))
            cursor += wsize
        used = set(range(used_low, cursor))
        order.extend(
            ell + f for f in range(num_fillers) if f not in used
        )
        prefs.append(Preference(tuple(order)))
    return Profile(alts, tuple(prefs))


# ---------------------------------------------------------------------------
# Shared layout helpers
# ---------------------------------------------------------------------------


class _FillerPool:
    """Deterministic filler allocator.

    ``fresh`` draws fillers that may never be reused in a once-only window
    again; ``deep`` rotates through the whole pool, skipping fillers
    already placed in the current preference.
    """

    def __init__(self, size: int, what: str):
        self.size = size
        self.what = what
        self.fresh_cursor = 0
        self.deep_cursor = 0

    def fresh(self, count: int) -> list[int]:
        if self.fresh_cursor + count > self.size:
            raise GadgetError(
                f"{self.what}: filler pool exhausted after "
                f"{self.fresh_cursor} once-only placements; increase "
                "filler_size"
            )
        out = list(range(self.fresh_cursor, self.fresh_cursor + count))
        self.fresh_cursor += count
        return out

    def deep(self, count: int, used: set[int]) -> list[int]:
        out: list[int] = []
        scanned = 0
        while len(out) < count:
            if scanned > self.size:
                raise GadgetError(
                    f"{self.what}: not enough fillers for one preference; "
                    "increase filler_size"
                )
            idx = self.deep_cursor % self.size
            self.deep_cursor += 1
            scanned += 1
            if idx not in used:
                used.add(idx)
                out.append(idx)
        return out


def _shift_named_right(order: list[int], is_named, skip=None) -> list[int]:
    """Move every named alternative (except ``skip``) one position later by
    swapping it with its successor, which must not itself be named."""
    out = list(order)
    for pos in range(len(out) - 2, -1, -1):
        a = out[pos]
        if a == skip or not is_named(a):
            continue
        nxt = out[pos + 1]
        if nxt == skip or is_named(nxt):
            raise GadgetError(
                "layout violation: named alternative not followed by a filler"
            )
        out[pos], out[pos + 1] = nxt, a
    return out


def _swap_left(order: list[int], alt: int) -> list[int]:
    out = list(order)
    pos = out.index(alt)
    if pos == 0:
        raise GadgetError("cannot move an alternative left from position 1")
    out[pos - 1], out[pos] = out[pos], out[pos - 1]
    return out


# ---------------------------------------------------------------------------
# Gadget instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetInstance:
    """A bribery instance built from a SAT instance, plus bookkeeping.

    ``sat`` is the instance actually encoded (after any automatic
    self-union doubling); ``source_sat`` is the caller's input.  The name
    map ties construction symbols to alternative indices.
    """

    kind: str
    instance: BriberyInstance
    sat: Sat3B2Instance
    source_sat: Sat3B2Instance
    name_map: tuple[tuple[str, int], ...]
    padding: int

    def render_name_map(self) -> str:
        return "\n".join(f"{sym} -> alt {idx}" for sym, idx in self.name_map)

    def extend_assignment(self, assignment) -> tuple[int, ...]:
        a = tuple(assignment)
        if len(a) == self.sat.num_vars:
            return a
        if (
            len(a) == self.source_sat.num_vars
            and self.sat.num_vars == 2 * len(a)
        ):
            return a + a  # the doubled half mirrors the original
        raise GadgetError(
            f"assignment length {len(a)} matches neither the source "
            f"({self.source_sat.num_vars}) nor the encoded "
            f"({self.sat.num_vars}) variable count"
        )


@dataclass(frozen=True)
class GadgetWitness:
    profile: Profile
    satisfies: bool  # winner guarantee is void when False


KIND_KAPP_SWAP = "kapproval-swap"
KIND_KAPP_MAXDISP = "kapproval-maxdisp-priced"
KIND_BORDA = "borda"


def _chosen_slot(sat: Sat3B2Instance, assignment, clause_index: int) -> int:
    """Index (0..2) of the first true literal of the clause, or -1."""
    for r, lit in enumerate(sat.clauses[clause_index]):
        if (lit > 0) == bool(assignment[abs(lit) - 1]):
            return r
    return -1


# --- k-approval / swap -----------------------------------------------------


def gen_kapproval_swap_gadget(
    sat: Sat3B2Instance, delta_pad: int | None = None
) -> GadgetInstance:
    """Distance-2 swap bribery instance for 2-approval encoding the SAT
    instance.  ``delta_pad`` overrides the block-size padding (floor 4).
    """
    source = sat
    if sat.num_vars % 2 or sat.num_clauses % 2:
        sat = sat.self_union()
    n, m = sat.num_vars, sat.num_clauses
    pad = 100 * m * m * n * n if delta_pad is None else delta_pad
    if pad < 4:
        raise GadgetError("delta_pad must be at least 4")

    names: list[str] = ["c", "u"]
    name_map: list[tuple[str, int]] = [("c", 0), ("u", 1)]

    def add(sym: str, name: str) -> int:
        idx = len(names)
        names.append(name)
        name_map.append((sym, idx))
        return idx

    lit_alt: dict[tuple[int, int], int] = {}
    w_alt, z_alt, y_alt, d_alt, dp_alt = {}, {}, {}, {}, {}
    for i in range(1, n + 1):
        for lit in (i, -i):
            for bit in (0, 1):
                tag = f"x{i}" if lit > 0 else f"nx{i}"
                lit_alt[(lit, bit)] = add(
                    f"a({_lit_name(lit)},{bit})", f"a_{tag}_{bit}"
                )
        w_alt[i] = add(f"w{i}", f"w_{i}")
        z_alt[i] = add(f"z{i}", f"z_{i}")
    for j in range(1, m + 1):
        y_alt[j] = add(f"y{j}", f"y_{j}")
        d_alt[j] = add(f"d{j}", f"d_{j}")
        dp_alt[j] = add(f"d'{j}", f"dp_{j}")
    alts = AlternativeSet(tuple(names))
    total = len(names)

    def build(head: list[int], rot: int) -> Preference:
        head_set = set(head)
        rest = [a for a in range(total) if a not in head_set]
        rot %= len(rest)
        return Preference(tuple(head + rest[rot:] + rest[:rot]))

    prefs: list[Preference] = []
    C, U = 0, 1
    for i in range(1, n + 1):  # variable voters, two per variable
        for lit in (i, -i):
            prefs.append(
                build(
                    [
                        w_alt[i],
                        lit_alt[(lit, 0)],
                        lit_alt[(lit, 1)],
                        z_alt[i],
                    ],
                    len(prefs),
                )
            )
    for j in range(1, m + 1):  # clause voters, three per clause
        for lit in sat.clauses[j - 1]:
            occ = sat.occurrence_index(lit, j - 1)
            prefs.append(
                build(
                    [y_alt[j], d_alt[j], lit_alt[(lit, occ)], dp_alt[j]],
                    len(prefs),
                )
            )
    prefs.append(build([C, d_alt[1], d_alt[2], d_alt[3]], len(prefs)))
    for _ in range(pad + 2):  # u-block
        prefs.append(build([U, d_alt[1], d_alt[2], C], len(prefs)))
    for i in range(1, n // 2 + 1):  # w-pairing block
        for _ in range(pad + 1):
            prefs.append(
                build([U, w_alt[2 * i - 1], w_alt[2 * i], d_alt[1]], len(prefs))
            )
    for i in range(1, n + 1):  # literal-pairing blocks
        for bit in (1, 0):
            for _ in range(pad + 1):
                prefs.append(
                    build(
                        [U, lit_alt[(i, bit)], lit_alt[(-i, bit)], d_alt[1]],
                        len(prefs),
                    )
                )
    for j in range(1, m // 2 + 1):  # y-pairing block
        for _ in range(pad):
            prefs.append(
                build([U, y_alt[2 * j - 1], y_alt[2 * j], d_alt[1]], len(prefs))
            )

    profile = Profile(alts, tuple(prefs))
    nv = len(prefs)
    instance = BriberyInstance(
        profile,
        target=C,
        deltas=(2,) * nv,
        prices=(0,) * nv,
        budget=0,
        rule=VotingRule(KAPPROVAL, k=2),
        metric=SWAP,
    )
    # Before bribery the pairing-block alternative dominates everything.
    scores = positional_scores(profile, approval_vector(total, 2))
    assert scores[U] == max(scores) and scores[C] < scores[U]
    assert not is_unique_winner(profile, instance.rule, C)
    return GadgetInstance(
        KIND_KAPP_SWAP, instance, sat, source, tuple(name_map), pad
    )


def _witness_kapp_swap(gadget: GadgetInstance, assignment) -> Profile:
    sat = gadget.sat
    n, m = sat.num_vars, sat.num_clauses
    pad = gadget.padding
    prefs = list(gadget.instance.profile.prefs)

    def rearrange(i: int, pattern: tuple[int, ...]) -> None:
        o = prefs[i].order
        prefs[i] = Preference(
            tuple(o[p] for p in pattern) + o[len(pattern):]
        )

    to_back = (1, 2, 0, 3)  # first alternative drops to third place
    pull_fourth = (0, 3, 1, 2)  # fourth alternative climbs to second

    for i in range(n):
        changed_side = 1 if assignment[i] else 0  # push w out on this side
        kept_side = 1 - changed_side
        rearrange(2 * i + kept_side, pull_fourth)  # z climbs, literals drop
        rearrange(2 * i + changed_side, to_back)  # literal pair overtakes w
    base_cl = 2 * n
    for j in range(m):
        slot = _chosen_slot(sat, assignment, j)
        if slot >= 0:
            rearrange(base_cl + 3 * j + slot, to_back)  # y drops out of top 2
    i = base_cl + 3 * m + 1  # skip the unchanged c-voter
    for _ in range(pad + 2):  # u-block: c climbs to second place
        rearrange(i, (0, 3, 1, 2))
        i += 1
    while i < len(prefs):  # pairing blocks: u drops to third place
        rearrange(i, to_back)
        i += 1
    return Profile(gadget.instance.profile.alternatives, tuple(prefs))


# --- k-approval / max-displacement, priced ---------------------------------


def gen_kapproval_maxdisp_priced_gadget(
    sat: Sat3B2Instance, k: int = 2, filler_size: int | None = None
) -> GadgetInstance:
    """Priced bribery instance for k-approval under max displacement with
    per-voter radius 2 and budget n+m."""
    if k < 2:
        raise GadgetError("k must be at least 2")
    source = sat
    n, m = sat.num_vars, sat.num_clauses
    fsize = 300 * m**3 * n**3 if filler_size is None else filler_size

    names: list[str] = ["c"]
    name_map: list[tuple[str, int]] = [("c", 0)]

    def add(sym: str, name: str) -> int:
        idx = len(names)
        names.append(name)
        name_map.append((sym, idx))
        return idx

    a_alt, b_alt, w_alt, wp_alt, y_alt = {}, {}, {}, {}, {}
    for i in range(1, n + 1):
        for lit in (i, -i):
            tag = f"x{i}" if lit > 0 else f"nx{i}"
            a_alt[lit] = add(f"a({_lit_name(lit)})", f"a_{tag}")
            b_alt[lit] = add(f"b({_lit_name(lit)})", f"b_{tag}")
        w_alt[i] = add(f"w{i}", f"w_{i}")
        wp_alt[i] = add(f"w'{i}", f"wp_{i}")
    for j in range(1, m + 1):
        y_alt[j] = add(f"y{j}", f"y_{j}")
    num_named = len(names)
    names.extend(f"f{i}" for i in range(fsize))
    alts = AlternativeSet(tuple(names))
    total = len(names)
    pool = _FillerPool(fsize, KIND_KAPP_MAXDISP)
    window_limit = k + 10  # fillers this high up are used once, globally

    def h_alt(j: int, lit: int) -> int:
        # First occurrence maps to the a-alternative, second to b.
        return (a_alt if sat.occurrence_index(lit, j - 1) == 0 else b_alt)[lit]

    def build(head_named: list[int], lead_fillers: int) -> Preference:
        """``lead_fillers`` fresh fillers, then the named head (interleaved
        exactly as given), then the remaining named alternatives each
        preceded by ten fillers."""
        used: set[int] = set()
        order: list[int] = [num_named + f for f in pool.fresh(lead_fillers)]
        used.update(f - num_named for f in order)
        order.extend(head_named)
        head_set = set(head_named)
        rest_named = [a for a in range(num_named) if a not in head_set]
        for a in rest_named:
            need = 10
            while need:
                pos = len(order) + 1
                if pos <= window_limit:
                    f = pool.fresh(1)[0]
                    used.add(f)
                else:
                    f = pool.deep(1, used)[0]
                order.append(num_named + f)
                need -= 1
            order.append(a)
        order.extend(
            num_named + f for f in range(fsize) if f not in used
        )
        return Preference(tuple(order))

    def build_mixed(slots: list[object]) -> Preference:
        """Head given as a mix of named indices and 'F' fresh-filler slots."""
        used: set[int] = set()
        order: list[int] = []
        for s in slots:
            if s == "F":
                f = pool.fresh(1)[0]
                used.add(f)
                order.append(num_named + f)
            else:
                order.append(s)
        head_set = {a for a in order if a < num_named}
        rest_named = [a for a in range(num_named) if a not in head_set]
        for a in rest_named:
            for _ in range(10):
                pos = len(order) + 1
                if pos <= window_limit:
                    f = pool.fresh(1)[0]
                    used.add(f)
                else:
                    f = pool.deep(1, used)[0]
                order.append(num_named + f)
            order.append(a)
        order.extend(num_named + f for f in range(fsize) if f not in used)
        return Preference(tuple(order))

    prefs: list[Preference] = []
    prices: list[int] = []
    for i in range(1, n + 1):  # P1 variable voters
        for lit in (i, -i):
            prefs.append(
                build([w_alt[i], wp_alt[i], a_alt[lit], b_alt[lit]], k - 2)
            )
            prices.append(1)
    for j in range(1, m + 1):  # P1 clause voters
        for lit in sat.clauses[j - 1]:
            prefs.append(
                build_mixed(
                    ["F"] * (k - 2) + ["F", y_alt[j], h_alt(j, lit), "F"]
                )
            )
            prices.append(1)
    p2_price = 10 * m * n
    for _ in range(10):  # P2: target score block
        prefs.append(build_mixed(["F"] * (k - 2) + [0, "F"]))
        prices.append(p2_price)
    for i in range(1, n + 1):  # P2: eight copies per variable alternative
        for x in (
            a_alt[i], a_alt[-i], b_alt[i], b_alt[-i], w_alt[i], wp_alt[i]
        ):
            for _ in range(8):
                prefs.append(build_mixed(["F"] * (k - 2) + [x, "F"]))
                prices.append(p2_price)
    for j in range(1, m + 1):  # P2: seven copies per clause alternative
        for _ in range(7):
            prefs.append(build_mixed(["F"] * (k - 2) + [y_alt[j], "F"]))
            prices.append(p2_price)

    profile = Profile(alts, tuple(prefs))
    nv = len(prefs)
    instance = BriberyInstance(
        profile,
        target=0,
        deltas=(2,) * nv,
        prices=tuple(prices),
        budget=n + m,
        rule=VotingRule(KAPPROVAL, k=k),
        metric=MAXDISP,
    )
    scores = positional_scores(profile, approval_vector(total, k))
    assert scores[0] == 10
    for i in range(1, n + 1):
        for lit in (i, -i):
            assert scores[a_alt[lit]] == 8 and scores[b_alt[lit]] == 8
        assert scores[w_alt[i]] == 10 and scores[wp_alt[i]] == 10
    for j in range(1, m + 1):
        assert scores[y_alt[j]] == 10
    assert max(scores[num_named:]) <= 1
    assert not is_unique_winner(profile, instance.rule, 0)
    return GadgetInstance(
        KIND_KAPP_MAXDISP, instance, sat, source, tuple(name_map), fsize
    )


def _witness_kapp_maxdisp(gadget: GadgetInstance, assignment) -> Profile:
    sat = gadget.sat
    n, m = sat.num_vars, sat.num_clauses
    k = gadget.instance.rule.k
    prefs = list(gadget.instance.profile.prefs)
    for i in range(n):
        # Promote the literal pair on the side set FALSE by the assignment;
        # the w-pair stays approved only on the TRUE side's preference.
        changed_side = 1 if assignment[i] else 0
        idx = 2 * i + changed_side
        o = prefs[idx].order
        base = k - 2
        head = o[base:base + 4]  # w, w', a, b
        new = o[:base] + (head[2], head[3], head[0], head[1]) + o[base + 4:]
        prefs[idx] = Preference(new)
    base_cl = 2 * n
    for j in range(m):
        slot = _chosen_slot(sat, assignment, j)
        if slot >= 0:
            idx = base_cl + 3 * j + slot
            o = prefs[idx].order
            # Swap y (position k) with the satisfied literal's alternative.
            new = list(o)
            new[k - 1], new[k] = new[k], new[k - 1]
            prefs[idx] = Preference(tuple(new))
    return Profile(gadget.instance.profile.alternatives, tuple(prefs))


# --- Borda -----------------------------------------------------------------

_BORDA_EQ_GAP = {"z": 2, "a": 5, "y": 2}


def gen_borda_gadget(
    sat: Sat3B2Instance, metric: str, filler_size: int | None = None
) -> GadgetInstance:
    """Radius-1 (swap/max-displacement) or radius-2 (footrule) bribery
    instance for Borda.  The score-equalizing block counts follow the
    pattern s1(c) - s1(t) + 2*N1 - {2,5}."""
    if metric not in (SWAP, FOOTRULE, MAXDISP):
        raise GadgetError(f"unknown metric {metric!r}")
    source = sat
    n, m = sat.num_vars, sat.num_clauses
    fsize = 10 * m**7 * n**7 if filler_size is None else filler_size
    shifted = metric in (SWAP, FOOTRULE)  # equalizers pre-demote rivals
    delta = 2 if metric == FOOTRULE else 1

    names: list[str] = ["c"]
    name_map: list[tuple[str, int]] = [("c", 0)]

    def add(sym: str, name: str) -> int:
        idx = len(names)
        names.append(name)
        name_map.append((sym, idx))
        return idx

    z_alt, a_alt, y_alt = {}, {}, {}
    for i in range(1, n + 1):
        z_alt[i] = add(f"z{i}", f"z_{i}")
        a_alt[i] = add(f"a({_lit_name(i)})", f"a_x{i}")
        a_alt[-i] = add(f"a({_lit_name(-i)})", f"a_nx{i}")
    for j in range(1, m + 1):
        y_alt[j] = add(f"y{j}", f"y_{j}")
    num_named = len(names)  # M = 3n + m + 1
    # Ten fillers precede every named alternative outside a preference's
    # head, and a few must remain below the last one.
    min_fillers = 10 * (num_named - 2) + 13
    if fsize < min_fillers:
        raise GadgetError(
            f"filler_size must be at least {min_fillers} for this formula"
        )
    names.extend(f"f{i}" for i in range(fsize))
    alts = AlternativeSet(tuple(names))
    total = len(names)
    pool = _FillerPool(fsize, KIND_BORDA)

    def finish(order: list[int], used: set[int]) -> Preference:
        order.extend(num_named + f for f in range(fsize) if f not in used)
        return Preference(tuple(order))

    def build_p1(head: list[object]) -> Preference:
        used: set[int] = set()
        order: list[int] = []
        for s in head:
            if s == "F":
                f = pool.fresh(1)[0]  # high filler slots are once-only in P1
                used.add(f)
                order.append(num_named + f)
            else:
                order.append(s)
        head_set = {a for a in order if a < num_named}
        for a in range(num_named):
            if a in head_set:
                continue
            for f in pool.deep(10, used):
                order.append(num_named + f)
            order.append(a)
        return finish(order, used)

    prefs: list[Preference] = []
    for i in range(1, n + 1):  # P1 variable voters
        for lit in (i, -i):
            prefs.append(build_p1([z_alt[i], a_alt[lit], "F", "F", 0]))
    for j in range(1, m + 1):  # P1 clause voters
        for lit in sat.clauses[j - 1]:
            prefs.append(build_p1([y_alt[j], a_alt[lit], "F", 0]))
    n1 = len(prefs)
    p1_profile = Profile(alts, tuple(prefs))
    s1 = positional_scores(p1_profile, borda_vector(total))

    rivals = list(range(1, num_named))
    gap = {}
    for i in range(1, n + 1):
        gap[z_alt[i]] = _BORDA_EQ_GAP["z"]
        gap[a_alt[i]] = _BORDA_EQ_GAP["a"]
        gap[a_alt[-i]] = _BORDA_EQ_GAP["a"]
    for j in range(1, m + 1):
        gap[y_alt[j]] = _BORDA_EQ_GAP["y"]

    def equalizer_pair(t: int) -> tuple[list[int], list[int]]:
        others = [a for a in rivals if a != t]
        slots_a = pool.deep(len(others) + 2, set())
        first = [num_named + slots_a[0], num_named + slots_a[1], 0]
        for pos, b in enumerate(others):
            first.extend([b, num_named + slots_a[pos + 2]])
        first.append(t)
        slots_b = pool.deep(len(others) + 4, set())
        second = [t, num_named + slots_b[0], num_named + slots_b[1]]
        for pos, b in enumerate(reversed(others)):
            second.extend([b, num_named + slots_b[pos + 2]])
        second.extend(
            [num_named + slots_b[-2], num_named + slots_b[-1], 0]
        )
        return first, second

    is_named = lambda a: 0 < a < num_named  # noqa: E731
    for t in rivals:
        count = s1[0] - s1[t] + 2 * n1 - gap[t]
        if count <= 0:
            raise GadgetError("equalizer count must be positive")
        for _ in range(count):
            first, second = equalizer_pair(t)
            for head in (first, second):
                used = {a - num_named for a in head if a >= num_named}
                full = list(head)
                full.extend(
                    num_named + f for f in range(fsize) if f not in used
                )
                if shifted:
                    full = _shift_named_right(full, is_named, skip=0)
                prefs.append(Preference(tuple(full)))

    profile = Profile(alts, tuple(prefs))
    nv = len(prefs)
    instance = BriberyInstance(
        profile,
        target=0,
        deltas=(delta,) * nv,
        prices=(0,) * nv,
        budget=0,
        rule=VotingRule(BORDA),
        metric=metric,
    )
    scores = positional_scores(profile, borda_vector(total))
    z_scores = {scores[z_alt[i]] for i in range(1, n + 1)}
    y_scores = {scores[y_alt[j]] for j in range(1, m + 1)}
    a_scores = {
        scores[a_alt[lit]] for i in range(1, n + 1) for lit in (i, -i)
    }
    assert len(z_scores) == len(y_scores) == len(a_scores) == 1
    assert z_scores == y_scores
    assert next(iter(z_scores)) - next(iter(a_scores)) == 3
    assert min(z_scores | a_scores) > scores[0] > max(scores[num_named:])
    assert not is_unique_winner(profile, instance.rule, 0)
    return GadgetInstance(
        KIND_BORDA, instance, sat, source, tuple(name_map), fsize
    )


def _witness_borda(gadget: GadgetInstance, assignment) -> Profile:
    sat = gadget.sat
    n, m = sat.num_vars, sat.num_clauses
    n1 = 2 * n + 3 * m
    num_named = 1 + 3 * n + m
    is_named = lambda a: 0 < a < num_named  # noqa: E731
    prefs = list(gadget.instance.profile.prefs)
    if gadget.instance.metric != MAXDISP:
        # One adjacent transposition per voter: the target climbs past the
        # filler directly before it, in every preference.
        new = [Preference(tuple(_swap_left(list(p.order), 0))) for p in prefs]
        return Profile(gadget.instance.profile.alternatives, tuple(new))

    def retop(i: int, pattern: tuple[int, ...]) -> None:
        o = list(prefs[i].order)
        head = [o[p] for p in pattern]
        tail = _shift_named_right(o[len(pattern):], is_named)
        prefs[i] = Preference(tuple(head + tail))

    for i in range(n):
        changed_side = 1 if assignment[i] else 0
        kept = 2 * i + (1 - changed_side)
        # Kept side: z stays on top, its literal alternative slides right.
        retop(kept, (0, 2, 1, 4, 3))  # z d a c d'
        # Changed side: the literal alternative overtakes z.
        retop(2 * i + changed_side, (1, 0, 2, 4, 3))  # a z d c d'
    base_cl = 2 * n
    for j in range(m):
        slot = _chosen_slot(sat, assignment, j)
        for r in range(3):
            idx = base_cl + 3 * j + r
            if r == slot:
                retop(idx, (1, 0, 3, 2))  # a y c d
            else:
                retop(idx, (0, 1, 3, 2))  # y a c d
    for i in range(n1, len(prefs)):
        o = list(prefs[i].order)
        o = _shift_named_right(o, is_named, skip=0)
        o = _swap_left(o, 0)
        prefs[i] = Preference(tuple(o))
    return Profile(gadget.instance.profile.alternatives, tuple(prefs))


# --- shared witness entry point --------------------------------------------


def witness_from_assignment(
    gadget: GadgetInstance, assignment
) -> GadgetWitness:
    """The bribed profile encoding a variable assignment.

    Every changed preference is checked to be within the gadget's distance
    bound.  When the assignment satisfies the formula, the target is
    additionally checked to be the unique winner; otherwise the witness is
    returned with ``satisfies=False`` and no winner guarantee.
    """
    full = gadget.extend_assignment(assignment)
    sat_ok = gadget.sat.satisfies(full)
    builder = {
        KIND_KAPP_SWAP: _witness_kapp_swap,
        KIND_KAPP_MAXDISP: _witness_kapp_maxdisp,
        KIND_BORDA: _witness_borda,
    }[gadget.kind]
    witness = builder(gadget, full)
    inst = gadget.instance
    for i in range(inst.n):
        if witness.prefs[i] != inst.profile.prefs[i]:
            d = distance(inst.metric, inst.profile.prefs[i], witness.prefs[i])
            if d > inst.deltas[i]:
                raise GadgetError(
                    f"witness moved voter {i} by {d} > {inst.deltas[i]}"
                )
    if sat_ok and not is_unique_winner(witness, inst.rule, inst.target):
        raise GadgetError(
            "internal error: satisfying assignment did not make the target "
            "the unique winner"
        )
    return GadgetWitness(witness, sat_ok)
