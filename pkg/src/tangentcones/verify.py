"""Reproduction of the reference cone corpus and checks of the structural conjectures.

Everything here is phrased over a :class:`ConeStore`, which computes (or
loads from cache) the tangent cone of every permutation of a given rank.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .cache import ConeCache
from .groebner import (
    Ideal,
    _keyfunc,
    _reduce,
    _to_int_terms,
    _Element,
    buchberger,
    ideal_dimension,
    ideal_member,
    is_groebner,
    radical_member,
    radical_witness,
    variety_equal,
)
from .poly import GREVLEX, Polynomial, elimination_order, normal_form, parse_poly, print_poly
from .schubert import (
    TangentCone,
    ad_invariance_failures,
    cell_ideal,
    cone_from_generators,
    coxeter_cone,
    embed_permutation,
    graph_ideal,
    subsystem_embed,
    tangent_cone,
    x_table,
)
from .weyl import (
    Permutation,
    coxeter_elements,
    cycle_type,
    enumerate_group,
    inverse,
    is_conjugate,
    parse_cycles,
    print_cycles,
)

CORPUS_FORMAT = "tangentcones-corpus/1"


# --------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class ConeRecord:
    rank: int
    w: str
    generators: tuple[str, ...]
    provenance: str = "reference-corpus"
    table: int | None = None
    row: int | None = None
    equations: str | None = None
    note: str | None = None

    def permutation(self) -> Permutation:
        return parse_cycles(self.w, self.rank)

    def ideal(self) -> Ideal:
        table = x_table(self.rank)
        return Ideal([parse_poly(g, table) for g in self.generators], table)

    def where(self) -> str:
        if self.table is None:
            return self.w
        return f"{self.w} (table {self.table}, row {self.row})"


@dataclass(frozen=True)
class CorpusError:
    index: int
    message: str


def _default_data(name: str) -> str:
    return resources.files("tangentcones").joinpath("data", name).read_text()


def parse_corpus(data) -> tuple[list[ConeRecord], list[CorpusError]]:
    """Accepts ``{"records": [...]}`` or a bare list; ``gens`` or ``generators``."""
    raw = data.get("records", []) if isinstance(data, dict) else data
    records, errors = [], []
    for i, r in enumerate(raw):
        try:
            gens = r["gens"] if "gens" in r else r["generators"]
            rec = ConeRecord(
                rank=int(r["rank"]),
                w=str(r["w"]),
                generators=tuple(str(g) for g in gens),
                provenance=r.get("provenance", "reference-corpus"),
                table=r.get("table"),
                row=r.get("row"),
                equations=r.get("equations"),
                note=r.get("note"),
            )
            rec.permutation()
            rec.ideal()
        except (KeyError, TypeError, ValueError) as exc:
            errors.append(CorpusError(i, f"{type(exc).__name__}: {exc}"))
            continue
        records.append(rec)
    return records, errors


def load_corpus(path: str | Path | None = None) -> tuple[list[ConeRecord], list[CorpusError]]:
    text = Path(path).read_text() if path is not None else _default_data("corpus.json")
    return parse_corpus(json.loads(text))


def load_allowlist(path: str | Path | None = None) -> dict[tuple[int, str], str]:
    """Map (rank, canonical cycle string) to the recorded reason."""
    text = Path(path).read_text() if path is not None else _default_data("allowlist.json")
    out = {}
    for e in json.loads(text).get("entries", []):
        w = print_cycles(parse_cycles(e["w"], e["rank"]))
        out[(e["rank"], w)] = e["reason"]
    return out


# --------------------------------------------------------------------------
# batch computation


def cone_entry(cone: TangentCone) -> dict:
    return {
        "generators": [print_poly(g) for g in cone.generators],
        "dimension": cone.dimension,
        "length": cone.length,
    }


def _compute_entry(rank: int, one_line: tuple[int, ...]) -> dict:
    return cone_entry(tangent_cone(Permutation(one_line), rank))


def _compute_chunk(rank: int, chunk: list[tuple[int, ...]]) -> list[dict]:
    return [_compute_entry(rank, ol) for ol in chunk]


class ConeStore:
    """Tangent cones per rank, computed once, optionally in parallel and cached."""

    def __init__(self, jobs: int = 1, cache: ConeCache | None = None):
        if jobs < 1:
            raise ValueError("jobs must be at least 1")
        self.jobs = jobs
        self.cache = cache
        self._cones: dict[int, dict[Permutation, TangentCone]] = {}

    def cones(self, rank: int) -> dict[Permutation, TangentCone]:
        if rank not in self._cones:
            self._cones[rank] = self._build(rank)
        return self._cones[rank]

    def cone(self, w: Permutation) -> TangentCone:
        if w.rank in self._cones:
            return self._cones[w.rank][w]
        entry = self.cache.get(w.rank, w.one_line) if self.cache else None
        if entry is None:
            entry = _compute_entry(w.rank, w.one_line)
            if self.cache:
                self.cache.put(w.rank, w.one_line, entry)
        return _cone_of_entry(entry, w)

    def _build(self, rank: int) -> dict[Permutation, TangentCone]:
        perms = list(enumerate_group(rank))
        entries: dict[tuple[int, ...], dict] = {}
        todo = []
        for w in perms:
            hit = self.cache.get(rank, w.one_line) if self.cache else None
            if hit is not None:
                entries[w.one_line] = hit
            else:
                todo.append(w.one_line)
        if todo:
            if self.jobs > 1 and len(todo) > 1:
                chunks = [todo[i :: self.jobs * 4] for i in range(self.jobs * 4)]
                chunks = [c for c in chunks if c]
                with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                    results = pool.map(_compute_chunk, itertools.repeat(rank), chunks)
                    for chunk, res in zip(chunks, results):
                        entries.update(zip(chunk, res))
            else:
                for ol in todo:
                    entries[ol] = _compute_entry(rank, ol)
            if self.cache:
                for ol in todo:
                    self.cache.put(rank, ol, entries[ol])
        return {w: _cone_of_entry(entries[w.one_line], w) for w in perms}


def _cone_of_entry(entry: dict, w: Permutation) -> TangentCone:
    table = x_table(w.rank)
    return cone_from_generators([parse_poly(g, table) for g in entry["generators"]], w, w.rank)


# --------------------------------------------------------------------------
# reports


@dataclass
class CheckReport:
    name: str
    rank: int
    total: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} (rank {self.rank}): {self.total - len(self.failures)}/{self.total}"

    def lines(self) -> list[str]:
        return [self.summary()] + [f"  failure: {f}" for f in self.failures] + [f"  note: {n}" for n in self.notes]

    def to_dict(self) -> dict:
        return dict(asdict(self), passed=self.passed)


def check_dimensions(rank: int, store: ConeStore) -> CheckReport:
    rep = CheckReport("dimension = length", rank)
    for w, cone in store.cones(rank).items():
        rep.total += 1
        if not cone.dimension_ok:
            rep.failures.append(f"{print_cycles(w)}: dim {cone.dimension} != l(w) {cone.length}")
    return rep


def check_conjecture2(rank: int, store: ConeStore) -> CheckReport:
    """C_w and C_{w^-1} have the same variety; scheme-level agreement is noted."""
    rep = CheckReport("C_w = C_{w^-1}", rank)
    cones = store.cones(rank)
    scheme_diff = []
    for w, cone in cones.items():
        rep.total += 1
        other = cones[inverse(w)]
        if not variety_equal(cone.ideal, other.ideal):
            rep.failures.append(f"{print_cycles(w)} vs {print_cycles(inverse(w))}")
        elif cone.ideal.generators != other.ideal.generators:
            scheme_diff.append(print_cycles(w))
    rep.notes.append(f"scheme-level (reduced basis) equality in {rep.total - len(scheme_diff)}/{rep.total}")
    return rep


def _vanishing_coordinates(ideal: Ideal) -> frozenset[str]:
    table = ideal.table
    return frozenset(nm for nm in table.names if radical_member(table.var(nm), ideal))


def cone_classes(cones: dict[Permutation, TangentCone]) -> list[list[Permutation]]:
    """Partition permutations by equality of cone varieties, in enumeration order.

    Candidates are bucketed by dimension and the set of coordinate functions
    vanishing on the cone before any pairwise radical comparison.
    """
    buckets: dict = {}
    classes: list[list[Permutation]] = []
    for w, cone in cones.items():
        sig = (cone.dimension, _vanishing_coordinates(cone.ideal))
        for cls in buckets.setdefault(sig, []):
            if cls[0] is w or variety_equal(cones[cls[0]].ideal, cone.ideal):
                cls.append(w)
                break
        else:
            cls = [w]
            buckets[sig].append(cls)
            classes.append(cls)
    return classes


def check_conjecture1(rank: int, store: ConeStore, classes: list[list[Permutation]] | None = None) -> CheckReport:
    """Equal cones force conjugacy; a conjugate pair with distinct cones is exhibited."""
    rep = CheckReport("equal cones => conjugate", rank)
    cones = store.cones(rank)
    classes = classes if classes is not None else cone_classes(cones)
    for cls in classes:
        rep.total += 1
        types = {cycle_type(w) for w in cls}
        if len(types) > 1:
            rep.failures.append("mixed cycle types in class " + ", ".join(print_cycles(w) for w in cls))
        # the partition must really be an equivalence: all members pairwise equal
        for u, v in itertools.combinations(cls, 2):
            if not variety_equal(cones[u].ideal, cones[v].ideal):
                rep.failures.append(f"class not transitive: {print_cycles(u)} vs {print_cycles(v)}")
    reps = [cls[0] for cls in classes]
    for u, v in itertools.combinations(reps, 2):
        if cones[u].dimension == cones[v].dimension and variety_equal(cones[u].ideal, cones[v].ideal):
            rep.failures.append(f"classes of {print_cycles(u)} and {print_cycles(v)} coincide")
    witness = converse_witness(cones, classes)
    if witness is None:
        if rank >= 2:
            rep.failures.append("no conjugate pair with distinct cones found")
    else:
        rep.notes.append(f"converse fails: {print_cycles(witness[0])} ~ {print_cycles(witness[1])} but cones differ")
    rep.notes.append(f"{len(classes)} cone classes over {len(cones)} elements")
    return rep


def converse_witness(cones, classes) -> tuple[Permutation, Permutation] | None:
    class_of = {w: i for i, cls in enumerate(classes) for w in cls}
    perms = list(cones)
    for u, v in itertools.combinations(perms, 2):
        if class_of[u] != class_of[v] and is_conjugate(u, v):
            return u, v
    return None


def check_coxeter(rank: int, store: ConeStore) -> CheckReport:
    rep = CheckReport("Coxeter cones = [n,n]^perp", rank)
    target = coxeter_cone(rank)
    for c in coxeter_elements(rank):
        rep.total += 1
        if not variety_equal(store.cone(c).ideal, target):
            rep.failures.append(print_cycles(c))
    return rep


def check_ad_invariance(rank: int, store: ConeStore) -> CheckReport:
    rep = CheckReport("Ad*-invariance", rank)
    for w, cone in store.cones(rank).items():
        rep.total += 1
        for name, g, d in ad_invariance_failures(cone):
            rep.failures.append(f"{print_cycles(w)}: D_{name}({g}) = {d} not in radical")
    return rep


def check_conjecture3_evidence(k: int, n: int, store: ConeStore) -> CheckReport:
    """Embedded rank-k cones lie inside the rank-n cones (containment only)."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    rep = CheckReport(f"C_(w,0) in C_w, A_{k} in A_{n}", n)
    small = store.cones(k)
    for a in range(1, n - k + 2):
        for w, cone0 in small.items():
            rep.total += 1
            big = store.cone(embed_permutation(w, a, n))
            embedded = subsystem_embed(cone0.ideal, k, a, n)
            wit = radical_witness(big.ideal, embedded)
            label = f"{print_cycles(w)} at window {a}"
            if wit is not None:
                rep.failures.append(f"{label}: {wit} does not vanish on the embedded cone")
            elif ideal_dimension(embedded) != big.dimension:
                rep.notes.append(f"{label}: dim {ideal_dimension(embedded)} vs {big.dimension}")
    return rep


def check_lowest_form_oracle(rank: int, store: ConeStore, samples: int = 100, seed: int = 0) -> CheckReport:
    """Lowest forms of random members of each cell ideal lie in the computed cone."""
    rep = CheckReport("lowest forms in cone", rank)
    rng = random.Random(seed)
    table = x_table(rank)
    for w, cone in store.cones(rank).items():
        cell = cell_ideal(w, rank).ideal
        if cell.is_zero():
            continue
        gb = buchberger(cone.ideal, GREVLEX)
        for _ in range(samples):
            f = table.zero()
            while not f:
                f = sum((random_polynomial(table, rng) * g for g in cell.generators), table.zero())
            rep.total += 1
            low = f.lowest_form()
            if not ideal_member(low, gb):
                rep.failures.append(f"{print_cycles(w)}: {low} not in cone")
    return rep


def random_polynomial(table, rng: random.Random, max_terms: int = 3, max_degree: int = 2, bound: int = 3) -> Polynomial:
    terms = {}
    n = len(table)
    for _ in range(rng.randint(1, max_terms)):
        m = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            m[rng.randrange(n)] += 1
        c = rng.randint(-bound, bound)
        terms[tuple(m)] = terms.get(tuple(m), 0) + c
    return Polynomial(table, terms)


def check_groebner_properties(rank: int, store: ConeStore, trials: int = 20, seed: int = 0) -> CheckReport:
    """S-pairs reduce to zero, bases are canonical under reordering, and
    remainders agree between two reduction strategies."""
    rep = CheckReport("Groebner engine", rank)
    rng = random.Random(seed)
    table = x_table(rank)
    for w, cone in store.cones(rank).items():
        word_ideal = graph_ideal(cell_ideal(w, rank).word, rank)
        order = elimination_order(len(cell_ideal(w, rank).word))
        base = buchberger(word_ideal, order)
        for label, basis, ordr in (("graph", base.basis, order), ("cone", cone.generators, GREVLEX)):
            rep.total += 1
            if not is_groebner(basis, ordr):
                rep.failures.append(f"{print_cycles(w)}: {label} basis has an S-pair with nonzero remainder")
        gens = list(word_ideal.generators)
        for _ in range(trials):
            rng.shuffle(gens)
            scaled = [g.scale(rng.choice([-3, -2, -1, 1, 2, 5])) for g in gens]
            rep.total += 1
            if buchberger(Ideal(scaled, word_ideal.table), order).basis != base.basis:
                rep.failures.append(f"{print_cycles(w)}: reduced basis depends on generator order")
        if cone.generators:
            key = _keyfunc(GREVLEX)
            elems = [_Element(_to_int_terms(g), key) for g in cone.generators]
            for _ in range(5):
                f = random_polynomial(table, rng, max_terms=5, max_degree=3)
                if not f:
                    continue
                rep.total += 1
                r1 = normal_form(f, list(cone.generators), GREVLEX)[0]
                r2 = normal_form(f, list(reversed(cone.generators)), GREVLEX)[0]
                r3 = _reduce(_to_int_terms(f), elems[::-1], key)
                same = r1 == r2 and ((not r1 and not r3) or (r1 and r1.monic(GREVLEX) == Polynomial(table, r3).monic(GREVLEX)))
                if not same:
                    rep.failures.append(f"{print_cycles(w)}: remainders of {f} disagree")
    return rep


# --------------------------------------------------------------------------
# corpus diff


@dataclass
class DiffEntry:
    w: str
    verdict: str  # match | mismatch | allowlisted | missing-from-corpus
    where: str = ""
    computed: list[str] = field(default_factory=list)
    corpus: list[str] = field(default_factory=list)
    witness: str | None = None
    witness_from: str | None = None  # "corpus" or "computed"
    reason: str | None = None


@dataclass
class DiffReport:
    rank: int
    entries: list[DiffEntry] = field(default_factory=list)
    anomalies: list[str] = field(default_factory=list)
    parse_errors: list[str] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.entries:
            out[e.verdict] = out.get(e.verdict, 0) + 1
        return out

    @property
    def passed(self) -> bool:
        return not self.parse_errors and not any(e.verdict == "mismatch" for e in self.entries)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        counts = ", ".join(f"{k} {v}" for k, v in sorted(self.counts().items()))
        return f"[{status}] corpus (rank {self.rank}): {counts}"

    def lines(self) -> list[str]:
        out = [self.summary()]
        for e in self.entries:
            if e.verdict in ("match",):
                continue
            line = f"  {e.verdict}: {e.where or e.w}"
            if e.witness is not None:
                other = "computed" if e.witness_from == "corpus" else "corpus"
                line += f"; {e.witness_from} generator {e.witness} does not vanish on the {other} cone"
            out.append(line)
            if e.computed or e.corpus:
                out.append(f"    computed: {', '.join(e.computed) or 'n*'}")
                out.append(f"    corpus:   {', '.join(e.corpus) or 'n*'}")
            if e.reason:
                out.append(f"    reason: {e.reason}")
        out += [f"  anomaly: {a}" for a in self.anomalies]
        out += [f"  parse error: {p}" for p in self.parse_errors]
        return out

    def to_dict(self) -> dict:
        return dict(asdict(self), passed=self.passed, counts=self.counts())


def compare_corpus(
    rank: int,
    records: Sequence[ConeRecord],
    store: ConeStore,
    allowlist: dict[tuple[int, str], str] | None = None,
    errors: Iterable[CorpusError] = (),
) -> DiffReport:
    allowlist = allowlist or {}
    rep = DiffReport(rank, parse_errors=[f"entry {e.index}: {e.message}" for e in errors])
    cones = store.cones(rank)
    seen: dict[Permutation, ConeRecord] = {}
    for rec in records:
        if rec.rank != rank:
            continue
        w = rec.permutation()
        if w in seen:
            rep.anomalies.append(f"duplicate label {rec.where()}; first listed at {seen[w].where()}")
            continue
        seen[w] = rec
        if rec.equations and "=0=" in rec.equations.replace(" ", ""):
            rep.anomalies.append(f"typography '=0=' in {rec.where()}: {rec.equations}")
        if rec.note:
            rep.anomalies.append(f"{rec.where()}: {rec.note}")
        computed = cones[w].ideal
        listed = rec.ideal()
        entry = DiffEntry(print_cycles(w), "match", rec.where())
        wit = radical_witness(listed, computed)
        source = "corpus"
        if wit is None:
            wit = radical_witness(computed, listed)
            source = "computed"
        if wit is not None:
            key = (rank, print_cycles(w))
            entry.verdict = "allowlisted" if key in allowlist else "mismatch"
            entry.reason = allowlist.get(key)
            entry.witness = print_poly(wit)
            entry.witness_from = source
            entry.computed = [print_poly(g) for g in computed.generators]
            entry.corpus = list(rec.generators)
        rep.entries.append(entry)
    for w in cones:
        if w not in seen:
            label = print_cycles(w)
            rep.entries.append(
                DiffEntry(label, "missing-from-corpus", label, reason=allowlist.get((rank, label)))
            )
    return rep


def verify_witness(entry: DiffEntry, rank: int) -> bool:
    """Re-check a mismatch in isolation: the witness really fails radical membership."""
    if entry.witness is None:
        return False
    table = x_table(rank)
    wit = parse_poly(entry.witness, table)
    target = entry.computed if entry.witness_from == "corpus" else entry.corpus
    source = entry.corpus if entry.witness_from == "corpus" else entry.computed
    if wit not in [parse_poly(g, table) for g in source]:
        return False
    return not radical_member(wit, Ideal([parse_poly(g, table) for g in target], table))
