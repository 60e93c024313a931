"""Word relations: presentations, bounded closures, and classifiers.

A relation presentation names an equivalence on words, given by one of:

- a built-in rewrite family (``commutation``, ``k-equivalence``,
  ``k-commutation``, ``knuth``, ``k-knuth``, ``hecke``, ``exotic-knuth``),
- a symmetric letter-pair order function (``coxeter``), which generates
  ``a ~ aa`` together with the alternating pair of each finite order,
- an explicit list of generator pairs with equal letter sets, applied as
  substring rewrites in every context and closed under down-shifts (and,
  for uniform presentations, under order-preserving letter injections),
- a union of presentations.

``close`` materializes the equivalence classes on the universe of words
with letters in ``[alphabet]`` and length at most ``max_len + headroom``;
the headroom zone exists because inhomogeneous rewrites may route two
short words through longer ones.  ``headroom_stability`` recomputes with
one more unit of headroom and certifies that the reported slice did not
change.  All classifier verdicts are relative to the stated bounds.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .words import (
    Word,
    all_words,
    check_word,
    flatten,
    is_packed,
    restrict,
    shift,
    word_max,
)

INFINITY = 0  # sentinel for an infinite pair order inside CoxeterM tables


class ResourceCapError(RuntimeError):
    """Raised when a requested closure exceeds the configured universe cap."""


@dataclass(frozen=True)
class CoxeterM:
    """Symmetric pair-order function m(i, j) with m(i, i) = 1.

    ``default`` applies to all pairs i != j without an override; the value
    ``None`` (or the string "inf" in JSON) means infinite order.
    """

    default: int | None = 2
    overrides: tuple[tuple[int, int, int | None], ...] = ()

    def __post_init__(self):
        for i, j, m in self.overrides:
            if i == j:
                raise ValueError("pair orders are only overridable for i != j")
            if m is not None and m < 2:
                raise ValueError(f"pair order m({i},{j}) = {m} must be >= 2")
        if self.default is not None and self.default < 2:
            raise ValueError("default pair order must be >= 2 or None")

    def value(self, i: int, j: int) -> int | None:
        if i == j:
            return 1
        key = (min(i, j), max(i, j))
        for a, b, m in self.overrides:
            if (min(a, b), max(a, b)) == key:
                return m
        return self.default


@dataclass(frozen=True)
class GapCoxeterM(CoxeterM):
    """Pair order determined by |i - j|: ``order`` at |i-j| = gap, else 2."""

    gap: int = 1
    order: int | None = 3

    def value(self, i: int, j: int) -> int | None:
        if i == j:
            return 1
        return self.order if abs(i - j) == self.gap else 2


def gap_braid_m(gap: int, order: int | None = 3) -> CoxeterM:
    """m(i, i + gap) = order with all other pair orders 2, for every i."""
    if gap < 1:
        raise ValueError("gap must be positive")
    return GapCoxeterM(gap=gap, order=order)


def universal_coxeter_m() -> CoxeterM:
    return CoxeterM(default=None)


BUILTIN_NAMES = (
    "commutation",
    "k-equivalence",
    "k-commutation",
    "knuth",
    "k-knuth",
    "hecke",
    "exotic-knuth",
)


@dataclass(frozen=True)
class RelationPresentation:
    name: str
    builtin: str | None = None
    generators: tuple[tuple[Word, Word], ...] = ()
    coxeter: CoxeterM | None = None
    union_of: tuple["RelationPresentation", ...] = ()
    uniform: bool = False
    # When False, explicit generators rewrite only entire words (no
    # surrounding context); used to construct non-congruence test relations.
    context_rewrites: bool = True

    def __post_init__(self):
        if self.builtin is not None and self.builtin not in BUILTIN_NAMES:
            raise ValueError(f"unknown builtin {self.builtin!r}")
        for v, w in self.generators:
            if set(v) != set(w):
                raise ValueError(
                    f"generator pair {v} ~ {w} does not have equal letter sets"
                )

    @property
    def homogeneous(self) -> bool:
        """Structurally length-preserving (sufficient, not bounded-observed)."""
        if self.builtin in ("commutation", "knuth", "exotic-knuth"):
            base = True
        elif self.builtin is not None or self.coxeter is not None:
            base = False
        else:
            base = all(len(v) == len(w) for v, w in self.generators)
        return base and all(p.homogeneous for p in self.union_of)

    @property
    def content_preserving(self) -> bool:
        """Every rewrite preserves the letter multiset."""
        if self.builtin in ("commutation", "knuth", "exotic-knuth"):
            base = True
        elif self.builtin is not None or self.coxeter is not None:
            base = False
        else:
            base = all(sorted(v) == sorted(w) for v, w in self.generators)
        return base and all(p.content_preserving for p in self.union_of)


def builtin_relation(name: str) -> RelationPresentation:
    return RelationPresentation(name=name, builtin=name)


def coxeter_relation(m: CoxeterM, name: str = "coxeter") -> RelationPresentation:
    """The congruence generated by ``a ~ aa`` and, for each pair of letters
    with finite order, the equality of the two alternating words of that
    length."""
    return RelationPresentation(name=name, coxeter=m)


def explicit_relation(
    name: str,
    pairs: Iterable[tuple[Iterable[int], Iterable[int]]],
    uniform: bool = False,
    context_rewrites: bool = True,
) -> RelationPresentation:
    gens = tuple((check_word(v), check_word(w)) for v, w in pairs)
    return RelationPresentation(
        name=name, generators=gens, uniform=uniform, context_rewrites=context_rewrites
    )


def weak_variant(base: RelationPresentation) -> RelationPresentation:
    """The relation generated by ``base`` plus swapping the first two letters."""
    return _WeakPresentation(base)


@dataclass(frozen=True)
class _WeakPresentation(RelationPresentation):
    """Internal: base relation extended by initial-letter swaps."""

    base: RelationPresentation | None = None

    def __init__(self, base: RelationPresentation):
        object.__setattr__(self, "name", f"weak-{base.name}")
        object.__setattr__(self, "builtin", None)
        object.__setattr__(self, "generators", ())
        object.__setattr__(self, "coxeter", None)
        object.__setattr__(self, "union_of", (base,))
        object.__setattr__(self, "uniform", False)
        object.__setattr__(self, "context_rewrites", True)
        object.__setattr__(self, "base", base)

    @property
    def homogeneous(self) -> bool:
        return self.base.homogeneous

    @property
    def content_preserving(self) -> bool:
        return self.base.content_preserving


# --- one-step rewrite families -------------------------------------------


def _commutation_neighbors(w: Word, limit: int) -> list[Word]:
    out = []
    for i in range(len(w) - 1):
        if w[i] != w[i + 1]:
            out.append(w[:i] + (w[i + 1], w[i]) + w[i + 2 :])
    return out


def _repeat_neighbors(w: Word, limit: int) -> list[Word]:
    out = []
    n = len(w)
    for i in range(n - 1):
        if w[i] == w[i + 1]:
            out.append(w[:i] + w[i + 1 :])
    if n < limit:
        for i in range(n):
            out.append(w[: i + 1] + w[i:])
    return out


def _knuth_neighbors(w: Word, limit: int) -> list[Word]:
    out = []
    for i in range(len(w) - 2):
        a, b, c = w[i], w[i + 1], w[i + 2]
        if (b < a <= c) or (c < a <= b):
            out.append(w[:i] + (a, c, b) + w[i + 3 :])
        if (a <= c < b) or (b <= c < a):
            out.append(w[:i] + (b, a, c) + w[i + 3 :])
    return out


def _kknuth_neighbors(w: Word, limit: int) -> list[Word]:
    out = _repeat_neighbors(w, limit)
    for i in range(len(w) - 2):
        a, b, c = w[i], w[i + 1], w[i + 2]
        if b != c and min(b, c) < a < max(b, c):
            out.append(w[:i] + (a, c, b) + w[i + 3 :])
        if a != b and min(a, b) < c < max(a, b):
            out.append(w[:i] + (b, a, c) + w[i + 3 :])
        if a == c and a != b:
            out.append(w[:i] + (b, a, b) + w[i + 3 :])
    return out


def _hecke_neighbors(w: Word, limit: int) -> list[Word]:
    out = _repeat_neighbors(w, limit)
    for i in range(len(w) - 1):
        if abs(w[i] - w[i + 1]) >= 2:
            out.append(w[:i] + (w[i + 1], w[i]) + w[i + 2 :])
    for i in range(len(w) - 2):
        if w[i] == w[i + 2] != w[i + 1]:
            out.append(w[:i] + (w[i + 1], w[i], w[i + 1]) + w[i + 3 :])
    return out


def _exotic_neighbors(w: Word, limit: int) -> list[Word]:
    out = []
    n = len(w)
    for i in range(n - 2):
        a, b, c = w[i], w[i + 1], w[i + 2]
        if b != c and min(b, c) < a < max(b, c):
            out.append(w[:i] + (a, c, b) + w[i + 3 :])
        if a != b and min(a, b) < c < max(a, b):
            out.append(w[:i] + (b, a, c) + w[i + 3 :])
        # triples {x, y, y} with doubled larger letter: all arrangements agree
        if a == b > c:
            out.append(w[:i] + (a, c, a) + w[i + 3 :])
            out.append(w[:i] + (c, a, a) + w[i + 3 :])
        elif a == c > b:
            out.append(w[:i] + (a, a, b) + w[i + 3 :])
            out.append(w[:i] + (b, a, a) + w[i + 3 :])
        elif b == c > a:
            out.append(w[:i] + (b, b, a) + w[i + 3 :])
            out.append(w[:i] + (b, a, b) + w[i + 3 :])
    for i in range(n - 3):
        a, b, c, d = w[i : i + 4]
        if b == d and a <= b < c:
            out.append(w[:i] + (b, c, b, a) + w[i + 4 :])
        if a == c and a < b and d <= a:
            out.append(w[:i] + (d, a, b, a) + w[i + 4 :])
    return out


def _kcommutation_neighbors(w: Word, limit: int) -> list[Word]:
    return _commutation_neighbors(w, limit) + _repeat_neighbors(w, limit)


_BUILTIN_NEIGHBORS = {
    "commutation": _commutation_neighbors,
    "k-equivalence": _repeat_neighbors,
    "k-commutation": _kcommutation_neighbors,
    "knuth": _knuth_neighbors,
    "k-knuth": _kknuth_neighbors,
    "hecke": _hecke_neighbors,
    "exotic-knuth": _exotic_neighbors,
}


def _alternating(a: int, b: int, length: int) -> Word:
    return tuple(a if i % 2 == 0 else b for i in range(length))


def _coxeter_rewrites(m: CoxeterM, alphabet: int) -> dict[Word, tuple[Word, ...]]:
    table: dict[Word, list[Word]] = {}
    for a in range(1, alphabet + 1):
        for b in range(a + 1, alphabet + 1):
            order = m.value(a, b)
            if order is None:
                continue
            left = _alternating(a, b, order)
            right = _alternating(b, a, order)
            table.setdefault(left, []).append(right)
            table.setdefault(right, []).append(left)
    return {k: tuple(v) for k, v in table.items()}


def _order_preserving_injections(domain: int, alphabet: int) -> list[dict[int, int]]:
    out = []
    for image in itertools.combinations(range(1, alphabet + 1), domain):
        out.append({i + 1: image[i] for i in range(domain)})
    return out


def _explicit_rewrites(
    pres: RelationPresentation, alphabet: int
) -> dict[Word, tuple[Word, ...]]:
    pairs: set[tuple[Word, Word]] = set()
    for v, w in pres.generators:
        if pres.uniform:
            top = word_max(v)
            for phi in _order_preserving_injections(top, alphabet):
                pairs.add((tuple(phi[a] for a in v), tuple(phi[a] for a in w)))
        else:
            if word_max(v) <= alphabet:
                pairs.add((v, w))
        # close under down-shifts: a(v|m)b ~ a(w|m)b for 0 <= m < min(v)
        lo = min(v) if v else 1
        for k in range(1, lo):
            pairs.add((shift(v, -k), shift(w, -k)))
    table: dict[Word, list[Word]] = {}
    for v, w in pairs:
        if word_max(v) > alphabet:
            continue
        table.setdefault(v, []).append(w)
        table.setdefault(w, []).append(v)
    return {k: tuple(sorted(set(v))) for k, v in table.items()}


def compile_neighbors(
    pres: RelationPresentation, alphabet: int, limit: int
) -> Callable[[Word], list[Word]]:
    """Compile a presentation into a one-step rewrite generator.

    ``limit`` bounds the length of inflation rewrites (``a -> aa``)."""
    parts: list[Callable[[Word], list[Word]]] = []
    if pres.builtin is not None:
        fn = _BUILTIN_NEIGHBORS[pres.builtin]
        parts.append(lambda w, fn=fn: fn(w, limit))
    if pres.coxeter is not None:
        table = _coxeter_rewrites(pres.coxeter, alphabet)
        lengths = sorted({len(k) for k in table})

        def coxeter_part(w: Word) -> list[Word]:
            out = _repeat_neighbors(w, limit)
            for piece in lengths:
                for i in range(len(w) - piece + 1):
                    for rep in table.get(w[i : i + piece], ()):
                        out.append(w[:i] + rep + w[i + piece :])
            return out

        parts.append(coxeter_part)
    if pres.generators:
        table = _explicit_rewrites(pres, alphabet)
        lengths = sorted({len(k) for k in table})
        if pres.context_rewrites:

            def explicit_part(w: Word) -> list[Word]:
                out = []
                for piece in lengths:
                    for i in range(len(w) - piece + 1):
                        for rep in table.get(w[i : i + piece], ()):
                            candidate = w[:i] + rep + w[i + piece :]
                            if len(candidate) <= limit:
                                out.append(candidate)
                return out

        else:

            def explicit_part(w: Word) -> list[Word]:
                return [rep for rep in table.get(w, ()) if len(rep) <= limit]

        parts.append(explicit_part)
    if isinstance(pres, _WeakPresentation):

        def initial_swap(w: Word) -> list[Word]:
            if len(w) >= 2 and w[0] != w[1]:
                return [(w[1], w[0]) + w[2:]]
            return []

        parts.append(initial_swap)
    for sub in pres.union_of:
        parts.append(compile_neighbors(sub, alphabet, limit))

    if len(parts) == 1:
        return parts[0]

    def combined(w: Word) -> list[Word]:
        out: list[Word] = []
        for p in parts:
            out.extend(p(w))
        return out

    return combined


# --- bounded closure -------------------------------------------------------


def universe_size(alphabet: int, limit: int) -> int:
    if alphabet == 0:
        return 1
    if alphabet == 1:
        return limit + 1
    return (alphabet ** (limit + 1) - 1) // (alphabet - 1)


@dataclass
class RelationInstance:
    """A frozen bounded closure: universe, class ids, and class members."""

    presentation: RelationPresentation
    alphabet: int
    max_len: int
    headroom: int
    words: tuple[Word, ...] = field(repr=False)
    class_ids: tuple[int, ...] = field(repr=False)
    index: dict = field(repr=False)

    def __post_init__(self):
        members: dict[int, list[Word]] = {}
        for w, cid in zip(self.words, self.class_ids):
            members.setdefault(cid, []).append(w)
        self._members = {
            cid: tuple(sorted(ws, key=lambda t: (len(t), t)))
            for cid, ws in members.items()
        }

    @property
    def limit(self) -> int:
        return self.max_len + self.headroom

    def class_id(self, w: Word) -> int:
        w = tuple(w)
        if w not in self.index:
            raise KeyError(f"word {w} outside the closed universe")
        return self.class_ids[self.index[w]]

    def related(self, v: Word, w: Word) -> bool:
        return self.class_id(v) == self.class_id(w)

    def class_of(self, w: Word, full: bool = False) -> tuple[Word, ...]:
        """Members of the class of ``w``, restricted to length <= max_len
        unless ``full`` (which exposes the headroom zone too)."""
        members = self._members[self.class_id(w)]
        if full:
            return members
        return tuple(x for x in members if len(x) <= self.max_len)

    def representative(self, w: Word) -> Word:
        return self.class_of(w, full=True)[0]

    def iter_classes(self, full: bool = False) -> Iterator[tuple[Word, ...]]:
        """All classes meeting the reported slice, in representative order."""
        out = []
        for members in self._members.values():
            sliced = members if full else tuple(
                x for x in members if len(x) <= self.max_len
            )
            if sliced:
                out.append(sliced)
        out.sort(key=lambda ms: (len(ms[0]), ms[0]))
        yield from out

    def packed_classes(self, length: int) -> list[tuple[Word, ...]]:
        """Classes containing a packed word of the given length."""
        seen: set[int] = set()
        out = []
        for w in self.words:
            if len(w) == length and is_packed(w):
                cid = self.class_ids[self.index[w]]
                if cid not in seen:
                    seen.add(cid)
                    out.append(self.class_of(w))
        out.sort(key=lambda ms: (len(ms[0]), ms[0]))
        return out

    def class_count(self) -> int:
        """Number of classes meeting the length <= max_len slice."""
        return sum(1 for _ in self.iter_classes())

    def slice_partition(self) -> frozenset[frozenset[Word]]:
        return frozenset(
            frozenset(members) for members in self.iter_classes()
        )


def close(
    pres: RelationPresentation,
    alphabet: int,
    max_len: int,
    headroom: int | None = None,
    cap: int = 2_000_000,
) -> RelationInstance:
    """Union-find closure of the presentation on a bounded universe."""
    if headroom is None:
        headroom = 0 if pres.homogeneous else 2
    limit = max_len + headroom
    size = universe_size(alphabet, limit)
    if size > cap:
        raise ResourceCapError(
            f"universe of {size} words exceeds cap {cap}; raise --cap or shrink bounds"
        )
    words = tuple(all_words(alphabet, limit))
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    neighbors = compile_neighbors(pres, alphabet, limit)
    for i, w in enumerate(words):
        for nb in neighbors(w):
            j = index.get(nb)
            if j is None:
                continue
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[rj] = ri
    class_ids = tuple(find(i) for i in range(len(words)))
    return RelationInstance(
        presentation=pres,
        alphabet=alphabet,
        max_len=max_len,
        headroom=headroom,
        words=words,
        class_ids=class_ids,
        index=index,
    )


def bfs_class(
    pres: RelationPresentation,
    seed: Word,
    max_len: int,
    alphabet: int | None = None,
) -> tuple[Word, ...]:
    """The connected component of ``seed`` among words of length <= max_len.

    Letters never leave the seed's letter set (word relations preserve
    letter sets), so no alphabet bound beyond the seed's own is needed."""
    seed = tuple(seed)
    if alphabet is None:
        alphabet = word_max(seed)
    neighbors = compile_neighbors(pres, alphabet, max_len)
    seen = {seed}
    stack = [seed]
    while stack:
        w = stack.pop()
        for nb in neighbors(w):
            if len(nb) <= max_len and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return tuple(sorted(seen, key=lambda t: (len(t), t)))


def headroom_stability(inst: RelationInstance) -> dict:
    """Recompute with one more unit of headroom; certify the reported slice.

    Also flags explicit generator pairs that straddle the universe boundary,
    since such pairs can never fire inside the closed universe."""
    bigger = close(
        inst.presentation,
        inst.alphabet,
        inst.max_len,
        inst.headroom + 1,
        cap=2**62,
    )
    stable = inst.slice_partition() == bigger.slice_partition()
    straddling = [
        (v, w)
        for v, w in _all_generator_pairs(inst.presentation)
        if min(len(v), len(w)) <= inst.limit < max(len(v), len(w))
    ]
    return {
        "stable": stable and not straddling,
        "partition_stable": stable,
        "straddling_generators": straddling,
        "bounds": {
            "alphabet": inst.alphabet,
            "max_len": inst.max_len,
            "headroom": inst.headroom,
        },
    }


def _all_generator_pairs(pres: RelationPresentation) -> list[tuple[Word, Word]]:
    out = list(pres.generators)
    for sub in pres.union_of:
        out.extend(_all_generator_pairs(sub))
    return out


# --- classifiers -----------------------------------------------------------


def _intervals(alphabet: int) -> list[tuple[int, int]]:
    """All (m, n) with the letter interval {m+1, ..., n}."""
    return [(m, n) for m in range(alphabet + 1) for n in range(m, alphabet + 1)]


def _observed_pairs(inst: RelationInstance) -> Iterator[tuple[Word, Word]]:
    """Each reported-slice member paired with its class representative."""
    for members in inst.iter_classes():
        rep = members[0]
        for w in members[1:]:
            yield rep, w


def check_algebraic(
    inst: RelationInstance, sample_cap: int = 5_000_000, seed: int = 0
) -> dict:
    """Bounded check of the two closure conditions of an algebraic relation:
    (a) concatenation congruence, via one-sided contexts against class
    representatives; (b) interval restriction with down-shift.
    """
    contexts = [w for w in inst.words if len(w) <= inst.max_len]
    pairs = list(_observed_pairs(inst))
    total = 2 * len(pairs) * len(contexts)
    rng = random.Random(seed)
    sampled = total > sample_cap
    witness = None
    checked = 0

    def congruent(v: Word, w: Word, u: Word) -> bool:
        nonlocal checked
        ok = True
        if len(v + u) <= inst.max_len and len(w + u) <= inst.max_len:
            checked += 1
            ok = inst.related(v + u, w + u)
        if ok and len(u + v) <= inst.max_len and len(u + w) <= inst.max_len:
            checked += 1
            ok = inst.related(u + v, u + w)
        return ok

    if sampled:
        budget = sample_cap
        while budget > 0 and witness is None and pairs:
            rep, w = pairs[rng.randrange(len(pairs))]
            u = contexts[rng.randrange(len(contexts))]
            if not congruent(rep, w, u):
                witness = {"pair": (rep, w), "context": u}
            budget -= 2
    else:
        for rep, w in pairs:
            for u in contexts:
                if not congruent(rep, w, u):
                    witness = {"pair": (rep, w), "context": u}
                    break
            if witness:
                break

    condition_a = {
        "condition": "concatenation-congruence",
        "status": "fail" if witness else ("bounded-evidence" if sampled else "pass"),
        "checked": checked,
        **({"witness": witness} if witness else {}),
    }

    witness_b = None
    checked_b = 0
    for rep, w in pairs:
        for m, n in _intervals(inst.alphabet):
            rv = shift(restrict(rep, range(m + 1, n + 1)), -m)
            wv = shift(restrict(w, range(m + 1, n + 1)), -m)
            checked_b += 1
            if not inst.related(rv, wv):
                witness_b = {
                    "pair": (rep, w),
                    "interval": (m + 1, n),
                    "restrictions": (rv, wv),
                }
                break
        if witness_b:
            break
    condition_b = {
        "condition": "interval-restriction",
        "status": "fail" if witness_b else "pass",
        "checked": checked_b,
        **({"witness": witness_b} if witness_b else {}),
    }

    status = "fail" if (witness or witness_b) else (
        "bounded-evidence" if sampled else "pass"
    )
    return {
        "property": "algebraic",
        "status": status,
        "conditions": [condition_a, condition_b],
        "bounds": {"alphabet": inst.alphabet, "max_len": inst.max_len},
    }


def check_uniformly_algebraic(inst: RelationInstance, **kwargs) -> dict:
    """Algebraic plus invariance under order-preserving letter injections."""
    base = check_algebraic(inst, **kwargs)
    witness = None
    checked = 0
    for rep, w in _observed_pairs(inst):
        top = word_max(rep)
        if word_max(w) != top:
            witness = {"pair": (rep, w), "reason": "letter sets differ"}
            break
        for phi in _order_preserving_injections(top, inst.alphabet):
            pv = tuple(phi[a] for a in rep)
            pw = tuple(phi[a] for a in w)
            checked += 1
            if not inst.related(pv, pw):
                witness = {"pair": (rep, w), "injection": phi, "images": (pv, pw)}
                break
        if witness:
            break
    injection_cond = {
        "condition": "order-preserving-injections",
        "status": "fail" if witness else "pass",
        "checked": checked,
        **({"witness": witness} if witness else {}),
    }
    status = "fail" if (base["status"] == "fail" or witness) else base["status"]
    return {
        "property": "uniformly-algebraic",
        "status": status,
        "conditions": base["conditions"] + [injection_cond],
        "bounds": base["bounds"],
    }


def destandardization_counts(
    members: Sequence[Word],
) -> dict[tuple[Word, Word], int]:
    """For every cut of every member, count cuts by flattened block pair."""
    counts: dict[tuple[Word, Word], int] = {}
    for w in members:
        for i in range(len(w) + 1):
            key = (flatten(w[:i]), flatten(w[i:]))
            counts[key] = counts.get(key, 0) + 1
    return counts


def count_destandardizations(members: Sequence[Word], u: Word, v: Word) -> int:
    """Members expressible as a concatenation with flattened blocks (u, v).

    The cut position is forced by the block lengths, so counting words is
    the same as counting cuts, i.e. the coefficient of the pair in the cut
    coproduct of the class sum."""
    u, v = tuple(u), tuple(v)
    cut = len(u)
    return sum(
        1
        for w in members
        if len(w) == cut + len(v)
        and flatten(w[:cut]) == u
        and flatten(w[cut:]) == v
    )


def check_p_algebraic(inst: RelationInstance, prime: int | None = None) -> dict:
    """Bounded check of the packed-word coalgebra condition: within every
    class, cut counts by flattened block pair must be constant when the
    blocks are replaced by equivalent packed words (equal in characteristic
    zero, congruent mod ``prime`` otherwise), plus interval restriction."""
    packed_class_of: dict[Word, int] = {}
    for members in inst.iter_classes():
        for w in members:
            if is_packed(w):
                packed_class_of[w] = inst.class_id(w)

    witness = None
    checked = 0
    for members in inst.iter_classes():
        counts = destandardization_counts(
            [w for w in members if len(w) <= inst.max_len]
        )
        blocks: dict[tuple[int, int, int], dict[tuple[Word, Word], int]] = {}
        for (u, v), c in counts.items():
            cu = packed_class_of.get(u)
            cv = packed_class_of.get(v)
            if cu is None or cv is None:
                continue
            blocks.setdefault((cu, cv, len(u) + len(v)), {})[(u, v)] = c
        for (cu, cv, total_len), seen in blocks.items():
            us = [
                u
                for u in inst.class_of(inst.words[_first_index(inst, cu)])
                if is_packed(u)
            ]
            vs = [
                v
                for v in inst.class_of(inst.words[_first_index(inst, cv)])
                if is_packed(v)
            ]
            expected = None
            for u in us:
                for v in vs:
                    if len(u) + len(v) != total_len:
                        continue
                    c = seen.get((u, v), 0)
                    checked += 1
                    if expected is None:
                        expected = c
                        first = (u, v)
                    elif not _congruent(c, expected, prime):
                        witness = {
                            "class": members[0],
                            "pair": first,
                            "other_pair": (u, v),
                            "counts": (expected, c),
                        }
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break

    condition_a = {
        "condition": "destandardization-counts",
        "status": "fail" if witness else "pass",
        "checked": checked,
        **({"witness": witness} if witness else {}),
    }
    base = check_algebraic(inst)
    condition_b = base["conditions"][1]
    status = "fail" if (witness or condition_b["status"] == "fail") else "pass"
    return {
        "property": "p-algebraic",
        "status": status,
        "prime": prime,
        "conditions": [condition_a, condition_b],
        "bounds": base["bounds"],
    }


def _congruent(a: int, b: int, prime: int | None) -> bool:
    return a == b if prime is None else (a - b) % prime == 0


def _first_index(inst: RelationInstance, cid: int) -> int:
    return inst.index[inst._members[cid][0]]


def is_homogeneous_observed(inst: RelationInstance) -> bool:
    return all(
        len({len(w) for w in members}) == 1 for members in inst.iter_classes(full=True)
    )


def is_finite_type_bounded(inst: RelationInstance) -> dict:
    """Certificate that the class count over the alphabet has stabilized:
    the count at max_len equals the count at max_len + 1."""
    bigger = close(
        inst.presentation,
        inst.alphabet,
        inst.max_len + 1,
        inst.headroom,
        cap=2**62,
    )
    n0, n1 = inst.class_count(), bigger.class_count()
    return {
        "stable": n0 == n1,
        "count": n0,
        "count_next": n1,
        "bounds": {"alphabet": inst.alphabet, "max_len": inst.max_len},
    }


def reduced_members(members: Sequence[Word]) -> tuple[Word, ...]:
    """Members of minimal length."""
    if not members:
        return ()
    shortest = min(len(w) for w in members)
    return tuple(w for w in members if len(w) == shortest)


def braid_lemma_check(a: int, b: int, length: int, m: CoxeterM) -> bool:
    """Whether the two alternating words of the given length are equivalent,
    decided inside a bounded closure of the pair-order relation."""
    alphabet = max(a, b)
    v = _alternating(a, b, length)
    w = _alternating(b, a, length)
    inst = close(coxeter_relation(m), alphabet, length, headroom=2, cap=2**62)
    return inst.related(v, w)
