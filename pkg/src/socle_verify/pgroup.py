"""Finite p-groups presented by power-commutator relations.

A group of order p^m has generators g1..gm and relations

    gi^p    = <word in g_(i+1)..gm>
    [gj,gi] = <word in g_(j+1)..gm>      for j > i, [x,y] = x^-1 y^-1 x y

where every element has a unique normal form g1^e1 ... gm^em with
0 <= ei < p.  Products are computed by collection from the left.
Construction materializes the full Cayley table and certifies it
(identity, cancellation, associativity on all triples, and the defining
relations re-checked against the table), so inconsistent presentations
are rejected outright.  That certificate is what makes the table safe to
use as the multiplication backend everywhere else in the package.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .ffield import is_prime

__all__ = [
    "PcGroup",
    "GroupElement",
    "Subgroup",
    "GroupAutomorphism",
    "PresentationError",
    "InconsistentPresentation",
    "RelationViolation",
    "NotBijective",
    "catalog",
    "catalog_names",
    "catalog_description",
]

MAX_ORDER = 512

Word = tuple[tuple[int, int], ...]


class PresentationError(ValueError):
    """Structurally malformed power-commutator presentation."""


class InconsistentPresentation(ValueError):
    """Presentation whose collected multiplication fails the group certificate."""


class RelationViolation(ValueError):
    """Generator images do not satisfy a defining relation."""


class NotBijective(ValueError):
    """Generator images induce a non-bijective endomorphism."""


@dataclass(frozen=True)
class GroupElement:
    """Normal-form exponent vector; context comes from the owning group."""

    exponents: tuple[int, ...]

    def is_identity(self) -> bool:
        return not any(self.exponents)


class Subgroup:
    """A subgroup held as an explicit element set plus a generating list."""

    __slots__ = ("group", "indices", "generators")

    def __init__(self, group: PcGroup, indices: Sequence[int], generators: Sequence[GroupElement]):
        self.group = group
        self.indices = tuple(sorted(int(i) for i in indices))
        self.generators = tuple(generators)

    @property
    def order(self) -> int:
        return len(self.indices)

    def is_trivial(self) -> bool:
        return self.indices == (0,)

    def elements(self) -> list[GroupElement]:
        return [self.group.element_at(i) for i in self.indices]

    def __contains__(self, el: GroupElement) -> bool:
        return self.group.index_of(el) in set(self.indices)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.indices == other.indices
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.indices))

    def __le__(self, other: Subgroup) -> bool:
        return set(self.indices) <= set(other.indices)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.group.name or 'pcgroup'})"


def _collect(p: int, m: int, power_words: tuple[Word, ...], comm_words: dict[tuple[int, int], Word], word: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Collection from the left; word entries are (generator index, exponent >= 0)."""
    w: list[list[int]] = [[i, e] for i, e in word if e]
    k = 0
    steps = 0
    while k < len(w):
        steps += 1
        if steps > 10_000_000:
            raise RuntimeError("collection did not terminate (runaway presentation)")
        i, e = w[k]
        if e >= p:
            rem = e % p
            repl: list[list[int]] = [[i, rem]] if rem else []
            pw = power_words[i - 1]
            for _ in range(e // p):
                repl.extend([x, y] for x, y in pw)
            w[k : k + 1] = repl
            k = max(k - 1, 0)
            continue
        if k + 1 < len(w):
            j, d = w[k + 1]
            if i == j:
                w[k][1] = e + d
                del w[k + 1]
                continue
            if i > j:
                cw = comm_words.get((i, j))
                if cw is None:
                    # trivial commutator: the two powers commute as blocks
                    w[k], w[k + 1] = w[k + 1], w[k]
                else:
                    repl = []
                    if e > 1:
                        repl.append([i, e - 1])
                    repl.append([j, 1])
                    repl.append([i, 1])
                    repl.extend([x, y] for x, y in cw)
                    if d > 1:
                        repl.append([j, d - 1])
                    w[k : k + 2] = repl
                k = max(k - 1, 0)
                continue
        k += 1
    exps = [0] * m
    for i, e in w:
        exps[i - 1] = e
    return tuple(exps)


class PcGroup:
    """A finite p-group with a certified Cayley-table multiplication backend."""

    def __init__(
        self,
        p: int,
        m: int,
        power_words: dict[int, Word] | None = None,
        comm_words: dict[tuple[int, int], Word] | None = None,
        name: str | None = None,
        stored_auto_words: Sequence[Sequence[str]] | None = None,
    ):
        if not is_prime(p):
            raise PresentationError(f"p must be prime, got {p}")
        if m < 1:
            raise PresentationError("need at least one generator")
        if p**m > MAX_ORDER:
            raise PresentationError(f"order p^m = {p**m} exceeds supported maximum {MAX_ORDER}")
        self.p = p
        self.m = m
        self.name = name
        self._stored_auto_words = [list(ws) for ws in stored_auto_words] if stored_auto_words else []

        powers = dict(power_words or {})
        comms = dict(comm_words or {})
        self.power_words: tuple[Word, ...] = tuple(
            self._check_word(powers.get(i, ()), min_index=i, what=f"g{i}^{p}") for i in range(1, m + 1)
        )
        self.comm_words: dict[tuple[int, int], Word] = {}
        for (j, i), word in sorted(comms.items()):
            if not (1 <= i < j <= m):
                raise PresentationError(f"commutator relation indices ({j},{i}) out of range")
            word = self._check_word(word, min_index=j, what=f"[g{j},g{i}]")
            if word:
                self.comm_words[(j, i)] = word

        self._elements: list[tuple[int, ...]] = list(itertools.product(range(p), repeat=m))
        self._index: dict[tuple[int, ...], int] = {t: k for k, t in enumerate(self._elements)}
        self._build_table()
        self._certify()

    # -- construction ---------------------------------------------------------

    def _check_word(self, word: Iterable[tuple[int, int]], min_index: int, what: str) -> Word:
        out = []
        last = min_index
        for idx, exp in word:
            if not (min_index < idx <= self.m):
                raise PresentationError(
                    f"relation {what} may only mention generators above index {min_index}, got g{idx}"
                )
            if idx <= last and out:
                raise PresentationError(f"relation {what} right side is not in normal form")
            if not 1 <= exp < self.p:
                raise PresentationError(f"relation {what} has exponent {exp} outside 1..{self.p - 1}")
            last = idx
            out.append((idx, exp))
        return tuple(out)

    def _build_table(self) -> None:
        n = len(self._elements)
        p, m = self.p, self.m
        table = np.zeros((n, n), dtype=np.int64)
        table[:, 0] = np.arange(n)
        # split each column index into (prefix, pure generator power); prefix
        # columns are lexicographically smaller, so one ascending pass suffices
        for b in range(1, n):
            exps = self._elements[b]
            jlast = max(k for k in range(m) if exps[k])
            if all(exps[k] == 0 for k in range(jlast)):
                # base column: collect a * gj^e directly
                col = np.empty(n, dtype=np.int64)
                for a in range(n):
                    ae = self._elements[a]
                    nf = _collect(
                        p,
                        m,
                        self.power_words,
                        self.comm_words,
                        [(k + 1, ae[k]) for k in range(m) if ae[k]] + [(jlast + 1, exps[jlast])],
                    )
                    col[a] = self._index[nf]
                table[:, b] = col
            else:
                prefix = list(exps)
                prefix[jlast] = 0
                bpref = self._index[tuple(prefix)]
                pure = [0] * m
                pure[jlast] = exps[jlast]
                gpow = self._index[tuple(pure)]
                table[:, b] = table[table[:, bpref], gpow]
        self._cayley = table

    def _certify(self) -> None:
        t = self._cayley
        n = t.shape[0]
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise InconsistentPresentation("identity does not act trivially")
        if not (np.array_equal(np.sort(t, axis=1), np.tile(ar, (n, 1))) and
                np.array_equal(np.sort(t, axis=0), np.tile(ar.reshape(-1, 1), (1, n)))):
            raise InconsistentPresentation("multiplication table is not cancellative")
        for a in range(n):
            if not np.array_equal(t[t[a]], np.take(t[a], t)):
                raise InconsistentPresentation("multiplication table is not associative")
        self._inv = np.argmin(t, axis=1).astype(np.int64)  # t[a, inv(a)] == 0
        # defining relations must hold in the certified table
        for i in range(1, self.m + 1):
            gi = self._index[tuple(1 if k == i - 1 else 0 for k in range(self.m))]
            acc = 0
            for _ in range(self.p):
                acc = int(t[acc, gi])
            if acc != self._eval_word_index(self.power_words[i - 1]):
                raise InconsistentPresentation(f"power relation for g{i} fails in the table")
        for j in range(2, self.m + 1):
            for i in range(1, j):
                gi = self._index[tuple(1 if k == i - 1 else 0 for k in range(self.m))]
                gj = self._index[tuple(1 if k == j - 1 else 0 for k in range(self.m))]
                c = int(t[t[t[self._inv[gj], self._inv[gi]], gj], gi])
                if c != self._eval_word_index(self.comm_words.get((j, i), ())):
                    raise InconsistentPresentation(f"commutator relation [g{j},g{i}] fails in the table")

    def _eval_word_index(self, word: Word) -> int:
        acc = 0
        for idx, exp in word:
            pure = [0] * self.m
            pure[idx - 1] = exp
            acc = int(self._cayley[acc, self._index[tuple(pure)]])
        return acc

    # -- basic structure --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def cayley_table(self) -> np.ndarray:
        return self._cayley

    @property
    def inverse_table(self) -> np.ndarray:
        return self._inv

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.m)

    def generator(self, i: int) -> GroupElement:
        if not 1 <= i <= self.m:
            raise ValueError(f"generator index {i} out of range 1..{self.m}")
        return GroupElement(tuple(1 if k == i - 1 else 0 for k in range(self.m)))

    def generators(self) -> list[GroupElement]:
        return [self.generator(i) for i in range(1, self.m + 1)]

    def element(self, exponents: Sequence[int]) -> GroupElement:
        exps = tuple(int(e) % self.p for e in exponents)
        if len(exps) != self.m:
            raise ValueError(f"need {self.m} exponents, got {len(exps)}")
        return GroupElement(exps)

    def elements(self) -> Iterator[GroupElement]:
        for t in self._elements:
            yield GroupElement(t)

    def index_of(self, el: GroupElement) -> int:
        return self._index[el.exponents]

    def element_at(self, idx: int) -> GroupElement:
        return GroupElement(self._elements[idx])

    def collect(self, word: Iterable[tuple[int, int]]) -> GroupElement:
        """Normal form of an arbitrary nonnegative generator word."""
        for idx, exp in word:
            if not 1 <= idx <= self.m:
                raise ValueError(f"generator index {idx} out of range")
            if exp < 0:
                raise ValueError("collection handles nonnegative exponents only")
        return GroupElement(_collect(self.p, self.m, self.power_words, self.comm_words, word))

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.element_at(int(self._cayley[self.index_of(a), self.index_of(b)]))

    def inverse(self, a: GroupElement) -> GroupElement:
        return self.element_at(int(self._inv[self.index_of(a)]))

    def commutator(self, a: GroupElement, b: GroupElement) -> GroupElement:
        """[a, b] = a^-1 b^-1 a b."""
        t = self._cayley
        ia, ib = self.index_of(a), self.index_of(b)
        return self.element_at(int(t[t[t[self._inv[ia], self._inv[ib]], ia], ib]))

    def power(self, a: GroupElement, k: int) -> GroupElement:
        idx = self.index_of(a)
        if k < 0:
            idx = int(self._inv[idx])
            k = -k
        acc, base = 0, idx
        t = self._cayley
        while k:
            if k & 1:
                acc = int(t[acc, base])
            base = int(t[base, base])
            k >>= 1
        return self.element_at(acc)

    def is_abelian(self) -> bool:
        return not self.comm_words

    def is_elementary_abelian(self) -> bool:
        return not self.comm_words and all(not w for w in self.power_words)

    # -- subgroup machinery -------------------------------------------------------

    def _closure_indices(self, seeds: Iterable[int]) -> list[int]:
        t = self._cayley
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        gens = sorted({int(s) for s in seeds} - {0})
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(t[x, s])
                    if not seen[y]:
                        seen[y] = True
                        nxt.append(y)
            frontier = nxt
        return [int(i) for i in np.nonzero(seen)[0]]

    def subgroup_closure(self, generators: Iterable[GroupElement]) -> Subgroup:
        gens = list(generators)
        idxs = self._closure_indices(self.index_of(g) for g in gens)
        return Subgroup(self, idxs, gens)

    def full_subgroup(self) -> Subgroup:
        return Subgroup(self, range(self.order), self.generators())

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, [0], [])

    def lower_central_series(self) -> list[Subgroup]:
        """G = gamma_1 >= gamma_2 >= ... down to the first trivial term."""
        series = [self.full_subgroup()]
        t = self._cayley
        inv = self._inv
        while not series[-1].is_trivial():
            prev = series[-1].indices
            seeds = set()
            for x in prev:
                ix = int(inv[x])
                for g in range(self.order):
                    seeds.add(int(t[t[t[ix, inv[g]], x], g]))
            sub = Subgroup(
                self,
                self._closure_indices(seeds),
                [self.element_at(s) for s in sorted(seeds - {0})],
            )
            if sub == series[-1]:
                raise RuntimeError("lower central series failed to descend in a finite p-group")
            series.append(sub)
        return series

    def agemo(self, sub: Subgroup, j: int = 1) -> Subgroup:
        """Subgroup generated by the p^j-th powers of a subgroup's elements."""
        if sub.group is not self:
            raise ValueError("subgroup belongs to a different group")
        q = self.p**j
        seeds = {self.index_of(self.power(self.element_at(x), q)) for x in sub.indices}
        return Subgroup(self, self._closure_indices(seeds), [self.element_at(s) for s in sorted(seeds - {0})])

    def frattini(self) -> Subgroup:
        """Phi(G) = G^p [G,G] for a p-group."""
        t = self._cayley
        inv = self._inv
        seeds = {self.index_of(self.power(self.element_at(x), self.p)) for x in range(self.order)}
        for x in range(self.order):
            ix = int(inv[x])
            for g in range(self.order):
                seeds.add(int(t[t[t[ix, inv[g]], x], g]))
        return Subgroup(self, self._closure_indices(seeds), [self.element_at(s) for s in sorted(seeds - {0})])

    def center(self) -> Subgroup:
        mask = (self._cayley == self._cayley.T).all(axis=1)
        idxs = [int(i) for i in np.nonzero(mask)[0]]
        return Subgroup(self, idxs, [self.element_at(i) for i in idxs if i != 0])

    def jennings_series_recursive(self) -> list[Subgroup]:
        """F_1 = G, F_r = <[F_(r-1), G], x^p for x in F_ceil(r/p)>.

        Returns the indexed chain F_1, F_2, ... including the first trivial
        term.  Consecutive terms may coincide; the indexing carries the
        degree information and is preserved.
        """
        series = [self.full_subgroup()]
        t = self._cayley
        inv = self._inv
        r = 2
        while not series[-1].is_trivial():
            prev = series[-1].indices
            ceil_idx = -(-r // self.p)  # ceil(r/p), >= 1
            seeds = set()
            for x in prev:
                ix = int(inv[x])
                for g in range(self.order):
                    seeds.add(int(t[t[t[ix, inv[g]], x], g]))
            for x in series[ceil_idx - 1].indices:
                seeds.add(self.index_of(self.power(self.element_at(x), self.p)))
            series.append(
                Subgroup(self, self._closure_indices(seeds), [self.element_at(s) for s in sorted(seeds - {0})])
            )
            r += 1
        return series

    # -- automorphisms from generator images ----------------------------------------

    def group_automorphism(self, images: Sequence[GroupElement]) -> GroupAutomorphism:
        if len(images) != self.m:
            raise ValueError(f"need {self.m} generator images, got {len(images)}")
        t = self._cayley
        img_idx = [self.index_of(g) for g in images]

        def eval_word(word: Word) -> int:
            acc = 0
            for idx, exp in word:
                pw = self.power(self.element_at(img_idx[idx - 1]), exp)
                acc = int(t[acc, self.index_of(pw)])
            return acc

        for i in range(1, self.m + 1):
            lhs = self.index_of(self.power(self.element_at(img_idx[i - 1]), self.p))
            if lhs != eval_word(self.power_words[i - 1]):
                raise RelationViolation(f"images break the power relation of g{i}")
        for j in range(2, self.m + 1):
            for i in range(1, j):
                a, b = img_idx[j - 1], img_idx[i - 1]
                lhs = int(t[t[t[self._inv[a], self._inv[b]], a], b])
                if lhs != eval_word(self.comm_words.get((j, i), ())):
                    raise RelationViolation(f"images break the commutator relation [g{j},g{i}]")

        # extend multiplicatively along normal forms (valid: relations verified)
        perm = np.zeros(self.order, dtype=np.int64)
        pure_pow = {}
        for k in range(self.m):
            for e in range(1, self.p):
                pure = [0] * self.m
                pure[k] = e
                pure_pow[(k, e)] = self.index_of(self.power(self.element_at(img_idx[k]), e))
        for b in range(1, self.order):
            exps = self._elements[b]
            jlast = max(k for k in range(self.m) if exps[k])
            prefix = list(exps)
            prefix[jlast] = 0
            perm[b] = t[perm[self._index[tuple(prefix)]], pure_pow[(jlast, exps[jlast])]]
        counts = np.bincount(perm, minlength=self.order)
        if not np.all(counts == 1):
            raise NotBijective("generator images generate a proper subgroup")
        return GroupAutomorphism(self, tuple(images), perm)

    def stored_automorphisms(self) -> list[GroupAutomorphism]:
        out = []
        for words in self._stored_auto_words:
            images = [self.parse_word(w) for w in words]
            out.append(self.group_automorphism(images))
        return out

    # -- words and presentations ------------------------------------------------------

    def word_str(self, el: GroupElement) -> str:
        parts = []
        for k, e in enumerate(el.exponents):
            if e == 1:
                parts.append(f"g{k + 1}")
            elif e > 1:
                parts.append(f"g{k + 1}^{e}")
        return " ".join(parts) if parts else "1"

    def parse_word(self, text: str) -> GroupElement:
        return self.collect(parse_word_pairs(text, self.m))

    def presentation_text(self) -> str:
        lines = [f"pcgroup p={self.p} m={self.m}"]
        for i in range(1, self.m + 1):
            rhs = _word_text(self.power_words[i - 1])
            lines.append(f"g{i}^{self.p} = {rhs}")
        for (j, i), word in sorted(self.comm_words.items()):
            lines.append(f"[g{j},g{i}] = {_word_text(word)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_presentation_text(cls, text: str, name: str | None = None) -> PcGroup:
        header = None
        powers: dict[int, Word] = {}
        comms: dict[tuple[int, int], Word] = {}
        power_re = re.compile(r"^g(\d+)\s*\^\s*(\d+)\s*=\s*(.+)$")
        comm_re = re.compile(r"^\[\s*g(\d+)\s*,\s*g(\d+)\s*\]\s*=\s*(.+)$")
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if header is None:
                mh = re.match(r"^pcgroup\s+p=(\d+)\s+m=(\d+)$", line)
                if not mh:
                    raise PresentationError(f"expected 'pcgroup p=<p> m=<m>' header, got {line!r}")
                header = (int(mh.group(1)), int(mh.group(2)))
                continue
            p, m = header
            mp = power_re.match(line)
            if mp:
                i, e = int(mp.group(1)), int(mp.group(2))
                if e != p:
                    raise PresentationError(f"power relation for g{i} must have exponent {p}")
                powers[i] = tuple(_parse_relation_word(mp.group(3), m))
                continue
            mc = comm_re.match(line)
            if mc:
                j, i = int(mc.group(1)), int(mc.group(2))
                comms[(j, i)] = tuple(_parse_relation_word(mc.group(3), m))
                continue
            raise PresentationError(f"unparseable relation line {line!r}")
        if header is None:
            raise PresentationError("empty presentation")
        return cls(header[0], header[1], powers, comms, name=name)

    def __repr__(self) -> str:
        label = self.name or "pcgroup"
        return f"PcGroup({label}, p={self.p}, order={self.order})"


def _word_text(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(f"g{i}" if e == 1 else f"g{i}^{e}" for i, e in word)


def _parse_relation_word(text: str, m: int) -> list[tuple[int, int]]:
    try:
        return parse_word_pairs(text, m)
    except PresentationError:
        raise
    except ValueError as exc:
        raise PresentationError(str(exc)) from exc


def parse_word_pairs(text: str, m: int) -> list[tuple[int, int]]:
    """Parse 'g1 g3^2' (also 'g1*g3^2') into (index, exponent) pairs."""
    s = text.strip()
    if s == "1" or s == "":
        return []
    pairs = []
    for token in re.split(r"[\s*]+", s):
        mt = re.fullmatch(r"g(\d+)(?:\^(\d+))?", token)
        if not mt:
            raise ValueError(f"bad generator token {token!r}")
        idx = int(mt.group(1))
        if not 1 <= idx <= m:
            raise ValueError(f"generator g{idx} out of range (m={m})")
        pairs.append((idx, int(mt.group(2)) if mt.group(2) else 1))
    return pairs


class GroupAutomorphism:
    """A verified automorphism, stored as images plus the induced permutation."""

    __slots__ = ("group", "images", "perm")

    def __init__(self, group: PcGroup, images: tuple[GroupElement, ...], perm: np.ndarray):
        self.group = group
        self.images = images
        self.perm = perm

    def __call__(self, el: GroupElement) -> GroupElement:
        return self.group.element_at(int(self.perm[self.group.index_of(el)]))

    def spec_text(self) -> str:
        g = self.group
        return ", ".join(
            f"g{i + 1} -> {g.word_str(img)}" for i, img in enumerate(self.images)
        )

    def __repr__(self) -> str:
        return f"GroupAutomorphism({self.spec_text()})"


# ---------------------------------------------------------------------------
# catalog of small test groups

def _w(text: str) -> str:
    return text


_CATALOG: dict[str, dict] = {
    "C2": dict(p=2, m=1, powers={}, comms={}, desc="cyclic of order 2",
               autos=[["g1"]]),
    "C4": dict(p=2, m=2, powers={1: "g2"}, comms={}, desc="cyclic of order 4",
               autos=[["g1 g2", "g2"]]),
    "C8": dict(p=2, m=3, powers={1: "g2", 2: "g3"}, comms={}, desc="cyclic of order 8",
               autos=[["g1 g2 g3", "g2 g3", "g3"], ["g1 g3", "g2", "g3"]]),
    "C3": dict(p=3, m=1, powers={}, comms={}, desc="cyclic of order 3",
               autos=[["g1^2"]]),
    "C9": dict(p=3, m=2, powers={1: "g2"}, comms={}, desc="cyclic of order 9",
               autos=[["g1^2 g2^2", "g2^2"], ["g1 g2", "g2"]]),
    "C27": dict(p=3, m=3, powers={1: "g2", 2: "g3"}, comms={}, desc="cyclic of order 27",
                autos=[["g1^2 g2^2 g3^2", "g2^2 g3^2", "g3^2"], ["g1 g3", "g2", "g3"]]),
    "C5": dict(p=5, m=1, powers={}, comms={}, desc="cyclic of order 5",
               autos=[["g1^2"], ["g1^4"]]),
    "C25": dict(p=5, m=2, powers={1: "g2"}, comms={}, desc="cyclic of order 25",
                autos=[["g1^4 g2^4", "g2^4"], ["g1 g2", "g2"]]),
    "C125": dict(p=5, m=3, powers={1: "g2", 2: "g3"}, comms={}, desc="cyclic of order 125",
                 autos=[["g1^4 g2^4 g3^4", "g2^4 g3^4", "g3^4"], ["g1 g3", "g2", "g3"]]),
    "C2xC2": dict(p=2, m=2, powers={}, comms={}, desc="elementary abelian of order 4",
                  autos=[["g2", "g1"], ["g1 g2", "g2"]]),
    "C3xC3": dict(p=3, m=2, powers={}, comms={}, desc="elementary abelian of order 9",
                  autos=[["g2", "g1"], ["g1 g2", "g2"], ["g1^2", "g2"]]),
    "C5xC5": dict(p=5, m=2, powers={}, comms={}, desc="elementary abelian of order 25",
                  autos=[["g2", "g1"], ["g1 g2", "g2"], ["g1^2", "g2"]]),
    "C2xC2xC2": dict(p=2, m=3, powers={}, comms={}, desc="elementary abelian of order 8",
                     autos=[["g2", "g3", "g1"], ["g1 g2", "g2", "g3"], ["g2", "g1", "g3"]]),
    "C3xC3xC3": dict(p=3, m=3, powers={}, comms={}, desc="elementary abelian of order 27",
                     autos=[["g2", "g3", "g1"], ["g1 g2", "g2", "g3"], ["g1^2", "g2", "g3"]]),
    "C5xC5xC5": dict(p=5, m=3, powers={}, comms={}, desc="elementary abelian of order 125",
                     autos=[["g2", "g3", "g1"], ["g1 g2", "g2", "g3"], ["g1^2", "g2", "g3"]]),
    "C4xC2": dict(p=2, m=3, powers={1: "g3"}, comms={}, desc="C4 x C2",
                  autos=[["g1 g2", "g2", "g3"], ["g1", "g2 g3", "g3"]]),
    "D8": dict(p=2, m=3, powers={2: "g3"}, comms={(2, 1): "g3"}, desc="dihedral of order 8",
               autos=[["g1 g3", "g2", "g3"], ["g1", "g2 g3", "g3"]]),
    "Q8": dict(p=2, m=3, powers={1: "g3", 2: "g3"}, comms={(2, 1): "g3"}, desc="quaternion of order 8",
               autos=[["g2", "g1 g2", "g3"], ["g2 g3", "g1", "g3"]]),
    "D16": dict(p=2, m=4, powers={2: "g3", 3: "g4"}, comms={(2, 1): "g3 g4", (3, 1): "g4"},
                desc="dihedral of order 16",
                autos=[["g1", "g2 g3", "g3 g4", "g4"], ["g1 g3", "g2", "g3", "g4"]]),
    "M16": dict(p=2, m=4, powers={2: "g3", 3: "g4"}, comms={(2, 1): "g4"},
                desc="modular (Iwasawa) group of order 16",
                autos=[["g1", "g2 g3", "g3 g4", "g4"], ["g1 g4", "g2", "g3", "g4"]]),
    "Heis27": dict(p=3, m=3, powers={}, comms={(2, 1): "g3"},
                   desc="Heisenberg group of order 27 (exponent 3)",
                   autos=[["g2", "g1", "g3^2"], ["g1 g3", "g2", "g3"]]),
    "Heis125": dict(p=5, m=3, powers={}, comms={(2, 1): "g3"},
                    desc="Heisenberg group of order 125 (exponent 5)",
                    autos=[["g2", "g1", "g3^4"], ["g1 g3", "g2", "g3"]]),
    "ES27": dict(p=3, m=3, powers={1: "g3"}, comms={(2, 1): "g3"},
                 desc="extraspecial of order 27, exponent 9",
                 autos=[["g1 g3", "g2", "g3"], ["g1", "g2 g3", "g3"]]),
    "ES125": dict(p=5, m=3, powers={1: "g3"}, comms={(2, 1): "g3"},
                  desc="extraspecial of order 125, exponent 25",
                  autos=[["g1 g3", "g2", "g3"], ["g1", "g2 g3", "g3"]]),
}


def catalog_names() -> list[str]:
    return list(_CATALOG)


def catalog_description(name: str) -> str:
    return _CATALOG[name]["desc"]


def catalog(name: str) -> PcGroup:
    """Build a fresh catalog group (construction re-runs the certificate)."""
    try:
        entry = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog group {name!r}; see catalog_names()") from None
    p, m = entry["p"], entry["m"]
    powers = {i: tuple(parse_word_pairs(w, m)) for i, w in entry["powers"].items()}
    comms = {ji: tuple(parse_word_pairs(w, m)) for ji, w in entry["comms"].items()}
    return PcGroup(p, m, powers, comms, name=name, stored_auto_words=entry["autos"])
