"""Braid words: an independent check on the bookkeeping of the tiling moves.

A word in B_n is a tuple of nonzero integers; ``i`` stands for sigma_i and
``-i`` for its inverse.  Text form is a header line ``n=<strands>`` followed
by the letters separated by spaces.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator

WORD_MOVES = ("conjugate", "stabilize", "destabilize", "exchange")


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise WordError(f"need at least one strand, got {self.strands}")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise WordError(f"letter {x} out of range for {self.strands} strands")

    def text(self) -> str:
        return f"n={self.strands}\n{' '.join(str(x) for x in self.letters)}\n"

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        tokens = text.split()
        if not tokens or not tokens[0].startswith("n="):
            raise WordError("word text must start with n=<strands>")
        try:
            n = int(tokens[0][2:])
            letters = tuple(int(x) for x in tokens[1:])
        except ValueError as exc:
            raise WordError(f"bad word text: {exc}") from None
        return cls(n, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return f"n={self.strands}: " + (" ".join(str(x) for x in self.letters) or "(empty)")


@dataclass(frozen=True)
class ClosureInvariants:
    strands: int
    exponent_sum: int
    permutation: tuple[int, ...]  # image of each strand, 0-based
    component_count: int


def closure_invariants(w: BraidWord) -> ClosureInvariants:
    perm = list(range(w.strands))
    for x in w.letters:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, cycles = set(), 0
    for s in range(w.strands):
        if s not in seen:
            cycles += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
    return ClosureInvariants(w.strands, sum(1 if x > 0 else -1 for x in w.letters), tuple(perm), cycles)


def free_reduce(letters) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def reduced(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, free_reduce(w.letters))


# moves -------------------------------------------------------------------------


def conjugate(w: BraidWord, g: int) -> BraidWord:
    """g^-1 w g, freely reduced."""
    return BraidWord(w.strands, free_reduce((-g,) + w.letters + (g,)))


def stabilize(w: BraidWord, sign: int = 1) -> BraidWord:
    n = w.strands
    return BraidWord(n + 1, w.letters + ((n if sign > 0 else -n),))


def destabilize(w: BraidWord) -> BraidWord:
    n = w.strands
    if n < 2 or not w.letters or abs(w.letters[-1]) != n - 1:
        raise WordError(f"destabilize needs a final letter +-{n - 1}")
    if any(abs(x) == n - 1 for x in w.letters[:-1]):
        raise WordError(f"strand {n} is used before the final letter")
    return BraidWord(n - 1, w.letters[:-1])


def exchange(w: BraidWord, split: int) -> BraidWord:
    """b1 s^e b2 s^-e -> b1 s^-e b2 s^e for s = sigma_{n-1}, with b1, b2 avoiding s.

    ``split`` is the position of the first s^e.
    """
    top = w.strands - 1
    ls = w.letters
    if top < 1 or not 0 <= split < len(ls) - 1:
        raise WordError(f"no exchange split at {split}")
    marks = [k for k, x in enumerate(ls) if abs(x) == top]
    if marks != [split, len(ls) - 1] or ls[split] != -ls[-1]:
        raise WordError(f"word does not have the exchange shape at split {split}")
    return BraidWord(w.strands, ls[:split] + (-ls[split],) + ls[split + 1 : -1] + (-ls[-1],))


def apply_word_move(w: BraidWord, kind: str, arg: int | None = None) -> BraidWord:
    if kind == "conjugate":
        return conjugate(w, arg if arg is not None else 1)
    if kind == "stabilize":
        return stabilize(w, arg if arg is not None else 1)
    if kind == "destabilize":
        return destabilize(w)
    if kind == "exchange":
        if arg is None:
            raise WordError("exchange needs a split position")
        return exchange(w, arg)
    raise WordError(f"unknown word move {kind!r}; use one of {WORD_MOVES}")


# search ------------------------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    max_strands: int = 4
    max_length: int = 12
    max_nodes: int = 10**6


def _relations(ls: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Words equal to ``ls`` in the braid group by one relation, plus cyclic shifts."""
    m = len(ls)
    for k in range(1, m):
        yield ls[k:] + ls[:k]
    for k in range(m - 1):
        a, b = ls[k], ls[k + 1]
        if abs(abs(a) - abs(b)) >= 2:
            yield ls[:k] + (b, a) + ls[k + 2 :]
    for k in range(m - 2):
        a, b, c = ls[k : k + 3]
        if abs(abs(a) - abs(b)) != 1:
            continue
        if a == c and (a > 0) == (b > 0):
            yield ls[:k] + (b, a, b) + ls[k + 3 :]
        elif a == -c:
            # s_i s_j s_i^-1 = s_j^-1 s_i s_j
            yield ls[:k] + (-b, a, b) + ls[k + 3 :]


def _neighbours(w: BraidWord, moves: bool) -> Iterator[BraidWord]:
    n = w.strands
    for ls in _relations(w.letters):
        yield BraidWord(n, free_reduce(ls))
    for g in range(1, n):
        for s in (g, -g):
            yield conjugate(w, s)
    if moves:
        try:
            yield reduced(destabilize(w))
        except WordError:
            pass
        for k in range(len(w.letters) - 1):
            try:
                yield exchange(w, k)
            except WordError:
                pass


@dataclass(frozen=True)
class SearchResult:
    found: BraidWord | None
    nodes: int
    exhausted: bool  # True if the whole space within budget was explored

    @property
    def status(self) -> str:
        return "certified" if self.found is not None else "inconclusive"


def search(
    w: BraidWord, goal: Callable[[BraidWord], bool], budget: Budget = Budget(), moves: bool = True
) -> SearchResult:
    """Breadth-first search from ``w`` for a word satisfying ``goal``.

    Steps are free reduction, single braid relations, cyclic shifts, conjugation
    by one generator and, if ``moves``, destabilization and exchange.  Every
    step keeps the closed braid's link type, so a hit is a proof.
    """
    start = reduced(w)
    seen = {start}
    queue = deque([start])
    nodes = 0
    while queue:
        cur = queue.popleft()
        nodes += 1
        if goal(cur):
            return SearchResult(cur, nodes, False)
        if nodes >= budget.max_nodes:
            return SearchResult(None, nodes, False)
        for nxt in _neighbours(cur, moves):
            if nxt.strands > budget.max_strands or len(nxt) > budget.max_length or nxt in seen:
                continue
            seen.add(nxt)
            queue.append(nxt)
    return SearchResult(None, nodes, True)


def certify_trivial(w: BraidWord, budget: Budget = Budget()) -> SearchResult:
    """Certified iff the closure is reachable to the empty word on as many strands
    as it has components, i.e. the trivial link.  Never a false positive."""
    if w.strands > budget.max_strands or len(w) > budget.max_length:
        return SearchResult(None, 0, False)
    r = closure_invariants(w).component_count
    return search(w, lambda x: not x.letters and x.strands == r, budget)


def destabilize_with_sign(w: BraidWord, sign: int, budget: Budget = Budget()) -> BraidWord | None:
    """Rewrite ``w`` by relations and conjugation until a destabilization removing
    a letter of the given sign applies, and apply it."""

    def ready(x: BraidWord) -> bool:
        if not x.letters or (x.letters[-1] > 0) != (sign > 0):
            return False
        try:
            destabilize(x)
        except WordError:
            return False
        return True

    hit = search(w, ready, budget, moves=False).found
    return None if hit is None else reduced(destabilize(hit))


def example_word() -> BraidWord:
    """The closed 4-braid of the worked unknot example: sigma2 sigma3 sigma2 sigma1 sigma3^-1."""
    return BraidWord(4, (2, 3, 2, 1, -3))
