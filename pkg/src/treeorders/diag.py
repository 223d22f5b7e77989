"""Promise diagonalization over finite injective words."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .common import DomainError

Word = tuple


def check_word(w: Sequence[int], where: str = "") -> Word:
    w = tuple(w)
    for i, x in enumerate(w):
        if not isinstance(x, int) or x < 0:
            raise DomainError(f"{where}entry {i} of {w} is not a natural")
    if len(set(w)) != len(w):
        seen = set()
        for i, x in enumerate(w):
            if x in seen:
                raise DomainError(f"{where}word {w} repeats {x} at position {i}")
            seen.add(x)
    return w


def is_prefix(u: Word, v: Word) -> bool:
    return len(u) <= len(v) and tuple(v[: len(u)]) == tuple(u)


def lcp_meet(u: Sequence[int], v: Sequence[int]) -> Word:
    """Longest common prefix."""
    k = 0
    while k < min(len(u), len(v)) and u[k] == v[k]:
        k += 1
    return tuple(u[:k])


def verify_antichain(S: Iterable[Sequence[int]]):
    """True when no word is a prefix of another, else a witness ``(u, v)``
    with ``u`` a proper prefix of ``v``."""
    words = sorted({tuple(w) for w in S}, key=lambda w: (len(w), w))
    for i, u in enumerate(words):
        for v in words[i + 1:]:
            if is_prefix(u, v):
                return (u, v)
    return True


@dataclass(frozen=True)
class StageRecord:
    n: int
    word: Word
    promise: int
    fired: bool


@dataclass
class PromiseState:
    words: list = field(default_factory=lambda: [()])
    promises: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    @property
    def final(self) -> Word:
        return self.words[-1]


def _least_free(used: set) -> int:
    x = 0
    while x in used:
        x += 1
    return x


def admissible(A: Iterable[Word], prev: Word, promises: Iterable[int]) -> list[Word]:
    """Members of ``A`` properly extending ``prev`` whose range avoids
    ``promises``, length-lex sorted."""
    banned = set(promises)
    out = [
        w for w in A
        if len(w) > len(prev) and is_prefix(prev, w) and not banned.intersection(w)
    ]
    return sorted(out, key=lambda w: (len(w), w))


def diag_run(family: Sequence[Iterable[Sequence[int]]]) -> PromiseState:
    """Run one stage per member ``A_n`` of ``family``.

    At stage ``n`` take the length-lex least admissible member of ``A_n``;
    failing that, append the least natural outside the range and the
    promises.  The promise ``x_n`` is then the least natural outside
    ``range(f_n)`` and the earlier promises.
    """
    fam = []
    for n, A in enumerate(family, start=1):
        fam.append([check_word(w, f"A_{n}: ") for w in A])
    st = PromiseState()
    for n, A in enumerate(fam, start=1):
        prev = st.words[-1]
        cands = admissible(A, prev, st.promises)
        if cands:
            w, fired = cands[0], True
        else:
            w, fired = prev + (_least_free(set(prev) | set(st.promises)),), False
        x = _least_free(set(w) | set(st.promises))
        st.words.append(w)
        st.promises.append(x)
        st.trace.append(StageRecord(n, w, x, fired))
    return st


def check_state(st: PromiseState, family: Optional[Sequence] = None) -> list[str]:
    """Violated invariants of a run (empty when all hold); with ``family``
    the preference decision of every stage is re-checked exhaustively."""
    out = []
    if st.words[0] != ():
        out.append("f_0 is not empty")
    for n in range(1, len(st.words)):
        u, v = st.words[n - 1], st.words[n]
        if not (len(u) < len(v) and is_prefix(u, v)):
            out.append(f"f_{n - 1} is not a proper prefix of f_{n}")
        if len(set(v)) != len(v):
            out.append(f"f_{n} is not injective")
        if set(v) & set(st.promises[:n]):
            out.append(f"range of f_{n} meets the promises")
    if len(set(st.promises)) != len(st.promises):
        out.append("promises repeat")
    if set(st.final) & set(st.promises):
        out.append("final range meets the promises")
    if family is not None:
        for rec, A in zip(st.trace, family):
            A = [tuple(w) for w in A]
            prev = st.words[rec.n - 1]
            ok = [
                w for w in A
                if len(w) > len(prev) and w[: len(prev)] == prev
                and all(x not in st.promises[: rec.n - 1] for x in w)
            ]
            if rec.fired and rec.word not in A:
                out.append(f"stage {rec.n} fired but f_{rec.n} is not in A_{rec.n}")
            if not rec.fired and ok:
                out.append(f"stage {rec.n} blocked though {ok[0]} was admissible")
    return out
