"""Pure-Python rewriting kernel (reference implementation and fallback)."""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

Rule = Tuple[bytes, bytes, int]
State = Tuple[int, bytes, int, int]  # (delta exponent, parent word, rule index, position)


def expand_level(
    frontier: Sequence[bytes],
    rules: Sequence[Rule],
    max_len: int,
    seen: Dict[bytes, State],
) -> List[bytes]:
    """Expand one breadth-first level.

    Every single-rule rewrite of a frontier word that is at most ``max_len`` long and not yet
    in ``seen`` is recorded there as ``(exp, parent, rule, pos)`` and returned, in the order
    (frontier word, rule, position).
    """
    out: List[bytes] = []
    for w in frontier:
        exp = seen[w][0]
        n = len(w)
        for ri, (pat, rep, shift) in enumerate(rules):
            m = len(pat)
            if n - m + len(rep) > max_len:
                continue
            if m == 0:
                positions = range(n + 1)
            else:
                positions = []
                p = w.find(pat)
                while p >= 0:
                    positions.append(p)
                    p = w.find(pat, p + 1)
            for p in positions:
                new = w[:p] + rep + w[p + m:]
                if new not in seen:
                    seen[new] = (exp + shift, w, ri, p)
                    out.append(new)
    return out


def rewrite_neighbors(word: bytes, rules: Sequence[Rule], max_len: int) -> List[Tuple[bytes, int, int]]:
    """All single-rule rewrites of ``word`` as (new word, rule index, position)."""
    out = []
    n = len(word)
    for ri, (pat, rep, _shift) in enumerate(rules):
        m = len(pat)
        if n - m + len(rep) > max_len:
            continue
        for p in range(n - m + 1):
            if word[p:p + m] == pat:
                out.append((word[:p] + rep + word[p + m:], ri, p))
    return out
