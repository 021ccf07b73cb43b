"""Pure-Python backtracking kernel for solution-free colouring search.

The compiled extension module exposes an identical ``search`` function; the
backend module picks whichever is importable.
"""

FOUND = 0
REFUTED = 1
EXHAUSTED = 2


def search(n, r, con_start, con_cnt, con_off, con_len, elems, budget):
    """Colour 1..n with colours 1..r avoiding the given constraints.

    A constraint t belongs to the integer con-owner whose assignment triggers
    it: when value m is assigned colour c, constraints con_start[m] ..
    con_start[m]+con_cnt[m]-1 are checked, and a conflict occurs when every
    listed element (all < m) already has colour c.  An empty element list is
    an always-on conflict.  Symmetry is broken by allowing at position m only
    colours up to one more than the maximum used so far.

    Returns (status, colours or None, nodes).
    """
    col = [0] * (n + 1)
    max_used = [0] * (n + 2)
    next_try = [1] * (n + 2)
    pos = 1
    nodes = 0
    while True:
        if pos > n:
            return FOUND, col[1:], nodes
        c = next_try[pos]
        if c > r or c > max_used[pos] + 1:
            pos -= 1
            if pos == 0:
                return REFUTED, None, nodes
            col[pos] = 0
            continue
        next_try[pos] = c + 1
        nodes += 1
        if nodes > budget:
            return EXHAUSTED, None, nodes
        ok = True
        for t in range(con_start[pos], con_start[pos] + con_cnt[pos]):
            conflict = True
            for j in range(con_off[t], con_off[t] + con_len[t]):
                if col[elems[j]] != c:
                    conflict = False
                    break
            if conflict:
                ok = False
                break
        if ok:
            col[pos] = c
            max_used[pos + 1] = max_used[pos] if max_used[pos] >= c else c
            next_try[pos + 1] = 1
            pos += 1
