"""Pure-Python backtracking kernel.

Counts assignments of positions 0..n-1 to target vertices where position i
may take any vertex in ``domains[i]`` (a bitmask) that is adjacent in the
target to the vertices already chosen for the positions in ``back[i]``.
"""


def count_assignments(domains, back, adj, injective=False):
    n = len(domains)
    if n == 0:
        return 1
    assign = [0] * n
    last = n - 1

    def rec(i, used):
        cand = domains[i]
        for j in back[i]:
            cand &= adj[assign[j]]
        if injective:
            cand &= ~used
        if i == last:
            return bin(cand).count("1")
        total = 0
        while cand:
            low = cand & -cand
            assign[i] = low.bit_length() - 1
            total += rec(i + 1, used | low)
            cand ^= low
        return total

    return rec(0, 0)


def iter_assignments(domains, back, adj, injective=False):
    """Yield every valid assignment as a list of target indices, in
    lexicographic order of the positions."""
    n = len(domains)
    if n == 0:
        yield []
        return
    assign = [0] * n

    def rec(i, used):
        cand = domains[i]
        for j in back[i]:
            cand &= adj[assign[j]]
        if injective:
            cand &= ~used
        while cand:
            low = cand & -cand
            assign[i] = low.bit_length() - 1
            if i == n - 1:
                yield list(assign)
            else:
                yield from rec(i + 1, used | low)
            cand ^= low

    yield from rec(0, 0)
