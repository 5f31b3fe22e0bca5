"""Pure-Python hot loops.  ``_ckernels.pyx`` mirrors these signatures."""

from itertools import permutations, product


def _signed_perms(dim):
    out = []
    for perm in permutations(range(1, dim + 1)):
        inv = sum(1 for a in range(dim) for b in range(a + 1, dim) if perm[a] > perm[b])
        out.append((perm, -1 if inv % 2 else 1))
    return out


def block_terms(blocks, dim, total):
    """Nonzero terms of a product of permutation symbols.

    ``blocks`` lists, per symbol, the 1-based slots it reads in order.  Returns
    ``[(assignment, sign), ...]`` where ``assignment`` is a 1-based tuple of
    length ``total``; the order is lexicographic in the per-block choices.
    """
    signed = _signed_perms(dim)
    out = []
    base = [0] * total
    for choice in product(signed, repeat=len(blocks)):
        sign = 1
        for slots, (perm, s) in zip(blocks, choice):
            sign *= s
            for slot, value in zip(slots, perm):
                base[slot - 1] = value
        out.append((tuple(base), sign))
    return out


def contract_terms(v_terms, w_terms, n, k, r):
    """Pair v-assignments with w-assignments into degree-r monomials.

    The variable b^a_ij has 0-based index ``(a-1)*n*n + (i-1)*n + (j-1)``; a
    monomial is the sorted tuple of its variable indices.  Returns a dict of
    nonzero integer coefficients.
    """
    nn = n * n
    acc = {}
    for a, sa in v_terms:
        pair_idx = [(a[2 * t] - 1) * n + (a[2 * t + 1] - 1) for t in range(r)]
        for b, sb in w_terms:
            key = tuple(sorted((b[t] - 1) * nn + pair_idx[t] for t in range(r)))
            acc[key] = acc.get(key, 0) + sa * sb
    return {key: c for key, c in acc.items() if c}
