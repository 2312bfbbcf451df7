"""Independent reference implementations used as test oracles.

Everything here is written straight from the definitions, without
touching the library's verification or enumeration code paths.
"""

from itertools import product


def reference_verify(G, images, weight=1):
    """Check the defining identity over every pair by direct table walks.

    Returns None when valid, else the first failing pair.
    """
    t, inv = G.table, G.inverses
    B = list(images)
    for g in G.elements():
        for h in G.elements():
            if weight == 1:
                lhs = t[B[g]][B[h]]
                arg = t[t[t[g][B[g]]][h]][inv[B[g]]]
            else:
                lhs = t[B[g]][B[h]]
                arg = t[t[t[B[g]][h]][inv[B[g]]]][g]
            if lhs != B[arg]:
                return (g, h)
    return None


def exhaustive_census(G, weight=1):
    """All valid operators by trying every self-map, identity unconstrained.

    Only usable for tiny groups; doubles as a check that validity forces
    the identity to map to itself.
    """
    n = G.order
    out = []
    for images in product(range(n), repeat=n):
        if reference_verify(G, images, weight) is None:
            out.append(images)
    return sorted(out)


def naive_is_subgroup(G, elems):
    s = set(elems)
    if G.identity not in s:
        return False
    return all(
        G.table[a][b] in s and G.inverses[a] in s for a in s for b in s
    )


def random_images(G, rng, fix_identity=True):
    imgs = [rng.randrange(G.order) for _ in range(G.order)]
    if fix_identity:
        imgs[G.identity] = G.identity
    return imgs
