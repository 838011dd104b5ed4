"""Integer compositions, partitions and the two partial orders used for
triangularity of Koornwinder expansions."""

from itertools import permutations, product


def _check_lengths(mu, lam):
    if len(mu) != len(lam):
        raise ValueError(f"length mismatch: {len(mu)} vs {len(lam)}")


def plus(mu):
    """The partition obtained from ``mu`` by taking absolute values and
    sorting decreasingly."""
    return tuple(sorted((abs(m) for m in mu), reverse=True))


def is_partition(mu):
    return all(m >= 0 for m in mu) and all(
        mu[i] >= mu[i + 1] for i in range(len(mu) - 1))


def dominance_leq(mu, lam):
    """True iff every prefix sum of ``mu - lam`` is non-positive."""
    _check_lengths(mu, lam)
    acc = 0
    for m, l in zip(mu, lam):
        acc += m - l
        if acc > 0:
            return False
    return True


def dominance_lt(mu, lam):
    return tuple(mu) != tuple(lam) and dominance_leq(mu, lam)


def preceq(mu, lam):
    """The order ``mu <= lam`` refined through ``mu+``: either the partitions
    are strictly dominance-ordered or they agree and ``mu <= lam``."""
    _check_lengths(mu, lam)
    mp, lp = plus(mu), plus(lam)
    if mp == lp:
        return dominance_leq(mu, lam)
    return dominance_leq(mp, lp)


def prec(mu, lam):
    return tuple(mu) != tuple(lam) and preceq(mu, lam)


def order_key(mu):
    """A total order key refining ``preceq`` (lexicographic on ``mu+`` then
    on ``mu``); lex order refines dominance on integer vectors."""
    return (plus(mu), tuple(mu))


def box_partitions(m, n):
    """All partitions of length ``n`` dominated by ``(m, ..., m)``, sorted
    by a total order refining dominance (lexicographic, smallest first)."""
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    top = (m,) * n
    out = []

    def rec(prefix, bound):
        if len(prefix) == n:
            if dominance_leq(prefix, top):
                out.append(tuple(prefix))
            return
        for v in range(bound + 1):
            rec(prefix + [v], v)

    # dominance by (m^n) forces mu_1 <= m
    for first in range(m + 1):
        rec([first], first)
    return sorted(out)


def orbit(lam):
    """The W0-orbit of ``lam``: all signed permutations, each listed once."""
    seen = set()
    for perm in set(permutations(lam)):
        for signs in product((1, -1), repeat=len(lam)):
            seen.add(tuple(s * v for s, v in zip(signs, perm)))
    return sorted(seen)


def preceq_basis(lam):
    """All compositions ``mu`` with ``mu preceq lam``, sorted increasingly by
    :func:`order_key`.  ``mu+ <= lam+`` bounds every entry by ``max|lam_i|``,
    so searching that box is exhaustive."""
    m = max((abs(v) for v in lam), default=0)
    n = len(lam)
    cands = set()
    for p in box_partitions(m, n):
        cands.update(orbit(p))
    return sorted((mu for mu in cands if preceq(mu, lam)), key=order_key)


def lambda_of_config(tau, m):
    """The composition ``(+-m)`` attached to an occupation sequence: ``-m``
    on empty sites and ``+m`` on occupied ones."""
    return tuple(m if t else -m for t in tau)
