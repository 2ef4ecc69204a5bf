"""Pure-numpy potential-matrix assembly (used when the extension is absent).

Summing the two delta lines, each T integral pair collapses to

    U(p, q) = T+(p, q) + T-(p, q)
            = (sin(q pi c) - sin(p pi c)) / ((p - q) pi)
              - (sin(q pi c) + sin(p pi c)) / ((p + q) pi)

for p + q even (and 0 for p + q odd), with a vanishing denominator replaced
by (1 - c) cos(q pi c).  Only tables of sin(j pi c), cos(j pi c) are needed.
"""

import numpy as np

ROW_CHUNK = 256


def _u(p, q, sn, cs, off, gap):
    sp = sn[p + off]
    sq = sn[q + off]
    cq = cs[q + off]
    dm = p - q
    dp = p + q
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = np.where(dm == 0, gap * cq, (sq - sp) / (dm * np.pi))
        t2 = np.where(dp == 0, gap * cq, -(sq + sp) / (dp * np.pi))
    return np.where(dp % 2 == 0, t1 + t2, 0.0)


def _s(a, ap, b, bp, sn, cs, off, gap):
    return (_u(a - ap, b - bp, sn, cs, off, gap) - _u(a - ap, b + bp, sn, cs, off, gap)
            - _u(a + ap, b - bp, sn, cs, off, gap) + _u(a + ap, b + bp, sn, cs, off, gap))


def potential_matrix(ns, ms, sigma, c, sn, cs, off):
    size = len(ns)
    gap = 1.0 - c
    out = np.empty((size, size))
    n2 = ns[None, :]
    m2 = ms[None, :]
    d2 = np.where(ns == ms, 2.0, 1.0)[None, :]
    for start in range(0, size, ROW_CHUNK):
        n = ns[start:start + ROW_CHUNK, None]
        m = ms[start:start + ROW_CHUNK, None]
        d1 = np.where(n == m, 2.0, 1.0)
        tot = (_s(n, n2, m, m2, sn, cs, off, gap)
               + sigma * _s(m, n2, m2, n, sn, cs, off, gap)
               + sigma * _s(m2, n, m, n2, sn, cs, off, gap)
               + _s(m, m2, n, n2, sn, cs, off, gap))
        out[start:start + ROW_CHUNK] = tot / (2.0 * np.sqrt(d1 * d2))
    # mirror the upper triangle so the result is exactly symmetric
    iu = np.triu_indices(size, 1)
    out[(iu[1], iu[0])] = out[iu]
    return out


def potential_column(ns, ms, sigma, c, sn, cs, off, col):
    """Column ``col`` of the potential matrix without building the rest."""
    gap = 1.0 - c
    n, m = ns, ms
    n2, m2 = ns[col], ms[col]
    tot = (_s(n, n2, m, m2, sn, cs, off, gap)
           + sigma * _s(m, n2, m2, n, sn, cs, off, gap)
           + sigma * _s(m2, n, m, n2, sn, cs, off, gap)
           + _s(m, m2, n, n2, sn, cs, off, gap))
    d1 = np.where(n == m, 2.0, 1.0)
    d2 = 2.0 if n2 == m2 else 1.0
    return tot / (2.0 * np.sqrt(d1 * d2))
