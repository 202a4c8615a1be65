"""Independent arbitrary-precision reference computations.

Nothing here imports evobench; every statistic is evaluated straight from its
textbook formula with mpmath at 60 significant digits.
"""

from itertools import combinations

import mpmath as mp

mp.mp.dps = 60


def mean_var(values):
    xs = [mp.mpf(v) for v in values]
    n = len(xs)
    mean = mp.fsum(xs) / n
    var = mp.fsum((x - mean) ** 2 for x in xs) / (n - 1)
    return mean, var


def f_sf(f, df1, df2):
    f, df1, df2 = mp.mpf(f), mp.mpf(df1), mp.mpf(df2)
    x = df2 / (df2 + df1 * f)
    return mp.betainc(df2 / 2, df1 / 2, 0, x, regularized=True)


def f_cdf(f, df1, df2):
    return 1 - f_sf(f, df1, df2)


def t_two_sided(t, df):
    t, df = mp.mpf(t), mp.mpf(df)
    return mp.betainc(df / 2, mp.mpf(1) / 2, 0, df / (df + t * t), regularized=True)


def anova(groups):
    all_values = [mp.mpf(v) for g in groups for v in g]
    n_total = len(all_values)
    k = len(groups)
    grand = mp.fsum(all_values) / n_total
    ssb = mp.mpf(0)
    ssw = mp.mpf(0)
    for g in groups:
        m, _ = mean_var(g)
        ssb += len(g) * (m - grand) ** 2
        ssw += mp.fsum((mp.mpf(v) - m) ** 2 for v in g)
    df1, df2 = k - 1, n_total - k
    f = (ssb / df1) / (ssw / df2)
    return f, f_sf(f, df1, df2), df1, df2


def pooled_t(a, b):
    ma, va = mean_var(a)
    mb, vb = mean_var(b)
    na, nb = len(a), len(b)
    df = na + nb - 2
    sp = ((na - 1) * va + (nb - 1) * vb) / df
    t = (ma - mb) / mp.sqrt(sp * (mp.mpf(1) / na + mp.mpf(1) / nb))
    return t, df, t_two_sided(t, df)


def welch_t(a, b):
    ma, va = mean_var(a)
    mb, vb = mean_var(b)
    na, nb = len(a), len(b)
    qa, qb = va / na, vb / nb
    t = (ma - mb) / mp.sqrt(qa + qb)
    df = (qa + qb) ** 2 / (qa**2 / (na - 1) + qb**2 / (nb - 1))
    return t, df, t_two_sided(t, df)


def f_critical(q, df1, df2):
    """Quantile of the F distribution by plain bisection on the mpmath CDF."""
    lo, hi = mp.mpf(0), mp.mpf(1)
    while f_cdf(hi, df1, df2) < q:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if f_cdf(mid, df1, df2) < q:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def variance_ratio(a, b):
    _, va = mean_var(a)
    _, vb = mean_var(b)
    if vb > va:
        return vb / va, len(b) - 1, len(a) - 1
    return va / vb, len(a) - 1, len(b) - 1


def schaffer_f6(x, y):
    x, y = mp.mpf(x), mp.mpf(y)
    r2 = x * x + y * y
    return mp.mpf("0.5") + (mp.sin(mp.sqrt(r2)) ** 2 - mp.mpf("0.5")) / (1 + mp.mpf("0.001") * r2) ** 2


def tournament_win_probabilities(fitnesses):
    """Exact selection probability per index under distinct-pair binary tournaments."""
    size = len(fitnesses)
    pairs = list(combinations(range(size), 2))
    probs = [mp.mpf(0)] * size
    for i, j in pairs:
        if fitnesses[i] > fitnesses[j]:
            probs[i] += 1
        elif fitnesses[j] > fitnesses[i]:
            probs[j] += 1
        else:
            probs[i] += mp.mpf(1) / 2
            probs[j] += mp.mpf(1) / 2
    return [float(p / len(pairs)) for p in probs]
