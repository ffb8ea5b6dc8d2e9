"""Generate a table of the first N nontrivial zeta zeros (imaginary parts).

Zeros 1..1000 are taken from the mpmath-produced file given as SEED (one zero
per line). Zeros above that are located with a vectorised Riemann-Siegel
evaluation of Z(t) including the C0..C4 correction terms, bracketed on a
sample grid tied to Gram points and refined by the Illinois method.

Completeness is checked at every good Gram point g_n ((-1)^n Z(g_n) > 0):
the number of zeros found below g_n must equal n + 1. A random sample of
zeros is compared against mpmath.zetazero.

Usage: python3 scripts/gen_zeros.py SEED N OUT
"""
import sys

import mpmath
import numpy as np

TWO_PI = 2.0 * np.pi


def theta(t):
    t = np.asarray(t, dtype=float)
    return (
        0.5 * t * np.log(t / TWO_PI)
        - 0.5 * t
        - np.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
        + 31.0 / (80640.0 * t**5)
    )


def theta_prime(t):
    return 0.5 * np.log(t / TWO_PI)


def rs_coefficients(nodes=64):
    """Chebyshev fits on [0, 1] of the Riemann-Siegel remainder terms C0..C4."""
    mpmath.mp.dps = 60
    pi = mpmath.pi

    def psi(p):
        return mpmath.cos(2 * pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * pi * p)

    xs = np.cos(np.pi * (np.arange(nodes) + 0.5) / nodes) * 0.5 + 0.5
    cs = [[], [], [], [], []]
    for x in xs:
        d = mpmath.taylor(psi, mpmath.mpf(float(x)), 12)
        der = [d[k] * mpmath.factorial(k) for k in range(13)]
        c0 = der[0]
        c1 = -der[3] / (96 * pi**2)
        c2 = der[2] / (64 * pi**2) + der[6] / (18432 * pi**4)
        c3 = -der[1] / (64 * pi**2) - der[5] / (3840 * pi**4) - der[9] / (5308416 * pi**6)
        c4 = (
            der[0] / (128 * pi**2)
            + 19 * der[4] / (24576 * pi**4)
            + 11 * der[8] / (5898240 * pi**6)
            + der[12] / (2038431744 * pi**8)
        )
        for k, c in enumerate((c0, c1, c2, c3, c4)):
            cs[k].append(float(c))
    fits = []
    for k in range(5):
        fits.append(np.polynomial.chebyshev.chebfit(2.0 * xs - 1.0, np.array(cs[k]), nodes - 1))
    return fits


def make_z(fits):
    def z(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        tau = np.sqrt(t / TWO_PI)
        n_max = np.floor(tau).astype(np.int64)
        p = tau - n_max
        th = theta(t)
        total = np.zeros_like(t)
        for n in range(1, int(n_max.max()) + 1):
            mask = n <= n_max
            total += np.where(mask, np.cos(th - t * np.log(n)) / np.sqrt(n), 0.0)
        total *= 2.0
        a = 1.0 / tau
        x = 2.0 * p - 1.0
        corr = np.zeros_like(t)
        apow = np.ones_like(t)
        for k in range(5):
            corr += apow * np.polynomial.chebyshev.chebval(x, fits[k])
            apow = apow * a
        sign = np.where((n_max - 1) % 2 == 0, 1.0, -1.0)
        return total + sign * np.sqrt(a) * corr

    return z


def gram_point(n, guess):
    g = guess
    for _ in range(50):
        step = (theta(g) - n * np.pi) / theta_prime(g)
        g = g - step
        if abs(step) < 1e-12:
            break
    return float(g)


def illinois(z, lo, hi, zlo, zhi, iters=60):
    """Vectorised Illinois root refinement on brackets with zlo * zhi < 0."""
    lo = lo.copy()
    hi = hi.copy()
    zlo = zlo.copy()
    zhi = zhi.copy()
    side = np.zeros_like(lo, dtype=int)
    for _ in range(iters):
        mid = (lo * zhi - hi * zlo) / (zhi - zlo)
        zm = z(mid)
        left = np.sign(zm) == np.sign(zlo)
        # replace lo
        lo = np.where(left, mid, lo)
        zlo_new = np.where(left, zm, zlo)
        zhi = np.where(left & (side == 1), zhi * 0.5, zhi)
        # replace hi
        hi = np.where(~left, mid, hi)
        zhi = np.where(~left, zm, zhi)
        zlo = np.where(~left & (side == -1), zlo_new * 0.5, zlo_new)
        side = np.where(left, 1, -1)
        if np.max(hi - lo) < 1e-11:
            break
    return 0.5 * (lo + hi)


def main():
    seed_path, n_total, out_path = sys.argv[1], int(sys.argv[2]), sys.argv[3]
    seed = [float(line) for line in open(seed_path) if line.strip()]
    mpmath.mp.dps = 25
    n_seed = len(seed)
    next_zero = float(mpmath.zetazero(n_seed + 1).imag)
    t0 = 0.5 * (seed[-1] + next_zero)

    fits = rs_coefficients()
    z = make_z(fits)
    mpmath.mp.dps = 20
    for t in (1500.0, 20000.0, 74000.3):
        err = abs(z(t)[0] - float(mpmath.siegelz(t)))
        print(f"Z({t}) error vs mpmath: {err:.2e}", file=sys.stderr)

    # Gram points from just below t0 to beyond the last wanted zero.
    n0 = int(np.floor(theta(t0) / np.pi))
    grams = []
    g = gram_point(n0, t0)
    n = n0
    target = n_total + 5
    while True:
        grams.append((n, g))
        if n + 1 >= target + 2:
            break
        n += 1
        g = gram_point(n, g + np.pi / theta_prime(g))
    gram_idx = np.array([k for k, _ in grams])
    gram_t = np.array([t for _, t in grams])

    def locate(a, b, samples):
        ts = np.linspace(a, b, samples + 1)
        vals = z(ts)
        s = np.sign(vals)
        idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
        return ts[idx], ts[idx + 1], vals[idx], vals[idx + 1]

    zeros = []
    chunk = 2000
    bounds = [t0] + [t for t in gram_t if t > t0]
    density = 16
    los, his, zlos, zhis = [], [], [], []
    for i in range(0, len(bounds) - 1, chunk):
        seg = bounds[i : i + chunk + 1]
        ts = np.concatenate(
            [np.linspace(a, b, density, endpoint=False) for a, b in zip(seg[:-1], seg[1:])]
            + [np.array([seg[-1]])]
        )
        vals = z(ts)
        s = np.sign(vals)
        idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
        los.append(ts[idx])
        his.append(ts[idx + 1])
        zlos.append(vals[idx])
        zhis.append(vals[idx + 1])
    lo = np.concatenate(los)
    hi = np.concatenate(his)
    roots = illinois(z, lo, hi, np.concatenate(zlos), np.concatenate(zhis))
    roots = np.sort(roots)

    zg = z(gram_t)
    good = np.nonzero((((-1.0) ** gram_idx) * zg > 0) & (gram_t > t0))[0]

    def check(roots):
        """Pairs of consecutive good Gram points whose zero count is wrong."""
        counts = np.searchsorted(roots, gram_t[good], side="right")
        found = np.diff(counts)
        expected = np.diff(gram_idx[good])
        bad = np.nonzero(found != expected)[0]
        return [(good[k], good[k + 1]) for k in bad]

    for attempt in range(4):
        bad = check(roots)
        if not bad:
            break
        print(f"refining {len(bad)} Gram blocks (attempt {attempt})", file=sys.stderr)
        for a, b in bad:
            a0, b0 = gram_t[a], gram_t[b]
            l, h, zl, zh = locate(a0, b0, 4096 * (attempt + 1) * (b - a))
            r = illinois(z, l, h, zl, zh)
            keep = roots[(roots <= a0) | (roots > b0)]
            roots = np.sort(np.concatenate([keep, r]))
    bad = check(roots)
    if bad:
        raise SystemExit(f"count mismatch in {len(bad)} Gram blocks")
    # the first good Gram point anchors the absolute count
    first = good[0]
    below = len(seed) + np.searchsorted(roots, gram_t[first], side="right")
    if below != gram_idx[first] + 1:
        raise SystemExit("absolute count mismatch at the first good Gram point")

    all_zeros = np.concatenate([np.array(seed), roots])[:n_total]
    if len(all_zeros) < n_total:
        raise SystemExit("not enough zeros")
    gaps = np.diff(all_zeros)
    assert np.all(gaps > 0)

    mpmath.mp.dps = 20
    rng = np.random.default_rng(7)
    for k in sorted(set([n_seed + 1, n_total] + list(rng.integers(n_seed + 1, n_total, 4)))):
        ref = float(mpmath.zetazero(int(k)).imag)
        print(f"zero {k}: {all_zeros[k - 1]:.12f} ref {ref:.12f} diff {abs(all_zeros[k-1]-ref):.1e}",
              file=sys.stderr)

    with open(out_path, "w") as out:
        for g in all_zeros:
            out.write(f"{g:.12f}\n")


if __name__ == "__main__":
    main()
