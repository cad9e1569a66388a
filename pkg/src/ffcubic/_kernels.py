"""Hot loops over GF(q^2) codes.

Polynomials are int64 arrays of element codes, constant term first, with
the degree carried separately (-1 for the zero polynomial).  ``zech`` is the
Zech-logarithm table of the field; its length is Q - 1.  ``digits`` maps a
base-b digit (b = q or Q) to the code of the corresponding canonical element,
which fixes the enumeration order of monic polynomials.

All kernels run under numba when enabled and as plain Python otherwise.
"""
import numpy as np

from ._accel import njit


# ---------------------------------------------------------------- field ops
@njit
def fmul(a, b, qm1):
    if a == 0 or b == 0:
        return 0
    return (a + b - 2) % qm1 + 1


@njit
def fadd(a, b, zech):
    if a == 0:
        return b
    if b == 0:
        return a
    qm1 = zech.shape[0]
    z = zech[(b - a) % qm1]
    if z == 0:
        return 0
    return (a + z - 2) % qm1 + 1


@njit
def fneg(a, qm1):
    if a == 0:
        return 0
    return (a - 1 + qm1 // 2) % qm1 + 1


@njit
def finv(a, qm1):
    return (qm1 - (a - 1)) % qm1 + 1


# ----------------------------------------------------------- polynomial ops
@njit
def pdeg(a, n):
    d = n - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


@njit
def prem(a, da, b, db, zech):
    """a <- a mod b in place; returns the degree of the remainder."""
    qm1 = zech.shape[0]
    inv_lc = finv(b[db], qm1)
    while da >= db:
        c = fneg(fmul(a[da], inv_lc, qm1), qm1)
        shift = da - db
        for i in range(db + 1):
            if b[i] != 0:
                a[shift + i] = fadd(a[shift + i], fmul(c, b[i], qm1), zech)
        a[da] = 0
        da -= 1
        while da >= 0 and a[da] == 0:
            da -= 1
    return da


@njit
def pmul(a, da, b, db, zech, out):
    """out <- a * b; returns degree.  out must hold da + db + 1 entries."""
    qm1 = zech.shape[0]
    if da < 0 or db < 0:
        for i in range(out.shape[0]):
            out[i] = 0
        return -1
    n = da + db + 1
    for i in range(n):
        out[i] = 0
    for i in range(da + 1):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(db + 1):
            if b[j] != 0:
                out[i + j] = fadd(out[i + j], fmul(ai, b[j], qm1), zech)
    return pdeg(out, n)


@njit
def pmulmod(a, da, b, db, f, df, zech, out):
    """out <- a * b mod f (out needs da + db + 1 >= df entries)."""
    d = pmul(a, da, b, db, zech, out)
    if d >= df:
        d = prem(out, d, f, df, zech)
    return d


@njit
def pgcd(a, da, b, db, zech):
    """Monic gcd of a and b.  Returns (coefficient array, degree)."""
    qm1 = zech.shape[0]
    x = a[: da + 1].copy() if da >= 0 else np.zeros(1, np.int64)
    y = b[: db + 1].copy() if db >= 0 else np.zeros(1, np.int64)
    dx, dy = da, db
    while dy >= 0:
        dx = prem(x, dx, y, dy, zech)
        x, y = y, x
        dx, dy = dy, dx
    if dx < 0:
        return x, -1
    inv_lc = finv(x[dx], qm1)
    for i in range(dx + 1):
        x[i] = fmul(x[i], inv_lc, qm1)
    return x, dx


@njit
def ppowmod(a, da, e, f, df, zech):
    """a^e mod f for e >= 0 (e may exceed int64 only via repeated calls)."""
    res = np.zeros(2 * df + 1, np.int64)
    res[0] = 1
    dres = 0
    base = np.zeros(2 * df + 1, np.int64)
    for i in range(da + 1):
        base[i] = a[i]
    dbase = da
    if dbase >= df:
        dbase = prem(base, dbase, f, df, zech)
    tmp = np.zeros(2 * df + 1, np.int64)
    while e > 0:
        if e & 1:
            d = pmulmod(res, dres, base, dbase, f, df, zech, tmp)
            res, tmp = tmp, res
            dres = d
        e >>= 1
        if e > 0:
            d = pmulmod(base, dbase, base, dbase, f, df, zech, tmp)
            base, tmp = tmp, base
            dbase = d
    for i in range(dres + 1, res.shape[0]):
        res[i] = 0
    return res, dres


@njit
def res_log(A, dA, B, dB, zech):
    """Discrete log (mod Q-1) of the resultant Res(A, B); -1 if it vanishes."""
    qm1 = zech.shape[0]
    if dA < 0 or dB < 0:
        return -1
    n = max(dA, dB) + 1
    a = np.zeros(n, np.int64)
    b = np.zeros(n, np.int64)
    for i in range(dA + 1):
        a[i] = A[i]
    for i in range(dB + 1):
        b[i] = B[i]
    acc = 0
    half = qm1 // 2
    while True:
        if dA == 0:
            return (acc + (a[0] - 1) * dB) % qm1
        if dB == 0:
            return (acc + (b[0] - 1) * dA) % qm1
        lcb = b[dB]
        dR = prem(a, dA, b, dB, zech)
        if dR < 0:
            return -1
        # Res(A,B) = (-1)^(dA dB) lc(B)^(dA - dR) Res(B, A mod B)
        if (dA * dB) & 1:
            acc += half
        acc = (acc + (lcb - 1) * (dA - dR)) % qm1
        a, b = b, a
        dA, dB = dB, dR


@njit
def chi_exp(F, dF, a, da, zech, twist):
    """Label k of chi_F(a) = Omega^{-1}(cubic residue), or -1 when chi_F(a) = 0.

    chi_F(a) is the cubic character of Res(F, a) in GF(Q)^*: for monic F the
    resultant is the norm of a mod F, which is what the residue power
    a^((|pi|-1)/3) mod pi reduces to prime by prime.
    """
    lg = res_log(F, dF, a, da, zech)
    if lg < 0:
        return -1
    return (twist * lg) % 3


@njit
def decode_monic(idx, d, base, digits, out):
    """Write the idx-th monic polynomial of degree d (enumeration order) into out."""
    for i in range(d - 1, -1, -1):
        out[i] = digits[idx % base]
        idx //= base
    out[d] = 1


@njit
def decode_poly(idx, n, base, digits, out):
    """Residue number idx: a polynomial of degree < n (not necessarily monic)."""
    for i in range(n - 1, -1, -1):
        out[i] = digits[idx % base]
        idx //= base
    return pdeg(out, n)


# ------------------------------------------------------------- enumeration
@njit
def irreducible_mask(d, digits, zech):
    """Boolean mask over the monic polynomials of degree d: irreducible or not.

    Ben-Or test: f is irreducible iff gcd(f, T^(b^i) - T) = 1 for i <= d/2.
    """
    base = digits.shape[0]
    qm1 = zech.shape[0]
    total = base ** d
    mask = np.zeros(total, np.bool_)
    f = np.zeros(d + 1, np.int64)
    tpoly = np.zeros(2, np.int64)
    tpoly[1] = 1
    neg1 = fneg(1, qm1)
    for idx in range(total):
        decode_monic(idx, d, base, digits, f)
        if d == 1:
            mask[idx] = True
            continue
        if f[0] == 0:
            continue
        h, dh = ppowmod(tpoly, 1, base, f, d, zech)
        ok = True
        for i in range(1, d // 2 + 1):
            if i > 1:
                h, dh = ppowmod(h, dh, base, f, d, zech)
            w = h.copy()
            w[1] = fadd(w[1], neg1, zech)
            dw = pdeg(w, w.shape[0])
            g, dg = pgcd(f, d, w, dw, zech)
            if dg != 0:
                ok = False
                break
        mask[idx] = ok
    return mask


@njit
def frob_poly(f, df, q, qm1, out):
    for i in range(df + 1):
        c = f[i]
        out[i] = 0 if c == 0 else ((c - 1) * q) % qm1 + 1


@njit
def family_status(d, digits, zech, q, int_codes):
    """Classify the monic F of degree d over GF(Q).

    0: not square-free; 1: square-free with gcd(F, F^sigma) = 1;
    2: square-free but sharing a factor with its conjugate.
    """
    base = digits.shape[0]
    qm1 = zech.shape[0]
    p = int_codes.shape[0]
    total = base ** d
    status = np.zeros(total, np.int8)
    f = np.zeros(d + 1, np.int64)
    df_ = np.zeros(d + 1, np.int64)
    fs = np.zeros(d + 1, np.int64)
    for idx in range(total):
        decode_monic(idx, d, base, digits, f)
        for i in range(1, d + 1):
            df_[i - 1] = fmul(int_codes[i % p], f[i], qm1)
        df_[d] = 0
        ddf = pdeg(df_, d)
        if ddf < 0:
            continue
        g, dg = pgcd(f, d, df_, ddf, zech)
        if dg != 0:
            continue
        frob_poly(f, d, q, qm1, fs)
        g, dg = pgcd(f, d, fs, d, zech)
        status[idx] = 1 if dg == 0 else 2
    return status


# ---------------------------------------------------------- character sums
@njit
def zeta3_mul(x, y, e):
    """zeta3^e * (x + y*zeta3) on the basis 1, zeta3 (zeta3^2 = -1 - zeta3)."""
    if e == 0:
        return x, y
    if e == 1:
        return -y, x - y
    return y - x, -x


@njit
def euler_lcoeffs(Fs, d, primes, pdegs, nmax, zech, twist, out):
    """L-polynomial coefficients for many characters chi_F via Euler products.

    Fs: (nF, d+1) monic F over GF(Q).  primes: (nP, D+1) monic irreducibles
    over GF(q) with degrees pdegs (sorted ascending).  out: (nF, nmax+1, 2)
    receives a_n on the basis 1, zeta3.
    """
    nF = Fs.shape[0]
    nP = primes.shape[0]
    for r in range(nF):
        F = Fs[r]
        sx = np.zeros(nmax + 1, np.int64)
        sy = np.zeros(nmax + 1, np.int64)
        sx[0] = 1
        for k in range(nP):
            dp = pdegs[k]
            if dp > nmax:
                break
            e = chi_exp(F, d, primes[k], dp, zech, twist)
            if e < 0:
                continue
            # multiply by 1 / (1 - zeta3^e u^dp)
            for j in range(dp, nmax + 1):
                x, y = zeta3_mul(sx[j - dp], sy[j - dp], e)
                sx[j] += x
                sy[j] += y
        for j in range(nmax + 1):
            out[r, j, 0] = sx[j]
            out[r, j, 1] = sy[j]


@njit
def direct_nsum(Fs, d, nmax, digits_q, zech, twist, out):
    """out[r, n, k] = #{monic N over GF(q), deg N = n : chi_F(N) = zeta3^k}."""
    nF = Fs.shape[0]
    base = digits_q.shape[0]
    N = np.zeros(nmax + 1, np.int64)
    for r in range(nF):
        F = Fs[r]
        for n in range(nmax + 1):
            total = base ** n
            for idx in range(total):
                decode_monic(idx, n, base, digits_q, N)
                e = chi_exp(F, d, N, n, zech, twist)
                if e >= 0:
                    out[r, n, e] += 1


@njit
def hecke_hist(N, dN, maxdeg, digits, zech, twist):
    """Counts of chi_F(N) = zeta3^k over monic F in GF(Q)[T], deg F = d."""
    base = digits.shape[0]
    out = np.zeros((maxdeg + 1, 3), np.int64)
    F = np.zeros(maxdeg + 1, np.int64)
    for d in range(maxdeg + 1):
        total = base ** d
        for idx in range(total):
            decode_monic(idx, d, base, digits, F)
            e = chi_exp(F, d, N, dN, zech, twist)
            if e >= 0:
                out[d, e] += 1
    return out


@njit
def gauss_hist(chi, dchi, f, df, V, dV, rad, drad, digits, zech, trace, twist, p, exps):
    """Histogram of sum_{u mod f} chi(u) psi(res_inf(u V / f)) over zeta_{3p}.

    chi(u) is the cubic character of Res(chi, u) raised to the power
    ``exps`` (1 for the plain character).  Residues run over u mod ``rad``
    (a divisor of f carrying every prime of chi); the inner sum over
    u mod f/rad is |f/rad| or 0 because the additive character is linear.
    Returns (hist, multiplier).
    """
    qm1 = zech.shape[0]
    base = digits.shape[0]
    m = 3 * p
    hist = np.zeros(m, np.int64)
    # lam[j] = coefficient of T^(df-1) in T^j V mod f
    w = np.zeros(max(2 * df + 2, dV + 2), np.int64)
    for i in range(dV + 1):
        w[i] = V[i]
    dw = dV
    if dw >= df:
        dw = prem(w, dw, f, df, zech)
    lam = np.zeros(df, np.int64)
    for j in range(df):
        lam[j] = w[df - 1] if df - 1 <= dw else 0
        # w <- T * w mod f
        for i in range(dw, -1, -1):
            w[i + 1] = w[i]
        w[0] = 0
        if dw >= 0:
            dw += 1
            if dw >= df:
                dw = prem(w, dw, f, df, zech)
    for j in range(df - drad):
        acc = 0
        for i in range(drad + 1):
            acc = fadd(acc, fmul(rad[i], lam[i + j], qm1), zech)
        if acc != 0:
            return hist, 0
    mult = base ** (df - drad)
    r = np.zeros(max(drad, 1), np.int64)
    total = base ** drad
    for idx in range(total):
        dr = decode_poly(idx, drad, base, digits, r)
        if dr < 0:
            continue
        e = chi_exp(chi, dchi, r, dr, zech, twist)
        if e < 0:
            continue
        lv = 0
        for j in range(dr + 1):
            lv = fadd(lv, fmul(r[j], lam[j], qm1), zech)
        k = ((e * exps) % 3) * p + 3 * trace[lv]
        hist[k % m] += 1
    return hist, mult


@njit
def rad_prime_degrees(f, df, base, zech):
    """Number of distinct monic irreducible factors of f in each degree."""
    qm1 = zech.shape[0]
    counts = np.zeros(df + 1, np.int64)
    if df <= 0:
        return counts
    tpoly = np.zeros(2, np.int64)
    tpoly[1] = 1
    neg1 = fneg(1, qm1)
    h, dh = ppowmod(tpoly, 1, 1, f, df, zech)
    for i in range(1, df + 1):
        h, dh = ppowmod(h, dh, base, f, df, zech)
        w = np.zeros(max(dh + 1, 2), np.int64)
        for j in range(dh + 1):
            w[j] = h[j]
        w[1] = fadd(w[1], neg1, zech)
        dw = pdeg(w, w.shape[0])
        if dw < 0:
            g_deg = df
        else:
            g, g_deg = pgcd(f, df, w, dw, zech)
        acc = g_deg
        for j in range(1, i):
            if i % j == 0:
                acc -= j * counts[j]
        counts[i] = acc // i
    return counts
