"""Pure-Python kernels.  Signatures match ``_ckernels.pyx``."""

import cmath


def _square_counts(p):
    # counts[r] = #{y in F_p : y^2 = r}
    counts = [0] * p
    for y in range(p):
        counts[y * y % p] += 1
    return counts


def count_points_fp(a2, a4, a6, p):
    """#E(F_p) for y^2 = x^3 + a2 x^2 + a4 x + a6, projective point included."""
    counts = _square_counts(p)
    total = 1
    for x in range(p):
        total += counts[(((x + a2) * x + a4) * x + a6) % p]
    return total


def count_points_fp2(a2_0, a2_1, a4_0, a4_1, a6_0, a6_1, p, d0, d1):
    """#E(F_{p^2}) over F_p[t]/(t^2 - d1 t - d0); coefficients given as (c0, c1) pairs."""
    counts = _square_counts(p)
    # for z != 0 in F_{p^2}, #{y : y^2 = z} = 1 + (N(z)/p) = counts[N(z)]
    total = 1
    for xb in range(p):
        for xa in range(p):
            # r = ((x + a2) x + a4) x + a6 with (u + v t)(xa + xb t) expanded
            u, v = (xa + a2_0) % p, (xb + a2_1) % p
            u, v = (u * xa + v * xb * d0 + a4_0) % p, (u * xb + v * xa + v * xb * d1 + a4_1) % p
            u, v = (u * xa + v * xb * d0 + a6_0) % p, (u * xb + v * xa + v * xb * d1 + a6_1) % p
            if u == 0 and v == 0:
                total += 1
            else:
                nrm = (u * u + u * v * d1 - v * v * d0) % p
                total += counts[nrm]
    return total


def dirichlet_partial_sum(values, sre, sim, n_max):
    """Sum_{n <= n_max} values[n mod N] * n^(-s) with N = len(values)."""
    N = len(values)
    s = complex(sre, sim)
    total = 0j
    for n in range(1, n_max + 1):
        v = values[n % N]
        if v:
            total += v * cmath.exp(-s * cmath.log(n))
    return total
