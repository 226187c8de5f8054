"""Golden-section search on a closed interval."""
import math

INVPHI = (math.sqrt(5) - 1) / 2


def golden_section(f, lo, hi, tol=1e-8, max_iter=500):
    """Minimise a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, fx, iterations)``; the endpoints are compared with the
    interior estimate so a minimum sitting on the boundary is recovered.
    """
    a, b = float(lo), float(hi)
    x1 = b - INVPHI * (b - a)
    x2 = a + INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while b - a > tol and it < max_iter:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INVPHI * (b - a)
            f2 = f(x2)
        it += 1
    candidates = [(f1, x1), (f2, x2), (f(lo), float(lo)), (f(hi), float(hi))]
    mid = 0.5 * (a + b)
    candidates.append((f(mid), mid))
    fx, x = min(candidates)
    return x, fx, it
