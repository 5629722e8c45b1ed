"""Float reference for the k = 2 overlap fixture.

alpha_1 = sqrt 2, gamma_1 = 0, gamma = 0, I = [0, 1], a coprime to n,
psi(n) = 1 / (4 n log(n)^2) with log = max(ln, 1), X = 2000.
"""
import math
import sys
from decimal import Decimal, getcontext

getcontext().prec = 60
SQRT2 = Decimal(2).sqrt()


def dist(n):
    x = n * SQRT2
    f = x - int(x)
    return float(min(f, 1 - f))


def plog(n):
    return max(math.log(n), 1.0)


def sets(x):
    out = []
    for n in range(1, x + 1):
        psi = 1.0 / (4 * n * plog(n) ** 2)
        big = psi / dist(n)
        iv = []
        for a in range(0, n + 1):
            if math.gcd(a, n) != 1:
                continue
            lo, hi = max((a - big) / n, 0.0), min((a + big) / n, 1.0)
            if lo < hi:
                if iv and lo <= iv[-1][1]:
                    iv[-1][1] = max(iv[-1][1], hi)
                else:
                    iv.append([lo, hi])
        out.append((n, psi, iv))
    return out


def main():
    x = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    data = sets(x)
    total = sum(h - l for _, _, iv in data for l, h in iv)
    main_sum = sum(psi * plog(n) for n, psi, _ in data)
    allv = sorted((l, h) for _, _, iv in data for l, h in iv)
    off = 0.0
    active = []
    for l, h in allv:
        active = [a for a in active if a > l]
        for a in active:
            off += min(a, h) - l
        active.append(h)
    overlap = total + 2 * off
    print(f"X={x} sum_measure={total:.12f} sum_main={main_sum:.12f} "
          f"divergence_ratio={total / main_sum:.12f} bc_ratio={total * total / overlap:.12f}")


if __name__ == "__main__":
    main()
