"""Counts of n <= N with ||n a / 2^16|| < psi(n) on a 512-point grid.

divergent psi(n) = 1/(4n), convergent psi(n) = 1/n^2, gamma = 0.
Comparisons are exact integer inequalities.
"""
import sys

Q = 1 << 16


def counts(nums, n_max):
    div, conv = [], []
    for a in nums:
        d = c = 0
        for n in range(1, n_max + 1):
            r = (n * a) % Q
            r = min(r, Q - r)
            if 4 * n * r < Q:
                d += 1
            if n * n * r < Q:
                c += 1
        div.append(d)
        conv.append(c)
    return div, conv


def main():
    offset = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    n_max = int(sys.argv[2]) if len(sys.argv) > 2 else 100_000
    nums = [128 * j + offset for j in range(512)]
    div, conv = counts(nums, n_max)
    wins = sum(d > c for d, c in zip(div, conv))
    print(f"offset={offset} N={n_max} wins={wins}/512 frac={wins / 512:.6f} "
          f"div_total={sum(div)} conv_total={sum(conv)}")


if __name__ == "__main__":
    main()
