from math import comb


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def flatten(chunks):
    return [item for chunk in chunks for item in chunk]
