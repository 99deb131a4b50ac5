"""Brute-force evaluation of Sweedler-notation expressions.

A factor ``(M, left_map, (letter, k), right_map, (letter, k))`` stands for
M(left_map x, right_map y), where x is the k-th coproduct leg of the element
named by the letter.  Used as an independent check on closed forms.
"""
import itertools

from artifact.coalg import iterated_coproduct
from artifact.exactnum import ONE, ZERO, Matrix


def legs_needed(factors):
    need = {}
    for _, _, (l1, k1), _, (l2, k2) in factors:
        need[l1] = max(need.get(l1, 0), k1)
        need[l2] = max(need.get(l2, 0), k2)
    return need


def evaluate(C, elements: dict, factors, legs: dict | None = None):
    legs = legs or legs_needed(factors)
    names = sorted(elements)
    tables = [(twisted(M, f, g), a, b) for M, f, a, g, b in factors]
    expansions = [list(iterated_coproduct(C, elements[n], legs[n]).items()) for n in names]
    acc = ZERO
    for combo in itertools.product(*expansions):
        idx = {n: path for n, (path, _) in zip(names, combo)}
        p = ONE
        for _, v in combo:
            p = p * v
        for M, (l1, k1), (l2, k2) in tables:
            p = p * M[idx[l1][k1 - 1], idx[l2][k2 - 1]]
            if not p:
                break
        acc = acc + p
    return acc


def twisted(M, left, right):
    n = M.rows
    I = Matrix.identity(n)
    return (left or I).transpose() @ M @ (right or I)


def functional(C, factors, m):
    """Coordinates of c ↦ expression in the legs of a single element c."""
    return [evaluate(C, {"c": C.basis(i)}, factors, {"c": m}) for i in range(C.dim)]
