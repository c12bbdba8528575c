"""Pure-Python (numpy) implementation of the Hecke generator step.

A Hecke element is held as a block: ``ids`` (interned group elements) and a
dense ``coef`` matrix whose column ``d`` is the coefficient of ``q**(lo + d)``.
Works for int64 and object (bigint) dtypes alike.
"""
from __future__ import annotations

import numpy as np

MODE_T = 0  # multiply by T_s
MODE_NABLA = 1  # multiply by -T_s + (q - 1)


def _shift0(c):
    z = np.zeros((c.shape[0], c.shape[1] + 1), dtype=c.dtype)
    z[:, :-1] = c
    return z


def _shift1(c):
    z = np.zeros((c.shape[0], c.shape[1] + 1), dtype=c.dtype)
    z[:, 1:] = c
    return z


def merge_rows(ids, vals):
    """Sum rows with equal ids and drop zero rows.  Output ids are sorted."""
    if len(ids) == 0:
        return ids.astype(np.int64), vals
    uniq, inv = np.unique(ids, return_inverse=True)
    out = np.zeros((len(uniq), vals.shape[1]), dtype=vals.dtype)
    np.add.at(out, inv, vals)
    keep = np.any(out != 0, axis=1)
    return uniq[keep], out[keep]


def apply_generator(ids, coef, tgt, up, mode, scratch=None):
    """One generator step; ``tgt[k]`` is the neighbour of ``ids[k]`` and ``up[k]``
    says whether it is longer.  Returns ``(ids, coef)`` with one extra column."""
    up = up.astype(bool)
    dn = ~up
    cu, cd = coef[up], coef[dn]
    if mode == MODE_T:
        parts_ids = [tgt[up], tgt[dn], ids[dn]]
        parts = [_shift0(cu), _shift1(cd), _shift1(cd) - _shift0(cd)]
    elif mode == MODE_NABLA:
        parts_ids = [tgt[up], ids[up], tgt[dn]]
        parts = [-_shift0(cu), _shift1(cu) - _shift0(cu), -_shift1(cd)]
    else:
        raise ValueError(f"unknown mode {mode}")
    all_ids = np.concatenate(parts_ids)
    vals = np.concatenate(parts, axis=0) if parts else np.zeros((0, coef.shape[1] + 1), dtype=coef.dtype)
    out_ids, out = merge_rows(all_ids, vals)
    return out_ids, out
