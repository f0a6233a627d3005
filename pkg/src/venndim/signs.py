"""Sign vectors.

A region of an n-surface diagram is labelled by a sign vector
``eps_1 ... eps_n`` with ``eps_i = 0`` meaning *inside* surface ``i`` and
``eps_i = 1`` meaning *outside*.  Internally labels are integer bit masks in
which surface ``s`` owns bit ``s - 1``; the set of surfaces a label talks
about (its *scope*) is carried separately as a sorted tuple of surface ids.
Externally a sign vector is rendered as a string of ``0``/``1`` characters in
scope order, e.g. ``"011"``.
"""
from __future__ import annotations

from typing import Iterable

SignVector = str


def scope_mask(scope: Iterable[int]) -> int:
    mask = 0
    for s in scope:
        mask |= 1 << (s - 1)
    return mask


def to_sign(mask: int, scope: tuple[int, ...]) -> SignVector:
    """Render the bits of ``mask`` selected by ``scope`` as a sign string."""
    return "".join("1" if mask >> (s - 1) & 1 else "0" for s in scope)


def from_sign(sign: SignVector, scope: tuple[int, ...]) -> int:
    if len(sign) != len(scope):
        raise ValueError(f"sign {sign!r} has {len(sign)} bits, scope has {len(scope)}")
    mask = 0
    for ch, s in zip(sign, scope):
        if ch == "1":
            mask |= 1 << (s - 1)
        elif ch != "0":
            raise ValueError(f"bad sign character {ch!r}")
    return mask


def all_signs(scope: tuple[int, ...]) -> list[SignVector]:
    """Every sign vector over ``scope``, in increasing mask order."""
    k = len(scope)
    return [format(v, f"0{k}b")[::-1] if k else "" for v in range(1 << k)]


def dtype_for(n_bits: int):
    import numpy as np

    if n_bits <= 8:
        return np.uint8
    if n_bits <= 16:
        return np.uint16
    if n_bits <= 32:
        return np.uint32
    return np.uint64
