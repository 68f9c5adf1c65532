"""GF(2^8) arithmetic and the RS(255, 239, t=8) outer code.

The field is generated by the primitive polynomial
x^8 + x^4 + x^3 + x^2 + 1 (0x11D) and codewords are systematic:
parity is the remainder of msg(x) * x^(2t) divided by the generator
g(x) = prod_{j=0}^{2t-1} (x + alpha^j), message symbol m[0] carrying the
highest polynomial degree.  Decoding is syndrome based: Berlekamp-Massey
for the error locator, Chien search for the roots, Forney for the
magnitudes.  Up to t symbol errors per block are corrected; anything the
decoder cannot repair raises (or flags, in the batch form) RsDecodeFailure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class RsCodeParams:
    n: int = 255
    k: int = 239
    t: int = 8
    field_poly: int = 0x11D
    gen_start_root: int = 0

    def __post_init__(self):
        if self.n != 255:
            raise ValueError(f"only the full-length n=255 code is supported, got n={self.n}")
        if self.n - self.k != 2 * self.t:
            raise ValueError(f"n-k must equal 2t, got n={self.n} k={self.k} t={self.t}")


class RsDecodeFailure(Exception):
    """More than t symbol errors (or an inconsistent locator) in one block."""


class _Field:
    """Log/antilog tables and the RS generator polynomial for one field."""

    def __init__(self, params: RsCodeParams):
        self.params = params
        exp = np.zeros(510, dtype=np.uint8)
        log = np.zeros(256, dtype=np.int64)
        x = 1
        for i in range(255):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & 0x100:
                x ^= params.field_poly
        exp[255:510] = exp[0:255]
        self.exp = exp
        self.log = log

        # full multiplication table: mul[a, b] = a*b in GF(256)
        logs = log[np.arange(256)]
        mul = exp[(logs[:, None] + logs[None, :]) % 255].astype(np.uint8)
        mul[0, :] = 0
        mul[:, 0] = 0
        self.mul_table = mul

        # g(x) = prod (x + alpha^(fcr+j)), ascending-degree coefficients
        g = np.array([1], dtype=np.uint8)
        for j in range(2 * params.t):
            root = exp[(params.gen_start_root + j) % 255]
            shifted = np.concatenate(([0], g))
            scaled = np.concatenate((self.mul(g, root), [0]))
            g = shifted ^ scaled
        self.generator = g  # length 2t+1, g[-1] = 1 (monic)
        # descending-degree tail below the leading 1, for synthetic division
        self.gen_tail = g[-2::-1].copy()

        # syndrome evaluation powers: alpha^((fcr+j) * deg_i), deg_i = n-1-i
        n, t2 = params.n, 2 * params.t
        deg = (n - 1) - np.arange(n)
        j = params.gen_start_root + np.arange(t2)
        self.synd_pow = exp[(j[:, None] * deg[None, :]) % 255].astype(np.uint8)

    def mul(self, a, b):
        return self.mul_table[np.asarray(a, dtype=np.uint8), np.asarray(b, dtype=np.uint8)]

    def inv(self, a):
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(256)")
        return int(self.exp[255 - self.log[a]])

    def poly_eval(self, coeffs: np.ndarray, x: int) -> int:
        """Evaluate an ascending-degree polynomial at a field element."""
        acc = 0
        for c in coeffs[::-1]:
            acc = int(self.mul(acc, x)) ^ int(c)
        return acc


@lru_cache(maxsize=None)
def _field(params: RsCodeParams) -> _Field:
    return _Field(params)


_DEFAULT = RsCodeParams()


def gf_mul(a, b, params: RsCodeParams = _DEFAULT):
    """Multiply in GF(256); accepts scalars or uint8 arrays elementwise."""
    out = _field(params).mul(a, b)
    return int(out) if out.ndim == 0 else out


def gf_inv(a: int, params: RsCodeParams = _DEFAULT) -> int:
    return _field(params).inv(a)


def rs_generator_poly(params: RsCodeParams = _DEFAULT) -> np.ndarray:
    """Ascending-degree coefficients of g(x), length 2t+1."""
    return _field(params).generator.copy()


def rs_encode_blocks(msgs: np.ndarray, params: RsCodeParams = _DEFAULT) -> np.ndarray:
    """Systematically encode a (B, k) uint8 array into (B, n) codewords."""
    fld = _field(params)
    msgs = np.atleast_2d(np.asarray(msgs, dtype=np.uint8))
    if msgs.shape[1] != params.k:
        raise ValueError(f"message block must have {params.k} symbols, got {msgs.shape[1]}")
    nblk = msgs.shape[0]
    parity = np.zeros((nblk, 2 * params.t), dtype=np.uint8)
    tail = fld.gen_tail
    for i in range(params.k):
        fb = msgs[:, i] ^ parity[:, 0]
        parity[:, :-1] = parity[:, 1:]
        parity[:, -1] = 0
        parity ^= fld.mul_table[fb[:, None], tail[None, :]]
    return np.concatenate([msgs, parity], axis=1)


def rs_encode(msg: np.ndarray, params: RsCodeParams = _DEFAULT) -> np.ndarray:
    """Encode one k-symbol message block into an n-symbol codeword."""
    return rs_encode_blocks(np.asarray(msg, dtype=np.uint8)[None, :], params)[0]


def rs_syndromes(blocks: np.ndarray, params: RsCodeParams = _DEFAULT) -> np.ndarray:
    """Syndromes S_j = r(alpha^(fcr+j)) for (B, n) blocks, shape (B, 2t)."""
    fld = _field(params)
    blocks = np.atleast_2d(np.asarray(blocks, dtype=np.uint8))
    prods = fld.mul_table[blocks[:, None, :], fld.synd_pow[None, :, :]]
    return np.bitwise_xor.reduce(prods, axis=2)


def _berlekamp_massey(fld: _Field, synd: np.ndarray) -> np.ndarray:
    """Error locator polynomial (ascending coefficients) from one syndrome row."""
    t2 = synd.shape[0]
    c = np.zeros(t2 + 1, dtype=np.uint8)
    b = np.zeros(t2 + 1, dtype=np.uint8)
    c[0] = b[0] = 1
    L, m, bb = 0, 1, 1
    for n in range(t2):
        d = int(synd[n])
        for i in range(1, L + 1):
            d ^= int(fld.mul(c[i], synd[n - i]))
        if d == 0:
            m += 1
            continue
        coef = fld.mul(d, fld.inv(bb))
        shifted = np.zeros_like(c)
        shifted[m:] = b[: t2 + 1 - m]
        if 2 * L <= n:
            prev = c.copy()
            c = c ^ fld.mul(shifted, coef)
            L = n + 1 - L
            b = prev
            bb = d
            m = 1
        else:
            c = c ^ fld.mul(shifted, coef)
            m += 1
    return c[: L + 1]


def _decode_one(fld: _Field, rx: np.ndarray, synd: np.ndarray):
    """Correct one block in place; returns the error count or raises."""
    params = fld.params
    locator = _berlekamp_massey(fld, synd)
    nu = len(locator) - 1
    if nu == 0 or nu > params.t:
        raise RsDecodeFailure(f"locator degree {nu} outside 1..{params.t}")

    # Chien search over x = alpha^i; a root at i marks degree (255 - i) % 255
    i_all = np.arange(255)
    powers = fld.exp[(i_all[:, None] * np.arange(nu + 1)[None, :]) % 255]
    vals = np.bitwise_xor.reduce(fld.mul_table[locator[None, :], powers], axis=1)
    roots_i = np.nonzero(vals == 0)[0]
    if len(roots_i) != nu:
        raise RsDecodeFailure(f"found {len(roots_i)} locator roots, expected {nu}")
    degrees = (255 - roots_i) % 255
    if np.any(degrees >= params.n):
        raise RsDecodeFailure("error position outside the codeword")
    idx = (params.n - 1) - degrees

    # Forney magnitudes: Omega(x) = S(x) * locator(x) mod x^(2t)
    t2 = 2 * params.t
    conv = np.zeros(t2, dtype=np.uint8)
    for d in range(t2):
        lo = max(0, d - (len(locator) - 1))
        acc = 0
        for j in range(lo, d + 1):
            acc ^= int(fld.mul(synd[j], locator[d - j]))
        conv[d] = acc
    deriv = locator[1::2]  # lambda'(x) has the odd-index coefficients at even powers

    for pos, deg_p, root_i in zip(idx, degrees, roots_i):
        x_inv = int(fld.exp[root_i])  # alpha^(-deg)
        omega = fld.poly_eval(conv, x_inv)
        x_inv_sq = int(fld.mul(x_inv, x_inv))
        denom = 0
        xp = 1
        for c in deriv:
            denom ^= int(fld.mul(c, xp))
            xp = int(fld.mul(xp, x_inv_sq))
        if denom == 0:
            raise RsDecodeFailure("zero locator derivative at a root")
        # e = X^(1-fcr) * Omega(X^-1) / lambda'(X^-1), here fcr = 0
        x_l = int(fld.exp[(255 - root_i) % 255])
        fcr_pow = int(fld.exp[(fld.log[x_l] * (1 - params.gen_start_root)) % 255])
        mag = int(fld.mul(fcr_pow, fld.mul(omega, fld.inv(denom))))
        if mag == 0:
            raise RsDecodeFailure("zero error magnitude")
        rx[pos] ^= mag

    if np.any(rs_syndromes(rx[None, :], params)[0] != 0):
        raise RsDecodeFailure("correction left nonzero syndromes")
    return nu


def rs_decode_blocks(blocks: np.ndarray, params: RsCodeParams = _DEFAULT):
    """Decode (B, n) blocks.

    Returns (msgs, corrected, failed): the (B, k) message symbols, the
    per-block corrected-symbol counts, and a per-block failure flag.
    Failed blocks pass their systematic bytes through uncorrected.
    """
    fld = _field(params)
    blocks = np.atleast_2d(np.asarray(blocks, dtype=np.uint8)).copy()
    if blocks.shape[1] != params.n:
        raise ValueError(f"codeword block must have {params.n} symbols, got {blocks.shape[1]}")
    synd = rs_syndromes(blocks, params)
    corrected = np.zeros(blocks.shape[0], dtype=np.int64)
    failed = np.zeros(blocks.shape[0], dtype=bool)
    for b in np.nonzero(np.any(synd != 0, axis=1))[0]:
        try:
            corrected[b] = _decode_one(fld, blocks[b], synd[b])
        except RsDecodeFailure:
            failed[b] = True
    return blocks[:, : params.k], corrected, failed


def rs_decode(block: np.ndarray, params: RsCodeParams = _DEFAULT):
    """Decode one codeword; returns (msg, corrected) or raises RsDecodeFailure."""
    msgs, corrected, failed = rs_decode_blocks(np.asarray(block)[None, :], params)
    if failed[0]:
        raise RsDecodeFailure("uncorrectable block")
    return msgs[0], int(corrected[0])
