"""Exact containers and bit-level primitives for functions on {-1,1}^n.

Encoding conventions, used consistently across the package:

* A point x in {-1,1}^n is stored as an integer index in [0, 2^n):
  bit (k-1) of the index is 1 iff coordinate x_k = -1.  Index 0 is the
  all-(+1) point.
* A coordinate subset S of {1..n} is stored as a mask in [0, 2^n):
  bit (k-1) set iff k is in S.
* With these choices the character X_S(x) = prod_{k in S} x_k equals
  (-1)^popcount(mask & index), so the fast transform is a plain
  Walsh-Hadamard butterfly.

Truth tables are bit-packed (bit i set iff f(point i) = -1) and decoded
to signs on access; real-valued tables are dense float64 arrays.
"""

from __future__ import annotations

import re
from typing import Iterable, Union

import numpy as np

# Default cap on the dimension; 2^24 table entries is the intended desk
# scale.  Embedders may lower or raise it before constructing tables.
DIMENSION_CAP = 24


class BFN1Error(ValueError):
    """Raised when a BFN1 byte stream cannot be parsed."""


def _check_dimension(n: int, *, allow_zero: bool = False) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"dimension must be an integer, got {n!r}")
    lo = 0 if allow_zero else 1
    if n < lo or n > DIMENSION_CAP:
        raise ValueError(f"dimension n={n} out of range [{lo}, {DIMENSION_CAP}]")


def popcount(mask: int) -> int:
    return mask.bit_count()


_POPCOUNT_CACHE: dict = {}


def popcount_array(n: int) -> np.ndarray:
    """Read-only int8 vector of popcounts for all masks in [0, 2^n)."""
    arr = _POPCOUNT_CACHE.get(n)
    if arr is None:
        arr = np.zeros(1, dtype=np.int8)
        for _ in range(n):
            arr = np.concatenate([arr, arr + 1])
        arr.flags.writeable = False
        _POPCOUNT_CACHE[n] = arr
    return arr


def char_sign(mask: int, index: int) -> int:
    """Value of the character X_S at a point, both given as packed ints."""
    return -1 if (mask & index).bit_count() & 1 else 1


def flip(index: int, mask: int) -> int:
    """Flip the coordinates selected by ``mask``; an involution (XOR)."""
    return index ^ mask


class TruthTable:
    """An exact Boolean function {-1,1}^n -> {-1,1} as a packed sign table.

    The table is immutable.  ``bits`` holds one bit per point, set iff the
    function value there is -1.  Dimension 0 only arises as the result of
    restricting away every coordinate; it cannot be built through the
    public constructors.
    """

    __slots__ = ("n", "bits", "_signs_cache")

    def __init__(self, n: int, bits: int, *, allow_zero_dim: bool = False):
        _check_dimension(n, allow_zero=allow_zero_dim)
        size = 1 << n
        if not isinstance(bits, int) or bits < 0:
            raise ValueError("bits must be a non-negative integer")
        if bits >> size:
            raise ValueError(f"bits has entries beyond 2^{n} points")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "_signs_cache", None)

    def __setattr__(self, name, value):
        raise AttributeError("TruthTable is immutable")

    @property
    def size(self) -> int:
        return 1 << self.n

    @classmethod
    def from_signs(cls, n: int, signs: Iterable[int], **kw) -> "TruthTable":
        bits = 0
        count = 0
        for i, s in enumerate(signs):
            if s == -1:
                bits |= 1 << i
            elif s != 1:
                raise ValueError(f"table entry {i} is {s!r}, expected +1 or -1")
            count += 1
        if count != 1 << n:
            raise ValueError(f"expected 2^{n} entries, got {count}")
        return cls(n, bits, **kw)

    @classmethod
    def from_signs_array(cls, values: np.ndarray) -> "TruthTable":
        values = np.asarray(values)
        n = int(values.size).bit_length() - 1
        if 1 << n != values.size:
            raise ValueError("table length must be a power of two")
        if not np.all(np.abs(values) == 1):
            raise ValueError("table entries must be +1 or -1")
        packed = np.packbits(values == -1, bitorder="little").tobytes()
        return cls(n, int.from_bytes(packed, "little"))

    def sign(self, index: int) -> int:
        """Stored value at a point index (+1 or -1)."""
        if not 0 <= index < self.size:
            raise ValueError(f"point index {index} out of range [0, 2^{self.n})")
        return -1 if (self.bits >> index) & 1 else 1

    def signs(self) -> list:
        """Dense sign list, entry i = f(point i)."""
        bits = self.bits
        return [-1 if (bits >> i) & 1 else 1 for i in range(self.size)]

    def signs_array(self) -> np.ndarray:
        """Dense int8 sign vector; cached, treat as read-only."""
        cached = self._signs_cache
        if cached is None:
            nbytes = (self.size + 7) // 8
            raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
            ones = np.unpackbits(raw, bitorder="little", count=self.size)
            cached = (1 - 2 * ones.astype(np.int8))
            cached.flags.writeable = False
            object.__setattr__(self, "_signs_cache", cached)
        return cached

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruthTable)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __reduce__(self):
        return (_rebuild_table, (self.n, self.bits))

    def __repr__(self) -> str:
        return f"TruthTable(n={self.n}, bits=0x{self.bits:X})"


class PseudoBooleanFunction:
    """A real-valued function on {-1,1}^n as a dense float64 table."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values, *, allow_zero_dim: bool = False):
        _check_dimension(n, allow_zero=allow_zero_dim)
        arr = np.asarray(values, dtype=np.float64)
        if arr.shape != (1 << n,):
            raise ValueError(f"expected 2^{n} values, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("all values must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):
        raise AttributeError("PseudoBooleanFunction is immutable")

    @property
    def size(self) -> int:
        return 1 << self.n

    def value(self, index: int) -> float:
        if not 0 <= index < self.size:
            raise ValueError(f"point index {index} out of range [0, 2^{self.n})")
        return float(self.values[index])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PseudoBooleanFunction)
            and self.n == other.n
            and bool(np.array_equal(self.values, other.values))
        )

    def __reduce__(self):
        return (_rebuild_real, (self.n, np.asarray(self.values).copy()))

    def __repr__(self) -> str:
        return f"PseudoBooleanFunction(n={self.n})"


def _rebuild_table(n: int, bits: int) -> TruthTable:
    return TruthTable(n, bits, allow_zero_dim=(n == 0))


def _rebuild_real(n: int, values) -> PseudoBooleanFunction:
    return PseudoBooleanFunction(n, values, allow_zero_dim=(n == 0))


AnyFunction = Union[TruthTable, PseudoBooleanFunction]


def evaluate(f: AnyFunction, index: int):
    """Table lookup; returns an int for truth tables, a float otherwise."""
    if isinstance(f, TruthTable):
        return f.sign(index)
    return f.value(index)


def is_monotone(f: TruthTable) -> bool:
    """True iff f(x) <= f(y) whenever x <= y coordinatewise (+1 largest).

    Checked over all n * 2^(n-1) hypercube edges.  With the packed
    encoding, the point with bit k set is the smaller endpoint of the
    edge in direction k.
    """
    if f.n == 0:
        return True
    s = f.signs_array()
    h = 1
    while h < f.size:
        v = s.reshape(-1, 2, h)
        # v[:, 1, :] has x_k = -1, the coordinatewise-smaller endpoint
        if np.any(v[:, 1, :] > v[:, 0, :]):
            return False
        h *= 2
    return True


_BFN1_HEADER = re.compile(rb"\ABFN1 n=(\d+)\Z")


def serialize(f: TruthTable) -> bytes:
    """Encode a truth table as a BFN1 byte stream.

    Format: ASCII line ``BFN1 n=<n>``, newline, then ceil(2^n/8) bytes in
    uppercase hex (two chars per byte), trailing newline.  Bit i of the
    table is bit (i mod 8) of byte i//8 and is set iff f(point i) = -1;
    unused high bits of the last byte are zero.
    """
    nbytes = (f.size + 7) // 8
    body = f.bits.to_bytes(nbytes, "little").hex().upper()
    return f"BFN1 n={f.n}\n{body}\n".encode("ascii")


def parse(data: Union[bytes, str]) -> TruthTable:
    """Decode a BFN1 byte stream; strict inverse of :func:`serialize`."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    head, sep, rest = data.partition(b"\n")
    if not sep:
        raise BFN1Error("missing header line")
    m = _BFN1_HEADER.match(head.strip())
    if not m:
        raise BFN1Error(f"malformed header {head[:40]!r}")
    n = int(m.group(1))
    try:
        _check_dimension(n)
    except ValueError as exc:
        raise BFN1Error(str(exc)) from None
    body = rest.strip()
    nbytes = ((1 << n) + 7) // 8
    if len(body) != 2 * nbytes:
        raise BFN1Error(
            f"body length {len(body)} hex chars, expected {2 * nbytes} for n={n}"
        )
    try:
        raw = bytes.fromhex(body.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise BFN1Error("body is not valid hex") from None
    bits = int.from_bytes(raw, "little")
    if bits >> (1 << n):
        raise BFN1Error("nonzero padding bits in final byte")
    return TruthTable(n, bits)
