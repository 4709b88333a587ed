"""On-disk cache of reduced Gröbner bases.

Entries are keyed by a SHA-256 of the ring description and the sorted
generator list, so a hit is only possible for the same input in the same
ring, order and field.  The file format is a small binary layout::

    b"DGB1" | u32 nvars | u32 npolys | per poly: u32 nterms, then per term
    nvars x u16 exponents and a coefficient as two length-prefixed signed
    integers (numerator, denominator)
"""

from __future__ import annotations

import hashlib
import json
import os
import struct
from fractions import Fraction
from pathlib import Path

from ..polycore import Polynomial, PolyRing

MAGIC = b"DGB1"


def _poly_text(f: Polynomial) -> str:
    return ";".join(f"{','.join(map(str, e))}:{c}" for e, c in sorted(f.terms.items()))


def _put_int(buf: bytearray, x: int) -> None:
    raw = x.to_bytes((x.bit_length() + 8) // 8 or 1, "big", signed=True)
    buf += struct.pack("<I", len(raw)) + raw


def _get_int(data: bytes, pos: int) -> tuple:
    (n,) = struct.unpack_from("<I", data, pos)
    pos += 4
    return int.from_bytes(data[pos:pos + n], "big", signed=True), pos + n


def encode(ring: PolyRing, basis) -> bytes:
    buf = bytearray(MAGIC)
    buf += struct.pack("<II", ring.nvars, len(basis))
    for f in basis:
        buf += struct.pack("<I", len(f.terms))
        for e, c in f.sorted_terms():
            buf += struct.pack(f"<{ring.nvars}H", *e)
            c = Fraction(c)
            _put_int(buf, c.numerator)
            _put_int(buf, c.denominator)
    return bytes(buf)


def decode(data: bytes, ring: PolyRing) -> list:
    if data[:4] != MAGIC:
        raise ValueError("not a Gröbner cache file")
    nvars, npolys = struct.unpack_from("<II", data, 4)
    if nvars != ring.nvars:
        raise ValueError("cache entry has the wrong number of variables")
    pos = 12
    out = []
    fld = ring.field
    for _ in range(npolys):
        (nterms,) = struct.unpack_from("<I", data, pos)
        pos += 4
        terms = {}
        for _ in range(nterms):
            e = struct.unpack_from(f"<{nvars}H", data, pos)
            pos += 2 * nvars
            num, pos = _get_int(data, pos)
            den, pos = _get_int(data, pos)
            terms[tuple(e)] = fld(Fraction(num, den)) if den != 1 else fld(num)
        out.append(Polynomial(ring, terms))
    return out


class GroebnerCache:
    def __init__(self, directory=None):
        directory = directory or os.environ.get("CASCADE_CACHE_DIR") or Path.home() / ".cache" / "detcascade"
        self.dir = Path(directory)
        self.hits = 0
        self.misses = 0

    def key(self, ring: PolyRing, gens) -> str:
        h = hashlib.sha256()
        h.update(json.dumps(ring.describe(), sort_keys=True).encode())
        for t in sorted(_poly_text(g) for g in gens):
            h.update(t.encode())
            h.update(b"\n")
        return h.hexdigest()

    def _path(self, key: str) -> Path:
        return self.dir / f"{key}.dgb"

    def get(self, key: str, ring: PolyRing):
        path = self._path(key)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            self.misses += 1
            return None
        try:
            basis = decode(data, ring)
        except (ValueError, struct.error):
            path.unlink(missing_ok=True)
            self.misses += 1
            return None
        self.hits += 1
        return basis

    def put(self, key: str, ring: PolyRing, basis) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_bytes(encode(ring, basis))
        tmp.replace(self._path(key))

    def stats(self) -> dict:
        files = list(self.dir.glob("*.dgb")) if self.dir.exists() else []
        return {
            "directory": str(self.dir),
            "entries": len(files),
            "bytes": sum(f.stat().st_size for f in files),
            "hits": self.hits,
            "misses": self.misses,
        }

    def clear(self) -> int:
        n = 0
        if self.dir.exists():
            for f in self.dir.glob("*.dgb"):
                f.unlink()
                n += 1
        return n
