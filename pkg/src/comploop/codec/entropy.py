"""Entropy layer for the block-transform codec.

Quantized coefficient blocks are serialized per channel as:

  [channel base value: category code + magnitude bits]
  [per block, raster order:
     run of all-zero blocks  -> EMPTY code + 12-bit (run length - 1)
     otherwise               -> DPCM delta category code + magnitude bits,
                                then zigzag (run,size) codes with magnitude
                                bits, ZRL for 16 zeros, EOB unless the last
                                coefficient is occupied]

Two fixed canonical prefix-code tables are shared by all channels; there is
no per-image code optimization, so identical inputs always produce identical
payloads and the byte size of a candidate encode can be predicted exactly.
Code lengths below were generated once from a fixed synthetic frequency
model and are frozen.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "EntropyDecodeError",
    "encode_planes",
    "decode_planes",
    "MAX_CATEGORY",
]

MAX_CATEGORY = 12  # |value| < 2**12; block-transform outputs stay well inside

# DC-side alphabet: magnitude categories 0..12, then the EMPTY-run symbol.
_EMPTY_SYM = 13
_DC_LENGTHS = (2, 2, 3, 4, 5, 6, 7, 8, 10, 10, 10, 11, 11, 2)

# AC alphabet: EOB, ZRL, then (run 0..15) x (size 1..12) at 2 + run*12 + size-1.
_EOB_SYM = 0
_ZRL_SYM = 1
_AC_LENGTHS = (
    2, 9,
    2, 4, 6, 8, 9, 11, 11, 11, 11, 11, 11, 11,
    3, 5, 7, 8, 10, 11, 11, 11, 11, 11, 11, 11,
    4, 6, 8, 9, 11, 11, 11, 11, 11, 11, 11, 11,
    5, 7, 9, 10, 11, 11, 11, 11, 11, 11, 11, 11,
    6, 8, 10, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    7, 9, 10, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    8, 10, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    9, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    10, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
    11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11,
)

_EMPTY_RUN_BITS = 12
_MAX_EMPTY_RUN = 1 << _EMPTY_RUN_BITS


class EntropyDecodeError(ValueError):
    """Bit stream cannot be decoded back into coefficient planes."""


def _canonical_codes(lengths: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    lens = np.asarray(lengths, dtype=np.uint8)
    order = np.lexsort((np.arange(len(lens)), lens))
    codes = np.zeros(len(lens), dtype=np.uint32)
    code = 0
    prev_len = int(lens[order[0]])
    for sym in order:
        ln = int(lens[sym])
        code <<= ln - prev_len
        prev_len = ln
        codes[sym] = code
        code += 1
    return codes, lens


def _decode_lut(codes: np.ndarray, lens: np.ndarray, width: int) -> tuple[np.ndarray, np.ndarray]:
    # Maps every `width`-bit window to (symbol, code length); -1 = invalid prefix.
    lut_sym = np.full(1 << width, -1, dtype=np.int16)
    lut_len = np.zeros(1 << width, dtype=np.uint8)
    for sym, (code, ln) in enumerate(zip(codes, lens)):
        ln = int(ln)
        base = int(code) << (width - ln)
        span = 1 << (width - ln)
        lut_sym[base : base + span] = sym
        lut_len[base : base + span] = ln
    return lut_sym, lut_len

_PEEK_BITS = 16
_DC_CODES, _DC_LENS = _canonical_codes(_DC_LENGTHS)
_AC_CODES, _AC_LENS = _canonical_codes(_AC_LENGTHS)
_DC_LUT_SYM, _DC_LUT_LEN = _decode_lut(_DC_CODES, _DC_LENS, _PEEK_BITS)
_AC_LUT_SYM, _AC_LUT_LEN = _decode_lut(_AC_CODES, _AC_LENS, _PEEK_BITS)

# Magnitude category of |v| (bit length); LUT covers the coefficient range.
_CAT_LUT = np.zeros(1 << MAX_CATEGORY, dtype=np.uint8)
for _v in range(1, 1 << MAX_CATEGORY):
    _CAT_LUT[_v] = _v.bit_length()


def _magnitude(values: np.ndarray, cats: np.ndarray) -> np.ndarray:
    # Positive v -> v; negative v -> v + 2**cat - 1 (one's-complement style).
    vals = values.astype(np.int64)
    return np.where(vals >= 0, vals, vals + (np.int64(1) << cats.astype(np.int64)) - 1).astype(
        np.uint32
    )


def _unmagnitude(amp: int, cat: int) -> int:
    if cat == 0:
        return 0
    if amp >> (cat - 1):
        return amp
    return amp - (1 << cat) + 1


class _ItemSink:
    """Collects (code value, bit length, order key) triples for one stream."""

    def __init__(self) -> None:
        self.values: list[np.ndarray] = []
        self.lengths: list[np.ndarray] = []
        self.keys: list[np.ndarray] = []

    def put(self, values: np.ndarray, lengths: np.ndarray, keys: np.ndarray) -> None:
        if len(values):
            self.values.append(values.astype(np.uint32, copy=False))
            self.lengths.append(lengths.astype(np.uint8, copy=False))
            self.keys.append(keys.astype(np.int64, copy=False))

    def ordered(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.values:
            return np.zeros(0, np.uint32), np.zeros(0, np.uint8)
        values = np.concatenate(self.values)
        lengths = np.concatenate(self.lengths)
        keys = np.concatenate(self.keys)
        order = np.argsort(keys, kind="stable")
        return values[order], lengths[order]


# Within-block slot layout for the ordering keys.
_SLOTS_PER_BLOCK = 64 * 16 + 32


def _emit_channel(sink: _ItemSink, base: int, zz: np.ndarray, block_key0: int) -> None:
    """Queue one channel: base value, then blocks with empty-run compaction."""
    nblocks = zz.shape[0]
    dc = zz[:, 0].astype(np.int64)
    diffs = np.diff(dc, prepend=0)

    base_cat = int(_CAT_LUT[abs(base)]) if abs(base) < len(_CAT_LUT) else abs(base).bit_length()
    if base_cat > MAX_CATEGORY:
        raise ValueError(f"channel base {base} out of range")
    key0 = np.int64(block_key0) * _SLOTS_PER_BLOCK
    sink.put(
        np.array([_DC_CODES[base_cat]], np.uint32),
        np.array([_DC_LENS[base_cat]], np.uint8),
        np.array([key0 - 2], np.int64),
    )
    if base_cat:
        amp = _magnitude(np.array([base]), np.array([base_cat]))
        sink.put(amp, np.array([base_cat], np.uint8), np.array([key0 - 1], np.int64))

    has_ac = zz[:, 1:].any(axis=1)
    empty = (diffs == 0) & ~has_ac
    block_keys = (np.int64(block_key0) + np.arange(nblocks, dtype=np.int64)) * _SLOTS_PER_BLOCK

    # Empty runs: emitted at the run's first block, split at the counter limit.
    if empty.any():
        flat = empty.astype(np.int8)
        starts = np.flatnonzero((flat == 1) & (np.diff(flat, prepend=0) == 1))
        ends = np.flatnonzero((flat == 1) & (np.diff(flat, append=0) == -1))
        run_lens = ends - starts + 1
        chunks = -(-run_lens // _MAX_EMPTY_RUN)
        chunk_start = np.repeat(starts, chunks)
        within = np.concatenate([np.arange(c) for c in chunks]) if len(chunks) else np.zeros(0, np.int64)
        chunk_start = chunk_start + within * _MAX_EMPTY_RUN
        rem = np.repeat(ends + 1, chunks) - chunk_start
        chunk_len = np.minimum(rem, _MAX_EMPTY_RUN)
        ckeys = block_keys[chunk_start]
        sink.put(
            np.full(len(chunk_start), _DC_CODES[_EMPTY_SYM], np.uint32),
            np.full(len(chunk_start), _DC_LENS[_EMPTY_SYM], np.uint8),
            ckeys,
        )
        sink.put(
            (chunk_len - 1).astype(np.uint32),
            np.full(len(chunk_start), _EMPTY_RUN_BITS, np.uint8),
            ckeys + 1,
        )

    occupied = np.flatnonzero(~empty)
    if len(occupied) == 0:
        return

    # DC deltas of occupied blocks.
    d = diffs[occupied]
    cats = _CAT_LUT[np.abs(d)]
    okeys = block_keys[occupied]
    sink.put(_DC_CODES[cats], _DC_LENS[cats], okeys)
    with_amp = cats > 0
    if with_amp.any():
        sink.put(
            _magnitude(d[with_amp], cats[with_amp]),
            cats[with_amp],
            okeys[with_amp] + 1,
        )

    # AC coefficients of occupied blocks, zigzag positions 1..63.
    ac = zz[occupied, 1:]
    rows, cols = np.nonzero(ac)
    if len(rows):
        vals = ac[rows, cols].astype(np.int64)
        first = np.empty(len(rows), dtype=bool)
        first[0] = True
        first[1:] = rows[1:] != rows[:-1]
        prev = np.empty_like(cols)
        prev[0] = -1
        prev[1:] = cols[:-1]
        runs = np.where(first, cols, cols - prev - 1)
        zrl_counts = runs // 16
        run_eff = runs % 16
        absvals = np.abs(vals)
        if absvals.max() >= len(_CAT_LUT):
            raise ValueError("AC coefficient out of range for the fixed tables")
        sizes = _CAT_LUT[absvals]
        if sizes.max() > 12:
            raise ValueError("AC coefficient out of range for the fixed tables")
        nz_keys = okeys[rows] + (cols.astype(np.int64) + 1) * 16 + 2

        total_zrl = int(zrl_counts.sum())
        if total_zrl:
            zsrc = np.repeat(np.arange(len(rows)), zrl_counts)
            zrank = np.arange(total_zrl) - np.repeat(
                np.cumsum(zrl_counts) - zrl_counts, zrl_counts
            )
            sink.put(
                np.full(total_zrl, _AC_CODES[_ZRL_SYM], np.uint32),
                np.full(total_zrl, _AC_LENS[_ZRL_SYM], np.uint8),
                nz_keys[zsrc] + zrank - 6,
            )
        sym = 2 + run_eff * 12 + (sizes - 1)
        sink.put(_AC_CODES[sym], _AC_LENS[sym], nz_keys)
        sink.put(_magnitude(vals, sizes), sizes, nz_keys + 1)

        # EOB unless position 63 is occupied.
        lastcol = np.full(len(occupied), -1, dtype=np.int64)
        lastcol[rows] = cols
        needs_eob = lastcol < 62
    else:
        needs_eob = np.ones(len(occupied), dtype=bool)
    if needs_eob.any():
        ekeys = okeys[needs_eob] + 65 * 16
        sink.put(
            np.full(int(needs_eob.sum()), _AC_CODES[_EOB_SYM], np.uint32),
            np.full(int(needs_eob.sum()), _AC_LENS[_EOB_SYM], np.uint8),
            ekeys,
        )


def _pack_bits(values: np.ndarray, lengths: np.ndarray) -> bytes:
    if len(values) == 0:
        return b""
    lens64 = lengths.astype(np.int64)
    total = int(lens64.sum())
    starts = np.cumsum(lens64) - lens64
    sym_id = np.repeat(np.arange(len(values)), lens64)
    bitpos = np.arange(total, dtype=np.int64) - starts[sym_id]
    shifts = (lens64[sym_id] - 1 - bitpos).astype(np.uint32)
    bits = ((values[sym_id].astype(np.uint64) >> shifts) & 1).astype(np.uint8)
    return np.packbits(bits).tobytes()


def encode_planes(bases: list[int], planes: list[np.ndarray]) -> tuple[bytes, int]:
    """Serialize per-channel (base, quantized zigzag blocks) to payload bytes.

    Returns (payload, total_bits). The byte length is always
    ceil(total_bits / 8), which makes candidate sizes exactly predictable.
    """
    if len(bases) != len(planes):
        raise ValueError("bases and planes must pair up")
    sink = _ItemSink()
    offset = 0
    for base, zz in zip(bases, planes):
        if zz.ndim != 2 or zz.shape[1] != 64:
            raise ValueError(f"plane must be (nblocks, 64), got {zz.shape}")
        _emit_channel(sink, int(base), zz, offset)
        offset += zz.shape[0] + 1
    values, lengths = sink.ordered()
    total_bits = int(lengths.astype(np.int64).sum())
    return _pack_bits(values, lengths), total_bits


def encoded_size_bits(bases: list[int], planes: list[np.ndarray]) -> int:
    """Exact bit count of ``encode_planes`` without materializing bytes."""
    sink = _ItemSink()
    offset = 0
    for base, zz in zip(bases, planes):
        _emit_channel(sink, int(base), zz, offset)
        offset += zz.shape[0] + 1
    if not sink.lengths:
        return 0
    return int(np.concatenate(sink.lengths).astype(np.int64).sum())


class _BitReader:
    def __init__(self, payload: bytes):
        raw = np.frombuffer(payload, dtype=np.uint8)
        bits = np.unpackbits(raw)
        padded = np.concatenate([bits, np.zeros(_PEEK_BITS, dtype=np.uint8)]).astype(np.uint16)
        window = np.zeros(len(bits) + 1, dtype=np.uint16)
        acc = np.zeros(len(bits) + 1, dtype=np.uint16)
        for k in range(_PEEK_BITS):
            acc = (acc << 1) | padded[k : k + len(bits) + 1]
        window[:] = acc
        self._window = window
        self._nbits = len(bits)
        self.pos = 0

    def peek16(self) -> int:
        if self.pos > self._nbits:
            raise EntropyDecodeError("entropy: unexpected end of stream")
        return int(self._window[self.pos])

    def take(self, n: int) -> int:
        if self.pos + n > self._nbits:
            raise EntropyDecodeError("entropy: unexpected end of stream")
        val = int(self._window[self.pos]) >> (_PEEK_BITS - n)
        self.pos += n
        return val


def _read_symbol(reader: _BitReader, lut_sym: np.ndarray, lut_len: np.ndarray) -> int:
    window = reader.peek16()
    sym = int(lut_sym[window])
    if sym < 0:
        raise EntropyDecodeError("entropy: invalid prefix code")
    reader.pos += int(lut_len[window])
    return sym


def decode_planes(payload: bytes, block_counts: list[int]) -> tuple[list[int], list[np.ndarray]]:
    """Inverse of :func:`encode_planes` given per-channel block counts."""
    reader = _BitReader(payload)
    bases: list[int] = []
    planes: list[np.ndarray] = []
    for nblocks in block_counts:
        cat = _read_symbol(reader, _DC_LUT_SYM, _DC_LUT_LEN)
        if cat == _EMPTY_SYM or cat > MAX_CATEGORY:
            raise EntropyDecodeError("entropy: invalid channel base symbol")
        base = _unmagnitude(reader.take(cat), cat) if cat else 0
        zz = np.zeros((nblocks, 64), dtype=np.int32)
        diffs = np.zeros(nblocks, dtype=np.int64)
        blk = 0
        while blk < nblocks:
            sym = _read_symbol(reader, _DC_LUT_SYM, _DC_LUT_LEN)
            if sym == _EMPTY_SYM:
                run = reader.take(_EMPTY_RUN_BITS) + 1
                if blk + run > nblocks:
                    raise EntropyDecodeError("entropy: empty run overflows channel")
                blk += run
                continue
            diffs[blk] = _unmagnitude(reader.take(sym), sym) if sym else 0
            pos = 1
            while pos <= 63:
                acsym = _read_symbol(reader, _AC_LUT_SYM, _AC_LUT_LEN)
                if acsym == _EOB_SYM:
                    break
                if acsym == _ZRL_SYM:
                    pos += 16
                    continue
                run, size = divmod(acsym - 2, 12)
                size += 1
                pos += run
                if pos > 63:
                    raise EntropyDecodeError("entropy: AC run overflows block")
                zz[blk, pos] = _unmagnitude(reader.take(size), size)
                pos += 1
            blk += 1
        zz[:, 0] = np.cumsum(diffs).astype(np.int32)
        bases.append(base)
        planes.append(zz)
    return bases, planes
