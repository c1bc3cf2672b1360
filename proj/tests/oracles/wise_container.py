"""Independent reader for .wise containers, written from the byte layout alone.

Used by the CLI tests to check what the C++ writer produces. Only the LZW
stage is decoded here; projection and bit-plane payloads are left opaque.
"""

import struct

STAGE_PROJECTION = 1
STAGE_BITPLANE = 2
STAGE_LZW = 4


class Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.data):
            raise ValueError("truncated at offset %d" % self.pos)
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def unpack(self, fmt):
        return struct.unpack("<" + fmt, self.take(struct.calcsize("<" + fmt)))

    def varint(self):
        value = shift = 0
        while True:
            b = self.take(1)[0]
            value |= (b & 0x7F) << shift
            shift += 7
            if not b & 0x80:
                return value

    def delta_list(self):
        out, prev = [], 0
        for i in range(self.varint()):
            d = self.varint()
            prev = d if i == 0 else prev + d
            out.append(prev)
        return out


def parse(data):
    r = Reader(data)
    if r.take(4) != b"WISE":
        raise ValueError("bad magic")
    version, flags, width, height, channels, depth, patch_size = r.unpack("HHIIBBI")
    rows = r.delta_list()
    cols = r.delta_list()
    (count,) = r.unpack("I")
    patches = []
    for _ in range(count):
        orow, ocol, h, w, ulen, clen, mask = r.unpack("IIIIQQB")
        patches.append(dict(origin=(orow, ocol), height=h, width=w, uncompressed=ulen,
                            compressed=clen, mask=mask))
    for p in patches:
        p["payload"] = r.take(p["compressed"])
    if r.pos != len(data):
        raise ValueError("%d trailing bytes" % (len(data) - r.pos))
    return dict(version=version, flags=flags, width=width, height=height, channels=channels,
                depth=depth, patch_size=patch_size, removed_rows=rows, removed_cols=cols,
                patches=patches)


def lzw_decode(packed, max_width=16):
    """Textbook LZW over an MSB-first bit stream with CLEAR=256, END=257."""
    bits = "".join(format(b, "08b") for b in packed)
    pos = 0
    table = [bytes([i]) for i in range(256)] + [b"", b""]
    prev = None
    out = bytearray()
    while True:
        # Width the decoder needs for the largest code that may appear next.
        largest = len(table) - 1 + (1 if prev is not None else 0)
        width = min(max(largest.bit_length(), 9), max_width)
        if pos + width > len(bits):
            raise ValueError("missing END code")
        code = int(bits[pos:pos + width], 2)
        pos += width
        if code == 257:
            return bytes(out)
        if code == 256:
            table = table[:258]
            prev = None
            continue
        if code < len(table) and code not in (256, 257):
            entry = table[code]
        elif code == len(table) and prev is not None:
            entry = prev + prev[:1]
        else:
            raise ValueError("bad code %d" % code)
        if prev is not None and len(table) < (1 << max_width):
            table.append(prev + entry[:1])
        out += entry
        prev = entry


def reconstruct_lzw_only(container):
    """Image bytes for a container whose patches all use the LZW-only mask."""
    c = container
    ch = c["height"] - len(c["removed_rows"])
    cw = c["width"] - len(c["removed_cols"])
    n = c["channels"]
    body = bytearray(ch * cw * n)
    width = (c["flags"] >> 8) & 0xFF
    for p in c["patches"]:
        if p["mask"] != STAGE_LZW:
            raise ValueError("patch is not LZW-only")
        tile = lzw_decode(p["payload"], width)
        r0, c0 = p["origin"]
        span = p["width"] * n
        for m in range(p["height"]):
            start = ((r0 + m) * cw + c0) * n
            body[start:start + span] = tile[m * span:(m + 1) * span]
    kept_rows = [i for i in range(c["height"]) if i not in set(c["removed_rows"])]
    kept_cols = [j for j in range(c["width"]) if j not in set(c["removed_cols"])]
    full = bytearray(c["height"] * c["width"] * n)
    for i, m in enumerate(kept_rows):
        for j, q in enumerate(kept_cols):
            src = (i * cw + j) * n
            dst = (m * c["width"] + q) * n
            full[dst:dst + n] = body[src:src + n]
    return bytes(full)
