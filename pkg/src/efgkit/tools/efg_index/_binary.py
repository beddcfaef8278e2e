"""Binary index container: magic, version, kind, tagged length-prefixed sections, CRC32 trailer."""

from __future__ import annotations

import struct
import zlib
from collections.abc import Sequence

from efgkit.core.exceptions import InputFormatError, ValidationError, VerificationError

MAGIC = b"EFGIDX"
VERSION = 1
_LENGTH = struct.Struct("<Q")
_CRC_TAG = b"CRC "


def pack(kind_code: int, sections: Sequence[tuple[bytes, bytes]]) -> bytes:
    """Assemble the container; every section is ``tag(4) length(u64 LE) payload``."""
    out = bytearray(MAGIC)
    out += bytes((VERSION, kind_code))
    for tag, payload in sections:
        if len(tag) != 4:
            msg = f"Section tag {tag!r} must be four bytes"
            raise ValidationError(msg)
        out += tag + _LENGTH.pack(len(payload)) + payload
    crc = zlib.crc32(bytes(out)) & 0xFFFFFFFF
    out += _CRC_TAG + _LENGTH.pack(4) + struct.pack("<I", crc)
    return bytes(out)


def unpack(data: bytes) -> tuple[int, dict[bytes, bytes]]:
    """Split a container into its kind code and sections.

    Raises:
        InputFormatError: On a wrong magic, an unknown version or a truncated section.
        VerificationError: If the CRC32 trailer does not match the content.
    """
    header = len(MAGIC) + 2
    if len(data) < header or not data.startswith(MAGIC):
        msg = "Not an efgkit index file (bad magic)"
        raise InputFormatError(msg)
    version, kind_code = data[len(MAGIC)], data[len(MAGIC) + 1]
    if version != VERSION:
        msg = f"Unsupported index file version {version}"
        raise InputFormatError(msg)

    trailer = len(data) - 16
    if trailer < header or data[trailer : trailer + 4] != _CRC_TAG or _LENGTH.unpack_from(data, trailer + 4)[0] != 4:
        msg = "Index file has no CRC trailer"
        raise InputFormatError(msg)
    (crc,) = struct.unpack_from("<I", data, trailer + 12)
    expected = zlib.crc32(data[:trailer]) & 0xFFFFFFFF
    if crc != expected:
        msg = f"Index file checksum mismatch (stored {crc:08x}, computed {expected:08x})"
        raise VerificationError(msg, witness=(crc, expected))

    sections: dict[bytes, bytes] = {}
    pos = header
    while pos < trailer:
        if pos + 12 > trailer:
            msg = f"Truncated section header at byte {pos}"
            raise InputFormatError(msg)
        tag = data[pos : pos + 4]
        (length,) = _LENGTH.unpack_from(data, pos + 4)
        start, end = pos + 12, pos + 12 + length
        if end > trailer:
            msg = f"Section {tag!r} runs past the end of the file"
            raise InputFormatError(msg)
        if tag in sections:
            msg = f"Duplicate section {tag!r}"
            raise InputFormatError(msg)
        sections[tag] = data[start:end]
        pos = end
    return kind_code, sections
