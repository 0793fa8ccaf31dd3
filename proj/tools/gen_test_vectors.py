#!/usr/bin/env python3
"""Freezes reference vectors from CPython for the decoder and literal tests.

utf8_decode_vectors.tsv:  input_hex <TAB> output_hex <TAB> replacements
    output is bytes.decode("utf-8", "replace") re-encoded as UTF-8;
    replacements counts the error-handler invocations.
bytes_literal_vectors.tsv:  literal <TAB> bytes_hex
    bytes are ast.literal_eval(literal).
"""
import ast
import codecs
import random
import sys
from pathlib import Path

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent.parent / "tests" / "data"
rng = random.Random(20240611)

counter = [0]
def counting_replace(err):
    counter[0] += 1
    return ("�", err.end)
codecs.register_error("count_replace", counting_replace)

# Byte values concentrated around the UTF-8 boundary cases.
interesting = [0x00, 0x41, 0x7F, 0x80, 0x8F, 0x90, 0x9F, 0xA0, 0xBF, 0xC0, 0xC1, 0xC2,
               0xDF, 0xE0, 0xE1, 0xEC, 0xED, 0xEE, 0xEF, 0xF0, 0xF1, 0xF3, 0xF4, 0xF5,
               0xF7, 0xF8, 0xFB, 0xFC, 0xFE, 0xFF, 0xBD]

def random_bytes():
    n = rng.randint(0, 12)
    mode = rng.random()
    if mode < 0.4:
        return bytes(rng.choice(interesting) for _ in range(n))
    if mode < 0.7:
        return bytes(rng.randrange(256) for _ in range(n))
    # Valid text with a few corruptions.
    chars = [chr(rng.choice([rng.randrange(0x20, 0x7F), rng.randrange(0x80, 0x800),
                             rng.randrange(0x800, 0xD800), rng.randrange(0xE000, 0x10000),
                             rng.randrange(0x10000, 0x110000)])) for _ in range(rng.randint(1, 5))]
    b = bytearray("".join(chars).encode("utf-8"))
    for _ in range(rng.randint(0, 2)):
        if not b:
            break
        op = rng.randrange(3)
        i = rng.randrange(len(b))
        if op == 0:
            del b[i]
        elif op == 1:
            b[i] = rng.randrange(256)
        else:
            b.insert(i, rng.choice(interesting))
    return bytes(b)

fixed = [b"", b"hi", b"\xf0\x28", b"\xf0\x9f\x98\x89", b"\xed\xa0\x80", b"\xe0\x80\x80",
         b"\xf4\x90\x80\x80", b"\xc0\xaf", b"\xf0\x9f\x98", b"\xe2\x82", b"\x80\x80",
         b"\xef\xbf\xbd", b"\xf1\x80\x80\xe1\x80\xc2", b"a\xffb", b"\xf8\x88\x80\x80\x80"]
seen = set()
rows = []
for b in fixed + [random_bytes() for _ in range(3000)]:
    if b in seen:
        continue
    seen.add(b)
    counter[0] = 0
    text = b.decode("utf-8", "count_replace")
    rows.append(f"{b.hex()}\t{text.encode('utf-8').hex()}\t{counter[0]}\n")
(out_dir / "utf8_decode_vectors.tsv").write_text(
    "# input_hex\toutput_hex\treplacements (CPython utf-8 'replace')\n" + "".join(rows))

escapes = ["\\\\", "\\'", '\\"', "\\n", "\\r", "\\t"]
def random_literal():
    quote = rng.choice(["'", '"'])
    parts = []
    for _ in range(rng.randint(0, 14)):
        r = rng.random()
        if r < 0.45:
            c = chr(rng.randrange(0x20, 0x7F))
            if c in ("\\", quote):
                c = "\\" + c
            parts.append(c)
        elif r < 0.75:
            digits = "0123456789abcdefABCDEF"
            parts.append("\\x" + rng.choice(digits) + rng.choice(digits))
        else:
            parts.append(rng.choice(escapes))
    return "b" + quote + "".join(parts) + quote

rows = []
for lit in ["b''", "b'RT hi'", "b'\\xF0\\x9F\\x98\\xA0'", 'b"it\'s"'] + [random_literal() for _ in range(2000)]:
    value = ast.literal_eval(lit)
    assert isinstance(value, bytes)
    rows.append(f"{lit}\t{value.hex()}\n")
(out_dir / "bytes_literal_vectors.tsv").write_text(
    "# literal\tbytes_hex (CPython ast.literal_eval)\n" + "".join(rows))
