#!/usr/bin/env python3
"""Rasterize the embedded bitmap fonts into src/render/font_data.inc.

Two faces are produced from DejaVu Sans Bold: a 14 px text face (printable
ASCII plus the grid symbols) and a 32 px symbol face (grid symbols plus the
start/end letters). Pixels are thresholded at 50% coverage and packed
MSB-first, one padded byte row per glyph row.
"""
import argparse
from pathlib import Path

from PIL import ImageFont

ROOT = Path(__file__).resolve().parent.parent
FONT = "/usr/share/fonts/truetype/dejavu/DejaVuSans-Bold.ttf"


def symbol_codepoints():
    out = []
    for line in (ROOT / "data" / "glyphs.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        out.append(int(line.split("\t")[2][2:], 16))
    return out


def rasterize(font, cp):
    ch = chr(cp)
    mask, (xoff, yoff) = font.getmask2(ch, mode="L")
    w, h = mask.size
    rows = []
    for y in range(h):
        row = bytearray((w + 7) // 8)
        for x in range(w):
            if mask.getpixel((x, y)) >= 128:
                row[x // 8] |= 0x80 >> (x % 8)
        rows.append(bytes(row))
    return {"cp": cp, "advance": round(font.getlength(ch)), "w": w, "h": h,
            "xoff": xoff, "yoff": yoff, "bits": b"".join(rows)}


def emit_face(name, px, cps, out):
    font = ImageFont.truetype(FONT, px)
    ascent, descent = font.getmetrics()
    glyphs = [rasterize(font, cp) for cp in sorted(set(cps))]
    bits = bytearray()
    out.append(f"inline constexpr unsigned char k{name}Bits[] = {{")
    records = []
    for g in glyphs:
        records.append((g, len(bits)))
        bits.extend(g["bits"])
    for i in range(0, len(bits), 24):
        out.append("    " + ", ".join(f"0x{b:02x}" for b in bits[i:i + 24]) + ",")
    if not bits:
        out.append("    0,")
    out.append("};")
    out.append(f"inline constexpr GlyphRecord k{name}Glyphs[] = {{")
    for g, off in records:
        out.append(f"    {{0x{g['cp']:04X}, {g['advance']}, {g['w']}, {g['h']}, {g['xoff']}, "
                   f"{g['yoff']}, {off}}},")
    out.append("};")
    out.append(f"inline constexpr FaceRecord k{name}Face = {{\"dejavu-sans-bold-{px}\", {px}, "
               f"{ascent}, {descent}, k{name}Glyphs, std::size(k{name}Glyphs), k{name}Bits}};")
    out.append("")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(ROOT / "src" / "render" / "font_data.inc"))
    args = ap.parse_args()
    symbols = symbol_codepoints()
    out = ["// Generated by scripts/gen_font.py from DejaVu Sans Bold. Do not edit.", ""]
    emit_face("Text", 14, list(range(32, 127)) + symbols, out)
    emit_face("Symbol", 32, symbols + [ord("S"), ord("E"), ord("?")], out)
    Path(args.out).write_text("\n".join(out), encoding="utf-8")


if __name__ == "__main__":
    main()
