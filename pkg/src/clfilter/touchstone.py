"""Touchstone v1 two-port files and the CSV trace format."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .network import Flag, flag_name
from .response import ResponseTrace, db20

_UNITS = {"HZ": 1.0, "KHZ": 1e3, "MHZ": 1e6, "GHZ": 1e9}
_FLAGS = {"ok": Flag.OK, "hard-zero": Flag.HARD_ZERO, "degenerate": Flag.DEGENERATE}

CSV_COLUMNS = ("freq_hz", "s11_db", "s21_db", "s11_deg", "s21_deg", "flag")


class TouchstoneError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TouchstoneData:
    freqs: np.ndarray  # Hz
    s: np.ndarray  # (n, 2, 2) complex
    z_ref: float
    comments: list[str] = field(default_factory=list)

    def to_trace(self) -> ResponseTrace:
        """Flags are not part of the format; every point reads back as ok."""
        return ResponseTrace(
            self.freqs,
            self.s[:, 0, 0],
            self.s[:, 1, 0],
            self.s[:, 0, 1],
            self.s[:, 1, 1],
            np.zeros(len(self.freqs), dtype=np.uint8),
            self.z_ref,
        )


def _fmt(x: float) -> str:
    return f"{x: .12e}"


def format_touchstone(trace: ResponseTrace, comments=()) -> str:
    lines = [f"! {c}" if c else "!" for c in comments]
    lines.append(f"# GHz S RI R {trace.z_ref:g}")
    for i, f in enumerate(trace.freqs):
        row = [f"{f / 1e9:.12f}"]
        for s in (trace.s11[i], trace.s21[i], trace.s12[i], trace.s22[i]):
            row += [_fmt(s.real), _fmt(s.imag)]
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"


def write_touchstone(path, trace: ResponseTrace, comments=()) -> Path:
    if np.any(np.diff(trace.freqs) <= 0):
        raise ValueError("Touchstone data must be strictly ascending in frequency")
    path = Path(path)
    path.write_text(format_touchstone(trace, comments))
    return path


def _pairs_to_complex(a, b, fmt):
    if fmt == "RI":
        return complex(a, b)
    mag = 10 ** (a / 20.0) if fmt == "DB" else a
    ang = math.radians(b)
    return complex(mag * math.cos(ang), mag * math.sin(ang))


def parse_touchstone(text: str) -> TouchstoneData:
    unit, fmt, z_ref = 1e9, "MA", 50.0
    seen_option = False
    comments, values = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line, _, comment = raw.partition("!")
        if comment and not line.strip():
            comments.append(comment.strip())
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if seen_option:
                continue  # only the first option line counts
            seen_option = True
            tokens = line[1:].upper().split()
            i = 0
            while i < len(tokens):
                tok = tokens[i]
                if tok in _UNITS:
                    unit = _UNITS[tok]
                elif tok in ("RI", "MA", "DB"):
                    fmt = tok
                elif tok == "R":
                    try:
                        z_ref = float(tokens[i + 1])
                    except (IndexError, ValueError):
                        raise TouchstoneError(f"line {lineno}: bad reference impedance") from None
                    i += 1
                elif tok != "S":
                    raise TouchstoneError(f"line {lineno}: unsupported option {tok!r}")
                i += 1
            continue
        if line.startswith("["):
            raise TouchstoneError(f"line {lineno}: Touchstone v2 keywords are not supported")
        try:
            values += [float(t) for t in line.split()]
        except ValueError:
            raise TouchstoneError(f"line {lineno}: non-numeric data {line!r}") from None

    if len(values) % 9:
        raise TouchstoneError(f"{len(values)} numbers do not form whole 2-port records")
    rows = np.asarray(values, dtype=float).reshape(-1, 9)
    freqs = rows[:, 0] * unit
    s = np.empty((len(rows), 2, 2), dtype=complex)
    # v1 two-port order: S11 S21 S12 S22
    for k, (i, j) in enumerate(((0, 0), (1, 0), (0, 1), (1, 1))):
        s[:, i, j] = [_pairs_to_complex(r[1 + 2 * k], r[2 + 2 * k], fmt) for r in rows]
    if np.any(np.diff(freqs) <= 0):
        raise TouchstoneError("frequencies are not strictly ascending")
    return TouchstoneData(freqs, s, z_ref, comments)


def read_touchstone(path) -> TouchstoneData:
    return parse_touchstone(Path(path).read_text())


def write_csv(path, trace: ResponseTrace) -> Path:
    path = Path(path)
    s11_db, s21_db = db20(trace.s11), db20(trace.s21)
    s11_deg, s21_deg = np.degrees(np.angle(trace.s11)), np.degrees(np.angle(trace.s21))
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for i, f in enumerate(trace.freqs):
            w.writerow([
                f"{f:.3f}",
                f"{s11_db[i]:.9f}",
                f"{s21_db[i]:.9f}",
                f"{s11_deg[i]:.9f}",
                f"{s21_deg[i]:.9f}",
                flag_name(int(trace.flags[i])),
            ])
    return path


def read_csv(path) -> dict[str, np.ndarray]:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        rows = list(reader)
    out = {c: np.array([float(r[c]) for r in rows]) for c in CSV_COLUMNS[:-1]}
    out["flag"] = np.array([_FLAGS[r["flag"]] for r in rows], dtype=np.uint8)
    return out
