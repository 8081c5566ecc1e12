"""Reading and writing the APF text format.

::

    APF 1
    rank 2
    0 a :
    0 b :
    1 ab : a b      # covered faces, one rank lower

``#`` starts a comment.  The improper faces are implicit.
"""

from __future__ import annotations

import re

from .errors import ApfSyntaxError, MalformedInput, RankMismatch, UnknownFaceId
from .poset import BOT, ID_RE, TOP, RankedPoset

_FACE_RE = re.compile(r"^(-?\d+)\s+(\S+)\s*:(.*)$")


def _content_lines(text):
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield num, line


def parse_apf(text: str) -> RankedPoset:
    lines = list(_content_lines(text))
    if not lines or lines[0][1].split() != ["APF", "1"]:
        raise ApfSyntaxError("expected header 'APF 1'", lines[0][0] if lines else 1)
    if len(lines) < 2:
        raise ApfSyntaxError("expected 'rank <n>'", lines[0][0] + 1)
    num, head = lines[1]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "rank" or not re.fullmatch(r"-?\d+", parts[1]):
        raise ApfSyntaxError("expected 'rank <n>'", num)
    n = int(parts[1])
    if n < -1:
        raise RankMismatch(f"rank {n} below -1", num)
    declared = {}
    rows = []
    for num, line in lines[2:]:
        m = _FACE_RE.match(line)
        if not m:
            raise ApfSyntaxError(f"cannot parse face line {line!r}", num)
        r, fid, rest = int(m.group(1)), m.group(2), m.group(3).split()
        if not ID_RE.match(fid) or fid in (BOT, TOP):
            raise ApfSyntaxError(f"bad face id {fid!r}", num)
        for c in rest:
            if not ID_RE.match(c):
                raise ApfSyntaxError(f"bad face id {c!r}", num)
        if fid in declared:
            raise ApfSyntaxError(f"face {fid} declared twice", num)
        if not 0 <= r < n:
            raise RankMismatch(f"face {fid} has rank {r}, proper ranks are 0..{n - 1}", num)
        declared[fid] = r
        rows.append((num, r, fid, rest))
    faces = {}
    for num, r, fid, rest in rows:
        if r == 0 and rest:
            raise RankMismatch(f"vertex {fid} lists covered faces", num)
        for c in rest:
            if c not in declared:
                raise UnknownFaceId(f"unknown face {c!r}", num)
            if declared[c] != r - 1:
                raise RankMismatch(f"{fid} (rank {r}) covers {c} (rank {declared[c]})", num)
        faces[fid] = (r, rest)
    try:
        return RankedPoset.from_proper(n, faces)
    except MalformedInput as exc:
        raise ApfSyntaxError(str(exc), lines[-1][0]) from exc


def serialize_apf(p: RankedPoset) -> str:
    out = ["APF 1", f"rank {p.n}"]
    for r in range(0, p.n):
        for f in p.faces_of_rank(r):
            below = sorted(g for g in p.covers(f) if g != p.bottom)
            out.append(f"{r} {f} :" + ("".join(" " + g for g in below)))
    return "\n".join(out) + "\n"


def read_apf(path) -> RankedPoset:
    with open(path, encoding="utf-8") as fh:
        return parse_apf(fh.read())


def write_apf(p: RankedPoset, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_apf(p))
