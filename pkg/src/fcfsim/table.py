"""In-memory FCF tables and their CSV form."""

import csv
from contextlib import nullcontext
from dataclasses import dataclass, field

METHODS = ("analytic", "oracle", "direct", "tomography", "moussa")
BASE_COLUMNS = ("m", "n", "b", "value", "method")
RANGE_TOL = 1e-9


def fmt(x):
    """12-significant-digit float formatting used for every emitted number."""
    return f"{x:.12g}"


@dataclass(frozen=True)
class FcfRow:
    m: int
    n: int
    b: float
    value: float
    method: str


@dataclass
class FcfTable:
    rows: list = field(default_factory=list)

    def add(self, m, n, b, value, method):
        if method not in METHODS:
            raise ValueError(f"unknown method tag {method!r}")
        self.rows.append(FcfRow(int(m), int(n), float(b), float(value), method))

    def extend(self, other):
        self.rows.extend(other.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def sorted(self):
        return FcfTable(sorted(self.rows, key=lambda r: (r.method, r.m, r.n, r.b)))

    def out_of_range(self, tol=RANGE_TOL):
        return [r for r in self.rows if not -tol <= r.value <= 1 + tol]

    def lookup(self, method=None):
        """Map ``(m, n, b)`` to value, optionally filtered by method tag."""
        return {(r.m, r.n, r.b): r.value for r in self.rows if method in (None, r.method)}


def open_output(dest):
    """Context manager yielding a writable text stream for a path or open stream."""
    if hasattr(dest, "write"):
        return nullcontext(dest)
    return open(dest, "w", newline="")


def write_csv(dest, table, extra=None, header=""):
    """Write ``table``; ``extra`` maps additional column names to ``row -> str``.

    ``header`` is written verbatim first and should consist of ``#`` lines.
    """
    extra = extra or {}
    with open_output(dest) as fh:
        fh.write(header)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(BASE_COLUMNS) + list(extra))
        for r in table:
            writer.writerow(
                [r.m, r.n, fmt(r.b), fmt(r.value), r.method] + [f(r) for f in extra.values()]
            )


def read_csv(path):
    """Read a table written by :func:`write_csv`; extra columns are ignored.

    Lines starting with ``#`` are treated as metadata and skipped.
    """
    table = FcfTable()
    with open(path, newline="") as fh:
        lines = (line for line in fh if not line.startswith("#"))
        for rec in csv.DictReader(lines):
            table.add(int(rec["m"]), int(rec["n"]), float(rec["b"]), float(rec["value"]), rec["method"])
    return table
