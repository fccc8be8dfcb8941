"""Plain-text snapshot records.

A snapshot file holds one or more records. Each record is a header line
``# <field> <layout> <dims...> <step>`` followed by one value per line in
row-major order (x fastest for 2D, so 2D dims are written ``ny nx``).
Values use 17 significant digits, which round-trips float64 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

FIELDS = ("ex", "hy", "e", "bx", "by")
LAYOUTS = ("1d-scalar", "1d-edge", "2d-scalar", "2d-edge-x", "2d-edge-y")


@dataclass
class SnapshotRecord:
    step: int
    field: str
    layout: str
    dims: tuple[int, ...]
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.field not in FIELDS:
            raise ValueError(f"unknown field {self.field!r}")
        if self.layout not in LAYOUTS:
            raise ValueError(f"unknown layout {self.layout!r}")
        self.values = np.asarray(self.values, dtype=np.float64).ravel()
        if self.values.size != int(np.prod(self.dims)):
            raise ValueError(
                f"{self.field}: {self.values.size} values do not fill dims {self.dims}"
            )

    def render(self) -> str:
        head = " ".join(map(str, (self.field, self.layout, *self.dims, self.step)))
        body = "".join(f"{v:.17g}\n" for v in self.values.tolist())
        return f"# {head}\n{body}"

    def as_array(self) -> NDArray[np.float64]:
        return self.values.reshape(self.dims)


def write_snapshot(path: Path, records: list[SnapshotRecord]) -> Path:
    path = Path(path)
    path.write_text("".join(r.render() for r in records), encoding="ascii")
    return path


def read_snapshot(path: Path) -> list[SnapshotRecord]:
    records: list[SnapshotRecord] = []
    header: list[str] | None = None
    values: list[float] = []

    def flush() -> None:
        if header is None:
            return
        field, layout, *rest = header
        *dims, step = map(int, rest)
        records.append(SnapshotRecord(step, field, layout, tuple(dims), np.array(values)))

    for line in Path(path).read_text(encoding="ascii").splitlines():
        if line.startswith("#"):
            flush()
            header = line[1:].split()
            values = []
        elif line.strip():
            values.append(float(line))
    flush()
    return records
