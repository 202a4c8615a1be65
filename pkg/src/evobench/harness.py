"""Seeded batch execution and the results CSV."""

from __future__ import annotations

import csv
import hashlib
import io
import os
import struct
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Iterable, Iterator

from .config import Batch
from .engines import run
from .model import Crossover, GAConfig, RunRecord, SampleSet, Variant

CSV_COLUMNS = [
    "config_id",
    "variant",
    "crossover",
    "run_index",
    "seed",
    "evaluations_used",
    "success",
    "best_raw",
    "best_x",
    "best_y",
]


class PersistenceError(OSError):
    pass


class ResultsFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def derive_seed(master_seed: int, config_id: str, run_index: int) -> int:
    """Hash (master_seed, config_id, run_index) into an unsigned 64-bit seed."""
    payload = struct.pack("<Q", master_seed) + config_id.encode("utf-8") + b"\x00" + struct.pack("<Q", run_index)
    digest = hashlib.blake2b(payload, digest_size=8, person=b"evobench-seed").digest()
    return int.from_bytes(digest, "little")


def expand(batch: Batch) -> list[tuple[str, int, GAConfig]]:
    """Every (config_id, run_index, seeded config) cell of the batch, in canonical order."""
    cells = []
    for config_id, config in batch.configs.items():
        for run_index in range(batch.runs_per_config):
            seed = derive_seed(batch.master_seed, config_id, run_index)
            cells.append((config_id, run_index, config.replace(seed=seed)))
    return cells


def _run_cell(cell: tuple[str, int, GAConfig]) -> RunRecord:
    config_id, run_index, config = cell
    return run(config, config_id=config_id, run_index=run_index)


def _fmt_float(value: float) -> str:
    return format(value, ".17g")


def record_row(record: RunRecord) -> list[str]:
    genes = list(record.best_genes) + [float("nan")] * (2 - len(record.best_genes))
    return [
        record.config_id,
        record.variant.value,
        record.crossover.value,
        str(record.run_index),
        str(record.seed),
        str(record.evaluations_used),
        "true" if record.success else "false",
        _fmt_float(record.best_raw),
        _fmt_float(genes[0]),
        _fmt_float(genes[1]),
    ]


def iter_cells_completed(batch: Batch, workers: int = 1) -> Iterator[RunRecord]:
    cells = expand(batch)
    if workers <= 1:
        for cell in cells:
            yield _run_cell(cell)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_cell, cell) for cell in cells]
        for future in as_completed(futures):
            yield future.result()


def sort_records(records: Iterable[RunRecord], order: list[str]) -> list[RunRecord]:
    rank = {config_id: i for i, config_id in enumerate(order)}
    return sorted(records, key=lambda r: (rank.get(r.config_id, len(rank)), r.config_id, r.run_index))


def run_batch(batch: Batch, workers: int = 1, out_path: str | Path | None = None) -> list[RunRecord]:
    """Run every cell of ``batch`` and return the records in canonical order.

    With ``out_path``, records are appended to ``<out_path>.partial`` as they
    finish; the final sorted CSV replaces it once the batch completes.
    """
    if out_path is None:
        return sort_records(iter_cells_completed(batch, workers), list(batch.configs))

    out_path = Path(out_path)
    partial = out_path.with_name(out_path.name + ".partial")
    records = []
    try:
        with partial.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for record in iter_cells_completed(batch, workers):
                records.append(record)
                writer.writerow(record_row(record))
                handle.flush()
        records = sort_records(records, list(batch.configs))
        write_results(records, out_path)
        partial.unlink()
    except OSError as exc:
        raise PersistenceError(
            f"failed writing results to {out_path}: {exc}; completed runs so far are in {partial}"
        ) from exc
    return records


def results_csv_text(records: Iterable[RunRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow(record_row(record))
    return buffer.getvalue()


def write_results(records: Iterable[RunRecord], path: str | Path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(results_csv_text(records), encoding="utf-8", newline="")
    os.replace(tmp, path)


def read_results(path: str | Path) -> list[RunRecord]:
    """Parse a results CSV. Malformed content raises ResultsFormatError with its line number."""
    with Path(path).open(encoding="utf-8", newline="") as handle:
        return parse_results(handle)


def parse_results(lines: Iterable[str]) -> list[RunRecord]:
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise ResultsFormatError(1, "empty file, expected a header row") from None
    if header != CSV_COLUMNS:
        raise ResultsFormatError(1, f"unexpected header {header}")
    records = []
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise ResultsFormatError(line, f"expected {len(CSV_COLUMNS)} fields, got {len(row)}")
        try:
            success = {"true": True, "false": False}[row[6]]
            records.append(
                RunRecord(
                    config_id=row[0],
                    variant=Variant(row[1]),
                    crossover=Crossover(row[2]),
                    run_index=int(row[3]),
                    seed=int(row[4]),
                    evaluations_used=int(row[5]),
                    success=success,
                    best_raw=float(row[7]),
                    best_genes=(float(row[8]), float(row[9])),
                )
            )
        except (KeyError, ValueError) as exc:
            raise ResultsFormatError(line, f"bad field value ({exc})") from None
        if records[-1].evaluations_used < 1:
            raise ResultsFormatError(line, "evaluations_used must be positive")
    if not records:
        raise ResultsFormatError(max(reader.line_num, 1), "no result rows")
    return records


def to_sample_sets(records: Iterable[RunRecord]) -> list[SampleSet]:
    """Group evaluation counts by config_id, in first-seen order, sorted by run_index.

    A failed run already reports the full budget as ``evaluations_used`` and
    is flagged as censored.
    """
    groups: dict[str, list[RunRecord]] = {}
    for record in records:
        groups.setdefault(record.config_id, []).append(record)
    if not groups:
        raise ValueError("no records to group")
    samples = []
    for label, group in groups.items():
        group.sort(key=lambda r: r.run_index)
        samples.append(
            SampleSet(
                label=label,
                values=tuple(r.evaluations_used for r in group),
                censored=tuple(not r.success for r in group),
            )
        )
    return samples
