"""Range scans over field orders and ring moduli, with persistence.

Scans classify each qualifying order as Parker or not, collect per-order
counts into ScanRecords, and maintain the running record-breaker table
(orders whose magic-square count exceeds every smaller scanned order).
Scans are deterministic: records come back ascending by order no matter how
many worker processes run, and a checkpoint file replays completed orders so
an interrupted scan resumes to identical output.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .algebra import is_prime, prime_power_base, squares, make_carrier
from .search import DEFAULT_POLICY, msos_field, msos_ring, prefilter_field

log = logging.getLogger("parker.survey")

CSV_COLUMNS = ("order", "kind", "square_count", "msos_count",
               "dihedral_class_count", "parker", "prefilter_reason",
               "elapsed_ms", "policy")


@dataclass(frozen=True)
class ScanRecord:
    """Per-order survey result."""

    order: int
    kind: str  # "field" or "ring"
    square_count: int
    msos_count: int
    dihedral_class_count: int
    parker: bool
    prefilter_reason: str | None
    elapsed_ms: int
    policy: str

    def __post_init__(self):
        if self.parker != (self.msos_count == 0):  # pragma: no cover
            raise AssertionError("parker flag disagrees with msos count")


@dataclass(frozen=True)
class RecordBreakerTable:
    """Orders whose count strictly exceeds every smaller scanned order."""

    kind: str
    rows: tuple[tuple[int, int], ...]


def record_breakers(records) -> RecordBreakerTable:
    """Recompute the record-breaker table from a full record list."""
    rows = []
    best = -1
    kind = records[0].kind if records else ""
    for rec in sorted(records, key=lambda r: r.order):
        if rec.msos_count > best:
            rows.append((rec.order, rec.msos_count))
            best = rec.msos_count
    return RecordBreakerTable(kind, tuple(rows))


def non_standard_record_breakers(table: RecordBreakerTable) -> list[int]:
    """Record-breaking orders not of the form 2*p with p prime, p = 1 mod 4."""
    out = []
    for order, _ in table.rows:
        half = order // 2
        if order % 2 or not is_prime(half) or half % 4 != 1:
            out.append(order)
    return out


# ---------------------------------------------------------------------------
# Workers (top level so process pools can pickle the call).


def _now_ms() -> float:
    return time.perf_counter() * 1000.0


def scan_field_order(order: int, policy: str = DEFAULT_POLICY) -> ScanRecord:
    """Classify one field order: prefilter first, full search if inconclusive."""
    t0 = _now_ms()
    carrier = make_carrier("field", order)
    square_count = len(squares(carrier))
    reason = prefilter_field(carrier)
    if reason is not None:
        return ScanRecord(order, "field", square_count, 0, 0, True, reason,
                          int(_now_ms() - t0), policy)
    result = msos_field(carrier, policy)
    return ScanRecord(order, "field", square_count, result.tuple_count,
                      result.dihedral_class_count, result.parker, None,
                      int(_now_ms() - t0), policy)


def scan_ring_order(order: int, policy: str = DEFAULT_POLICY) -> ScanRecord:
    """Classify one ring modulus with the divisor-orbit search."""
    t0 = _now_ms()
    carrier = make_carrier("ring", order)
    square_count = len(carrier.square_set())
    result = msos_ring(carrier, policy)
    return ScanRecord(order, "ring", square_count, result.tuple_count,
                      result.dihedral_class_count, result.parker, None,
                      int(_now_ms() - t0), policy)


def _field_worker(args):
    return scan_field_order(*args)


def _ring_worker(args):
    return scan_ring_order(*args)


# ---------------------------------------------------------------------------
# Order selection.


def field_orders(lo: int, hi: int, order_filter: str = "all") -> list[int]:
    """Field orders in [lo, hi]: every prime power, primes only, or strict powers."""
    out = []
    for n in range(max(lo, 2), hi + 1):
        pr = prime_power_base(n)
        if pr is None:
            continue
        if order_filter == "primes-only" and pr[1] != 1:
            continue
        if order_filter == "prime-powers-only" and pr[1] == 1:
            continue
        out.append(n)
    return out


def ring_orders(lo: int, hi: int, order_filter="all") -> list[int]:
    """Ring moduli in [lo, hi]: all, odd only, or a congruence (mod M, res R)."""
    ns = range(max(lo, 2), hi + 1)
    if order_filter == "all":
        return list(ns)
    if order_filter == "odd":
        return [n for n in ns if n % 2]
    if isinstance(order_filter, tuple) and len(order_filter) == 2:
        mod, res = order_filter
        return [n for n in ns if n % mod == res % mod]
    raise ValueError(f"unknown ring filter {order_filter!r}")


# ---------------------------------------------------------------------------
# Scan driver.


def _run_scan(kind, orders, worker, jobs, checkpoint, policy):
    done = load_checkpoint(checkpoint) if checkpoint else {}
    pending = [n for n in orders if (kind, n) not in done]
    computed = {}
    if pending:
        args = [(n, policy) for n in pending]
        if jobs and jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = pool.map(worker, args)
                for rec in results:
                    computed[rec.order] = rec
                    if checkpoint:
                        append_checkpoint(checkpoint, rec)
        else:
            for a in args:
                rec = worker(a)
                computed[rec.order] = rec
                if checkpoint:
                    append_checkpoint(checkpoint, rec)
    records = [done.get((kind, n)) or computed[n] for n in orders]
    return records, record_breakers(records)


def scan_fields(lo: int, hi: int, order_filter: str = "all", jobs: int = 1,
                checkpoint: str | None = None,
                policy: str = DEFAULT_POLICY):
    """Classify every qualifying field order in [lo, hi].

    Returns (records ascending by order, record-breaker table).  With jobs > 1
    the orders are distributed over a process pool; output order and content
    do not depend on jobs.
    """
    orders = field_orders(lo, hi, order_filter)
    return _run_scan("field", orders, _field_worker, jobs, checkpoint, policy)


def scan_rings(lo: int, hi: int, order_filter="all", jobs: int = 1,
               checkpoint: str | None = None,
               policy: str = DEFAULT_POLICY):
    """Classify every qualifying ring modulus in [lo, hi]; see scan_fields."""
    orders = ring_orders(lo, hi, order_filter)
    return _run_scan("ring", orders, _ring_worker, jobs, checkpoint, policy)


# ---------------------------------------------------------------------------
# Persistence.


def record_to_json(rec: ScanRecord) -> str:
    return json.dumps(asdict(rec), sort_keys=True)


def record_from_json(line: str) -> ScanRecord:
    obj = json.loads(line)
    return ScanRecord(**{k: obj[k] for k in (
        "order", "kind", "square_count", "msos_count", "dihedral_class_count",
        "parker", "prefilter_reason", "elapsed_ms", "policy")})


def write_report(records, fmt: str, path) -> None:
    """Write records as CSV (fixed column order) or JSONL."""
    text = render_report(records, fmt)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def render_report(records, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([
                rec.order, rec.kind, rec.square_count, rec.msos_count,
                rec.dihedral_class_count, "true" if rec.parker else "false",
                rec.prefilter_reason or "", rec.elapsed_ms, rec.policy])
        return buf.getvalue()
    if fmt == "jsonl":
        return "".join(record_to_json(rec) + "\n" for rec in records)
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str, fmt: str) -> list[ScanRecord]:
    """Inverse of render_report, used for round-trip checks and resumption."""
    if fmt == "jsonl":
        return [record_from_json(line) for line in text.splitlines() if line]
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        out = []
        for row in rows[1:]:
            out.append(ScanRecord(
                order=int(row[0]), kind=row[1], square_count=int(row[2]),
                msos_count=int(row[3]), dihedral_class_count=int(row[4]),
                parker=row[5] == "true", prefilter_reason=row[6] or None,
                elapsed_ms=int(row[7]), policy=row[8]))
        return out
    raise ValueError(f"unknown report format {fmt!r}")


def append_checkpoint(path, rec: ScanRecord) -> None:
    """Append one completed record; one JSON object per line, flushed."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(record_to_json(rec) + "\n")
        fh.flush()


def load_checkpoint(path) -> dict[tuple[str, int], ScanRecord]:
    """Completed records keyed by (kind, order); corrupt lines are skipped.

    The key set doubles as the completed-order set when resuming.
    """
    done: dict[tuple[str, int], ScanRecord] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = record_from_json(line)
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    log.warning("skipping corrupt checkpoint line %d in %s",
                                lineno, path)
                    continue
                done[(rec.kind, rec.order)] = rec
    except FileNotFoundError:
        pass
    return done
