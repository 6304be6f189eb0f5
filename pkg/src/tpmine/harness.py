"""Run orchestration: load, abstract, mine with one or both miners, compare
and report."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ._validation import check_max_k, check_theta, check_time_limit
from .abstraction import (
    ABSTRACTIONS,
    DEFAULT_PERCENTILES,
    DEFAULT_SEG_MAX_ERROR,
    TemporalAbstraction,
)
from .io import format_patterns, load_mss, load_ucr, result_summary, result_timing
from .mining import Dataset, MiningResult, mine_evl, mine_ftpm

logger = logging.getLogger(__name__)

ALGORITHMS = ("ftpm", "evl", "both")
FORMATS = ("ucr", "mss")


@dataclass
class RunConfig:
    input: str | None = None
    format: str = "ucr"
    delimiter: str | None = None
    theta: float = 0.5
    max_k: int | None = None
    algorithm: str = "both"
    abstraction: tuple = ABSTRACTIONS
    percentiles: tuple = DEFAULT_PERCENTILES
    seg_max_error: float = DEFAULT_SEG_MAX_ERROR
    steady_slope: float = 0.0
    time_limit: float | None = None
    retain_evl: bool = False

    def validate(self) -> "RunConfig":
        check_theta(self.theta)
        check_max_k(self.max_k)
        check_time_limit(self.time_limit)
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        bad = set(self.abstraction) - set(ABSTRACTIONS)
        if bad or not self.abstraction:
            raise ValueError(f"abstraction must be a non-empty subset of {ABSTRACTIONS}")
        if len(self.percentiles) != 4:
            raise ValueError("exactly four percentiles are required")
        return self


def prepare(records, labels, config: RunConfig) -> Dataset:
    """Abstract raw records into an MSS dataset; value thresholds are pooled
    per variable over every record."""
    abstraction = TemporalAbstraction(
        abstractions=tuple(config.abstraction),
        percentiles=tuple(config.percentiles),
        seg_max_error=config.seg_max_error,
        steady_slope=config.steady_slope,
    )
    return Dataset(abstraction.fit_transform(records), labels)


def load_dataset(config: RunConfig) -> Dataset:
    if config.input is None:
        raise ValueError("no input file given")
    if config.format == "mss":
        return load_mss(config.input)
    records, labels = load_ucr(config.input, config.delimiter)
    return prepare(records, labels, config)


@dataclass
class RunReport:
    config: RunConfig
    dataset_summary: dict
    results: dict = field(default_factory=dict)
    verdict: str | None = None

    @property
    def speed_up(self) -> float | None:
        a, b = self.results.get("ftpm"), self.results.get("evl")
        if a is None or b is None or b.mining_seconds <= 0:
            return None
        return a.mining_seconds / b.mining_seconds

    @property
    def memory_ratio(self) -> float | None:
        a, b = self.results.get("ftpm"), self.results.get("evl")
        if a is None or b is None or a.memory_bytes == 0:
            return None
        return b.memory_bytes / a.memory_bytes

    @property
    def primary(self) -> MiningResult:
        return self.results.get("evl") or self.results["ftpm"]

    def stats(self) -> dict:
        """Machine-readable statistics.  Everything but ``timing`` is
        deterministic for a given input and configuration."""
        cfg = asdict(self.config)
        cfg["abstraction"] = list(cfg["abstraction"])
        cfg["percentiles"] = list(cfg["percentiles"])
        mr = self.memory_ratio
        return {
            "config": cfg,
            "dataset": self.dataset_summary,
            "results": {name: result_summary(r) for name, r in self.results.items()},
            "comparison": {
                "verdict": self.verdict,
                "memory_ratio": None if mr is None else round(mr, 6),
            },
            "timing": {
                **{name: result_timing(r) for name, r in self.results.items()},
                "speed_up": self.speed_up,
            },
        }

    def table(self) -> str:
        """Human-readable summary in the layout of a speed/memory comparison
        table: max FTP size, seconds and MB per miner, then ratios."""
        rows = []
        head = f"{'miner':<6} {'k':>4} {'sec':>10} {'MB':>10} {'ftps':>8} {'complete':>8}"
        rows.append(head)
        for name, r in self.results.items():
            rows.append(
                f"{name:<6} {r.max_size:>4} {r.mining_seconds:>10.3f} "
                f"{r.memory_bytes / 1e6:>10.4f} {len(r.ftps):>8} {str(r.complete):>8}"
            )
        if self.verdict is not None:
            su, mr = self.speed_up, self.memory_ratio
            rows.append(
                f"speed-up {su:.2f}" if su is not None else "speed-up n/a"
            )
            rows.append(f"mem. ratio {mr:.2f}" if mr is not None else "mem. ratio n/a")
            rows.append(f"verdict: {self.verdict}")
        rows.append("")
        rows.append(f"{'miner':<6} {'size':>4} {'cands':>9} {'pruned':>9} {'ftps':>7} {'millis':>10}")
        for name, r in self.results.items():
            for lv in r.levels:
                rows.append(
                    f"{name:<6} {lv.size:>4} {lv.candidates:>9} {lv.pruned:>9} {lv.ftps:>7} {lv.seconds * 1000:>10.2f}"
                )
        return "\n".join(rows) + "\n"


def compare(a: MiningResult, b: MiningResult) -> str:
    """``identical`` when both pattern/support listings match, ``differ``
    otherwise; ``incomplete`` if either run was cut short."""
    if not (a.complete and b.complete):
        return "incomplete"
    return "identical" if a.canonical() == b.canonical() else "differ"


def summarize_dataset(dataset: Dataset) -> dict:
    return {
        "records": len(dataset),
        "classes": [str(c) for c in dataset.classes],
        "class_sizes": list(dataset.class_sizes),
        "intervals": sum(len(z) for z in dataset.records),
        "variables": sorted({e.variable for z in dataset.records for e in z}),
    }


def run(config: RunConfig, dataset: Dataset | None = None) -> RunReport:
    """Mine ``dataset`` (loaded from ``config.input`` when omitted).

    Timing covers mining only; loading and abstraction happen first.
    """
    config.validate()
    if dataset is None:
        dataset = load_dataset(config)
    _ = dataset.index  # built before any timer starts
    report = RunReport(config, summarize_dataset(dataset))
    if config.algorithm in ("ftpm", "both"):
        report.results["ftpm"] = mine_ftpm(dataset, config.theta, config.max_k, config.time_limit)
    if config.algorithm in ("evl", "both"):
        report.results["evl"] = mine_evl(
            dataset, config.theta, config.max_k, config.time_limit, config.retain_evl
        )
    if config.algorithm == "both":
        report.verdict = compare(report.results["ftpm"], report.results["evl"])
        logger.info("verdict: %s", report.verdict)
    return report


def write_outputs(report: RunReport, output=None, stats=None) -> None:
    if output is not None:
        Path(output).write_text(format_patterns(report.primary), encoding="utf-8", newline="\n")
        if report.verdict == "differ":
            Path(str(output) + ".ftpm").write_text(
                format_patterns(report.results["ftpm"]), encoding="utf-8", newline="\n"
            )
    if stats is not None:
        Path(stats).write_text(json.dumps(report.stats(), indent=2) + "\n", encoding="utf-8", newline="\n")
