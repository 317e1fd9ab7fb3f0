"""Deterministic run reports: configuration, check results, rendering.

A report is a plain dict with a fixed shape so that rendering the same
configuration and seed twice yields byte-identical output; wall-clock timing
is attached only on explicit request.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import __version__

MAX_SEED = 2**64 - 1
_MD_DATA_LIMIT = 400


class ConfigError(ValueError):
    """Rejected run configuration or unparsable input."""


class InternalCheckError(RuntimeError):
    """An internal invariant was violated while running checks."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    samples: int = 64
    tolerance: float = 1e-9
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.samples < 8:
            raise ConfigError(f"samples must be at least 8, got {self.samples}")
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "params": dict(self.params),
        }


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" or "fail"
    data: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status not in ("pass", "fail"):
            raise InternalCheckError(f"check status must be pass/fail, got {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def build_report(
    config: RunConfig, checks: Sequence[CheckResult], timing: float | None = None
) -> dict:
    passed = sum(1 for c in checks if c.passed)
    report: dict[str, Any] = {
        "version": __version__,
        "seed": config.seed,
        "config": config.as_dict(),
        "checks": [{"name": c.name, "status": c.status, "data": dict(c.data)} for c in checks],
        "summary": {"passed": passed, "failed": len(checks) - passed},
    }
    if timing is not None:
        report["timing_seconds"] = timing
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


def _compact(data: dict) -> str:
    return json.dumps(data, sort_keys=True, default=str)


def render_markdown(report: dict) -> str:
    config = report["config"]
    params = ", ".join(f"{k}={v}" for k, v in sorted(config["params"].items()))
    lines = [
        f"# catchi report: {config['command']}",
        "",
        f"- version: {report['version']}",
        f"- seed: {report['seed']}",
        f"- samples: {config['samples']}",
        f"- tolerance: {config['tolerance']}",
        f"- params: {params or '(none)'}",
        "",
        "## checks",
        "",
    ]
    for check in report["checks"]:
        line = f"- [{check['status']}] {check['name']}"
        if check["data"]:
            blob = _compact(check["data"])
            if len(blob) <= _MD_DATA_LIMIT:
                line += f" — `{blob}`"
            else:
                line += f" — (data: {len(blob)} bytes, use --format json)"
        lines.append(line)
    summary = report["summary"]
    lines += ["", "## summary", "", f"{summary['passed']} passed, {summary['failed']} failed"]
    if "timing_seconds" in report:
        lines.append(f"elapsed: {report['timing_seconds']:.3f}s")
    return "\n".join(lines) + "\n"


def render_plain(report: dict, body: str | None = None) -> str:
    """One line per check, or a handler-supplied body for calculator output."""
    if body is not None:
        return body if body.endswith("\n") else body + "\n"
    lines = []
    for check in report["checks"]:
        line = f"{check['name']}: {check['status']}"
        if check["data"]:
            blob = _compact(check["data"])
            if len(blob) <= _MD_DATA_LIMIT:
                line += f"  {blob}"
        lines.append(line)
    summary = report["summary"]
    lines.append(f"{summary['passed']} passed, {summary['failed']} failed")
    return "\n".join(lines) + "\n"
