"""Command-line entry point: ``overlaysim --num-nodes 200 --out-csv results.csv``."""
from __future__ import annotations

import sys

from .errors import ConfigurationError, OverlayError
from .experiment import format_csv, parse_config, run_experiment, write_snapshots


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except ConfigurationError as exc:
        print(f"overlaysim: usage error: {exc}", file=sys.stderr)
        return 2
    try:
        result = run_experiment(cfg)
        text = format_csv(result.report.finalize())
        if cfg.out_csv:
            with open(cfg.out_csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if cfg.out_dot_prefix and result.initial_snapshot is not None:
            write_snapshots(result, cfg.out_dot_prefix)
    except (OverlayError, OSError) as exc:
        print(f"overlaysim: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
