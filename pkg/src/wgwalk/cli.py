"""``wgwalk``: regenerate figure data sets as CSV.

Exit status is 0 on success, 2 on a configuration error and 1 on any
other failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ConfigError
from .experiments import ALIASES, EXPERIMENTS, parse_config, parse_number, run

log = logging.getLogger("wgwalk")


def _squeeze_pair(text):
    r, sep, phi = text.partition(",")
    if not sep:
        raise argparse.ArgumentTypeError("expected r,phi")
    try:
        return parse_number(r, "squeeze"), parse_number(phi, "squeeze")
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(exc.reason) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wgwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="experiment")
    aliases = {}
    for short, full in ALIASES.items():
        aliases.setdefault(full, []).append(short)
    for name in EXPERIMENTS:
        p = sub.add_parser(name, aliases=aliases.get(name, []), help=f"run {name}")
        p.add_argument("--config", type=Path, help="key=value config file")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--n-guides", type=int)
        p.add_argument("--coupling", type=float)
        p.add_argument("--detuning", type=float)
        p.add_argument("--tau-start", type=float)
        p.add_argument("--tau-stop", type=float)
        p.add_argument("--tau-steps", type=int)
        p.add_argument("--squeeze", type=_squeeze_pair, metavar="R,PHI")
        p.add_argument("--input-guide", type=int)
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


_FLAG_KEYS = ("n_guides", "coupling", "detuning", "tau_start", "tau_stop", "tau_steps",
              "squeeze", "input_guide")


def _output_path(base: str, suffix: str) -> Path:
    path = Path(base)
    if not suffix:
        return path
    return path.with_name(f"{path.stem}{suffix}{path.suffix or '.csv'}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    experiment = ALIASES.get(args.experiment, args.experiment)
    try:
        text = "" if args.config is None else args.config.read_text(encoding="utf-8")
        overrides = {k: getattr(args, k) for k in _FLAG_KEYS if getattr(args, k) is not None}
        if args.out is not None:
            overrides["output"] = args.out
        # `custom --config FILE` defers to the experiment named in the file
        if experiment != "custom" or args.config is None:
            overrides["experiment"] = experiment
        config = parse_config(text, overrides)
        results = run(config)
        for suffix, series in results.items():
            if config.output is None:
                sys.stdout.write(series.to_csv())
            else:
                path = _output_path(config.output, suffix)
                series.write(path)
                log.info("wrote %s (%d rows)", path, len(series))
    except ConfigError as exc:
        print(f"wgwalk: config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"wgwalk: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
