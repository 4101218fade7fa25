"""Command-line interface: saliency detect | eval | ablate."""

import argparse
import sys

from .config import PipelineConfig, load_config
from . import runner

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ALL_FAILED = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog="saliency",
        description="Graph-based salient object detection and benchmarking",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_detect = sub.add_parser("detect", help="compute saliency maps")
    p_detect.add_argument("--input", required=True, help="image file or directory")
    p_detect.add_argument("--output", required=True, help="output directory")
    p_detect.add_argument("--config", help="key=value config file")
    p_detect.add_argument("--edge-maps", help="directory of <stem>.png edge maps")
    p_detect.add_argument("--objectness", help="directory of <stem>.png objectness maps")
    p_detect.add_argument("--dump-stages", action="store_true",
                          help="also write per-stage PNG/CSV dumps")
    p_detect.add_argument("--jobs", type=int, default=1, help="parallel images")

    p_eval = sub.add_parser("eval", help="score predictions against ground truth")
    p_eval.add_argument("--pred", required=True, help="directory of saliency maps")
    p_eval.add_argument("--gt", required=True, help="directory of ground-truth masks")
    p_eval.add_argument("--report", required=True,
                        help="per-image CSV path; curve CSV and summary JSON are siblings")

    p_ablate = sub.add_parser("ablate", help="run configuration variants side by side")
    p_ablate.add_argument("--manifest", required=True, help="JSON dataset manifest")
    p_ablate.add_argument("--variants", required=True,
                          help="comma-separated variant tokens, e.g. "
                               "'default,edge_weights=color,refine=none'")
    p_ablate.add_argument("--out", required=True, help="output directory")
    p_ablate.add_argument("--config", help="base key=value config file")
    p_ablate.add_argument("--jobs", type=int, default=1, help="parallel images")
    return parser


def _load_cfg(path):
    if path is None:
        return PipelineConfig()
    return load_config(path)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "detect":
            cfg = _load_cfg(args.config)
            ok, failed = runner.detect(
                args.input, args.output, cfg,
                edge_dir=args.edge_maps,
                objectness_dir=args.objectness,
                dump_stages=args.dump_stages,
                jobs=max(1, args.jobs),
            )
            if ok == 0:
                print("error: no image processed successfully", file=sys.stderr)
                return EXIT_ALL_FAILED if failed else EXIT_USAGE
            return EXIT_OK
        if args.command == "eval":
            report = runner.evaluate_directories(args.pred, args.gt)
            paths = runner.write_report(report, args.report)
            print(f"wrote {', '.join(str(p) for p in paths)}")
            return EXIT_OK
        if args.command == "ablate":
            cfg = _load_cfg(args.config)
            tokens = [t.strip() for t in args.variants.split(",") if t.strip()]
            runner.ablate(args.manifest, tokens, args.out, cfg,
                          jobs=max(1, args.jobs))
            return EXIT_OK
    except (ValueError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
