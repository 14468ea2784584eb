"""Command-line surface: single blends, batch manifests, and metrics.

Every stdout line is one JSON record. Exit codes: 0 success, 1 I/O failure,
2 validation failure, 3 partial batch failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .blenders import METHODS, BlendRequest, blend, effective_scales
from .errors import GpBlendError, ImageIOError, UnsupportedFormat
from .gradient_domain import GpParams
from .guide import GuideSpec
from .image import load_image, load_mask, save_image
from .metrics import color_mse, grad_mse

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_PARTIAL = 3


def _parse_kernel(text: str) -> tuple:
    try:
        taps = [float(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse kernel {text!r}") from None
    total = sum(taps)
    if total <= 0.0:
        raise ValueError("kernel taps must sum to a positive value")
    return tuple(v / total for v in taps)


def _parse_scales(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"scales must be 'auto' or an integer, got {text!r}") from None


def _parse_guide(text: str) -> GuideSpec:
    if text == "downsample":
        return GuideSpec("downsample")
    if text.startswith("file:"):
        return GuideSpec("file", path=text[len("file:"):])
    raise ValueError(f"guide must be 'downsample' or 'file:PATH', got {text!r}")


def _guide_from_manifest(value) -> GuideSpec:
    if value is None:
        return GuideSpec("downsample")
    if isinstance(value, str):
        return _parse_guide(value)
    if isinstance(value, dict):
        return GuideSpec(
            kind=value.get("kind", "downsample"),
            path=value.get("path"),
            size=value.get("size", 64),
        )
    raise ValueError(f"cannot interpret guide value {value!r}")


def _default_jobs() -> int:
    raw = os.environ.get("GPBLEND_THREADS", "").strip()
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        raise ValueError(f"GPBLEND_THREADS must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise ValueError(f"GPBLEND_THREADS must be >= 1, got {jobs}")
    return jobs


def _run_blend(
    src_path: str,
    dst_path: str,
    mask_path: str,
    out_path: str,
    method: str,
    guide: GuideSpec,
    params: GpParams,
    mask_threshold: float = 0.5,
) -> dict:
    start = time.perf_counter()
    src = load_image(src_path)
    dst = load_image(dst_path)
    mask = load_mask(mask_path, threshold=mask_threshold)
    req = BlendRequest(
        src=src, dst=dst, mask=mask, method=method, guide=guide, params=params
    )
    out = blend(req)
    save_image(out, out_path)
    if method in ("gp-gan", "multiband"):
        scales = effective_scales(src.width, src.height, params, guide.size)
    else:
        scales = 1
    return {
        "out": out_path,
        "method": method,
        "seconds": round(time.perf_counter() - start, 6),
        "S": scales,
        "beta": params.beta,
    }


def cmd_blend(args) -> int:
    params = GpParams(
        beta=args.beta,
        gauss_kernel=_parse_kernel(args.sigma_kernel),
        scales=_parse_scales(args.scales),
    )
    guide = _parse_guide(args.guide)
    record = _run_blend(
        args.src,
        args.dst,
        args.mask,
        args.out,
        args.method,
        guide,
        params,
        args.mask_threshold,
    )
    print(json.dumps(record))
    return EXIT_OK


def _run_entry(index: int, line: str) -> dict:
    try:
        entry = json.loads(line)
    except json.JSONDecodeError as exc:
        return {"line": index + 1, "error": f"bad manifest line: {exc}"}
    try:
        for key in ("src_path", "dst_path", "mask_path", "out_path", "method"):
            if key not in entry:
                raise ValueError(f"manifest entry missing {key!r}")
        if entry["method"] not in METHODS:
            raise ValueError(f"unknown method {entry['method']!r}")
        params = GpParams(beta=float(entry.get("beta", 1.0)))
        guide = _guide_from_manifest(entry.get("guide"))
        return _run_blend(
            entry["src_path"],
            entry["dst_path"],
            entry["mask_path"],
            entry["out_path"],
            entry["method"],
            guide,
            params,
        )
    except (GpBlendError, ValueError, OSError) as exc:
        return {
            "line": index + 1,
            "out": entry.get("out_path"),
            "error": str(exc),
        }


def cmd_batch(args) -> int:
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    if jobs < 1:
        raise ValueError(f"--jobs must be >= 1, got {jobs}")
    try:
        with open(args.manifest, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise ImageIOError(f"cannot read manifest: {exc}") from exc
    entries = [(i, ln) for i, ln in enumerate(lines) if ln]
    if not entries:
        return EXIT_OK
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_entry, i, ln) for i, ln in entries]
        records = [f.result() for f in futures]
    failed = 0
    for record in records:
        if "error" in record:
            failed += 1
        print(json.dumps(record))
    return EXIT_PARTIAL if failed else EXIT_OK


def cmd_metrics(args) -> int:
    blended = load_image(args.blended)
    src = load_image(args.src)
    dst = load_image(args.dst)
    mask = load_mask(args.mask)
    record = {"grad_mse": grad_mse(blended, src, dst, mask)}
    if args.guide is not None:
        record["color_mse"] = color_mse(blended, load_image(args.guide))
    print(json.dumps(record))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpblend",
        description="Gradient-domain image blending with a low-resolution color guide.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_blend = sub.add_parser("blend", help="blend one src/dst/mask triple")
    p_blend.add_argument("--src", required=True)
    p_blend.add_argument("--dst", required=True)
    p_blend.add_argument("--mask", required=True)
    p_blend.add_argument("--out", required=True)
    p_blend.add_argument("--method", required=True, choices=METHODS)
    p_blend.add_argument("--guide", default="downsample")
    p_blend.add_argument("--beta", type=float, default=1.0)
    p_blend.add_argument("--sigma-kernel", default="1,2,1")
    p_blend.add_argument("--scales", default="auto")
    p_blend.add_argument("--mask-threshold", type=float, default=0.5)
    p_blend.set_defaults(func=cmd_blend)

    p_batch = sub.add_parser("batch", help="run a JSON-lines manifest")
    p_batch.add_argument("manifest")
    p_batch.add_argument("--jobs", type=int, default=None)
    p_batch.set_defaults(func=cmd_batch)

    p_metrics = sub.add_parser("metrics", help="fidelity metrics for a blend")
    p_metrics.add_argument("--blended", required=True)
    p_metrics.add_argument("--src", required=True)
    p_metrics.add_argument("--dst", required=True)
    p_metrics.add_argument("--mask", required=True)
    p_metrics.add_argument("--guide", default=None)
    p_metrics.set_defaults(func=cmd_metrics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ImageIOError, UnsupportedFormat) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GpBlendError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
