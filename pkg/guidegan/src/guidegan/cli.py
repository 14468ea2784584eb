"""Command line front end: train, export-guide, latent-search.

Each command prints one JSON record on success.  Exit codes: 0 success,
1 file problems, 2 bad arguments or validation failures.
"""

import argparse
import json
import sys
import time

from .checkpoint import load_generator
from .errors import GuideGanError
from .export import export_guide, load_composite, write_guide_png
from .latent import LatentSearchConfig, latent_search
from .models import NetConfig
from .train import TrainConfig, train


def _parse_channels(text):
    try:
        channels = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad channel list: {text!r}") from exc
    if not channels:
        raise argparse.ArgumentTypeError("channel list is empty")
    return channels


def build_parser():
    parser = argparse.ArgumentParser(prog="guidegan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a generator and write a checkpoint")
    p_train.add_argument("--out", required=True, help="checkpoint directory to create")
    p_train.add_argument("--dataset", default=None, help="directory of scene folders")
    p_train.add_argument("--model", choices=("blend", "unsup"), default="blend")
    p_train.add_argument("--epochs", type=int, default=25)
    p_train.add_argument("--batch", type=int, default=64)
    p_train.add_argument("--lambda-l2", type=float, default=0.999)
    p_train.add_argument("--synthetic-pairs", type=int, default=100)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--image-size", type=int, default=64)
    p_train.add_argument("--channels", type=_parse_channels, default=(32, 64, 128))
    p_train.add_argument("--bottleneck", type=int, default=256)
    p_train.add_argument("--z-dim", type=int, default=64)

    p_export = sub.add_parser("export-guide", help="write a guide PNG from a checkpoint")
    p_export.add_argument("--checkpoint", required=True)
    p_export.add_argument("--composite", required=True, help="input composite PNG")
    p_export.add_argument("--out", required=True, help="output guide PNG")

    p_latent = sub.add_parser("latent-search", help="fit a latent code to a composite")
    p_latent.add_argument("--checkpoint", required=True, help="latent generator checkpoint")
    p_latent.add_argument("--composite", required=True, help="input composite PNG")
    p_latent.add_argument("--out", required=True, help="output guide PNG")
    p_latent.add_argument("--starts", type=int, default=8)
    p_latent.add_argument("--max-iter", type=int, default=200)
    p_latent.add_argument("--seed", type=int, default=0)

    return parser


def _cmd_train(args):
    net = NetConfig(
        image_size=args.image_size,
        channels=args.channels,
        bottleneck=args.bottleneck,
        z_dim=args.z_dim,
    )
    cfg = TrainConfig(
        lambda_l2=args.lambda_l2,
        epochs=args.epochs,
        batch_size=args.batch,
        seed=args.seed,
        synthetic_pairs=args.synthetic_pairs,
        net=net,
    )
    started = time.perf_counter()
    out_dir = train(args.dataset, cfg, args.out, kind=args.model)
    record = {
        "checkpoint": out_dir,
        "model": args.model,
        "epochs": cfg.epochs,
        "seconds": round(time.perf_counter() - started, 6),
    }
    print(json.dumps(record))
    return 0


def _cmd_export(args):
    started = time.perf_counter()
    out = export_guide(args.checkpoint, args.composite, args.out)
    record = {"out": out, "seconds": round(time.perf_counter() - started, 6)}
    print(json.dumps(record))
    return 0


def _cmd_latent(args):
    net, net_cfg, _, _ = load_generator(args.checkpoint, expect_kind="unsup")
    composite = load_composite(args.composite, net_cfg.image_size)
    cfg = LatentSearchConfig(starts=args.starts, max_iter=args.max_iter, seed=args.seed)
    started = time.perf_counter()
    result = latent_search(net, composite, cfg)
    write_guide_png(args.out, result.guide)
    record = {
        "out": args.out,
        "loss": result.loss,
        "starts": cfg.starts,
        "converged": result.converged,
        "seconds": round(time.perf_counter() - started, 6),
    }
    print(json.dumps(record))
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "train": _cmd_train,
        "export-guide": _cmd_export,
        "latent-search": _cmd_latent,
    }
    try:
        return handlers[args.command](args)
    except (GuideGanError, ValueError) as exc:
        print(f"guidegan: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"guidegan: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
