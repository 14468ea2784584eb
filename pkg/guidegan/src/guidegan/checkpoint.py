"""Self-describing checkpoint directories.

A checkpoint is a directory holding config.json (network kind and widths),
generator.pt, and optionally critic.pt.  Loading rebuilds the network from
the recorded config, so no architecture arguments are needed at inference.
"""

import dataclasses
import json
import os

import torch

from .errors import BadCheckpoint
from .models import NetConfig, build_blend_generator, build_critic, build_unsup_generator

KINDS = ("blend", "unsup")


def save_checkpoint(out_dir, kind, net_cfg, generator, critic=None, train_meta=None):
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    os.makedirs(out_dir, exist_ok=True)
    config = {
        "kind": kind,
        "net": dataclasses.asdict(net_cfg),
        "train": dict(train_meta or {}),
    }
    with open(os.path.join(out_dir, "config.json"), "w") as fh:
        json.dump(config, fh, indent=2, sort_keys=True)
        fh.write("\n")
    torch.save(generator.state_dict(), os.path.join(out_dir, "generator.pt"))
    if critic is not None:
        torch.save(critic.state_dict(), os.path.join(out_dir, "critic.pt"))
    return out_dir


def _read_config(ckpt_dir):
    if not os.path.isdir(ckpt_dir):
        raise BadCheckpoint(f"checkpoint directory does not exist: {ckpt_dir}")
    path = os.path.join(ckpt_dir, "config.json")
    if not os.path.isfile(path):
        raise BadCheckpoint(f"checkpoint has no config.json: {ckpt_dir}")
    try:
        with open(path) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadCheckpoint(f"unreadable config.json: {exc}") from exc
    kind = config.get("kind")
    if kind not in KINDS:
        raise BadCheckpoint(f"unknown checkpoint kind: {kind!r}")
    try:
        raw = dict(config["net"])
        raw["channels"] = tuple(raw["channels"])
        net_cfg = NetConfig(**raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadCheckpoint(f"bad network config: {exc}") from exc
    return kind, net_cfg, config


def load_generator(ckpt_dir, expect_kind=None):
    """Rebuild the stored generator and its config; raises BadCheckpoint on
    any missing or inconsistent piece."""
    kind, net_cfg, config = _read_config(ckpt_dir)
    if expect_kind is not None and kind != expect_kind:
        raise BadCheckpoint(f"checkpoint kind is {kind!r}, expected {expect_kind!r}")
    build = build_blend_generator if kind == "blend" else build_unsup_generator
    net = build(net_cfg)
    weights = os.path.join(ckpt_dir, "generator.pt")
    if not os.path.isfile(weights):
        raise BadCheckpoint(f"checkpoint has no generator.pt: {ckpt_dir}")
    try:
        state = torch.load(weights, map_location="cpu", weights_only=True)
        net.load_state_dict(state)
    except Exception as exc:
        raise BadCheckpoint(f"cannot load generator weights: {exc}") from exc
    net.eval()
    return net, net_cfg, kind, config


def load_critic(ckpt_dir):
    kind, net_cfg, _ = _read_config(ckpt_dir)
    weights = os.path.join(ckpt_dir, "critic.pt")
    if not os.path.isfile(weights):
        raise BadCheckpoint(f"checkpoint has no critic.pt: {ckpt_dir}")
    net = build_critic(net_cfg)
    try:
        state = torch.load(weights, map_location="cpu", weights_only=True)
        net.load_state_dict(state)
    except Exception as exc:
        raise BadCheckpoint(f"cannot load critic weights: {exc}") from exc
    net.eval()
    return net, net_cfg, kind
