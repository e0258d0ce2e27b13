"""Command-line interface: ``filiform <command> [options]``.

Exit codes: 0 for success or an affirmative answer, 1 for a definite negative
(not conjugate, no root, nothing within the radius), 2 for usage or resource
errors. Every option can also be set through an environment variable named
``FILIFORM_<OPTION>`` (e.g. ``FILIFORM_DIM=3``).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import ball as ball_mod
from .ball import DEFAULT_MEMORY_CAP, BallCache, BallCacheFormatError, MemoryCapExceeded
from .conjugacy import cl_experiment, solve_conjugacy, write_experiment_csv
from .errors import DefiniteNegative
from .group import GroupElement, WordParseError, eval_word, format_element, parse_element, parse_word
from .metric import RadiusExceeded, exact_distance, short_word, size_lower_bound
from .structure import centralizer, max_root_mod_center, root_exact, zeta, zeta_image

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


@dataclass
class Config:
    dim: int | None
    memory_cap_bytes: int
    cache_dir: Path | None
    seed: int
    output_format: str
    threads: int
    max_radius: int

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "Config":
        if args.dim is not None and args.dim < 1:
            raise ValueError("--dim must be >= 1")
        if args.memory_cap <= 0:
            raise ValueError("--memory-cap must be positive")
        if not 0 <= args.seed < 2**64:
            raise ValueError("--seed must be an unsigned 64-bit integer")
        return cls(
            dim=args.dim,
            memory_cap_bytes=args.memory_cap,
            cache_dir=Path(args.cache_dir) if args.cache_dir else None,
            seed=args.seed,
            output_format=args.format,
            threads=max(1, args.threads),
            max_radius=args.max_radius,
        )


def _env(name: str, default, kind=str):
    raw = os.environ.get("FILIFORM_" + name)
    return default if raw is None else kind(raw)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("-d", "--dim", type=int, default=_env("DIM", None, int))
    p.add_argument("--max-radius", type=int, default=_env("MAX_RADIUS", 12, int))
    p.add_argument("--memory-cap", type=int, default=_env("MEMORY_CAP", DEFAULT_MEMORY_CAP, int))
    p.add_argument("--cache-dir", default=_env("CACHE_DIR", None))
    p.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    p.add_argument("--format", choices=("plain", "json", "csv"), default=_env("FORMAT", "plain"))
    p.add_argument("--threads", type=int, default=_env("THREADS", 1, int))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="filiform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", parents=[common], help="normal form of a word")
    p.add_argument("word")

    p = sub.add_parser("dist", parents=[common], help="word length of an element")
    p.add_argument("element")

    p = sub.add_parser("conj", parents=[common], help="decide conjugacy, print a witness")
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("root", parents=[common], help="p-th root, or the maximal root mod the centre")
    p.add_argument("element")
    p.add_argument("-p", type=int, default=None)

    p = sub.add_parser("cent", parents=[common], help="centralizer of an element")
    p.add_argument("element")

    p = sub.add_parser("zeta", parents=[common], help="zeta_g(x), or the image of zeta_g")
    p.add_argument("--g", required=True)
    p.add_argument("--x", default=None)

    p = sub.add_parser("ball", parents=[common], help="enumerate or load a ball cache")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--load", default=None, help="read this cache file instead of enumerating")
    p.add_argument("--csv", default=None, help="export the table as CSV to this path ('-' for stdout)")

    p = sub.add_parser("clx", parents=[common], help="conjugator-length experiment (CSV)")
    p.add_argument("--family", choices=("witness", "random"), default="witness")
    p.add_argument("--n", default="2,3,4,5")
    p.add_argument("--samples", type=int, default=20)
    return parser


def _element(text: str, cfg: Config) -> GroupElement:
    return parse_element(text, cfg.dim)


def _require_dim(cfg: Config) -> int:
    if cfg.dim is None:
        raise ValueError("this command needs -d/--dim")
    return cfg.dim


def _emit(cfg: Config, plain: str, data: dict) -> None:
    if cfg.output_format == "json":
        print(json.dumps(data))
    else:
        print(plain)


def cmd_nf(args, cfg: Config) -> int:
    g = eval_word(parse_word(args.word, _require_dim(cfg)))
    _emit(cfg, format_element(g), {"element": format_element(g)})
    return EXIT_OK


def cmd_dist(args, cfg: Config) -> int:
    g = _element(args.element, cfg)
    try:
        dist = exact_distance(g, cfg.max_radius, memory_cap=cfg.memory_cap_bytes, cache_dir=cfg.cache_dir)
    except RadiusExceeded as exc:
        lower = max(exc.lower_bound, size_lower_bound(g))
        upper = len(short_word(g))
        _emit(cfg, f"{lower} {upper}", {"lower": lower, "upper": upper})
        return EXIT_OK
    _emit(cfg, str(dist), {"distance": dist})
    return EXIT_OK


def cmd_conj(args, cfg: Config) -> int:
    u, v = _element(args.u, cfg), _element(args.v, cfg)
    witness = solve_conjugacy(u, v)
    if not witness.verify():
        raise AssertionError("witness failed verification")
    if cfg.output_format == "json":
        print(json.dumps({"verdict": "CONJUGATE", "witness": json.loads(witness.to_json())}))
    else:
        print("CONJUGATE")
        print(witness.to_json())
    return EXIT_OK


def cmd_root(args, cfg: Config) -> int:
    g = _element(args.element, cfg)
    if args.p is None:
        rd = max_root_mod_center(g)
        data = {"base": format_element(rd.base), "exponent": rd.exponent, "central_offset": rd.central_offset}
        _emit(cfg, f"{data['base']} ^ {rd.exponent} * a{g.dim}^{rd.central_offset}", data)
    else:
        h = root_exact(g, args.p)
        _emit(cfg, format_element(h), {"root": format_element(h)})
    return EXIT_OK


def cmd_cent(args, cfg: Config) -> int:
    g = _element(args.element, cfg)
    desc = centralizer(g)
    gens = [format_element(x) for x in desc.generators]
    _emit(cfg, "\n".join([desc.kind] + gens), {"kind": desc.kind, "generators": gens})
    return EXIT_OK


def cmd_zeta(args, cfg: Config) -> int:
    g = _element(args.g, cfg)
    if args.x is None:
        zd = zeta_image(g)
        data = {"p": zd.p, "q": zd.q, "r": zd.r, "e": zd.e, "image_generator": zd.image_generator,
                "base": format_element(zd.base)}
        _emit(cfg, str(zd.image_generator), data)
    else:
        m = zeta(g, _element(args.x, cfg))
        _emit(cfg, str(m), {"zeta": m})
    return EXIT_OK


def cmd_ball(args, cfg: Config) -> int:
    if args.load:
        cache = BallCache.load(args.load)
    else:
        dim = _require_dim(cfg)
        cache = ball_mod.enumerate_ball(dim, args.radius, memory_cap=cfg.memory_cap_bytes, workers=cfg.threads)
        if cfg.cache_dir is not None:
            cfg.cache_dir.mkdir(parents=True, exist_ok=True)
            cache.save(ball_mod.ball_cache_path(cfg.cache_dir, dim, args.radius))
    if args.csv == "-" or (args.csv is None and cfg.output_format == "csv"):
        cache.write_csv(sys.stdout)
    else:
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                cache.write_csv(fh)
        sizes = cache.ball_sizes()
        _emit(cfg, f"dim={cache.dim} radius={cache.radius} size={len(cache)} ball_sizes={sizes}",
              {"dim": cache.dim, "radius": cache.radius, "size": len(cache), "ball_sizes": sizes})
    return EXIT_OK


def cmd_clx(args, cfg: Config) -> int:
    dim = _require_dim(cfg)
    ns = [int(x) for x in args.n.split(",") if x.strip()]
    mode = "witness-family" if args.family == "witness" else "random-pairs"
    records = cl_experiment(dim, ns, mode=mode, seed=cfg.seed, samples=args.samples)
    write_experiment_csv(records, sys.stdout)
    return EXIT_OK


COMMANDS = {
    "nf": cmd_nf,
    "dist": cmd_dist,
    "conj": cmd_conj,
    "root": cmd_root,
    "cent": cmd_cent,
    "zeta": cmd_zeta,
    "ball": cmd_ball,
    "clx": cmd_clx,
}

NEGATIVE_LABELS = {
    "conj": "NOT_CONJUGATE",
    "root": "NO_ROOT",
    "zeta": "NOT_IN_CENTRALIZER",
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config.from_args(args)
        return COMMANDS[args.command](args, cfg)
    except DefiniteNegative as exc:
        label = NEGATIVE_LABELS.get(args.command, "NEGATIVE")
        print(label)
        print(str(exc), file=sys.stderr)
        return EXIT_NEGATIVE
    except WordParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, IndexError, MemoryCapExceeded, BallCacheFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
