"""Command-line entry point.

    tenfold --command classify --input data.json --output report.json
    tenfold --command sample --class AIII --p 3 --q 1 --samples 10 --seed 7 --output out.json
    tenfold --command stats --class A --n 100 --samples 50 --output stats.json
    tenfold --command verify [--tol 1e-12] [--module-filter spectra]

Exit codes: 0 success, 1 failed verification, 2 bad input, 3 numerical failure.
``TENFOLD_THREADS`` caps the worker pool used by sampling campaigns.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .classifier import SymmetryClass, classify
from .ensembles import EnsembleSpec, sample
from .errors import InputError, NumericalError, TooFewLevels
from .io import (
    SCHEMA_VERSION,
    build_manifest,
    dump_json,
    load_symmetry_data,
    matrix_from_csv,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
    write_text,
)
from .linalg import RngStream

__all__ = ["main", "build_parser", "cmd_classify", "cmd_sample", "cmd_stats", "cmd_verify"]

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


def build_parser():
    p = argparse.ArgumentParser(prog="tenfold", description=__doc__.split("\n")[0])
    p.add_argument("--command", required=True, choices=["classify", "sample", "stats", "verify"])
    p.add_argument("--input", help="SymmetryData JSON (classify) or matrix archive (stats)")
    p.add_argument("--output", help="output file (JSON) or directory (CSV archives)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--class", dest="cls", help="symmetry class label")
    p.add_argument("--n", type=int, help="matrix size (non-chiral classes)")
    p.add_argument("--p", type=int, help="chiral block rows")
    p.add_argument("--q", type=int, help="chiral block columns")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--tol", type=float, help="tolerance override for verify")
    p.add_argument("--module-filter", action="append", help="verify only these modules")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    return p


def _threads():
    raw = os.environ.get("TENFOLD_THREADS", "")
    try:
        return max(1, int(raw)) if raw else min(8, os.cpu_count() or 1)
    except ValueError:
        raise InputError(f"TENFOLD_THREADS must be an integer, got {raw!r}") from None


def _config(args) -> dict:
    cfg = {("class" if k == "cls" else k): v for k, v in vars(args).items()}
    return dict(sorted(cfg.items()))


def _write_manifest(args, stream_ids, manifest_path):
    m = build_manifest(args.command, _config(args), args.seed, stream_ids, __version__, _threads())
    write_text(manifest_path, dump_json(m))


def _emit(args, doc):
    text = dump_json(doc)
    if args.output:
        write_text(args.output, text)
        _write_manifest(args, [], args.output + ".manifest.json")
    else:
        sys.stdout.write(text)


def _class(label) -> SymmetryClass:
    if not label:
        raise InputError("--class is required")
    try:
        return SymmetryClass(label)
    except ValueError:
        raise InputError(f"unknown class {label!r}") from None


def _spec(args, stream_id=0) -> EnsembleSpec:
    return EnsembleSpec(_class(args.cls), n=args.n, p=args.p, q=args.q, sigma=args.sigma, seed=args.seed,
                        stream_id=stream_id)


def _campaign(args, fn):
    """Evaluate ``fn(k)`` for stream ids ``0..samples-1``; results in stream order."""
    if args.samples < 1:
        raise InputError("--samples must be at least 1")
    ids = list(range(args.samples))
    n_workers = _threads()
    if n_workers == 1:
        return ids, [fn(k) for k in ids]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return ids, list(pool.map(fn, ids))


# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    if not args.input:
        raise InputError("--input is required for classify")
    data = load_symmetry_data(args.input)
    blocks = classify(data, RngStream(args.seed, 0))
    _emit(args, {"schema_version": SCHEMA_VERSION, "dim": data.dim,
                 "blocks": [b.as_dict() for b in blocks]})
    return EXIT_OK


def cmd_sample(args) -> int:
    spec = _spec(args)
    ids, hams = _campaign(args, lambda k: sample(spec, RngStream(args.seed, k)))
    meta = {"class": str(spec.symmetry_class), "n": spec.n, "p": spec.p, "q": spec.q,
            "sigma": spec.sigma, "seed": args.seed}
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, **meta, "stream_ids": ids,
               "matrices": [matrix_to_json(h.matrix) for h in hams]}
        text = dump_json(doc)
        if args.output:
            write_text(args.output, text)
            _write_manifest(args, ids, args.output + ".manifest.json")
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if not args.output:
        raise InputError("CSV archives need --output DIR")
    os.makedirs(args.output, exist_ok=True)
    for k, h in zip(ids, hams):
        write_text(os.path.join(args.output, f"sample_{k:05d}.csv"), matrix_to_csv(h.matrix))
    write_text(os.path.join(args.output, "archive.json"),
               dump_json({"schema_version": SCHEMA_VERSION, **meta, "stream_ids": ids}))
    _write_manifest(args, ids, os.path.join(args.output, "manifest.json"))
    return EXIT_OK


def _load_archive(path):
    """Matrices and metadata of a JSON archive file or a CSV archive directory."""
    if os.path.isdir(path):
        meta_path = os.path.join(path, "archive.json")
        meta = {}
        if os.path.exists(meta_path):
            with open(meta_path, encoding="utf-8") as fh:
                meta = json.load(fh)
        files = sorted(f for f in os.listdir(path) if f.endswith(".csv"))
        mats = []
        for f in files:
            with open(os.path.join(path, f), encoding="utf-8") as fh:
                mats.append(matrix_from_csv(fh.read()))
        return mats, meta
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed archive {path}: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("matrices", None), list):
        raise InputError("archive must be an object with a 'matrices' list")
    return [matrix_from_json(m) for m in doc["matrices"]], doc


def cmd_stats(args) -> int:
    from .spectra import spectral_report

    if args.input:
        mats, meta = _load_archive(args.input)
        cls = _class(args.cls or meta.get("class"))
        if not mats:
            raise TooFewLevels("archive contains no matrices")
        spectra = [np.linalg.eigvalsh(m) for m in mats]
    else:
        spec = _spec(args)
        cls = spec.symmetry_class
        _, spectra = _campaign(args, lambda k: np.linalg.eigvalsh(sample(spec, RngStream(args.seed, k)).matrix))
    rep = spectral_report(spectra, cls)
    _emit(args, {"schema_version": SCHEMA_VERSION, **rep.as_dict()})
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    results = run_suite(args.module_filter, args.tol, seed=args.seed or 20240611)
    width = max(len(r.name) for r in results) if results else 0
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        print(f"{flag}  {r.module:<16} {r.name:<{width}}  deviation={r.deviation:.3e}  tol={r.tolerance:.1e}")
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    if args.output:
        write_text(args.output, dump_json({"schema_version": SCHEMA_VERSION,
                                           "results": [r.as_dict() for r in results]}))
        _write_manifest(args, [], args.output + ".manifest.json")
    return EXIT_VERIFY if n_fail else EXIT_OK


_COMMANDS = {"classify": cmd_classify, "sample": cmd_sample, "stats": cmd_stats, "verify": cmd_verify}


def _where(exc):
    frames = traceback.extract_tb(exc.__traceback__)
    return frames[-1].name if frames else "?"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"input error in {_where(exc)}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure in {_where(exc)}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
