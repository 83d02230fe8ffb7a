"""Command-line pipeline: simulate, pair, morph, score, calibrate, vuln, map, dmad.

All commands exchange data through files, embed their resolved configuration
(including seeds) into every artifact they write, and are byte-reproducible
for identical inputs and seeds.  Exit codes: 0 success, 1 usage error,
2 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import calibration as cal
from . import dataset as ds
from . import dmad
from . import pairing
from . import similarity as sim
from . import synthgen
from . import vulnerability as vuln
from .errors import DataError

OUT_DIR_ENV = "MORPHKIT_OUT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit code 1, not argparse's 2
        raise UsageError(f"{self.prog}: {message}")


def _out_dir(args: argparse.Namespace) -> Path:
    raw = args.out_dir or os.environ.get(OUT_DIR_ENV) or "."
    path = Path(raw)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _config_line(config: dict) -> str:
    return json.dumps(config, sort_keys=True)


def _write_csv(path: Path, config: dict, header: list[str], rows: list[list]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        fh.write(f"# {_config_line(config)}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _read_json(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise DataError(f"input file not found: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not valid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise DataError(f"{path}: expected a JSON object")
    return obj


def _read_csv_dicts(path: str | Path) -> list[dict]:
    path = Path(path)
    if not path.exists():
        raise DataError(f"input file not found: {path}")
    with path.open("r", newline="", encoding="utf-8") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))


def _score_sign(orientation: str) -> float:
    # similarity-oriented sources are negated on ingestion so that
    # "smaller means more similar" holds everywhere downstream
    return -1.0 if orientation == "similarity" else 1.0


def _read_morph_score_rows(
    path: str | Path, orientation: str
) -> list[tuple[str, str, int, int, float]]:
    sign = _score_sign(orientation)
    rows = []
    for idx, rec in enumerate(_read_csv_dicts(path), start=2):
        try:
            rows.append(
                (
                    rec["morph_id"],
                    rec["frs_id"],
                    int(rec["subject_slot"]),
                    int(rec["probe_index"]),
                    sign * float(rec["distance"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"{path}: bad score row {idx}: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: no score rows")
    return rows


def _frs_value(text: str) -> tuple[str, float]:
    name, sep, raw = text.partition("=")
    if not sep or not name:
        raise ValueError("expected FRS=VALUE")
    return name, float(raw)


def _collect_thresholds(args: argparse.Namespace) -> tuple[dict[str, float], dict[str, float]]:
    taus: dict[str, float] = {}
    fnmrs: dict[str, float] = {}
    for path in args.calibration or []:
        obj = _read_json(path)
        try:
            taus[obj["frs_id"]] = float(obj["tau"])
            fnmrs[obj["frs_id"]] = float(obj["fnmr_at_tau"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"{path}: not a calibration file: {exc}") from exc
    for name, value in args.tau or []:
        taus[name] = value
    for name, value in getattr(args, "fnmr", None) or []:
        fnmrs[name] = value
    return taus, fnmrs


# ---------------------------------------------------------------- simulate


def cmd_simulate(args: argparse.Namespace) -> int:
    config = synthgen.SynthConfig(
        n_subjects=args.subjects,
        samples_per_subject=args.samples,
        dim=args.dim,
        intra_class_noise=args.noise,
        quality_min=args.quality_min,
        quality_max=args.quality_max,
        n_genders=args.genders,
        n_ethnicities=args.ethnicities,
        age_min=args.age_min,
        age_max=args.age_max,
        seed=args.seed,
    )
    records = synthgen.generate_population(config)
    out = Path(args.out) if args.out else _out_dir(args) / "embeddings.jsonl"
    meta = {"command": "simulate", **config.__dict__}
    ds.save_dataset(records, out, header_comment=_config_line(meta))
    print(f"wrote {len(records)} records ({config.n_subjects} subjects) to {out}")
    return 0


# -------------------------------------------------------------------- pair


def cmd_pair(args: argparse.Namespace) -> int:
    records = ds.load_dataset(args.embeddings, args.dim)
    records = ds.filter_min_samples(records, args.min_samples)
    if not records:
        raise DataError("no subjects remain after the minimum-sample filter")
    metadata = pairing.subject_metadata(records)
    if args.mode == "embedding":
        matrix = sim.build_score_matrix(ds.morph_sources(records))
        pairs = pairing.select_pairs(matrix, metadata, args.max_age_gap)
    else:
        pairs = pairing.random_pairs(metadata, args.max_age_gap, args.seed)
    out = Path(args.out) if args.out else _out_dir(args) / f"pairs_{args.mode}.csv"
    config = {
        "command": "pair",
        "mode": args.mode,
        "embeddings": str(args.embeddings),
        "max_age_gap": args.max_age_gap,
        "min_samples": args.min_samples,
        "seed": args.seed,
    }
    rows = [
        [p.subject_a, p.subject_b, "" if p.distance is None else repr(p.distance), p.selection_method]
        for p in pairs
    ]
    _write_csv(out, config, ["subject_a", "subject_b", "distance", "method"], rows)
    print(f"wrote {len(pairs)} pairs to {out}")
    return 0


def _read_pairs(path: str | Path) -> list[tuple[str, str]]:
    pairs = []
    for idx, rec in enumerate(_read_csv_dicts(path), start=2):
        try:
            pairs.append((rec["subject_a"], rec["subject_b"]))
        except KeyError as exc:
            raise DataError(f"{path}: bad pair row {idx}: missing {exc}") from exc
    if not pairs:
        raise DataError(f"{path}: no pairs")
    return pairs


# ------------------------------------------------------------------- morph


def cmd_morph(args: argparse.Namespace) -> int:
    records = ds.load_dataset(args.embeddings, args.dim)
    pairs = _read_pairs(args.pairs)
    sources = {rec.subject_id: rec for rec in ds.morph_sources(records)}
    morphs = []
    for idx, (a, b) in enumerate(pairs):
        for sid in (a, b):
            if sid not in sources:
                raise DataError(f"pair references unknown subject {sid!r}")
        embedding = synthgen.generate_morph_embedding(
            sources[a].embedding,
            sources[b].embedding,
            noise=args.noise,
            seed=args.seed + idx,  # one independent noise draw per morph
        )
        morphs.append(ds.MorphEmbedding(f"{a}+{b}", a, b, embedding))
    out = Path(args.out) if args.out else _out_dir(args) / "morphs.jsonl"
    config = {
        "command": "morph",
        "embeddings": str(args.embeddings),
        "pairs": str(args.pairs),
        "noise": args.noise,
        "seed": args.seed,
    }
    ds.save_morphs(morphs, out, header_comment=_config_line(config))
    print(f"wrote {len(morphs)} morph embeddings to {out}")
    return 0


# ------------------------------------------------------------------- score


def cmd_score(args: argparse.Namespace) -> int:
    records = ds.load_dataset(args.embeddings, args.dim)
    morphs = ds.load_morphs(args.morphs)
    needed = {sid for m in morphs for sid in (m.subject_a, m.subject_b)}
    relevant = [rec for rec in records if rec.subject_id in needed]
    missing = needed - {rec.subject_id for rec in relevant}
    if missing:
        raise DataError(f"morph subjects missing from embeddings: {sorted(missing)[:5]}")
    probes = {
        split.subject_id: split.probes for split in ds.split_roles(relevant)
    }
    rows = []
    for morph in morphs:
        for slot, sid in ((1, morph.subject_a), (2, morph.subject_b)):
            subject_probes = probes[sid]
            if args.max_probes is not None:
                subject_probes = subject_probes[: args.max_probes]
            for probe_index, probe in enumerate(subject_probes):
                distance = sim.cosine_distance(morph.embedding, probe.embedding)
                rows.append([morph.morph_id, args.frs_id, slot, probe_index, repr(distance)])
    out = Path(args.out) if args.out else _out_dir(args) / f"scores_{args.frs_id}.csv"
    config = {
        "command": "score",
        "embeddings": str(args.embeddings),
        "morphs": str(args.morphs),
        "frs_id": args.frs_id,
        "max_probes": args.max_probes,
    }
    _write_csv(
        out,
        config,
        ["morph_id", "frs_id", "subject_slot", "probe_index", "distance"],
        rows,
    )
    print(f"wrote {len(rows)} comparison scores to {out}")
    return 0


# --------------------------------------------------------------- calibrate


def cmd_calibrate(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    config = {
        "command": "calibrate",
        "embeddings": str(args.embeddings) if args.embeddings else None,
        "scores": str(args.scores) if args.scores else None,
        "frs_id": args.frs_id,
        "fmr": args.fmr,
        "subset": args.subset,
        "seed": args.seed,
        "orientation": args.orientation,
    }
    if (args.embeddings is None) == (args.scores is None):
        raise UsageError("calibrate: provide exactly one of --embeddings / --scores")

    if args.embeddings:
        records = ds.load_dataset(args.embeddings, args.dim)
        subset = sim.sample_subjects(records, args.subset, args.seed)
        mated_samples = sim.mated_scores(subset)
        if not mated_samples:
            raise DataError("no mated pairs available (every subject has one sample)")
        nonmated_samples = sim.nonmated_scores(subset, len(mated_samples), args.seed)
        frs_id = args.frs_id or Path(args.embeddings).stem
    else:
        sign = _score_sign(args.orientation)
        mated_samples, nonmated_samples = [], []
        for idx, rec in enumerate(_read_csv_dicts(args.scores), start=2):
            try:
                sample = sim.ScoreSample(
                    rec["label"], sign * float(rec["score"]), rec["id_a"], rec["id_b"]
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise DataError(f"{args.scores}: bad score row {idx}: {exc}") from exc
            if sample.label == sim.MATED:
                mated_samples.append(sample)
            elif sample.label == sim.NONMATED:
                nonmated_samples.append(sample)
        frs_id = args.frs_id or Path(args.scores).stem

    mated = [s.score for s in mated_samples]
    nonmated = [s.score for s in nonmated_samples]
    result = cal.calibrate(frs_id, mated, nonmated, args.fmr)

    payload = {"config": config, **result.to_json_obj()}
    del payload["det_points"]  # the DET lives in its own CSV
    _write_json(out_dir / f"calibration_{frs_id}.json", payload)
    _write_csv(
        out_dir / f"det_{frs_id}.csv",
        config,
        ["threshold", "fmr", "fnmr"],
        [[repr(t), repr(f), repr(n)] for f, n, t in result.det_points],
    )
    if args.dump_scores:
        _write_csv(
            out_dir / f"calibration_scores_{frs_id}.csv",
            config,
            ["label", "score", "id_a", "id_b"],
            [
                [s.label, repr(s.score), s.id_a, s.id_b]
                for s in [*mated_samples, *nonmated_samples]
            ],
        )
    if not args.no_figures:
        from . import figures

        figures.save_det_figure(
            result.det_points,
            out_dir / f"det_{frs_id}.png",
            title=f"DET {frs_id} (tau={result.tau:.4f} @ FMR<={args.fmr:g})",
            operating_point=(result.achieved_fmr, result.fnmr_at_tau),
        )
    print(
        f"{frs_id}: tau={result.tau:.6f} achieved_fmr={result.achieved_fmr:.6f} "
        f"fnmr={result.fnmr_at_tau:.6f} ({len(mated)} mated / {len(nonmated)} non-mated)"
    )
    return 0


# -------------------------------------------------------------------- vuln


def cmd_vuln(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    rows = _read_morph_score_rows(args.scores, args.orientation)
    cset = vuln.MorphComparisonSet.from_rows(rows)
    taus, fnmrs = _collect_thresholds(args)
    config = {
        "command": "vuln",
        "scores": str(args.scores),
        "orientation": args.orientation,
        "subject_rule": args.subject_rule,
        "tau": {k: taus[k] for k in sorted(taus)},
        "fnmr": {k: fnmrs[k] for k in sorted(fnmrs)},
    }
    metric_rows = []
    ecdf_curves = {}
    shown_taus = {}
    for frs_id in cset.frs_ids:
        if frs_id not in taus:
            raise DataError(f"no threshold for FRS {frs_id!r}; pass --calibration or --tau")
        tau = taus[frs_id]
        scores_frs = cset.for_frs(frs_id)
        any_rate = vuln.mmpmr(scores_frs, tau, vuln.ANY)
        all_rate = vuln.mmpmr(scores_frs, tau, vuln.ALL)
        prod_rate = vuln.prod_avg_mmpmr(scores_frs, tau)
        fnmr = fnmrs.get(frs_id)
        selected = any_rate if args.subject_rule == vuln.ANY else all_rate
        rmmr_val = vuln.rmmr(selected, fnmr) if fnmr is not None else None
        metric_rows.append(
            [
                frs_id,
                repr(tau),
                len(scores_frs),
                repr(any_rate),
                repr(all_rate),
                repr(prod_rate),
                "" if fnmr is None else repr(fnmr),
                "" if rmmr_val is None else repr(rmmr_val),
            ]
        )
        pooled = [
            d
            for subjects in scores_frs.values()
            for probes in subjects
            for d in probes
        ]
        curve = vuln.ecdf_points(pooled)
        ecdf_curves[frs_id] = curve
        shown_taus[frs_id] = tau
        _write_csv(
            out_dir / f"ecdf_{frs_id}.csv",
            config,
            ["score", "cumulative_fraction"],
            [[repr(x), repr(f)] for x, f in curve],
        )
    _write_csv(
        out_dir / "metrics.csv",
        config,
        [
            "frs_id",
            "tau",
            "n_morphs",
            "mmpmr_any",
            "mmpmr_all",
            "prod_avg_mmpmr",
            "fnmr",
            "rmmr",
        ],
        metric_rows,
    )
    if not args.no_figures:
        from . import figures

        figures.save_ecdf_figure(
            ecdf_curves,
            out_dir / "ecdf.png",
            title="mated morph comparison score ECDFs",
            thresholds=shown_taus,
        )
    for row in metric_rows:
        print(
            f"{row[0]}: mmpmr_any={row[3]} mmpmr_all={row[4]} prodAvg={row[5]}"
            + (f" rmmr={row[7]}" if row[7] else "")
        )
    return 0


# --------------------------------------------------------------------- map


def cmd_map(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    rows = []
    for path in args.scores:
        rows.extend(_read_morph_score_rows(path, args.orientation))
    cset = vuln.MorphComparisonSet.from_rows(rows)
    taus, _ = _collect_thresholds(args)
    for frs_id in cset.frs_ids:
        if frs_id not in taus:
            raise DataError(f"no threshold for FRS {frs_id!r}; pass --calibration or --tau")
    result = vuln.map_matrix(cset, taus, attempts=args.attempts, paired=args.paired)
    if args.weights:
        weights = np.asarray(_read_json(args.weights)["weights"], dtype=np.float64)
    else:
        weights = vuln.default_map_weights(args.attempts, len(result.frs_ids))
    avg = vuln.map_avg(result.values, weights)
    config = {
        "command": "map",
        "scores": [str(p) for p in args.scores],
        "orientation": args.orientation,
        "attempts": args.attempts,
        "paired": args.paired,
        "weights_file": str(args.weights) if args.weights else None,
        "tau": {k: taus[k] for k in sorted(taus)},
    }
    payload = {
        "config": config,
        "attempts": result.attempts,
        "frs_ids": result.frs_ids,
        "matrix": result.values.tolist(),
        "weights": weights.tolist(),
        "map_avg": avg,
        "n_morphs": len(cset.morph_ids),
    }
    _write_json(out_dir / "map.json", payload)
    if not args.no_figures:
        from . import figures

        figures.save_map_figure(
            result.values,
            out_dir / "map.png",
            title=f"attack potential over {len(result.frs_ids)} systems (map_avg={avg:.3f})",
        )
    print(f"map_avg={avg:.6f} over {len(cset.morph_ids)} morphs x {len(result.frs_ids)} systems")
    return 0


# -------------------------------------------------------------- dmad-train


def cmd_dmad_train(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    records = ds.load_dataset(args.embeddings, args.dim)
    if not records:
        raise DataError("embedding file holds no records")
    morphs = ds.load_morphs(args.morphs, records[0].dim)
    model, split = dmad.train_dmad(
        records,
        morphs,
        c=args.C,
        gamma=args.gamma,
        tol=args.tol,
        max_iterations=args.max_iterations,
        seed=args.seed,
        split_fraction=args.split,
        bona_fide_pairs_per_subject=args.bonafide_pairs,
    )
    config = {
        "command": "dmad-train",
        "embeddings": str(args.embeddings),
        "morphs": str(args.morphs),
        "C": args.C,
        "gamma": args.gamma,
        "tol": args.tol,
        "max_iterations": args.max_iterations,
        "seed": args.seed,
        "split": args.split,
        "bonafide_pairs": args.bonafide_pairs,
    }
    model_path = Path(args.out) if args.out else out_dir / "dmad_model.json"
    dmad.save_model(model, model_path, config={**config, "label_balance": split.counts})
    _write_json(
        out_dir / "dmad_split.json",
        {
            "config": config,
            "counts": split.counts,
            "train_subjects": split.train_subjects,
            "test_subjects": split.test_subjects,
        },
    )
    print(
        f"trained on {split.counts['train_bona_fide']} bona fide / "
        f"{split.counts['train_morph']} morph differentials "
        f"(test: {split.counts['test_bona_fide']}/{split.counts['test_morph']}); "
        f"{model.support_vectors.shape[0]} support vectors, "
        f"converged={model.converged} kkt={model.kkt_max_violation:.2e}"
    )
    return 0


# --------------------------------------------------------------- dmad-eval


def cmd_dmad_eval(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    model = dmad.load_model(args.model)
    records = ds.load_dataset(args.embeddings, args.dim)
    morphs = ds.load_morphs(args.morphs, model.dim)
    if args.split:
        split_obj = _read_json(args.split)
        keep = set(split_obj.get("test_subjects", []))
        records = [r for r in records if r.subject_id in keep]
        morphs = [
            m for m in morphs if m.subject_a in keep and m.subject_b in keep
        ]
        if not morphs:
            raise DataError("no morphs fall inside the requested test split")
    features, labels, sources = dmad.evaluation_features(
        records, morphs, bona_fide_pairs_per_subject=args.bonafide_pairs
    )
    scores = dmad.decision_function(model, features)
    bona = scores[labels == dmad.BONA_FIDE_LABEL]
    attacks = scores[labels == dmad.MORPH_LABEL]
    if bona.size == 0 or attacks.size == 0:
        raise DataError("evaluation needs both bona fide and morph samples")
    det = dmad.dmad_det(bona, attacks)
    config = {
        "command": "dmad-eval",
        "model": str(args.model),
        "embeddings": str(args.embeddings),
        "morphs": str(args.morphs),
        "split": str(args.split) if args.split else None,
        "bonafide_pairs": args.bonafide_pairs,
        "threshold": args.threshold,
    }
    report = {
        "config": config,
        "n_bona_fide": int(bona.size),
        "n_morph": int(attacks.size),
        "macer": dmad.macer(attacks, args.threshold),
        "bpcer": dmad.bpcer(bona, args.threshold),
        "bpcer10": dmad.bpcer_at_macer(bona, attacks, 0.10),
        "bpcer20": dmad.bpcer_at_macer(bona, attacks, 0.05),
        "bpcer100": dmad.bpcer_at_macer(bona, attacks, 0.01),
    }
    _write_json(out_dir / "dmad_report.json", report)
    _write_csv(
        out_dir / "dmad_scores.csv",
        config,
        ["kind", "score", "source_id"],
        [
            ["morph" if y == dmad.MORPH_LABEL else "bona-fide", repr(float(s)), src]
            for y, s, src in zip(labels, scores, sources)
        ],
    )
    _write_csv(
        out_dir / "dmad_det.csv",
        config,
        ["threshold", "macer", "bpcer"],
        [[repr(t), repr(m), repr(b)] for m, b, t in det],
    )
    if not args.no_figures:
        from . import figures

        figures.save_det_figure(
            [(m, b, t) for m, b, t in det],
            out_dir / "dmad_det.png",
            title="morph detection error trade-off",
            xlabel="MACER",
            ylabel="BPCER",
        )
    print(
        f"macer={report['macer']:.4f} bpcer={report['bpcer']:.4f} "
        f"bpcer10={report['bpcer10']:.4f} bpcer20={report['bpcer20']:.4f} "
        f"bpcer100={report['bpcer100']:.4f}"
    )
    return 0


# ------------------------------------------------------------------ parser


def _add_common(parser: argparse.ArgumentParser, figures: bool = False) -> None:
    parser.add_argument("--out-dir", default=None, help=f"output directory (default ${OUT_DIR_ENV} or .)")
    if figures:
        parser.add_argument("--no-figures", action="store_true", help="skip PNG rendering")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="morphkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"morphkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("simulate", help="generate a synthetic embedding population")
    p.add_argument("--subjects", type=int, default=200)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--noise", type=float, default=0.05, help="intra-class angular noise proxy")
    p.add_argument("--quality-min", type=float, default=0.8)
    p.add_argument("--quality-max", type=float, default=1.2)
    p.add_argument("--genders", type=int, default=2)
    p.add_argument("--ethnicities", type=int, default=3)
    p.add_argument("--age-min", type=int, default=20)
    p.add_argument("--age-max", type=int, default=59)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("pair", help="select morph pairs (embedding greedy or random baseline)")
    p.add_argument("--mode", choices=["embedding", "random"], default="embedding")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--dim", type=int, default=None, help="declared embedding dimension")
    p.add_argument("--max-age-gap", type=int, default=5)
    p.add_argument("--min-samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=0, help="used by --mode random")
    p.add_argument("-o", "--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("morph", help="synthesize morph embeddings for selected pairs")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--noise", type=float, default=0.0, help="perturbation of the midpoint direction")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_morph)

    p = sub.add_parser("score", help="compare morphs against bona fide probes of their subjects")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--morphs", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--frs-id", default="frs0")
    p.add_argument("--max-probes", type=int, default=None)
    p.add_argument("-o", "--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("calibrate", help="determine the decision threshold at a target FMR")
    p.add_argument("--embeddings", default=None)
    p.add_argument("--scores", default=None, help="pre-dumped label,score,id_a,id_b CSV")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--frs-id", default=None)
    p.add_argument("--fmr", type=float, default=0.001)
    p.add_argument("--subset", type=int, default=500, help="number of subjects sampled for calibration")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orientation", choices=["distance", "similarity"], default="distance")
    p.add_argument("--dump-scores", action="store_true")
    _add_common(p, figures=True)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("vuln", help="attack-potential metrics from a morph score CSV")
    p.add_argument("--scores", required=True)
    p.add_argument("--calibration", action="append", default=None)
    p.add_argument("--tau", action="append", type=_frs_value, default=None, metavar="FRS=VALUE")
    p.add_argument("--fnmr", action="append", type=_frs_value, default=None, metavar="FRS=VALUE")
    p.add_argument("--subject-rule", choices=["any", "all"], default="all")
    p.add_argument("--orientation", choices=["distance", "similarity"], default="distance")
    _add_common(p, figures=True)
    p.set_defaults(func=cmd_vuln)

    p = sub.add_parser("map", help="morphing attack potential matrix across systems")
    p.add_argument("--scores", action="append", required=True)
    p.add_argument("--calibration", action="append", default=None)
    p.add_argument("--tau", action="append", type=_frs_value, default=None, metavar="FRS=VALUE")
    p.add_argument("--attempts", type=int, default=4)
    p.add_argument("--paired", action="store_true",
                   help="attempt k must succeed for every subject (instead of per-subject counts)")
    p.add_argument("--weights", default=None, help='JSON file with a "weights" matrix')
    p.add_argument("--orientation", choices=["distance", "similarity"], default="distance")
    _add_common(p, figures=True)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("dmad-train", help="train the differential morph detector")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--morphs", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=None, help="RBF width (default 1/(D*mean variance))")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--max-iterations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--split", type=float, default=0.8)
    p.add_argument("--bonafide-pairs", type=int, default=1)
    p.add_argument("-o", "--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_dmad_train)

    p = sub.add_parser("dmad-eval", help="score differentials and report MACER/BPCER")
    p.add_argument("--model", required=True)
    p.add_argument("--embeddings", required=True)
    p.add_argument("--morphs", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--split", default=None, help="split JSON; restricts to its test subjects")
    p.add_argument("--bonafide-pairs", type=int, default=1)
    p.add_argument("--threshold", type=float, default=0.0)
    _add_common(p, figures=True)
    p.set_defaults(func=cmd_dmad_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"morphkit: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"morphkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
