"""Command-line entry point.

Subcommands: validate, convert, asr-eval, pos-eval, iaa, analyze, serve.
Every reporting subcommand emits either a human-readable table or
machine-readable JSON (--format). Exit codes: 0 success, 1 operation
failure (a structured JSON record goes to stderr), 2 usage error.
"""

from __future__ import annotations

import json
import os
import statistics
import sys
from pathlib import Path

import click

from lsa_workbench import __version__
from lsa_workbench.agreement import (
    AgreementError,
    RatingSeries,
    pairwise_iaa,
)
from lsa_workbench.analysis import (
    AnalysisConfig,
    ConfigError,
    build_report,
)
from lsa_workbench.annotation import (
    AnnotationParseError,
    Severity,
    Speaker,
    Transcript,
    Variant,
    lint_transcript,
    parse_transcript,
    project_view,
    serialize_transcript,
)
from lsa_workbench.annotation.views import flatten_words
from lsa_workbench.asr import (
    DEFAULT_POLICY,
    IDENTITY_POLICY,
    EmptyReferenceError,
    aggregate_rates,
    error_rates,
)
from lsa_workbench.pos_eval import PosEvalError, evaluate_tagging
from lsa_workbench.tagsets import (
    STTS_ORDER,
    UPOS_ORDER,
    allowed_upos,
    is_ambiguous,
    stts_to_upos,
)

FORMAT_OPTION = click.option(
    "--format",
    "fmt",
    type=click.Choice(["human", "json"]),
    default="human",
    show_default=True,
    help="Output format.",
)

VARIANT_OPTION = click.option(
    "--variant",
    type=click.Choice([v.value for v in Variant]),
    default=Variant.SWISS_GERMAN.value,
    show_default=True,
    help="Language variant recorded in reports.",
)


def _fail(kind: str, message: str, **extra) -> None:
    """Print a structured error record to stderr and exit 1."""
    record = {"error": kind, "message": message}
    record.update(extra)
    click.echo(json.dumps(record, ensure_ascii=False, sort_keys=True), err=True)
    sys.exit(1)


def _emit_json(payload) -> None:
    click.echo(json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2))


def _load_transcript(path: Path, variant: str, recording_id: str | None = None) -> Transcript:
    try:
        return parse_transcript(
            path.read_bytes(),
            variant=Variant(variant),
            recording_id=recording_id if recording_id is not None else path.stem,
        )
    except AnnotationParseError as exc:
        _fail(type(exc).__name__, str(exc), path=str(path), line=exc.line)
        raise AssertionError  # unreachable


@click.group()
@click.version_option(__version__, prog_name="lsaw")
def main() -> None:
    """Language-sample-analysis workbench."""


# ---------------------------------------------------------------- validate


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--templates", is_flag=True, help="Also review morphology against per-tag templates.")
@click.option("--strict", is_flag=True, help="Treat warnings as failures.")
@VARIANT_OPTION
@FORMAT_OPTION
def validate(paths: tuple[Path, ...], templates: bool, strict: bool, variant: str, fmt: str) -> None:
    """Parse and lint annotation files; exit 0 only if no errors."""
    files = []
    failed = False
    for path in paths:
        transcript = _load_transcript(path, variant)
        findings = lint_transcript(transcript, check_templates=templates)
        errors = sum(1 for f in findings if f.severity is Severity.ERROR)
        warnings = len(findings) - errors
        if errors or (strict and warnings):
            failed = True
        files.append({"path": str(path), "findings": findings, "errors": errors, "warnings": warnings})

    if fmt == "json":
        _emit_json(
            {
                "ok": not failed,
                "files": [
                    {
                        "path": f["path"],
                        "errors": f["errors"],
                        "warnings": f["warnings"],
                        "findings": [
                            {
                                "severity": x.severity.value,
                                "rule": x.rule_id,
                                "send_id": x.send_id,
                                "word_id": x.word_id,
                                "message": x.message,
                            }
                            for x in f["findings"]
                        ],
                    }
                    for f in files
                ],
            }
        )
    else:
        for f in files:
            click.echo(f"{f['path']}: {f['errors']} error(s), {f['warnings']} warning(s)")
            for x in f["findings"]:
                click.echo("  " + x.render())
    sys.exit(1 if failed else 0)


# ---------------------------------------------------------------- convert


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--fill", is_flag=True, help="Fill missing coarse tags from fine tags (default mapping).")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the (optionally filled) canonical file here.")
@VARIANT_OPTION
@FORMAT_OPTION
def convert(path: Path, fill: bool, out: Path | None, variant: str, fmt: str) -> None:
    """Report fine-to-coarse tag conversion per token."""
    transcript = _load_transcript(path, variant)
    rows = []
    summary = {"consistent": 0, "ambiguous": 0, "mismatch": 0, "filled": 0, "untagged": 0}
    new_utts = []
    for utt in transcript.utterances:
        if utt.is_separator:
            new_utts.append(utt)
            continue
        new_tokens = []
        for token in utt.tokens:
            status = None
            default = None
            if token.stts is None:
                status = "untagged" if token.upos is None else "no-fine-tag"
                if status == "untagged":
                    summary["untagged"] += 1
            else:
                default = stts_to_upos(token.stts)
                if token.upos is None:
                    status = "filled" if fill else "missing-coarse"
                    summary["filled"] += 1
                elif token.upos is default:
                    status = "consistent"
                    summary["consistent"] += 1
                elif token.upos in allowed_upos(token.stts):
                    status = "ambiguous"
                    summary["ambiguous"] += 1
                else:
                    status = "mismatch"
                    summary["mismatch"] += 1
            rows.append(
                {
                    "send_id": utt.send_id,
                    "word_id": token.word_id,
                    "word": token.surface,
                    "stts": token.stts.value if token.stts else None,
                    "upos": token.upos.value if token.upos else None,
                    "default_upos": default.value if default else None,
                    "ambiguous_mapping": is_ambiguous(token.stts) if token.stts else False,
                    "status": status,
                }
            )
            if fill and token.stts is not None and token.upos is None:
                token = type(token)(
                    word_id=token.word_id,
                    surface=token.surface,
                    normalized=token.normalized,
                    lemma=token.lemma,
                    upos=default,
                    stts=token.stts,
                    stts_contracted=token.stts_contracted,
                    morph=token.morph,
                    sva=token.sva,
                    dep=token.dep,
                )
            new_tokens.append(token)
        new_utts.append(type(utt)(send_id=utt.send_id, speaker=utt.speaker, tokens=tuple(new_tokens)))

    if out is not None:
        filled = type(transcript)(
            variant=transcript.variant,
            recording_id=transcript.recording_id,
            utterances=tuple(new_utts),
        )
        out.write_bytes(serialize_transcript(filled))

    if fmt == "json":
        _emit_json({"path": str(path), "summary": summary, "tokens": rows})
    else:
        click.echo(
            f"{path}: {summary['consistent']} consistent, {summary['ambiguous']} ambiguous-ok, "
            f"{summary['mismatch']} mismatch, {summary['filled']} missing coarse, "
            f"{summary['untagged']} untagged"
        )
        for r in rows:
            if r["status"] in ("mismatch", "missing-coarse", "filled"):
                click.echo(
                    f"  [{r['send_id']}:{r['word_id']}] {r['word']}: {r['stts']} -> "
                    f"{r['default_upos']} (annotated {r['upos']}, {r['status']})"
                )


# ---------------------------------------------------------------- asr-eval


@main.command("asr-eval")
@click.option("--ref", "ref_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Reference annotation file (TSV).")
@click.option("--hyp", "hyp_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Hypothesis plain-text file.")
@click.option("--form", type=click.Choice(["original", "normalized"]), default="original", show_default=True)
@click.option("--per-utterance", is_flag=True, help="Score line-aligned per utterance (one hypothesis line per utterance).")
@click.option("--by-speaker", is_flag=True, help="Also score per speaker (requires --per-utterance).")
@click.option("--raw", is_flag=True, help="Skip pre-scoring normalization (case/punctuation/UNK).")
@VARIANT_OPTION
@FORMAT_OPTION
def asr_eval(
    ref_path: Path,
    hyp_path: Path,
    form: str,
    per_utterance: bool,
    by_speaker: bool,
    raw: bool,
    variant: str,
    fmt: str,
) -> None:
    """Word/character error rates of a hypothesis against a reference."""
    if by_speaker and not per_utterance:
        raise click.UsageError("--by-speaker requires --per-utterance (hypothesis lines carry no speakers)")
    transcript = _load_transcript(ref_path, variant)
    policy = IDENTITY_POLICY if raw else DEFAULT_POLICY
    projected = project_view(transcript, form=form)
    hyp_text = hyp_path.read_text("utf-8")

    def rates_or_fail(ref_words, hyp_words, scope: str):
        try:
            return error_rates(policy.apply(ref_words), policy.apply(hyp_words))
        except EmptyReferenceError as exc:
            _fail("EmptyReference", f"{exc} ({scope})", ref=str(ref_path), hyp=str(hyp_path))

    payload: dict = {"ref": str(ref_path), "hyp": str(hyp_path), "form": form, "normalized_scoring": not raw}

    if not per_utterance:
        overall = rates_or_fail(flatten_words(projected), hyp_text.split(), "whole recording")
        payload["overall"] = overall.as_dict()
    else:
        hyp_lines = hyp_text.splitlines()
        if len(hyp_lines) != len(projected):
            _fail(
                "LineCountMismatch",
                f"reference has {len(projected)} utterances but hypothesis has {len(hyp_lines)} lines",
                ref=str(ref_path),
                hyp=str(hyp_path),
            )
        per_utt = []
        for utt, line in zip(projected, hyp_lines):
            ref_words = policy.apply(utt.words)
            hyp_words = policy.apply(line.split())
            if not ref_words:
                continue  # nothing scoreable in this utterance
            rates = error_rates(ref_words, hyp_words)
            per_utt.append(
                {
                    "send_id": utt.send_id,
                    "speaker": utt.speaker.value if utt.speaker else None,
                    **rates.as_dict(),
                }
            )
        payload["per_utterance"] = per_utt
        for metric in ("wer", "cer", "mer", "wil"):
            values = [u[metric] for u in per_utt]
            payload.setdefault("utterance_mean", {})[metric] = statistics.fmean(values) if values else 0.0
            payload.setdefault("utterance_std", {})[metric] = (
                statistics.stdev(values) if len(values) > 1 else 0.0
            )
        overall = rates_or_fail(
            flatten_words(projected),
            [w for line in hyp_lines for w in line.split()],
            "whole recording",
        )
        payload["overall"] = overall.as_dict()
        if by_speaker:
            by: dict[str, tuple[list[str], list[str]]] = {}
            for utt, line in zip(projected, hyp_lines):
                label = utt.speaker.value if utt.speaker else "(unassigned)"
                refs, hyps = by.setdefault(label, ([], []))
                refs.extend(utt.words)
                hyps.extend(line.split())
            payload["per_speaker"] = {}
            for label in sorted(by):
                refs, hyps = by[label]
                ref_words = policy.apply(refs)
                if not ref_words:
                    continue
                payload["per_speaker"][label] = rates_or_fail(refs, hyps, f"speaker {label}").as_dict()

    if fmt == "json":
        _emit_json(payload)
    else:
        def line_of(name: str, rates: dict) -> str:
            return (
                f"  {name:<14} wer={rates['wer']:.4f} cer={rates['cer']:.4f} "
                f"mer={rates['mer']:.4f} wil={rates['wil']:.4f}"
            )

        click.echo(f"ASR evaluation ({form} form, {'raw' if raw else 'normalized scoring'})")
        click.echo(line_of("overall", payload["overall"]))
        if per_utterance:
            click.echo(
                "  per-utterance mean "
                + " ".join(f"{m}={payload['utterance_mean'][m]:.4f}" for m in ("wer", "cer", "mer", "wil"))
            )
            for label, rates in payload.get("per_speaker", {}).items():
                click.echo(line_of(label, rates))


# ---------------------------------------------------------------- pos-eval


@main.command("pos-eval")
@click.option("--gold", "gold_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--pred", "pred_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--tagset", type=click.Choice(["upos", "stts"]), default="upos", show_default=True)
@click.option("--exclude-ambiguous", is_flag=True, help="Skip tokens whose gold fine tag converts ambiguously.")
@VARIANT_OPTION
@FORMAT_OPTION
def pos_eval_cmd(
    gold_path: Path, pred_path: Path, tagset: str, exclude_ambiguous: bool, variant: str, fmt: str
) -> None:
    """Token-level tagging scores of a prediction against gold."""
    gold = _load_transcript(gold_path, variant)
    pred = _load_transcript(pred_path, variant)
    try:
        reports = evaluate_tagging(
            gold, pred, tagset=tagset, exclude_ambiguous=exclude_ambiguous
        )
    except PosEvalError as exc:
        _fail(type(exc).__name__, str(exc), gold=str(gold_path), pred=str(pred_path))
        raise AssertionError

    payload = {
        "gold": str(gold_path),
        "pred": str(pred_path),
        "tagset": tagset,
        "groups": [
            {
                "group": r.group,
                "micro_f1": r.micro_f1,
                "macro_f1": r.macro_f1,
                "token_count": r.token_count,
                "excluded": r.excluded,
                "per_tag": {
                    label: {
                        "precision": s.precision,
                        "recall": s.recall,
                        "f1": s.f1,
                        "support": s.support,
                        "predicted": s.predicted,
                    }
                    for label, s in sorted(r.per_tag.items())
                },
            }
            for r in reports
        ],
    }
    if fmt == "json":
        _emit_json(payload)
    else:
        click.echo(f"Tagging evaluation ({tagset})")
        for r in reports:
            click.echo(
                f"  {r.group:<4} micro-F1={r.micro_f1:.4f} macro-F1={r.macro_f1:.4f}"
                f" tokens={r.token_count} excluded={r.excluded}"
            )
            for label, s in sorted(r.per_tag.items()):
                click.echo(
                    f"    {label:<8} P={s.precision:.4f} R={s.recall:.4f} F1={s.f1:.4f} n={s.support}"
                )


# ---------------------------------------------------------------- iaa


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--tagset", type=click.Choice(["upos", "stts"]), default="upos", show_default=True)
@click.option("--weighting", type=click.Choice(["linear", "unweighted"]), default="linear", show_default=True)
@VARIANT_OPTION
@FORMAT_OPTION
def iaa(paths: tuple[Path, ...], tagset: str, weighting: str, variant: str, fmt: str) -> None:
    """Pairwise weighted kappa between annotator files (two or more)."""
    if len(paths) < 2:
        raise click.UsageError("need at least two annotator files")
    order = [t.value for t in (UPOS_ORDER if tagset == "upos" else STTS_ORDER)]
    index = {label: i for i, label in enumerate(order)}

    series = []
    for position, path in enumerate(paths):
        transcript = _load_transcript(path, variant)
        items = []
        for utt in transcript.utterances:
            if utt.is_separator:
                continue
            for token in utt.tokens:
                tag = token.upos if tagset == "upos" else token.stts
                if tag is None:
                    continue
                items.append(((utt.send_id, token.word_id), index[tag.value]))
        annotator = path.stem if sum(1 for p in paths if p.stem == path.stem) == 1 else f"{path.stem}#{position}"
        series.append(RatingSeries(annotator_id=annotator, ratings=tuple(items)))

    try:
        results = pairwise_iaa(series, k=len(order), weighting=weighting)
    except AgreementError as exc:
        _fail(type(exc).__name__, str(exc))
        raise AssertionError

    payload = {
        "tagset": tagset,
        "weighting": weighting,
        "pairs": [
            {
                "a": a,
                "b": b,
                "kappa": r.kappa,
                "observed": r.observed,
                "expected": r.expected,
                "items": r.n_items,
                "only_a": r.only_a,
                "only_b": r.only_b,
            }
            for (a, b), r in results.items()
        ],
    }
    if fmt == "json":
        _emit_json(payload)
    else:
        click.echo(f"Pairwise agreement ({tagset}, {weighting} weights)")
        for pair in payload["pairs"]:
            click.echo(
                f"  {pair['a']} & {pair['b']}: kappa={pair['kappa']:.4f} (n={pair['items']})"
            )


# ---------------------------------------------------------------- analyze


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--speakers", default="FP,K", show_default=True, help="Comma-separated speaker selection.")
@click.option("--form", type=click.Choice(["original", "normalized"]), default="normalized", show_default=True)
@click.option("--tagset", type=click.Choice(["upos", "stts"]), default="upos", show_default=True)
@click.option(
    "--exclude",
    default="punctuation,placeholders,separator_records",
    show_default=True,
    help="Comma-separated exclusion classes (or 'none').",
)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Directory for report.json, report.txt, verbs.tsv, tokens.tsv.")
@click.option("--recording-id", default=None, help="Recording id recorded in the report (default: file stem).")
@VARIANT_OPTION
@FORMAT_OPTION
def analyze(
    path: Path,
    speakers: str,
    form: str,
    tagset: str,
    exclude: str,
    out: Path | None,
    recording_id: str | None,
    variant: str,
    fmt: str,
) -> None:
    """Clinical analysis report (MLU, tag distribution, SVA, lexicon, verbs)."""
    try:
        cfg = AnalysisConfig(
            speakers=tuple(Speaker(s.strip()) for s in speakers.split(",") if s.strip()),
            form=form,
            tagset=tagset,
            exclude=frozenset(
                x.strip() for x in exclude.split(",") if x.strip() and exclude.strip().lower() != "none"
            ),
        )
    except (ConfigError, ValueError) as exc:
        raise click.UsageError(str(exc)) from None

    transcript = _load_transcript(path, variant, recording_id=recording_id)
    report = build_report(transcript, cfg)

    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_bytes(report.to_json_bytes())
        (out / "report.txt").write_text(report.to_text(), "utf-8")
        verb_lines = ["send_id\tspeaker\tword_id\tword\tnormalized\tlemma\tSTTS tag\tmorphology"]
        for v in report.body["verb_overview"]:
            morph = "; ".join(f"{k}={val}" for k, val in v["morph"].items())
            verb_lines.append(
                f"{v['send_id']}\t{v['speaker']}\t{v['word_id']}\t{v['surface']}"
                f"\t{v['normalized']}\t{v['lemma']}\t{v['stts']}\t{morph}"
            )
        (out / "verbs.tsv").write_text("\n".join(verb_lines) + "\n", "utf-8")
        token_lines = ["send_id\tspeaker\tword_id\tword\tnormalized\tUPOS tag\tSTTS tag"]
        for utt in transcript.utterances:
            if utt.is_separator or utt.speaker not in cfg.speakers:
                continue
            for token in utt.tokens:
                stts = token.stts.value + ("+" if token.stts_contracted else "") if token.stts else ""
                token_lines.append(
                    f"{utt.send_id}\t{utt.speaker.value}\t{token.word_id}\t{token.surface}"
                    f"\t{token.normalized}\t{token.upos.value if token.upos else ''}\t{stts}"
                )
        (out / "tokens.tsv").write_text("\n".join(token_lines) + "\n", "utf-8")

    if fmt == "json":
        click.echo(report.to_json(), nl=False)
    else:
        click.echo(report.to_text(), nl=False)


# ---------------------------------------------------------------- serve


@main.command()
@click.option("--data-dir", required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8077, show_default=True, type=int)
@click.option(
    "--adapter-url",
    default=None,
    help="Inference adapter base URL [default: $LSAW_ADAPTER_URL or http://127.0.0.1:8091].",
)
@click.option("--allow-remote-adapter", is_flag=True, help="Permit a non-loopback adapter URL.")
@click.option("--allow-remote-bind", is_flag=True, help="Permit binding a non-loopback host.")
def serve(
    data_dir: Path,
    host: str,
    port: int,
    adapter_url: str | None,
    allow_remote_adapter: bool,
    allow_remote_bind: bool,
) -> None:
    """Run the local workbench service."""
    import uvicorn

    from lsa_workbench.service import create_app

    if host not in ("127.0.0.1", "localhost", "::1") and not allow_remote_bind:
        raise click.UsageError(
            f"refusing to bind non-loopback host {host!r} (use --allow-remote-bind to override)"
        )
    url = adapter_url or os.environ.get("LSAW_ADAPTER_URL") or "http://127.0.0.1:8091"
    try:
        app = create_app(data_dir, adapter_url=url, allow_remote_adapter=allow_remote_adapter)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
