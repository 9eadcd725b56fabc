"""Acceptance gate: one test per shipping criterion, one PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py``; every test prints a
``ACCEPTANCE <name>: PASS`` line on success (visible with ``-s`` or in the
captured output) and the pytest verdict line itself is the pass/fail record.
The dataset-reproduction criterion needs restricted audio-derived files and
is skipped unless LSAW_DATASET_DIR points at them.
"""

from __future__ import annotations

import json
import os
import random
import signal
import socket
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
from click.testing import CliRunner

from conftest import tok, tr, utt
from lsa_workbench.agreement import RatingSeries, weighted_kappa
from lsa_workbench.analysis import AnalysisConfig, build_report, mlu, pos_distribution
from lsa_workbench.annotation import (
    Variant,
    lint_transcript,
    parse_transcript,
    project_view,
    serialize_transcript,
)
from lsa_workbench.asr import DEFAULT_POLICY, EmptyReferenceError, error_rates
from lsa_workbench.cli import main as cli_main
from lsa_workbench.pos_eval import evaluate_tagging
from lsa_workbench.tagsets import (
    AMBIGUOUS_STTS,
    STTS_TO_UPOS_DEFAULT,
    UPOS_ORDER,
    SttsTag,
    allowed_upos,
)
from oracles import oracle_accuracy, oracle_counts, oracle_weighted_kappa

FIXTURE = Path(__file__).parent / "fixtures" / "sample_transcript.tsv"


def ok(name: str) -> None:
    print(f"ACCEPTANCE {name}: PASS")


def test_error_rate_oracle_equivalence_1000_pairs():
    rng = random.Random(934817)
    alphabet = ["ba", "do", "mi", "su", "le"]
    started = time.monotonic()
    for _ in range(1000):
        ref = [rng.choice(alphabet) for _ in range(rng.randint(0, 12))]
        hyp = [rng.choice(alphabet) for _ in range(rng.randint(0, 12))]
        if not ref:
            if not hyp:
                rates = error_rates(ref, hyp)
                assert (rates.wer, rates.cer, rates.mer, rates.wil) == (0, 0, 0, 0)
            else:
                with pytest.raises(EmptyReferenceError):
                    error_rates(ref, hyp)
            continue
        rates = error_rates(ref, hyp)
        word = oracle_counts(tuple(ref), tuple(hyp))
        chars = oracle_counts(tuple(" ".join(ref)), tuple(" ".join(hyp)))
        h, s, d, i = (
            word["hits"], word["substitutions"], word["deletions"], word["insertions"],
        )
        assert rates.wer == (s + d + i) / len(ref)
        assert rates.mer == (s + d + i) / (h + s + d + i)
        if hyp:
            assert rates.wil == 1 - (h / len(ref)) * (h / len(hyp))
        else:
            assert rates.wil == 1.0
        assert rates.cer == chars["distance"] / len(" ".join(ref))
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"oracle sweep took {elapsed:.1f}s"
    ok("error-rate oracle equivalence (1000 pairs, <10s)")


def test_error_rate_closed_form_spot_checks():
    rates = error_rates("der hund bellt laut".split(), "der hund bellt".split())
    assert rates.wer == 0.25
    assert rates.mer == 0.25
    assert rates.wil == 0.25
    identity = error_rates(["gleich", "gleich"], ["gleich", "gleich"])
    assert (identity.wer, identity.cer, identity.mer, identity.wil) == (0, 0, 0, 0)
    ok("error-rate closed-form spot checks")


def test_kappa_identity_example_and_symmetry():
    def indexed(name, values):
        return RatingSeries(annotator_id=name, ratings=tuple(enumerate(values)))

    same = weighted_kappa(indexed("a", [0, 1, 2, 1]), indexed("b", [0, 1, 2, 1]))
    assert same.kappa == 1.0

    example = weighted_kappa(indexed("a", [0, 0, 1, 2]), indexed("b", [0, 1, 1, 2]), k=3)
    assert abs(example.kappa - 0.3125 / 0.4375) <= 1e-9
    oracle = oracle_weighted_kappa([(0, 0), (0, 1), (1, 1), (2, 2)], k=3)
    assert abs(example.kappa - float(oracle)) <= 1e-9

    rng = random.Random(551)
    for _ in range(500):
        n = rng.randint(1, 40)
        a = indexed("a", [rng.randint(0, 4) for _ in range(n)])
        b = indexed("b", [rng.randint(0, 4) for _ in range(n)])
        assert weighted_kappa(a, b, k=5).kappa == weighted_kappa(b, a, k=5).kappa
    ok("kappa identity / worked example (1e-9) / symmetry on 500 series")


def test_fixture_round_trip_lint_clean_and_rules_fire():
    data = FIXTURE.read_bytes()
    transcript = parse_transcript(data, recording_id="fixture")
    assert serialize_transcript(transcript) == data
    assert lint_transcript(transcript) == []

    fired = set()
    violations = {
        "R1": tr(utt(1, "K", tok(0, "UNK", upos="NOUN", stts="NN"))),
        "R2": tr(utt(1, "K", tok(0, "NAME", upos="NOUN", stts="NN"))),
        "R3": parse_transcript(
            "send_id\tspeaker\tword_id\tword\tnormalized\tlemma\tUPOS tag"
            "\tSTTS tag\tmorphology\tSVA\tdependency\n"
            "1\tK\t0\tdrauf\t\t\tADV\tPAV\t\t\t\n"
        ),
        "R4": parse_transcript(
            "send_id\tspeaker\tword_id\tword\tnormalized\tlemma\tUPOS tag"
            "\tSTTS tag\tmorphology\tSVA\tdependency\n"
            "1\tK\t0\t<sentence>\t\t\tX\t\t\t\t\n"
        ),
        "R5": tr(utt(1, "K", tok(0, "geht", stts="VVFIN", morph={"Case": "Odd"}))),
        "R6": tr(utt(1, "K", tok(0, "gömmer", stts="VVFIN", sva="v_sb"))),
    }
    for rule_id, bad in violations.items():
        found = {f.rule_id for f in lint_transcript(bad)}
        assert rule_id in found, f"{rule_id} did not fire"
        fired.add(rule_id)
    assert fired == {"R1", "R2", "R3", "R4", "R5", "R6"}
    ok("fixture round-trip + clean lint + R1-R6 fire")


def test_tag_conversion_total_and_fixture_consistent():
    assert set(STTS_TO_UPOS_DEFAULT) == set(SttsTag)
    transcript = parse_transcript(FIXTURE.read_bytes())
    for u, token in transcript.iter_tokens():
        if token.upos is None or token.stts is None:
            continue
        legal = allowed_upos(token.stts)
        consistent = token.upos in legal
        assert consistent, (u.send_id, token.word_id, token.surface)
        if token.upos is not STTS_TO_UPOS_DEFAULT[token.stts]:
            assert token.stts in AMBIGUOUS_STTS
    ok("fine-to-coarse conversion total + fixture consistent")


def test_tagging_micro_f1_equals_accuracy_on_200_sequences():
    labels = [t.value for t in UPOS_ORDER]
    rng = random.Random(77113)
    for _ in range(200):
        n = rng.randint(1, 30)
        gold_tags = [rng.choice(labels) for _ in range(n)]
        pred_tags = [g if rng.random() < 0.6 else rng.choice(labels) for g in gold_tags]
        gold = tr(utt(1, "K", *(tok(i, f"w{i}", upos=g) for i, g in enumerate(gold_tags))))
        pred = tr(utt(1, "K", *(tok(i, f"w{i}", upos=p) for i, p in enumerate(pred_tags))))
        pooled = evaluate_tagging(gold, pred)[0]
        assert pooled.micro_f1 == float(oracle_accuracy(gold_tags, pred_tags))

    three_gold = tr(utt(1, "K", *(tok(i, w, upos=u) for i, (w, u) in enumerate(
        [("a", "NOUN"), ("b", "VERB"), ("c", "NOUN")]))))
    three_pred = tr(utt(1, "K", *(tok(i, w, upos=u) for i, (w, u) in enumerate(
        [("a", "NOUN"), ("b", "VERB"), ("c", "ADJ")]))))
    assert evaluate_tagging(three_gold, three_pred)[0].micro_f1 == 2 / 3
    ok("tagging micro-F1 == accuracy (200 sequences) + 2/3 example")


def test_analysis_determinism_and_fixture_values():
    data = FIXTURE.read_bytes()
    cfg = AnalysisConfig()
    first = build_report(parse_transcript(data, recording_id="fixture"), cfg).to_json_bytes()
    second = build_report(parse_transcript(data, recording_id="fixture"), cfg).to_json_bytes()
    assert first == second

    transcript = parse_transcript(data, recording_id="fixture")
    values = mlu(transcript, cfg)
    assert float(values[next(s for s in values if s.value == "FP")].value) == 9.0
    assert float(values[next(s for s in values if s.value == "K")].value) == 28.0

    for exclude in (frozenset(), frozenset({"punctuation"}), frozenset({"punctuation", "interjections"})):
        dists = pos_distribution(transcript, AnalysisConfig(exclude=exclude))
        for dist in dists.values():
            if dist.total_tagged:
                assert abs(float(sum(dist.frequencies.values())) - 1.0) <= 1e-9
    ok("analysis determinism + MLU 9.0/28.0 + frequencies sum to 1")


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def test_cli_end_to_end_seven_subcommands(tmp_path):
    runner = CliRunner()
    fixture = str(FIXTURE)

    assert runner.invoke(cli_main, ["validate", fixture]).exit_code == 0

    convert_out = tmp_path / "filled.tsv"
    assert (
        runner.invoke(
            cli_main, ["convert", fixture, "--fill", "--out", str(convert_out)]
        ).exit_code
        == 0
    )
    assert convert_out.exists()

    hyp = tmp_path / "hyp.txt"
    transcript = parse_transcript(FIXTURE.read_bytes())
    hyp.write_text(
        "\n".join(
            " ".join(DEFAULT_POLICY.apply(u.words))
            for u in project_view(transcript, form="normalized")
        )
        + "\n",
        encoding="utf-8",
    )
    asr = runner.invoke(
        cli_main,
        [
            "asr-eval", "--ref", fixture, "--hyp", str(hyp),
            "--form", "normalized", "--per-utterance", "--by-speaker",
            "--format", "json",
        ],
    )
    assert asr.exit_code == 0
    assert json.loads(asr.output)["overall"]["wer"] == 0.0

    pos = runner.invoke(
        cli_main, ["pos-eval", "--gold", fixture, "--pred", fixture, "--format", "json"]
    )
    assert pos.exit_code == 0

    iaa = runner.invoke(cli_main, ["iaa", fixture, fixture, "--format", "json"])
    assert iaa.exit_code == 0
    assert json.loads(iaa.output)["pairs"][0]["kappa"] == 1.0
    assert runner.invoke(cli_main, ["iaa", fixture]).exit_code == 2

    out = tmp_path / "analysis"
    analyze = runner.invoke(cli_main, ["analyze", fixture, "--out", str(out)])
    assert analyze.exit_code == 0
    body = json.loads((out / "report.json").read_text("utf-8"))
    assert body["mlu"]["per_speaker"]["FP"]["mlu"] == "9.000"

    # serve: refuses a public bind (usage error), and actually serves loopback
    refused = runner.invoke(
        cli_main, ["serve", "--data-dir", str(tmp_path / "d"), "--host", "0.0.0.0"]
    )
    assert refused.exit_code == 2

    port = _free_port()
    proc = subprocess.Popen(
        [
            sys.executable, "-m", "lsa_workbench.cli", "serve",
            "--data-dir", str(tmp_path / "served"),
            "--port", str(port),
        ],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    try:
        import httpx

        deadline = time.monotonic() + 15
        health = None
        while time.monotonic() < deadline:
            try:
                health = httpx.get(f"http://127.0.0.1:{port}/health", timeout=1.0)
                break
            except httpx.TransportError:
                time.sleep(0.1)
        assert health is not None and health.status_code == 200
    finally:
        proc.send_signal(signal.SIGTERM)
        try:
            proc.wait(timeout=10)
        except subprocess.TimeoutExpired:
            proc.kill()
    ok("CLI end-to-end, all seven subcommands")


DATASET_ENV = "LSAW_DATASET_DIR"

# Published corpus means (percent), keyed (form, variant); tolerance ±2.0
# absolute points per cell.
PUBLISHED_MEANS = {
    ("original", "SwissGerman"): {"wer": 81.0, "cer": 80.0, "mer": 49.9, "wil": 94.8},
    ("original", "SwissStdGerman"): {"wer": 48.7, "cer": 47.8, "mer": 36.1, "wil": 59.5},
    ("normalized", "SwissGerman"): {"wer": 57.2, "cer": 55.7, "mer": 38.6, "wil": 73.8},
    ("normalized", "SwissStdGerman"): {"wer": 45.6, "cer": 44.8, "mer": 35.2, "wil": 54.7},
}


@pytest.mark.skipif(
    not os.environ.get(DATASET_ENV),
    reason=f"{DATASET_ENV} not set; restricted corpus reproduction skipped",
)
def test_dataset_reproduction_conditional():
    """Corpus-mean reproduction against the restricted recordings.

    Expects ``$LSAW_DATASET_DIR/<variant>/<recording>/reference.tsv`` plus a
    line-aligned ``hypothesis.txt`` (one line per reference utterance) from
    the pinned small multilingual checkpoint, and optionally
    ``predicted.tsv`` with model tags for the F1 ordering check.
    """
    root = Path(os.environ[DATASET_ENV])
    assert root.is_dir(), f"{root} is not a directory"

    per_cell: dict[tuple[str, str], dict[str, list[float]]] = {}
    speaker_rates: dict[tuple[str, str, str], dict[str, list[float]]] = {}
    f1_by_speaker: dict[str, list[float]] = {"FP": [], "K": []}

    for variant in ("SwissGerman", "SwissStdGerman"):
        variant_dir = root / variant
        if not variant_dir.is_dir():
            continue
        for rec_dir in sorted(variant_dir.iterdir()):
            ref_path = rec_dir / "reference.tsv"
            hyp_path = rec_dir / "hypothesis.txt"
            if not (ref_path.is_file() and hyp_path.is_file()):
                continue
            transcript = parse_transcript(
                ref_path.read_bytes(),
                variant=Variant(variant),
                recording_id=rec_dir.name,
            )
            hyp_lines = hyp_path.read_text("utf-8").splitlines()
            for form in ("original", "normalized"):
                projected = project_view(transcript, form=form)
                assert len(hyp_lines) == len(projected), (
                    f"{rec_dir.name}: hypothesis lines != utterances"
                )
                ref_words = DEFAULT_POLICY.apply(
                    [w for u in projected for w in u.words]
                )
                hyp_words = DEFAULT_POLICY.apply(
                    [w for line in hyp_lines for w in line.split()]
                )
                rates = error_rates(ref_words, hyp_words)
                cell = per_cell.setdefault(
                    (form, variant), {"wer": [], "cer": [], "mer": [], "wil": []}
                )
                for metric, value in rates.as_dict().items():
                    cell[metric].append(value * 100)
                for speaker in ("FP", "K"):
                    refs, hyps = [], []
                    for u, line in zip(projected, hyp_lines):
                        if u.speaker is not None and u.speaker.value == speaker:
                            refs.extend(u.words)
                            hyps.extend(line.split())
                    refs = DEFAULT_POLICY.apply(refs)
                    hyps = DEFAULT_POLICY.apply(hyps)
                    if refs:
                        srates = error_rates(refs, hyps)
                        bucket = speaker_rates.setdefault(
                            (form, variant, speaker),
                            {"wer": [], "cer": [], "mer": [], "wil": []},
                        )
                        for metric, value in srates.as_dict().items():
                            bucket[metric].append(value)

            pred_path = rec_dir / "predicted.tsv"
            if pred_path.is_file():
                predicted = parse_transcript(
                    pred_path.read_bytes(),
                    variant=Variant(variant),
                    recording_id=rec_dir.name,
                )
                for report in evaluate_tagging(transcript, predicted):
                    if report.group in f1_by_speaker:
                        f1_by_speaker[report.group].append(report.micro_f1)

    assert per_cell, "no recordings found under the dataset root"

    import statistics

    for key, metrics in PUBLISHED_MEANS.items():
        assert key in per_cell, f"dataset lacks recordings for {key}"
        for metric, published in metrics.items():
            mean = statistics.fmean(per_cell[key][metric])
            assert abs(mean - published) <= 2.0, (
                f"{key} {metric}: mean {mean:.1f} vs published {published} (±2.0)"
            )

    for (form, variant, _), _rates in list(speaker_rates.items()):
        fp = speaker_rates.get((form, variant, "FP"))
        child = speaker_rates.get((form, variant, "K"))
        if fp and child:
            for metric in ("wer", "cer", "mer", "wil"):
                assert statistics.fmean(fp[metric]) < statistics.fmean(child[metric]), (
                    f"{form}/{variant} {metric}: clinician rates not below child rates"
                )

    if f1_by_speaker["FP"] and f1_by_speaker["K"]:
        assert statistics.fmean(f1_by_speaker["FP"]) > statistics.fmean(
            f1_by_speaker["K"]
        ), "tagging F1 not higher for clinicians than children"
    ok("restricted-corpus reproduction (means ±2.0, orderings)")
