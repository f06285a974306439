#!/usr/bin/env python3
"""Regenerates the example study bundles under data/.

Scores are synthetic: each system's values are symmetric spreads around a
chosen mean, sized so that the per-system CV* comes out at the target value
embedded below, while the per-experiment rankings keep the structure each
example demonstrates (identical rankings / full reversal / a single tie).
"""
import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data")

C4_3 = math.sqrt(math.pi) / 2
C4_8 = math.sqrt(2 / 7) * math.gamma(4) / math.gamma(3.5)
# cv% for a 2-value sample = K2 * |v2-v1| / mean
K2 = 112.5 * math.sqrt(math.pi) / 2


def triple(mean, cv_target):
    # (m-d, m, m+d) has s = d; cv* = (1+1/12) * d / (c4(3) * m) * 100
    d = cv_target * mean * C4_3 * 12 / 1300.0
    return [mean - d, mean, mean + d]


def pair(x1, cv_target, rising):
    k = cv_target / K2
    u = (2 + k) / (2 - k) if rising else (2 - k) / (2 + k)
    return [x1, x1 * u]


def octet(mean, cv_target, rotation):
    # 4 values at m+d and 4 at m-d: s = d*sqrt(8/7)
    d = cv_target * mean * C4_8 * math.sqrt(7 / 8) / 103.125
    base = [1, 1, -1, -1, 1, -1, 1, -1]
    pat = base[rotation % 8:] + base[:rotation % 8]
    return [mean + d * p for p in pat]


def fmt(v):
    return "%.6f" % v


def write(name, lines):
    path = os.path.join(OUT, name)
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote", path)


def example1():
    # One QC, three experiments, 5-point scale. Identical rankings in all
    # three experiments; per-system CV* targets 19.96 / 29.9 / 30.76.
    scores = {
        "SVM": triple(2.0, 19.96),
        "GeDi": triple(1.2, 29.9),
        "DExpert": triple(1.6, 30.76),
    }
    props = [
        'property test_dataset "sci-defs-v1"',
        'property metric "human rating"',
        'property run_time_environment "n/a"',
        'property input_type "text-sentence"',
        'property output_type "text-multiple-sentences"',
        'property task "paraphrasing"',
        'property total_evaluated_items "30"',
        'property objective_vs_subjective "subjective"',
        'property absolute_vs_relative "absolute"',
        'property intrinsic_vs_extrinsic "intrinsic"',
        'property number_of_evaluators "3"',
        'property evaluator_type "crowdworker"',
        'property rating_instrument_type "multiple-choice"',
        'property verbatim_prompt "How fluent is this definition?"',
        'property response_elicitation_form "direct-quality-estimation"',
    ]
    lines = ["# Three comparable experiments, one quality criterion.",
             "study fluency-defs", "system SVM GeDi DExpert", ""]
    for i, eid in enumerate(["orig", "rerun-a", "rerun-b"]):
        lines += ["experiment %s" % eid, "  qc Fluency", "  scale 1 5"]
        lines += ["  " + p for p in props]
        for s in ("SVM", "GeDi", "DExpert"):
            lines.append("  score %s %s" % (s, fmt(scores[s][i] + 1.0)))
        lines += ["end", ""]
    write("example1.bundle", lines)


def example2():
    # Two QCs, two experiments each. QC1 (5-point scale): fully reversed
    # rankings, CV* 47.25 / 54.72 / 32.53. QC2 (proportion): one tied pair
    # in the second experiment, otherwise concordant, CV* 9.18 / 8.86 / 13.34.
    qc1 = {
        "T5-base": pair(1.05, 47.25, rising=True),
        "T5-large": pair(1.0, 54.72, rising=True),
        "GPT2-large": pair(1.15, 32.53, rising=True),
    }
    x2l = 0.5 * (2 - 8.86 / K2) / (2 + 8.86 / K2)
    x1g = x2l / ((2 - 13.34 / K2) / (2 + 13.34 / K2))
    qc2 = {
        "T5-base": pair(0.40, 9.18, rising=False),
        "T5-large": [0.5, x2l],
        "GPT2-large": [x1g, x2l],
    }
    shared = [
        'property test_dataset "headlines-v1"',
        'property metric "human rating"',
        'property run_time_environment "n/a"',
        'property input_type "text-document"',
        'property output_type "text-subsentential"',
        'property task "summarisation"',
        'property total_evaluated_items "40"',
        'property objective_vs_subjective "subjective"',
        'property absolute_vs_relative "absolute"',
        'property intrinsic_vs_extrinsic "intrinsic"',
        'property number_of_evaluators "5"',
        'property evaluator_type "crowdworker"',
    ]
    qc1p = shared + [
        'property rating_instrument_type "multiple-choice"',
        'property verbatim_prompt "Rate the overall quality of this headline."',
        'property response_elicitation_form "direct-quality-estimation"',
    ]
    qc2p = shared + [
        'property rating_instrument_type "multiple-choice"',
        'property verbatim_prompt "Is this headline acceptable to publish?"',
        'property response_elicitation_form "output-classification"',
    ]
    lines = ["# Two comparable experiments over two quality criteria.",
             "study headlines-quality", "system T5-base T5-large GPT2-large", ""]
    for i, run in enumerate(["orig", "rerun"]):
        lines += ["experiment quality-%s" % run, '  qc "Overall Quality"', "  scale 1 5"]
        lines += ["  " + p for p in qc1p]
        for s in ("T5-base", "T5-large", "GPT2-large"):
            lines.append("  score %s %s" % (s, fmt(qc1[s][i] + 1.0)))
        lines += ["end", ""]
    for i, run in enumerate(["orig", "rerun"]):
        lines += ["experiment accept-%s" % run, '  qc "Sociopolitical Acceptability"', "  scale 0 1"]
        lines += ["  " + p for p in qc2p]
        for s in ("T5-base", "T5-large", "GPT2-large"):
            lines.append("  score %s %s" % (s, fmt(qc2[s][i])))
        lines += ["end", ""]
    write("example2.bundle", lines)


def example3():
    # Eight comparable experiments, one metric QC, eleven systems. The first
    # four experiments share test dataset and random seed; the other four
    # differ in both, among themselves as well.
    targets = [
        ("mult-base", 14.34, 0.55), ("mult-word-L-", 10.33, 0.60),
        ("mult-word-L+", 9.91, 0.61), ("mult-pos-L-", 3.88, 0.72),
        ("mult-pos-L+", 3.88, 0.72), ("mult-dep-L-", 4.5, 0.70),
        ("mult-dep-L+", 4.64, 0.69), ("mult-dom-L-", 17.42, 0.45),
        ("mult-dom-L+", 18.29, 0.44), ("mult-emb-L-", 17.05, 0.50),
        ("mult-emb-L+", 16.25, 0.51),
    ]
    scores = {name: octet(m, t, i) for i, (name, t, m) in enumerate(targets)}
    datasets = ["essays-v1"] * 4 + ["essays-v2", "essays-v3", "essays-v4", "essays-v5"]
    seeds = ["17"] * 4 + ["23", "31", "47", "59"]
    impls = ["sklearn-0.19", "sklearn-0.21", "custom-wf1", "sklearn-0.19",
             "sklearn-0.22", "custom-wf1", "sklearn-0.19", "sklearn-0.24"]
    envs = ["py3.6-linux", "py3.8-linux", "py3.7-macos", "py3.8-linux",
            "py3.9-linux", "py3.6-linux", "py3.10-linux", "py3.8-windows"]
    lines = ["# Eight comparable experiments, one metric-based quality criterion.",
             "study essay-scoring-wf1",
             "system " + " ".join(n for n, _, _ in targets), ""]
    for e in range(8):
        lines += ["experiment run-%d" % (e + 1), '  qc "weighted F1"', "  scale 0 1",
                  '  property test_dataset "%s"' % datasets[e],
                  '  property metric "weighted F1"',
                  '  property metric_implementation "%s"' % impls[e],
                  '  property run_time_environment "%s"' % envs[e],
                  '  property input_type "text-document"',
                  '  property output_type "raw-structured-data"',
                  '  property task "other"',
                  '  property total_evaluated_items "300"',
                  '  property objective_vs_subjective "objective"',
                  '  property absolute_vs_relative "absolute"',
                  '  property intrinsic_vs_extrinsic "intrinsic"',
                  '  property x.random_seed "%s"' % seeds[e]]
        for name, _, _ in targets:
            lines.append("  score %s %s" % (name, fmt(scores[name][e])))
        lines += ["end", ""]
    write("example3.bundle", lines)


def example_labels():
    # Two experiments that annotated the same outputs with error-type labels.
    lines = ["# Two comparable label-annotation experiments.",
             "study error-annotation", "system sysA sysB", ""]
    grids = {
        "orig": {
            ("sysA", "i1"): "omission", ("sysA", "i2"): "none",
            ("sysA", "i3"): "hallucination", ("sysA", "i4"): "none",
            ("sysB", "i1"): "none", ("sysB", "i2"): "omission",
            ("sysB", "i3"): "none", ("sysB", "i4"): "none",
        },
        "rerun": {
            ("sysA", "i1"): "omission", ("sysA", "i2"): "none",
            ("sysA", "i3"): "none", ("sysA", "i4"): "none",
            ("sysB", "i1"): "none", ("sysB", "i2"): "omission",
            ("sysB", "i3"): "none", ("sysB", "i4"): "hallucination",
        },
    }
    props = [
        'property test_dataset "summaries-v1"',
        'property metric "error annotation"',
        'property run_time_environment "n/a"',
        'property input_type "text-document"',
        'property output_type "text-multiple-sentences"',
        'property task "summarisation"',
        'property total_evaluated_items "4"',
        'property objective_vs_subjective "subjective"',
        'property absolute_vs_relative "absolute"',
        'property intrinsic_vs_extrinsic "intrinsic"',
        'property number_of_evaluators "2"',
        'property response_elicitation_form "output-classification"',
    ]
    for eid in ("orig", "rerun"):
        lines += ["experiment %s" % eid, '  qc "Accuracy Errors"',
                  "  labelset omission hallucination none"]
        lines += ["  " + p for p in props]
        for (sysid, item), label in sorted(grids[eid].items()):
            lines.append("  label %s %s %s" % (sysid, item, label))
        lines += ["end", ""]
    write("example_labels.bundle", lines)


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    example1()
    example2()
    example3()
    example_labels()
