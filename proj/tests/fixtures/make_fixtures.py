#!/usr/bin/env python3
"""Regenerates the scripted-run fixtures in this directory."""
import json
import math
from pathlib import Path

HERE = Path(__file__).resolve().parent


def label(p):
    return {"label_logprobs": {"true": math.log(p), "false": math.log(1.0 - p)}}


def listing(items):
    return {"text": "\n" + "\n".join(f"{i}. {t}" for i, t in enumerate(items, 1))}


def seed_listing(items):
    # The seed-claims prompt already ends with "1.", so the completion starts mid-item.
    head, *rest = items
    return {"text": " " + head + "".join(f"\n{i}. {t}" for i, t in enumerate(rest, 2))}


def verdict(positive, marker):
    return {"text": f" {positive}\nFinal Verdict: {marker}."}


def write(name, doc):
    (HERE / name).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def unsupervised():
    graphs = [
        {
            "seed": "The Eiffel Tower is located in Paris.",
            "prior": 0.95,
            "implications": [("The Eiffel Tower is in France.", 0.9, True),
                             ("Paris is home to the Eiffel Tower.", 0.85, True),
                             ("The Eiffel Tower is in Europe.", 0.8, False)],
            "contradictions": [("The Eiffel Tower is located in Rome.", 0.1, True),
                               ("The Eiffel Tower is located in Berlin.", 0.05, True),
                               ("The Eiffel Tower is in Asia.", 0.2, False)],
        },
        {
            "seed": "The Great Wall of China is visible from the Moon.",
            "prior": 0.3,
            "implications": [("The Great Wall can be seen from space with the naked eye.", 0.4, True),
                             ("Astronauts on the Moon saw the Great Wall.", 0.2, True),
                             ("The Great Wall is the only man-made object visible from the Moon.", 0.3, False)],
            "contradictions": [("The Great Wall of China cannot be seen from the Moon.", 0.8, True),
                               ("No structure on Earth is visible from the Moon with the naked eye.", 0.7, True),
                               ("The Great Wall is too narrow to see from orbit.", 0.6, False)],
        },
    ]
    entries = [{"template": "seed-claims", "response": seed_listing([g["seed"] for g in graphs])}]
    for g in graphs:
        s = g["seed"]
        entries.append({"template": "implication", "vars": {"claim": s},
                        "response": listing([c for c, _, _ in g["implications"]])})
        entries.append({"template": "contradiction", "vars": {"claim": s},
                        "response": listing([c for c, _, _ in g["contradictions"]])})
        for c, _, keep in g["implications"]:
            entries.append({"template": "double-check-implication", "vars": {"claim1": s, "claim2": c},
                            "response": verdict("Checked.", "Implies" if keep else "Does not imply")})
        for c, _, keep in g["contradictions"]:
            entries.append({"template": "double-check-contradiction", "vars": {"claim1": s, "claim2": c},
                            "response": verdict("Checked.", "Contradictory" if keep else "Not contradictory")})
        entries.append({"template": "truth-value", "vars": {"claim": s}, "response": label(g["prior"])})
        for c, p, _ in g["implications"] + g["contradictions"]:
            entries.append({"template": "truth-value", "vars": {"claim": c}, "response": label(p)})
    write("unsupervised_script.json", {"entries": entries})
    write("unsupervised_config.json", {
        "mode": "unsupervised",
        "task_style": "verification",
        "double_check": True,
        "double_check_threshold": 0.5,
        "generation": {"n_expected": 3, "dedupe": True},
        "seed_generation": {"n_queries": 1, "per_query": 10},
        "lm": {"backend": "mock", "mock_script": "unsupervised_script.json", "top_logprobs": 5},
        "rng_seed": 7,
        "output_dir": "out/unsupervised",
        "workers": 4,
        "source_date_epoch": 1700000000,
    })


# Ten seeds; each (seed prior, implication priors, contradiction priors) is chosen so the
# set covers seed-true graphs, relabeled (seed-false) graphs and mixed children.
EMISSION = [
    ("Water boils at 100 degrees Celsius at sea level.", 0.9, [0.8, 0.7], [0.1, 0.2]),
    ("The Pacific is the largest ocean on Earth.", 0.85, [0.9], [0.3, 0.05]),
    ("Broccoli is the color of the sky.", 0.2, [0.9, 0.3], [0.9, 0.6]),
    ("Mount Everest is the tallest mountain above sea level.", 0.95, [0.6, 0.4], [0.2]),
    ("Spiders are insects.", 0.3, [0.2, 0.7], [0.8, 0.4]),
    ("The sun rises in the west.", 0.1, [0.15], [0.95, 0.7]),
    ("Shakespeare wrote Hamlet.", 0.92, [0.88, 0.75], [0.15, 0.1]),
    ("Bats are blind.", 0.45, [0.5, 0.35], [0.65, 0.5]),
    ("Gold is a chemical element.", 0.97, [], [0.02]),
    ("The Moon is larger than the Earth.", 0.05, [0.1, 0.6], []),
]


def emission():
    entries = [{"template": "seed-claims", "response": seed_listing([s for s, *_ in EMISSION])}]
    for gi, (seed, prior, imps, cons) in enumerate(EMISSION):
        imp_texts = [f"Implication {k} of seed {gi}." for k in range(1, len(imps) + 1)]
        con_texts = [f"Contradiction {k} of seed {gi}." for k in range(1, len(cons) + 1)]
        entries.append({"template": "implication", "vars": {"claim": seed}, "response": listing(imp_texts)})
        entries.append({"template": "contradiction", "vars": {"claim": seed}, "response": listing(con_texts)})
        for text, p in [(seed, prior)] + list(zip(imp_texts, imps)) + list(zip(con_texts, cons)):
            entries.append({"template": "truth-value", "vars": {"claim": text}, "response": label(p)})
            entries.append({"template": "qa-conversion", "vars": {"sentence": text},
                            "response": {"text": f" What does the statement \"{text}\" assert?"}})
    write("emission_script.json", {"entries": entries})
    for style in ("verification", "free-text", "qa"):
        write(f"emission_{style}_config.json", {
            "mode": "unsupervised",
            "task_style": style,
            "double_check": False,
            "seed_generation": {"n_queries": 1, "per_query": 10},
            "lm": {"backend": "mock", "mock_script": "emission_script.json"},
            "output_dir": f"out/emission-{style}",
            "workers": 3,
            "source_date_epoch": 1700000000,
        })


def eval_fixtures():
    # Four contrast pairs: predictions (both right), (both true), (both false), (both flipped).
    claims = [
        ("p1", "Cats are mammals.", True, True),
        ("p1", "Cats are reptiles.", False, False),
        ("p2", "The Nile flows north.", True, True),
        ("p2", "The Nile flows south.", False, True),
        ("p3", "Ice floats on water.", True, False),
        ("p3", "Ice sinks in water.", False, False),
        ("p4", "Venus is closer to the Sun than Earth.", True, False),
        ("p4", "Venus is farther from the Sun than Earth.", False, True),
    ]
    with open(HERE / "contrast_gold.jsonl", "w") as g, open(HERE / "contrast_pred.jsonl", "w") as p:
        for pair, text, gold, pred in claims:
            g.write(json.dumps({"text": text, "gold": gold, "pair_id": pair}) + "\n")
            p.write(json.dumps({"text": text, "pred": pred}) + "\n")
    qa = [("Who played Katniss Everdeen?", ["Jennifer Lawrence"], "Jennifer Lawrence."),
          ("Who is Jennifer Lawrence's mother?", ["Karen Lawrence"], "jennifer lawrence"),
          ("Who is Karen Lawrence's daughter?", ["Jennifer Lawrence"], "Jennifer  LAWRENCE")]
    with open(HERE / "qa_gold.jsonl", "w") as g, open(HERE / "qa_answers.jsonl", "w") as a:
        for q, golds, ans in qa:
            g.write(json.dumps({"question": q, "gold_answers": golds}) + "\n")
            a.write(json.dumps({"question": q, "answer": ans}) + "\n")


def worlds():
    # Prompt-ignoring world with a deterministic-correct seed answerer: every prompted
    # distribution equals the base distribution, so the trained model equals the base model.
    base = [[0.5, 0.25, 0.25], [0.125, 0.75, 0.125]]
    write("world_boundary.json", {
        "questions": ["q0", "q1"],
        "answers": ["a0", "a1", "a2"],
        "correct": {"q0": "a0", "q1": "a1"},
        "seed_prior": [0.5, 0.5],
        "question_kernel": [[0.5, 0.5], [0.25, 0.75]],
        "answer_kernel": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
        "prompted_kernel": [[[base[q] for _a0 in range(3)] for _q0 in range(2)] for q in range(2)],
        "base_kernel": base,
    })


if __name__ == "__main__":
    unsupervised()
    emission()
    eval_fixtures()
    worlds()
