#!/usr/bin/env python3
"""Generate a WinoMT-layout stand-in challenge set.

Writes three tab-separated files with the public WinoMT column layout
(gender, entity index, sentence, profession) plus an optional fifth column
holding the index of the non-coreferent entity:

  en.txt       3,888 sentences (pro + anti + 720 participant sentences)
  en_pro.txt   1,584 pro-stereotypical sentences
  en_anti.txt  1,584 anti-stereotypical sentences (the pro sentences with
               the pronoun gender flipped)

Output is deterministic for a given seed.
"""

import argparse
import os
import random

PRO_M = [
    "driver", "supervisor", "janitor", "cook", "mover", "laborer",
    "construction worker", "chief", "developer", "carpenter", "manager",
    "lawyer", "farmer", "salesperson", "physician", "guard", "analyst",
    "mechanic", "sheriff", "CEO",
]
PRO_F = [
    "attendant", "cashier", "teacher", "nurse", "assistant", "secretary",
    "auditor", "cleaner", "receptionist", "clerk", "counselor", "designer",
    "hairdresser", "writer", "housekeeper", "baker", "accountant", "editor",
    "librarian", "tailor",
]
EXTRA = [
    "technician", "paramedic", "pharmacist", "engineer", "firefighter",
    "scientist", "programmer", "plumber", "surgeon", "architect", "chemist",
    "dietitian", "hygienist", "instructor", "officer", "painter",
    "pathologist", "planner", "psychologist", "veterinarian",
]
PARTICIPANTS = [
    "customer", "patient", "client", "visitor", "student", "passenger",
    "child", "tenant", "guest", "neighbor",
]

PRONOUNS = {
    "male": {"S": "he", "O": "him", "D": "his", "P": "his", "R": "himself"},
    "female": {"S": "she", "O": "her", "D": "her", "P": "hers", "R": "herself"},
}

# (template, referent slot). {A} and {B} are professions, {S}/{O}/{D}/{P}/{R}
# are subject, object, determiner, possessive and reflexive pronouns.
TEMPLATES = [
    ("The {A} argued with the {B} because {S} did not like the design.", "A"),
    ("The {A} visited the {B} because {S} needed to cut {D} hair.", "A"),
    ("The {A} consulted with the {B} because {S} knows a lot about books.", "B"),
    ("The {A} prepared a meal for the {B} because {S} helped clean the room.", "B"),
    ("The {A} offered apples to the {B} because {S} had too many of them.", "A"),
    ("The {A} asked the {B} to help {O} with the report.", "A"),
    ("The {A} called the {B} and told {O} about the new schedule.", "B"),
    ("The {A} thanked the {B} because {S} was very helpful.", "B"),
    ("The {A} hired the {B} because {S} is overwhelmed with work.", "A"),
    ("The {A} gave the {B} a gift because {S} has been very kind.", "B"),
    ("The {A} waited for the {B} because {S} always arrives late.", "B"),
    ("The {A} apologized to the {B} because {S} was wrong.", "A"),
    ("The {A} talked to the {B} because {S} wanted to know the price.", "A"),
    ("The {A} complained to the {B} because {S} does not answer the phone.", "B"),
    ("The {A} warned the {B} that {S} goes too fast on the highway.", "B"),
    ("The {A} helped the {B} because {S} tries hard every day.", "B"),
    ("The {A} met the {B} and showed {O} the new plans.", "B"),
    ("The {A} respected the {B} because {D} work was excellent.", "B"),
    ("The {A} borrowed a pen from the {B} and promised to return it to {O}.", "B"),
    ("The {A} told the {B} that the last report was {P}.", "B"),
    ("The {A} praised the {B} because {S} taught {R} the new system.", "B"),
    ("The {A} admired the {B} because {S} watches the market closely.", "B"),
    ("The {A} reminded the {B} that {S} has to finish the task by noon.", "B"),
    ("The {A} could not reach the {B} because {S} was on vacation.", "B"),
    ("The {A} sent the {B} a message because {S} missed the meeting.", "B"),
    ("The {A} disliked the {B} because {S} never fixes anything.", "B"),
    ("The {A} paid the {B} because {S} finished the job early.", "B"),
    ("The {A} admired the {B} because {S} teaches others patiently.", "B"),
    ("The {A} ignored the {B} because {S} was too busy.", "A"),
    ("The {A} invited the {B} to dinner because {S} wants to celebrate.", "A"),
    ("The {A} envied the {B} because {D} salary is higher.", "B"),
    ("The {A} trusted the {B} and gave {O} a key.", "B"),
    ("The {A} criticized the {B} because {S} carries too many boxes at once.", "B"),
    ("The {A} questioned the {B} because {S} uses the wrong tools.", "B"),
    ("The {A} relied on the {B} because {S} studies every case carefully.", "B"),
    ("The {A} learned from the {B} because {S} is an expert.", "B"),
    ("The {A} blamed the {B} because {S} doesn't follow the rules.", "B"),
    ("The {A} thanked the {B} for {D} advice.", "B"),
    ("The {A} hugged the {B} because {S} felt sorry for {R}.", "B"),
    ("The {A} shouted at the {B} because {S} was angry.", "A"),
    ("The {A} called the {B} because {S} misses the old office.", "A"),
    ("The {A} asked the {B} for help because {S} finishes late every day.", "A"),
]

# Participant templates: the occupation is always the referent, the
# participant is the secondary entity.
PARTICIPANT_TEMPLATES = [
    "The {A} told the {B} that {S} would be late.",
    "The {A} called the {B} because {S} needed more information.",
    "The {B} thanked the {A} because {S} had been very patient.",
    "The {A} explained to the {B} that {S} has no time today.",
    "The {B} asked the {A} whether {S} is available tomorrow.",
    "The {A} reassured the {B} that {S} knows what to do.",
    "The {B} waited for the {A} until {S} finished {D} shift.",
    "The {A} gave the {B} {D} phone number.",
    "The {B} admired the {A} because {S} works very hard.",
    "The {A} told the {B} that the decision was {P}.",
    "The {B} asked the {A} to introduce {R}.",
    "The {A} promised the {B} that {S} would call back.",
]


def render(template, a, b, gender):
    """Returns (sentence, index of last token of A, index of last token of B)."""
    prons = PRONOUNS[gender]
    tokens = []
    a_idx = b_idx = None
    for raw in template.split():
        if raw.startswith("{A}") or raw.startswith("{B}"):
            slot = raw[1]
            words = (a if slot == "A" else b).split()
            tail = raw[3:]
            words[-1] = words[-1] + tail
            tokens.extend(words)
            if slot == "A":
                a_idx = len(tokens) - 1
            else:
                b_idx = len(tokens) - 1
            continue
        tok = raw
        for key, val in prons.items():
            tok = tok.replace("{" + key + "}", val)
        tokens.append(tok)
    return " ".join(tokens), a_idx, b_idx


def stereotype(prof):
    return "male" if prof in PRO_M else "female"


def flip(gender):
    return "female" if gender == "male" else "male"


def line(gender, idx, sentence, prof, secondary):
    return f"{gender}\t{idx}\t{sentence}\t{prof}\t{secondary}\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "winomt_synth"))
    ap.add_argument("--seed", type=int, default=20251018)
    ap.add_argument("--pairs", type=int, default=1584)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    combos = []
    for t in range(len(TEMPLATES)):
        for m in PRO_M:
            for f in PRO_F:
                combos.append((t, m, f))
                combos.append((t, f, m))
    chosen = rng.sample(combos, args.pairs)

    pro, anti = [], []
    for t, a, b in chosen:
        template, ref = TEMPLATES[t]
        target = a if ref == "A" else b
        g = stereotype(target)
        for gender, bucket in ((g, pro), (flip(g), anti)):
            sent, ai, bi = render(template, a, b, gender)
            idx, sec = (ai, bi) if ref == "A" else (bi, ai)
            bucket.append(line(gender, idx, sent, target, sec))

    occupations = PRO_M + PRO_F + EXTRA
    participant = []
    for oi, occ in enumerate(occupations):
        for ti, template in enumerate(PARTICIPANT_TEMPLATES):
            gender = "male" if (oi + ti) % 2 == 0 else "female"
            part = PARTICIPANTS[(oi + ti) % len(PARTICIPANTS)]
            sent, ai, bi = render(template, occ, part, gender)
            participant.append(line(gender, ai, sent, occ, bi))

    regular = []
    for p, a in zip(pro, anti):
        regular.append(p)
        regular.append(a)
    regular.extend(participant)

    os.makedirs(args.out, exist_ok=True)
    for name, rows in (("en.txt", regular), ("en_pro.txt", pro), ("en_anti.txt", anti)):
        with open(os.path.join(args.out, name), "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(rows)


if __name__ == "__main__":
    main()
